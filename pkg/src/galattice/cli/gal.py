"""The .gal model-description format.

    field F 7                       # optional; default Q or $GAL_DEFAULT_FIELD
    model E { proj vars: X Y Z ideal: [Y^2*Z - X^3 - Z^3] }
    chart C { vars: x ideal: [x^2 - t] }
    morphism zeta: E -> E { X -> 2*X; Y -> Y; Z -> Z; }

A model may list several ``proj vars:`` groups; each group is one block of a
multigraded presentation.  ``t`` is always available in polynomials.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..arith.field import BaseField, is_prime
from ..arith.parse import ParseError, parse_tokens
from ..arith.poly import MultiPoly, PolyRing
from ..ideals import Ideal
from ..lattice.model import GradedMorphism, ProjModel
from ..models.chart import Chart

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(->|\*\*|[-+*/^(){}\[\]:;,])")
_SPACE = re.compile(r"(?:\s+|#[^\n]*)+")


def tokenize_file(text: str):
    toks = []
    pos, line, lstart = 0, 1, 0
    end = (1, 1)
    while pos < len(text):
        m = _SPACE.match(text, pos)
        if m:
            chunk = m.group(0)
            nl = chunk.count("\n")
            if nl:
                line += nl
                lstart = pos + chunk.rfind("\n") + 1
            pos = m.end()
            continue
        m = _TOKEN.match(text, pos)
        col = pos - lstart + 1
        if not m:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), line, col))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), line, col))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, line, col))
        pos = m.end()
        end = (line, pos - lstart + 1)
    # errors at end of input point just past the last token
    return toks, end


def parse_field(spec: str) -> BaseField:
    s = spec.replace(" ", "")
    if s in ("Q", "QQ"):
        return BaseField(0)
    m = re.fullmatch(r"F_?(\d+)", s)
    if m and is_prime(int(m.group(1))):
        return BaseField(int(m.group(1)))
    raise ValueError("unknown field %r (use Q or F<prime>)" % spec)


def field_name(k: BaseField) -> str:
    return "Q" if k.characteristic == 0 else "F %d" % k.characteristic


@dataclass
class ModelDecl:
    name: str
    blocks: List[List[str]]
    gens: List[MultiPoly]
    line: int = 0

    @property
    def variables(self) -> List[str]:
        return [v for b in self.blocks for v in b]


@dataclass
class ChartDecl:
    name: str
    variables: List[str]
    gens: List[MultiPoly]
    line: int = 0


@dataclass
class MorphismDecl:
    name: str
    source: str
    target: str
    images: Dict[str, MultiPoly]
    line: int = 0


@dataclass
class ModelFile:
    field: BaseField
    field_declared: bool = True
    items: List[object] = field(default_factory=list)

    def _find(self, cls, name):
        for it in self.items:
            if isinstance(it, cls) and it.name == name:
                return it
        return None

    @property
    def models(self) -> Dict[str, ModelDecl]:
        return {it.name: it for it in self.items if isinstance(it, ModelDecl)}

    @property
    def charts(self) -> Dict[str, ChartDecl]:
        return {it.name: it for it in self.items if isinstance(it, ChartDecl)}

    @property
    def morphisms(self) -> Dict[str, MorphismDecl]:
        return {it.name: it for it in self.items if isinstance(it, MorphismDecl)}

    def kind_of(self, name: str) -> Optional[str]:
        for it in self.items:
            if it.name == name:
                return {ModelDecl: "model", ChartDecl: "chart", MorphismDecl: "morphism"}[type(it)]
        return None

    # realization --------------------------------------------------------------
    def model(self, name: str) -> ProjModel:
        cache = self.__dict__.setdefault("_built", {})
        if ("model", name) not in cache:
            d = self._find(ModelDecl, name)
            if d is None:
                raise KeyError("no model named %r" % name)
            cache[("model", name)] = ProjModel(self.field, d.blocks, d.gens, name)
        return cache[("model", name)]

    def chart(self, name: str) -> Chart:
        d = self._find(ChartDecl, name)
        if d is None:
            raise KeyError("no chart named %r" % name)
        return Chart(Ideal(_chart_ring(self.field, d.variables), d.gens), name)

    def chart_ring(self, name: str) -> PolyRing:
        d = self._find(ChartDecl, name)
        if d is None:
            raise KeyError("no chart named %r" % name)
        return _chart_ring(self.field, d.variables)

    def morphism(self, name: str) -> GradedMorphism:
        d = self._find(MorphismDecl, name)
        if d is None:
            raise KeyError("no morphism named %r" % name)
        src, tgt = self.model(d.source), self.model(d.target)
        images = {v: p.to_ring(src.ring) for v, p in d.images.items()}
        return GradedMorphism(src, tgt, images, name)

    def canonical(self):
        """Comparable normal form (used for round-trip checks)."""
        out = [field_name(self.field)]
        for it in self.items:
            if isinstance(it, ModelDecl):
                out.append(("model", it.name, tuple(map(tuple, it.blocks)), tuple(g.to_str() for g in it.gens)))
            elif isinstance(it, ChartDecl):
                out.append(("chart", it.name, tuple(it.variables), tuple(g.to_str() for g in it.gens)))
            else:
                out.append(("morphism", it.name, it.source, it.target,
                            tuple((v, p.to_str()) for v, p in it.images.items())))
        return out

    def __eq__(self, other):
        return isinstance(other, ModelFile) and self.canonical() == other.canonical()


def _chart_ring(k, variables) -> PolyRing:
    return PolyRing(list(variables) + ["t"], k)


class _FileParser:
    def __init__(self, text: str):
        self.toks, self.end = tokenize_file(text)
        self.i = 0

    def peek(self, off: int = 0):
        j = self.i + off
        return self.toks[j] if j < len(self.toks) else None

    def take(self, what: str = "token"):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of file, expected %s" % what, *self.end)
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take("%r" % op)
        if tok[0] != "op" or tok[1] != op:
            raise ParseError("expected %r, found %r" % (op, tok[1]), tok[2], tok[3])
        return tok

    def expect_word(self, word: str):
        tok = self.take("%r" % word)
        if tok[0] != "name" or tok[1] != word:
            raise ParseError("expected %r, found %r" % (word, tok[1]), tok[2], tok[3])
        return tok

    def name(self, what: str = "a name"):
        tok = self.take(what)
        if tok[0] != "name":
            raise ParseError("expected %s, found %r" % (what, tok[1]), tok[2], tok[3])
        return tok

    def at_word(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "name" and tok[1] == word

    def at_op(self, op: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] == op

    def namelist(self, stop_words=("ideal", "proj")) -> List[str]:
        out = []
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "name" or tok[1] in stop_words:
                break
            self.i += 1
            if tok[1] == "t":
                raise ParseError("'t' is reserved for the uniformizer", tok[2], tok[3])
            if tok[1] in out:
                raise ParseError("variable %r listed twice" % tok[1], tok[2], tok[3])
            out.append(tok[1])
        if not out:
            tok = self.peek() or ("", "end of file") + self.end
            raise ParseError("expected at least one variable name", tok[2], tok[3])
        return out

    def poly_tokens(self, stops: Tuple[str, ...]):
        out = []
        depth = 0
        while True:
            tok = self.peek()
            if tok is None:
                raise ParseError("unexpected end of file inside a polynomial", *self.end)
            if tok[0] == "op":
                if depth == 0 and tok[1] in stops:
                    break
                if tok[1] not in ("+", "-", "*", "/", "^", "(", ")"):
                    raise ParseError("unexpected %r in a polynomial" % tok[1], tok[2], tok[3])
                if tok[1] == "(":
                    depth += 1
                elif tok[1] == ")":
                    depth -= 1
            out.append(tok)
            self.i += 1
        return out

    def polylist(self, ring: PolyRing) -> List[MultiPoly]:
        self.expect_op("[")
        out = []
        if self.at_op("]"):
            self.take()
            return out
        while True:
            toks = self.poly_tokens((",", "]"))
            nxt = self.peek()
            out.append(parse_tokens(toks, ring, end=(nxt[2], nxt[3])))
            sep = self.take()
            if sep[1] == "]":
                return out


def parse_model_file(text: str, default_field: Optional[str] = None) -> ModelFile:
    """Parse .gal text.  Raises ParseError (with line and column) on any error."""
    p = _FileParser(text)
    declared = p.at_word("field")
    if declared:
        tok = p.take()
        f = p.take("a field")
        spec = str(f[1])
        if f[0] == "name" and f[1] == "F" and p.peek() is not None and p.peek()[0] == "int":
            spec = "F%d" % p.take()[1]
        try:
            k = parse_field(spec)
        except ValueError as exc:
            raise ParseError(str(exc), f[2], f[3])
    else:
        spec = default_field or os.environ.get("GAL_DEFAULT_FIELD") or "Q"
        try:
            k = parse_field(spec)
        except ValueError as exc:
            raise ParseError("GAL_DEFAULT_FIELD: %s" % exc, 1, 1)
    mf = ModelFile(k, declared)
    while p.peek() is not None:
        kw = p.name("'model', 'chart' or 'morphism'")
        if kw[1] not in ("model", "chart", "morphism"):
            raise ParseError("expected 'model', 'chart' or 'morphism', found %r" % kw[1], kw[2], kw[3])
        nm = p.name("a name")
        if mf.kind_of(nm[1]) is not None:
            raise ParseError("duplicate name %r" % nm[1], nm[2], nm[3])
        if kw[1] == "model":
            p.expect_op("{")
            blocks = []
            while p.at_word("proj"):
                p.take()
                p.expect_word("vars")
                p.expect_op(":")
                blocks.append(p.namelist())
            if not blocks:
                tok = p.peek() or ("", "end of file") + p.end
                raise ParseError("expected 'proj vars:'", tok[2], tok[3])
            names = [v for b in blocks for v in b]
            if len(set(names)) != len(names):
                raise ParseError("variable listed in two blocks", nm[2], nm[3])
            p.expect_word("ideal")
            p.expect_op(":")
            ring = PolyRing(names + ["t"], k)
            gens = p.polylist(ring)
            p.expect_op("}")
            mf.items.append(ModelDecl(nm[1], blocks, gens, nm[2]))
        elif kw[1] == "chart":
            p.expect_op("{")
            p.expect_word("vars")
            p.expect_op(":")
            names = p.namelist()
            p.expect_word("ideal")
            p.expect_op(":")
            gens = p.polylist(_chart_ring(k, names))
            p.expect_op("}")
            mf.items.append(ChartDecl(nm[1], names, gens, nm[2]))
        else:
            p.expect_op(":")
            src = p.name("a source model")
            p.expect_op("->")
            tgt = p.name("a target model")
            for ref in (src, tgt):
                if mf.kind_of(ref[1]) != "model":
                    raise ParseError("undeclared model %r" % ref[1], ref[2], ref[3])
            sdecl, tdecl = mf.models[src[1]], mf.models[tgt[1]]
            ring = PolyRing(sdecl.variables + ["t"], k)
            p.expect_op("{")
            images: Dict[str, MultiPoly] = {}
            while not p.at_op("}"):
                v = p.name("a target variable")
                if v[1] not in tdecl.variables:
                    raise ParseError("%r is not a variable of %s" % (v[1], tgt[1]), v[2], v[3])
                if v[1] in images:
                    raise ParseError("second image for %r" % v[1], v[2], v[3])
                p.expect_op("->")
                toks = p.poly_tokens((";", "}"))
                nxt = p.peek() or ("", "") + p.end
                images[v[1]] = parse_tokens(toks, ring, end=(nxt[2], nxt[3]))
                if p.at_op(";"):
                    p.take()
            close = p.expect_op("}")
            missing = [v for v in tdecl.variables if v not in images]
            if missing:
                raise ParseError("morphism %s gives no image for %s" % (nm[1], ", ".join(missing)), close[2], close[3])
            mf.items.append(MorphismDecl(nm[1], src[1], tgt[1], images, nm[2]))
    return mf


def print_model_file(mf: ModelFile) -> str:
    lines = ["field %s" % field_name(mf.field)]
    for it in mf.items:
        if isinstance(it, ModelDecl):
            blocks = " ".join("proj vars: %s" % " ".join(b) for b in it.blocks)
            lines.append("model %s { %s ideal: [%s] }" % (it.name, blocks, ", ".join(g.to_str() for g in it.gens)))
        elif isinstance(it, ChartDecl):
            lines.append("chart %s { vars: %s ideal: [%s] }" % (
                it.name, " ".join(it.variables), ", ".join(g.to_str() for g in it.gens)))
        else:
            body = " ".join("%s -> %s;" % (v, p.to_str()) for v, p in it.images.items())
            lines.append("morphism %s: %s -> %s { %s }" % (it.name, it.source, it.target, body))
    return "\n".join(lines) + "\n"
