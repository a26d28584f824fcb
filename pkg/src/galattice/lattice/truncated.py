"""The k-linear truncation of a Čech complex: basis t^nu * e, 0 <= nu < N."""

from __future__ import annotations

from typing import Dict, List, Tuple

from ..arith.scalar import Scalar
from .cech import CechComplexR
from .linalg import NotInLattice

Label = Tuple[int, int]


def _series(a: Scalar, n: int):
    return a.series(n)


class TruncatedCechComplex:
    """C^p tensor_R R/t^N as k-vector spaces with the t-action.

    ``spaces[p]`` lists labels (gid, nu) standing for t^nu times the gid-th
    R-basis cochain; ``differentials[p]`` maps a label to ``{label: value in k}``.
    """

    def __init__(self, cx: CechComplexR, N: int):
        if N < 1:
            raise ValueError("t-precision N must be at least 1")
        self.cx = cx
        self.N = N
        self.window = (cx.D, N)
        self.k = cx.k
        self.spaces: Dict[int, List[Label]] = {}
        for p in range(cx.lo, cx.hi + 1):
            self.spaces[p] = [(g, nu) for g in range(cx.dim(p)) for nu in range(N)]
        self.differentials: Dict[int, Dict[Label, Dict[Label, object]]] = {}
        for p, cols in cx.mats.items():
            out = {}
            for g in range(cx.dim(p)):
                col = cols.get(g, {})
                expanded = {i: _series(a, N) for i, a in col.items()}
                for nu in range(N):
                    img = {}
                    for i, ser in expanded.items():
                        for mu in range(N - nu):
                            c = ser[mu]
                            if c:
                                img[(i, nu + mu)] = c
                    out[(g, nu)] = img
            self.differentials[p] = out

    def dim(self, p: int) -> int:
        return len(self.spaces.get(p, ()))

    def t_action(self, label: Label):
        g, nu = label
        return (g, nu + 1) if nu + 1 < self.N else None

    def apply_d(self, p: int, vec: Dict[Label, object]) -> Dict[Label, object]:
        out = {}
        mat = self.differentials[p]
        for lab, c in vec.items():
            for lab2, v in mat[lab].items():
                y = out.get(lab2)
                y = c * v if y is None else y + c * v
                if y:
                    out[lab2] = y
                else:
                    out.pop(lab2, None)
        return out

    def apply_t(self, vec):
        out = {}
        for lab, c in vec.items():
            l2 = self.t_action(lab)
            if l2 is not None:
                out[l2] = c
        return out

    def check_d_squared(self) -> bool:
        for p in self.differentials:
            if p + 1 not in self.differentials:
                continue
            for lab in self.spaces[p]:
                if self.apply_d(p + 1, self.apply_d(p, {lab: self.k.one})):
                    return False
        return True

    def check_t_commutes(self) -> bool:
        for p in self.differentials:
            for lab in self.spaces[p]:
                e = {lab: self.k.one}
                if self.apply_d(p, self.apply_t(e)) != self.apply_t(self.apply_d(p, e)):
                    return False
        return True

    def subspace_in(self, ambient: "TruncatedCechComplex", p: int) -> List[Dict[Label, object]]:
        """This complex's degree-p space as k-vectors in the coordinates of ``ambient``
        (same model and window, larger lattice)."""
        out = []
        N = self.N
        for g, (s, j) in enumerate(self.cx.index[p]):
            num = self.cx.spaces[s].basis_numerator(j)
            try:
                coords = ambient.cx.spaces[s].sparse_coordinates(num, require_integral=True)
            except NotInLattice:
                raise NotInLattice("sections of %s are not contained in %s" % (self.cx.sheaf, ambient.cx.sheaf))
            base = ambient.cx.offset[p][s]
            sers = [(base + q, a.series(N)) for q, a in coords.items()]
            for nu in range(N):
                v = {}
                for gid, ser in sers:
                    for mu in range(N - nu):
                        if ser[mu]:
                            v[(gid, nu + mu)] = ser[mu]
                if v:
                    out.append(v)
        return out


def k_rank(vectors, k) -> int:
    """Rank over k of sparse vectors (dicts label -> element of k)."""
    rows = [dict(v) for v in vectors if v]
    rank = 0
    pivots = {}
    for v in rows:
        v = dict(v)
        while v:
            lab = min(v)
            if lab in pivots:
                p = pivots[lab]
                c = v[lab] / p[lab]
                for l2, x in p.items():
                    y = v.get(l2, k.zero) - c * x
                    if y:
                        v[l2] = y
                    else:
                        v.pop(l2, None)
            else:
                pivots[lab] = v
                rank += 1
                break
    return rank


def same_span(a, b, k) -> bool:
    ra, rb = k_rank(a, k), k_rank(b, k)
    return ra == rb == k_rank(list(a) + list(b), k)
