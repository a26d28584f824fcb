"""Cohomology lattices, generic-fiber cohomology, endomorphism actions and the
invariance checks, all built on the windowed Čech complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from ..arith import upoly
from ..arith.scalar import Scalar
from ..models.chart import PreconditionError
from .cech import CechComplexR, CechHomology, kdict_str, pullback_cochain, window_inclusion
from .linalg import charpoly_berkowitz, determinant, in_gl_R, mat_mul
from .model import GradedMorphism, ProjModel, blowup_model, product_with_p1, projection_to
from .truncated import TruncatedCechComplex


def cech_complex(M: ProjModel, sheaf: str = "structure", window: Tuple[int, int] = (2, 4), r: int = 0,
                 degrees: Optional[Tuple[int, int]] = None) -> TruncatedCechComplex:
    """The k-linear truncated complex of the sheaf (structure or ga) in window (D, N)."""
    D, N = window
    if D < 1:
        raise ValueError("window D must be at least 1")
    if sheaf == "ga":
        M.verify(need_normal=True)
    lo, hi = degrees if degrees else (0, len(M.charts) - 1)
    cx = CechComplexR(M, sheaf, r, D, lo, hi)
    return TruncatedCechComplex(cx, N)


def relative_dimension(M: ProjModel) -> int:
    """Dimension of the generic fiber."""
    return M.ideal.dimension() - len(M.blocks) - 1


# -- lattice reports --------------------------------------------------------------------


@dataclass
class RoundSummary:
    window: Tuple[int, int]
    rank: int
    torsion: List[int]
    agrees_with_previous: Optional[bool] = None
    transition: Optional[List[List[str]]] = None

    def as_dict(self):
        return {"window": list(self.window), "rank": self.rank, "torsion": list(self.torsion),
                "agrees_with_previous": self.agrees_with_previous, "transition": self.transition}


@dataclass
class LatticeReport:
    degree: int
    rank: int
    torsion_exponents: List[int]
    basis: List[Dict[str, str]]
    window: Tuple[int, int]
    certified: bool
    sheaf: str = "ga"
    twist: int = 0
    model: str = ""
    rounds: List[RoundSummary] = field(default_factory=list)
    homology: Optional[CechHomology] = field(default=None, repr=False, compare=False)

    @property
    def basis_cochains(self):
        return self.homology.cochains() if self.homology is not None else []

    def is_mod_rf(self) -> bool:
        return (self.rank >= 0 and all(isinstance(e, int) and e > 0 for e in self.torsion_exponents)
                and self.torsion_exponents == sorted(self.torsion_exponents))

    def as_dict(self):
        return {
            "degree": self.degree,
            "rank": self.rank,
            "torsion": list(self.torsion_exponents),
            "basis": [dict(sorted(b.items())) for b in self.basis],
            "window": list(self.window),
            "certified": self.certified,
            "sheaf": self.sheaf,
            "twist": self.twist,
            "model": self.model,
            "rounds": [r.as_dict() for r in self.rounds],
        }


def _simplex_name(M: ProjModel, s) -> str:
    return "&".join(M.chart_name(c) for c in s)


def _format_basis(M: ProjModel, h: CechHomology) -> List[Dict[str, str]]:
    """Cocycles as reduced fractions numerator / monomial, keyed by the chart intersection."""
    out = []
    names = M.graded_names
    for cochain in h.cochains():
        entry = {}
        for s, num in sorted(cochain.items()):
            den = [h.cx.D * a for a in M.chart_exps(s)[:M.ngraded]]
            common = [min([e[q] for e in num] + [den[q]]) for q in range(len(den))]
            num = {tuple(a - b for a, b in zip(e, common)): c for e, c in num.items()}
            den = [a - b for a, b in zip(den, common)]
            num_s = kdict_str(num, names)
            den_s = "*".join(n if a == 1 else "%s^%d" % (n, a) for n, a in zip(names, den) if a)
            if den_s:
                if len(num) > 1:
                    num_s = "(%s)" % num_s
                if sum(1 for a in den if a) > 1:
                    den_s = "(%s)" % den_s
                entry[_simplex_name(M, s)] = "%s/%s" % (num_s, den_s)
            else:
                entry[_simplex_name(M, s)] = num_s
        out.append(entry)
    return out


def _homology(M: ProjModel, i: int, sheaf: str, r: int, D: int) -> CechHomology:
    cache = M.__dict__.setdefault("_homology_cache", {})
    key = (i, sheaf, r, D)
    h = cache.get(key)
    if h is None:
        cx = CechComplexR(M, sheaf, r, D, i - 1, i + 1)
        h = cache[key] = cx.homology(i)
    return h


def transition_matrix(h_from: CechHomology, h_to: CechHomology, M: ProjModel) -> List[List[Scalar]]:
    """Columns: H tensor K coordinates in h_to of the basis of h_from (window inclusion)."""
    cols = []
    for cochain in h_from.cochains():
        moved = window_inclusion(cochain, M, h_from.cx.D, h_to.cx.D)
        cols.append(h_to.coordinates_of_cochain(moved))
    return _columns_to_matrix(cols, len(h_to.representatives), M.k)


def _columns_to_matrix(cols, nrows, k):
    zero = Scalar.const(k, 0)
    return [[cols[j][i] if i < len(cols[j]) else zero for j in range(len(cols))] for i in range(nrows)]


def matrix_strings(m) -> List[List[str]]:
    return [[x.to_str() for x in row] for row in m]


def cohomology_lattice(M: ProjModel, i: int, r: int = 0, window: Tuple[int, int] = (2, 4),
                       doubling_rounds: int = 1, sheaf: str = "ga") -> LatticeReport:
    """H^i(M, G_a(r)) (or of the structure sheaf) as (rank, torsion, basis), certified
    when the last two doubled windows agree."""
    D, N = window
    if D < 1 or N < 1 or doubling_rounds < 0:
        raise ValueError("window entries must be positive and rounds non-negative")
    if i < 0:
        raise ValueError("negative degree")
    if sheaf == "ga":
        M.verify(need_normal=True)
    else:
        M.verify()
    rounds: List[RoundSummary] = []
    prev = None
    h = None
    agree = False
    for step in range(doubling_rounds + 1):
        Dk, Nk = D * 2 ** step, N * 2 ** step
        if i >= len(M.charts):
            rounds.append(RoundSummary((Dk, Nk), 0, []))
            agree = step > 0
            continue
        h = _homology(M, i, sheaf, r, Dk)
        summ = RoundSummary((Dk, Nk), h.rank, list(h.torsion))
        fits = all(e < Nk for e in h.torsion)
        if prev is not None:
            same = prev.rank == h.rank and prev.torsion == h.torsion and fits
            if same:
                T = transition_matrix(prev, h, M)
                summ.transition = matrix_strings(T)
                same = in_gl_R(T, M.k)
            summ.agrees_with_previous = same
            agree = same
        rounds.append(summ)
        prev = h
    last = rounds[-1]
    if h is None:
        return LatticeReport(i, 0, [], [], last.window, agree, sheaf, r, M.name, rounds, None)
    return LatticeReport(i, h.rank, list(h.torsion), _format_basis(M, h), last.window,
                         bool(agree and doubling_rounds > 0), sheaf, r, M.name, rounds, h)


@dataclass
class GenericReport:
    degree: int
    dimension: int
    basis: List[Dict[str, str]]
    window: Tuple[int, int]
    certified: bool
    homology: Optional[CechHomology] = field(default=None, repr=False, compare=False)

    def as_dict(self):
        return {"degree": self.degree, "dimension": self.dimension,
                "basis": [dict(sorted(b.items())) for b in self.basis],
                "window": list(self.window), "certified": self.certified}


def generic_fiber_cohomology(M: ProjModel, i: int, window: Tuple[int, int] = (2, 4),
                             doubling_rounds: int = 1) -> GenericReport:
    """dim_K H^i(X, O) with a basis, from the structure-sheaf complex tensored with K."""
    rep = cohomology_lattice(M, i, 0, window, doubling_rounds, sheaf="structure")
    return GenericReport(i, rep.rank, rep.basis, rep.window, rep.certified, rep.homology)


def lattice_in_generic(lattice: LatticeReport, M: ProjModel) -> List[List[Scalar]]:
    """Coordinates (columns) of the lattice basis in the generic-fiber basis at the same window."""
    D = lattice.window[0]
    i = lattice.degree
    if lattice.homology is None:
        return []
    g = _homology(M, i, "structure", 0, D)
    cols = [g.coordinates_of_cochain(c) for c in lattice.basis_cochains]
    return _columns_to_matrix(cols, len(g.representatives), M.k)


def compare_generic(lattice: LatticeReport, M: ProjModel, i: Optional[int] = None) -> bool:
    """The lattice basis is a K-basis of H^i_K."""
    if i is not None and i != lattice.degree:
        raise ValueError("degree mismatch")
    if lattice.homology is None:
        return lattice.rank == 0
    m = lattice_in_generic(lattice, M)
    if len(m) != lattice.rank:
        return False
    return lattice.rank == 0 or bool(determinant(m, M.k))


# -- morphisms ---------------------------------------------------------------------------


def pullback_matrix(f: GradedMorphism, h_target: CechHomology, h_source: CechHomology) -> List[List[Scalar]]:
    """Matrix of f^*: H(target) -> H(source) in the representative bases (columns = images)."""
    if h_target.cx.D != h_source.cx.D:
        raise ValueError("pullback needs equal windows")
    cols = []
    for cochain in h_target.cochains():
        pb = pullback_cochain(f, cochain, h_target.i, h_target.cx.D)
        cols.append(h_source.coordinates_of_cochain(pb))
    return _columns_to_matrix(cols, len(h_source.representatives), f.source.k)


@dataclass
class ActionReport:
    lattice_matrix: List[List[Scalar]]
    generic_matrix: List[List[Scalar]]
    comparison: List[List[Scalar]]
    commutes: bool
    preserves_lattice: bool

    def as_dict(self):
        return {"lattice_matrix": matrix_strings(self.lattice_matrix),
                "generic_matrix": matrix_strings(self.generic_matrix),
                "comparison": matrix_strings(self.comparison),
                "commutes": self.commutes, "preserves_lattice": self.preserves_lattice}


def morphism_action(M: ProjModel, f: GradedMorphism, i: int, r: int = 0, window=(2, 4),
                    doubling_rounds: int = 1) -> ActionReport:
    """Action of f^* on the lattice H^i(G_a(r)) and on H^i_K, with the comparison check."""
    if f.source is not M or f.target is not M:
        raise PreconditionError("morphism_action needs an endomorphism of the model")
    lat = cohomology_lattice(M, i, r, window, doubling_rounds, "ga")
    gen = cohomology_lattice(M, i, 0, window, doubling_rounds, "structure")
    D = lat.window[0]
    hl, hg = lat.homology, gen.homology
    if hl is None or hg is None:
        z = []
        return ActionReport(z, z, z, True, True)
    A = pullback_matrix(f, hl, hl)
    B = pullback_matrix(f, hg, hg)
    C = lattice_in_generic(lat, M)
    commutes = mat_mul(B, C, M.k) == mat_mul(C, A, M.k)
    integral = all(x.valuation() >= 0 for row in A for x in row if x)
    return ActionReport(A, B, C, commutes, integral)


@dataclass
class CharpolyReport:
    coefficients: List[Scalar]
    integral: bool

    def to_str(self, var: str = "T") -> str:
        parts = []
        n = len(self.coefficients) - 1
        for d in range(n, -1, -1):
            c = self.coefficients[d]
            if not c:
                continue
            mono = "" if d == 0 else (var if d == 1 else "%s^%d" % (var, d))
            cs = c.to_str()
            if not c.is_const():
                cs = "(%s)" % cs
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (cs, mono))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def as_dict(self):
        return {"charpoly": self.to_str(), "coefficients": [c.to_str() for c in self.coefficients],
                "integral": self.integral}


def charpoly_integrality(matrix, k) -> CharpolyReport:
    """det(T - A) over K and whether all coefficients lie in R."""
    coeffs = charpoly_berkowitz(matrix, k)
    return CharpolyReport(coeffs, all(c.valuation() >= 0 for c in coeffs if c))


@dataclass
class QUReport:
    is_qu: bool
    M: Optional[int]
    reduction: List[str]
    factors: List[Tuple[int, str, int]] = field(default_factory=list)  # (degree, factor, order)

    def as_dict(self):
        return {"is_qu": self.is_qu, "M": self.M, "reduction": self.reduction,
                "factors": [list(f) for f in self.factors]}


def _mult_order_mod(g, q, d, one):
    """Smallest m dividing q^d - 1 with T^m = 1 modulo g (g squarefree, g(0) != 0)."""
    m = q ** d - 1
    primes = []
    n, p = m, 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    T = (one - one, one)
    for pr in primes:
        while m % pr == 0 and upoly.powmod(T, m // pr, g, one) == (one,):
            m //= pr
    return m


def quasi_unipotence_check(coefficients: Sequence[Scalar], k) -> QUReport:
    """Reduce an integral characteristic polynomial mod t over F_q and test that its roots
    are roots of unity; M is the lcm of their multiplicative orders."""
    if not k.p:
        raise PreconditionError("quasi-unipotence check needs a finite base field")
    if any(c.valuation() < 0 for c in coefficients if c):
        raise PreconditionError("characteristic polynomial is not integral")
    q = k.p
    one = k.one
    red = upoly.norm(c.reduce_mod_t() if c else k.zero for c in coefficients)
    red_s = [str(c) for c in red]
    if not red or not red[0]:
        return QUReport(False, None, red_s)
    f = upoly.monic(red)
    T = (k.zero, one)
    Mval = 1
    factors = []
    rest = f
    # square-free factor with the same roots
    g_all = upoly.monic(upoly.squarefree_part(rest, q))
    rest = g_all
    d = 1
    while upoly.deg(rest) > 0:
        if 2 * d > upoly.deg(rest):
            gd = rest
            d = upoly.deg(rest)
        else:
            h = upoly.powmod(T, q ** d, rest, one)
            gd = upoly.monic(upoly.gcd(rest, upoly.sub(h, T)))
        if upoly.deg(gd) > 0:
            order = _mult_order_mod(gd, q, d, one)
            factors.append((d, upoly.to_str(gd, "T"), order))
            Mval = Mval * order // gcd(Mval, order)
            rest = upoly.exact_div(rest, gd)
        d += 1
    return QUReport(True, Mval, red_s, factors)


# -- invariance suite ----------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "passed": self.passed, "details": self.details}


def _lattices_equal_via(f: GradedMorphism, base: ProjModel, other: ProjModel, i: int, r: int,
                        window, rounds: int, sheaf: str = "ga"):
    a = cohomology_lattice(base, i, r, window, rounds, sheaf)
    b = cohomology_lattice(other, i, r, window, rounds, sheaf)
    det = {"degree": i, "ranks": [a.rank, b.rank], "torsion": [a.torsion_exponents, b.torsion_exponents],
           "certified": [a.certified, b.certified]}
    ok = a.rank == b.rank and a.torsion_exponents == b.torsion_exponents and a.certified and b.certified
    if ok and a.rank:
        P = pullback_matrix(f, a.homology, b.homology)
        det["pullback"] = matrix_strings(P)
        ok = in_gl_R(P, base.k)
    return ok, det


def default_center(M: ProjModel):
    """A point to blow up: (T0, t*T1) on P^1-like blocks, (T0, T1) otherwise."""
    names = M.blocks[0]
    X = M.ring.var(names[0])
    Y = M.ring.var(names[1])
    if len(names) == 2:
        return [X, M.t * Y]
    return [X, Y]


def shift_check(M: ProjModel, i: int, r: int, window, rounds: int) -> Check:
    a = cohomology_lattice(M, i, r, window, rounds, "ga")
    b = cohomology_lattice(M, i, r + 1, window, rounds, "ga")
    det = {"degree": i, "ranks": [a.rank, b.rank]}
    ok = a.rank == b.rank and a.torsion_exponents == b.torsion_exponents
    if ok and a.rank:
        D = a.window[0]
        cols = [a.homology.coordinates_of_cochain(c) for c in b.basis_cochains]
        C = _columns_to_matrix(cols, a.rank, M.k)
        tinv = Scalar.t_power(M.k, -1)
        G = [[x * tinv for x in row] for row in C]
        det["matrix"] = matrix_strings(C)
        ok = in_gl_R(G, M.k)
    return Check("shift", ok, det)


def sandwich_check(M: ProjModel, i: int, window, rounds: int) -> Check:
    """t L_O -> Lambda -> L_O composes to t * Id (with basis t*z_j of t L_O)."""
    lo = cohomology_lattice(M, i, 0, window, rounds, "structure")
    lam = cohomology_lattice(M, i, 0, window, rounds, "ga")
    det = {"degree": i, "ranks": [lo.rank, lam.rank]}
    if lo.rank != lam.rank:
        return Check("sandwich", False, det)
    if lo.rank == 0:
        return Check("sandwich", True, det)
    k = M.k
    t = Scalar.t_power(k, 1)
    tz = [{s: {e: c * t for e, c in num.items()} for s, num in z.items()} for z in lo.basis_cochains]
    A = _columns_to_matrix([lam.homology.coordinates_of_cochain(c) for c in tz], lam.rank, k)
    B = _columns_to_matrix([lo.homology.coordinates_of_cochain(c) for c in lam.basis_cochains], lo.rank, k)
    BA = mat_mul(B, A, k)
    ok_int = all(x.valuation() >= 0 for m in (A, B) for row in m for x in row if x)
    target = [[t if a == b else Scalar.const(k, 0) for b in range(lo.rank)] for a in range(lo.rank)]
    det.update({"A": matrix_strings(A), "B": matrix_strings(B), "BA": matrix_strings(BA)})
    return Check("sandwich", ok_int and BA == target, det)


def invariance_suite(M: ProjModel, config: Optional[dict] = None) -> List[Check]:
    """Blowup, P^1-product, shift and sandwich checks in degrees 0..dim."""
    config = dict(config or {})
    window = tuple(config.get("window", (2, 4)))
    rounds = config.get("rounds", 1)
    r = config.get("twist", 0)
    degrees = config.get("degrees", list(range(relative_dimension(M) + 1)))
    checks = []
    center = config.get("center") or default_center(M)
    B = blowup_model(M, center, name="Bl(%s)" % M.name)
    details = []
    ok = True
    if B is M:
        details.append({"note": "center is the unit ideal; blowup is the identity"})
    else:
        f = projection_to(B, M)
        for i in degrees:
            good, det = _lattices_equal_via(f, M, B, i, r, window, rounds)
            ok = ok and good
            details.append(det)
    checks.append(Check("blowup", ok, {"center": [g.to_str() for g in center], "degrees": details}))
    P = product_with_p1(M, name="P1x%s" % M.name)
    f = projection_to(P, M)
    details, ok = [], True
    for i in degrees:
        good, det = _lattices_equal_via(f, M, P, i, r, window, rounds)
        ok = ok and good
        details.append(det)
    checks.append(Check("p1_product", ok, {"degrees": details}))
    sh = [shift_check(M, i, r, window, rounds) for i in degrees]
    checks.append(Check("shift", all(c.passed for c in sh), {"degrees": [c.details for c in sh]}))
    sw = [sandwich_check(M, i, window, rounds) for i in degrees]
    checks.append(Check("sandwich", all(c.passed for c in sw), {"degrees": [c.details for c in sw]}))
    return checks
