"""Linear algebra over R = k[t]_(t) and K = k(t) with Scalar entries.

* ``RLattice``: R-span of vectors in K^n, echelonized with minimal-valuation
  pivots, with coordinates by forward substitution.
* ``ComplexReducer``: Gaussian elimination of a free R-complex along unit
  entries, keeping the chain maps in both directions.
* ``smith_dvr``: Smith normal form over the DVR with transforms.
* ``cohomology_module``: H^i of a small complex as rank, torsion exponents,
  free representatives and a coordinate map onto H^i tensor K.
"""

from __future__ import annotations

import heapq
from typing import Dict, List, Optional

from ..arith.scalar import INF, Scalar

Vec = Dict[int, Scalar]


def axpy(v: Vec, a: Scalar, w: Vec):
    """v += a*w in place."""
    if not a:
        return
    for i, x in w.items():
        y = v.get(i)
        if y is None:
            v[i] = a * x
        else:
            y = y + a * x
            if y:
                v[i] = y
            else:
                del v[i]


def vec_valuation(v: Vec):
    return min((x.valuation() for x in v.values()), default=INF)


class NotInLattice(ArithmeticError):
    pass


class RLattice:
    """R-submodule of K^n spanned by given vectors; ``payload`` objects ride along
    (e.g. numerator polynomials) and are combined with the same coefficients."""

    def __init__(self, k, vectors: List[Vec], payloads: Optional[list] = None, order=None):
        self.k = k
        vecs = [dict(v) for v in vectors]
        pays = list(payloads) if payloads is not None else [None] * len(vecs)
        cols = sorted({c for v in vecs for c in v}, key=order)
        self.basis: List[Vec] = []
        self.payloads = []
        self.pivots: List[int] = []
        occ: Dict[int, set] = {}
        for i, v in enumerate(vecs):
            for c in v:
                occ.setdefault(c, set()).add(i)
        for c in cols:
            rows = occ.pop(c, ())
            if not rows:
                continue
            i = min(rows, key=lambda j: (vecs[j][c].valuation(), j))
            p = vecs[i]
            pv = p[c]
            for c2 in p:
                if c2 in occ:
                    occ[c2].discard(i)
            for j in rows:
                if j == i:
                    continue
                q = vecs[j][c] / pv
                axpy(vecs[j], -q, p)
                if pays[j] is not None:
                    pays[j] = pays[j] - pays[i] * q
                for c2 in p:
                    if c2 == c:
                        continue
                    s2 = occ.setdefault(c2, set())
                    if c2 in vecs[j]:
                        s2.add(j)
                    else:
                        s2.discard(j)
            self.basis.append(p)
            self.payloads.append(pays[i])
            self.pivots.append(c)
        self._cols = cols
        self._pos = {c: n for n, c in enumerate(cols)}
        self._index = {c: i for i, c in enumerate(self.pivots)}

    @property
    def rank(self) -> int:
        return len(self.basis)

    def sparse_coordinates(self, v: Vec, require_integral: bool = True) -> Dict[int, Scalar]:
        """Coordinates as {basis index: coefficient}, zeros omitted."""
        v = dict(v)
        out: Dict[int, Scalar] = {}
        # basis[i] is supported on columns at or after pivots[i]
        heap = [self._pos[c] for c in v if c in self._index]
        heapq.heapify(heap)
        seen = set()
        while heap:
            pos = heapq.heappop(heap)
            if pos in seen:
                continue
            seen.add(pos)
            c = self._cols[pos]
            x = v.get(c)
            if x is None:
                continue
            i = self._index[c]
            b = self.basis[i]
            a = x / b[c]
            out[i] = a
            for c2 in b:
                if c2 not in v and c2 in self._index:
                    heapq.heappush(heap, self._pos[c2])
            axpy(v, -a, b)
        if v:
            raise NotInLattice("vector outside the K-span of the lattice")
        if require_integral and any(a.valuation() < 0 for a in out.values()):
            raise NotInLattice("vector in the K-span but not in the lattice")
        return out

    def coordinates(self, v: Vec, require_integral: bool = True) -> List[Scalar]:
        zero = Scalar.const(self.k, 0)
        out = [zero] * len(self.basis)
        for i, a in self.sparse_coordinates(v, require_integral).items():
            out[i] = a
        return out


# -- complex reduction ------------------------------------------------------------------


class ComplexReducer:
    """Free R-complex C^lo .. C^hi given by sparse differentials d^p: C^p -> C^{p+1}.

    ``dims[p]`` is the rank of C^p; ``mats[p]`` maps a column (basis index of C^p)
    to ``{row: entry}`` over C^{p+1}.
    """

    def __init__(self, dims: Dict[int, int], mats: Dict[int, Dict[int, Vec]], k):
        self.k = k
        self.degrees = sorted(dims)
        self.alive = {p: set(range(dims[p])) for p in dims}
        self.cols = {}
        self.rows = {}
        for p in self.degrees:
            if p + 1 not in dims:
                continue
            cols = {j: dict(v) for j, v in mats.get(p, {}).items() if v}
            rows: Dict[int, Vec] = {}
            for j, v in cols.items():
                for i, x in v.items():
                    rows.setdefault(i, {})[j] = x
            self.cols[p] = cols
            self.rows[p] = rows
        self.steps = []

    def _entry_cost(self, p, j, i):
        return (len(self.cols[p][j]) - 1) * (len(self.rows[p][i]) - 1)

    def reduce(self):
        """Cancel unit entries until every entry of every differential lies in tR."""
        for p in self.degrees:
            if p not in self.cols:
                continue
            cols = self.cols[p]
            heap = [(len(v), j) for j, v in cols.items()]
            heapq.heapify(heap)
            while heap:
                n, j = heapq.heappop(heap)
                v = cols.get(j)
                if v is None:
                    continue
                if len(v) != n:
                    heapq.heappush(heap, (len(v), j))
                    continue
                best = None
                for i, x in v.items():
                    if x.valuation() == 0:
                        cost = len(self.rows[p][i])
                        if best is None or cost < best[0]:
                            best = (cost, i)
                if best is None:
                    continue
                touched = self._eliminate(p, j, best[1])
                for jj in touched:
                    if jj in cols:
                        heapq.heappush(heap, (len(cols[jj]), jj))
        return self

    def _eliminate(self, p, b, c):
        cols, rows = self.cols[p], self.rows[p]
        phi = cols[b][c]
        inv = phi.inverse()
        gamma = {i: x for i, x in cols[b].items() if i != c}
        delta = {j: x for j, x in rows[c].items() if j != b}
        for j, dj in delta.items():
            coef = -(dj * inv)
            col = cols[j]
            for i, gi in gamma.items():
                y = col.get(i)
                add = coef * gi
                if y is None:
                    col[i] = add
                    rows[i][j] = add
                else:
                    y = y + add
                    if y:
                        col[i] = y
                        rows[i][j] = y
                    else:
                        del col[i]
                        del rows[i][j]
        # drop column b and row c
        for i in cols[b]:
            if i != c:
                del rows[i][b]
        del cols[b]
        for j in rows[c]:
            if j != b:
                del cols[j][c]
        del rows[c]
        # b leaves C^p: delete row b of d^{p-1}
        if p - 1 in self.rows:
            r = self.rows[p - 1].pop(b, None)
            if r:
                for j in r:
                    del self.cols[p - 1][j][b]
        # c leaves C^{p+1}: delete column c of d^{p+1}
        if p + 1 in self.cols:
            col = self.cols[p + 1].pop(c, None)
            if col:
                for i in col:
                    del self.rows[p + 1][i][c]
        self.alive[p].discard(b)
        self.alive[p + 1].discard(c)
        self.steps.append((p, b, c, phi, gamma, delta))
        return list(delta)

    # chain maps -----------------------------------------------------------------------
    def forward(self, q: int, x: Vec) -> Vec:
        """f: C^q -> C'^q."""
        x = dict(x)
        for p, b, c, phi, gamma, _ in self.steps:
            if q == p:
                x.pop(b, None)
            elif q == p + 1:
                xc = x.pop(c, None)
                if xc:
                    axpy(x, -(xc / phi), gamma)
        return x

    def backward(self, q: int, y: Vec) -> Vec:
        """g: C'^q -> C^q."""
        y = dict(y)
        for p, b, c, phi, _, delta in reversed(self.steps):
            if q == p:
                acc = None
                for j, dj in delta.items():
                    yj = y.get(j)
                    if yj:
                        acc = dj * yj if acc is None else acc + dj * yj
                if acc:
                    y[b] = -(acc / phi)
        return y

    def minimal(self, p: int):
        """(sorted basis of C'^p, sorted basis of C'^{p+1}, dense matrix of d'^p)."""
        src = sorted(self.alive.get(p, ()))
        dst = sorted(self.alive.get(p + 1, ()))
        zero = Scalar.const(self.k, 0)
        if p not in self.cols:
            return src, dst, [[zero] * len(src) for _ in dst]
        ridx = {i: n for n, i in enumerate(dst)}
        mat = [[zero] * len(src) for _ in dst]
        for n, j in enumerate(src):
            for i, x in self.cols[p].get(j, {}).items():
                mat[ridx[i]][n] = x
        return src, dst, mat


# -- Smith normal form over the DVR ----------------------------------------------------


def _identity(k, n):
    z, o = Scalar.const(k, 0), Scalar.const(k, 1)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(a, b, k):
    if not a:
        return []
    n, m = len(a), len(b[0]) if b else 0
    z = Scalar.const(k, 0)
    out = [[z] * m for _ in range(n)]
    for i in range(n):
        row = a[i]
        for l, x in enumerate(row):
            if not x:
                continue
            bl = b[l]
            o = out[i]
            for j in range(m):
                y = bl[j]
                if y:
                    o[j] = o[j] + x * y
    return out


def smith_dvr(a, k):
    """U, Uinv, V, Vinv, diag with U a V = diagonal; U, V invertible over R.

    Diagonal entries are returned as t-adic valuations (INF for zeros past the rank).
    """
    n = len(a)
    m = len(a[0]) if n else 0
    a = [list(r) for r in a]
    U, Ui, V, Vi = _identity(k, n), _identity(k, n), _identity(k, m), _identity(k, m)
    diag = []
    for s in range(min(n, m)):
        best = None
        for i in range(s, n):
            for j in range(s, m):
                x = a[i][j]
                if x:
                    v = x.valuation()
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        _, i, j = best
        if i != s:
            a[s], a[i] = a[i], a[s]
            U[s], U[i] = U[i], U[s]
            for row in Ui:
                row[s], row[i] = row[i], row[s]
        if j != s:
            for row in a:
                row[s], row[j] = row[j], row[s]
            for row in V:
                row[s], row[j] = row[j], row[s]
            Vi[s], Vi[j] = Vi[j], Vi[s]
        piv = a[s][s]
        # normalize the pivot to t^v
        v, unit = piv.split_unit()
        if unit != 1:
            inv = unit.inverse()
            a[s] = [x * inv for x in a[s]]
            U[s] = [x * inv for x in U[s]]
            for row in Ui:
                row[s] = row[s] * unit
            piv = a[s][s]
        for i in range(s + 1, n):
            x = a[i][s]
            if x:
                q = x / piv
                a[i] = [y - q * z for y, z in zip(a[i], a[s])]
                U[i] = [y - q * z for y, z in zip(U[i], U[s])]
                for row in Ui:
                    row[s] = row[s] + row[i] * q
        for j in range(s + 1, m):
            x = a[s][j]
            if x:
                q = x / piv
                for row in a:
                    row[j] = row[j] - q * row[s]
                for row in V:
                    row[j] = row[j] - q * row[s]
                Vi[s] = [y + q * z for y, z in zip(Vi[s], Vi[j])]
        diag.append(v)
    return U, Ui, V, Vi, diag


class HomologyData:
    """H = ker B / im A for R-matrices A: C^{i-1} -> C^i and B: C^i -> C^{i+1}."""

    def __init__(self, k, n, A, B):
        self.k = k
        self.n = n
        zero = Scalar.const(k, 0)
        if B and n:
            _, _, VB, VBi, dB = smith_dvr(B, k)
        else:
            VB, VBi, dB = _identity(k, n), _identity(k, n), []
        rb = len(dB)
        self.kernel_dim = n - rb
        self._VB = VB
        self._VBi = VBi
        self._rb = rb
        # coordinates of the columns of A in the kernel basis (rows rb.. of VBi * A)
        cols = len(A[0]) if A else 0
        if A and cols and self.kernel_dim:
            AZ = mat_mul([VBi[r] for r in range(rb, n)], A, k)
        else:
            AZ = []
        if AZ and cols:
            UA, UAi, _, _, dA = smith_dvr(AZ, k)
        else:
            UA, UAi, dA = _identity(k, self.kernel_dim), _identity(k, self.kernel_dim), []
        self._UA = UA
        self._ra = len(dA)
        self.torsion = sorted(e for e in dA if e > 0)
        self.rank = self.kernel_dim - len(dA)
        # free representatives in C^i coordinates
        self.free_basis: List[List[Scalar]] = []
        for j in range(self._ra, self.kernel_dim):
            y = [UAi[r][j] for r in range(self.kernel_dim)]
            x = [zero] * n
            for r in range(self.kernel_dim):
                if y[r]:
                    col = rb + r
                    for q in range(n):
                        if VB[q][col]:
                            x[q] = x[q] + VB[q][col] * y[r]
            self.free_basis.append(x)

    def coordinates(self, x: List[Scalar]) -> List[Scalar]:
        """Coordinates in H tensor K (basis: the free representatives) of a cocycle x."""
        k = self.k
        zero = Scalar.const(k, 0)
        y = []
        for r in range(self._rb, self.n):
            row = self._VBi[r]
            acc = zero
            for q, xq in enumerate(x):
                if xq and row[q]:
                    acc = acc + row[q] * xq
            y.append(acc)
        w = []
        for r in range(self._ra, self.kernel_dim):
            row = self._UA[r]
            acc = zero
            for q, yq in enumerate(y):
                if yq and row[q]:
                    acc = acc + row[q] * yq
            w.append(acc)
        return w

    def is_cocycle(self, B, x) -> bool:
        for row in B:
            acc = None
            for a, b in zip(row, x):
                if a and b:
                    acc = a * b if acc is None else acc + a * b
            if acc:
                return False
        return True


def determinant(m, k) -> Scalar:
    """Determinant over K by fraction-free-free Gaussian elimination."""
    n = len(m)
    a = [list(r) for r in m]
    det = Scalar.const(k, 1)
    for s in range(n):
        piv = None
        for i in range(s, n):
            if a[i][s]:
                piv = i
                break
        if piv is None:
            return Scalar.const(k, 0)
        if piv != s:
            a[s], a[piv] = a[piv], a[s]
            det = -det
        p = a[s][s]
        det = det * p
        for i in range(s + 1, n):
            if a[i][s]:
                q = a[i][s] / p
                a[i] = [x - q * y for x, y in zip(a[i], a[s])]
    return det


def in_gl_R(m, k) -> bool:
    """Square matrix with entries in R and unit determinant."""
    if any(len(r) != len(m) for r in m):
        return False
    if not m:
        return True
    if any(x.valuation() < 0 for r in m for x in r if x):
        return False
    return determinant(m, k).valuation() == 0


def charpoly_berkowitz(m, k) -> List[Scalar]:
    """Coefficients c_0..c_n (c_n = 1) of det(T - m)."""
    n = len(m)
    one = Scalar.const(k, 1)
    zero = Scalar.const(k, 0)
    if n == 0:
        return [one]
    # Berkowitz: build vectors iteratively
    vect = [one, -m[0][0]]
    for r in range(1, n):
        # submatrix blocks of the leading (r+1)x(r+1) principal minor
        R = [m[r][j] for j in range(r)]
        C = [m[i][r] for i in range(r)]
        A = [[m[i][j] for j in range(r)] for i in range(r)]
        a = m[r][r]
        # Toeplitz column: [1, -a, -R C, -R A C, ..., -R A^{r-1} C]
        col = [one, -a]
        Q = list(C)
        for _ in range(r):
            acc = zero
            for x, y in zip(R, Q):
                if x and y:
                    acc = acc + x * y
            col.append(-acc)
            Q = [sum((A[i][j] * Q[j] for j in range(r) if A[i][j] and Q[j]), zero) for i in range(r)]
        # multiply the (r+2) x (r+1) lower-triangular Toeplitz matrix by vect
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i + 1, len(vect))):
                x = col[i - j]
                y = vect[j]
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        vect = new
    # vect holds coefficients from the leading one downward
    return list(reversed(vect))
