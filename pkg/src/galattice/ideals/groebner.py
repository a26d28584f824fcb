"""Buchberger's algorithm on sparse dict polynomials.

Polynomials here are plain ``{exponent tuple: coefficient}`` dicts; the
``Ideal`` class wraps them as ``MultiPoly``.  Pair selection is the normal
strategy (smallest lcm first) with the Gebauer-Moeller pair update, and the
output is the reduced, monic basis sorted by decreasing leading monomial.
"""

from __future__ import annotations

import heapq

from .order import MonomialOrder


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


def _neg_key(order, e):
    return tuple(-x for x in order.key(e))


def leading(f: dict, order: MonomialOrder):
    return max(f, key=order.key)


def normal_form(f: dict, basis, order: MonomialOrder, full: bool = True) -> dict:
    """Remainder of f by ``basis``, a list of (lead exponent, monic dict) pairs.

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    f = dict(f)
    if not f or not basis:
        return f
    heap = [(_neg_key(order, e), e) for e in f]
    heapq.heapify(heap)
    queued = set(f)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        queued.discard(m)
        c = f.get(m)
        if c is None:
            continue
        for lm, g in basis:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for e, gc in g.items():
                    e2 = tuple(x + y for x, y in zip(e, q))
                    v = f.get(e2)
                    if v is None:
                        f[e2] = -c * gc
                        if e2 not in queued:
                            queued.add(e2)
                            heapq.heappush(heap, (_neg_key(order, e2), e2))
                    else:
                        v = v - c * gc
                        if v:
                            f[e2] = v
                        else:
                            del f[e2]
                break
        else:
            del f[m]
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic(f: dict, lm):
    c = f[lm]
    if c == 1:
        return f
    inv = 1 / c
    return {e: v * inv for e, v in f.items()}


def _spoly(f, lf, g, lg):
    m = _lcm(lf, lg)
    qf = tuple(x - y for x, y in zip(m, lf))
    qg = tuple(x - y for x, y in zip(m, lg))
    out = {}
    for e, c in f.items():
        out[tuple(x + y for x, y in zip(e, qf))] = c
    for e, c in g.items():
        e2 = tuple(x + y for x, y in zip(e, qg))
        v = out.get(e2)
        if v is None:
            out[e2] = -c
        else:
            v = v - c
            if v:
                out[e2] = v
            else:
                del out[e2]
    return out


def buchberger(polys, order: MonomialOrder):
    """Reduced Groebner basis of the dict polynomials ``polys``."""
    polys = [dict(p) for p in polys if p]
    if not polys:
        return []
    # work with a deterministic, degree-sorted input so permutations of the
    # generators give the same run
    polys.sort(key=lambda p: order.key(leading(p, order)))
    store = []  # (lm, poly)
    active = []  # indices into store forming the current basis
    pairs = []  # (lcm key, i, j, lcm)

    def basis_view():
        return [store[i] for i in active]

    def update(h):
        lh = store[h][0]
        cand = []
        for g in active:
            cand.append((g, _lcm(store[g][0], lh)))
        keep = []
        for idx, (g, m) in enumerate(cand):
            lg = store[g][0]
            if _coprime(lg, lh):
                keep.append((g, m))
                continue
            dominated = False
            for g2, m2 in cand[:idx] + cand[idx + 1:]:
                if m2 != m and _divides(m2, m):
                    dominated = True
                    break
                if m2 == m and g2 < g and not _coprime(store[g2][0], lh):
                    # equal lcms: keep only the first one
                    dominated = True
                    break
            if not dominated:
                keep.append((g, m))
        new_pairs = [(order.key(m), g, h, m) for g, m in keep if not _coprime(store[g][0], lh)]
        old = []
        for key, i, j, m in pairs:
            if (_divides(lh, m) and _lcm(store[i][0], lh) != m and _lcm(store[j][0], lh) != m):
                continue
            old.append((key, i, j, m))
        pairs[:] = old + new_pairs
        active[:] = [g for g in active if not _divides(lh, store[g][0])] + [h]

    for p in polys:
        r = normal_form(p, basis_view(), order)
        if not r:
            continue
        lm = leading(r, order)
        store.append((lm, _monic(r, lm)))
        update(len(store) - 1)

    while pairs:
        best = min(range(len(pairs)), key=lambda i: (pairs[i][0], pairs[i][1], pairs[i][2]))
        _, i, j, _m = pairs.pop(best)
        s = _spoly(store[i][1], store[i][0], store[j][1], store[j][0])
        r = normal_form(s, basis_view(), order)
        if not r:
            continue
        lm = leading(r, order)
        store.append((lm, _monic(r, lm)))
        update(len(store) - 1)

    return reduce_basis([store[i][1] for i in active], order)


def reduce_basis(polys, order: MonomialOrder):
    """Minimalize and inter-reduce a Groebner basis; monic, sorted by leading monomial."""
    items = []
    for p in polys:
        if p:
            lm = leading(p, order)
            items.append((lm, _monic(p, lm)))
    items.sort(key=lambda it: order.key(it[0]))
    minimal = []
    for lm, p in items:
        if any(_divides(l2, lm) for l2, _ in minimal):
            continue
        minimal.append((lm, p))
    out = []
    for idx, (lm, p) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        r = normal_form(p, others, order)
        out.append((lm, _monic(r, lm)))
    out.sort(key=lambda it: order.key(it[0]), reverse=True)
    return [p for _, p in out]
