"""Dense univariate polynomials over k, stored as coefficient tuples (constant term first).

All functions take and return normalized tuples: no trailing zeros, the zero
polynomial is ``()``.
"""

from __future__ import annotations


def norm(c) -> tuple:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def deg(a: tuple) -> int:
    return len(a) - 1


def order(a: tuple) -> int:
    """t-adic order; -1 marks the zero polynomial."""
    for i, c in enumerate(a):
        if c:
            return i
    return -1


def add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return norm(out)


def neg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def sub(a: tuple, b: tuple) -> tuple:
    return add(a, neg(b))


def scale(a: tuple, c) -> tuple:
    if not c:
        return ()
    return tuple(x * c for x in a)


def mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    zero = a[0] - a[0]
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return norm(out)


def shift(a: tuple, n: int) -> tuple:
    """Multiply by t^n (n >= 0) or drop the lowest -n coefficients."""
    if not a:
        return a
    if n >= 0:
        zero = a[0] - a[0]
        return (zero,) * n + a
    return norm(a[-n:])


def divmod_(a: tuple, b: tuple):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    inv = 1 / b[-1]
    r = list(a)
    zero = a[0] - a[0]
    q = [zero] * (len(a) - len(b) + 1)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        c = c * inv
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] = r[i - db + j] - c * b[j]
    return norm(q), norm(r[:db])


def exact_div(a: tuple, b: tuple) -> tuple:
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(a: tuple) -> tuple:
    if not a:
        return a
    inv = 1 / a[-1]
    return tuple(c * inv for c in a)


def gcd(a: tuple, b: tuple) -> tuple:
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(a: tuple) -> tuple:
    return norm(c * i for i, c in enumerate(a) if i)


def evaluate(a: tuple, x):
    acc = x - x
    for c in reversed(a):
        acc = acc * x + c
    return acc


def power(a: tuple, n: int, one) -> tuple:
    out = (one,)
    base = a
    while n:
        if n & 1:
            out = mul(out, base)
        base = mul(base, base)
        n >>= 1
    return out


def powmod(a: tuple, n: int, m: tuple, one) -> tuple:
    out = divmod_((one,), m)[1]
    base = divmod_(a, m)[1]
    while n:
        if n & 1:
            out = divmod_(mul(out, base), m)[1]
        base = divmod_(mul(base, base), m)[1]
        n >>= 1
    return out


def to_str(a: tuple, var: str = "t", fmt=str) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        s = fmt(c)
        neg_ = s.startswith("-")
        if neg_:
            s = s[1:]
        if i == 0:
            term = s
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
            term = mono if s == "1" else "%s*%s" % (s, mono)
        if "/" in s and i:
            term = "(%s)*%s" % (s, var if i == 1 else "%s^%d" % (var, i))
        parts.append(("-" if neg_ else "+", term))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        out += " %s %s" % (sign, term)
    return out


def pth_root(a: tuple, p: int) -> tuple:
    """b with b(x)^p = a(x) over F_p, assuming a only has exponents divisible by p."""
    if any(c for i, c in enumerate(a) if i % p):
        raise ValueError("not a p-th power")
    return norm(a[::p])


def squarefree_part(a: tuple, p: int = 0) -> tuple:
    """Monic product of the distinct irreducible factors of a (k = Q or F_p)."""
    a = monic(a)
    if len(a) <= 1:
        return a[:1] if a else a
    one = a[-1]
    d = derivative(a)
    if not d:
        return squarefree_part(pth_root(a, p), p)
    g = gcd(a, d)
    s = exact_div(a, g)
    if not p:
        return monic(s)
    rest = g
    while True:
        c = gcd(rest, s)
        if len(c) <= 1:
            break
        rest = exact_div(rest, c)
    if len(rest) > 1:
        s = mul(s, squarefree_part(pth_root(rest, p), p))
    return monic(s) if s else (one,)
