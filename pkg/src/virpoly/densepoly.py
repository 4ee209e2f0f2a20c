"""Dense univariate polynomials over Scalar, used for index polynomials.

Characters carry polynomials p with mu(t^j f^n) = p(j) lambda^j; those p
live in a separate variable (the exponent j) from the Laurent variable t,
so they get their own light representation: a tuple of coefficients from the
constant term up, with no trailing zeros.  The zero polynomial is the empty
tuple and has degree -1 by convention.
"""

from __future__ import annotations

from math import comb

from .scalars import Scalar, sc


def pnormalize(coeffs) -> tuple:
    cs = [sc(c) for c in coeffs]
    while cs and cs[-1].is_zero():
        cs.pop()
    return tuple(cs)


def pdeg(p) -> int:
    return len(p) - 1


def peval(p, x) -> Scalar:
    x = sc(x)
    out = Scalar(0)
    for c in reversed(p):
        out = out * x + c
    return out


def padd(p, q) -> tuple:
    n = max(len(p), len(q))
    return pnormalize(
        [(p[i] if i < len(p) else Scalar(0)) + (q[i] if i < len(q) else Scalar(0)) for i in range(n)]
    )


def pscale(p, c) -> tuple:
    c = sc(c)
    return pnormalize([a * c for a in p])


def pmul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [Scalar(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return pnormalize(out)


def pshift(p, a) -> tuple:
    """Compose with a translation: returns the coefficients of p(x + a)."""
    a = sc(a)
    out = [Scalar(0)] * len(p)
    for d, c in enumerate(p):
        # c * (x + a)^d
        for t in range(d + 1):
            out[t] = out[t] + c * comb(d, t) * a ** (d - t)
    return pnormalize(out)


def pmonomial(d, c=1) -> tuple:
    return pnormalize([Scalar(0)] * d + [sc(c)])


def p_to_json(p):
    return [c.to_json() for c in p]


def p_from_json(obj) -> tuple:
    return pnormalize([Scalar.from_json(c) for c in obj])
