"""Laurent polynomials over exact scalars, with the Witt Lie bracket.

A Laurent polynomial is a finite map exponent -> Scalar with no stored
zeros.  The same objects serve as the associative algebra C[t^+-] and, via
``lie_bracket``, as the Witt algebra [f, g] = t(fg' - gf').
"""

from __future__ import annotations

from .errors import BadModulus, NotCoprime, NotDivisible
from .scalars import ONE, Scalar, sc


class LaurentPoly:
    """Immutable sparse Laurent polynomial."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                c = sc(c)
                if not c.is_zero():
                    clean[int(e)] = c
        self.coeffs = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def t_power(k: int, coeff=1) -> "LaurentPoly":
        return LaurentPoly({k: sc(coeff)})

    @staticmethod
    def from_json(obj) -> "LaurentPoly":
        return LaurentPoly({int(e): Scalar.from_json(c) for e, c in obj.items()})

    def to_json(self):
        return {str(e): self.coeffs[e].to_json() for e in sorted(self.coeffs)}

    # -- basic structure --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero Laurent polynomial is undefined")
        return max(self.coeffs)

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("valuation of the zero Laurent polynomial is undefined")
        return min(self.coeffs)

    def is_polynomial(self) -> bool:
        """True when the support is nonnegative (an element of C[t])."""
        return not self.coeffs or min(self.coeffs) >= 0

    def is_monic_nonzero_const(self) -> bool:
        """Monic element of C[t] of degree >= 1 with nonzero constant term."""
        return (
            not self.is_zero()
            and self.is_polynomial()
            and self.degree() >= 1
            and self.coeffs[self.degree()] == ONE
            and 0 in self.coeffs
        )

    def leading_coeff(self) -> Scalar:
        return self.coeffs[self.degree()]

    def __getitem__(self, e: int) -> Scalar:
        return self.coeffs.get(e, Scalar(0))

    def evaluate(self, x) -> Scalar:
        x = sc(x)
        out = Scalar(0)
        for e, c in self.coeffs.items():
            out = out + c * x**e
        return out

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            out[e] = -c if s is None else s - c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (Scalar, int)):
            other = sc(other)
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return LaurentPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative Laurent polynomial powers not supported")
        out = LaurentPoly({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def derivative(self) -> "LaurentPoly":
        """Termwise t^n -> n t^(n-1)."""
        return LaurentPoly({e - 1: c * e for e, c in self.coeffs.items() if e != 0})

    # -- equality ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted((e, c.re, c.im) for e, c in self.coeffs.items())))
        return self._hash

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        parts = [f"({self.coeffs[e]})t^{e}" for e in sorted(self.coeffs)]
        return "LaurentPoly(" + " + ".join(parts) + ")"


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


def linear_factor(lam) -> LaurentPoly:
    """The monic linear polynomial t - lam."""
    return LaurentPoly({1: sc(1), 0: -sc(lam)})


def lie_bracket(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Witt bracket [f, g] = t (f g' - g f').

    On monomials this is [t^j, t^k] = (k - j) t^(j+k).
    """
    return (f * g.derivative() - g * f.derivative()).shift(1)


def poly_divmod(a: LaurentPoly, b: LaurentPoly):
    """Quotient and remainder in C[t]; both arguments must have support >= 0."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if not (a.is_polynomial() and b.is_polynomial()):
        raise ValueError("poly_divmod needs nonnegative support")
    q = {}
    r = dict(a.coeffs)
    db = b.degree()
    lb = b.leading_coeff()
    while r and max(r) >= db:
        dr = max(r)
        c = r[dr] / lb
        q[dr - db] = c
        for e, bc in b.coeffs.items():
            e2 = dr - db + e
            s = r.get(e2, Scalar(0)) - c * bc
            if s.is_zero():
                r.pop(e2, None)
            else:
                r[e2] = s
    return LaurentPoly(q), LaurentPoly(r)


def divide_exact(g: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return q with q d = g, or raise NotDivisible.

    Valuations are cleared first, so divisibility is tested in C[t] after
    both arguments are shifted to have nonzero constant term.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if g.is_zero():
        return ZERO_POLY
    vg, vd = g.valuation(), d.valuation()
    q, r = poly_divmod(g.shift(-vg), d.shift(-vd))
    if not r.is_zero():
        raise NotDivisible("remainder is nonzero after clearing valuations")
    return q.shift(vg - vd)


def poly_gcd_bezout(a: LaurentPoly, b: LaurentPoly):
    """Extended Euclid in C[t]: returns (g, u, v) with u a + v b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = ONE_POLY, ZERO_POLY
    v0, v1 = ZERO_POLY, ONE_POLY
    while not r1.is_zero():
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lc = r0.leading_coeff()
    inv = Scalar(1) / lc
    return r0 * inv, u0 * inv, v0 * inv


def bezout(a: LaurentPoly, b: LaurentPoly):
    """Cofactors (u, v) in C[t] with u a + v b = 1 for coprime a, b."""
    if a.is_zero() or b.is_zero():
        raise ValueError("bezout needs nonzero polynomials")
    if not (a.is_polynomial() and b.is_polynomial()):
        raise ValueError("bezout needs nonnegative support")
    g, u, v = poly_gcd_bezout(a, b)
    if g != ONE_POLY:
        raise NotCoprime(f"gcd has degree {g.degree()}")
    return u, v


def t_inverse_mod(modulus: LaurentPoly) -> LaurentPoly:
    """Inverse of t modulo a polynomial with nonzero constant term."""
    u, _ = bezout(T, modulus)
    return u


def f_adic_decompose(g: LaurentPoly, f: LaurentPoly, n: int):
    """Write g = sum(window[i] f^i, i < n) + tail * f^n.

    This is the coordinate expression of g in the basis
    {t^j f^n : j in Z} united with {f^0, ..., f^(n-1)}; f must be monic with
    nonzero constant term.  The residue of g modulo <f^n> is computed with
    the inverse of t mod f^n (negative exponents are legal because f(0) != 0)
    and then expanded in f-adic digits.  For linear f the digits are scalars
    automatically; a higher-degree f whose residue leaves the scalar span is
    rejected.
    """
    if n < 1:
        raise BadModulus("n must be a positive integer")
    if not f.is_monic_nonzero_const():
        raise BadModulus("f must be monic in C[t] with nonzero constant term")
    fn = f**n
    if g.is_zero():
        return tuple(Scalar(0) for _ in range(n)), ZERO_POLY
    v = g.valuation()
    if v >= 0:
        _, residue = poly_divmod(g, fn)
    else:
        tinv = t_inverse_mod(fn)
        _, pos = poly_divmod(g.shift(-v), fn)
        shifted = pos * (tinv ** (-v))
        _, residue = poly_divmod(shifted, fn)
    window = []
    rem = residue
    for _ in range(n):
        digit, rem2 = LaurentPoly(), rem
        if not rem.is_zero():
            quotient, digit = poly_divmod(rem, f)
            rem2 = quotient
        if digit.is_zero():
            window.append(Scalar(0))
        elif digit.degree() == 0:
            window.append(digit[0])
        else:
            raise BadModulus(
                "residue is outside the scalar window span; "
                "scalar f-adic windows need deg f = 1 for general g"
            )
        rem = rem2
    recomb = ZERO_POLY
    fp = ONE_POLY
    for c in window:
        recomb = recomb + fp * c
        fp = fp * f
    tail = divide_exact(g - recomb, fn)
    return tuple(window), tail
