"""One-dimensional characters of polynomial and restricted subalgebras.

A character of Vir^f is determined by the sequence mu_j = mu(t^j f), which
satisfies the linear recurrence with characteristic polynomial f and hence
has the closed form mu_j = sum_i p_i(j) lambda_i^j over the roots of f, with
deg p_i below the multiplicity n_i.  The central element is always sent to
zero on a full polynomial subalgebra.  Characters of the restricted
subalgebras b_m^f keep a free window of values mu_m .. mu_{2m+p} (p the
degree of f), a free z value, and an exponential-polynomial tail governing
all higher indices.
"""

from __future__ import annotations

from .densepoly import (
    p_from_json,
    p_to_json,
    padd,
    pdeg,
    peval,
    pmonomial,
    pnormalize,
    pscale,
    pshift,
)
from .errors import (
    IndexOutOfSubalgebra,
    NotDivisible,
    NotInIdeal,
    RootCollision,
    SingularSystem,
)
from .laurent import ONE_POLY, LaurentPoly, divide_exact, linear_factor
from .scalars import Scalar, sc


def _sort_key(lam: Scalar):
    return (lam.re, lam.im)


class ExpPolyCharacter:
    """Character data in exponential-polynomial form.

    factors is a tuple of (lambda, n, p) with distinct nonzero lambda and
    deg p < n; the defining ideal is generated by
    ambient = extra * prod (t - lambda_i)^{n_i}, where extra is a monic
    polynomial multiplier with extra(0) != 0 that vanishes at none of the
    lambda_i (the identity multiplier except for restriction images).
    Evaluation: mu(t^j ambient) = sum_i p_i(j) lambda_i^j.
    """

    __slots__ = ("factors", "extra", "ambient", "_power_cache")

    def __init__(self, factors, extra: LaurentPoly = ONE_POLY):
        norm = []
        seen = set()
        for lam, n, p in factors:
            lam = sc(lam)
            p = pnormalize(p)
            if lam.is_zero():
                raise ValueError("character roots must be nonzero")
            if lam in seen:
                raise ValueError("character roots must be distinct")
            seen.add(lam)
            if n < 1:
                raise ValueError("root multiplicities must be positive")
            if pdeg(p) >= n:
                raise ValueError("deg p must be smaller than the root multiplicity")
            norm.append((lam, int(n), p))
        norm.sort(key=lambda t: _sort_key(t[0]))
        self.factors = tuple(norm)
        if not (extra == ONE_POLY):
            if not extra.is_monic_nonzero_const():
                raise ValueError("extra multiplier must be monic with nonzero constant term")
            for lam, _, _ in self.factors:
                if extra.evaluate(lam).is_zero():
                    raise RootCollision("extra multiplier vanishes at a character root")
        self.extra = extra
        amb = extra
        for lam, n, _ in self.factors:
            amb = amb * linear_factor(lam) ** n
        self.ambient = amb
        self._power_cache = {}

    # -- evaluation -----------------------------------------------------

    def seq(self, j: int) -> Scalar:
        """mu_j = mu(t^j ambient)."""
        out = Scalar(0)
        for lam, _, p in self.factors:
            if p:
                out = out + peval(p, j) * lam**j
        return out

    def eval(self, g: LaurentPoly) -> Scalar:
        """Linear extension to the ideal generated by the ambient polynomial."""
        try:
            q = divide_exact(g, self.ambient)
        except NotDivisible as exc:
            raise NotInIdeal(str(exc)) from exc
        out = Scalar(0)
        for j, c in q.coeffs.items():
            out = out + c * self.seq(j)
        return out

    def validate(self, index_range) -> bool:
        """Recurrence oracle: sum_i a_i mu_{m+i} = 0 with a = ambient coefficients."""
        coefs = self.ambient.coeffs
        for m in index_range:
            acc = Scalar(0)
            for i, a in coefs.items():
                acc = acc + a * self.seq(m + i)
            if not acc.is_zero():
                return False
        return True

    # -- degree data ------------------------------------------------------

    def degree_profile(self):
        """(lambda_i, n_i, r_i) with r_i = deg p_i (zero polynomial -> -1)."""
        return [(lam, n, pdeg(p)) for lam, n, p in self.factors]

    def is_large_degree(self) -> bool:
        return all(pdeg(p) >= n - 2 for _, n, p in self.factors)

    def is_zero_map(self) -> bool:
        return all(not p for _, _, p in self.factors)

    # -- single-root helpers ----------------------------------------------

    def is_single_root(self) -> bool:
        return len(self.factors) == 1 and self.extra == ONE_POLY

    def root_data(self):
        if not self.is_single_root():
            raise ValueError("operation requires a single-root character")
        return self.factors[0]

    def power_poly(self, m: int):
        """p_m with mu(t^j f^m) = p_m(j) lambda^j, for m >= n (single root)."""
        lam, n, p = self.root_data()
        if m < n:
            raise NotInIdeal(f"t^j f^{m} is outside the ideal of f^{n}")
        cache = self._power_cache
        if n not in cache:
            cache[n] = p
        if m not in cache:
            start = max(k for k in cache if k <= m)
            cur = cache[start]
            for k in range(start + 1, m + 1):
                cur = derived_power_recurrence(lam, cur, 1)
                cache[k] = cur
        return cache[m]

    def value_power(self, j: int, m: int) -> Scalar:
        lam, _, _ = self.root_data()
        pm = self.power_poly(m)
        if not pm:
            return Scalar(0)
        return peval(pm, j) * lam**j

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExpPolyCharacter):
            return NotImplemented
        return self.factors == other.factors and self.extra == other.extra

    def __hash__(self):
        return hash((self.factors, self.extra))

    def __repr__(self):
        fs = ", ".join(f"(lam={lam}, n={n}, p={list(map(str, p))})" for lam, n, p in self.factors)
        return f"ExpPolyCharacter([{fs}])"

    def to_json(self):
        out = {
            "factors": [
                {"lambda": lam.to_json(), "n": n, "p": p_to_json(p)}
                for lam, n, p in self.factors
            ]
        }
        if not (self.extra == ONE_POLY):
            out["extra"] = self.extra.to_json()
        return out

    @staticmethod
    def from_json(obj) -> "ExpPolyCharacter":
        factors = [
            (Scalar.from_json(f["lambda"]), int(f["n"]), p_from_json(f.get("p", [])))
            for f in obj["factors"]
        ]
        extra = LaurentPoly.from_json(obj["extra"]) if "extra" in obj else ONE_POLY
        out = ExpPolyCharacter(factors, extra)
        if obj.get("field") == "Q":
            _require_rational(out)
        return out


def _require_rational(mu: ExpPolyCharacter) -> None:
    for lam, _, p in mu.factors:
        if not lam.is_rational() or any(not c.is_rational() for c in p):
            raise ValueError("Gaussian character data under field Q")


def single_root_character(lam, n: int, p) -> ExpPolyCharacter:
    return ExpPolyCharacter([(sc(lam), n, pnormalize(p))])


def derived_power_recurrence(lam, p, steps: int = 1):
    """Apply p -> lambda * (p(x+1) - p(x)) the given number of times.

    For a character on <f^n> with f = t - lambda and associated polynomial p,
    iterating from m = n gives the polynomials p_m of mu(t^j f^m); each step
    drops the degree by exactly one until the zero polynomial is reached.
    """
    lam = sc(lam)
    cur = pnormalize(p)
    for _ in range(steps):
        cur = pscale(padd(pshift(cur, 1), pscale(cur, -1)), lam)
    return cur


def derived_power(mu: ExpPolyCharacter, m: int):
    """The polynomial p_m of mu(t^j f^m) for a single-root character, m >= n."""
    lam, n, _ = mu.root_data()
    if m < n:
        raise ValueError("derived powers require m >= n")
    return mu.power_poly(m)


def _restrict_poly(p, g: LaurentPoly, lam: Scalar):
    """q(x) = sum_i c_i lam^i p(x + i) for g = sum_i c_i t^i."""
    out = ()
    for i, c in g.coeffs.items():
        out = padd(out, pscale(pshift(p, i), c * lam**i))
    return out


def restrict(mu: ExpPolyCharacter, g: LaurentPoly) -> ExpPolyCharacter:
    """Restriction of a single-factor character to the ideal of g * ambient.

    Requires g in C[t] with nonzero constant term and g(lambda) != 0.  The
    resulting polynomial has the same degree as p (its leading coefficient
    picks up the nonzero factor g(lambda)).
    """
    if len(mu.factors) != 1:
        raise ValueError("restrict operates on single-factor characters")
    lam, n, p = mu.factors[0]
    if g.is_zero() or not g.is_polynomial():
        raise ValueError("multiplier must be a nonzero element of C[t]")
    if g[0].is_zero():
        raise ValueError("multiplier must have nonzero constant term")
    if g.evaluate(lam).is_zero():
        raise RootCollision("multiplier vanishes at the character root")
    lc = g.leading_coeff()
    q = pscale(_restrict_poly(p, g, lam), Scalar(1) / lc)
    ghat = g * (Scalar(1) / lc)
    extra = mu.extra * ghat if not (ghat == ONE_POLY) else mu.extra
    return ExpPolyCharacter([(lam, n, q)], extra)


def compose(parts) -> ExpPolyCharacter:
    """The sum character on Vir^f, f = prod (t - lambda_i)^{n_i}.

    Each single-root part restricts through the complementary product; the
    result stores the composite factor data (lambda_i, n_i, q_i) with
    deg q_i = deg p_i.
    """
    parts = list(parts)
    for mu in parts:
        if not mu.is_single_root():
            raise ValueError("compose needs single-root characters")
    factors = []
    for i, mu in enumerate(parts):
        lam, n, p = mu.factors[0]
        g = ONE_POLY
        for j, other in enumerate(parts):
            if j != i:
                lam2, n2, _ = other.factors[0]
                g = g * linear_factor(lam2) ** n2
        factors.append((lam, n, _restrict_poly(p, g, lam)))
    return ExpPolyCharacter(factors)


def decompose(mu: ExpPolyCharacter):
    """Split a character on Vir^f into single-root characters summing to it.

    Uses the basis characters gamma_{i,d}(t^j f_i^{n_i}) = j^d lambda_i^j:
    their restrictions to Vir^f have degree exactly d, so the change of basis
    is triangular and degree-preserving by construction.
    """
    if not (mu.extra == ONE_POLY):
        raise ValueError("decompose needs a fully factored ambient polynomial")
    out = []
    for i, (lam, n, q) in enumerate(mu.factors):
        g = ONE_POLY
        for j2, (lam2, n2, _) in enumerate(mu.factors):
            if j2 != i:
                g = g * linear_factor(lam2) ** n2
        # gamma restrictions: q_d has degree exactly d with leading coeff g(lam)
        basis = [_restrict_poly(pmonomial(d), g, lam) for d in range(pdeg(q) + 1)]
        residual = q
        coeffs = [Scalar(0)] * len(basis)
        for d in range(len(basis) - 1, -1, -1):
            if pdeg(residual) < d:
                continue
            qd = basis[d]
            if pdeg(qd) != d or qd[d].is_zero():
                raise SingularSystem("gamma restriction lost degree")
            b = residual[d] / qd[d]
            coeffs[d] = b
            residual = padd(residual, pscale(qd, -b))
        if residual:
            raise SingularSystem("triangular solve left a residual")
        out.append(ExpPolyCharacter([(lam, n, pnormalize(coeffs))]))
    return out


def _solve_linear(rows, rhs):
    """Exact Gaussian elimination; raises SingularSystem on breakdown."""
    n = len(rows)
    a = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not a[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise SingularSystem("no pivot available")
        a[col], a[piv] = a[piv], a[col]
        inv = Scalar(1) / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def solve_exp_poly(values, roots, j0: int) -> ExpPolyCharacter:
    """Fit mu_j = sum_i q_i(j) lambda_i^j through p consecutive values.

    values are mu_{j0} .. mu_{j0+p-1} with p = sum of the multiplicities; the
    confluent Vandermonde system is solved exactly.
    """
    roots = [(sc(lam), int(n)) for lam, n in roots]
    p = sum(n for _, n in roots)
    if len(values) != p:
        raise ValueError("need exactly sum(n_i) consecutive values")
    cols = []
    for lam, n in roots:
        for d in range(n):
            cols.append((lam, d))
    rows = []
    for k in range(p):
        j = j0 + k
        rows.append([sc(j) ** d * lam**j for lam, d in cols])
    sol = _solve_linear(rows, [sc(v) for v in values])
    factors = []
    pos = 0
    for lam, n in roots:
        factors.append((lam, n, pnormalize(sol[pos : pos + n])))
        pos += n
    return ExpPolyCharacter(factors)


class RestrictedCharacter:
    """A character of the restricted subalgebra b_m^F, F = prod (t-lam_i)^{n_i}.

    Stores the free window mu_j for m <= j <= 2m+p (p = deg F), the free
    central value, and the exponential-polynomial tail that matches the
    window on [2m+1, 2m+p] and governs every higher index.
    """

    __slots__ = ("m", "tail", "window", "z_value")

    def __init__(self, m: int, tail: ExpPolyCharacter, window, z_value=0):
        if m < -1:
            raise ValueError("m must be >= -1")
        if not (tail.extra == ONE_POLY):
            raise ValueError("restricted characters need a fully factored F")
        self.m = m
        self.tail = tail
        p = tail.ambient.degree()
        full = {}
        for j in range(m, 2 * m + p + 1):
            if j >= 2 * m + 1:
                expect = tail.seq(j)
                if j in window and not (sc(window[j]) == expect):
                    raise ValueError(f"window value at {j} disagrees with the tail")
                full[j] = expect
            else:
                if j not in window:
                    raise ValueError(f"missing free window value at index {j}")
                full[j] = sc(window[j])
        self.window = full
        self.z_value = sc(z_value)

    @staticmethod
    def from_window(roots, m: int, window, z_value=0) -> "RestrictedCharacter":
        """Build from explicit values mu_j on the whole window [m, 2m+p]."""
        p = sum(n for _, n in roots)
        j0 = 2 * m + 1
        values = []
        for j in range(j0, j0 + p):
            if j not in window:
                raise ValueError(f"missing window value at index {j}")
            values.append(window[j])
        tail = solve_exp_poly(values, roots, j0)
        return RestrictedCharacter(m, tail, window, z_value)

    def ambient(self) -> LaurentPoly:
        return self.tail.ambient

    def degree(self) -> int:
        return self.tail.ambient.degree()

    def mu_x(self, j: int) -> Scalar:
        """mu(x_j^F) for j >= m."""
        if j < self.m:
            raise IndexOutOfSubalgebra(f"x_{j} is outside b_{self.m}^F")
        if j in self.window:
            return self.window[j]
        return self.tail.seq(j)

    def split_muhat(self):
        """Split mu = mu_ddot + mu_hat.

        mu_ddot is the tail extended to a character of the full Vir^F (with
        z -> 0); mu_hat is supported on e_m .. e_{2m} plus z, solved by back
        substitution from sum_i a_i hat_{j+i} = mu_j - ddot_j, where a_i are
        the coefficients of F (a_0 != 0 sits on the diagonal).
        """
        F = self.tail.ambient
        a = F.coeffs
        a0 = a[0]
        hat = {}
        for j in range(2 * self.m, self.m - 1, -1):
            acc = self.mu_x(j) - self.tail.seq(j)
            for i in sorted(a):
                if i == 0:
                    continue
                idx = j + i
                if idx in hat:
                    acc = acc - a[i] * hat[idx]
            hat[j] = acc / a0
        return self.tail, {"window": hat, "z": self.z_value}

    def muhat_closed_forms(self):
        """The corollary values of the hat character, straight from the window.

        For m = 0:   hat_0      = a_0^-2 sum_i a_i mu_i.
        For m >= 1:  hat_{2m}   = a_0^-2 sum_i a_i mu_{2m+i}
                     display    = a_0 sum_i a_i mu_{2m+i-1} - 2 a_1 sum_i a_i mu_{2m+i}
                     hat_{2m-1} = display / a_0^3.
        """
        F = self.tail.ambient
        a = F.coeffs
        a0 = a[0]
        out = {}
        if self.m == 0:
            s = Scalar(0)
            for i, ai in a.items():
                s = s + ai * self.mu_x(i)
            out["hat_0"] = s / (a0 * a0)
        elif self.m >= 1:
            s2 = Scalar(0)
            s1 = Scalar(0)
            for i, ai in a.items():
                s2 = s2 + ai * self.mu_x(2 * self.m + i)
                s1 = s1 + ai * self.mu_x(2 * self.m + i - 1)
            a1 = a.get(1, Scalar(0))
            display = a0 * s1 - 2 * a1 * s2
            out["hat_2m"] = s2 / (a0 * a0)
            out["hat_2m_minus_1"] = display / (a0**3)
            out["hat_2m_minus_1_display"] = display
        return out

    def to_json(self):
        base = self.tail.to_json()
        base["restriction"] = {
            "m": self.m,
            "window": {
                str(j): self.window[j].to_json()
                for j in sorted(self.window)
                if j <= 2 * self.m
            },
            "z": self.z_value.to_json(),
        }
        return base

    @staticmethod
    def from_json(obj) -> "RestrictedCharacter":
        tail = ExpPolyCharacter.from_json(obj)
        r = obj["restriction"]
        window = {int(j): Scalar.from_json(v) for j, v in r.get("window", {}).items()}
        z = Scalar.from_json(r.get("z", "0"))
        if obj.get("field") == "Q":
            if any(not v.is_rational() for v in window.values()) or not z.is_rational():
                raise ValueError("Gaussian character data under field Q")
        return RestrictedCharacter(int(r["m"]), tail, window, z)

    def __repr__(self):
        return f"RestrictedCharacter(m={self.m}, F={self.tail.ambient!r})"


def split_muhat(mu: RestrictedCharacter):
    return mu.split_muhat()


def degree_profile(mu: ExpPolyCharacter):
    return mu.degree_profile()


def is_large_degree(mu: ExpPolyCharacter) -> bool:
    return mu.is_large_degree()
