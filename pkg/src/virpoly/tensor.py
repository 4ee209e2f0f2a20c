"""Tensor products of single-root induced modules with a tail module.

Basis vectors are tuples of per-factor multi-indices together with a basis
monomial of the tail (the empty monomial for the trivial tail); the Lie
action is the Leibniz sum across the slots.  The central element acts only
through the tail: the induced factors kill z.

The cyclicity engine walks an element down to the span of the joint
generator by the leading-index reduction: annihilate every slot except the
leading one with a Bezout-split power of its linear factor, shifted far
enough up to kill the tail, then strictly decrease the leading index.
"""

from __future__ import annotations

from .characters import ExpPolyCharacter, RestrictedCharacter, compose, decompose
from .densepoly import pdeg
from .errors import DepthTooSmall, HypothesisViolation, SearchExhausted
from .induced import ell, get_engine
from .laurent import ONE_POLY, LaurentPoly, bezout, poly_divmod
from .scalars import Scalar, sc
from .tailmod import TailModuleSpec, ann_bound, get_tail_engine, tail_simplicity
from .virasoro import VirElement, theta, vir_bracket


class TensorSpec:
    """Factors (single-root characters with pairwise distinct roots) plus a tail."""

    __slots__ = ("factors", "tail")

    def __init__(self, factors, tail: TailModuleSpec = None):
        factors = tuple(factors)
        if not factors:
            raise ValueError("need at least one induced factor")
        seen = set()
        for mu in factors:
            if not mu.is_single_root():
                raise ValueError("tensor factors must be single-root characters")
            lam, _, _ = mu.root_data()
            if lam in seen:
                raise ValueError("factor roots must be pairwise distinct")
            seen.add(lam)
        self.factors = factors
        self.tail = tail if tail is not None else TailModuleSpec.trivial()

    def engines(self):
        return [get_engine(mu) for mu in self.factors]

    def zero_index(self):
        return tuple(eng.zero_index for eng in self.engines())

    def generator(self) -> "TensorElement":
        return TensorElement({(self.zero_index(), ()): 1})

    def to_json(self):
        return {
            "factors": [mu.to_json()["factors"][0] for mu in self.factors],
            "tail": self.tail.to_json(),
        }

    @staticmethod
    def from_json(obj) -> "TensorSpec":
        factors = [
            ExpPolyCharacter.from_json({"factors": [f]}) for f in obj["factors"]
        ]
        tail = TailModuleSpec.from_json(obj.get("tail", {"type": "trivial"}))
        return TensorSpec(factors, tail)


class TensorElement:
    """Finite map (parts, tail monomial) -> Scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (parts, mono), c in terms.items():
                c = sc(c)
                if not c.is_zero():
                    key = (tuple(tuple(p) for p in parts), tuple(mono))
                    clean[key] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        _tacc(out, other.terms, Scalar(1))
        return TensorElement(out)

    def __sub__(self, other):
        out = dict(self.terms)
        _tacc(out, other.terms, Scalar(-1))
        return TensorElement(out)

    def __mul__(self, c):
        c = sc(c)
        return TensorElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "TensorElement(0)"
        parts = [f"({c}){k}" for k, c in sorted(self.terms.items())]
        return "TensorElement(" + " + ".join(parts) + ")"

    def leading_concat(self) -> tuple:
        """Lexicographic maximum of the concatenated factor indices."""
        if not self.terms:
            raise HypothesisViolation("zero tensor element has no leading index")
        return max(sum(parts, ()) for parts, _ in self.terms)

    def to_json(self):
        return {
            "terms": [
                {
                    "parts": [list(p) for p in parts],
                    "tail": list(mono),
                    "c": self.terms[(parts, mono)].to_json(),
                }
                for parts, mono in sorted(self.terms)
            ]
        }


def _tacc(target: dict, src: dict, coeff: Scalar) -> None:
    if coeff.is_zero():
        return
    for k, c in src.items():
        v = target.get(k)
        v = c * coeff if v is None else v + c * coeff
        if v.is_zero():
            target.pop(k, None)
        else:
            target[k] = v


def tensor_act(spec: TensorSpec, x: VirElement, v: TensorElement) -> TensorElement:
    """Leibniz action: each slot in turn, z only through the tail."""
    engines = spec.engines()
    tail_engine = None if spec.tail.is_trivial() else get_tail_engine(spec.tail)
    g = theta(x)
    out = {}
    for (parts, mono), coeff in v.terms.items():
        for i, eng in enumerate(engines):
            moved = eng.act_on_index(g, parts[i])
            for idx, c in moved.items():
                key = (parts[:i] + (idx,) + parts[i + 1 :], mono)
                _tacc(out, {key: Scalar(1)}, c * coeff)
        if tail_engine is not None:
            moved = tail_engine.act_vir(x, {mono: Scalar(1)})
            for mono2, c in moved.items():
                _tacc(out, {(parts, mono2): Scalar(1)}, c * coeff)
    return TensorElement(out)


def tensor_act_poly(spec: TensorSpec, g: LaurentPoly, v: TensorElement) -> TensorElement:
    return tensor_act(spec, VirElement.from_laurent(g), v)


def _annihilation_exponents(spec: TensorSpec, v: TensorElement):
    """Safe per-factor exponents N_i with <f_i^{N_i}> killing slot i of v.

    N_i = n_i + r_i + (largest first coordinate appearing in slot i) + 1
    makes both the character values and the brackets vanish.
    """
    out = []
    for i, mu in enumerate(spec.factors):
        _, n, p = mu.root_data()
        s0max = 0
        for (parts, _mono) in v.terms:
            if parts[i]:
                s0max = max(s0max, parts[i][0])
        out.append(n + pdeg(p) + s0max + 1)
    return out


def annihilating_shift(spec: TensorSpec, h: LaurentPoly, L: int, w: TensorElement) -> LaurentPoly:
    """A polynomial supported in degrees >= L acting on w like h.

    Write h = g1 t^L + g2 F with F the product of the per-factor annihilating
    powers; the F part acts by zero on the induced slots, so g1 t^L does the
    job.  Coprimality of t^L and F is automatic for nonzero roots.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    if not h.is_polynomial():
        raise ValueError("h must lie in C[t]")
    exps = _annihilation_exponents(spec, w)
    F = ONE_POLY
    for eng, N in zip(spec.engines(), exps):
        F = F * eng.fpow(N)
    if L == 0:
        return h
    tL = LaurentPoly({L: 1})
    u, _v = bezout(tL, F)
    g1 = poly_divmod(h * u, F)[1]
    return g1 * tL


def _tail_ann_bound(spec: TensorSpec, v: TensorElement) -> int:
    if spec.tail.is_trivial():
        return 0
    monos = {mono: Scalar(1) for (_parts, mono) in v.terms}
    return ann_bound(spec.tail, monos)


def cyclic_reduce(
    spec: TensorSpec,
    w: TensorElement,
    max_steps: int = 64,
    j_window: int = 16,
):
    """Reduce w to an element supported on the joint generator index.

    Implements the leading-index descent: pick the first slot i0 whose
    leading part is nonzero, Bezout-split f_{i0}^m against the other slots'
    annihilators, shift above the tail's annihilation bound, and search j
    until the leading concatenated index strictly drops.  Hypotheses: every
    factor degree r_i >= n_i - 2 with a nonzero character (the tail itself
    is untouched, so its simplicity is not needed for the descent).
    """
    for mu in spec.factors:
        _, n, p = mu.root_data()
        if pdeg(p) < n - 2 or mu.is_zero_map():
            raise HypothesisViolation(
                "cyclic reduction needs nonzero factors of degree >= n-2"
            )
    if w.is_zero():
        raise HypothesisViolation("cannot reduce the zero vector")
    engines = spec.engines()
    trace = []
    cur = w
    for _ in range(max_steps):
        lead_parts = max(parts for parts, _ in cur.terms)
        if all(not any(p) for p in lead_parts):
            return trace, cur
        i0 = next(i for i, p in enumerate(lead_parts) if any(p))
        mu = spec.factors[i0]
        _, n, p = mu.root_data()
        r = pdeg(p)
        u = lead_parts[i0]
        l = ell(u)
        m = n + r + 1 - l if l > 0 else n + r + u[0]
        exps = _annihilation_exponents(spec, cur)
        F_lead = engines[i0].fpow(max(exps[i0], m + 1))
        F_hat = ONE_POLY
        for i, eng in enumerate(engines):
            if i != i0:
                F_hat = F_hat * eng.fpow(exps[i])
        ubez, vbez = bezout(F_lead, F_hat)
        fm = engines[i0].fpow(m)
        g_hat = poly_divmod(fm * vbez, F_lead)[1]
        L = _tail_ann_bound(spec, cur)
        found = False
        for j in range(L, L + j_window + 1):
            op = (g_hat * F_hat).shift(j)
            w2 = tensor_act_poly(spec, op, cur) - cur * mu.value_power(j, m)
            if not w2.is_zero() and w2.leading_concat() < cur.leading_concat():
                trace.append({"factor": i0, "j": j, "m": m})
                cur = w2
                found = True
                break
        if not found:
            raise SearchExhausted(
                f"no shift in [{L}, {L + j_window}] decreased the leading index"
            )
    raise SearchExhausted("reduction did not terminate within max_steps")


def simplicity_verdict(spec: TensorSpec, kac_level: int = 20) -> dict:
    """Combine the per-factor degree criterion with the tail criterion.

    A factor is good when deg p >= n - 2; the linear boundary case n = 1
    with the zero character is flagged separately (its module has the
    obvious proper submodule, so it is counted as not simple).
    """
    factors = []
    all_large = True
    zero_linear = False
    for mu in spec.factors:
        lam, n, p = mu.root_data()
        r = pdeg(p)
        large = r >= n - 2
        flag = n == 1 and r == -1
        zero_linear = zero_linear or flag
        all_large = all_large and large
        factors.append(
            {
                "lambda": lam.to_json(),
                "n": n,
                "degree": r,
                "large_degree": large,
                "zero_linear_factor": flag,
            }
        )
    tail = tail_simplicity(spec.tail, kac_level)
    verdict = all_large and tail["simple"] and not zero_linear
    report = {
        "factors": factors,
        "large_degree": all_large,
        "tail": {
            "kind": tail["kind"],
            "simple": tail["simple"],
        },
        "simple": verdict,
    }
    if tail["kind"] == "verma":
        report["tail"]["kac_level"] = kac_level
        report["tail"]["degenerate"] = tail["detail"]["degenerate"]
    return report


def restricted_to_tensor(rc: RestrictedCharacter):
    """Tensor realization of a b_m^F-induced module.

    Splits the character into its full-subalgebra part and the hat part, then
    decomposes the former into single-root factors; the hat part becomes the
    matching tail family (Verma for m = 0, the quotient for m = -1, Whittaker
    for m >= 1).  Returns the spec together with the closed-form hat values.
    """
    ddot, hat = rc.split_muhat()
    parts = decompose(ddot)
    window = hat["window"]
    if rc.m == -1:
        tail = TailModuleSpec.mbar(hat["z"])
    elif rc.m == 0:
        tail = TailModuleSpec.verma(window.get(0, Scalar(0)), hat["z"])
    else:
        tail = TailModuleSpec.whittaker(rc.m, window, hat["z"])
    spec = TensorSpec(parts, tail)
    report = {
        "m": rc.m,
        "hat_window": {str(j): window[j].to_json() for j in sorted(window)},
        "closed_forms": {k: v.to_json() for k, v in rc.muhat_closed_forms().items()},
    }
    return spec, report


def iso_decide(a: TensorSpec, b: TensorSpec) -> dict:
    """Isomorphism of two tensor products, decided on parameter data.

    Isomorphic iff the factor multisets match exactly (root, multiplicity,
    polynomial) after a permutation and the tails agree within the built-in
    families (equal parameters).  Both specs are assumed to carry simple
    tails; cross-family tails are reported as non-isomorphic.
    """
    if len(a.factors) != len(b.factors):
        return {"isomorphic": False, "reason": "different factor counts"}
    remaining = list(range(len(b.factors)))
    perm = []
    for mu in a.factors:
        found = None
        for idx in remaining:
            if b.factors[idx] == mu:
                found = idx
                break
        if found is None:
            return {"isomorphic": False, "reason": "factor data differ"}
        remaining.remove(found)
        perm.append(found)
    if a.tail != b.tail:
        return {"isomorphic": False, "reason": "tail parameters differ"}
    return {"isomorphic": True, "permutation": perm}


# -- slice verification of the induction isomorphisms ----------------------------


def _rank(vectors) -> int:
    """Exact rank of sparse Scalar vectors (dicts keyed by basis labels)."""
    pivots = []  # list of (label, normalized row dict)
    rank = 0
    for vec in vectors:
        row = dict(vec)
        for label, prow in pivots:
            c = row.get(label)
            if c is not None and not c.is_zero():
                for k, v in prow.items():
                    s = row.get(k, Scalar(0)) - c * v
                    if s.is_zero():
                        row.pop(k, None)
                    else:
                        row[k] = s
        row = {k: v for k, v in row.items() if not v.is_zero()}
        if row:
            label = next(iter(row))
            inv = Scalar(1) / row[label]
            prow = {k: v * inv for k, v in row.items()}
            pivots.append((label, prow))
            rank += 1
    return rank


def _word_vectors(spec: TensorSpec, letters, depth: int):
    """All images word . v0 for words over the letters of length <= depth."""
    v0 = spec.generator()
    layer = [v0]
    out = [v0]
    for _ in range(depth):
        nxt = []
        for v in layer:
            for g in letters:
                nxt.append(tensor_act_poly(spec, g, v))
        out.extend(nxt)
        layer = nxt
    return out


def _poly_quotient_reducer(F: LaurentPoly):
    """Coordinates of theta(x) in C[t^+-]/<F> (t is invertible mod F)."""
    from .laurent import t_inverse_mod

    tinv = t_inverse_mod(F)

    def reduce(x: VirElement) -> dict:
        g = theta(x)
        if g.is_zero():
            return {}
        v = min(g.valuation(), 0)
        shifted = g.shift(-v)
        residue = poly_divmod(shifted, F)[1]
        if v < 0:
            residue = poly_divmod(residue * tinv ** (-v), F)[1]
        return {("r", e): c for e, c in residue.coeffs.items()}

    return reduce


def _restricted_quotient_reducer(F: LaurentPoly, m: int):
    """Coordinates of theta(x) in C[t^+-]/span{t^j F : j >= m}.

    Exponents below m survive untouched; the part above reduces modulo F
    inside t^m C[t].
    """

    def reduce(x: VirElement) -> dict:
        g = theta(x)
        out = {}
        high = {}
        for e, c in g.coeffs.items():
            if e < m:
                out[("e", e)] = c
            else:
                high[e - m] = c
        if high:
            residue = poly_divmod(LaurentPoly(high), F)[1]
            for e, c in residue.coeffs.items():
                out[("w", e)] = c
        return out

    return reduce


def _abstract_slice_dim(letters, reduce, depth: int) -> int:
    """Dimension of the depth-d slice of the induced module, by PBW symbols.

    The span of all words of length <= d over the letters, pushed into the
    induced module, has associated graded equal to the span of products of
    images of iterated letter brackets with total bracket length <= d.  The
    images live in the quotient of the algebra by the inducing subalgebra
    (where z dies), so the dimension is pure linear algebra, independent of
    any action engine.
    """
    letter_elems = [VirElement.from_laurent(g) for g in letters]
    by_len = {1: list(letter_elems)}
    for k in range(2, depth + 1):
        by_len[k] = [
            vir_bracket(b, l) for b in by_len[k - 1] for l in letter_elems
        ]
    tagged = []
    for k, elems in by_len.items():
        for el in elems:
            vec = reduce(el)
            if vec:
                tagged.append((k, vec))
    products = []

    def grow(start, budget, symbol):
        products.append(symbol)
        for idx in range(start, len(tagged)):
            k, vec = tagged[idx]
            if k > budget:
                continue
            new = {}
            for mon, c in symbol.items():
                for lab, w in vec.items():
                    key = tuple(sorted(mon + (lab,)))
                    s = new.get(key)
                    s = c * w if s is None else s + c * w
                    if s.is_zero():
                        new.pop(key, None)
                    else:
                        new[key] = s
            if new:
                grow(idx, budget - k, new)

    grow(0, depth, {(): Scalar(1)})
    return _rank(products)


def general_tensor_map(source, depth: int, kind: str = "polynomial") -> dict:
    """Slice verification of the induced-module tensor factorizations.

    kind "polynomial": ``source`` is a list of single-root characters; the
    claim is that the module induced from the product subalgebra matches the
    tensor of the single-root modules.  kind "restricted": ``source`` is a
    RestrictedCharacter; the claim matches the module induced from b_m^F
    with the tensor of the full-subalgebra module and the hat tail.

    Two checks at the given depth:
      * generator equivariance: every subalgebra basis element within the
        depth window acts on the joint generator by the composed character
        value (and z by its value);
      * injectivity: the rank of all word images over a letter alphabet in
        the tensor realization equals the abstract slice dimension computed
        from PBW symbols alone.
    """
    if depth < 1:
        raise DepthTooSmall("slice comparison is vacuous below depth 1")
    if kind == "polynomial":
        parts = list(source)
        spec = TensorSpec(parts, TailModuleSpec.trivial())
        composite = compose(parts)
        F = composite.ambient
        gen = spec.generator()
        equiv = True
        for j in range(-depth, depth + 1):
            x = VirElement.from_laurent(F.shift(j))
            got = tensor_act(spec, x, gen)
            want = gen * composite.seq(j)
            if got != want:
                equiv = False
                break
        if equiv:
            z_ok = tensor_act(spec, VirElement.z(), gen).is_zero()
            equiv = z_ok
        n0 = F.degree()
        letters = [LaurentPoly({i: 1}) for i in range(n0)]
        reducer = _poly_quotient_reducer(F)
    elif kind == "restricted":
        rc = source
        spec, _report = restricted_to_tensor(rc)
        F = rc.ambient()
        p = F.degree()
        gen = spec.generator()
        equiv = True
        for j in range(rc.m, rc.m + 2 * depth + 1):
            x = VirElement.from_laurent(F.shift(j))
            got = tensor_act(spec, x, gen)
            want = gen * rc.mu_x(j)
            if got != want:
                equiv = False
                break
        if equiv:
            got = tensor_act(spec, VirElement.z(), gen)
            equiv = got == gen * rc.z_value
        letters = [LaurentPoly({i: 1}) for i in range(rc.m - depth, rc.m + p)]
        reducer = _restricted_quotient_reducer(F, rc.m)
    else:
        raise ValueError(f"unknown verification kind {kind!r}")
    rank = _rank(v.terms for v in _word_vectors(spec, letters, depth))
    expected = _abstract_slice_dim(letters, reducer, depth)
    return {
        "kind": kind,
        "depth": depth,
        "equivariance": equiv,
        "rank": rank,
        "expected_rank": expected,
        "injective": rank == expected,
        "passed": equiv and rank == expected,
    }
