import random

import pytest

from conftest import rand_vir
from virpoly.characters import single_root_character
from virpoly.densepoly import pdeg, peval, pmonomial
from virpoly.errors import HypothesisViolation, ZeroVector
from virpoly.induced import (
    ModuleElement,
    OmegaSpec,
    act_vir,
    bracket_action_oracle,
    closed_form_bracket,
    dstep,
    dtilde,
    ell,
    get_engine,
    index_weight,
    leading_index,
    omega_action,
    omega_iso_check,
    quotient_smalldegree,
    reduce_step,
    reduce_to_generator,
    _omega_equivariant,
)
from virpoly.laurent import LaurentPoly
from virpoly.scalars import Scalar, sc
from virpoly.virasoro import VirElement, vir_bracket


def t(k, c=1):
    return LaurentPoly.t_power(k, c)


def ones_character(lam, n, r):
    return single_root_character(lam, n, [1] * (r + 1) if r >= 0 else [])


class TestMultiIndex:
    def test_derived_data(self):
        assert ell((0, 2, 1)) == 1
        assert dstep((0, 2, 1)) == (0, 1, 1)
        assert dtilde((3, 2, 1)) == (0, 2, 1)
        with pytest.raises(ZeroVector):
            ell((0, 0))

    def test_leading_index(self):
        v = ModuleElement({(0, 1): 3, (2, 0): 2})
        assert leading_index(v) == (2, 0)
        assert leading_index(ModuleElement.basis((0, 0))) == (0, 0)
        with pytest.raises(ZeroVector):
            leading_index(ModuleElement())


class TestActLaurent:
    def test_monomial_on_generator(self):
        # t^k v = lam^k (t^0 v) + k lam^(k-1) mu_0 v
        for lam, mu0 in [(sc(1), sc(3)), (sc(2), sc("1/2")), (sc(-1), sc(1))]:
            mu = single_root_character(lam, 1, [mu0])
            eng = get_engine(mu)
            for k in range(-6, 7):
                got = eng.act(t(k), eng.generator())
                want = ModuleElement({(1,): lam**k, (0,): sc(k) * lam ** (k - 1) * mu0})
                assert got == want

    def test_ideal_acts_by_character(self):
        mu = single_root_character(2, 2, [1, 1])
        eng = get_engine(mu)
        for j in range(-4, 5):
            g = t(j) * eng.fn
            assert eng.act(g, eng.generator()) == eng.generator() * mu.value_power(j, 2)

    def test_gk_polynomial_example(self):
        # (t - t^0) applied to (t^0)v for mu_0 = 2 at lam 1
        mu = single_root_character(1, 1, [2])
        eng = get_engine(mu)
        got = eng.act(LaurentPoly({1: 1, 0: -1}), eng.basis((1,)))
        assert got == ModuleElement({(1,): 1, (0,): -2})

    def test_representation_property(self):
        rng = random.Random(41)
        for n, r in [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)]:
            mu = ones_character(rng.choice([1, 2, -1]), n, r)
            eng = get_engine(mu)
            for _ in range(25):
                x = rand_vir(rng, -4, 4)
                y = rand_vir(rng, -4, 4)
                idx = tuple(rng.randint(0, 2) for _ in range(n))
                v = eng.basis(idx)
                lhs = eng.act_vir(x, eng.act_vir(y, v)) - eng.act_vir(y, eng.act_vir(x, v))
                assert lhs == eng.act_vir(vir_bracket(x, y), v)

    def test_act_vir_kills_z(self):
        mu = single_root_character(1, 2, [1])
        eng = get_engine(mu)
        v = eng.basis((1, 1))
        assert eng.act_vir(VirElement.z(5), v).is_zero()
        assert eng.act_vir(VirElement.e(1) + VirElement.z(2), v) == eng.act(t(1), v)


class TestClosedForm:
    def test_high_ell_zero_case(self):
        mu = ones_character(1, 3, 1)
        # ell = 2, m > n + r + 1 - ell = 3
        out = closed_form_bracket(mu, 2, 4, (0, 0, 1))
        assert out.is_zero()

    def test_binomial_case_example(self):
        # n=2, r=0, s=(0,1), m = n+r = 2: -(index (0,0)) for the all-ones p
        mu = ones_character(1, 2, 0)
        out = closed_form_bracket(mu, 5, 2, (0, 1))
        assert out == ModuleElement({(0, 0): -1})

    def test_s0_equality_example(self):
        # n=1, constant p = c, s=(1,), m = 2: -2 c lam^(j+1) v
        c, lam = sc(3), sc(2)
        mu = single_root_character(lam, 1, [c])
        for j in range(-3, 4):
            out = closed_form_bracket(mu, j, 2, (1,))
            assert out == ModuleElement({(0,): sc(-2) * c * lam ** (j + 1)})

    def test_agrees_with_oracle_on_grid(self):
        for n in range(1, 4):
            for r in range(-1, n):
                mu = ones_character(2, n, r)
                for s in _small_indices(n):
                    l = ell(s)
                    if l > 0:
                        lo = max(n, n + r + 1 - l)
                    else:
                        lo = n + r + s[0] + (1 if r < 0 else 0)
                    for m in range(lo, lo + 2):
                        for j in (-2, 0, 3):
                            assert closed_form_bracket(mu, j, m, s) == bracket_action_oracle(
                                mu, j, m, s
                            )

    def test_literal_denominator_disagrees(self):
        mu = ones_character(1, 2, 1)
        # s_0 = 2 != r = 1, equality case m = n + r + s_0
        s = (2, 0)
        good = closed_form_bracket(mu, 0, 5, s)
        bad = closed_form_bracket(mu, 0, 5, s, literal_denominator=True)
        oracle = bracket_action_oracle(mu, 0, 5, s)
        assert good == oracle and bad != oracle

    def test_hypothesis_violations(self):
        mu = ones_character(1, 2, 1)
        with pytest.raises(HypothesisViolation):
            closed_form_bracket(mu, 0, 1, (0, 1))  # m < n
        with pytest.raises(HypothesisViolation):
            closed_form_bracket(mu, 0, 2, (1, 0))  # m < n + r + s_0
        with pytest.raises(HypothesisViolation):
            closed_form_bracket(mu, 0, 2, (0, 0))


def _small_indices(n, top=3):
    from itertools import product

    for s in product(range(top + 1), repeat=n):
        if 0 < sum(s) <= top:
            yield s


class TestSizeBound:
    def test_weight_drops(self):
        for n in range(1, 4):
            for r in range(-1, n):
                mu = ones_character(1, n, r)
                for s in _small_indices(n):
                    for m in range(n + s[0], n + s[0] + 2):
                        out = bracket_action_oracle(mu, 2, m, s)
                        assert all(index_weight(i) < index_weight(s) for i in out.terms)


class TestReduceStep:
    def test_linear_example(self):
        mu = single_root_character(1, 1, [2])
        eng = get_engine(mu)
        (j, m), w = reduce_step(mu, eng.basis((1,)))
        assert m == 2
        assert leading_index(w) == (0,)

    def test_generator_rejected(self):
        mu = single_root_character(1, 1, [2])
        eng = get_engine(mu)
        with pytest.raises(HypothesisViolation):
            reduce_step(mu, eng.generator())

    def test_n2_linear_p(self):
        mu = single_root_character(1, 2, [0, 1])
        eng = get_engine(mu)
        (j, m), w = reduce_step(mu, eng.basis((0, 1)))
        assert m == 3  # n + r + 1 - ell = 2 + 1 + 1 - 1
        assert leading_index(w) == (0, 0)
        assert abs(j) <= 5

    def test_strict_descent_to_generator(self):
        rng = random.Random(55)
        for n, r in [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)]:
            mu = ones_character(rng.choice([1, 2]), n, r)
            eng = get_engine(mu)
            for s in _small_indices(n):
                trace, final = reduce_to_generator(mu, eng.basis(s))
                assert set(final.terms) == {eng.zero_index}
                assert len(trace) <= index_weight(s) + 3

    def test_small_degree_rejected(self):
        mu = ones_character(1, 3, 0)
        eng = get_engine(mu)
        with pytest.raises(HypothesisViolation):
            reduce_step(mu, eng.basis((1, 0, 0)))

    def test_mixed_vectors_reduce(self):
        # lower terms may not overtake the reduced leading index
        rng = random.Random(71)
        for n, r in [(2, 1), (3, 2)]:
            mu = ones_character(2, n, r)
            eng = get_engine(mu)
            for _ in range(10):
                terms = {}
                for _ in range(3):
                    idx = tuple(rng.randint(0, 2) for _ in range(n))
                    terms[idx] = sc(rng.randint(1, 3))
                v = ModuleElement(terms)
                if not any(any(s) for s in v.terms):
                    continue
                lead = leading_index(v)
                if not any(lead):
                    continue
                (j, m), w = reduce_step(mu, v)
                target = dstep(lead) if ell(lead) > 0 else dtilde(lead)
                assert leading_index(w) == target
                trace, final = reduce_to_generator(mu, v)
                assert set(final.terms) == {eng.zero_index}


class TestOmega:
    def test_action_values(self):
        spec = OmegaSpec(sc(2), sc(3))
        # e_k . 1 = lam^k (d + k(b-1))
        assert omega_action(spec, 1, [sc(1)]) == (sc(2) * sc(2), sc(2))
        # e_0 . d = d^2
        spec2 = OmegaSpec(sc(1), sc(0))
        assert omega_action(spec2, 0, pmonomial(1)) == (sc(0), sc(0), sc(1))

    def test_x_k_value(self):
        # (e_{k+1} - lam e_k).1 = lam^(k+1) (b-1)
        lam, b = sc(2), sc(5)
        spec = OmegaSpec(lam, b)
        for k in range(-3, 4):
            hi = omega_action(spec, k + 1, [sc(1)])
            lo = omega_action(spec, k, [sc(1)])
            diff = [
                (hi[i] if i < len(hi) else sc(0)) - lam * (lo[i] if i < len(lo) else sc(0))
                for i in range(max(len(hi), len(lo)))
            ]
            while diff and diff[-1].is_zero():
                diff.pop()
            assert diff == [lam ** (k + 1) * (b - sc(1))]

    def test_iso_grid(self):
        for lam in ("1", "2", "1/2"):
            for b in ("0", "2", "-1"):
                assert omega_iso_check(OmegaSpec(sc(lam), sc(b)), 3)

    def test_perturbed_character_fails(self):
        spec = OmegaSpec(sc(1), sc(2))
        wrong = single_root_character(sc(1), 1, [sc(2)])  # should be lam(b-1) = 1
        assert not _omega_equivariant(spec, wrong, 3)


class TestQuotient:
    def test_zero_map(self):
        rep, mp = quotient_smalldegree(single_root_character(1, 2, []))
        assert mp.is_zero_map()

    def test_degree_and_values(self):
        mu = single_root_character(1, 3, [1])
        rep, mp = quotient_smalldegree(mu)
        lam, n1, q = mp.root_data()
        assert pdeg(q) == 1 and n1 == 2
        # q(j) = j for constant p = 1 at lam 1
        assert q == (sc(0), sc(1))

    def test_partial_sums_both_signs(self):
        lam = sc(2)
        mu = single_root_character(lam, 4, [1, 1])
        rep, mp = quotient_smalldegree(mu)
        p = mu.factors[0][2]
        for j in range(-6, 7):
            if j == 0:
                want = Scalar(0)
            elif j > 0:
                want = lam ** (j - 1) * sum(
                    (peval(p, i) for i in range(0, j)), Scalar(0)
                )
            else:
                want = -(lam ** (j - 1)) * sum(
                    (peval(p, -i) for i in range(1, -j + 1)), Scalar(0)
                )
            assert mp.value_power(j, 3) == want

    def test_eigen_relation_checked(self):
        rep, _ = quotient_smalldegree(single_root_character(1, 4, [1, 1]))
        assert rep["eigen_ok"]

    def test_hypothesis_checks(self):
        with pytest.raises(HypothesisViolation):
            quotient_smalldegree(single_root_character(1, 2, [1]))  # r > n-3
        with pytest.raises(HypothesisViolation):
            quotient_smalldegree(single_root_character(1, 1, []))  # linear w/o flag

    def test_linear_flag_readings(self):
        # zero character: slice invariant, quotient exists
        rep, mp = quotient_smalldegree(single_root_character(1, 1, []), allow_linear=True)
        assert mp is None and "quotient" in rep
        # nonzero character: the action oracle rejects the reading
        with pytest.raises(HypothesisViolation):
            quotient_smalldegree(single_root_character(1, 1, [2]), allow_linear=True)


class TestNonSimplicityWitness:
    def test_zero_mu_invariant_slice(self):
        mu = single_root_character(1, 1, [])
        eng = get_engine(mu)
        for k in range(-4, 5):
            for s0 in range(1, 5):
                out = eng.act(t(k), eng.basis((s0,)))
                assert all(idx[0] >= 1 for idx in out.terms)


class TestTwistEquivariance:
    def test_scaled_action_matches(self):
        # act in V over t - lam equals lam^k times act in V over t - 1
        for lam, mu0 in [(sc(2), sc(3)), (sc("-1/2"), sc(1))]:
            mu_l = single_root_character(lam, 1, [mu0])
            nu = single_root_character(1, 1, [mu0 / lam])
            el, en = get_engine(mu_l), get_engine(nu)
            for k in range(-3, 4):
                for s0 in range(0, 4):
                    a = el.act(t(k), el.basis((s0,)))
                    b = en.act(t(k), en.basis((s0,))) * lam**k
                    assert a == b


def test_module_element_json_round_trip():
    v = ModuleElement({(1, 0): sc("2/3"), (0, 2): sc(-1)})
    assert ModuleElement.from_json(v.to_json()) == v
