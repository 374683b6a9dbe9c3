import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reslie.catalog import load_example
from reslie.foundation import EVEN, ODD, SuperSpace, matpow
from reslie.liesuper import AlgebraError, GradedMap, LieSuperAlgebra, ad_power, derivation_space
from reslie.restricted import (
    PMap, has_p_property, is_restricted_derivation, jacobson_complete, p_property_solve, pmap_eval,
    restricted_derivation_space, s_i_all, s_i_wordsum, verify_restricted,
)

from conftest import random_even, random_vec


def abelian(p=5):
    return LieSuperAlgebra.from_brackets(SuperSpace.build(["a", "b"], ["c"]), p, {})


def test_abelian_trivia():
    alg = abelian()
    pm = PMap.zero(alg)
    rng = np.random.default_rng(0)
    a, b = random_even(alg, rng), random_even(alg, rng)
    assert not np.any(s_i_all(alg, a, b))
    assert not np.any(pmap_eval(alg, pm, a))
    assert verify_restricted(alg, pm).ok
    found, rep = jacobson_complete(alg)
    assert found == pm
    assert rep.details["kernel"].shape[0] == 2


def test_s_i_with_zero_b(entry):
    alg = entry.alg
    a = random_even(alg, np.random.default_rng(3))
    assert not np.any(s_i_all(alg, a, np.zeros(alg.dim, dtype=np.int64)))


def test_k2m_restricted_iff_m_le_p():
    for p, m in ((5, 3), (5, 5), (3, 3)):
        e = load_example("K2m_odd", p=p, m=m)
        assert verify_restricted(e.alg, e.pm).ok
    e = load_example("K2m_odd", p=5, m=7)
    assert e.pm is None
    pm, rep = jacobson_complete(e.alg)
    assert pm is None and ("no image", "x0") in rep.failures
    bogus = PMap.from_images(e.alg, {"x0": {}, "x1": {"x1": 1}}, check=False)
    assert not verify_restricted(e.alg, bogus).ok


def test_witt_pmap_is_unique():
    e = load_example("W1", p=5)
    pm, rep = jacobson_complete(e.alg)
    assert pm == e.pm
    assert rep.details["kernel"].shape[0] == 0


def test_from_images_rejects_odd_keys_and_incompatible_images():
    e = load_example("D7", p=5, q=2)
    with pytest.raises(AlgebraError):
        PMap.from_images(e.alg, {"e3": {}})
    with pytest.raises(AlgebraError):
        PMap.from_images(e.alg, {"e1": {"e2": 1}})


def test_restricted_derivation_examples():
    d7 = load_example("D7", p=5, q=2)
    assert is_restricted_derivation(d7.alg, d7.pm, d7.derivations["D1"])
    assert is_restricted_derivation(d7.alg, d7.pm, GradedMap(np.zeros((4, 4), dtype=np.int64), EVEN))
    k = load_example("K2m_odd", p=5, m=5)
    assert not is_restricted_derivation(k.alg, k.pm, k.derivations["not_restricted"])


def test_restricted_derivation_space_matches_sampled_check(entry):
    alg, pm = entry.alg, entry.pm
    for parity in (EVEN, ODD):
        full = derivation_space(alg, parity)
        res = restricted_derivation_space(alg, pm, parity)
        assert len(res) <= len(full)
        for D in res:
            assert is_restricted_derivation(alg, pm, D, samples=16)
        flags = [is_restricted_derivation(alg, pm, D, samples=16) for D in full]
        if all(flags):
            assert len(res) == len(full)


def test_p_property_examples():
    k = load_example("K2m_even", p=3, m=2)
    sol = p_property_solve(k.alg, k.pm, k.derivations["D"])
    assert sol.gamma == 0
    x1 = k.alg.space.vector({"x1": 1}, 3)
    assert np.array_equal(sol.a0 % 3, 0 * x1) or np.count_nonzero(sol.a0) == np.count_nonzero(sol.a0 * x1)
    for l1 in range(3):
        assert has_p_property(k.alg, k.derivations["D"], 0, l1 * x1 % 3)
    d5 = load_example("D5", p=5)
    sol = p_property_solve(d5.alg, d5.pm, d5.derivations["D"])
    assert sol.gamma == 1 and not np.any(sol.a0)
    z = p_property_solve(d5.alg, d5.pm, GradedMap(np.zeros((4, 4), dtype=np.int64), EVEN))
    assert z.gamma == 0 and not np.any(z.a0)


@pytest.mark.parametrize("case", [("D7", {"p": 3}), ("D7", {"p": 5}), ("W1", {"p": 3}), ("W1", {"p": 5}),
                                  ("K2m_odd", {"p": 3, "m": 3}), ("K2m_odd", {"p": 5, "m": 5}),
                                  ("K2m_even", {"p": 3, "m": 2}), ("K2m_even", {"p": 5, "m": 4}),
                                  ("D5", {"p": 3}), ("D5", {"p": 5})])
def test_s_i_oracle(case):
    e = load_example(case[0], **case[1])
    rng = np.random.default_rng(7)
    for _ in range(100):
        a, b = random_even(e.alg, rng), random_even(e.alg, rng)
        assert np.array_equal(s_i_all(e.alg, a, b), s_i_wordsum(e.alg, a, b))


@given(st.integers(0, 2**32 - 1))
def test_pmap_axioms(seed):
    rng = np.random.default_rng(seed)
    for name, params in (("D7", {"p": 5}), ("W1", {"p": 5}), ("K2m_odd", {"p": 3, "m": 3})):
        e = load_example(name, **params)
        alg, pm, p = e.alg, e.pm, e.alg.p
        a, b = random_even(alg, rng), random_even(alg, rng)
        s = int(rng.integers(0, p))
        assert np.array_equal(pmap_eval(alg, pm, s * a % p), s * pmap_eval(alg, pm, a) % p)
        lhs = pmap_eval(alg, pm, (a + b) % p)
        rhs = (pmap_eval(alg, pm, a) + pmap_eval(alg, pm, b) + s_i_all(alg, a, b).sum(axis=0)) % p
        assert np.array_equal(lhs, rhs)
        assert np.array_equal(alg.ad(pmap_eval(alg, pm, a)), ad_power(alg, a, p).matrix)


def test_odd_squaring():
    e = load_example("K2m_odd", p=5, m=5)
    alg, pm = e.alg, e.pm
    y = alg.space.vector({"y3": 1}, 5)
    assert np.array_equal(pmap_eval(alg, pm, y), pmap_eval(alg, pm, alg.bracket(y, y) * 3 % 5))


def test_jacobson_complete_then_verify(entry):
    pm, _ = jacobson_complete(entry.alg)
    assert pm is not None
    assert verify_restricted(entry.alg, pm).ok
