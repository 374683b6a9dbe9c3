import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reslie.catalog import load_example
from reslie.cohomology import Cochain1, coboundary_of, d1, is_restricted_cocycle
from reslie.foundation import EVEN, ODD, SuperSpace, in_span, rank
from reslie.liesuper import GradedMap, LieSuperAlgebra, derivation_space, is_inner, rank_one
from reslie.qfrob import (
    BilinearForm, adjoint, build_CP, build_obstruction, closed_forms, cocycle_C, cocycle_C_literal,
    detect_qf, dim_bound_check, form_check, frobenius_exact, orthogonal_complement,
    prop_cocycle_defect, sigma_all, sigma_closed_forms, sigma_wordsum,
)
from reslie.restricted import _even_samples

from conftest import random_even

QF_CASES = [("D7", {"p": 5, "q": 2}), ("D7", {"p": 3}), ("C11A", {"p": 5}), ("D5", {"p": 5}), ("2A11", {"p": 3}),
            ("K2m_odd", {"p": 3, "m": 3}), ("K2m_odd", {"p": 5, "m": 5}), ("K2m_even", {"p": 3, "m": 2}),
            ("K2m_even", {"p": 5, "m": 4})]


def qf_entries():
    for name, params in QF_CASES:
        e = load_example(name, **params)
        for fname, w in e.forms.items():
            yield e, fname, w


def test_catalog_forms_pass_form_check():
    for e, fname, w in qf_entries():
        if (e.name, e.params.get("m"), e.alg.p) == ("K2m_odd", 9, 3):
            continue
        assert form_check(e.alg, w).ok, (e.name, fname)


def test_zero_form_is_degenerate():
    e = load_example("D7", p=5, q=2)
    fc = form_check(e.alg, BilinearForm(np.zeros((4, 4), dtype=np.int64)))
    assert fc.skew and fc.closed and not fc.nondegenerate


def test_orthogonal_complements():
    e = load_example("D7", p=5, q=2)
    w = e.forms["omega"]
    assert orthogonal_complement(e.alg, w, np.eye(4, dtype=np.int64)).shape[0] == 0
    e2 = e.alg.space.vector({"e2": 1}, 5)
    assert in_span(orthogonal_complement(e.alg, w, e2[None]), e2, 5)


def test_detect_examples():
    d7 = load_example("D7", p=5, q=2)
    det = detect_qf(d7.alg, EVEN)
    assert det.exists and form_check(d7.alg, det.found).ok
    k = load_example("K2m_odd", p=5, m=3)
    det = detect_qf(k.alg, ODD)
    assert det.certificate == "common_radical"
    assert in_span(det.radical, k.alg.space.vector({"x1": 1}, 5), 5)


def test_detect_soundness(entry):
    for parity in (EVEN, ODD):
        det = detect_qf(entry.alg, parity, budget=64)
        if det.found is not None:
            assert form_check(entry.alg, det.found).ok
        if det.certificate == "common_radical":
            for G in closed_forms(entry.alg, parity):
                assert not np.any(det.radical @ G % entry.alg.p)


def test_adjoint_examples():
    d7 = load_example("D7", p=5, q=2)
    w = d7.forms["omega"]
    assert adjoint(d7.alg, w, d7.derivations["D1"]) == d7.derivations["D2"]
    zero = GradedMap(np.zeros((4, 4), dtype=np.int64), EVEN)
    assert adjoint(d7.alg, w, zero) == zero
    c = load_example("C11A", p=5)
    D = c.derivations["D"]
    assert adjoint(c.alg, c.forms["omega"], D) == GradedMap((-D.matrix) % 5, ODD)


def test_adjoint_involutive_and_linear():
    for e, _, w in qf_entries():
        if rank(w.gram, e.alg.p) != e.alg.dim:
            continue
        p = e.alg.p
        rng = np.random.default_rng(2)
        for parity in (EVEN, ODD):
            basis = derivation_space(e.alg, parity)
            if not basis:
                continue
            D = basis[int(rng.integers(len(basis)))]
            E = basis[int(rng.integers(len(basis)))]
            assert adjoint(e.alg, w, adjoint(e.alg, w, D)) == D
            S = GradedMap((D.matrix + E.matrix) % p, parity)
            assert adjoint(e.alg, w, S).matrix.tolist() == (
                (adjoint(e.alg, w, D).matrix + adjoint(e.alg, w, E).matrix) % p).tolist()


def test_cocycle_C_matches_literal():
    for e, _, w in qf_entries():
        if rank(w.gram, e.alg.p) != e.alg.dim:
            continue
        for D in e.derivations.values():
            if (D.parity + w.parity) % 2 not in (0, 1):
                continue
            assert np.array_equal(cocycle_C(e.alg, w, D), cocycle_C_literal(e.alg, w, D))


def test_inner_derivation_gives_coboundary_C():
    e = load_example("D7", p=5, q=2)
    w = e.forms["omega"]
    I = np.eye(4, dtype=np.int64)
    for k in e.alg.space.even:
        D = GradedMap(e.alg.ad(I[k]), EVEN)
        C = cocycle_C(e.alg, w, D)
        c = build_CP(e.alg, e.pm, w, D)
        from reslie.foundation import linalg_solve

        sol = linalg_solve(e.alg.table.reshape(16, 4), C.reshape(-1), 5)
        assert sol.consistent


def test_2a11_C_and_P():
    e = load_example("2A11", p=3)
    w, D = e.forms["omega"], e.derivations["D"]
    assert adjoint(e.alg, w, D) == D
    # C(e3, e3) = 2 w(e2, e3) by super antisymmetry of w; nonzero
    i = e.alg.space.index("e3")
    assert cocycle_C(e.alg, w, D)[i, i] != 0
    assert is_restricted_cocycle(e.alg, e.pm, build_CP(e.alg, e.pm, w, D))


def test_sigma_zero_derivation():
    e = load_example("D7", p=5, q=2)
    rng = np.random.default_rng(0)
    zero = GradedMap(np.zeros((4, 4), dtype=np.int64), EVEN)
    assert not np.any(sigma_all(e.alg, e.forms["omega"], zero, random_even(e.alg, rng), random_even(e.alg, rng)))


@pytest.mark.parametrize("name,params", [("D7", {"p": 3}), ("K2m_odd", {"p": 3, "m": 3}), ("K2m_even", {"p": 3, "m": 2}),
                                         ("D7", {"p": 5}), ("K2m_odd", {"p": 5, "m": 5})])
def test_sigma_closed_forms_and_wordsum(name, params):
    e = load_example(name, **params)
    w = e.forms["omega"]
    I = np.eye(e.alg.dim, dtype=np.int64)
    rng = np.random.default_rng(4)
    pairs = [(I[i], I[j]) for i in e.alg.space.even for j in e.alg.space.even]
    pairs += [(random_even(e.alg, rng), random_even(e.alg, rng)) for _ in range(20)]
    for D in e.derivations.values():
        if D.parity != EVEN:
            continue
        for a, b in pairs:
            s = sigma_all(e.alg, w, D, a, b)
            closed = sigma_closed_forms(e.alg, w, D, a, b)
            for i, v in closed.items():
                assert s[i - 1] == v
            assert int(s.sum()) % e.alg.p == sigma_wordsum(e.alg, w, D, a, b)


def test_prop_cocycle_identity_both_directions():
    for name, params in (("D7", {"p": 5}), ("K2m_odd", {"p": 5, "m": 5}), ("K2m_even", {"p": 3, "m": 2})):
        e = load_example(name, **params)
        w = e.forms["omega"]
        I = np.eye(e.alg.dim, dtype=np.int64)
        for D in e.derivations.values():
            if D.parity != EVEN:
                continue
            ident = all(prop_cocycle_defect(e.alg, e.pm, w, D, I[i], I[j]) == 0
                        for i in e.alg.space.even for j in e.alg.space.even)
            assert ident == is_restricted_cocycle(e.alg, e.pm, build_CP(e.alg, e.pm, w, D))


def test_build_obstruction_examples():
    c = load_example("C11A", p=5)
    ob = build_obstruction(c.alg, c.pm, c.forms["omega"], c.derivations["D"], "ortho_odd")
    assert not np.any(ob.cochain.phi) and not np.any(ob.cochain.theta) and ob.is_coboundary
    k = load_example("K2m_odd", p=5, m=5)
    for lam in range(5):
        ob = build_obstruction(k.alg, k.pm, k.forms["omega"], k.derivations["nontrivial"], "ortho_even", lam)
        assert ob.is_coboundary == (lam == 0)


def test_build_obstruction_rejects_wrong_parities():
    d7 = load_example("D7", p=5, q=2)
    with pytest.raises(ValueError):
        build_obstruction(d7.alg, d7.pm, d7.forms["omega"], d7.derivations["D1"], "peri_even")


def test_frobenius_exact():
    ab = LieSuperAlgebra.from_brackets(SuperSpace.build(["a", "b"], []), 5, {})
    w = BilinearForm.from_wedge(ab, [("a", "b", 1)])
    assert frobenius_exact(ab, w) is None
    assert dim_bound_check(ab, w)
    d7 = load_example("D7", p=5, q=2)
    f = frobenius_exact(d7.alg, d7.forms["omega"])
    if f is not None:
        assert np.array_equal(d1(d7.alg, f), d7.forms["omega"].gram)
    for name, params in (("K2m_odd", {"p": 5, "m": 5}), ("K2m_even", {"p": 5, "m": 4}), ("2A11", {"p": 3})):
        e = load_example(name, **params)
        assert frobenius_exact(e.alg, e.forms["omega"]) is None


def test_dim_bound_on_catalog():
    for e, _, w in qf_entries():
        assert dim_bound_check(e.alg, w)
