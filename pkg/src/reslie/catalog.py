"""Worked examples as executable fixtures, with their claims as checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .foundation import EVEN, ODD, SuperSpace, fp, is_prime
from .liesuper import GradedMap, LieSuperAlgebra, rank_one

NAMES = ("D7", "C11A", "D5", "2A11", "W1", "K2m_odd", "K2m_even")


@dataclass
class ExampleEntry:
    name: str
    params: dict
    alg: LieSuperAlgebra
    pm: object = None  # PMap or None when no p-map exists
    forms: dict = field(default_factory=dict)  # name -> BilinearForm
    derivations: dict = field(default_factory=dict)  # name -> GradedMap
    recipes: dict = field(default_factory=dict)  # name -> (form name, ExtensionRecipe)


class ParameterError(ValueError):
    pass


def _check_p(p):
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise ParameterError(f"p must be an odd prime, got {p!r}")


# ------------------------------------------------------------------ builders

def _algebra(even, odd, p, brackets, name):
    return LieSuperAlgebra.from_brackets(SuperSpace.build(even, odd), p, brackets, name)


def _with_pmap(entry: ExampleEntry, images: dict):
    from .restricted import PMap

    entry.pm = PMap.from_images(entry.alg, images)
    return entry


def d7(p: int, q=2, u=0, lam=-1) -> ExampleEntry:
    _check_p(p)
    q = fp(q, p)
    if q in (0, 1):
        raise ParameterError("D7 needs q not in {0, 1}")
    alg = _algebra(["e1", "e2"], ["e3", "e4"], p,
                   {("e1", "e2"): {"e2": 1}, ("e1", "e3"): {"e3": q}, ("e1", "e4"): {"e4": -q}}, "D7")
    e = ExampleEntry("D7", {"p": p, "q": q, "u": fp(u, p), "lam": fp(lam, p)}, alg)
    _with_pmap(e, {"e1": {"e1": 1}, "e2": {}})
    e.forms["omega"] = _form(alg, [("e1", "e2", 1), ("e3", "e4", 1)])
    e.derivations["D1"] = rank_one(alg.space, [("e3", "e3", 1)], p, EVEN)
    e.derivations["D2"] = rank_one(alg.space, [("e4", "e4", 1)], p, EVEN)
    e.recipes["main"] = ("omega", _recipe(
        "ortho_even", e.derivations["D1"], lam=lam, gamma=1, Z=_v(alg, e2=u), P=_v(alg, e1=u), case=_case(lam, p)))
    return e


def c11a(p: int) -> ExampleEntry:
    _check_p(p)
    alg = _algebra(["e1", "e2"], ["e3", "e4"], p,
                   {("e1", "e2"): {"e2": 1}, ("e1", "e3"): {"e3": 1}, ("e3", "e4"): {"e2": 1}}, "C11A")
    e = ExampleEntry("C11A", {"p": p}, alg)
    _with_pmap(e, {"e1": {"e1": 1}, "e2": {}})
    e.forms["omega"] = _form(alg, [("e1", "e2", 1), ("e3", "e4", -1)])
    e.derivations["D"] = rank_one(alg.space, [("e1", "e4", 1), ("e3", "e2", 1)], p, ODD)
    e.recipes["main"] = ("omega", _recipe("ortho_odd", e.derivations["D"]))
    return e


def d5(p: int, lam=0) -> ExampleEntry:
    _check_p(p)
    alg = _algebra(["e1", "e2"], ["e3", "e4"], p,
                   {("e1", "e3"): {"e3": 1}, ("e1", "e4"): {"e4": 1}, ("e2", "e4"): {"e3": 1}}, "D5")
    e = ExampleEntry("D5", {"p": p, "lam": fp(lam, p)}, alg)
    _with_pmap(e, {"e1": {"e1": 1}, "e2": {}})
    e.forms["omega"] = _form(alg, [("e1", "e3", 1), ("e2", "e4", 1)])
    e.derivations["D"] = rank_one(alg.space, [("e2", "e2", 1), ("e4", "e4", -1)], p, EVEN)
    e.recipes["main"] = ("omega", _recipe("peri_even", e.derivations["D"], lam=lam, gamma=1))
    return e


def two_a11(p: int, u=(0, 0), v=(0, 0), b0=(0, 0), mu=0) -> ExampleEntry:
    _check_p(p)
    half = Fraction(1, 2)
    alg = _algebra(["e1", "e2"], ["e3", "e4"], p,
                   {("e3", "e3"): {"e1": 1}, ("e4", "e4"): {"e2": 1},
                    ("e3", "e4"): {"e1": half, "e2": half}}, "2A11")
    e = ExampleEntry("2A11", {"p": p, "u": tuple(u), "v": tuple(v), "b0": tuple(b0), "mu": mu}, alg)
    _with_pmap(e, {"e1": {"e1": u[0], "e2": v[0]}, "e2": {"e1": u[1], "e2": v[1]}})
    e.forms["omega"] = _form(alg, [("e2", "e3", 1), ("e1", "e4", -1)])
    e.derivations["D"] = rank_one(alg.space, [("e2", "e3", 1)], p, ODD)
    e.recipes["main"] = ("omega", _recipe("peri_odd", e.derivations["D"], b0=_v(alg, e1=b0[0], e2=b0[1]), mu=mu))
    return e


def witt(p: int) -> ExampleEntry:
    _check_p(p)
    names = [f"e{i}" for i in range(-1, p - 1)]
    br = {}
    for i in range(-1, p - 1):
        for j in range(i + 1, p - 1):
            if -1 <= i + j <= p - 2 and (j - i) % p:
                br[(f"e{i}", f"e{j}")] = {f"e{i + j}": j - i}
    alg = _algebra(names, [], p, br, "W1")
    e = ExampleEntry("W1", {"p": p}, alg)
    _with_pmap(e, {f"e{i}": ({"e0": 1} if i == 0 else {}) for i in range(-1, p - 1)})
    return e


def _k2m_space(m):
    return ["x0", "x1"], [f"y{i}" for i in range(1, m + 1)]


def k2m_odd(p: int, m: int = 3, lam=0) -> ExampleEntry:
    _check_p(p)
    if m < 1 or m % 2 == 0:
        raise ParameterError("K2m_odd needs an odd m >= 1")
    even, odd = _k2m_space(m)
    br = {("x0", f"y{i}"): {f"y{i + 1}": 1} for i in range(1, m)}
    for i in range(1, (m + 1) // 2 + 1):
        br[(f"y{i}", f"y{m + 1 - i}")] = {"x1": (-1) ** (i + 1)}
    alg = _algebra(even, odd, p, br, "K2m_odd")
    e = ExampleEntry("K2m_odd", {"p": p, "m": m, "lam": fp(lam, p)}, alg)
    if m <= p:
        _with_pmap(e, {"x0": {}, "x1": {"x1": 1}})
    if m % p == 0:
        e.forms["omega"] = _form(alg, k2m_odd_form_terms(m))
    if m == p:
        e.derivations["not_restricted"] = rank_one(
            alg.space, [("x1", "x1", 1)] + [(f"y{i}", f"y{i}", -Fraction(p - 1, 2)) for i in range(1, p + 1)], p, EVEN)
        e.derivations["trivial"] = rank_one(alg.space, [("x1", "x0", 1)], p, EVEN)
        e.derivations["nontrivial"] = rank_one(alg.space, [(f"y{p - 1}", "y1", 1), (f"y{p}", "y2", 1)], p, EVEN)
        e.recipes["trivial"] = ("omega", _recipe("ortho_even", e.derivations["trivial"], case="b"))
        D = e.derivations["nontrivial"]
        if p == 3:
            g = pow(lam, p - 1, p)
            e.recipes["nontrivial"] = ("omega", _recipe(
                "ortho_even", D, lam=lam, Z=_v(alg, x0=lam), gamma=g, a0=_v(alg, x0=-g), b0=_v(alg, x1=1),
                sigma=1, P=_v(alg, x1=1), case=_case(lam, p)))
        else:
            e.recipes["nontrivial"] = ("omega", _recipe(
                "ortho_even", D, lam=lam, Z=_v(alg, x1=1), a0=_v(alg, x1=1), case=_case(lam, p)))
    return e


def k2m_odd_form_terms(m: int):
    half = Fraction(1, 2)
    terms = [("x0", "x1", 1), ("y1", "y1", -half),
             (f"y{(m + 1) // 2}", f"y{(m + 3) // 2}", -half * (-1) ** ((m + 3) // 2))]
    for i in range(1, (m - 3) // 2 + 1):
        terms.append((f"y{i + 1}", f"y{m + 1 - i}", -i * (-1) ** (i + 1)))
    return terms


def k2m_even(p: int, m: int = 2, l1=0, l2=0, t=0, s=0, sigma=0) -> ExampleEntry:
    _check_p(p)
    if m < 2 or m % 2:
        raise ParameterError("K2m_even needs an even m >= 2")
    even, odd = _k2m_space(m)
    br = {("x0", f"y{i}"): {f"y{i + 1}": 1} for i in range(1, m)}
    for i in range(1, m // 2 + 1):
        br[(f"y{i}", f"y{m - i}")] = {"x1": (-1) ** ((m - 2 * i) // 2)}
    alg = _algebra(even, odd, p, br, "K2m_even")
    e = ExampleEntry("K2m_even", {"p": p, "m": m, "l1": fp(l1, p), "l2": fp(l2, p), "t": fp(t, p),
                                  "s": fp(s, p), "sigma": fp(sigma, p)}, alg)
    if m <= p:
        _with_pmap(e, {"x0": {}, "x1": {"x1": 1}})
    if m < p:
        e.forms["omega"] = _form(alg, k2m_even_form_terms(m))
    if p == 3 and m == 2:
        e.forms["omega_odd"] = _form(alg, [("x0", "y2", 1), ("x1", "y1", 1)])
    e.derivations["D"] = rank_one(alg.space, [("x1", "x0", 1)], p, EVEN)
    if "omega" in e.forms:
        e.recipes["main"] = ("omega", _recipe(
            "ortho_even", e.derivations["D"], a0=_v(alg, x1=l1), b0=_v(alg, x1=l2),
            Z=_v(alg, **{"x1": t, f"y{m}": s}), sigma=sigma, case="b"))
    return e


def k2m_even_form_terms(m: int):
    terms = [(f"y{i}", f"y{m - i + 1}", (-1) ** (m // 2 - i + 1) * (m - 2 * i + 1)) for i in range(1, m // 2 + 1)]
    return terms + [("x0", "x1", 2)]


def _v(alg, **coeffs):
    return alg.space.vector(coeffs, alg.p)


def _case(lam, p):
    return "a" if fp(lam, p) else "b"


def _recipe(kind, D, **kw):
    from .doubleext import ExtensionRecipe

    return ExtensionRecipe(kind, D, **kw)


def _form(alg, terms):
    from .qfrob import BilinearForm

    return BilinearForm.from_wedge(alg, terms)


_BUILDERS = {
    "D7": d7,
    "C11A": c11a,
    "D5": d5,
    "2A11": two_a11,
    "W1": witt,
    "K2m_odd": k2m_odd,
    "K2m_even": k2m_even,
}


def load_example(name: str, **params) -> ExampleEntry:
    if name not in _BUILDERS:
        raise ParameterError(f"unknown example {name!r}; choose from {', '.join(NAMES)}")
    return _BUILDERS[name](**params)


# ------------------------------------------------------------------- claims

@dataclass
class ClaimResult:
    label: str
    ok: bool
    note: str = ""


@dataclass
class ClaimReport:
    name: str
    params: dict
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def lines(self):
        for r in self.results:
            tail = f" ({r.note})" if r.note else ""
            yield f"{r.label}: {'PASS' if r.ok else 'FAIL'}{tail}"


def _gram(alg, terms):
    from .foundation import gram_from_wedge

    return gram_from_wedge(alg.space, terms, alg.p)


def _extends(entry, recipe_name="main"):
    from .doubleext import extend, reduce, same_structure

    form_name, r = entry.recipes[recipe_name]
    w = entry.forms[form_name]
    g, pm_g, w_g = extend(entry.alg, entry.pm, w, r)
    return g, pm_g, w_g


def _roundtrip(entry, recipe_name="main"):
    from .doubleext import build_extension, reduce, same_structure

    form_name, r = entry.recipes[recipe_name]
    w = entry.forms[form_name]
    g, pm_g, w_g = _extends(entry, recipe_name)
    x = np.eye(g.dim, dtype=np.int64)[0]
    a, pm_a, w_a, r2, adapted = reduce(g, w_g, pm_g, x, r.kind)
    return (
        np.array_equal(a.table, entry.alg.table)
        and np.array_equal(w_a.gram, w.gram)
        and pm_a == entry.pm
        and same_structure(build_extension(a, pm_a, w_a, r2), (g, pm_g, w_g))
    )


def _validates(entry, recipe_name="main"):
    from .doubleext import validate_recipe

    form_name, r = entry.recipes[recipe_name]
    return validate_recipe(entry.alg, entry.pm, entry.forms[form_name], r).ok


def _sweep(p):
    """Parameter values exercised for a symbolic scalar: all of F_p for p = 3, a seeded sample otherwise."""
    if p == 3:
        return list(range(p))
    rng = np.random.default_rng(p)
    return sorted({0, 1, p - 1, *rng.integers(0, p, size=3).tolist()})


def _claims_d7(e):
    from .qfrob import adjoint, build_obstruction, cocycle_C, form_check

    alg, p, w = e.alg, e.alg.p, e.forms["omega"]
    D1, D2 = e.derivations["D1"], e.derivations["D2"]
    q = e.params["q"]
    from .restricted import is_restricted_derivation

    def omega_formula():
        for lam in range(p):
            ob = build_obstruction(alg, e.pm, w, D1, "ortho_even", lam)
            target = (lam + 1) * (rank_one(alg.space, [("e3", "e3", 1), ("e4", "e4", 1)], p).matrix) % p
            if not np.array_equal(ob.M_omega, target):
                return False
        return True

    def coboundary_iff():
        for u in _sweep(p):
            for lam in range(p):
                P = alg.space.vector({"e1": u}, p)
                ob = build_obstruction(alg, e.pm, w, D1, "ortho_even", lam, P)
                if ob.is_coboundary != (lam == p - 1):
                    return False
        return True

    def recipe_u():
        return all(_validates(d7(p, q, u=u)) for u in _sweep(p))

    return [
        ("form passes form_check", lambda: form_check(alg, w).ok),
        ("D1, D2 are restricted derivations", lambda: is_restricted_derivation(alg, e.pm, D1) and is_restricted_derivation(alg, e.pm, D2)),
        ("adjoint(D1) = D2", lambda: adjoint(alg, w, D1) == D2),
        ("Omega = (lambda+1)(e3 (x) e3* + e4 (x) e4*)", omega_formula),
        ("coboundary iff λ=−1", coboundary_iff),
        ("C = e3*∧e4*", lambda: np.array_equal(cocycle_C(alg, w, D1), _gram(alg, [("e3", "e4", 1)]))),
        ("recipe (λ=−1, γ=1, Z=u e2, P(e1)=u) validates for all u", recipe_u),
        ("extension passes post-checks", lambda: bool(_extends(d7(p, q, u=e.params["u"])))),
        ("reduce recovers D7", lambda: _roundtrip(d7(p, q, u=e.params["u"]))),
    ]


def _claims_c11a(e):
    from .liesuper import center
    from .qfrob import adjoint, build_obstruction, cocycle_C, form_check

    alg, p, w, D = e.alg, e.alg.p, e.forms["omega"], e.derivations["D"]

    def c_delta_zero():
        ob = build_obstruction(alg, e.pm, w, D, "ortho_odd")
        return not np.any(cocycle_C(alg, w, D)) and not np.any(ob.cochain.theta)

    return [
        ("form passes form_check", lambda: form_check(alg, w).ok),
        ("D* = −D", lambda: adjoint(alg, w, D).matrix.tolist() == ((-D.matrix) % p).tolist()),
        ("(C, Δ) = (0, 0)", c_delta_zero),
        ("center is zero, so a0 = 0", lambda: center(alg).shape[0] == 0),
        ("a0 = 0 extension succeeds", lambda: bool(_extends(e))),
        ("reduce recovers C11A", lambda: _roundtrip(e)),
    ]


def _claims_d5(e):
    from .foundation import matpow
    from .qfrob import adjoint, build_obstruction, cocycle_C, form_check

    alg, p, w, D = e.alg, e.alg.p, e.forms["omega"], e.derivations["D"]
    return [
        ("form passes form_check (periplectic)", lambda: form_check(alg, w).ok and w.parity == ODD),
        ("D* = −D", lambda: adjoint(alg, w, D).matrix.tolist() == ((-D.matrix) % p).tolist()),
        ("D^p = D (γ=1, a0=0)", lambda: np.array_equal(matpow(D.matrix, p, p), D.matrix)),
        ("Ω = C = 0 for every λ", lambda: not np.any(cocycle_C(alg, w, D)) and all(
            not np.any(build_obstruction(alg, e.pm, w, D, "peri_even", lam).cochain.phi) for lam in range(p))),
        ("every λ in F_p is a root of λ^p = λ", lambda: all(pow(lam, p, p) == lam for lam in range(p))),
        ("recipe validates and extends for every λ", lambda: all(bool(_extends(d5(p, lam))) for lam in range(p))),
        ("reduce recovers D5", lambda: _roundtrip(e)),
    ]


def _claims_2a11(e):
    from .qfrob import adjoint, build_obstruction, cocycle_C, form_check
    from .restricted import verify_restricted

    alg, p, w, D = e.alg, e.alg.p, e.forms["omega"], e.derivations["D"]

    def pmaps():
        for u1, u2, v1, v2 in np.ndindex(*(len(_sweep(p)),) * 4):
            s = _sweep(p)
            try:
                two_a11(p, (s[u1], s[u2]), (s[v1], s[v2]))
            except ValueError:
                return False
        return True

    def omega_delta_p():
        ob = build_obstruction(alg, e.pm, w, D, "peri_odd")
        r = e.recipes["main"][1]
        return not np.any(ob.cochain.phi) and not np.any(ob.cochain.theta) and (r.P is None or not np.any(r.P))

    return [
        ("form passes form_check (periplectic)", lambda: form_check(alg, w).ok and w.parity == ODD),
        ("every p-map e_i -> u_i e1 + v_i e2 is compatible", pmaps),
        ("D* = D", lambda: adjoint(alg, w, D) == D),
        ("Ω = Δ = P = 0", omega_delta_p),
        ("C = 0", lambda: not np.any(cocycle_C(alg, w, D))),
        ("a0 = 0, arbitrary b0 in span{e1, e2} extends", lambda: all(
            bool(_extends(two_a11(p, b0=(l1, l2)))) for l1 in _sweep(p) for l2 in _sweep(p))),
        ("reduce recovers 2A11", lambda: _roundtrip(e)),
    ]


def _claims_w1(e):
    from .qfrob import closed_forms, detect_qf

    alg = e.alg
    i0 = alg.space.index("e0")
    return [
        ("every closed form has zero e0 row", lambda: all(not np.any(G[i0]) for G in closed_forms(alg, EVEN))),
        ("no non-degenerate closed form (common radical)", lambda: detect_qf(alg, EVEN).certificate == "common_radical"),
        ("no non-degenerate closed form (any certificate)", lambda: detect_qf(alg, EVEN).exists is False),
    ]


def _claims_k_odd(e):
    from .qfrob import adjoint, build_obstruction, cocycle_C, detect_qf, form_check
    from .restricted import is_restricted_derivation, jacobson_complete

    alg, p, m = e.alg, e.alg.p, e.params["m"]
    out = [
        ("restricted iff m ≤ p", lambda: (jacobson_complete(alg)[0] is not None) == (m <= p)),
        ("not periplectic", lambda: detect_qf(alg, ODD).exists is False),
        ("orthosymplectic iff m ≡ 0 mod p", lambda: detect_qf(alg, EVEN).exists == (m % p == 0)),
    ]
    if m % p == 0:
        out.append(("closed-formula form passes form_check", lambda: form_check(alg, e.forms["omega"]).ok))
    if m <= p:
        out.append(("p-map x0 -> 0, x1 -> x1", lambda: e.pm is not None))
    if m != p:
        return out
    w = e.forms["omega"]
    Dn, Dt, D = e.derivations["not_restricted"], e.derivations["trivial"], e.derivations["nontrivial"]
    lam = e.params["lam"]

    def ob(l, P=None):
        return build_obstruction(alg, e.pm, w, D, "ortho_even", l, P)

    def omega_entries():
        G = ob(lam).cochain.phi
        i, j, k = (alg.space.index(f"y{t}") for t in (1, 2, 3))
        return int(G[i, k]) == (-2 * lam) % p and int(G[j, j]) == (2 * lam) % p

    out += [
        ("non-suitable derivation is not restricted", lambda: not is_restricted_derivation(alg, e.pm, Dn)),
        ("x1 (x) x0* is restricted with D* = −D", lambda: is_restricted_derivation(alg, e.pm, Dt)
            and adjoint(alg, w, Dt).matrix.tolist() == ((-Dt.matrix) % p).tolist()),
        ("x1 (x) x0*: C = Ω = 0", lambda: not np.any(cocycle_C(alg, w, Dt))
            and not np.any(build_obstruction(alg, e.pm, w, Dt, "ortho_even").cochain.phi)),
        ("x1 (x) x0*: all-zero recipe extends", lambda: bool(_extends(e, "trivial"))),
        ("y_{p-1} (x) y1* + y_p (x) y2* is restricted", lambda: is_restricted_derivation(alg, e.pm, D)),
        ("D* = y_p (x) y2* − 2 y1 (x) y3*", lambda: adjoint(alg, w, D) == rank_one(
            alg.space, [(f"y{p}", "y2", 1), ("y1", "y3", -2)], p, EVEN)),
        ("Ω(y1,y3) = −2λ, Ω(y2,y2) = 2λ", omega_entries),
    ]
    if p == 3:
        half = Fraction(1, 2)
        out += [
            ("C = ½ y1*∧y3* + y2*∧y2*", lambda: np.array_equal(cocycle_C(alg, w, D), _gram(alg, [("y1", "y3", half), ("y2", "y2", 1)]))),
            ("Ω = d(λ x1*)", lambda: np.array_equal(ob(lam).cochain.phi, lam * alg.table[:, :, alg.space.index("x1")] % p)),
            ("recipe (Z=λx0, γ=λ², a0=−γx0, b0=x1, σ=1) validates for every λ",
             lambda: all(_validates(k2m_odd(p, m, lam=l), "nontrivial") for l in range(p))),
            ("extension passes post-checks for every λ", lambda: all(bool(_extends(k2m_odd(p, m, lam=l), "nontrivial")) for l in range(p))),
        ]
    else:
        out += [
            ("C = 2 y1*∧y3* − 2 y2*∧y2*", lambda: np.array_equal(cocycle_C(alg, w, D), _gram(alg, [("y1", "y3", 2), ("y2", "y2", -2)]))),
            ("Ω is a coboundary only at λ = 0", lambda: all(
                (_coboundary_any_P(alg, e.pm, w, D, l)) == (l == 0) for l in range(p))),
            ("λ=0 recipe (γ=0, b0=0, a0=x1, Z=x1) extends", lambda: bool(_extends(k2m_odd(p, m, lam=0), "nontrivial"))),
        ]
    return out


def _coboundary_any_P(alg, pm, w, D, lam) -> bool:
    """Whether Omega alone is an ordinary coboundary; T can then be matched by choosing P when lam != 0."""
    from .foundation import linalg_solve
    from .qfrob import build_obstruction

    phi = build_obstruction(alg, pm, w, D, "ortho_even", lam).cochain.phi
    n = alg.dim
    return linalg_solve(alg.table.reshape(n * n, n), phi.reshape(-1), alg.p).consistent


def _claims_k_even(e):
    from .qfrob import adjoint, build_obstruction, cocycle_C, detect_qf, form_check, sigma_all
    from .restricted import has_p_property, is_restricted_derivation, jacobson_complete
    from .cohomology import is_restricted_cocycle
    from .qfrob import build_CP

    alg, p, m = e.alg, e.alg.p, e.params["m"]
    D = e.derivations["D"]
    out = [
        ("restricted iff m ≤ p", lambda: (jacobson_complete(alg)[0] is not None) == (m <= p)),
        ("periplectic only at p = 3, m = 2", lambda: detect_qf(alg, ODD).exists == (p == 3 and m == 2)),
        ("orthosymplectic iff m < p", lambda: detect_qf(alg, EVEN).exists == (m < p)),
    ]
    if p == 3 and m == 2:
        out.append(("x0*∧y2* + x1*∧y1* passes form_check", lambda: form_check(alg, e.forms["omega_odd"]).ok))
    if m < p:
        out.append(("α_i form passes form_check", lambda: form_check(alg, e.forms["omega"]).ok))
    if "omega" not in e.forms or e.pm is None:
        return out
    w = e.forms["omega"]

    def sig_zero():
        from .restricted import _even_samples

        vs = list(_even_samples(alg, 40, 0))
        return all(not np.any(sigma_all(alg, w, D, a, b)) for a, b in zip(vs[::2], vs[1::2]))

    x1 = alg.space.vector({"x1": 1}, p)
    out += [
        ("D = x1 (x) x0* is restricted", lambda: is_restricted_derivation(alg, e.pm, D)),
        ("p-property with γ = 0, a0 = l1 x1", lambda: all(has_p_property(alg, D, 0, l * x1 % p) for l in range(p))),
        ("D² = 0 and D* = −D", lambda: not np.any(D.matrix @ D.matrix % p)
            and adjoint(alg, w, D).matrix.tolist() == ((-D.matrix) % p).tolist()),
        ("sum of σ_i vanishes", sig_zero),
        ("(C, P) is a restricted cocycle", lambda: is_restricted_cocycle(alg, e.pm, build_CP(alg, e.pm, w, D))),
        ("Ω and T vanish", lambda: not np.any(build_obstruction(alg, e.pm, w, D, "ortho_even").cochain.phi)
            and not np.any(build_obstruction(alg, e.pm, w, D, "ortho_even").cochain.theta)),
        ("recipe validates for all l1, l2 (Z = t x1 + s y_m, any σ)", lambda: all(
            _validates(k2m_even(p, m, l1=a, l2=b, t=t, s=s, sigma=sg))
            for a in _sweep(p) for b in _sweep(p) for t in _sweep(p)[:2] for s in _sweep(p)[:2] for sg in _sweep(p)[:2])),
        ("extension passes post-checks", lambda: bool(_extends(e))),
    ]
    return out


_CLAIMS = {
    "D7": _claims_d7,
    "C11A": _claims_c11a,
    "D5": _claims_d5,
    "2A11": _claims_2a11,
    "W1": _claims_w1,
    "K2m_odd": _claims_k_odd,
    "K2m_even": _claims_k_even,
}

# claims whose printed statement does not survive exact computation; see README
KNOWN_DISCREPANCIES = {
    ("2A11", "C = 0"),
    ("W1", "every closed form has zero e0 row"),
    ("W1", "no non-degenerate closed form (common radical)"),
    ("K2m_odd", "D* = y_p (x) y2* − 2 y1 (x) y3*"),
}


def claims(entry: ExampleEntry) -> list:
    return _CLAIMS[entry.name](entry)


def verify_claims(name: str, **params) -> ClaimReport:
    entry = load_example(name, **params)
    results = []
    for label, check in claims(entry):
        try:
            ok = bool(check())
            note = ""
        except Exception as exc:  # a crashing claim is a failing claim
            ok, note = False, f"{type(exc).__name__}: {exc}"
        if not ok and (name, label) in KNOWN_DISCREPANCIES:
            note = note or "known discrepancy"
        results.append(ClaimResult(label, ok, note))
    return ClaimReport(name, entry.params, results)
