"""JSON algebra and recipe files.

Coefficients are written as integers in the symmetric range and read back
mod p; strings such as ``"-1/2"`` are accepted on input. Vectors and maps are
sparse ``{basis_name: coefficient}`` objects.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .foundation import EVEN, ODD, SuperSpace, check_modulus, fp, gram_from_wedge, signed, wedge_terms
from .liesuper import AlgebraError, GradedMap, LieSuperAlgebra, graded_map, verify_algebra

ALGEBRA_SCHEMA = "reslie.algebra/1"
RECIPE_SCHEMA = "reslie.recipe/1"
REPORT_SCHEMA = "reslie.report/1"

_PARITY = {"even": EVEN, "odd": ODD, 0: EVEN, 1: ODD}
_PARITY_NAME = {EVEN: "even", ODD: "odd"}
_RECIPE_SCALARS = ("lam", "gamma", "delta", "sigma", "lam_tilde", "mu")
_RECIPE_VECTORS = ("Z", "a0", "b0")


class FileError(ValueError):
    """Malformed input; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass
class AlgebraDoc:
    alg: LieSuperAlgebra
    pm: object = None
    forms: dict = field(default_factory=dict)
    derivations: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.alg.name


# ------------------------------------------------------------------ helpers

def _coeff(x, p, path):
    try:
        return fp(x, p)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FileError(path, f"bad coefficient {x!r} ({exc})") from None


def _parity(x, path):
    try:
        return _PARITY[x]
    except (KeyError, TypeError):
        raise FileError(path, f"parity must be 'even' or 'odd', got {x!r}") from None


def _name(space, x, path):
    if not isinstance(x, str) or x not in space.names:
        raise FileError(path, f"unknown basis element {x!r}")
    return space.index(x)


def _get(obj, key, path, kind=None, default=...):
    if not isinstance(obj, dict):
        raise FileError(path, "expected an object")
    if key not in obj:
        if default is ...:
            raise FileError(f"{path}.{key}" if path else key, "missing field")
        return default
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise FileError(f"{path}.{key}" if path else key, f"expected {getattr(kind, '__name__', kind)}")
    return v


def parse_vector(space: SuperSpace, obj, p: int, path: str = "") -> np.ndarray:
    if not isinstance(obj, dict):
        raise FileError(path, "expected a {basis_name: coefficient} object")
    v = np.zeros(space.dim, dtype=np.int64)
    for k, c in obj.items():
        i = _name(space, k, f"{path}.{k}")
        v[i] = (v[i] + _coeff(c, p, f"{path}.{k}")) % p
    return v


def dump_vector(space: SuperSpace, v, p: int) -> dict:
    return {space.names[i]: signed(int(v[i]), p) for i in np.nonzero(np.asarray(v) % p)[0]}


def _parse_map(space, obj, p, path) -> GradedMap:
    parity = _parity(_get(obj, "parity", path), f"{path}.parity")
    n = space.dim
    if "matrix" in obj:
        rows = obj["matrix"]
        if not (isinstance(rows, list) and len(rows) == n and all(isinstance(r, list) and len(r) == n for r in rows)):
            raise FileError(f"{path}.matrix", f"expected a {n}x{n} list of lists")
        M = np.array([[_coeff(c, p, f"{path}.matrix[{r}][{s}]") for s, c in enumerate(row)]
                      for r, row in enumerate(rows)], dtype=np.int64)
    else:
        M = np.zeros((n, n), dtype=np.int64)
        for t, term in enumerate(_get(obj, "terms", path, list)):
            tp = f"{path}.terms[{t}]"
            if not (isinstance(term, list) and len(term) == 3):
                raise FileError(tp, "expected [image, source, coefficient]")
            r, s = _name(space, term[0], tp), _name(space, term[1], tp)
            M[r, s] = (M[r, s] + _coeff(term[2], p, tp)) % p
    try:
        return graded_map(space, M, p, parity)
    except AlgebraError as exc:
        raise FileError(path, str(exc)) from None


def _dump_map(space, D: GradedMap, p) -> dict:
    terms = [[space.names[r], space.names[s], signed(int(D.matrix[r, s]), p)] for r, s in zip(*np.nonzero(D.matrix % p))]
    return {"parity": _PARITY_NAME[D.parity], "terms": terms}


def _load_json(source, path_hint="input"):
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise FileError("", f"cannot read {source}: {exc}") from None
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileError("", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _check_schema(obj, expected):
    found = _get(obj, "schema", "", str)
    if found != expected:
        raise FileError("schema", f"expected {expected!r}, got {found!r}")


# ------------------------------------------------------------------ algebras

def parse_algebra(source, check: bool = True) -> AlgebraDoc:
    """Parse an algebra file (path, JSON text or dict).

    With ``check`` the algebra must pass the axiom checks and the p-map the
    Jacobson criterion; without it only the structure is validated.
    """
    from .qfrob import BilinearForm, form_parity
    from .restricted import PMap, verify_restricted

    obj = _load_json(source)
    _check_schema(obj, ALGEBRA_SCHEMA)
    try:
        p = check_modulus(_get(obj, "p", "", int))
    except ValueError as exc:
        raise FileError("p", str(exc)) from None
    names, parities = [], []
    for k, b in enumerate(_get(obj, "basis", "", list)):
        names.append(_get(b, "name", f"basis[{k}]", str))
        parities.append(_parity(_get(b, "parity", f"basis[{k}]"), f"basis[{k}].parity"))
    try:
        space = SuperSpace(tuple(names), tuple(parities))
    except ValueError as exc:
        raise FileError("basis", str(exc)) from None

    brackets = {}
    for k, b in enumerate(_get(obj, "brackets", "", list, [])):
        bp = f"brackets[{k}]"
        i = _name(space, _get(b, "left", bp), f"{bp}.left")
        j = _name(space, _get(b, "right", bp), f"{bp}.right")
        if (i, j) in brackets:
            raise FileError(bp, "bracket given twice")
        brackets[(i, j)] = parse_vector(space, _get(b, "value", bp), p, f"{bp}.value")
    try:
        alg = LieSuperAlgebra.from_brackets(space, p, brackets, obj.get("name", ""))
    except AlgebraError as exc:
        raise FileError("brackets", str(exc)) from None
    if check:
        rep = verify_algebra(alg)
        if not rep.ok:
            raise AlgebraError(f"not a Lie superalgebra: {rep.failures}")

    doc = AlgebraDoc(alg)
    if obj.get("pmap") is not None:
        images = {}
        for k, entry in enumerate(_get(obj, "pmap", "", list)):
            ep = f"pmap[{k}]"
            j = _name(space, _get(entry, "of", ep), f"{ep}.of")
            images[j] = parse_vector(space, _get(entry, "value", ep), p, f"{ep}.value")
        try:
            doc.pm = PMap.from_images(alg, images, check=False)
        except AlgebraError as exc:
            raise FileError("pmap", str(exc)) from None
        if check:
            rep = verify_restricted(alg, doc.pm)
            if not rep.ok:
                raise AlgebraError(f"p-map fails Jacobson compatibility: {rep.failures}")

    for k, f in enumerate(_get(obj, "forms", "", list, [])):
        fp_ = f"forms[{k}]"
        name = f.get("name", f"form{k}") if isinstance(f, dict) else None
        parity = _parity(_get(f, "parity", fp_), f"{fp_}.parity")
        terms = []
        for t, term in enumerate(_get(f, "terms", fp_, list)):
            tp = f"{fp_}.terms[{t}]"
            if not (isinstance(term, list) and len(term) == 3):
                raise FileError(tp, "expected [left, right, coefficient]")
            terms.append((_name(space, term[0], tp), _name(space, term[1], tp), _coeff(term[2], p, tp)))
        try:
            G = gram_from_wedge(space, terms, p)
            if np.any(G) and form_parity(alg, G) != parity:
                raise FileError(f"{fp_}.parity", "terms do not have the declared parity")
        except ValueError as exc:
            if isinstance(exc, FileError):
                raise
            raise FileError(fp_, str(exc)) from None
        doc.forms[name] = BilinearForm(G, parity)

    for k, d in enumerate(_get(obj, "derivations", "", list, [])):
        dp = f"derivations[{k}]"
        name = d.get("name", f"D{k}") if isinstance(d, dict) else None
        doc.derivations[name] = _parse_map(space, d, p, dp)
    return doc


def dump_algebra(alg: LieSuperAlgebra, pm=None, forms=None, derivations=None) -> dict:
    p, sp = alg.p, alg.space
    out = {
        "schema": ALGEBRA_SCHEMA,
        "name": alg.name,
        "p": p,
        "basis": [{"name": nm, "parity": _PARITY_NAME[q]} for nm, q in zip(sp.names, sp.parities)],
        "brackets": [
            {"left": sp.names[i], "right": sp.names[j], "value": dump_vector(sp, v, p)}
            for i, j, v in alg.nonzero_brackets()
        ],
    }
    if pm is not None:
        out["pmap"] = [{"of": sp.names[j], "value": dump_vector(sp, pm.images[j], p)} for j in sp.even]
    if forms:
        out["forms"] = [
            {"name": nm, "parity": _PARITY_NAME[w.parity],
             "terms": [[sp.names[i], sp.names[j], signed(c, p)] for i, j, c in wedge_terms(sp, w.gram, p)]}
            for nm, w in forms.items()
        ]
    if derivations:
        out["derivations"] = [{"name": nm, **_dump_map(sp, D, p)} for nm, D in derivations.items()]
    return out


def dump_doc(doc: AlgebraDoc) -> dict:
    return dump_algebra(doc.alg, doc.pm, doc.forms, doc.derivations)


# ------------------------------------------------------------------- recipes

def parse_recipe(source, doc: AlgebraDoc):
    """Parse a recipe file against ``doc``; returns ``(form_name, ExtensionRecipe)``."""
    from .doubleext import CASES, KINDS, ExtensionRecipe

    alg, p, sp = doc.alg, doc.alg.p, doc.alg.space
    obj = _load_json(source)
    _check_schema(obj, RECIPE_SCHEMA)
    kind = _get(obj, "kind", "", str)
    if kind not in KINDS:
        raise FileError("kind", f"unknown kind {kind!r}; expected one of {list(KINDS)}")
    form = _get(obj, "form", "", str)
    if form not in doc.forms:
        raise FileError("form", f"algebra file has no form named {form!r}")
    D = _get(obj, "derivation", "")
    if isinstance(D, str):
        if D not in doc.derivations:
            raise FileError("derivation", f"algebra file has no derivation named {D!r}")
        D = doc.derivations[D]
    else:
        D = _parse_map(sp, D, p, "derivation")
    kw = {s: _coeff(obj[s], p, s) for s in _RECIPE_SCALARS if s in obj}
    kw.update({s: parse_vector(sp, obj[s], p, s) for s in _RECIPE_VECTORS if s in obj})
    if "P" in obj:
        P = parse_vector(sp, obj["P"], p, "P")
        if np.any(P[sp.odd]):
            raise FileError("P", "P is defined on even basis elements only")
        kw["P"] = P
    case = obj.get("case")
    if case is not None and case not in CASES:
        raise FileError("case", f"case must be one of {list(CASES)}, got {case!r}")
    names = obj.get("names")
    if names is not None:
        if not (isinstance(names, list) and len(names) == 2 and all(isinstance(s, str) for s in names)):
            raise FileError("names", "expected two new basis names")
        names = tuple(names)
    return form, ExtensionRecipe(kind, D, case=case, names=names, **kw)


def dump_recipe(alg: LieSuperAlgebra, form_name: str, r, derivation: str | None = None) -> dict:
    p, sp = alg.p, alg.space
    out = {"schema": RECIPE_SCHEMA, "kind": r.kind, "form": form_name}
    out["derivation"] = derivation if derivation is not None else _dump_map(sp, r.D, p)
    for s in _RECIPE_SCALARS:
        out[s] = signed(fp(getattr(r, s), p), p)
    for s in _RECIPE_VECTORS + ("P",):
        v = getattr(r, s)
        out[s] = {} if v is None else dump_vector(sp, v, p)
    if r.case is not None:
        out["case"] = r.case
    if r.names is not None:
        out["names"] = list(r.names)
    return out


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


__all__ = [
    "ALGEBRA_SCHEMA",
    "AlgebraDoc",
    "FileError",
    "RECIPE_SCHEMA",
    "REPORT_SCHEMA",
    "dump_algebra",
    "dump_doc",
    "dump_recipe",
    "dump_vector",
    "parse_algebra",
    "parse_recipe",
    "parse_vector",
    "write_json",
]
