"""Command-line front end.

Exit codes: 0 pass, 1 a check, claim or hypothesis failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as rio
from .foundation import EVEN, ODD, signed, wedge_terms
from .liesuper import AlgebraError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
_PARITY = {"even": EVEN, "odd": ODD}


class InputError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def _load(path, check=True) -> rio.AlgebraDoc:
    return rio.parse_algebra(Path(path), check=check)


def _pick(mapping: dict, key, what: str):
    if key is None:
        if len(mapping) == 1:
            return next(iter(mapping.items()))
        raise InputError(f"file has {len(mapping)} {what}s; choose one by name")
    if key not in mapping:
        raise InputError(f"no {what} named {key!r}; available: {sorted(mapping)}")
    return key, mapping[key]


def _need_pmap(doc):
    if doc.pm is None:
        raise InputError("this command needs a p-map in the algebra file")
    return doc.pm


def _map_terms(space, M, p):
    return [[space.names[r], space.names[c], signed(int(M[r, c]), p)] for r, c in zip(*np.nonzero(M % p))]


def _form_terms(space, G, p):
    return [[space.names[i], space.names[j], signed(c, p)] for i, j, c in wedge_terms(space, G, p)]


def _vec(space, v, p):
    return rio.dump_vector(space, v, p)


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, tuple):
        return [_jsonable(t) for t in x]
    return str(x)


def _write_or_embed(obj, path, report, key):
    if path:
        rio.write_json(obj, path)
        report[key + "_path"] = str(path)
    report[key] = obj


# ----------------------------------------------------------------- commands

def cmd_check(args):
    from .liesuper import verify_algebra
    from .restricted import verify_restricted

    doc = _load(args.file, check=False)
    rep = verify_algebra(doc.alg)
    out = {"algebra": {"ok": rep.ok, "failures": rep.failures}}
    ok = rep.ok
    if doc.pm is not None:
        rr = verify_restricted(doc.alg, doc.pm)
        out["restricted"] = {"ok": rr.ok, "failures": rr.failures}
        ok = ok and rr.ok
    lines = [f"algebra axioms: {'PASS' if rep.ok else 'FAIL'}"]
    lines += [f"  {kind} {' '.join(t)}" for kind, t in rep.failures]
    if "restricted" in out:
        r = out["restricted"]
        lines.append(f"p-map (Jacobson): {'PASS' if r['ok'] else 'FAIL'}")
        lines += [f"  {kind} {t if isinstance(t, str) else ' '.join(t)}" for kind, t in r["failures"]]
    if rep.ok:
        from .liesuper import is_derivation
        from .qfrob import form_check

        out["forms"] = {}
        for name, w in doc.forms.items():
            fc = form_check(doc.alg, w)
            out["forms"][name] = fc.ok
            ok = ok and fc.ok
            lines.append(f"form {name}: {'PASS' if fc.ok else 'FAIL'}")
        out["derivations"] = {}
        for name, D in doc.derivations.items():
            d_ok = is_derivation(doc.alg, D)
            out["derivations"][name] = d_ok
            ok = ok and d_ok
            lines.append(f"derivation {name}: {'PASS' if d_ok else 'FAIL'}")
    return ok, out, lines


def cmd_pmap(args):
    from .restricted import jacobson_complete

    doc = _load(args.file)
    alg, p, sp = doc.alg, doc.alg.p, doc.alg.space
    pm, rep = jacobson_complete(alg)
    out = {"exists": pm is not None, "failures": rep.failures,
           "free_directions": [_vec(sp, k, p) for k in rep.details["kernel"]]}
    lines = [f"p-map exists: {pm is not None}"]
    if pm is not None:
        out["pmap"] = [{"of": sp.names[j], "value": _vec(sp, pm.images[j], p)} for j in sp.even]
        lines += [f"  {e['of']}^[p] = {e['value']}" for e in out["pmap"]]
        if out["free_directions"]:
            lines.append(f"  any image may be shifted by the central directions {out['free_directions']}")
    else:
        lines += [f"  no image for {t}" for _, t in rep.failures]
    return pm is not None, out, lines


def cmd_detect_form(args):
    from .qfrob import detect_qf

    doc = _load(args.file)
    alg, p, sp = doc.alg, doc.alg.p, doc.alg.space
    det = detect_qf(alg, _PARITY[args.parity], budget=args.budget, seed=args.seed)
    out = {"parity": args.parity, "exists": det.exists, "certificate": det.certificate,
           "closed_form_dim": det.space_dim, "tried": det.tried, "budget": det.budget,
           "radical": [_vec(sp, r, p) for r in det.radical]}
    lines = [f"non-degenerate closed {args.parity} form: "
             + {True: "found", False: "none", None: "undecided"}[det.exists],
             f"  certificate: {det.certificate}", f"  closed forms: dimension {det.space_dim}"]
    if det.found is not None:
        out["form"] = {"parity": args.parity, "terms": _form_terms(sp, det.found.gram, p)}
        lines.append(f"  form: {out['form']['terms']}")
    if det.certificate == "common_radical":
        lines.append(f"  common radical: {out['radical']}")
    return det.exists is not None, out, lines


def cmd_derivations(args):
    from .liesuper import derivation_space
    from .restricted import restricted_derivation_space

    doc = _load(args.file)
    alg, p, sp = doc.alg, doc.alg.p, doc.alg.space
    parity = _PARITY[args.parity]
    if args.restricted:
        basis = restricted_derivation_space(alg, _need_pmap(doc), parity)
    else:
        basis = derivation_space(alg, parity)
    out = {"parity": args.parity, "restricted": args.restricted, "dimension": len(basis),
           "basis": [_map_terms(sp, D.matrix, p) for D in basis]}
    label = "restricted derivations" if args.restricted else "derivations"
    lines = [f"{args.parity} {label}: dimension {len(basis)}"]
    lines += [f"  D{k}: {t}" for k, t in enumerate(out["basis"])]
    return True, out, lines


def cmd_cohomology(args):
    from .qfrob import build_obstruction
    from .foundation import fp

    doc = _load(args.file)
    alg, p, sp = doc.alg, doc.alg.p, doc.alg.space
    pm = _need_pmap(doc)
    fname, w = _pick(doc.forms, args.form, "form")
    dname, D = _pick(doc.derivations, args.derivation, "derivation")
    P = rio.parse_vector(sp, json.loads(args.P), p, "P") if args.P else None
    try:
        lam = fp(args.lam, p)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--lambda: {exc}") from None
    ob = build_obstruction(alg, pm, w, D, args.kind, lam, P)
    c = ob.cochain
    out = {"form": fname, "derivation": dname, "kind": args.kind, "lambda": signed(lam, p),
           "phi": _gram_entries(sp, c.phi, p),
           "theta": {sp.names[k]: signed(int(c.theta[k]), p) for k in sp.even if c.theta[k] % p},
           "M_omega": _map_terms(sp, ob.M_omega, p), "coboundary": ob.is_coboundary}
    lines = [f"obstruction for {args.kind} with {dname} on {fname}, lambda = {signed(lam, p)}",
             f"  Omega = w(M a, b) with M = {out['M_omega']}",
             f"  second component on even basis: {out['theta']}"]
    if ob.is_coboundary:
        out["witness"] = _vec(sp, ob.witness.functional, p)
        if ob.Z is not None:
            out["Z"] = _vec(sp, ob.Z, p)
        lines.append(f"  restricted coboundary: yes, witness {out['witness']}"
                     + (f", Z = {out['Z']}" if "Z" in out else ""))
    else:
        lines.append("  restricted coboundary: no (nonzero class)")
    return ob.is_coboundary, out, lines


def _gram_entries(space, G, p):
    return [[space.names[i], space.names[j], signed(int(G[i, j]), p)] for i, j in zip(*np.nonzero(G % p))]


def cmd_extend(args):
    from .doubleext import ExtensionError, extend, validate_recipe

    doc = _load(args.file)
    pm = _need_pmap(doc)
    form, r = rio.parse_recipe(Path(args.recipe), doc)
    w = doc.forms[form]
    rep = validate_recipe(doc.alg, pm, w, r, seed=args.seed)
    out = {"kind": r.kind, "valid": rep.ok, "failures": [list(map(_jsonable, f)) for f in rep.failures]}
    lines = [f"{r.kind} recipe: {'valid' if rep.ok else 'rejected'}"]
    lines += [f"  [{tag}] {cond}" for tag, cond in rep.failures]
    if not rep.ok:
        return False, out, lines
    try:
        g, pm_g, w_g = extend(doc.alg, pm, w, r, validate=False)
    except (ExtensionError, AssertionError) as exc:
        lines.append(f"  post-check failed: {exc}")
        return False, out, lines
    from .doubleext import verify_extension

    post = verify_extension(g, pm_g, w_g)
    out["post_checks"] = post.ok
    lines.append(f"extension {g.space.dims[0]}|{g.space.dims[1]}: post-checks {'PASS' if post.ok else 'FAIL'}")
    _write_or_embed(rio.dump_algebra(g, pm_g, {"omega": w_g}), args.out, out, "extension")
    if not args.out and not args.json:
        lines.append(json.dumps(out["extension"], indent=2, ensure_ascii=False))
    return post.ok, out, lines


def cmd_reduce(args):
    from .doubleext import ExtensionError, find_candidates, reduce

    doc = _load(args.file)
    g, p, sp = doc.alg, doc.alg.p, doc.alg.space
    pm = _need_pmap(doc)
    fname, w = _pick(doc.forms, args.form, "form")
    try:
        x = np.zeros(g.dim, dtype=np.int64)
        x[sp.index(args.x)] = 1
    except KeyError as exc:
        raise InputError(str(exc)) from None
    kind = args.kind
    if kind == "auto":
        kinds = [k for v, k in find_candidates(g, w, pm) if np.array_equal(v % p, x)]
        if not kinds:
            lines = [f"{args.x} satisfies no converse hypothesis"]
            return False, {"x": args.x, "kind": None}, lines
        kind = kinds[0]
    try:
        a, pm_a, w_a, r, _ = reduce(g, w, pm, x, kind)
    except ExtensionError as exc:
        fails = [list(map(_jsonable, f)) for f in getattr(exc, "failures", [])]
        return False, {"x": args.x, "kind": kind, "failures": fails}, [f"reduction failed: {exc}"]
    out = {"x": args.x, "kind": kind, "case": r.case, "roundtrip": True}
    lines = [f"{kind} reduction along {args.x}: {g.space.dims} -> {a.space.dims}"
             + (f", case ({r.case})" if r.case else ""),
             "  rebuilding the extension from the recovered data reproduces the input"]
    _write_or_embed(rio.dump_algebra(a, pm_a, {"omega": w_a}, {"D": r.D}), args.out, out, "algebra")
    _write_or_embed(rio.dump_recipe(a, "omega", r, derivation="D"), args.recipe_out, out, "recipe")
    if not args.json:
        if not args.out:
            lines.append(json.dumps(out["algebra"], indent=2, ensure_ascii=False))
        if not args.recipe_out:
            lines.append(json.dumps(out["recipe"], indent=2, ensure_ascii=False))
    return True, out, lines


def _param_value(text):
    parts = [t.strip() for t in text.split(",")]
    vals = []
    for t in parts:
        try:
            vals.append(int(t))
        except ValueError:
            vals.append(t)  # fractions such as -1/2 are resolved by the builder
    return tuple(vals) if len(vals) > 1 else vals[0]


def cmd_example(args):
    from .catalog import ParameterError, load_example, verify_claims

    params = {"p": args.p}
    for key in ("q", "m", "u", "lam"):
        v = getattr(args, key)
        if v is not None:
            params[key] = _param_value(v)
    for kv in args.param or []:
        if "=" not in kv:
            raise InputError(f"--param expects key=value, got {kv!r}")
        k, v = kv.split("=", 1)
        params[k.strip()] = _param_value(v)
    try:
        e = load_example(args.name, **params)
    except (ParameterError, TypeError, KeyError, ValueError) as exc:
        raise InputError(f"{args.name}: {exc}") from None
    out = {"name": e.name, "params": {k: _jsonable(v) if not isinstance(v, int) else v for k, v in e.params.items()}}
    lines = [f"{e.name} over F_{e.alg.p}: dimension {e.alg.space.dims[0]}|{e.alg.space.dims[1]}"]
    _write_or_embed(rio.dump_algebra(e.alg, e.pm, e.forms, e.derivations), args.out, out, "algebra")
    if e.recipes:
        rname = args.recipe or ("main" if "main" in e.recipes else next(iter(e.recipes)))
        if rname not in e.recipes:
            raise InputError(f"{e.name} has no recipe {rname!r}; available: {sorted(e.recipes)}")
        form, r = e.recipes[rname]
        dn = next((nm for nm, D in e.derivations.items() if D == r.D), None)
        _write_or_embed(rio.dump_recipe(e.alg, form, r, derivation=dn), args.recipe_out, out, "recipe")
    ok = True
    if args.verify:
        rep = verify_claims(e.name, **params)
        out["claims"] = [{"label": c.label, "ok": c.ok, "note": c.note} for c in rep.results]
        ok = rep.ok
        lines += list(rep.lines())
        lines.append(f"claims: {sum(c.ok for c in rep.results)}/{len(rep.results)} pass")
    elif not args.out and not args.json:
        lines.append(json.dumps(out["algebra"], indent=2, ensure_ascii=False))
    return ok, out, lines


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    from .qfrob import KINDS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")

    ap = argparse.ArgumentParser(prog="reslie", description="Restricted Lie superalgebras over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="verify algebra axioms and the p-map")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("pmap", parents=[common], help="solve for a compatible p-map")
    s.add_argument("file")
    s.set_defaults(func=cmd_pmap)

    s = sub.add_parser("detect-form", parents=[common], help="search for a non-degenerate closed form")
    s.add_argument("file")
    s.add_argument("--parity", choices=_PARITY, default="even")
    s.add_argument("--budget", type=int, default=256)
    s.set_defaults(func=cmd_detect_form)

    s = sub.add_parser("derivations", parents=[common], help="basis of the derivation space")
    s.add_argument("file")
    s.add_argument("--parity", choices=_PARITY, default="even")
    s.add_argument("--restricted", action="store_true")
    s.set_defaults(func=cmd_derivations)

    s = sub.add_parser("cohomology", parents=[common], help="obstruction cocycle of a derivation")
    s.add_argument("file")
    s.add_argument("--form")
    s.add_argument("--derivation")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--lambda", dest="lam", default="0")
    s.add_argument("--P", help="JSON object of P values on the even basis")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("extend", parents=[common], help="build a double extension")
    s.add_argument("file")
    s.add_argument("--recipe", required=True)
    s.add_argument("--out", help="write the extended algebra here")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("reduce", parents=[common], help="recover the data of a double extension")
    s.add_argument("file")
    s.add_argument("--x", required=True, help="basis element spanning the isotropic ideal")
    s.add_argument("--kind", choices=KINDS + ("auto",), default="auto")
    s.add_argument("--form")
    s.add_argument("--out")
    s.add_argument("--recipe-out")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("example", parents=[common], help="export a catalog example and check its claims")
    s.add_argument("name", help="D7, C11A, D5, 2A11, W1, K2m_odd or K2m_even")
    s.add_argument("--p", type=int, required=True, help="odd prime")
    for key in ("q", "m", "u", "lam"):
        s.add_argument(f"--{key}")
    s.add_argument("--param", action="append", metavar="KEY=VALUE", help="extra builder parameter, repeatable")
    s.add_argument("--verify", action="store_true", help="run the entry's claims")
    s.add_argument("--recipe", help="recipe to export (default: main)")
    s.add_argument("--out")
    s.add_argument("--recipe-out")
    s.set_defaults(func=cmd_example)
    return ap


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    report = {"schema": rio.REPORT_SCHEMA, "command": args.command, "seed": args.seed}
    try:
        ok, body, lines = args.func(args)
        code = EXIT_OK if ok else EXIT_FAIL
    except (rio.FileError, InputError, AlgebraError) as exc:
        ok, body, lines, code = False, {"error": str(exc)}, [f"input error: {exc}"], EXIT_INPUT
    report.update(body)
    report["ok"] = ok
    report["exit_code"] = code
    if args.json:
        stdout.write(json.dumps(report, indent=2, ensure_ascii=False, default=_jsonable) + "\n")
    else:
        stdout.write("\n".join(lines + [f"seed: {args.seed}"]) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
