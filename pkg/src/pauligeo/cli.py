"""Command-line entry point: ``pauligeo <subcommand> [options]``.

Every subcommand can print plain text (default), CSV or JSON. JSON output is
an envelope ``{"manifest": ..., "result": ...}``; the manifest records the
subcommand, its flags, the seed and the tool version. Wall-clock duration is
added only with ``--timing`` so that reruns stay byte-identical.

Exit codes: 0 success, 1 domain or file error, 2 usage error.
"""
import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import InputError, PauliGeoError

SEED_ENV = "PAULIGEO_SEED"
FORMATS = ("plain", "csv", "json")


def default_seed():
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None


def load_schema(subcommand):
    """JSON schema shipped for a subcommand's ``--format json`` output."""
    from importlib.resources import files

    return json.loads(files("pauligeo").joinpath("schemas", f"{subcommand}.json").read_text())


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for n, v in enumerate(obj):
            _flatten(f"{prefix}[{n}]", v, out)
    else:
        out.append([prefix, json.dumps(obj) if isinstance(obj, list) else obj])
    return out


# --- subcommands ---------------------------------------------------------------
# Each returns (result_dict, plain_text, csv_rows_or_None).

def cmd_table(args):
    from .subalgebra import build_table

    t = build_table()
    header = ["O_X"] + [f"O{j}" for j in t.indices]
    rows = [[f"O{i}"] + [str(t[i, j]) if t[i, j] else "0" for j in t.indices] for i in t.indices]
    width = max(len(c) for r in [header] + rows for c in r)
    plain = "\n".join(" ".join(c.rjust(width) for c in r) for r in [header] + rows) + "\n"
    result = {"indices": list(t.indices), "rows": [r[1:] for r in rows], "cells": t.to_records(),
              "zeros_per_row": t.zeros_per_row().tolist(), "antisymmetric": t.is_antisymmetric()}
    return result, plain, [header] + rows


def cmd_subalgebras(args):
    from .subalgebra import find_closed_sets, pseudo_spin_split, render_combo

    sets = find_closed_sets(args.size)
    records = []
    lines = [f"closed sets of size {args.size}: {len(sets)}"]
    for s in sets:
        rec = s.to_dict()
        if s.kind == "fano7" and s.center is not None:
            plus, minus = pseudo_spin_split(s)
            rec["pseudo_spin"] = {"plus": [render_combo(c) for c in plus], "minus": [render_combo(c) for c in minus]}
        records.append(rec)
        desc = " ".join(s.labels)
        if s.center is not None:
            kind = "entangling" if s.entangling else "non-entangling"
            desc += f"  centre {rec['center_label']} ({kind})"
        lines.append(desc)
    result = {"size": args.size, "count": len(sets), "sets": records}
    if args.size == 7:
        ent = sum(1 for s in sets if s.entangling)
        result["entangling"], result["non_entangling"] = ent, len(sets) - ent
        lines.append(f"entangling centres: {ent}, non-entangling: {len(sets) - ent}")
    rows = [["members", "kind", "center", "entangling"]] + [
        [" ".join(r["labels"]), r["kind"], r["center_label"] or "", "" if r["entangling"] is None else r["entangling"]]
        for r in records]
    return result, "\n".join(lines) + "\n", rows


def cmd_geometry(args):
    from . import geometry as geo

    n = args.dim
    if args.structure == "lines":
        lines = geo.pg_lines(n)
        recs = []
        for ln in lines:
            rec = {"points": list(ln.points), "bits": ["".join(map(str, geo.point_bits(p, n))) for p in ln]}
            if n == 3:
                rec["labels"] = geo.line_labels(ln)
                rec["kind"] = geo.pauli_line_classify(ln)
            recs.append(rec)
        result = {"dim": n, "points": geo.pg_point_count(n, 2), "line_count": len(lines), "lines": recs}
        text = [f"PG({n},2): {result['points']} points, {len(lines)} lines"]
        if n == 3:
            kinds = [r["kind"] for r in recs]
            result["commuting"], result["cyclic"] = kinds.count("commuting"), kinds.count("cyclic")
            text.append(f"commuting lines: {result['commuting']}, cyclic lines: {result['cyclic']}")
        for r in recs:
            text.append(" ".join(r["bits"]) + ("  " + " ".join(r["labels"]) + "  " + r["kind"] if n == 3 else ""))
        rows = [["p1", "p2", "p3"] + (["labels", "kind"] if n == 3 else [])] + [
            r["points"] + ([" ".join(r["labels"]), r["kind"]] if n == 3 else []) for r in recs]
        return result, "\n".join(text) + "\n", rows
    if n != 3:
        raise InputError(f"--structure {args.structure} is only defined for --dim 3")
    lab = lambda p: geo.point_to_pauli(p).letters  # noqa: E731
    if args.structure == "doily":
        d = geo.doily()
        items = [[lab(p) for p in ln] for ln in d.lines]
        result = {"line_count": len(items), "lines": items, "lines_per_point": sorted(set(d.lines_per_point().values()))}
    elif args.structure == "ovoids":
        items = [[lab(p) for p in o] for o in geo.find_ovoids()]
        result = {"count": len(items), "ovoids": items}
    elif args.structure == "grids":
        grids = geo.find_grids()
        items = [[[lab(p) for p in row] for row in g] for g in grids]
        result = {"count": len(items), "grids": items,
                  "signs": [geo.grid_signs(g) for g in grids],
                  "mermin_parity": all(geo.mermin_parity_ok(g) for g in grids)}
    else:
        items = [[[lab(p) for p in ln] for ln in s] for s in geo.find_spreads()]
        result = {"count": len(items), "spreads": items}
    flat = items
    text = [f"{args.structure}: {len(flat)}"]
    for it in flat:
        text.append(json.dumps(it).replace('"', ""))
    rows = [[args.structure]] + [[json.dumps(it).replace('"', "")] for it in flat]
    return result, "\n".join(text) + "\n", rows


def cmd_designs(args):
    from .designs import general_params, pg_dimension_table, qubit_design_report

    if args.pg_table:
        tab = pg_dimension_table(args.n_max)
        result = {"pg_dimension": {str(m): col for m, col in tab.items()}}
        header = ["n"] + [f"m={m}" for m in tab]
        rows = [header] + [[n] + [tab[m][n] for m in tab] for n in range(args.n_max + 1)]
        plain = "\n".join(" ".join(str(c).rjust(6) for c in r) for r in rows) + "\n"
        return result, plain, rows
    if args.n is not None:
        p = general_params(args.n, args.m)
        result = {"n": args.n, "m": args.m, **p.to_dict()}
        rows = [["n", "m", "v", "b", "r", "k", "lambda"], [args.n, args.m, p.v, p.b, p.r, p.k, p.lam]]
        return result, " ".join(f"{k}={v}" for k, v in result.items()) + "\n", rows
    try:
        qs = [Fraction(q) for q in args.q] if args.q else None
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--q values must be integers or fractions such as 5/2, got {args.q}") from None
    report = qubit_design_report(qs)
    rows = [["q", "v", "b", "r", "k", "lambda", "printed_b", "note"]]
    text = []
    for r in report:
        printed_b = r["printed"]["b"] if r["printed"] else ""
        note = "; ".join(r["discrepancies"])
        rows.append([r["q"], r["v"], r["b"], r["r"], r["k"], r["lambda"], printed_b, note])
        line = f"q={r['q']:>4}  v={r['v']:<5} b={r['b']:<6} r={r['r']:<4}" + (f"  DISCREPANCY: {note}" if note else "")
        text.append(line.rstrip())
    result = {"rows": report, "discrepancy_count": sum(1 for r in report if r["discrepancies"])}
    return result, "\n".join(text) + "\n", rows


def cmd_kirkman(args):
    from .designs import check_resolution, kirkman_resolve
    from .geometry import point_to_pauli

    res = kirkman_resolve()
    problems = check_resolution(res)
    labels = {p: point_to_pauli(p).letters for p in range(1, 16)} if args.labels == "pauli" else None
    result = {**res.to_dict(), "certificate_ok": not problems, "problems": problems}
    if labels:
        result["labelled"] = [[[labels[p] for p in b] for b in cls] for cls in res.classes]
    rows = [["day", "block", "p1", "p2", "p3"]] + [
        [d, k] + [labels[p] if labels else p for p in blk]
        for d, cls in enumerate(res.classes, 1) for k, blk in enumerate(cls, 1)]
    plain = res.render(labels) + ("certificate: ok\n" if not problems else "certificate: FAILED\n")
    return result, plain, rows


def cmd_cayley(args):
    from .hypercomplex import GROUPS, negative_square_count, verify_group

    t = GROUPS[args.group]()
    rep = verify_group(t)
    result = {**t.to_dict(), "report": rep.to_dict(), "negative_squares": negative_square_count(t)}
    rows = [[""] + t.labels()] + [[lab] + r for lab, r in zip(t.labels(), t.text_rows())]
    return result, t.render(), rows


def cmd_evolve(args):
    from . import evolution as ev

    spec = ev.DriveSpec.load(args.spec)
    T = args.T
    U = ev.dense_propagator(spec, T, args.dense_steps)
    z = ev.riccati_su4(spec, T, args.steps).z
    bloch = ev.bloch_evolve(spec, T, steps=args.steps).m
    result = {"dimension": spec.dimension, "T": T, "z": z, "m": bloch}
    if spec.dimension == 5:
        result["z"] = z.real
        result["m"] = np.real(bloch)
    if args.report:
        ex = ev.extract_factors(U)
        fac = ev.factorized_propagator(spec, T, args.steps)
        result["residuals"] = {
            "factorized_vs_dense": float(np.linalg.norm(fac.reconstruct() - U)),
            "riccati_vs_extracted_z": float(np.abs(z - ex.z_vector).max()),
            "bloch_vs_riccati_z": float(np.abs(ev.z_from_bloch(bloch) - z).max()),
            "unitarity": float(np.abs(U.conj().T @ U - np.eye(4)).max()),
        }
    lines = [f"dimension {spec.dimension}, T = {T}",
             "z(T) = " + " ".join(f"{v:.12g}" for v in np.atleast_1d(result["z"])),
             "m(T) = " + " ".join(f"{v:.12g}" for v in np.atleast_1d(result["m"]))]
    for k, v in result.get("residuals", {}).items():
        lines.append(f"{k}: {v:.3e}")
    return result, "\n".join(lines) + "\n", None


def cmd_xstate(args):
    from . import xstate as xs

    if len(args.g) != 7:
        raise InputError(f"--g needs 7 coefficients, got {len(args.g)}")
    members = xs.xstate_members(args.center)
    rho = xs.xstate_from_coeffs(args.center, args.g)
    ppt = xs.ppt_check(rho)
    dis = xs.discord(rho)
    result = {
        "center": args.center,
        "members": members,
        "g": list(args.g),
        "matrix": rho,
        "eigenvalues": xs.xstate_eigenvalues(rho, args.center),
        "ppt": {"verdict": ppt.verdict, "min_eigenvalue": ppt.min_eigenvalue},
        "concurrence": xs.concurrence(rho),
        "discord": dis.to_dict(),
    }
    lines = [f"centre {args.center}: " + " ".join(f"{m}={g:g}" for m, g in zip(members, args.g)),
             "eigenvalues: " + " ".join(f"{v:.12g}" for v in result["eigenvalues"]),
             f"PPT: {ppt.verdict} (min eigenvalue {ppt.min_eigenvalue:.6g})",
             f"concurrence: {result['concurrence']:.12g}",
             f"discord: {dis.discord:.12g} bits at theta={dis.theta:.6f}, phi={dis.phi:.6f}"]
    return result, "\n".join(lines) + "\n", None


def cmd_discord_scan(args):
    from .xstate import theta_extremum_scan

    seed = args.seed if args.seed is not None else default_seed()
    res = theta_extremum_scan(args.n, seed, center=args.center, workers=args.workers)
    result = res.to_dict()
    lines = [f"samples: {res.n_samples} (seed {res.seed}, centre {res.center})",
             f"fraction with optimal theta within 1e-3 of pi/2: {res.fraction:.6f}",
             f"fraction at either end of [0, pi/2]: {res.extreme_fraction:.6f}",
             f"worst-case discord gap of the theta = pi/2 prescription: {res.worst_case_gap:.6g} bits",
             "theta histogram: " + " ".join(map(str, res.histogram))]
    return result, "\n".join(lines) + "\n", None


COMMANDS = {
    "table": cmd_table,
    "subalgebras": cmd_subalgebras,
    "geometry": cmd_geometry,
    "designs": cmd_designs,
    "kirkman": cmd_kirkman,
    "cayley": cmd_cayley,
    "evolve": cmd_evolve,
    "xstate": cmd_xstate,
    "discord-scan": cmd_discord_scan,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain", help="output format (default: plain)")
    common.add_argument("--json", dest="format", action="store_const", const="json", help="shorthand for --format json")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default: ${SEED_ENV} or 0)")
    common.add_argument("--timing", action="store_true", help="add wall-clock duration to the JSON manifest")

    p = argparse.ArgumentParser(prog="pauligeo", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    sub.add_parser("table", parents=[common], help="15x15 commutator table")

    s = sub.add_parser("subalgebras", parents=[common], help="closed sub-algebras of a given size")
    s.add_argument("--size", type=int, default=7)

    s = sub.add_parser("geometry", parents=[common], help="PG(n,2) lines and the doily structures")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--structure", choices=("lines", "doily", "ovoids", "grids", "spreads"), default="lines")

    s = sub.add_parser("designs", parents=[common], help="block-design parameters")
    s.add_argument("--q", action="append", help="qubit count (may be a half integer such as 5/2); repeatable")
    s.add_argument("--n", type=int, help="PG(n, m) dimension for the general formula")
    s.add_argument("--m", type=int, default=2, help="PG(n, m) order for the general formula")
    s.add_argument("--pg-table", action="store_true", help="point counts of PG(n, m)")
    s.add_argument("--n-max", type=int, default=4)

    s = sub.add_parser("kirkman", parents=[common], help="Kirkman resolution of PG(3,2)")
    s.add_argument("--labels", choices=("points", "pauli"), default="points")

    s = sub.add_parser("cayley", parents=[common], help="hypercomplex Cayley tables")
    s.add_argument("--group", choices=("q8", "coq", "cq16", "oct"), default="q8")

    s = sub.add_parser("evolve", parents=[common], help="integrate a drive spec")
    s.add_argument("--spec", required=True, help="drive spec JSON file")
    s.add_argument("--T", type=float, default=1.0)
    s.add_argument("--steps", type=int, default=None,
                   help="fixed RK4 step count (default: 4096 per unit time, doubled until converged)")
    s.add_argument("--dense-steps", type=int, default=None, help="oracle steps (default 1024 per unit time)")
    s.add_argument("--report", action="store_true", help="include oracle residuals")

    s = sub.add_parser("xstate", parents=[common], help="build and analyse an X-state")
    s.add_argument("--center", default="ZZ")
    s.add_argument("--g", type=float, nargs="+", required=True, help="7 coefficients in member order")

    s = sub.add_parser("discord-scan", parents=[common], help="theta = pi/2 statistic over random X-states")
    s.add_argument("--n", type=int, default=10000)
    s.add_argument("--center", default="ZZ")
    s.add_argument("--workers", type=int, default=1)
    return p


def _manifest(args, seed, duration):
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "timing")}
    man = {"subcommand": args.command, "flags": _jsonable(flags), "seed": seed, "version": __version__}
    if duration is not None:
        man["duration_s"] = duration
    return man


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        seed = args.seed if args.seed is not None else default_seed()
        args.seed = seed
        result, plain, rows = COMMANDS[args.command](args)
    except PauliGeoError as exc:
        print(f"pauligeo {args.command}: error: {exc}", file=stderr)
        return 1
    duration = time.perf_counter() - start if args.timing else None
    if args.format == "json":
        env = {"manifest": _manifest(args, seed, duration), "result": _jsonable(result)}
        stdout.write(json.dumps(env, indent=2, sort_keys=True, allow_nan=False) + "\n")
    elif args.format == "csv":
        stdout.write(_csv(rows if rows is not None else [["key", "value"]] + _flatten("", _jsonable(result), [])))
    else:
        stdout.write(plain)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
