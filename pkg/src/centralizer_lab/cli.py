"""Command line front end.

Inputs given to --matrix, --a, --b, --scan, --transition, --criterion, --push,
--cesaro and --measure are either paths to JSON files or names of bundled
fixtures (see ``centralizer-lab fixtures``).

Settings are resolved flag first, then the --config JSON file, then the
CENTRALIZER_LAB_WORKERS environment variable (workers only), then defaults.
A config file looks like::

    {"tol": "1e-9", "workers": 2, "output": "json",
     "limits": {"box": 2, "max_exp": 20, "qmax": 10, "max_rules": 1048576}}

Exit status: 0 success, 1 usage or input error, 2 a checked property failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import fixtures as fx
from .checks import run_checks
from .commutant import (certify_independence, commutant_basis, entropy_set, enumerate_units_with_coordinates,
                        find_identity_relations, find_power_relations)
from .errors import CentralizerLabError
from .exact_linalg import (IntMatrix, charpoly, det, integer_kernel, inverse, json_int, mat_pow,
                           smith_normal_form)
from .intervals import Interval, as_fraction
from .sft import (CylinderMeasure, SlidingBlockCode, build_sft, cesaro_average, enumerate_periodic_words,
                  gluing_constant, parry_measure, pushforward, rpf_equilibrium, scan_automorphisms,
                  sft_entropy, theorem_a_check)
from .sft.shift import word_str
from .spectral import entropy_interval, ph_splitting, spectrum_report
from .torus_dynamics import count_periodic, dense_orbit_search, enumerate_periodic, orbit_preservation_scan

SCHEMA_VERSION = 1
WORKERS_ENV = "CENTRALIZER_LAB_WORKERS"

DEFAULT_LIMITS = {"box": 2, "max_exp": 20, "qmax": 10, "max_rules": 1 << 20, "table_limit": 50}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    tol: Fraction = Fraction(1, 10 ** 9)
    workers: int = 1
    output: str = "text"
    digits: int = 12
    limits: dict = field(default_factory=lambda: dict(DEFAULT_LIMITS))

    def validate(self):
        if self.tol <= 0:
            raise UsageError("tol must be positive")
        if self.workers < 1:
            raise UsageError("workers must be positive")
        if self.output not in ("text", "json"):
            raise UsageError("output must be text or json")
        for k, v in self.limits.items():
            if int(v) < 1:
                raise UsageError(f"limit {k} must be positive")


def resolve_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read config: {e}")
    cfg = RunConfig()
    try:
        if "tol" in data:
            cfg.tol = as_fraction(str(data["tol"]))
        if args.tol is not None:
            cfg.tol = as_fraction(args.tol)
    except (ValueError, ZeroDivisionError):
        raise UsageError("tol must be a decimal or rational number")
    if args.workers is not None:
        cfg.workers = args.workers
    elif "workers" in data:
        cfg.workers = int(data["workers"])
    elif os.environ.get(WORKERS_ENV):
        try:
            cfg.workers = int(os.environ[WORKERS_ENV])
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer")
    cfg.output = args.output or data.get("output", "text")
    cfg.digits = args.digits if args.digits is not None else int(data.get("digits", 12))
    cfg.limits.update({k: int(v) for k, v in data.get("limits", {}).items()})
    cfg.validate()
    return cfg


# --- inputs -------------------------------------------------------------------

def _load(value: str, bundled: dict):
    if value in bundled:
        return bundled[value]
    try:
        return json.loads(Path(value).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {value}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{value} is not valid JSON: {e}")


def load_matrix(value: str) -> IntMatrix:
    data = _load(value, fx.MATRICES)
    if isinstance(data, IntMatrix):
        return data
    try:
        return IntMatrix.from_json(data)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{value}: bad matrix ({e})")


def load_sft(value: str):
    data = _load(value, fx.TRANSITIONS)
    T = data.get("T", data.get("entries")) if isinstance(data, dict) else data
    try:
        return build_sft(T)
    except (TypeError, ValueError) as e:
        raise UsageError(f"{value}: bad transition matrix ({e})")


def load_code(value: str) -> SlidingBlockCode:
    try:
        return SlidingBlockCode.from_json(_load(value, fx.CODES))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{value}: bad block code ({e})")


def load_measure(value: str) -> CylinderMeasure:
    try:
        return CylinderMeasure.from_json(_load(value, fx.MEASURES))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise UsageError(f"{value}: bad measure ({e})")


def _positive(name, v):
    if v is not None and v < 1:
        raise UsageError(f"{name} must be positive")
    return v


# --- subcommands ---------------------------------------------------------------
# Each handler returns (payload, text lines, ok).

def cmd_linalg(args, cfg):
    M = load_matrix(args.matrix)
    out = {"matrix": M.to_json(), "det": json_int(det(M)), "trace": json_int(M.trace()),
           "charpoly": [json_int(c) for c in charpoly(M)]}
    lines = [str(M), f"det = {det(M)}", f"trace = {M.trace()}", f"charpoly (constant first) = {charpoly(M)}"]
    if abs(det(M)) == 1:
        Minv = inverse(M)
        out["inverse"] = Minv.to_json()
        lines += ["inverse =", str(Minv)]
    if args.power is not None:
        P = mat_pow(M, args.power)
        out["power"] = {"k": args.power, "matrix": P.to_json()}
        lines += [f"M^{args.power} =", str(P)]
    if args.snf:
        s = smith_normal_form(M.rows())
        out["snf"] = {"diagonal": [json_int(d) for d in s.diagonal],
                      "U": [[json_int(x) for x in r] for r in s.U],
                      "V": [[json_int(x) for x in r] for r in s.V]}
        lines.append(f"Smith diagonal = {s.diagonal}")
    if args.kernel:
        K = integer_kernel(M.rows())
        out["kernel"] = [[json_int(x) for x in v] for v in K]
        lines.append(f"integer kernel basis = {[list(v) for v in K]}")
    return out, lines, True


def cmd_spectrum(args, cfg):
    M = load_matrix(args.matrix)
    rep = spectrum_report(M, cfg.tol)
    split = ph_splitting(M, cfg.tol)
    out = {"spectrum": rep.to_json(cfg.digits), "splitting": split.to_json(cfg.digits)}
    lines = []
    for e in rep.enclosures:
        what = "root" if e.kind == "real" else "pair modulus"
        mult = f" (multiplicity {e.multiplicity})" if e.multiplicity > 1 else ""
        lines.append(f"{what}: {e.interval}{mult}")
    lines += [f"hyperbolic: {rep.hyperbolic}",
              f"stable/center/unstable dims: {rep.stable_dim}/{rep.center_dim}/{rep.unstable_dim}",
              f"entropy: {rep.entropy}",
              f"dominated splitting: {split.status}"]
    return out, lines, True


def cmd_entropy(args, cfg):
    M = load_matrix(args.matrix)
    h = entropy_interval(M, cfg.tol)
    return {"entropy": h.to_json(cfg.digits)}, [f"entropy: {h}"], True


def cmd_commutant(args, cfg):
    A = load_matrix(args.matrix)
    L = commutant_basis(A)
    if args.basis:
        data = _load(args.basis, {})
        L = L.rebased([IntMatrix.from_json(x) for x in data["basis"]])
    box = args.box or cfg.limits["box"]
    out = {"lattice": L.to_json()}
    lines = [f"commutant rank {L.rank}"] + [f"basis[{i}] =\n{X}" for i, X in enumerate(L.basis)]
    if args.units:
        units = enumerate_units_with_coordinates(L, box, cfg.workers)
        out["units"] = {"box": box, "count": len(units),
                        "items": [{"coordinates": list(c), "matrix": X.to_json()} for c, X in units]}
        lines.append(f"{len(units)} units with coordinates in [-{box}, {box}]")
        lines += [f"  {list(c)}: {X.rows()}" for c, X in units]
    if args.entropy_set:
        es = entropy_set(A, box, cfg.tol, cfg.workers, lattice=L)
        out["entropy_set"] = es.to_json(cfg.digits)
        out["entropy_set"]["distinct"] = [v.to_json(cfg.digits) for v in es.distinct_values(cfg.tol)]
        lines.append(f"entropy of A: {es.base_entropy}")
        lines += [f"  {v}" for v in es.distinct_values(cfg.tol)]
        lines.append(f"entropies lie on multiples of h/{es.step_divisor}" if es.step_divisor
                     else "entropies do not fit h/k for k <= 4")
    return out, lines, True


def cmd_relations(args, cfg):
    A, B = load_matrix(args.a), load_matrix(args.b)
    max_exp = args.max_exp or cfg.limits["max_exp"]
    power = find_power_relations(A, B, max_exp, cfg.tol)
    ident = find_identity_relations([A, B], max_exp)
    out = {"max_exp": max_exp, "power_relation": power.to_json(cfg.digits),
           "identity_relation": ident.to_json(cfg.digits)}
    lines = [f"A^n = B^m: {power.kind}" + (f" {power.exponents}" if power.exponents else ""),
             f"A^a B^b = I: {ident.kind}" + (f" {ident.exponents}" if ident.exponents else "")]
    if args.certify:
        cert = certify_independence(A, B, cfg.tol)
        out["certificate"] = cert.to_json(cfg.digits)
        lines.append(f"certificate: {cert.kind}")
        lines += [f"  ratio {r}" for r in cert.ratio_enclosures]
        lines += [f"  note: {n}" for n in cert.notes]
    return out, lines, True


def cmd_periodic(args, cfg):
    A = load_matrix(args.matrix)
    limit = args.limit or cfg.limits["table_limit"]
    if args.count is not None:
        _positive("--count", args.count)
        c = count_periodic(A, args.count)
        return {"n": args.count, "count": json_int(c)}, [f"fixed points of A^{args.count}: {c}"], True
    if args.enumerate is not None:
        _positive("--enumerate", args.enumerate)
        t = enumerate_periodic(A, args.enumerate)
        lines = [f"q = {t.q}: {len(t.orbits)} orbits, {t.size} points"]
        lines += [f"  {list(o.representative)} period {o.period}" for o in t.orbits[:limit]]
        return {"table": t.to_json(limit)}, lines, True
    if args.scan is not None:
        B = load_matrix(args.scan)
        qmax = _positive("--qmax", args.qmax) or cfg.limits["qmax"]
        r = orbit_preservation_scan(A, B, qmax)
        lines = [f"scanned q in {r.q_values}",
                 f"all orbits preserved: {r.all_preserved}",
                 f"max |n(p)|: {r.max_abs_n}",
                 f"detected power: {r.detected_power} (verified: {r.power_verified})"]
        if r.first_failure:
            q, rep, img = r.first_failure
            lines.append(f"first failure: q = {q}, orbit of {list(rep)} sent to {list(img)}")
        return {"scan": r.to_json(limit)}, lines, True
    if args.dense:
        grid = _positive("--grid", args.grid) or 2
        qmax = _positive("--qmax", args.qmax) or cfg.limits["qmax"]
        w = dense_orbit_search(A, grid, qmax)
        payload = {"grid": grid, "qmax": qmax, "witness": w.to_json() if w else None}
        text = f"witness: q = {w.q}, {list(w.representative)}, period {w.period}" if w else "no witness"
        return payload, [text], True
    raise UsageError("periodic needs one of --count, --enumerate, --scan, --dense")


def _measure_text(m: CylinderMeasure):
    return [f"pi = {', '.join(map(str, m.pi))}"] + \
        [f"P[{a}] = {', '.join(map(str, row))}" for a, row in enumerate(m.P)]


def _entropy_json(e, digits):
    if isinstance(e, Interval):
        return e.to_json(digits)
    return {"exact": e.to_json(), "interval": e.interval().to_json(digits)}


def cmd_sft(args, cfg):
    S = load_sft(args.transition)
    out = {"sft": S.to_json()}
    lines = [f"{S.k} symbols after pruning, kept {list(S.labels)}"]
    done = False
    if args.gluing:
        K = gluing_constant(S)
        out["gluing_constant"] = K
        lines.append(f"gluing constant: {K}")
        done = True
    if args.entropy:
        h = sft_entropy(S, cfg.tol)
        out["entropy"] = h.to_json(cfg.digits)
        lines.append(f"entropy: {h}")
        done = True
    if args.parry or args.rpf:
        if args.rpf:
            try:
                weights = [as_fraction(w) for w in args.rpf.split(",")]
            except (ValueError, ZeroDivisionError):
                raise UsageError("--rpf takes comma separated positive rationals")
            m = rpf_equilibrium(S, weights, cfg.tol)
        else:
            m = parry_measure(S, cfg.tol)
        out["measure"] = m.to_json(cfg.digits)
        out["measure_entropy"] = _entropy_json(m.entropy(cfg.tol), cfg.digits)
        lines += _measure_text(m) + [f"entropy: {m.entropy(cfg.tol)}"]
        done = True
    if args.periodic is not None:
        orbits = enumerate_periodic_words(S, _positive("--periodic", args.periodic))
        out["periodic"] = [{"word": word_str(o.word), "period": o.period} for o in orbits]
        lines.append(f"{len(orbits)} orbits: " + " ".join(str(o) for o in orbits))
        done = True
    if args.autos is not None:
        if args.autos < 0:
            raise UsageError("--autos must be nonnegative")
        scan = scan_automorphisms(S, args.autos, args.inverse_radius, cfg.workers, cfg.limits["max_rules"])
        out["automorphisms"] = scan.to_json()
        lines.append(f"{len(scan.automorphisms)} automorphisms among {scan.rules_scanned} rules "
                     f"{dict(sorted(scan.status_counts.items()))}")
        lines += [f"  {h}" for h in scan.automorphisms]
        done = True
    if args.criterion:
        h = load_code(args.criterion)
        N = _positive("--max-period", args.max_period) or 6
        v = theorem_a_check(S, h, N, args.inverse_radius)
        out["verdict"] = v.to_json()
        lines.append(str(v))
        done = True
    if args.push or args.cesaro:
        if not args.measure:
            raise UsageError("--push and --cesaro need --measure")
        m = load_measure(args.measure)
        if args.push:
            h = load_code(args.push)
            L = _positive("--len", args.len) or h.window
            r = pushforward(m, h, L, cfg.tol)
            out["pushforward"] = r.to_json(cfg.digits)
            lines.append(f"preserved on {L}-cylinders: {r.preserved} (sup distance {r.distance})")
            if r.entropy_source is not None:
                lines.append(f"entropy {r.entropy_source} -> {r.entropy_image}")
        if args.cesaro:
            h = load_code(args.cesaro)
            L = _positive("--len", args.len) or h.window
            n = _positive("--steps", args.steps) or 2
            c = cesaro_average(m, h, n, L)
            out["cesaro"] = c.to_json(cfg.digits)
            lines.append(f"average over {n} steps on {L}-cylinders, distance to its image {c.distance}")
            lines += [f"  {word_str(w)}: {x}" for w, x in sorted(c.average.items())]
        done = True
    if not done:
        raise UsageError("sft needs an action flag")
    return out, lines, True


def cmd_check_suite(args, cfg):
    rows = run_checks(cfg.tol)
    ok = all(r.status != "fail" for r in rows)
    width = max(len(r.title) for r in rows)
    lines = [f"{r.key:<4} {r.status:<5} {r.title:<{width}}  {r.detail}" for r in rows]
    counts = {s: sum(r.status == s for r in rows) for s in ("pass", "fail", "flag")}
    lines.append(f"{counts['pass']} pass, {counts['fail']} fail, {counts['flag']} flagged")
    return {"checks": [r.to_json() for r in rows], "ok": ok, "counts": counts}, lines, ok


def cmd_fixtures(args, cfg):
    out = {"matrices": sorted(fx.MATRICES), "transitions": sorted(fx.TRANSITIONS),
           "codes": sorted(fx.CODES), "measures": sorted(fx.MEASURES)}
    return out, [f"{k}: {', '.join(v)}" for k, v in out.items()], True


# --- parser ---------------------------------------------------------------------

def _common(default):
    # subcommands use SUPPRESS so a flag given before the subcommand is not reset
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", default=default, help="target enclosure width (default 1e-9)")
    common.add_argument("--workers", type=int, default=default, help=f"worker processes (env {WORKERS_ENV})")
    common.add_argument("--output", choices=("text", "json"), default=default)
    common.add_argument("--digits", type=int, default=default, help="decimals shown for intervals")
    common.add_argument("--config", default=default, help="JSON config file")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="centralizer-lab", parents=[_common(None)],
                                description="Exact computations on centralizers of hyperbolic maps.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("linalg", parents=[common], help="determinant, charpoly, inverse, SNF, kernel")
    s.add_argument("--matrix", required=True)
    s.add_argument("--power", type=int)
    s.add_argument("--snf", action="store_true")
    s.add_argument("--kernel", action="store_true")
    s.set_defaults(func=cmd_linalg)

    s = sub.add_parser("spectrum", parents=[common], help="certified spectrum and splitting")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("entropy", parents=[common], help="topological entropy enclosure")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("commutant", parents=[common], help="commutant lattice, units, entropy set")
    s.add_argument("--matrix", required=True)
    s.add_argument("--box", type=int)
    s.add_argument("--units", action="store_true")
    s.add_argument("--entropy-set", action="store_true")
    s.add_argument("--basis", help="JSON {\"basis\": [matrix, ...]} giving the coordinate basis")
    s.set_defaults(func=cmd_commutant)

    s = sub.add_parser("relations", parents=[common], help="power relations and independence")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--max-exp", type=int)
    s.add_argument("--certify", action="store_true")
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("periodic", parents=[common], help="periodic points of a toral automorphism")
    s.add_argument("--matrix", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", type=int)
    g.add_argument("--enumerate", type=int)
    g.add_argument("--scan")
    g.add_argument("--dense", action="store_true")
    s.add_argument("--qmax", type=int)
    s.add_argument("--grid", type=int)
    s.add_argument("--limit", type=int, help="orbits listed per table")
    s.set_defaults(func=cmd_periodic)

    s = sub.add_parser("sft", parents=[common], help="shifts of finite type")
    s.add_argument("--transition", required=True)
    s.add_argument("--gluing", action="store_true")
    s.add_argument("--entropy", action="store_true")
    s.add_argument("--parry", action="store_true")
    s.add_argument("--rpf")
    s.add_argument("--periodic", type=int)
    s.add_argument("--autos", type=int)
    s.add_argument("--inverse-radius", type=int)
    s.add_argument("--criterion")
    s.add_argument("--max-period", type=int)
    s.add_argument("--push")
    s.add_argument("--cesaro")
    s.add_argument("--measure")
    s.add_argument("--len", type=int)
    s.add_argument("--steps", type=int)
    s.set_defaults(func=cmd_sft)

    s = sub.add_parser("paper-check", parents=[common], help="run the bundled reproduction suite")
    s.set_defaults(func=cmd_check_suite)

    s = sub.add_parser("fixtures", parents=[common], help="list bundled inputs")
    s.set_defaults(func=cmd_fixtures)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    output = args.output or "text"
    try:
        cfg = resolve_config(args)
        output = cfg.output
        payload, lines, ok = args.func(args, cfg)
    except UsageError as e:
        return _fail(output, "usage", str(e), 1, stdout, stderr)
    except CentralizerLabError as e:
        return _fail(output, e.code, str(e), 1 if e.usage else 2, stdout, stderr)
    except (ValueError, KeyError, TypeError) as e:
        return _fail(output, "invalid_input", str(e), 1, stdout, stderr)
    if output == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "ok": ok, "result": payload}
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 2


def _fail(output, code, message, status, stdout, stderr) -> int:
    if output == "json":
        doc = {"schema_version": SCHEMA_VERSION, "ok": False, "error": {"code": code, "message": message}}
        stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        stderr.write(f"error [{code}]: {message}\n")
    return status


def main() -> None:
    sys.exit(run())
