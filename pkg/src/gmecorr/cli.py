"""Command-line interface: ``gmecorr {analyze,sweep,threshold,verify}``.

State specification files are JSON documents::

    {"format_version": 1, "d": 3, "family": "ghz-isotropic", "params": {"x": 0.8}}

``family`` is one of ``ghz-isotropic`` (parameter ``x``, any ``d``),
``ghz-w-mix`` (``x``, ``y``; ``d = 2``), ``example3-isotropic`` (``x``;
``d = 3``) or ``explicit``.  An explicit state carries ``"matrix"``: a
``d^3 x d^3`` nested list of ``[re, im]`` pairs, rows and columns in ket
order ``|abc> -> a*d^2 + b*d + c``.  Matrices within 1e-8 of Hermitian are
symmetrized with a warning; anything further off is rejected.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 criterion
never changes sign on the bracket.

Sweep CSV files start with ``#``-prefixed metadata lines, then a header
row, then one row per grid point (first parameter varies slowest).  Floats
are written with 9 significant digits.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import itertools
import json
import sys
import warnings

import numpy as np

from . import __version__
from .bloch import closed_form_purities, correlation_tensors, reduced_purities
from .criteria import (
    NoSignChange,
    analyze,
    find_threshold,
    m_k_all,
    theorem1_threshold,
    theorem2_bound,
    theorem2_bound_corrected,
)
from .linalg import hermiticity_deviation
from .states import FAMILIES, InvalidStateError, StateSpec, validate
from .verify import CHECKS, KNOWN_FAILURES, run_suite

FORMAT_VERSION = 1
SWEEP_SCHEMA = "gmecorr-sweep/1"
SYMMETRIZE_TOL = 1e-8

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INPUT, EXIT_NO_CROSSING = 0, 1, 2, 3


class InputError(Exception):
    pass


def fmt(v):
    """9-significant-digit float formatting, locale independent."""
    return format(float(v), ".9g")


def digest(obj):
    if isinstance(obj, bytes):
        raw = obj
    else:
        raw = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(raw).hexdigest()


# ------------------------------------------------------------ spec parsing


def spec_from_dict(obj):
    if not isinstance(obj, dict):
        raise InputError("state specification must be a JSON object")
    version = obj.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InputError(f"unsupported format_version {version!r}")
    family = obj.get("family")
    if family not in FAMILIES:
        raise InputError(f"family must be one of {sorted(FAMILIES)}, got {family!r}")
    try:
        d = int(obj["d"])
    except (KeyError, TypeError, ValueError):
        raise InputError("missing or non-integer 'd'") from None
    params = obj.get("params", {})
    if not isinstance(params, dict) or not all(isinstance(v, (int, float)) for v in params.values()):
        raise InputError("'params' must map names to numbers")
    matrix = None
    if family == "explicit":
        matrix = _parse_matrix(obj.get("matrix"), d)
    try:
        return StateSpec(family, d, {k: float(v) for k, v in params.items()}, matrix, obj.get("seed"))
    except InvalidStateError as exc:
        raise InputError(str(exc)) from None


def _parse_matrix(entries, d):
    n = d**3
    try:
        arr = np.array(entries, dtype=float)
    except (TypeError, ValueError):
        raise InputError("'matrix' must be nested arrays of [re, im] pairs") from None
    if arr.shape != (n, n, 2):
        raise InputError(f"'matrix' must have shape ({n}, {n}, 2) for d={d}, got {arr.shape}")
    m = arr[..., 0] + 1j * arr[..., 1]
    if not np.all(np.isfinite(m)):
        raise InputError("'matrix' has non-finite entries")
    dev = hermiticity_deviation(m)
    if dev > SYMMETRIZE_TOL:
        raise InputError(f"hermiticity violated: deviation {dev:.3e} > {SYMMETRIZE_TOL:.0e}")
    if dev > 0:
        warnings.warn(f"symmetrizing explicit matrix (hermiticity deviation {dev:.3e})", stacklevel=2)
        m = (m + m.conj().T) / 2
    return m


def load_spec(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None
    return spec_from_dict(obj), raw


def parse_k(text, d):
    """``"all"``, ``"best"`` or an integer 1 .. d^2-1."""
    kmax = d * d - 1
    if text in ("all", "best"):
        return text
    try:
        k = int(text)
    except ValueError:
        raise InputError(f"--k must be an integer, 'all' or 'best', got {text!r}") from None
    if not 1 <= k <= kmax:
        raise InputError(f"--k must lie in 1..{kmax} for d={d}, got {k}")
    return k


def parse_param(text):
    """``NAME=START:END:STEPS`` or ``NAME=VALUE``."""
    name, sep, rng = text.partition("=")
    if not sep or not name:
        raise InputError(f"--param must look like NAME=START:END:STEPS, got {text!r}")
    parts = rng.split(":")
    try:
        if len(parts) == 1:
            return name, np.array([float(parts[0])])
        if len(parts) == 3:
            start, end, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1:
                raise ValueError
            return name, np.linspace(start, end, steps) if steps > 1 else np.array([start])
    except ValueError:
        pass
    raise InputError(f"cannot parse parameter range {text!r}")


def _family_spec(family, d, fixed=None):
    if family == "explicit" or family not in FAMILIES:
        raise InputError(f"--family must be one of {sorted(set(FAMILIES) - {'explicit'})}")
    fixed_d = FAMILIES[family][1]
    d = fixed_d if d is None else d
    if d is None:
        raise InputError(f"--d is required for family {family!r}")
    try:
        return StateSpec(family, d, fixed or {})
    except InvalidStateError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------- commands


def cmd_analyze(args, out):
    spec, raw = load_spec(args.input)
    try:
        rho = spec.resolve()
    except InvalidStateError as exc:
        raise InputError(f"state failed validation: {exc}") from None
    k = parse_k(args.k, spec.d)
    data = correlation_tensors(rho)
    report = analyze(data)
    body = report.as_dict()
    if k == "best":
        body["theorem1"] = [r for r in body["theorem1"] if r["k"] == report.best_k]
    elif k != "all":
        body["theorem1"] = [r for r in body["theorem1"] if r["k"] == k]
    purities = reduced_purities(rho)
    meta = {"tool": "gmecorr", "version": __version__, "input_digest": digest(raw), "seed": args.seed}
    if args.format == "json":
        doc = {
            **meta,
            "state": {"family": spec.family, "d": spec.d, "params": dict(spec.params)},
            "validation": {
                "hermiticity_deviation": rho.report.hermiticity_deviation,
                "trace_deviation": rho.report.trace_deviation,
                "min_eigenvalue": rho.report.min_eigenvalue,
            },
            "norms": data.norms(),
            "purities": purities._asdict(),
            "purities_closed_form": closed_form_purities(data)._asdict(),
            "report": body,
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        buf = io.StringIO()
        for key, val in meta.items():
            buf.write(f"# {key}: {val}\n")
        buf.write(f"# verdict: {body['verdict']}\n")
        buf.write(f"# theorem2_bound: {fmt(body['theorem2_bound'])}\n")
        buf.write(f"# theorem2_bound_corrected: {fmt(body['theorem2_bound_corrected'])}\n")
        buf.write("k,m_k,threshold,margin,verdict\n")
        for r in body["theorem1"]:
            buf.write(f"{r['k']},{fmt(r['m_k'])},{fmt(r['threshold'])},{fmt(r['margin'])},{r['verdict']}\n")
        out.write(buf.getvalue())
    return EXIT_OK


def _criteria(args):
    crit = args.criterion or ["theorem1", "theorem2"]
    return list(dict.fromkeys(crit))


def sweep_rows(spec, grids, criteria, ks):
    """Column names and rows of a parameter sweep, in grid order."""
    names = [n for n, _ in grids]
    cols = names + ["psd_valid"]
    if "theorem1" in criteria:
        for k in ks:
            cols += [f"m_k{k}", f"margin_k{k}"]
    if "theorem2" in criteria:
        cols += ["theorem2_bound", "theorem2_bound_corrected"]
    rows = []
    for point in itertools.product(*(g for _, g in grids)):
        params = dict(zip(names, point))
        m = spec.raw(**params)
        row = list(point) + [int(validate(m).passed)]
        data = correlation_tensors(m)
        if "theorem1" in criteria:
            mk = m_k_all(data)
            for k in ks:
                row += [mk[k - 1], mk[k - 1] - theorem1_threshold(spec.d, k)]
        if "theorem2" in criteria:
            row += [theorem2_bound(data), theorem2_bound_corrected(data)]
        rows.append(row)
    return cols, rows


def cmd_sweep(args, out):
    grids = []
    for text in args.param or []:
        name, grid = parse_param(text)
        grids.append((name, grid))
    spec = _family_spec(args.family, args.d)
    unknown = [n for n, _ in grids if n not in spec.parameter_names]
    missing = [n for n in spec.parameter_names if n not in {g[0] for g in grids}]
    if unknown or missing:
        raise InputError(f"family {spec.family!r} needs --param for {list(spec.parameter_names)}")
    criteria = _criteria(args)
    k = parse_k(args.k, spec.d)
    ks = list(range(1, spec.d**2)) if k in ("all", "best") else [k]
    cols, rows = sweep_rows(spec, grids, criteria, ks)
    inputs = {
        "family": spec.family,
        "d": spec.d,
        "params": args.param,
        "criteria": criteria,
        "k": args.k,
        "seed": args.seed,
    }
    buf = io.StringIO()
    buf.write(f"# schema: {SWEEP_SCHEMA}\n")
    buf.write(f"# tool: gmecorr {__version__}\n")
    buf.write(f"# seed: {args.seed}\n")
    buf.write(f"# input_digest: {digest(inputs)}\n")
    buf.write(f"# family: {spec.family} d={spec.d}\n")
    buf.write("# columns: parameters; psd_valid (1 if the state is a valid density matrix);"
              " m_k<k> (averaged Ky Fan k-norm of the T123 unfoldings); margin_k<k> (m_k minus the"
              " biseparable threshold, > 0 certifies GME); theorem2_bound (max(|T123|/(2 sqrt 2) - (d-1)/d, 0));"
              " theorem2_bound_corrected (offset ((d-1)/d) sqrt((d+1)/d))\n")
    buf.write(",".join(cols) + "\n")
    for row in rows:
        buf.write(",".join(str(v) if isinstance(v, int) else fmt(v) for v in row) + "\n")
    _emit(buf.getvalue(), args.output, out)
    return EXIT_OK


def cmd_threshold(args, out):
    fixed = {}
    for text in args.param or []:
        name, grid = parse_param(text)
        if grid.size != 1:
            raise InputError("threshold --param takes a single value (NAME=VALUE)")
        fixed[name] = float(grid[0])
    spec = _family_spec(args.family, args.d, fixed)
    free = args.free or spec.parameter_names[0]
    if free not in spec.parameter_names:
        raise InputError(f"family {spec.family!r} has no parameter {free!r}")
    others = [n for n in spec.parameter_names if n != free and n not in fixed]
    if others:
        raise InputError(f"fix the remaining parameters with --param, missing {others}")
    criterion = args.criterion[0] if args.criterion else "theorem1"
    try:
        lo, hi = (float(v) for v in args.bracket.split(":"))
    except ValueError:
        raise InputError(f"--bracket must look like LO:HI, got {args.bracket!r}") from None
    family = spec.along(free)
    k = None
    try:
        if criterion == "theorem2":
            x = find_threshold(family, criterion, lo, hi)
        else:
            kk = parse_k(args.k, spec.d)
            if kk in ("all", "best"):
                # earliest onset over all k
                found = []
                for cand in range(1, spec.d**2):
                    try:
                        found.append((find_threshold(family, criterion, lo, hi, k=cand), cand))
                    except NoSignChange:
                        pass
                if not found:
                    raise NoSignChange(f"theorem1 does not change sign on [{lo}, {hi}] for any k")
                x, k = min(found)
            else:
                k = kk
                x = find_threshold(family, criterion, lo, hi, k=k)
    except InvalidStateError as exc:
        raise InputError(f"state failed validation inside the bracket: {exc}") from None
    if args.format == "json":
        inputs = {"family": spec.family, "d": spec.d, "fixed": fixed, "free": free,
                  "criterion": criterion, "k": k, "bracket": [lo, hi]}
        doc = {"tool": "gmecorr", "version": __version__, "input_digest": digest(inputs),
               "seed": args.seed, **inputs, "threshold": x}
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        out.write(f"{x:.6f}\n")
    return EXIT_OK


def cmd_verify(args, out):
    try:
        dims = sorted({int(v) for v in args.dims.split(",")})
    except ValueError:
        raise InputError(f"--dims must be a comma-separated list of integers, got {args.dims!r}") from None
    if any(d < 2 for d in dims) or args.trials < 0:
        raise InputError("dimensions must be >= 2 and --trials >= 0")
    checks = CHECKS + KNOWN_FAILURES if args.all_checks else CHECKS
    report = run_suite(dims, args.trials, args.seed, tolerance=args.tolerance, checks=checks)
    _emit(report.to_json(), args.output, out)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _emit(text, path, out):
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser():
    p = argparse.ArgumentParser(prog="gmecorr", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gmecorr {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--output", help="write to this file instead of stdout")

    a = sub.add_parser("analyze", help="criteria report for one state file")
    a.add_argument("input")
    a.add_argument("--k", default="all")
    a.add_argument("--format", choices=("json", "csv"), default="json")
    common(a)

    s = sub.add_parser("sweep", help="evaluate criteria on a parameter grid (CSV)")
    s.add_argument("--family", required=True)
    s.add_argument("--d", type=int)
    s.add_argument("--param", action="append", metavar="NAME=START:END:STEPS")
    s.add_argument("--criterion", action="append", choices=("theorem1", "theorem2"))
    s.add_argument("--k", default="all")
    s.add_argument("--format", choices=("csv",), default="csv")
    common(s)

    t = sub.add_parser("threshold", help="bisect for the parameter where a criterion starts to fire")
    t.add_argument("--family", required=True)
    t.add_argument("--d", type=int)
    t.add_argument("--param", action="append", metavar="NAME=VALUE", help="fix a non-free parameter")
    t.add_argument("--free", help="parameter to bisect (default: the family's first)")
    t.add_argument("--criterion", action="append", choices=("theorem1", "theorem2"))
    t.add_argument("--k", default="best")
    t.add_argument("--bracket", default="0:1")
    t.add_argument("--format", choices=("text", "json"), default="text")
    common(t)

    v = sub.add_parser("verify", help="sampled check of the underlying identities and bounds")
    v.add_argument("--dims", default="2,3")
    v.add_argument("--trials", type=int, default=500)
    v.add_argument("--all-checks", action="store_true", help="also run checks known to fail")
    v.add_argument("--tolerance", type=float, default=None, help=argparse.SUPPRESS)
    common(v)
    return p


COMMANDS = {"analyze": cmd_analyze, "sweep": cmd_sweep, "threshold": cmd_threshold, "verify": cmd_verify}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"gmecorr: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NoSignChange as exc:
        print(f"gmecorr: {exc}", file=sys.stderr)
        return EXIT_NO_CROSSING


if __name__ == "__main__":
    sys.exit(main())
