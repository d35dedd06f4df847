"""Command-line front end: ``jacobi-edge {cdf,sample,validate,replay}``.

Every output file embeds a run manifest (command, arguments, seed, library
version, backend and a SHA-256 of the data section).  The timestamp is taken
from ``SOURCE_DATE_EPOCH`` when set and is null otherwise, so reruns are
byte-identical.  ``JACOBI_EDGE_THREADS`` overrides the worker count.

Exit codes: 0 success, 1 failed validation, 2 invalid parameters,
3 parameters incompatible with the requested mode or method.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__, _backend
from .edge_laws import MODES, EdgeCurve, ModeMismatchError, tabulate_curve
from .sampling import SamplerConfig, SamplerConfigError, sample
from .selberg import EnsembleParams

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def _json_value(v):
    if v is None:
        return None
    if isinstance(v, (int, np.integer)):
        return int(v)
    f = float(v)
    return f if np.isfinite(f) else repr(f)


def _timestamp() -> Optional[str]:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if not epoch:
        return None
    return datetime.datetime.fromtimestamp(int(epoch), datetime.timezone.utc).isoformat()


def _manifest(command: str, args: dict, data_sha: str) -> dict:
    return {
        "command": command,
        "args": args,
        "seed": args.get("seed"),
        "version": __version__,
        "backend": _backend.BACKEND_NAME,
        "timestamp": _timestamp(),
        "checksums": {"data_sha256": data_sha},
    }


def render_table(command: str, args: dict, columns: Sequence[str], rows, fmt: str) -> str:
    """CSV or JSON text with the manifest embedded."""
    if fmt == "csv":
        body = ",".join(columns) + "\n" + "".join(",".join(_fmt(v) for v in r) + "\n" for r in rows)
        sha = hashlib.sha256(body.encode()).hexdigest()
        man = json.dumps(_manifest(command, args, sha), sort_keys=True, separators=(",", ":"))
        return f"# manifest {man}\n" + body
    data = {"columns": list(columns), "rows": [[_json_value(v) for v in r] for r in rows]}
    sha = hashlib.sha256(json.dumps(data, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    doc = {"schema_version": SCHEMA_VERSION, "manifest": _manifest(command, args, sha), **data}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def read_manifest(text: str) -> dict:
    if text.startswith("# manifest "):
        return json.loads(text.splitlines()[0][len("# manifest "):])
    return json.loads(text)["manifest"]


def _emit(text: str, out: Optional[str]):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def parse_grid(spec: str) -> np.ndarray:
    """``start:stop:num`` (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in spec:
            a, b, n = spec.split(":")
            n = int(n)
            if n < 1:
                raise ValueError
            pts = np.linspace(float(a), float(b), n)
        else:
            pts = np.array([float(v) for v in spec.split(",") if v.strip()])
    except ValueError:
        raise CliError(EXIT_INVALID, f"invalid --grid {spec!r}; use start:stop:num or a comma list") from None
    if pts.size == 0 or np.any(pts < 0) or not np.all(np.isfinite(pts)):
        raise CliError(EXIT_INVALID, "grid points must be finite and nonnegative")
    return pts


def _params(ns) -> EnsembleParams:
    try:
        return EnsembleParams(ns.N, ns.beta, ns.alpha1, ns.alpha2)
    except ValueError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from None


def _common(p: argparse.ArgumentParser):
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--alpha1", type=float, required=True)
    p.add_argument("--alpha2", type=float, required=True)
    p.add_argument("--out", default=None, help="output path; stdout when omitted")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _num(v: float):
    return int(v) if float(v).is_integer() else float(v)


def cmd_cdf(ns) -> int:
    p = _params(ns)
    grid = parse_grid(ns.grid)
    try:
        curve: EdgeCurve = tabulate_curve(p, ns.mode, grid, ns.edge)
    except ModeMismatchError as exc:
        raise CliError(EXIT_MISMATCH, str(exc)) from None
    args = {"N": p.N, "beta": _num(p.beta), "alpha1": _num(p.alpha1), "alpha2": _num(p.alpha2),
            "edge": ns.edge, "mode": ns.mode, "grid": ns.grid, "format": ns.format}
    _emit(render_table("cdf", args, EdgeCurve.COLUMNS, curve.points, ns.format), ns.out)
    return EXIT_OK


def cmd_sample(ns) -> int:
    p = _params(ns)
    if ns.count < 1:
        raise CliError(EXIT_INVALID, "--count must be positive")
    if not 0 <= ns.seed < 2 ** 64:
        raise CliError(EXIT_INVALID, "--seed must be a 64-bit unsigned integer")
    want = "smallest_only" if ns.want == "smallest" else "all_eigenvalues"
    try:
        cfg = SamplerConfig(p, ns.method, ns.seed, ns.batch_size, want)
    except SamplerConfigError as exc:
        raise CliError(EXIT_MISMATCH, str(exc)) from None
    except ValueError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from None
    res = sample(cfg, ns.count)
    vals = res.values
    if vals.ndim == 1:
        cols = ("draw", "smallest")
        rows = [(i, v) for i, v in enumerate(vals)]
    else:
        cols = ("draw",) + tuple(f"e{j}" for j in range(p.N))
        rows = [(i, *r) for i, r in enumerate(vals)]
    args = {"N": p.N, "beta": _num(p.beta), "alpha1": _num(p.alpha1), "alpha2": _num(p.alpha2),
            "method": ns.method, "count": ns.count, "seed": ns.seed, "want": ns.want,
            "batch_size": ns.batch_size, "format": ns.format}
    _emit(render_table("sample", args, cols, rows, ns.format), ns.out)
    if res.incidents:
        print(f"note: {res.incidents} singular A+B draws resampled", file=sys.stderr)
    return EXIT_OK


def cmd_validate(ns) -> int:
    from .validation import run_suite

    report = run_suite(ns.suite, ns.seed)
    text = json.dumps({"schema_version": SCHEMA_VERSION, "version": __version__, **report},
                      sort_keys=True, indent=1) + "\n"
    _emit(text, ns.report)
    for c in report["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        print(f"{mark} {c['name']}: {c['value']:.3g} (bound {c['bound']:.3g})", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def argv_from_manifest(man: dict, out: Optional[str] = None) -> list:
    """Command line that regenerates the file a manifest was read from."""
    a = dict(man["args"])
    argv = [man["command"]]
    for key in sorted(a):
        flag = "--" + key.replace("_", "-")
        argv += [flag, str(a[key])]
    if out is not None:
        argv += ["--out", out]
    return argv


def cmd_replay(ns) -> int:
    with open(ns.path, encoding="utf-8") as fh:
        man = read_manifest(fh.read())
    return main(argv_from_manifest(man, ns.out))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jacobi-edge", description="Extreme-eigenvalue laws of Jacobi beta-ensembles")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cdf", help="tabulate a CDF on the hard-edge scale x = N^2 xi")
    _common(c)
    c.add_argument("--edge", choices=("smallest", "largest"), default="smallest")
    c.add_argument("--mode", choices=MODES, default="two-term")
    c.add_argument("--grid", default="0:10:201")
    c.set_defaults(func=cmd_cdf)

    s = sub.add_parser("sample", help="draw ensemble eigenvalues")
    _common(s)
    s.add_argument("--method", choices=("killip-nenciu", "double-wishart"), default="killip-nenciu")
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--want", choices=("smallest", "all"), default="smallest")
    s.add_argument("--batch-size", type=int, default=250)
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("validate", help="run a check suite and write a JSON report")
    v.add_argument("--suite", choices=("identities", "figures", "convergence"), required=True)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--report", default=None)
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("replay", help="regenerate an output file from its manifest")
    r.add_argument("path")
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_replay)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
