"""Command-line front end.

Exit codes: 0 when everything requested passed, 1 when a check failed,
2 for usage errors.  Whenever ``--out`` is given a ``<out>.manifest.json``
is written next to it with the full parameter set and output digests.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import json
import platform
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import metadata

from . import __version__
from .duality import LEGACY, duality_a, duality_b_asep, duality_b_tazrp, duality_matrix, normalized_measure, reversible_measure
from .operators import SparseOperator, scalar_to_text
from .process import MODELS, build_generator
from .qarith import eval_at
from .sim import estimate_duality_gap, gillespie_run
from .statespace import Basis, Config
from .verify import REGISTRY, default_jobs, run_checks, run_fixtures

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DUALITIES = {"a": duality_a, "b": duality_b_asep, "tazrp": duality_b_tazrp, **LEGACY}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: list
    params: dict
    seed: int | None
    versions: dict
    outputs: dict = field(default_factory=dict)  # path -> sha256

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _versions() -> dict:
    out = {"multiasep": __version__, "python": platform.python_version()}
    for pkg in ("numpy", "scipy"):
        try:
            out[pkg] = metadata.version(pkg)
        except metadata.PackageNotFoundError:
            pass
    return out


# argument parsing ---------------------------------------------------------------------


def parse_q(text: str):
    """``"1/2"`` -> exact Fraction, ``"0.5"`` -> float."""
    try:
        if "." in text or "e" in text.lower():
            val = float(text)
        else:
            val = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not val > 0:
        raise argparse.ArgumentTypeError("q must be positive")
    return val


def parse_sector(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"sector must be comma-separated integers: {text!r}") from None


def parse_config(text: str) -> list:
    try:
        sites = json.loads(text)
    except json.JSONDecodeError:
        raise argparse.ArgumentTypeError(f"configuration must be JSON site lists, e.g. [[1,0],[0,1]]: {text!r}") from None
    if not isinstance(sites, list) or not all(isinstance(s, list) for s in sites):
        raise argparse.ArgumentTypeError("configuration must be a list of site lists")
    return sites


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, help="number of classes (holes count as class n)")
    p.add_argument("--j2", type=int, help="twice the spin, i.e. the site capacity")
    p.add_argument("--L", type=int, help="number of sites")
    p.add_argument("--model", choices=MODELS, default="asep")
    p.add_argument("--sector", type=parse_sector, help="particle counts per class, e.g. 1,1")
    p.add_argument("--q", type=parse_q, help="numeric q: rational string for exact values, float for doubles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "mtx"), default="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="multiasep", description="Exact checks and simulation for multi-species ASEP(q, j).")
    parser.add_argument("--list-checks", action="store_true", help="print the check registry and exit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("enumerate", parents=[common], help="list configurations")
    sub.add_parser("generator", parents=[common], help="build and export a generator")
    chk = sub.add_parser("check", parents=[common], help="run a named check or 'all'")
    chk.add_argument("name")
    chk.add_argument("--workers", type=int, default=1)
    dual = sub.add_parser("duality", parents=[common], help="evaluate or export a duality matrix")
    dual.add_argument("--kind", choices=sorted(DUALITIES), default="a")
    sub.add_parser("measure", parents=[common], help="reversible weights and normalized probabilities")
    sim = sub.add_parser("simulate", parents=[common], help="one Gillespie trajectory as JSON lines")
    sim.add_argument("--init", type=parse_config, required=True, help="initial configuration as JSON site lists")
    sim.add_argument("--t", type=float, default=1.0)
    est = sub.add_parser("estimate-duality", parents=[common], help="Monte Carlo duality estimate")
    est.add_argument("--x0", type=parse_config, required=True)
    est.add_argument("--y0", type=parse_config, required=True)
    est.add_argument("--t", type=float, default=1.0)
    est.add_argument("--replicas", type=int, default=10000)
    est.add_argument("--reversed", action="store_true", help="use the space-reversed process for x")
    sub.add_parser("fixtures", parents=[common], help="run the golden reference examples")
    return parser


# helpers ----------------------------------------------------------------------------


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' '.join(missing)}")


def _basis(args) -> Basis:
    if args.model == "tazrp":
        _need(args, "n", "L", "sector")
        return Basis.tazrp_sector(args.n, args.L, args.sector)
    _need(args, "n", "j2", "L")
    if args.sector is not None:
        return Basis.sector(args.n, args.j2, args.L, args.sector)
    return Basis.full(args.n, args.j2, args.L)


def _value_text(v, q0) -> str:
    if q0 is None:
        return scalar_to_text(v)
    x = eval_at(v, q0)
    return str(x) if isinstance(x, (Fraction, int)) else repr(float(x))


def _operator_payload(op: SparseOperator, args) -> bytes:
    if args.format == "mtx":
        if args.q is None:
            raise UsageError("--format mtx needs a numeric --q")
        buf = io.BytesIO()
        op.write_matrix_market(buf, args.q, comment=f"multiasep {args.command}")
        return buf.getvalue()
    data = op.to_json()
    if args.q is not None:
        data["q"] = str(args.q)
        data["entries"] = [[r, c, _value_text(v, args.q)] for r, c, v in op.items()]
    return (json.dumps(data, sort_keys=True) + "\n").encode()


def _config(sites: list, args) -> Config:
    bounded = args.model != "tazrp"
    try:
        return Config.from_sites(sites, n=args.n, bounded=bounded)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad configuration {sites}: {exc}") from None


# commands -------------------------------------------------------------------------


def cmd_enumerate(args):
    basis = _basis(args)
    lines = [json.dumps({"index": k, "config": [list(s) for s in c.sites]}) for k, c in enumerate(basis)]
    return EXIT_OK, ("\n".join(lines) + "\n").encode()


def cmd_generator(args):
    if args.model == "tazrp":
        _need(args, "n", "L", "sector")
    else:
        _need(args, "n", "j2", "L")
    gen = build_generator(args.model, args.n, args.j2, args.L, args.sector)
    return EXIT_OK, _operator_payload(gen, args)


def cmd_duality(args):
    basis = _basis(args)
    fn = DUALITIES[args.kind]
    if (args.kind == "tazrp") != (args.model == "tazrp"):
        raise UsageError("--kind tazrp goes with --model tazrp and only with it")
    return EXIT_OK, _operator_payload(duality_matrix(fn, basis), args)


def cmd_measure(args):
    if args.model == "tazrp":
        raise UsageError("q-TAZRP has no reversible measure")
    if args.format != "json":
        raise UsageError("measure only writes json")
    basis = _basis(args)
    weights = [reversible_measure(c) for c in basis]
    probs = normalized_measure(basis)
    rows = [{"config": [list(s) for s in c.sites], "weight": _value_text(w, args.q),
             "probability": _value_text(p, args.q)} for c, w, p in zip(basis, weights, probs)]
    return EXIT_OK, (json.dumps(rows, indent=1) + "\n").encode()


def cmd_simulate(args):
    _need(args, "q")
    c0 = _config(args.init, args)
    traj = gillespie_run(args.model, float(args.q), c0, args.t, args.seed)
    return EXIT_OK, traj.to_jsonl().encode()


def cmd_estimate(args):
    _need(args, "q")
    if args.model == "ssep":
        raise UsageError("estimate-duality supports asep and tazrp")
    x0, y0 = _config(args.x0, args), _config(args.y0, args)
    res = estimate_duality_gap(x0, y0, args.t, float(args.q), args.replicas, args.seed,
                               model=args.model, reversed_x=args.reversed)
    return EXIT_OK, (json.dumps(res, sort_keys=True) + "\n").encode()


def _report_lines(reports) -> tuple:
    # timings go to stderr so that saved outputs are reproducible byte for byte
    body = "".join(json.dumps({k: v for k, v in json.loads(r.to_json()).items() if k != "seconds"},
                              sort_keys=True) + "\n" for r in reports)
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} {json.dumps(r.params, sort_keys=True)} "
              f"{r.seconds:.2f}s", file=sys.stderr)
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    return code, body.encode()


def cmd_check(args):
    if args.name == "all":
        jobs = default_jobs()
    elif args.name in REGISTRY:
        overrides = {k: getattr(args, k) for k in ("n", "j2", "L") if getattr(args, k) is not None}
        if overrides:
            base = dict(REGISTRY[args.name].defaults[0]) if REGISTRY[args.name].defaults else {}
            base.update(overrides)
            jobs = [(args.name, base)]
        else:
            jobs = default_jobs([args.name])
    else:
        raise UsageError(f"unknown check {args.name!r}; see --list-checks")
    return _report_lines(run_checks(jobs, workers=args.workers))


def cmd_fixtures(args):
    return _report_lines(run_fixtures())


COMMANDS = {
    "enumerate": cmd_enumerate,
    "generator": cmd_generator,
    "check": cmd_check,
    "duality": cmd_duality,
    "measure": cmd_measure,
    "simulate": cmd_simulate,
    "estimate-duality": cmd_estimate,
    "fixtures": cmd_fixtures,
}


def _write(args, argv, payload: bytes):
    if args.out is None:
        sys.stdout.write(payload.decode())
        sys.stdout.flush()
        return
    with open(args.out, "wb") as fh:
        fh.write(payload)
    params = {k: (list(v) if isinstance(v, tuple) else str(v) if isinstance(v, Fraction) else v)
              for k, v in sorted(vars(args).items())}
    man = RunManifest(list(argv), params, args.seed, _versions(),
                      {args.out: hashlib.sha256(payload).hexdigest()})
    with open(args.out + ".manifest.json", "w") as fh:
        fh.write(man.to_json() + "\n")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.list_checks:
        for name in sorted(REGISTRY):
            spec = REGISTRY[name]
            print(f"{name:24s} {spec.description} ({len(spec.defaults)} default jobs)")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        code, payload = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"multiasep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write(args, argv, payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
