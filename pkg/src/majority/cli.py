"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 insufficient or invalid verdict,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import formats
from .analysis import bounds_report
from .errors import InvalidParameters, ResourceLimit
from .hypercore.minimal import min_non_property
from .models import ModelId
from .strategies import build_cm_even, build_cm_odd, build_gm, build_om
from .verifier.bm import BM_COLORING_CAP, DEFAULT_MEMO_CAP, verify_bm
from .verifier.deterministic import DEFAULT_COLORING_CAP, FailureWitness, verify_deterministic
from .verifier.exact import DEFAULT_MAX_CANDIDATES, exact_n
from .verifier.oracle import run_crosscheck

EXIT_OK, EXIT_USAGE, EXIT_INSUFFICIENT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    n: int | None = None
    k: int | None = None
    coloring_cap: int | None = None
    q_cap: int = 12
    memo_cap: int = DEFAULT_MEMO_CAP
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    time_budget: float | None = None
    threads: int = 1
    input: str | None = None
    output: str | None = None
    emit_witness: str | None = None
    text_stem: str | None = None
    format: str = "json"
    exact: bool = True
    i: int | None = None
    seed: int = 0
    count: int = 500
    max_n: int = 10
    max_q: int = 6

    def validate(self):
        for name in ("coloring_cap", "q_cap", "memo_cap", "max_candidates", "threads", "count"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise InvalidParameters(f"{name} must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise InvalidParameters("time budget must be positive")
        if self.model is not None:
            ModelId.parse(self.model)
        if self.n is not None and self.k is not None and not 1 <= self.k <= self.n:
            raise InvalidParameters(f"need 1 <= k <= n, got k={self.k}, n={self.n}")


def _need(cfg, *names):
    missing = [f"--{x.replace('_', '-')}" for x in names if getattr(cfg, x) is None]
    if missing:
        raise InvalidParameters(f"{cfg.command} needs {' '.join(missing)}")


def construct(model, n: int, k: int, cap: int = 12):
    model = ModelId.parse(model)
    if model is ModelId.OM:
        return build_om(n, k)
    if model is ModelId.CM:
        return build_cm_even(n, k) if k % 2 == 0 else build_cm_odd(n, k, cap=cap)
    s = build_gm(n, k, cap=cap)
    return dataclasses.replace(s, model=model)


def _emit(cfg, obj, out=None):
    text = obj if isinstance(obj, str) else formats.dumps(obj)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        (out or sys.stdout).write(text)


def _cmd_construct(cfg):
    _need(cfg, "model", "n", "k")
    s = construct(cfg.model, cfg.n, cfg.k, cfg.q_cap)
    if cfg.text_stem:
        formats.write_strategy_files(s, cfg.text_stem)
    _emit(cfg, formats.strategy_to_json(s))
    return EXIT_OK


def _cmd_verify(cfg):
    _need(cfg, "model", "input")
    model = ModelId.parse(cfg.model)
    queries = formats.load_hypergraph(cfg.input)
    if model is ModelId.BM:
        res = verify_bm(queries, cfg.coloring_cap or BM_COLORING_CAP, cfg.memo_cap)
    else:
        res = verify_deterministic(model, queries, cfg.coloring_cap or DEFAULT_COLORING_CAP)
    obj = formats.verification_to_json(res)
    if isinstance(res, FailureWitness) and cfg.emit_witness:
        Path(cfg.emit_witness).write_text(formats.dumps(obj))
    _emit(cfg, obj)
    return EXIT_INSUFFICIENT if isinstance(res, FailureWitness) else EXIT_OK


def _cmd_exact(cfg):
    _need(cfg, "model", "n", "k")
    res = exact_n(cfg.model, cfg.k, cfg.n, max_candidates=cfg.max_candidates,
                  time_budget=cfg.time_budget, threads=cfg.threads)
    _emit(cfg, formats.exact_to_json(res))
    return EXIT_OK


def _cmd_min(cfg):
    _need(cfg, "n", "k")
    prop = "B" if cfg.command == "min-b" else "C"
    res = min_non_property(prop, cfg.k, cfg.n, cfg.q_cap, cfg.time_budget)
    _emit(cfg, formats.minimal_to_json(res))
    return EXIT_OK


def _cmd_analyze(cfg):
    _need(cfg, "model", "input")
    queries = formats.load_hypergraph(cfg.input)
    obj = formats.analyze_queries(cfg.model, queries, cfg.i)
    _emit(cfg, obj)
    return EXIT_OK


def _cmd_report(cfg):
    _need(cfg, "model", "n", "k")
    rep = bounds_report(cfg.model, cfg.k, cfg.n, compute_exact=cfg.exact,
                        max_candidates=cfg.max_candidates, time_budget=cfg.time_budget,
                        strict=False)
    _emit(cfg, rep.table() + "\n" if cfg.format == "text" else rep.to_json())
    return EXIT_INSUFFICIENT if rep.violations() else EXIT_OK


def _cmd_replay(cfg):
    _need(cfg, "input")
    obj = json.loads(Path(cfg.input).read_text())
    ok, msg = formats.replay(obj)
    print(("VALID: " if ok else "INVALID: ") + msg)
    return EXIT_OK if ok else EXIT_INSUFFICIENT


def _cmd_crosscheck(cfg):
    obj = run_crosscheck(cfg.count, cfg.seed, cfg.max_n, cfg.max_q)
    _emit(cfg, obj)
    return EXIT_OK if obj["disagreements"] == 0 else EXIT_INSUFFICIENT


COMMANDS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "exact": _cmd_exact,
    "min-b": _cmd_min,
    "min-c": _cmd_min,
    "analyze": _cmd_analyze,
    "report": _cmd_report,
    "replay": _cmd_replay,
    "crosscheck": _cmd_crosscheck,
}


def run(cfg: RunConfig) -> int:
    cfg.validate()
    try:
        return COMMANDS[cfg.command](cfg)
    except ResourceLimit as exc:
        params = {"model": cfg.model, "n": cfg.n, "k": cfg.k}
        _emit(cfg, formats.bracket_to_json(cfg.command, params, exc))
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def _model_arg(s):
    try:
        return ModelId.parse(s).value
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown model {s!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="majority", description="Non-adaptive majority query strategies.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, *flags):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--output", "-o", help="write the artifact here instead of stdout")
        for f in flags:
            f(sp)
        return sp

    def model(sp):
        sp.add_argument("--model", type=_model_arg, help="om, cm, gm or bm")

    def nk(sp):
        sp.add_argument("--n", type=int)
        sp.add_argument("--k", type=int)

    def inp(sp):
        sp.add_argument("--input", "-i", help="hypergraph text or JSON file")

    def budget(sp):
        sp.add_argument("--time-budget", type=float)
        sp.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)

    def qcap(sp):
        sp.add_argument("--cap", dest="q_cap", type=int, default=12, help="edge-count cap for non-B/C searches")

    sp = add("construct", "emit a strategy", model, nk, qcap)
    sp.add_argument("--text-stem", help="also write <stem>.txt and <stem>.aux.json")
    sp = add("verify", "certify a query set or find a failure witness", model, inp)
    sp.add_argument("--coloring-cap", type=int)
    sp.add_argument("--memo-cap", type=int, default=DEFAULT_MEMO_CAP)
    sp.add_argument("--emit-witness", help="write the failure witness here")
    sp = add("exact", "least sufficient query count", model, nk, budget)
    sp.add_argument("--threads", type=int, default=1)
    for name in ("min-b", "min-c"):
        sp = add(name, f"fewest edges without Property {name[-1].upper()}", nk, qcap)
        sp.add_argument("--time-budget", type=float)
    sp = add("analyze", "degree and structure report for a query set", model, inp)
    sp.add_argument("--i", type=int, help="parameter of the low-degree family check")
    sp = add("report", "lower/upper bounds against the exact value", model, nk, budget)
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.add_argument("--no-exact", dest="exact", action="store_false")
    sp.set_defaults(time_budget=60.0, max_candidates=200_000)
    sp = add("replay", "recheck any artifact file")
    sp.add_argument("input")
    sp = add("crosscheck", "verifier against the naive oracle on random sets")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=500)
    sp.add_argument("--max-n", type=int, default=10)
    sp.add_argument("--max-q", type=int, default=6)
    return p


def parse_config(argv=None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    known = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(**{k: v for k, v in ns.items() if k in known})


def main(argv=None) -> int:
    cfg = parse_config(argv)
    try:
        return run(cfg)
    except (ValueError, FileNotFoundError) as exc:
        # InvalidParameters, malformed input files, bad JSON
        print(f"majority: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
