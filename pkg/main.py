"""
Supergrass — Z₂ⁿ supergrassmannian engine
==========================================
Entry point. Builds the atlas of G_k⃗(m⃗), computes symbolic transition maps
and runs the verification suites; reports go to stdout, logs to stderr.

Run:
  python3 main.py info --n 3
  python3 main.py atlas --k 1,2,1,1 --m 2,2,2,2
  python3 main.py transition --k 1,1 --m 2,2 --from 1/1 --to 2/2 --output json
  python3 main.py verify cocycle --k 1,1 --m 2,2 --trunc 4
  python3 main.py verify action --seed 42 --samples 10

Exit codes: 0 all pass, 1 verification failure (or SingularBody in
`transition`), 2 usage or configuration error.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction

import yaml
from dotenv import load_dotenv

from algebra import evaluate, fraction_str, series_str, verify_algebra_laws
from errors import (ConfigurationError, DegreeMismatch, InvalidShape, InvalidTruncation,
                    ShapeMismatch, SingularBody, TableMismatch, ZeroBody)
import formatters
from grading import DegreeChain
from grassmannian import (KIndex, beta_dims, build_chart, check_shape, enumerate_charts,
                          shape_str, transition, verify_cocycle)
from group_action import (verify_action_gluing, verify_action_laws, verify_chart_lemma,
                          verify_transitivity)
from sampling import SamplingConfig
from supermatrix import BlockDims
from sweep import Report

logger = logging.getLogger("supergrass")

SUITES = ("cocycle", "action", "lemma", "laws", "transitivity", "algebra")
USAGE_ERRORS = (ConfigurationError, InvalidShape, ShapeMismatch, InvalidTruncation,
                DegreeMismatch, TableMismatch)


# ── Logging ───────────────────────────────────────────────────────────────────

LOG_FORMAT = "%(asctime)s %(name)-20s %(levelname)-8s %(message)s"


def setup_logging(level: str = "INFO", log_path: str | None = None) -> None:
    # stdout carries the report; logs stay on stderr
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_path:
        os.makedirs(os.path.dirname(log_path) or ".", exist_ok=True)
        handlers.append(logging.FileHandler(log_path))
    logging.basicConfig(level=getattr(logging, str(level).upper(), logging.INFO),
                        format=LOG_FORMAT, handlers=handlers, force=True)


# ── Config ────────────────────────────────────────────────────────────────────

def load_config(path: str | None = None) -> dict:
    explicit = path or os.getenv("SUPERGRASS_CONFIG")
    cfg_path = explicit or os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yaml")
    if not os.path.exists(cfg_path):
        if explicit:
            raise ConfigurationError(f"config file not found: {cfg_path}")
        return {}
    with open(cfg_path) as f:
        return yaml.safe_load(f) or {}


def _pick(cli, env_name: str | None, yaml_value, default, cast=int):
    """CLI flag > environment > config.yaml > built-in default."""
    if cli is not None:
        return cli
    if env_name and os.getenv(env_name):
        try:
            return cast(os.getenv(env_name))
        except ValueError:
            raise ConfigurationError(f"{env_name}={os.getenv(env_name)!r} is not valid") from None
    if yaml_value is not None:
        return cast(yaml_value)
    return default


def parse_eval_at(text: str | None) -> dict[str, Fraction] | None:
    """'x1=1/2,x2=3' → {'x1': 1/2, 'x2': 3}."""
    if not text:
        return None
    point = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigurationError(f"--eval-at expects var=rational, got {item!r}")
        try:
            point[name.strip()] = Fraction(value.strip())
        except ValueError:
            raise ConfigurationError(f"--eval-at value {value!r} is not rational") from None
    return point


@dataclass(frozen=True)
class RunConfig:
    n: int
    k: BlockDims | None = None
    m: BlockDims | None = None
    trunc: int = 3
    seed: int = 0
    output: str = "text"
    samples: int | None = None
    workers: int = 1
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    algebra_suite: dict = field(default_factory=dict)
    eval_at: dict | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")
        if self.trunc < 1:
            raise ConfigurationError(f"truncation order must be >= 1, got {self.trunc}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.output not in ("json", "text"):
            raise ConfigurationError(f"output must be json or text, got {self.output!r}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        if self.samples is not None and self.samples < 1:
            raise ConfigurationError(f"samples must be >= 1, got {self.samples}")
        if (self.k is None) != (self.m is None):
            raise ConfigurationError("--k and --m must be given together")
        if self.k is not None:
            for name, dims in (("k", self.k), ("m", self.m)):
                if len(dims) != 2 ** self.n:
                    raise ConfigurationError(
                        f"--{name} has {len(dims)} entries, n={self.n} needs {2 ** self.n}")
            self.m.require_nonempty()
            check_shape(self.k, self.m)

    @property
    def chain(self) -> DegreeChain:
        return DegreeChain.for_n(self.n)

    def shape(self) -> tuple[BlockDims, BlockDims]:
        if self.k is None:
            raise ConfigurationError("this command needs --k and --m")
        return self.k, self.m


def build_run_config(args: argparse.Namespace, cfg: dict, needs_shape: bool = True) -> RunConfig:
    engine = cfg.get("engine") or {}
    k = BlockDims.parse(args.k) if getattr(args, "k", None) else None
    m = BlockDims.parse(args.m) if getattr(args, "m", None) else None
    if k is None and m is None and needs_shape and engine.get("k") is not None:
        k, m = BlockDims(tuple(engine["k"])), BlockDims(tuple(engine.get("m") or ()))
        if args.n is not None and len(k) != 2 ** args.n:
            k = m = None
    if args.n is not None:
        n = args.n
    elif k is not None or m is not None:
        n = DegreeChain.for_length(len(k or m)).n
    else:
        raise ConfigurationError("give --n or --k/--m")
    if not needs_shape:
        k = m = None
    return RunConfig(
        n=n, k=k, m=m,
        trunc=_pick(getattr(args, "trunc", None), "SUPERGRASS_TRUNC", engine.get("trunc"), 3),
        seed=_pick(getattr(args, "seed", None), "SUPERGRASS_SEED", engine.get("seed"), 0),
        output=_pick(getattr(args, "output", None), None, engine.get("output"), "text", str),
        samples=getattr(args, "samples", None),
        workers=_pick(getattr(args, "workers", None), "SUPERGRASS_WORKERS",
                      (cfg.get("sweep") or {}).get("workers"), 1),
        sampling=SamplingConfig.from_dict(cfg.get("sampling")),
        algebra_suite=dict(cfg.get("algebra_suite") or {}),
        eval_at=parse_eval_at(getattr(args, "eval_at", None)),
    )


# ── Commands ──────────────────────────────────────────────────────────────────
# Each returns (json payload, text lines, exit code).

def cmd_info(config: RunConfig):
    chain = config.chain
    payload = {"n": chain.n, "q": chain.q, "chain": chain.to_json(),
               "parity": ["odd" if chain.is_odd(i) else "even" for i in range(len(chain))]}
    return payload, formatters.fmt_chain(chain), 0


def cmd_atlas(config: RunConfig, labels: bool = False):
    k, m = config.shape()
    beta = beta_dims(k, m)
    charts = [build_chart(k, m, index, config.trunc) for index in enumerate_charts(k, m)]
    logger.info("atlas of %s: %d charts, %d generators each", shape_str(k, m), len(charts), beta.total)
    payload = {"shape": shape_str(k, m), "chain": config.chain.to_json(), "beta": beta.to_json(),
               "charts": [c.to_json() for c in charts]}
    lines = formatters.fmt_chain(config.chain)
    lines.append(f"{shape_str(k, m)}: β = ({', '.join(map(str, beta))}), "
                 f"{beta[0]} central + {beta.total - beta[0]} graded, {len(charts)} charts")
    for chart in charts:
        lines.append(f"U[{chart.index}]  {' '.join(chart.table.names) or '(no generators)'}")
        if labels:
            lines.extend(formatters.fmt_matrix(chart.label, indent="    "))
    return payload, lines, 0


def cmd_transition(config: RunConfig, source: KIndex, target: KIndex):
    k, m = config.shape()
    src = build_chart(k, m, source.validate(k, m), config.trunc)
    dst = build_chart(k, m, target.validate(k, m), config.trunc)
    try:
        g = transition(dst, src)
    except SingularBody as exc:
        return {"error": str(exc)}, [f"SingularBody: {exc}"], 1
    payload = g.to_json()
    lines = [f"g[{target},{source}] on {shape_str(k, m)}, N={config.trunc}",
             f"  certificate: {g.certificate}"]
    for name in dst.table.names:
        lines.append(f"  {name} ↦ {series_str(g.images[name])}")
    if config.eval_at is not None:
        evaluated = {}
        for name in dst.table.names:
            try:
                evaluated[name] = fraction_str(evaluate(g.images[name], config.eval_at))
            except ZeroBody:
                evaluated[name] = None
        payload["evaluated"] = evaluated
        lines.append("  at " + ", ".join(f"{v}={fraction_str(q)}" for v, q in config.eval_at.items()))
        lines += [f"    ev({name}) = {value}" for name, value in evaluated.items()]
    return payload, lines, 0


def cmd_verify(config: RunConfig, suite: str, mode: str = "all", corrupt: bool = False,
               checks: int | None = None, gl_points: int = 1,
               include: list[tuple[KIndex, KIndex]] | None = None):
    if suite not in SUITES:
        raise ConfigurationError(f"unknown suite {suite!r}; expected one of {SUITES}")
    cfg = config.sampling
    if suite == "algebra":
        alg = config.algebra_suite
        report = verify_algebra_laws(
            checks=checks or int(alg.get("checks", 1000)), seed=config.seed,
            n=int(alg.get("n", config.n)), central=int(alg.get("central", 1)),
            graded=int(alg.get("graded", 2)), trunc=config.trunc, sampling=cfg,
            workers=config.workers)
    else:
        k, m = config.shape()
        if suite == "cocycle":
            report = verify_cocycle(k, m, config.trunc, mode=mode, samples=config.samples,
                                    seed=config.seed, include=include or (),
                                    workers=config.workers, corrupt=corrupt)
        elif suite == "action":
            if config.samples:
                cfg = replace(cfg, samples=config.samples)
            parts = [verify_action_gluing(k, m, config.trunc, seed=config.seed, cfg=cfg,
                                          p_seed=p, workers=config.workers)
                     for p in range(gl_points)]
            report = Report.merge("action", {"shape": shape_str(k, m), "trunc": config.trunc,
                                             "seed": config.seed, "gl_points": gl_points},
                                  parts, tag="p_seed")
        elif suite == "lemma":
            report = verify_chart_lemma(k, m, config.trunc, samples=config.samples or 20,
                                        seed=config.seed, cfg=cfg, workers=config.workers)
        elif suite == "laws":
            report = verify_action_laws(k, m, config.trunc, samples=config.samples or 50,
                                        seed=config.seed, cfg=cfg, workers=config.workers)
        else:
            report = verify_transitivity(k, m, config.trunc, samples=config.samples or 3,
                                         seed=config.seed, cfg=cfg, workers=config.workers)
    return report.to_json(), formatters.fmt_report(report), 0 if report.passed else 1


# ── CLI ───────────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="grading rank (default: from --k length)")
    common.add_argument("--k", help="k⃗ in degree-chain order, e.g. 1,2,1,1")
    common.add_argument("--m", help="m⃗ in degree-chain order, e.g. 2,2,2,2")
    common.add_argument("--trunc", type=int, help="truncation order N (default 3)")
    common.add_argument("--seed", type=int, help="sampling seed (default 0)")
    common.add_argument("--samples", type=int, help="number of sampled cases")
    common.add_argument("--workers", type=int, help="process count for sweeps")
    common.add_argument("--output", choices=("json", "text"))
    common.add_argument("--config", help="alternate config.yaml")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR")

    parser = argparse.ArgumentParser(prog="supergrass", description=__doc__.split("\n")[1],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="print the degree chain")
    atlas = sub.add_parser("atlas", parents=[common], help="list charts and generator tables")
    atlas.add_argument("--labels", action="store_true", help="also print label matrices")
    trans = sub.add_parser("transition", parents=[common], help="symbolic transition map")
    trans.add_argument("--from", dest="source", required=True, help="source chart, e.g. 1/1,2/1/2")
    trans.add_argument("--to", dest="target", required=True, help="target chart")
    trans.add_argument("--eval-at", help="evaluate bodies at var=rat,...")
    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("--mode", choices=("pairs", "triples", "all"), default="all")
    verify.add_argument("--include", action="append", default=[],
                        help="extra cocycle pair FROM:TO (repeatable)")
    verify.add_argument("--checks", type=int, help="checks per law (algebra suite)")
    verify.add_argument("--gl-points", type=int, default=1, help="random GL points (action suite)")
    verify.add_argument("--corrupt", action="store_true",
                        help="perturb every non-trivial transition (negative control)")
    return parser


def _emit(payload, lines, config_output: str) -> None:
    if config_output == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    output = args.output or "text"
    try:
        cfg = load_config(args.config)
        system = cfg.get("system") or {}
        setup_logging(_pick(args.log_level, "SUPERGRASS_LOG_LEVEL", system.get("log_level"),
                            "INFO", str), system.get("log_path"))
        config = build_run_config(args, cfg, needs_shape=args.command != "info")
        output = config.output
        if args.command == "info":
            result = cmd_info(config)
        elif args.command == "atlas":
            result = cmd_atlas(config, labels=args.labels)
        elif args.command == "transition":
            result = cmd_transition(config, KIndex.parse(args.source), KIndex.parse(args.target))
        else:
            include = []
            for item in args.include:
                src, sep, dst = item.partition(":")
                if not sep:
                    raise ConfigurationError(f"--include expects FROM:TO, got {item!r}")
                include.append((KIndex.parse(src), KIndex.parse(dst)))
            result = cmd_verify(config, args.suite, mode=args.mode, corrupt=args.corrupt,
                                checks=args.checks, gl_points=args.gl_points, include=include)
    except USAGE_ERRORS as exc:
        logger.error("%s", exc)
        _emit({"error": f"{type(exc).__name__}: {exc}"}, [f"error: {exc}"], output)
        return 2
    payload, lines, code = result
    _emit(payload, lines, output)
    return code


if __name__ == "__main__":
    sys.exit(main())
