"""Command-line entry point.

Examples:
  repboost gen-domain --size 64 --margin 0.1 --seed 7 --out domain.json
  repboost rboost-star --domain domain.json --mode exact --eps 0.0625 --out runs/a
  repboost rmetaboost --domain domain.json --mode exact --trials 20 --out runs/b \\
      --meta-threshold-scale 1e-5
  repboost threshold-test --z 0.1 --rho 0.5 --delta 0.05 --mean 0.05 --trials 100
  repboost verify --suite threshold --suite rejection --out runs/verify

Experiment settings come from three layers: built-in defaults, then a flat
JSON file given with --config, then command-line flags (highest).

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import __version__
from .config import BoostConfig
from .domains import load_any, margin_domain, save_domain
from .errors import ConfigurationError, RepboostError
from .harness import MODES, run_trials, summary_csv, threshold_trials, verify, SUITES
from .kernels import BACKEND
from .rthreshold import ThresholdParams, threshold_sample_size

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SCALE_KEYS = ("budget_scale", "weak_scale", "reject_scale", "threshold_scale",
              "meta_reject_scale", "meta_threshold_scale")


@dataclass
class ExperimentConfig:
    algorithm: str = "rmetaboost"
    rho: float = 0.5
    eps: float = 0.1
    gamma: float = 0.1
    eps0: float = 1 / 16
    mode: str = "exact"
    budget_scale: float = 1.0
    weak_scale: float = 1.0
    reject_scale: float = 1.0
    threshold_scale: float = 1.0
    meta_reject_scale: float = 1.0
    meta_threshold_scale: float = 1.0
    iteration_constant: float = 16.0
    grid_size: int = 32
    trials: int = 1
    domain: str | None = None
    seed: int = 0
    out: str | None = None

    def boost_config(self) -> BoostConfig:
        keys = {f.name for f in fields(BoostConfig)}
        return BoostConfig(**{k: v for k, v in asdict(self).items() if k in keys})

    def validate(self):
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}")
        if self.trials < 1:
            raise ConfigurationError("trials must be at least 1")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")
        if not self.domain:
            raise ConfigurationError("a domain file is required (--domain)")
        if not Path(self.domain).is_file():
            raise ConfigurationError(f"domain file not found: {self.domain}")
        self.boost_config()

    def digest(self) -> str:
        """Hash of everything that determines the results (not the output path)."""
        d = asdict(self)
        d.pop("out")
        d["domain_sha256"] = hashlib.sha256(Path(self.domain).read_bytes()).hexdigest()
        d.pop("domain")
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()


def load_config_file(path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"cannot read config {path}: {e}") from None
    if not isinstance(doc, dict) or any(isinstance(v, (dict, list)) for v in doc.values()):
        raise ConfigurationError("config file must be a flat JSON object")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise ConfigurationError(f"unknown config keys: {unknown}")
    return doc


def resolve_config(args, algorithm: str) -> ExperimentConfig:
    values = {"algorithm": algorithm}
    if args.config:
        values.update(load_config_file(args.config))
    for f in fields(ExperimentConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    values["algorithm"] = algorithm
    cfg = ExperimentConfig(**values)
    cfg.validate()
    return cfg


class Manifest:
    """``manifest.json`` written first as incomplete and finalized last."""

    def __init__(self, out: Path, command: str, seed: int, config: dict, config_hash: str):
        self.path = out / "manifest.json"
        self.doc = {"tool": "repboost", "version": __version__, "backend": BACKEND,
                    "command": command, "seed": seed, "config": config,
                    "config_hash": config_hash, "status": "incomplete", "files": []}
        self._write()

    def _write(self):
        self.path.write_text(json.dumps(self.doc, indent=1, sort_keys=True) + "\n")

    def add(self, name):
        self.doc["files"].append(str(name))

    def finish(self, **extra):
        self.doc.update(extra, status="complete")
        self._write()


def run_experiment(cfg: ExperimentConfig, jobs=1, log=print) -> int:
    domain, dist = load_any(cfg.domain)
    bcfg = cfg.boost_config()
    out = Path(cfg.out) if cfg.out else None
    manifest = None
    if out:
        (out / "reports").mkdir(parents=True, exist_ok=True)
        manifest = Manifest(out, cfg.algorithm, cfg.seed, asdict(cfg), cfg.digest())
    results = run_trials(cfg.algorithm, cfg.mode, bcfg, domain, dist, cfg.seed, cfg.trials, jobs)
    text = summary_csv(results)
    if out:
        for r in results:
            name = f"reports/trial_{r.index:04d}.json"
            rep = r.outcome.report
            doc = rep.to_dict() if rep is not None else {
                "failed": True, "error": r.outcome.detail, "trial": r.index}
            (out / name).write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
            manifest.add(name)
        (out / "summary.csv").write_text(text)
        manifest.add("summary.csv")
        manifest.finish(trials=len(results), failed=sum(r.outcome.failed for r in results))
    else:
        sys.stdout.write(text)
    failed = sum(r.outcome.failed for r in results)
    log(f"{cfg.algorithm}: {len(results)} trials, {failed} failed", file=sys.stderr)
    return EXIT_OK


# ----------------------------------------------------------------- commands

def cmd_boost(args, algorithm):
    cfg = resolve_config(args, algorithm)
    return run_experiment(cfg, args.jobs)


def cmd_threshold(args):
    params = ThresholdParams(args.z, args.rho, args.delta)
    if not 0 <= args.mean <= 1:
        raise ConfigurationError("--mean must be in [0, 1]")
    if args.m is not None and args.m < 1:
        raise ConfigurationError("--m must be positive")
    # an explicit --m overrides the size bound instead of being checked against it
    m = args.m or threshold_sample_size(params, args.budget_scale)
    rows = threshold_trials(args.mean, args.z, args.rho, args.delta, m, args.trials,
                            args.seed, args.jobs, enforce=False)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "b", "phi_bar", "z0"])
    for i, (b, mean, z0) in enumerate(rows):
        w.writerow([i, b, repr(mean), repr(z0)])
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        config = {"z": args.z, "rho": args.rho, "delta": args.delta, "mean": args.mean,
                  "trials": args.trials, "m": m, "seed": args.seed}
        digest = hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()
        manifest = Manifest(out, "threshold-test", args.seed, config, digest)
        (out / "summary.csv").write_text(buf.getvalue())
        manifest.add("summary.csv")
        manifest.finish()
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(args):
    def progress(v):
        status = "PASS" if v["passed"] else "FAIL"
        print(f"[{status}] criterion {v['criterion']}: {v['name']} "
              f"(measured {v['measured']}, threshold {v['threshold']}, {v['runtime_s']}s)",
              file=sys.stderr)

    names = args.suite or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigurationError(f"unknown suites {unknown}; choose from {sorted(SUITES)}")
    out = Path(args.out) if args.out else None
    manifest = None
    if out:
        out.mkdir(parents=True, exist_ok=True)
        config = {"suites": names, "seed": args.seed}
        digest = hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()
        manifest = Manifest(out, "verify", args.seed, config, digest)
    doc = verify(names, args.seed, args.jobs, progress)
    text = json.dumps(doc, indent=1, sort_keys=True, default=str) + "\n"
    if out:
        (out / "verdict.json").write_text(text)
        manifest.add("verdict.json")
        for name, verdicts in doc["suites"].items():
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["criterion", "name", "passed", "measured", "threshold", "runtime_s"])
            for v in verdicts:
                w.writerow([v["criterion"], v["name"], int(v["passed"]),
                            json.dumps(v["measured"], sort_keys=True), v["threshold"],
                            v["runtime_s"]])
            (out / f"{name}.csv").write_text(buf.getvalue())
            manifest.add(f"{name}.csv")
        manifest.finish(passed=doc["passed"])
    else:
        sys.stdout.write(text)
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def cmd_gen_domain(args):
    domain, dist, _ = margin_domain(args.size, args.margin, args.dim, args.seed,
                                    args.grid_size, args.probs)
    if args.out:
        save_domain(args.out, domain, dist)
    else:
        from .domains import domain_to_json
        sys.stdout.write(json.dumps(domain_to_json(domain, dist)) + "\n")
    return EXIT_OK


# ------------------------------------------------------------------ parser

def _add_boost_args(p):
    p.add_argument("--config", help="flat JSON file of experiment settings")
    p.add_argument("--domain", help="domain JSON ({points, probs, labels}) or dataset CSV")
    p.add_argument("--mode", choices=MODES, default=None,
                   help="exact: oracle learner and exact-density termination; "
                        "sampled: full sampled pipeline (default: exact)")
    p.add_argument("--rho", type=float, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--eps0", type=float, default=None, help="inner target error (default 1/16)")
    for key in SCALE_KEYS:
        p.add_argument("--" + key.replace("_", "-"), dest=key, type=float, default=None)
    p.add_argument("--iteration-constant", dest="iteration_constant", type=float, default=None,
                   help="round cap constant C0 in ceil(C0/(eps gamma^2)) (default 16)")
    p.add_argument("--grid-size", dest="grid_size", type=int, default=None,
                   help="stump thresholds per feature (default 32)")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="root seed (default 0)")
    p.add_argument("--out", help="output directory (default: summary CSV to stdout)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for trials")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="repboost", description="Replicable boosting experiments.",
        formatter_class=argparse.RawDescriptionHelpFormatter, epilog=__doc__.split("\n\n")[1])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold-test", help="Monte Carlo runs of the threshold check")
    p.add_argument("--z", type=float, default=0.1)
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--mean", type=float, default=0.05, help="true E[phi] of the Bernoulli source")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--m", type=int, default=None, help="sample size (default: from the bound)")
    p.add_argument("--budget-scale", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_threshold)

    for name in ("rboost-star", "rmetaboost"):
        p = sub.add_parser(name, help=f"run {name} trials on a domain")
        _add_boost_args(p)
        p.set_defaults(func=lambda a, n=name: cmd_boost(a, n))

    p = sub.add_parser("verify", help="run acceptance suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="suite to run (repeatable; default: all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen-domain", help="write a synthetic margin domain")
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--margin", type=float, default=0.1)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-size", dest="grid_size", type=int, default=32)
    p.add_argument("--probs", choices=("uniform", "random"), default="uniform")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_domain)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RepboostError, ValueError, OSError) as e:
        print(f"repboost: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
