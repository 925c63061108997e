"""Command line front end: construct, search, solve, verify, report, selftest."""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .numberfield.cubic import DEFAULT_PRECISION

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_PARAMS = 2
EXIT_BOUND = 3
EXIT_INCONCLUSIVE = 4
EXIT_INTERNAL = 5

DEFAULT_Q_BOUND = 10**6
DEFAULT_EFFORT = 200_000


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    n: int | None = None
    s: int | None = None
    a: int | None = None
    a_tilde: int | None = None
    q_bound: int | None = None
    effort: int | None = None
    workers: int = 1
    augment: int = 0
    precision: int = DEFAULT_PRECISION
    inputs: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            if isinstance(v, int) and not isinstance(v, bool):
                v = str(v)
            out[k] = v
        return out

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        kw = {}
        for k, v in data.items():
            if k in ("command", "inputs"):
                kw[k] = v
            else:
                kw[k] = None if v is None else int(v)
        return cls(**kw)

    def digest(self) -> str:
        # output paths and worker counts do not affect results, so they stay out
        data = self.to_json()
        data.pop("workers")
        blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise CliError(EXIT_PARAMS, "missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _envelope(cfg: RunConfig, payload: dict) -> dict:
    return {"config": cfg.to_json(), "config_hash": cfg.digest(), **payload}


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas, e.g. ``load_schema("prime-pairs")``."""
    return json.loads(resources.files("cubicdiv").joinpath("schemas", f"{name}.schema.json").read_text())


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_construct(cfg: RunConfig) -> tuple[dict, int]:
    from .uchida import alpha_data, beta_ideal, build_instance, decompose_alpha, ramification_report

    _require(cfg, "d", "n", "s", "a")
    effort = cfg.effort or DEFAULT_EFFORT
    inst = build_instance(cfg.d, cfg.n, cfg.s, cfg.a, effort=effort)
    report = ramification_report(inst)
    data = alpha_data(inst)
    witness = decompose_alpha(inst, data)
    out = {
        "schema": "instance",
        "schema_version": 1,
        "instance": inst.to_json(),
        "branch": "3|d" if cfg.d % 3 == 0 else "3∤d",
        "ramification": report.to_json(),
        "alpha": data.to_json(),
        "nth_power_witness": witness.to_json(),
    }
    try:
        out["beta"] = beta_ideal(inst, data).to_json()
    except Exception as exc:  # maximal order out of reach for this m
        out["beta"] = {"status": "unavailable", "reason": str(exc)}
    return _envelope(cfg, out), EXIT_OK


def cmd_search(cfg: RunConfig, resume: str | None = None) -> tuple[dict, int]:
    from .primesearch import build_base, search_pairs, verify_certificate

    _require(cfg, "a_tilde", "n", "s", "d")
    q_bound = cfg.q_bound or DEFAULT_Q_BOUND
    base = build_base(cfg.a_tilde, cfg.n, cfg.s)
    res = search_pairs(base, cfg.d, q_bound, workers=cfg.workers, resume=resume)
    out = res.to_json()
    problems = {}
    for t, cert in sorted(res.certificates.items()):
        bad = verify_certificate(cert, base, cfg.d)
        if bad:
            problems["%d,%d,%d" % t] = bad
    out["reverification"] = {"ok": not problems, "problems": problems}
    if problems:
        return _envelope(cfg, out), EXIT_INTERNAL
    return _envelope(cfg, out), EXIT_BOUND if res.missing else EXIT_OK


def cmd_solve(cfg: RunConfig) -> tuple[dict, int]:
    from .primesearch import augment_ramification, base_from_json, solve_congruences

    if len(cfg.inputs) != 1:
        raise CliError(EXIT_PARAMS, "solve takes exactly one search output file")
    data = json.loads(Path(cfg.inputs[0]).read_text())
    if data.get("schema") != "prime-pairs":
        raise CliError(EXIT_PARAMS, f"{cfg.inputs[0]} is not a prime-pairs file")
    base = base_from_json(data["base"])
    d = int(data["d"])
    sol = solve_congruences(data["certificates"], base, d)
    if cfg.augment:
        sol = augment_ramification(sol, cfg.augment)
    out = sol.to_json()
    out["certificate_file_hash"] = data.get("config_hash")
    return _envelope(cfg, out), EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    from .classgroup import CERTIFIED, SUPPORTED, class_element_order, genus_factor_report
    from .uchida import build_instance, validate_parameters

    _require(cfg, "d", "n", "s", "a")
    if cfg.n == 1:
        validate_parameters(cfg.d, cfg.n, cfg.s, cfg.a)
        out = {
            "schema": "divisibility-certificate",
            "schema_version": 1,
            "params": {"d": str(cfg.d), "n": "1", "s": str(cfg.s), "a": str(cfg.a)},
            "n": "1",
            "claim": "1 | h(K)",
            "verdict": CERTIFIED,
            "method": "vacuous",
            "ideal": None,
            "generator_of_nth_power": None,
            "unit": None,
            "tests": {},
            "kf_statement": {"claim": "1 | h(KF)", "status": "vacuous"},
            "genus": None,
        }
        return _envelope(cfg, out), EXIT_OK
    inst = build_instance(cfg.d, cfg.n, cfg.s, cfg.a, effort=cfg.effort or DEFAULT_EFFORT)
    cert = class_element_order(inst, limit=cfg.effort or 2_000_000)
    try:
        cert.genus = genus_factor_report(inst).to_json()
    except ValueError as exc:
        cert.genus = {"status": "withheld", "reason": str(exc)}
    code = {CERTIFIED: EXIT_OK, SUPPORTED: EXIT_INCONCLUSIVE}.get(cert.verdict, EXIT_REFUTED)
    return _envelope(cfg, cert.to_json()), code


REPORT_COLUMNS = ["file", "kind", "params", "claim", "verdict", "q1", "q2", "config_hash"]


def report_rows(name: str, data: dict) -> list[list[str]]:
    kind = data.get("schema", "unknown")
    h = data.get("config_hash", "")
    if kind == "prime-pairs":
        rows = []
        params = f"a~={data['base']['a_tilde']} n={data['base']['n']} s={data['base']['s']} d={data['d']}"
        for c in data["certificates"]:
            q2 = c["q2"]["q"] if c["q2"] is not None else "-"
            claim = f"(l,i,j)=({c['l']},{c['i']},{c['j']})"
            rows.append([name, kind, params, claim, "found", c["q1"]["q"], q2, h])
        for t in data["missing"]:
            rows.append([name, kind, params, f"(l,i,j)=({t['l']},{t['i']},{t['j']})", "missing", "-", "-", h])
        return rows
    if kind == "divisibility-certificate":
        p = data["params"]
        params = f"d={p['d']} n={p['n']} s={p['s']} a={p['a']}"
        return [[name, kind, params, data["claim"], data["verdict"], "-", "-", h]]
    if kind == "congruence-solution":
        params = f"a~={data['a_tilde']} n={data['n']} s={data['s']} d={data['d']}"
        return [[name, kind, params, f"a={data['a']}", "solved", "-", "-", h]]
    if kind == "instance":
        p = data["instance"]["params"]
        params = f"d={p['d']} n={p['n']} s={p['s']} a={p['a']}"
        return [[name, kind, params, f"m={data['instance']['m']}", "constructed", "-", "-", h]]
    return [[name, kind, "-", "-", "-", "-", "-", h]]


def cmd_report(cfg: RunConfig) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for name in cfg.inputs:
        data = json.loads(Path(name).read_text())
        for row in report_rows(Path(name).name, data):
            w.writerow(row)
    return buf.getvalue()


def cmd_selftest(cfg: RunConfig) -> tuple[dict, int]:
    from .classgroup import class_group_small
    from .numberfield import CubicField
    from .poly import Poly
    from .uchida import build_instance, decompose_alpha

    checks = {}
    K = CubicField(Poly([-1, -1, 0, 1]))
    checks["h(x^3-x-1)=1"] = class_group_small(K).h == 1
    inst = build_instance(-7, 3, 1, 1)
    checks["m(-7,3,1,1)=-62505"] = inst.m == -62505
    checks["alpha valuations divisible by n"] = decompose_alpha(inst).all_divisible()
    ok = all(checks.values())
    return {"schema": "selftest", "checks": checks, "ok": ok}, EXIT_OK if ok else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubicdiv", description="Cubic fields with prescribed class number divisors.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(p, *names):
        for name in names:
            flag = "--" + name.replace("_", "-")
            short = {"d": "-d", "n": "-n", "s": "-s", "a": "-a"}.get(name)
            flags = [flag] + ([short] if short else [])
            p.add_argument(*flags, dest=name, type=int, default=None)

    def common(p):
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--config", default=None, help="read a RunConfig JSON instead of flags")

    p = sub.add_parser("construct", help="build an instance and its ramification and alpha data")
    add(p, "d", "n", "s", "a", "effort")
    common(p)
    p = sub.add_parser("search", help="find prime pairs for every (l, i, j)")
    add(p, "a_tilde", "n", "s", "d", "q_bound")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--resume", default=None, help="checkpoint file for resumable scans")
    common(p)
    p = sub.add_parser("solve", help="solve the congruences for a from a search file")
    p.add_argument("inputs", nargs=1)
    p.add_argument("--augment", type=int, default=0, help="extra totally ramified primes to force")
    common(p)
    p = sub.add_parser("verify", help="certify n | h(K) through the order of [B]")
    add(p, "d", "n", "s", "a", "effort")
    common(p)
    p = sub.add_parser("report", help="summarize output files as TSV")
    p.add_argument("inputs", nargs="+")
    common(p)
    p = sub.add_parser("selftest", help="quick consistency checks")
    common(p)
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config:
        cfg = RunConfig.from_json(json.loads(Path(args.config).read_text()))
        if cfg.command != args.command:
            raise CliError(EXIT_PARAMS, f"config is for '{cfg.command}', not '{args.command}'")
        return cfg
    kw = {"command": args.command}
    for name in ("d", "n", "s", "a", "a_tilde", "q_bound", "effort", "workers", "augment", "inputs"):
        if hasattr(args, name):
            kw[name] = getattr(args, name)
    return RunConfig(**kw)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    from .primesearch import BoundExhausted
    from .uchida import HardError, ParameterError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAMS if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        if cfg.command == "report":
            _emit(cmd_report(cfg), args.out)
            return EXIT_OK
        if cfg.command == "construct":
            out, code = cmd_construct(cfg)
        elif cfg.command == "search":
            out, code = cmd_search(cfg, resume=args.resume)
        elif cfg.command == "solve":
            out, code = cmd_solve(cfg)
        elif cfg.command == "verify":
            out, code = cmd_verify(cfg)
        else:
            out, code = cmd_selftest(cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except BoundExhausted as exc:
        print(f"bound exhausted: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (HardError, AssertionError) as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(dumps(out), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
