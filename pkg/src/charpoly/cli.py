"""Command-line front end: ``verify``, ``average`` and ``scaling``.

Complex literals are written ``a+bi`` and rationals ``p/q``.  Parameter lists
use ``--params "a-=1/2,3;a+=1+i"``; keys are ``a-``, ``a+``, ``b-``, ``b+``
(beta = 2) or ``numer``, ``denom`` (every beta).  JSON reports carry
``"schema": "rmt-charpoly/1"`` and contain no timestamps, so identical
arguments give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import asymptotics as asy
from . import continuous as cont
from . import discrete as dd
from . import linalg as la
from . import pfaffian_ensembles as pe
from . import suites
from .scalars import format_scalar, parse_scalar

SCHEMA = "rmt-charpoly/1"
PARAM_KEYS = ("a-", "a+", "b-", "b+", "numer", "denom", "z", "e")


class UsageError(ValueError):
    """A precondition on the command line; ``name`` is the offending parameter."""

    def __init__(self, name: str, msg: str):
        super().__init__(f"{name}: {msg}")
        self.name = name


@dataclass
class RunConfig:
    command: str
    beta: int | None = None
    N: list = field(default_factory=list)
    ground: dict | None = None
    params: dict = field(default_factory=dict)
    out: str | None = None
    tol: float = 1e-8
    seed: int = 1
    size: str = "small"
    suite: str = "all"
    family: str = "I"
    plot: str | None = None

    def to_dict(self) -> dict:
        return {"command": self.command, "beta": self.beta, "N": self.N,
                "ground": self.ground, "params": {k: [format_scalar(v) for v in vs]
                                                   for k, vs in sorted(self.params.items())},
                "tol": self.tol, "seed": self.seed, "size": self.size, "suite": self.suite,
                "family": self.family}


# ------------------------------------------------------------ parsing

def parse_n_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise UsageError("N", f"malformed N list {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise UsageError("N", f"N values must be positive integers, got {text!r}")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise UsageError("N", f"N list must be increasing, got {text!r}")
    return vals


def parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for group in text.split(";"):
        if not group.strip():
            continue
        if "=" not in group:
            raise UsageError("params", f"expected key=values, got {group!r}")
        key, vals = (t.strip() for t in group.split("=", 1))
        if key not in PARAM_KEYS:
            raise UsageError("params", f"unknown key {key!r}")
        try:
            out[key] = [parse_scalar(v) for v in vals.split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(key, str(exc)) from None
    return out


def load_ground(path: str | None) -> dict | None:
    if path is None:
        return None
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if "points" not in doc:
        raise UsageError("ground-file", "missing 'points'")
    return doc


def _ground_weights(doc: dict):
    pts = sorted(parse_scalar(str(p)) for p in doc["points"])
    if len(set(pts)) != len(pts):
        raise UsageError("ground-file", "points must be distinct")
    w = {parse_scalar(str(k)): parse_scalar(str(v)) for k, v in doc.get("weights", {}).items()}
    return tuple(pts), {p: w.get(p, Fraction(1)) for p in pts}


# ------------------------------------------------------------ output

def _c(x) -> str:
    if isinstance(x, (complex, float, np.complexfloating, np.floating)):
        z = complex(x)
        return f"{z.real:.15g}{z.imag:+.15g}i"
    return format_scalar(x)


def _emit(doc: dict, out: str | None) -> str:
    text = json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    return text


# ------------------------------------------------------------ commands

def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    names = suites.SUITES if cfg.suite == "all" else (cfg.suite,)
    reports = []
    for name in names:
        try:
            rep = suites.run_suite(name, cfg.seed, cfg.size)
        except dd.SizeGuardError as exc:
            rep = suites.SuiteReport(name, skipped=[f"size cap exceeded: {exc}"])
        reports.append(rep)
    ok = all(r.passed for r in reports)
    doc = {"command": "verify", "suite": cfg.suite, "seed": cfg.seed, "size": cfg.size,
           "passed": ok,
           "suites": [{"suite": r.suite, "passed": r.passed, "n_checks": len(r.checks),
                       "n_failed": sum(not c.passed for c in r.checks), "skipped": r.skipped,
                       "checks": [c.to_dict() for c in r.checks]} for r in reports]}
    return (0 if ok else 1), _emit(doc, cfg.out)


def _lists(cfg: RunConfig):
    p = cfg.params
    if cfg.beta == 2:
        if any(k in p for k in ("a-", "a+", "b-", "b+")):
            return p.get("a-", []), p.get("a+", []), p.get("b-", []), p.get("b+", [])
        return p.get("numer", []), p.get("denom", []), [], []
    for k in ("a-", "a+", "b-", "b+"):
        if k in p:
            raise UsageError(k, "beta = 1, 4 take 'numer' and 'denom'")
    return p.get("numer", []), p.get("denom", [])


def _average_discrete(cfg: RunConfig, N: int) -> dict:
    pts, f = _ground_weights(cfg.ground)
    if cfg.beta == 2:
        am, ap, bm, bp = _lists(cfg)
        ens = dd.PolynomialEnsemble(pts, f, N)
        res = dd.average_beta2(ens, am, ap, bm, bp)
        lhs = dd.brute_beta2(ens, am, ap, bm, bp)
        return {"formula": "determinant", "rhs": res.value, "lhs": lhs, "M": res.M}
    numer, denom = _lists(cfg)
    ens = pe.SkewEnsemble(pts, f, N, cfg.beta)
    if cfg.beta == 4:
        res = pe.average_beta4(ens, denom, numer)
    else:
        res = pe.average_beta1(ens, numer, denom)
    return {"formula": "pfaffian", "rhs": res.value, "lhs": pe.brute_average_pf(ens, numer, denom),
            "inner_pairs": res.K}


def _average_continuous(cfg: RunConfig, N: int) -> dict:
    cx = lambda vs: [complex(v) for v in vs]
    if cfg.beta == 2:
        am, ap, bm, bp = (cx(v) for v in _lists(cfg))
        numer, denom = am + bm, ap + bp
        if len(am) - len(ap) != len(bm) - len(bp):
            if len(numer) == 1 and not denom:
                rhs = complex(cont.monic_poly(cont.GAUSSIAN, N, numer[0]))
                formula = "heine"
            else:
                raise UsageError("params", "|a-|-|a+| must equal |b-|-|b+|")
        else:
            rhs, formula = cont.continuous_average(2, N, am, bm, ap, bp, tol=cfg.tol).value, "determinant"
        n_pts = N
    else:
        numer, denom = (cx(v) for v in _lists(cfg))
        rhs = cont.continuous_average(cfg.beta, N, numer, denom, tol=cfg.tol).value
        formula, n_pts = "pfaffian", (2 * N if cfg.beta == 1 else N)
    lhs = cont.quadrature_average(cfg.beta, n_pts, numer=numer, denom=denom, tol=cfg.tol)
    return {"formula": formula, "rhs": rhs, "lhs": lhs}


def cmd_average(cfg: RunConfig) -> tuple[int, str]:
    if cfg.beta not in (1, 2, 4):
        raise UsageError("beta", "must be 1, 2 or 4")
    if len(cfg.N) != 1:
        raise UsageError("N", "average takes a single N")
    N = cfg.N[0]
    try:
        res = _average_discrete(cfg, N) if cfg.ground is not None else _average_continuous(cfg, N)
    except (la.PreconditionError, dd.RangeError, dd.PoleError, pe.StructureError) as exc:
        raise UsageError("params", str(exc)) from None
    lhs, rhs = res.pop("lhs"), res.pop("rhs")
    exact = cfg.ground is not None
    if exact:
        disc = lhs - rhs
        ok = disc == 0
    else:
        disc = abs(complex(lhs) - complex(rhs)) / max(abs(complex(rhs)), 1e-300)
        ok = disc <= cfg.tol
    doc = {"command": "average", "config": cfg.to_dict(), "lhs": _c(lhs), "rhs": _c(rhs),
           "discrepancy": _c(disc), "match": bool(ok), "exact": exact,
           **{k: v for k, v in res.items()}}
    return (0 if ok else 1), _emit(doc, cfg.out)


def cmd_scaling(cfg: RunConfig) -> tuple[int, str]:
    if cfg.beta not in (1, 2, 4):
        raise UsageError("beta", "must be 1, 2 or 4")
    if cfg.family not in asy.FAMILIES:
        raise UsageError("family", f"must be one of {', '.join(asy.FAMILIES)}")
    N_list = cfg.N or list(asy.DEFAULT_N_LIST)
    zs, es = cfg.params.get("z"), cfg.params.get("e")
    if zs is None and es is None:
        points = list(asy.SAMPLE_POINTS[:1])
    else:
        if zs is None or es is None or len(zs) != len(es):
            raise UsageError("params", "z and e lists must have equal length")
        points = [(complex(a), complex(b)) for a, b in zip(zs, es)]
    rep = asy.scaling_study(cfg.beta, cfg.family, N_list, points)
    text = rep.to_csv()
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8", newline="")
    if cfg.plot:
        lines = ["# N abs_error zeta_index"]
        for i in range(len(points)):
            lines += [f"{r.N} {r.abs_error:.6e} {i}" for r in rep.rows[i * len(N_list):(i + 1) * len(N_list)]]
        Path(cfg.plot).write_text("\n".join(lines) + "\n", encoding="utf-8")
    text += f"# converged: {str(rep.monotone).lower()}\r\n"
    return (0 if rep.monotone else 1), text


COMMANDS = {"verify": cmd_verify, "average": cmd_average, "scaling": cmd_scaling}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="charpoly", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--suite", default="all", choices=("all",) + suites.SUITES)
    ap.add_argument("--beta", type=int, default=2)
    ap.add_argument("--n", default=None, help="N, or a comma separated increasing list for scaling")
    ap.add_argument("--family", default="I")
    ap.add_argument("--ground-file", default=None)
    ap.add_argument("--params", default=None)
    ap.add_argument("--out", default=None)
    ap.add_argument("--plot", default=None, help="whitespace separated N/error columns")
    ap.add_argument("--tol", type=float, default=1e-8)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--size", default="small", choices=("small", "medium"))
    return ap


def config_from_args(ns) -> RunConfig:
    if ns.seed < 0 or ns.seed >= 2 ** 64:
        raise UsageError("seed", "must be an unsigned 64-bit integer")
    N = parse_n_list(ns.n) if ns.n is not None else []
    if ns.command == "average" and not N:
        raise UsageError("N", "average needs --n")
    return RunConfig(ns.command, ns.beta, N, load_ground(ns.ground_file), parse_params(ns.params),
                     ns.out, ns.tol, ns.seed, ns.size, ns.suite, ns.family, ns.plot)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        code, text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"charpoly: error: precondition '{exc.name}' violated: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
