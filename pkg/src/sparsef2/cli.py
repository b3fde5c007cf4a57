"""Command-line front end.

Commands: gen-graph, reduce <kind>, solve, verify <check>. Exit codes:
0 feasible/verified, 1 infeasible/refuted, 2 rejected input, 3 resource or
generation limit. Identical configuration and seed produce byte-identical
output files; '#' provenance headers carry the input hash and settings.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from . import codes, formats, graphs, solvers
from .errors import GenerationError, InputError, ResourceError, SparseF2Error
from .f2 import BitMat, BitVec, mat_vec_mul
from .reductions import (
    EvenSetConfig,
    clique_to_vectorsum,
    evenset_to_fooling_points,
    junta_hardness_instance,
    mdc_tensor,
    mdc_to_learning,
    mdc_walk_amplify,
    vectorsum_to_evenset,
    viola_shift,
)
from .reductions.amplify import amplify_pointvalues

REDUCE_KINDS = (
    "clique2vs",
    "vs2es",
    "amplify",
    "junta",
    "viola",
    "evenset-fool",
    "mdc-walk",
    "mdc-learn",
    "mdc-tensor",
)
VERIFY_CHECKS = ("balance", "bch", "density", "bias", "parity", "junta", "poly", "roundtrip")
SOLVE_ALGS = ("exhaustive", "mitm", "bfs", "evenset-min")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


@dataclass
class RunConfig:
    command: str
    subcommand: str | None = None
    in_path: str | None = None
    out_path: str | None = None
    kind: str | None = None
    k: int | None = None
    eps: float | None = None
    delta: float | None = None
    deg: int | None = None
    walk_len: int | None = None
    alg: str | None = None
    seed: int = 0
    cap: int | None = None
    overrides: dict[str, str] = field(default_factory=dict)
    format: str = "text"


class Report:
    """Ordered key-value result lines, printable as text or machine lines."""

    def __init__(self):
        self.rows: list[tuple[str, object]] = []

    def add(self, key: str, value) -> "Report":
        self.rows.append((key, value))
        return self

    def render(self, fmt: str) -> str:
        if fmt == "lines":
            return "\n".join(f"{k}={v}" for k, v in self.rows)
        return "\n".join(f"{k}: {v}" for k, v in self.rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparsef2", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="in_path", metavar="PATH")
    common.add_argument("--out", dest="out_path", metavar="PATH")
    common.add_argument("--kind", choices=formats.KINDS)
    common.add_argument("--k", type=int)
    common.add_argument("--eps", type=float)
    common.add_argument("--delta", type=float)
    common.add_argument("--deg", type=int)
    common.add_argument("--walk-len", dest="walk_len", type=int)
    common.add_argument("--alg", choices=SOLVE_ALGS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int)
    common.add_argument("--override", action="append", default=[], metavar="KEY=VAL")
    common.add_argument("--format", choices=("text", "lines"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gen-graph", parents=[common])
    reduce_p = sub.add_parser("reduce", parents=[common])
    reduce_p.add_argument("subcommand", choices=REDUCE_KINDS)
    sub.add_parser("solve", parents=[common])
    verify_p = sub.add_parser("verify", parents=[common])
    verify_p.add_argument("subcommand", choices=VERIFY_CHECKS)
    return parser


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    overrides = {}
    for item in ns.override:
        if "=" not in item:
            raise InputError(f"override {item!r} is not KEY=VAL")
        key, val = item.split("=", 1)
        overrides[key.strip()] = val.strip()
    return RunConfig(
        command=ns.command,
        subcommand=getattr(ns, "subcommand", None),
        in_path=ns.in_path,
        out_path=ns.out_path,
        kind=ns.kind,
        k=ns.k,
        eps=ns.eps,
        delta=ns.delta,
        deg=ns.deg,
        walk_len=ns.walk_len,
        alg=ns.alg,
        seed=ns.seed,
        cap=ns.cap,
        overrides=overrides,
        format=ns.format,
    )


def _require(value, flag: str):
    if value is None:
        raise InputError(f"missing required flag {flag}")
    return value


def _override_int(cfg: RunConfig, key: str, default: int | None = None) -> int | None:
    if key not in cfg.overrides:
        return default
    try:
        return int(cfg.overrides[key])
    except ValueError:
        raise InputError(f"override {key} must be an integer") from None


def _override_float(cfg: RunConfig, key: str, default: float | None = None) -> float | None:
    if key not in cfg.overrides:
        return default
    try:
        return float(cfg.overrides[key])
    except ValueError:
        raise InputError(f"override {key} must be a number") from None


def _load(cfg: RunConfig, kind: str):
    path = _require(cfg.in_path, "--in")
    return formats.parse_instance(path, kind)


def _provenance(cfg: RunConfig, extra: str = "") -> list[str]:
    parts = [f"sparsef2 {cfg.command}" + (f" {cfg.subcommand}" if cfg.subcommand else "")]
    if cfg.in_path:
        digest = hashlib.sha256(Path(cfg.in_path).read_bytes()).hexdigest()
        parts.append(f"input-sha256={digest}")
    settings = [f"seed={cfg.seed}"]
    for name in ("k", "eps", "delta", "deg", "walk_len", "cap"):
        v = getattr(cfg, name)
        if v is not None:
            settings.append(f"{name}={v}")
    for key in sorted(cfg.overrides):
        settings.append(f"{key}={cfg.overrides[key]}")
    parts.append(" ".join(settings))
    if extra:
        parts.append(extra)
    return parts


def _emit(cfg: RunConfig, obj, kind: str, extra: str = "") -> None:
    path = _require(cfg.out_path, "--out")
    formats.write_instance(path, obj, kind, _provenance(cfg, extra))


def _gen_graph(cfg: RunConfig, report: Report) -> int:
    n = _override_int(cfg, "n")
    if n is None:
        raise InputError("gen-graph needs --override n=<count>")
    p = _override_float(cfg, "p", 0.5)
    if cfg.k is not None:
        g, witness = graphs.planted_clique(n, cfg.k, p, cfg.seed)
        extra = "witness " + " ".join(str(v) for v in sorted(witness))
    else:
        g, extra = graphs.random_graph(n, p, cfg.seed), ""
    _emit(cfg, g, "graph", extra)
    report.add("vertices", g.n).add("edges", g.num_edges)
    return EXIT_OK


def _evenset_config(cfg: RunConfig) -> EvenSetConfig:
    return EvenSetConfig(
        eps=cfg.eps if cfg.eps is not None else 0.1,
        c=_override_float(cfg, "c", 1.0),
        seed=cfg.seed,
        sketch_delta=_override_int(cfg, "sketch_delta"),
        sketch_rows=_override_int(cfg, "sketch_rows"),
        mixer_length=_override_int(cfg, "K", _override_int(cfg, "mixer_length")),
        copies=_override_int(cfg, "r", _override_int(cfg, "copies")),
    )


def _reduce(cfg: RunConfig, report: Report) -> int:
    sub = cfg.subcommand
    if sub == "clique2vs":
        g = _load(cfg, "graph")
        inst, layout = clique_to_vectorsum(g, _require(cfg.k, "--k"))
        _emit(cfg, inst, "vectorsum", f"layout pattern_bits={layout.pattern_bits}")
        report.add("rows", inst.m.rows).add("cols", inst.m.cols).add("sparsity", inst.k)
    elif sub == "vs2es":
        inst = _load(cfg, "vectorsum")
        emitted, layout = vectorsum_to_evenset(inst, _evenset_config(cfg))
        _emit(cfg, emitted, "evenset", f"layout K={layout.mixer_len} r={layout.copies}")
        report.add("vars", layout.num_vars).add("equations", emitted.m.rows).add("sparsity", emitted.k)
    elif sub == "amplify":
        pv = _load(cfg, "pointvalues")
        out = amplify_pointvalues(pv, _require(cfg.eps, "--eps"), cfg.seed)
        _emit(cfg, out, "pointvalues")
        report.add("pairs", len(out))
    elif sub == "junta":
        pv = _load(cfg, "pointvalues")
        out = junta_hardness_instance(pv, _require(cfg.delta, "--delta"), _require(cfg.k, "--k"), cfg.seed)
        _emit(cfg, out, "pointvalues")
        report.add("pairs", len(out)).add("eps", out.eps)
    elif sub == "viola":
        points = _load(cfg, "points")
        out = viola_shift(
            points,
            _require(cfg.deg, "--deg"),
            cap=cfg.cap if cfg.cap is not None else 2_000_000,
            sample_count=_override_int(cfg, "samples"),
            seed=cfg.seed,
        )
        _emit(cfg, out, "points")
        report.add("points", len(out))
    elif sub == "evenset-fool":
        inst = _load(cfg, "evenset")
        out = evenset_to_fooling_points(
            inst,
            _require(cfg.eps, "--eps"),
            _require(cfg.deg, "--deg"),
            cfg.seed,
            cap=cfg.cap if cfg.cap is not None else 2_000_000,
            sample_count=_override_int(cfg, "samples"),
        )
        _emit(cfg, out, "points")
        report.add("points", len(out))
    elif sub == "mdc-tensor":
        points = _load(cfg, "points")
        out = mdc_tensor(BitMat.from_rows(points), _override_int(cfg, "power", 2))
        _emit(cfg, [out.row(i) for i in range(out.rows)], "points")
        report.add("rows", out.rows).add("cols", out.cols)
    elif sub == "mdc-walk":
        points = _load(cfg, "points")
        graph_path = cfg.overrides.get("graph")
        if graph_path is None:
            raise InputError("mdc-walk needs --override graph=<graph file>")
        g = formats.parse_instance(graph_path, "graph")
        t = _require(cfg.walk_len, "--walk-len")
        samples = _override_int(cfg, "samples")
        walks = graphs.sample_walks(g, t, samples, cfg.seed) if samples else None
        out = mdc_walk_amplify(
            BitMat.from_rows(points), g, t,
            cap=cfg.cap if cfg.cap is not None else 2_000_000, walks=walks,
        )
        _emit(cfg, [out.row(i) for i in range(out.rows)], "points")
        report.add("rows", out.rows)
    elif sub == "mdc-learn":
        points = _load(cfg, "points")
        out = mdc_to_learning(
            BitMat.from_rows(points),
            _require(cfg.deg, "--deg"),
            cap=cfg.cap if cfg.cap is not None else 2_000_000,
        )
        _emit(cfg, out, "pointvalues")
        report.add("pairs", len(out))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown reduction {sub!r}")
    return EXIT_OK


def _solve(cfg: RunConfig, report: Report) -> int:
    kind = cfg.kind or ("evenset" if cfg.alg == "evenset-min" else "vectorsum")
    alg = cfg.alg or ("evenset-min" if kind == "evenset" else "exhaustive")
    if kind == "evenset":
        if alg != "evenset-min":
            raise InputError(f"algorithm {alg!r} does not apply to evenset instances")
        inst = _load(cfg, "evenset")
        rep = solvers.evenset_min_weight(inst, sparse_cap=cfg.cap)
    else:
        inst = _load(cfg, "vectorsum")
        if alg == "exhaustive":
            rep = solvers.solve_exhaustive(inst, **({"enum_cap": cfg.cap} if cfg.cap else {}))
        elif alg == "mitm":
            rep = solvers.solve_mitm(inst, **({"memory_cap": cfg.cap} if cfg.cap else {}))
        elif alg == "bfs":
            rep = solvers.solve_bfs(inst, **({"state_cap": cfg.cap} if cfg.cap else {}))
        else:
            raise InputError(f"algorithm {alg!r} does not apply to vectorsum instances")
    report.add("algorithm", rep.algorithm).add("feasible", int(rep.feasible))
    if rep.weight is not None:
        report.add("weight", rep.weight)
    if rep.witness is not None:
        report.add("witness", rep.witness.to01())
    report.add("work", rep.work)
    return EXIT_OK if rep.feasible else EXIT_REFUTED


def _verify(cfg: RunConfig, report: Report) -> int:
    sub = cfg.subcommand
    if sub == "balance":
        dim = _require(cfg.k, "--k")
        eps = _require(cfg.eps, "--eps")
        code = codes.balanced_code(dim, eps, cfg.seed, length=_override_int(cfg, "length"))
        weights = sorted({cw.weight() for cw in code.codewords() if not cw.is_zero()})
        ok = (0.5 - eps) * code.length <= weights[0] and weights[-1] <= (0.5 + eps) * code.length
        report.add("length", code.length).add("min_weight", weights[0]).add("max_weight", weights[-1])
        report.add("verified", int(ok))
        return EXIT_OK if ok else EXIT_REFUTED
    if sub == "bch":
        n = _override_int(cfg, "n")
        if n is None:
            raise InputError("verify bch needs --override n=<length>")
        delta = int(_require(cfg.delta, "--delta"))
        r = codes.bch_parity_check(n, delta)
        states = sum(math.comb(n, w) for w in range(1, delta))
        if cfg.cap is not None and states > cfg.cap:
            raise ResourceError(f"{states} low-weight vectors exceed cap {cfg.cap}")
        ok = True
        for w in range(1, delta):
            for sub_idx in combinations(range(n), w):
                if mat_vec_mul(r, BitVec.from_support(n, sub_idx)).is_zero():
                    ok = False
        report.add("rows", r.rows).add("cols", r.cols).add("verified", int(ok))
        return EXIT_OK if ok else EXIT_REFUTED
    if sub == "density":
        code = _load(cfg, "code")
        ok, witness = codes.product_density_check(
            code, **({"cap": cfg.cap} if cfg.cap is not None else {})
        )
        report.add("distance", code.dist_cert.d).add("bound", math.ceil(1.5 * code.dist_cert.d**2))
        if witness is not None:
            report.add("witness_weight", sum(r.bit_count() for r in witness.row_bits))
        report.add("verified", int(ok))
        return EXIT_OK if ok else EXIT_REFUTED
    if sub == "bias":
        points = _load(cfg, "points")
        bias = codes.distribution_bias(points, _require(cfg.k, "--k"))
        report.add("bias", f"{bias:.6f}")
        if cfg.eps is not None:
            ok = bias <= cfg.eps
            report.add("verified", int(ok))
            return EXIT_OK if ok else EXIT_REFUTED
        return EXIT_OK
    if sub == "parity":
        pv = _load(cfg, "pointvalues")
        form, frac = solvers.best_parity_agreement(pv, _require(cfg.k, "--k"))
        report.add("agreement", f"{float(frac):.6f}").add("support", ",".join(map(str, form.support())))
        if cfg.eps is not None:
            ok = frac == 1 or frac <= Fraction(1, 2) + Fraction(cfg.eps).limit_denominator(10**9)
            report.add("verified", int(ok))
            return EXIT_OK if ok else EXIT_REFUTED
        return EXIT_OK
    if sub == "junta":
        pv = _load(cfg, "pointvalues")
        frac = solvers.best_junta_agreement(pv, _require(cfg.k, "--k"))
        report.add("agreement", f"{float(frac):.6f}")
        if cfg.delta is not None:
            ok = frac == 1 or frac <= Fraction(1, 2) + Fraction(cfg.delta).limit_denominator(10**9)
            report.add("verified", int(ok))
            return EXIT_OK if ok else EXIT_REFUTED
        return EXIT_OK
    if sub == "poly":
        points = _load(cfg, "points")
        poly, adv = solvers.poly_agreement_bound(points, _require(cfg.k, "--k"), _require(cfg.deg, "--deg"))
        report.add("advantage", f"{float(adv):.6f}")
        if cfg.delta is not None:
            ok = adv <= Fraction(cfg.delta).limit_denominator(10**9)
            report.add("verified", int(ok))
            return EXIT_OK if ok else EXIT_REFUTED
        return EXIT_OK
    if sub == "roundtrip":
        kind = _require(cfg.kind, "--kind")
        obj = _load(cfg, kind)
        again = formats.loads(formats.dumps(obj, kind), kind)
        ok = again == obj
        report.add("verified", int(ok))
        return EXIT_OK if ok else EXIT_REFUTED
    raise InputError(f"unknown check {sub!r}")  # pragma: no cover


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit code, rendered report)."""
    report = Report()
    if cfg.command == "gen-graph":
        status = _gen_graph(cfg, report)
    elif cfg.command == "reduce":
        status = _reduce(cfg, report)
    elif cfg.command == "solve":
        status = _solve(cfg, report)
    elif cfg.command == "verify":
        status = _verify(cfg, report)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown command {cfg.command!r}")
    return status, report.render(cfg.format)


def main(argv=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        status, text = run(cfg)
        if text:
            print(text)
        return status
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SparseF2Error as exc:  # pragma: no cover - safety net
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
