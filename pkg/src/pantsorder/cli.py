"""Command line interface.

Exit status: 0 on success, 1 on a domain error (bad word, bad metric,
failed verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import mpmath

from . import verify as verify_mod
from .rep import DOUBLE_BITS, MetricError, NonHyperbolicError, PantsMetric, WordTooLongError
from .rep import length_of_word, metric_from_lengths, trace_of_word
from .selfint import EndpointCollisionError, NonPrimitiveError, selfint_axis, selfint_boundary
from .systoles import KOutOfRange, enumerate_candidates, ksystole
from .teich import DEFAULT_BETA, DEFAULT_JMAX, PreconditionError, SearchExhausted
from .teich import choose_flip_curves, find_flip_pair
from .theta import certify_order
from .words import EmptyWordError, WordSyntaxError, as_word

DEFAULT_METRIC = PantsMetric(-3.0, -3.0, -3.0)
DOMAIN_ERRORS = (
    WordSyntaxError,
    EmptyWordError,
    MetricError,
    NonHyperbolicError,
    WordTooLongError,
    NonPrimitiveError,
    EndpointCollisionError,
    KOutOfRange,
    PreconditionError,
    SearchExhausted,
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    metric: PantsMetric
    bits: int
    seed: int
    fmt: str
    workers: int


def _triple(text: str) -> List[float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number in {text!r}") from None


def _metric(traces, lengths) -> PantsMetric:
    if traces is not None:
        return PantsMetric(*traces)
    if lengths is not None:
        return metric_from_lengths(*lengths)
    return DEFAULT_METRIC


def fmt_real(v, bits: int = DOUBLE_BITS) -> str:
    """Round-trip decimal text for a float or an mpf."""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, int):
        return repr(float(v))
    digits = max(17, int(math.ceil(bits * math.log10(2))) + 1)
    return mpmath.nstr(v, digits)


def _json_real(v, bits):
    return float(v) if bits <= DOUBLE_BITS else fmt_real(v, bits)


def _emit(out, obj) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *rows]]
    return "\n".join(lines) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# Subcommands ----------------------------------------------------------------

def cmd_length(cfg: RunConfig, args, out) -> int:
    w = as_word(args.word)
    t = trace_of_word(cfg.metric, w, cfg.bits)
    L = length_of_word(cfg.metric, w, cfg.bits)
    if cfg.fmt == "json":
        _emit(out, {"word": str(w), "metric": list(cfg.metric.traces), "bits": cfg.bits,
                    "length": _json_real(L, cfg.bits), "trace": _json_real(t, cfg.bits)})
    else:
        out.write(f"length {fmt_real(L, cfg.bits)}\ntrace {fmt_real(t, cfg.bits)}\n")
    return 0


def cmd_trace(cfg: RunConfig, args, out) -> int:
    w = as_word(args.word)
    t = trace_of_word(cfg.metric, w, cfg.bits)
    if cfg.fmt == "json":
        _emit(out, {"word": str(w), "metric": list(cfg.metric.traces), "bits": cfg.bits,
                    "trace": _json_real(t, cfg.bits)})
    else:
        out.write(fmt_real(t, cfg.bits) + "\n")
    return 0


def cmd_selfint(cfg: RunConfig, args, out) -> int:
    fn = selfint_boundary if args.method == "boundary" else selfint_axis
    rep = fn(args.word)
    if cfg.fmt == "json":
        _emit(out, rep.to_dict())
    else:
        out.write(f"{rep.word}\t{rep.count}\n")
    return 0


def cmd_certify(cfg: RunConfig, args, out) -> int:
    cert = certify_order(args.u, args.v)
    if cfg.fmt == "json":
        _emit(out, cert.to_dict())
    else:
        d = cert.to_dict()
        out.write("".join(f"{k}: {d[k]}\n" for k in ("u", "v", "case", "xi_u", "xi_uv", "w", "w_prime")))
    return 0


def cmd_enumerate(cfg: RunConfig, args, out) -> int:
    cs = enumerate_candidates(args.k, workers=cfg.workers)
    header = ("word", "selfint", "xi_length")
    rows = [(str(c.word), c.selfint, c.xi_length) for c in cs.members]
    if cfg.fmt == "json":
        out.write(cs.to_json() + "\n")
    elif cfg.fmt == "csv":
        out.write(_csv(rows, header))
    else:
        for r in rows:
            out.write("\t".join(map(str, r)) + "\n")
        _emit(out, cs.summary())
    return 0


def cmd_systole(cfg: RunConfig, args, out) -> int:
    rep = ksystole(cfg.metric, args.k, enumerate_candidates(args.k, workers=cfg.workers))
    header = ("word", "length", "selfint")
    rows = [(str(r.word), repr(r.length), r.selfint) for r in rep.table]
    if cfg.fmt == "json":
        out.write(rep.to_json() + "\n")
    elif cfg.fmt == "csv":
        out.write(_csv(rows, header))
    else:
        d = rep.to_dict()
        del d["table"]
        _emit(out, d)
        out.write(_table(rows, header))
    return 0


def cmd_distinguish(cfg: RunConfig, args, out) -> int:
    mX, mXp = metric_from_lengths(*args.x), metric_from_lengths(*args.xprime)
    if (args.gamma1 is None) != (args.gamma2 is None):
        raise PreconditionError("give both --gamma1 and --gamma2 or neither")
    g1, g2 = (args.gamma1, args.gamma2) if args.gamma1 else choose_flip_curves(mX, mXp)
    wit = find_flip_pair(mX, mXp, g1, g2, beta=args.beta, j_max=args.jmax)
    if cfg.fmt == "json":
        _emit(out, wit.to_dict())
    else:
        d = wit.to_dict()
        out.write("".join(f"{k}: {d[k]}\n" for k in sorted(d)))
    return 0


def cmd_verify(cfg: RunConfig, args, out) -> int:
    names = list(verify_mod.SUITES) if args.suite == "all" else [args.suite]
    results = [verify_mod.SUITES[n](cfg.seed) for n in names]
    if cfg.fmt == "json":
        _emit(out, {"seed": cfg.seed, "results": [r.to_dict() for r in results]})
    else:
        for r in results:
            status = "pass" if r.passed else "FAIL"
            out.write(f"{r.name}: {status} {r.checks - r.failures}/{r.checks} worst={r.worst}\n")
            for note in r.notes:
                out.write(f"  {note}\n")
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "length": cmd_length,
    "trace": cmd_trace,
    "selfint": cmd_selfint,
    "certify": cmd_certify,
    "enumerate": cmd_enumerate,
    "systole": cmd_systole,
    "distinguish": cmd_distinguish,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_mutually_exclusive_group()
    g.add_argument("--traces", type=_triple, metavar="x,y,z", help="boundary traces, each <= -2")
    g.add_argument("--lengths", type=_triple, metavar="L1,L2,L3", help="boundary lengths, each >= 0")
    common.add_argument("--bits", type=int, default=DOUBLE_BITS, help="working precision (default 53)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for sampling suites")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="text")
    common.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="pantsorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("length", parents=[common], help="geodesic length and trace of a word")
    s.add_argument("word")
    s = sub.add_parser("trace", parents=[common], help="trace of a word")
    s.add_argument("word")
    s = sub.add_parser("selfint", parents=[common], help="self-intersection number")
    s.add_argument("word")
    s.add_argument("--method", choices=("axis", "boundary"), default="axis")
    s = sub.add_parser("certify", parents=[common], help="certificate for l(u) < l(uv)")
    s.add_argument("u")
    s.add_argument("v")
    s = sub.add_parser("enumerate", parents=[common], help="k-systole candidates")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--dedup", choices=("cyc-inv",), default="cyc-inv")
    s = sub.add_parser("systole", parents=[common], help="shortest candidate at a metric")
    s.add_argument("--k", type=int, required=True)
    s = sub.add_parser("distinguish", parents=[common], help="curve pair whose length order flips")
    s.add_argument("--x", type=_triple, required=True, metavar="L1,L2,L3")
    s.add_argument("--xprime", type=_triple, required=True, metavar="L1,L2,L3")
    s.add_argument("--gamma1")
    s.add_argument("--gamma2")
    s.add_argument("--beta", default=DEFAULT_BETA)
    s.add_argument("--jmax", type=int, default=DEFAULT_JMAX)
    s = sub.add_parser("verify", parents=[common], help="run a property suite")
    s.add_argument("--suite", choices=(*verify_mod.SUITES, "all"), default="all")
    return p


_TRIPLE_FLAGS = ("--traces", "--lengths", "--x", "--xprime")


def _attach_negative_values(argv: Sequence[str]) -> List[str]:
    """``--traces -3,-3,-3`` -> ``--traces=-3,-3,-3`` so argparse does not read an option."""
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a in _TRIPLE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _attach_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.bits < DOUBLE_BITS or args.workers < 1:
        err.write("error: --bits must be >= 53 and --workers >= 1\n")
        return 2
    try:
        cfg = RunConfig(args.command, _metric(args.traces, args.lengths), args.bits,
                        args.seed, args.fmt, args.workers)
        return COMMANDS[args.command](cfg, args, out)
    except DOMAIN_ERRORS as e:
        err.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
