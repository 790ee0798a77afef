"""Command-line front end: ``rankone <command> ...``.

Parameter files are line oriented::

    # comment
    stage q=3 a=0,1
    repeat
    stage q=2 a=1
    end

Stages before ``repeat`` form the prefix and stages inside the (single,
final) block repeat forever.  Exit codes: 0 True or success, 1 False,
2 Unknown, 3 input error, 4 cap or horizon exceeded.
"""

import argparse
import os
import re
import sys
from pathlib import Path

from . import decide, lattice, params, tower, words
from .errors import BeyondHorizon, CapExceeded, NoUpperBoundInHorizon, NotInSet, RankOneError, SpecError
from .examples import BUILTIN
from .params import ParamSpec, StageSpec
from .verdict import Status

EXIT_OK, EXIT_FALSE, EXIT_UNKNOWN, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4
STATUS_EXIT = {Status.TRUE: EXIT_OK, Status.FALSE: EXIT_FALSE, Status.UNKNOWN: EXIT_UNKNOWN}

_STAGE_RE = re.compile(r"stage q=(\d+) a=(\d+(?:,\d+)*)?")


class ParamFileError(SpecError):
    def __init__(self, lineno, msg):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_param_file(text, name=None) -> ParamSpec:
    prefix, tail = [], None
    state = "prefix"  # prefix -> repeat -> done
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "repeat":
            if state != "prefix":
                raise ParamFileError(lineno, "only one repeat block is allowed")
            state, tail = "repeat", []
            continue
        if line == "end":
            if state != "repeat":
                raise ParamFileError(lineno, "end without repeat")
            if not tail:
                raise ParamFileError(lineno, "repeat block is empty")
            state = "done"
            continue
        m = _STAGE_RE.fullmatch(line)
        if not m:
            raise ParamFileError(lineno, f"cannot parse {raw.strip()!r}")
        if state == "done":
            raise ParamFileError(lineno, "the repeat block must be last")
        spacers = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
        try:
            st = StageSpec(int(m.group(1)), spacers)
        except SpecError as e:
            raise ParamFileError(lineno, str(e)) from None
        (prefix if state == "prefix" else tail).append(st)
    if state == "repeat":
        raise ParamFileError(lineno if text else 0, "repeat block is not closed")
    return ParamSpec(tuple(prefix), None if tail is None else tuple(tail), name)


def format_param_file(spec: ParamSpec, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [str(st) for st in spec.prefix]
    if spec.tail is not None:
        lines += ["repeat"] + [str(st) for st in spec.tail] + ["end"]
    return "\n".join(lines) + "\n"


def load(path) -> ParamSpec:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_param_file(text, None if path == "-" else Path(path).stem)


def _fmt(v):
    if isinstance(v, tuple):
        return ",".join(":".join(map(str, x)) if isinstance(x, tuple) else str(x) for x in v)
    return str(v)


def _kv(pairs, sep):
    return sep.join(f"{k}={_fmt(v)}" for k, v in pairs)


def report(verdict, porcelain):
    head = [("property", verdict.property), ("status", verdict.status)] + list(verdict.certificate.items())
    tail = [("method", verdict.method)] + [(f"horizon.{k}", v) for k, v in verdict.horizon.items()]
    if porcelain:
        return _kv(head, "\t") + "\n" + _kv(tail, "\t") + "\n"
    lines = [f"property: {verdict.property}", f"status: {verdict.status}"]
    lines += [f"  {k} = {_fmt(v)}" for k, v in verdict.certificate.items()]
    lines += [f"method: {verdict.method}", "horizon: " + _kv(verdict.horizon.items(), " ")]
    return "\n".join(lines) + "\n"


DECIDERS = {
    "centralizer": decide.decide_trivial_centralizer,
    "ergodic": decide.decide_total_ergodicity,
    "weakmixing": decide.decide_weak_mixing,
    "msj": decide.decide_msj,
    "canonbounded": lattice.is_canonically_bounded,
}


def cmd_validate(args, out):
    spec = load(args.file)
    tail = "horizon-limited" if spec.tail is None else f"tail={len(spec.tail)}"
    out.write(f"ok prefix={len(spec.prefix)} {tail}\n")
    return EXIT_OK


def cmd_heights(args, out):
    for h in params.heights(load(args.file), args.stages):
        out.write(f"{h}\n")
    return EXIT_OK


def cmd_expand(args, out):
    out.write(words.stage_word(load(args.file), args.stage, args.cap) + "\n")
    return EXIT_OK


def cmd_canon(args, out):
    res = lattice.canonicalize(load(args.file), args.depth, args.cap)
    zc = ",".join(map(str, res.zero_counts))
    out.write(format_param_file(res.as_spec(), [f"status={res.status}", f"zero_counts={zc}", f"horizon={res.horizon}"]))
    return EXIT_OK


def cmd_decide(args, out):
    v = DECIDERS[args.property](load(args.file))
    out.write(report(v, args.porcelain))
    return STATUS_EXIT[v.status]


def _measure(m):
    if isinstance(m, tower.Interval):
        return f"({m.low},{m.high}]"
    return str(m)


def cmd_tower(args, out):
    s = tower.tower_stats(load(args.file), args.stage)
    out.write(f"stage={s.stage}\theight={s.height}\tbase_measure={_measure(s.base_measure)}\ttower_mass={_measure(s.tower_mass)}\n")
    return EXIT_OK


def cmd_levels(args, out):
    rl = tower.return_levels(load(args.file), args.lo, args.hi, args.cap)
    out.write(" ".join(map(str, rl.positions)) + "\n")
    return EXIT_OK


def cmd_overlap(args, out):
    r = tower.shift_overlap(load(args.file), args.target, args.stage, args.span)
    out.write(
        f"r={r.r}\toverlap_lower_bound={r.overlap_lower_bound}\tdefect_upper_bound={r.defect_upper_bound}"
        f"\tverified={r.verified}\n"
    )
    return EXIT_OK


def cmd_example(args, out):
    make = BUILTIN[args.name]
    spec = make(args.stages) if args.name == "djr" else make()
    out.write(format_param_file(spec, [spec.name]))
    return EXIT_OK


def cmd_av(args, out):
    spec = load(args.file)
    enum = lattice.enumerate_av_oracle if args.oracle else lattice.enumerate_av
    for w in enum(spec, args.length, args.cap).members:
        out.write(w + "\n")
    return EXIT_OK


def cmd_parse(args, out):
    for w in (args.text, args.block):
        if not words.in_f(w) or set(w) - {"0", "1"}:
            raise SpecError(f"{w!r} is not a 0/1 word starting and ending with 0")
    d = words.parse_blocks(args.text, args.block)
    if d is None:
        out.write("not built\n")
        return EXIT_FALSE
    out.write(f"count={d.count}\tspacers={_fmt(d.spacers)}\tsimple={words.is_simple(d)}\n")
    return EXIT_OK


def cmd_count(args, out):
    spec = load(args.file)
    out.write(f"{words.count_occurrences(args.pattern, words.handle(spec, args.stage), args.cap)}\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def default_cap():
    raw = os.environ.get("RO1_CAP")
    if raw is None:
        return words.DEFAULT_CAP
    if not raw.strip().isdigit():
        raise SpecError(f"RO1_CAP must be a decimal integer, got {raw!r}")
    return int(raw)


def build_parser(cap):
    p = _Parser(prog="rankone", description="Rank-one transformations from cutting and spacer parameters.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, file=True):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file", help="parameter file, or - for stdin")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check a parameter file")
    add("heights", cmd_heights, "print h_0 .. h_n").add_argument("--stages", type=int, required=True)
    sp = add("expand", cmd_expand, "print the stage word v_n")
    sp.add_argument("--stage", type=int, required=True)
    sp.add_argument("--cap", type=int, default=cap)
    sp = add("canon", cmd_canon, "canonical stages as a parameter file")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--cap", type=int, default=cap)
    sp = sub.add_parser("decide", help="decide a property")
    sp.add_argument("property", choices=sorted(DECIDERS))
    sp.add_argument("file")
    sp.add_argument("--porcelain", action="store_true", help="tab-separated key=value records")
    sp.set_defaults(fn=cmd_decide)
    add("tower", cmd_tower, "height and exact measures of the stage-N tower").add_argument("--stage", type=int, required=True)
    sp = add("levels", cmd_levels, "return levels of B_M inside B_N")
    sp.add_argument("--from", dest="lo", type=int, required=True)
    sp.add_argument("--to", dest="hi", type=int, required=True)
    sp.add_argument("--cap", type=int, default=tower.LEVEL_CAP)
    sp = add("overlap", cmd_overlap, "shift overlap and defect bound at a constant stage")
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--stage", type=int, required=True)
    sp.add_argument("--span", type=int, default=1)
    sp = add("example", cmd_example, "write a built-in parameter file", file=False)
    sp.add_argument("name", choices=sorted(BUILTIN))
    sp.add_argument("--stages", type=int, default=16, help="prefix length for djr")
    sp = add("av", cmd_av, "members of A_V up to a length")
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--oracle", action="store_true", help="use the brute-force enumeration")
    sp.add_argument("--cap", type=int, default=cap)
    sp = add("parse", cmd_parse, "parse TEXT as copies of BLOCK", file=False)
    sp.add_argument("text")
    sp.add_argument("block")
    sp = add("count", cmd_count, "occurrences of a pattern in v_n")
    sp.add_argument("--stage", type=int, required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--cap", type=int, default=cap)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        cap = default_cap()
    except SpecError as e:
        print(f"rankone: {e}", file=sys.stderr)
        return EXIT_INPUT
    args = build_parser(cap).parse_args(argv)
    try:
        return args.fn(args, out)
    except (CapExceeded, BeyondHorizon, NoUpperBoundInHorizon) as e:
        print(f"rankone: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CAP
    except (SpecError, NotInSet, RankOneError, OSError, ValueError) as e:
        print(f"rankone: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
