"""Exact level arithmetic for the cutting-and-stacking towers.

Measures are Fractions.  Points of the interval are never represented: every
statement is about bases B_N and the levels T^l(B_N).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Union

from . import params
from .errors import BeyondHorizon, CapExceeded, SpacersNotConstant
from .params import ParamSpec

LEVEL_CAP = 2 ** 20


@dataclass(frozen=True)
class Interval:
    """Certified range ``low < x <= high`` for a horizon-limited measure."""

    low: Fraction
    high: Fraction

    def __truediv__(self, k):
        return Interval(self.low / k, self.high / k)

    def __mul__(self, k):
        return Interval(self.low * k, self.high * k)

    __rmul__ = __mul__


Measure = Union[Fraction, Interval]


def _inverse_base0(spec):
    """lim h_n / Z(v_n) = 1 + sum over stages of S_n / (q_0 ... q_n)."""
    total = Fraction(1)
    z = 1
    for st in spec.prefix:
        z *= st.q
        total += Fraction(st.total, z)
    period_sum, r = Fraction(0), 1
    for st in spec.tail:
        r *= st.q
        period_sum += Fraction(st.total, r)
    # the tail repeats with ratio 1/r per period
    return total + period_sum * Fraction(r, r - 1) / z


def base_measure(spec: ParamSpec, N: int) -> Measure:
    """λ[B_N]; an Interval for horizon-limited specs (N within the prefix)."""
    if spec.tail is None:
        P = len(spec.prefix)
        if N > P:
            raise BeyondHorizon(N, P)
        # h_n / Z(v_n) only grows, so the listed stages bound λ[B_0] from above
        b0 = Interval(Fraction(0), Fraction(params.zero_count(spec, P), params.height(spec, P)))
        return b0 / params.zero_count(spec, N)
    return 1 / (_inverse_base0(spec) * params.zero_count(spec, N))


def tower_mass(spec: ParamSpec, N: int) -> Measure:
    return params.height(spec, N) * base_measure(spec, N)


@dataclass(frozen=True)
class TowerStats:
    stage: int
    height: int
    base_measure: Measure
    tower_mass: Measure


def tower_stats(spec, N):
    b = base_measure(spec, N)
    h = params.height(spec, N)
    return TowerStats(N, h, b, h * b)


def block_offsets(spec, k):
    """Start positions of the q_k copies of v_k inside v_{k+1}."""
    st = params.stage_at(spec, k)
    h = params.height(spec, k)
    out = [0]
    for a in st.spacers:
        out.append(out[-1] + h + a)
    return out


@dataclass(frozen=True)
class ReturnLevels:
    N: int
    M: int
    positions: tuple


def return_levels(spec: ParamSpec, N: int, M: int, cap: int = LEVEL_CAP) -> ReturnLevels:
    """Levels l of the stage-M tower with T^l(B_M) inside B_N."""
    if N > M:
        raise ValueError("need N <= M")
    count = params.cut_product(spec, N, M)
    if count > cap:
        raise CapExceeded(count, cap, "levels")
    pos = [0]
    for k in range(N, M):
        offs = block_offsets(spec, k)
        pos = [o + p for o, p in product(offs, pos)]
    return ReturnLevels(N, M, tuple(sorted(pos)))


@dataclass(frozen=True)
class Offset:
    """Level ``return_level + offset`` sits inside an N-block."""

    return_level: int
    offset: int


@dataclass(frozen=True)
class Spacer:
    """Level is the ``depth``-th symbol of spacer run ``index`` added at ``stage``."""

    stage: int
    index: int
    depth: int


def level_decompose(spec: ParamSpec, M: int, l: int, N: int):
    """Classify level l of the stage-M tower relative to the N-blocks."""
    if N > M:
        raise ValueError("need N <= M")
    if not 0 <= l < params.height(spec, M):
        raise ValueError(f"level {l} outside the stage-{M} tower")
    base = 0
    for k in range(M - 1, N - 1, -1):
        h = params.height(spec, k)
        offs = block_offsets(spec, k)
        for j, o in enumerate(offs):
            if o <= l < o + h:
                base += o
                l -= o
                break
            if j + 1 < len(offs) and o + h <= l < offs[j + 1]:
                return Spacer(k, j + 1, l - o - h)
    return Offset(base, l)


@dataclass(frozen=True)
class ShiftOverlap:
    r: int
    overlap_lower_bound: Fraction
    defect_upper_bound: Fraction
    blocks: int
    verified: bool


def shift_overlap(spec: ParamSpec, N: int, n: int, span: int = 1, cap: int = 2 ** 16) -> ShiftOverlap:
    """The shift by r = h_n + a applied to B_N, with constant spacers a at stage n.

    With ``span`` > 1 the stages n .. n+span-1 (all constant a) are merged
    into one cut of q_n ... q_{n+span-1} copies, which is still a row of
    copies of v_n with equal gaps.  C is the union of the N-levels sitting in
    every copy but the last; it moves by r into B_N, which is checked level
    by level when the count is under ``cap``.
    """
    if N > n:
        raise ValueError("need N <= n")
    a = None
    for k in range(n, n + span):
        vals = set(params.stage_at(spec, k).spacers)
        if len(vals) != 1 or (a is not None and vals != {a}):
            raise SpacersNotConstant(f"spacers over stages {n}..{n + span - 1} are not one constant")
        a = next(iter(vals))
    q = params.cut_product(spec, n, n + span)
    r = params.height(spec, n) + a
    lam = base_measure(spec, N)
    if isinstance(lam, Interval):
        raise BeyondHorizon(n + span, len(spec.prefix))
    overlap = lam * (q - 1) / q
    if lam != overlap + lam / q:
        raise AssertionError("overlap does not account for the base")

    verified = False
    if params.cut_product(spec, N, n + span) <= cap:
        inner = return_levels(spec, N, n).positions
        target = set(return_levels(spec, N, n + span).positions)
        C = [i + j * r for j in range(q - 1) for i in inner]
        if any(c not in target or c + r not in target for c in C):
            raise AssertionError("shifted copies do not land on return levels")
        verified = True
    return ShiftOverlap(r, overlap, 2 * lam / q, q, verified)


def certificate_defects(spec, N, certificate, cap=2 ** 16):
    """Defect bounds along a list of (n_k, r_k), merging k + 1 stages at step k."""
    out = []
    for k, (n, r) in enumerate(certificate):
        res = shift_overlap(spec, N, n, span=k + 1, cap=cap)
        if res.r != r:
            raise AssertionError(f"certificate shift {r} differs from h_n + a = {res.r}")
        out.append(res.defect_upper_bound)
    return out
