"""Cutting and spacer parameters, tower heights and derived scalars.

A transformation is described by a finite prefix of stages followed by an
optional tail that repeats forever.  Without a tail the description is
horizon-limited: only the listed stages exist.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import (
    BeyondHorizon,
    CutTooSmall,
    EmptyTail,
    NegativeSpacer,
    SpacerCountMismatch,
    SpecError,
)

FINITENESS_DEPTH = 20


def _check_stage(q, spacers):
    if not isinstance(q, int) or isinstance(q, bool):
        raise SpecError(f"cut count must be an integer, got {q!r}")
    if q < 2:
        raise CutTooSmall(f"cut count q={q} must be at least 2")
    if len(spacers) != q - 1:
        raise SpacerCountMismatch(f"q={q} needs {q - 1} spacers, got {len(spacers)}")
    for a in spacers:
        if not isinstance(a, int) or isinstance(a, bool):
            raise SpecError(f"spacer must be an integer, got {a!r}")
        if a < 0:
            raise NegativeSpacer(f"spacer {a} is negative")


@dataclass(frozen=True)
class StageSpec:
    """One cutting stage: ``q`` copies separated by ``q - 1`` spacer runs."""

    q: int
    spacers: tuple

    def __post_init__(self):
        object.__setattr__(self, "spacers", tuple(self.spacers))
        _check_stage(self.q, self.spacers)

    @property
    def total(self):
        return sum(self.spacers)

    def is_constant(self):
        return len(set(self.spacers)) == 1

    def __str__(self):
        return f"stage q={self.q} a={','.join(map(str, self.spacers))}"


@dataclass(frozen=True)
class ParamSpec:
    prefix: tuple = ()
    tail: Optional[tuple] = None
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if self.tail is not None:
            object.__setattr__(self, "tail", tuple(self.tail))
            if not self.tail:
                raise EmptyTail("a repeating tail must contain at least one stage")

    @property
    def horizon_limited(self):
        return self.tail is None

    @property
    def defined_stages(self):
        """Number of defined stages, or None when every stage is defined."""
        return len(self.prefix) if self.tail is None else None

    @property
    def period_start(self):
        """Index of the first stage of the repeating tail."""
        return len(self.prefix)

    def periodic_constant(self):
        """The common spacer value if every tail spacer is equal, else None."""
        if self.tail is None:
            return None
        values = {a for st in self.tail for a in st.spacers}
        return values.pop() if len(values) == 1 else None

    def with_prefix(self, stages, name=None):
        return ParamSpec(tuple(stages), None, name)


def _as_stage(raw):
    if isinstance(raw, StageSpec):
        return raw
    if isinstance(raw, dict):
        q, spacers = raw.get("q"), raw.get("a", raw.get("spacers", ()))
    else:
        q, spacers = raw
    return StageSpec(q, tuple(spacers))


def validate_spec(raw) -> ParamSpec:
    """Build a checked ParamSpec from parsed parameter-file content.

    ``raw`` is a mapping with ``prefix`` (list of stages), optional ``tail``
    and optional ``name``; a stage is a StageSpec, a ``(q, spacers)`` pair or
    a ``{"q": .., "a": ..}`` mapping.  Raises a SpecError subclass on the
    first invalid stage.
    """
    if isinstance(raw, ParamSpec):
        raw = {"prefix": raw.prefix, "tail": raw.tail, "name": raw.name}
    prefix = tuple(_as_stage(s) for s in raw.get("prefix", ()))
    tail = raw.get("tail")
    if tail is not None:
        tail = tuple(_as_stage(s) for s in tail)
        if not tail:
            raise EmptyTail("a repeating tail must contain at least one stage")
    return ParamSpec(prefix, tail, raw.get("name"))


def stage_at(spec: ParamSpec, n: int) -> StageSpec:
    if n < 0:
        raise ValueError("stage index must be non-negative")
    if n < len(spec.prefix):
        return spec.prefix[n]
    if spec.tail is None:
        raise BeyondHorizon(n, len(spec.prefix))
    return spec.tail[(n - len(spec.prefix)) % len(spec.tail)]


def stages(spec, start, stop):
    return [stage_at(spec, k) for k in range(start, stop)]


@lru_cache(maxsize=512)
def _height_list(spec, n):
    hs = [1]
    for k in range(n):
        st = stage_at(spec, k)
        hs.append(st.q * hs[-1] + st.total)
    return tuple(hs)


def heights(spec: ParamSpec, n: int) -> list:
    """Heights h_0 .. h_n (n + 1 entries)."""
    return list(_height_list(spec, n))


def height(spec, n):
    return _height_list(spec, n)[-1]


def zero_count(spec, n):
    """Number of zeros of the stage-n word, the product of the first n cuts."""
    z = 1
    for k in range(n):
        z *= stage_at(spec, k).q
    return z


def cut_product(spec, start, stop):
    z = 1
    for k in range(start, stop):
        z *= stage_at(spec, k).q
    return z


def gap_at(spec, j):
    """Length of the 1-run after the j-th zero (1-based) of the limit word.

    Reads j in the mixed radix of the cut counts: the highest stage whose
    block boundary falls at j owns the spacer.
    """
    if j < 1:
        raise ValueError("gap index starts at 1")
    t = 0
    while True:
        st = stage_at(spec, t)
        j, r = divmod(j, st.q)
        if r:
            return st.spacers[r - 1]
        t += 1


def bounds(spec: ParamSpec):
    """Exact maxima (q_max, a_max) over prefix and tail."""
    if spec.tail is None:
        raise BeyondHorizon(len(spec.prefix), len(spec.prefix))
    allst = spec.prefix + spec.tail
    return max(s.q for s in allst), max(a for s in allst for a in s.spacers)


def finiteness_margin(spec: ParamSpec, N: int, depth: int = FINITENESS_DEPTH) -> Fraction:
    """Exact upper bound on the tail sum of (h_{n+1} - q_n h_n) / h_{n+1} from N on.

    Sums ``depth`` terms exactly and bounds the rest geometrically, using
    h_{n+1} >= 2 h_n and the largest spacer total that can still occur.
    """
    if spec.tail is None:
        raise BeyondHorizon(N, len(spec.prefix))
    stop = N + depth
    hs = heights(spec, stop + 1)
    total = Fraction(0)
    for n in range(N, stop):
        s = stage_at(spec, n).total
        if s:
            total += Fraction(s, hs[n + 1])
    later = spec.tail + spec.prefix[stop:]
    smax = max(st.total for st in later)
    return total + Fraction(2 * smax, hs[stop + 1])
