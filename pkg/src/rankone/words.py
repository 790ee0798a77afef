"""Finite words over {0, 1}: stage-word expansion, block parsing, occurrences.

Words are plain ``str`` objects over the characters ``"0"`` and ``"1"``.
Stage words of a parameter set are held implicitly by a WordHandle and only
materialized on request, under a length cap.
"""

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import params
from .errors import CapExceeded, NotAStageWord
from .params import ParamSpec

DEFAULT_CAP = 2 ** 24


def in_f(word):
    """True when ``word`` is non-empty and starts and ends with 0."""
    return bool(word) and word[0] == "0" and word[-1] == "0"


def zeros(word):
    return word.count("0")


@dataclass(frozen=True)
class WordHandle:
    spec: ParamSpec
    stage: int
    length: int
    zero_count: int

    @classmethod
    def of(cls, spec, n):
        return cls(spec, n, params.height(spec, n), params.zero_count(spec, n))


def handle(spec, n):
    return WordHandle.of(spec, n)


@lru_cache(maxsize=64)
def _expand(spec, n):
    w = "0"
    for k in range(n):
        st = params.stage_at(spec, k)
        w = "".join(w + "1" * a for a in st.spacers) + w
    return w


def expand(h: WordHandle, cap=DEFAULT_CAP) -> str:
    """Materialize the stage word; raises CapExceeded with the required length."""
    if h.length > cap:
        raise CapExceeded(h.length, cap)
    return _expand(h.spec, h.stage)


def stage_word(spec, n, cap=DEFAULT_CAP):
    return expand(handle(spec, n), cap)


@dataclass(frozen=True)
class Decomposition:
    """``block 1^s1 block ... 1^s(count-1) block``."""

    block: str
    count: int
    spacers: tuple
    total_length: int

    def __post_init__(self):
        object.__setattr__(self, "spacers", tuple(self.spacers))
        if self.count < 2 or len(self.spacers) != self.count - 1:
            raise ValueError("a decomposition needs at least two blocks and count - 1 spacers")
        if any(s < 0 for s in self.spacers):
            raise ValueError("spacers must be non-negative")
        if self.total_length != self.count * len(self.block) + sum(self.spacers):
            raise ValueError("total_length does not match block structure")

    @classmethod
    def build(cls, block, spacers):
        spacers = tuple(spacers)
        return cls(block, len(spacers) + 1, spacers, (len(spacers) + 1) * len(block) + sum(spacers))

    def block_starts(self):
        starts = [0]
        for s in self.spacers:
            starts.append(starts[-1] + len(self.block) + s)
        return starts


def parse_blocks(text, block):
    """Greedy parse of ``text`` as copies of ``block`` separated by 1-runs.

    Each copy must begin at the first 0 after the previous copy, so the parse
    is forced.  Returns the Decomposition, or None when ``text`` is not built
    from ``block`` (fewer than two copies or leftover symbols).
    """
    n, m = len(text), len(block)
    if m == 0:
        raise ValueError("block must be non-empty")
    pos = 0
    spacers = []
    while True:
        if not text.startswith(block, pos):
            return None
        pos += m
        if pos == n:
            break
        nxt = text.find("0", pos)
        if nxt < 0:
            return None
        spacers.append(nxt - pos)
        pos = nxt
    if not spacers:
        return None
    return Decomposition(block, len(spacers) + 1, tuple(spacers), n)


def compose(d: Decomposition) -> str:
    return "".join(d.block + "1" * s for s in d.spacers) + d.block


def is_simple(d: Decomposition) -> bool:
    return len(set(d.spacers)) == 1


class Relation(enum.Enum):
    EQUAL = "equal"
    BELOW = "u<v"  # v is built from u
    ABOVE = "v<u"  # u is built from v
    INCOMPARABLE = "incomparable"


def compare(u, v) -> Relation:
    if u == v:
        return Relation.EQUAL
    if len(u) < len(v):
        return Relation.BELOW if parse_blocks(v, u) else Relation.INCOMPARABLE
    if len(v) < len(u):
        return Relation.ABOVE if parse_blocks(u, v) else Relation.INCOMPARABLE
    return Relation.INCOMPARABLE


def find_all(text, pattern):
    """All (overlapping) start positions of ``pattern`` in ``text``."""
    out = []
    i = text.find(pattern)
    while i >= 0:
        out.append(i)
        i = text.find(pattern, i + 1)
    return out


def _count_scan(text, pattern):
    return len(find_all(text, pattern))


def count_occurrences(pattern, h: WordHandle, cap=DEFAULT_CAP) -> int:
    """Exact count of overlapping occurrences of ``pattern`` in the stage word.

    Only the first stage whose word is at least as long as the pattern is
    materialized.  From then on the first and last ``len(pattern) - 1``
    symbols never change, so each later stage multiplies the count by q and
    adds the matches straddling each spacer run.
    """
    m = len(pattern)
    if m == 0:
        raise ValueError("pattern must be non-empty")
    spec, n = h.spec, h.stage
    hs = params.heights(spec, n)
    k0 = next((k for k in range(n + 1) if hs[k] >= m), None)
    if k0 is None:
        return 0
    if hs[k0] > cap:
        raise CapExceeded(hs[k0], cap)
    base = _expand(spec, k0)
    count = _count_scan(base, pattern)
    left, right = (base[-(m - 1):], base[: m - 1]) if m > 1 else ("", "")
    joint = {}
    for k in range(k0, n):
        st = params.stage_at(spec, k)
        extra = 0
        for a in st.spacers:
            if a not in joint:
                joint[a] = _count_scan(left + "1" * a + right, pattern)
            extra += joint[a]
        count = st.q * count + extra
    return count


def stage_index_of(pattern, spec, upto, cap=DEFAULT_CAP):
    """The l <= upto with stage word equal to ``pattern``, else NotAStageWord."""
    for l, hl in enumerate(params.heights(spec, upto)):
        if hl == len(pattern) and stage_word(spec, l, cap) == pattern:
            return l
        if hl > len(pattern):
            break
    raise NotAStageWord(f"pattern of length {len(pattern)} is not a stage word of this spec")


def occurrence_positions(pattern, h: WordHandle, expected_only=False, cap=DEFAULT_CAP):
    """Sorted start positions of ``pattern`` in the stage word.

    With ``expected_only`` the pattern must itself be a stage word v_l, and
    only the block starts of the forced parse of v_n over v_l are returned.
    """
    text = expand(h, cap)
    if not expected_only:
        return find_all(text, pattern)
    l = stage_index_of(pattern, h.spec, h.stage, cap)
    if l == h.stage:
        return [0]
    return parse_blocks(text, pattern).block_starts()


def expected_block_count(spec, l, n):
    if l > n:
        raise ValueError("need l <= n")
    return params.cut_product(spec, l, n)


def gap_array(spec, n, cap=DEFAULT_CAP):
    """Flattened spacer sequence of v_n as an int64 array of length Z(v_n) - 1."""
    z = params.zero_count(spec, n)
    if z - 1 > cap:
        raise CapExceeded(z - 1, cap, "gaps")
    g = np.zeros(0, dtype=np.int64)
    for k in range(n):
        st = params.stage_at(spec, k)
        parts = []
        for a in st.spacers:
            parts.append(g)
            parts.append(np.array([a], dtype=np.int64))
        parts.append(g)
        g = np.concatenate(parts)
    return g


def flatten_spacers(h, cap=DEFAULT_CAP):
    """Lengths of the 1-runs between consecutive zeros.

    Accepts a WordHandle (computed stage by stage, never materializing the
    word) or a literal word.
    """
    if isinstance(h, str):
        return [len(run) for run in h.strip("1").split("0")[1:-1]] if h.count("0") > 1 else []
    return gap_array(h.spec, h.stage, cap).tolist()


def gap_stream(spec, count):
    for j in range(1, count):
        yield params.gap_at(spec, j)


def words_equal(a: WordHandle, b: WordHandle, cap=DEFAULT_CAP) -> bool:
    """Equality of implicitly held words.

    Lengths and zero counts reject cheaply; under the cap both are
    materialized, beyond it the gap sequences are compared stage-wise.
    """
    if a.length != b.length or a.zero_count != b.zero_count:
        return False
    if a.length <= cap:
        return expand(a, cap) == expand(b, cap)
    return all(x == y for x, y in zip(gap_stream(a.spec, a.zero_count), gap_stream(b.spec, b.zero_count)))
