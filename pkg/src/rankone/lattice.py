"""The family A_V of words the limit word is built from, and its canonical chain.

Every member of A_V is the prefix of V holding some number p of zeros,
because a parse over a block is forced (each copy starts at the next 0).
So members are identified by their zero count, ``u < w`` in the built-from
order is divisibility of zero counts, and ``u <_s w`` asks that the gaps of
V at multiples of Z(u) below Z(w) all agree.

Canonicalization works over the chain of stage words and their one-stage
factorizations.  Off-chain members exist but can never be canonical, and any
witness that eliminates a chain member can be replaced by one inside the
chain, so the filter never needs them.  The full family is still enumerated
(two ways) so that the claim can be checked.
"""

from dataclasses import dataclass

import numpy as np

from . import params, words
from .errors import BeyondHorizon, CapExceeded, LatticeViolation, NoUpperBoundInHorizon, NotInSet
from .params import ParamSpec, StageSpec
from .verdict import Status, Verdict
from .words import DEFAULT_CAP, Decomposition, parse_blocks

COMPLETE = "complete-to-depth"
HORIZON_LIMITED = "horizon-limited"
PERIODIC = "periodic-word"


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def factor_blocks(stage: StageSpec):
    """Block counts p, 1 < p < q, at which the stage factors through p copies."""
    s, q = stage.spacers, stage.q
    out = []
    for p in _divisors(q)[1:-1]:
        if all(s[j - 1] == s[j % p - 1] for j in range(1, q) if j % p):
            out.append(p)
    return out


def between(spec: ParamSpec, m: int, cap=DEFAULT_CAP):
    """Words strictly between w_m and w_{m+1}, as decompositions over w_m."""
    st = params.stage_at(spec, m)
    block = words.stage_word(spec, m, cap)
    return [Decomposition.build(block, st.spacers[: p - 1]) for p in factor_blocks(st)]


@dataclass(frozen=True)
class ChainMember:
    """``blocks`` copies of w_stage, with the stage's own first spacers between."""

    stage: int
    blocks: int
    zero_count: int
    length: int


def chain(spec, M):
    """Stage words w_0..w_M together with every one-stage factorization below M."""
    out = []
    hs = params.heights(spec, M)
    z = 1
    for m in range(M):
        st = params.stage_at(spec, m)
        out.append(ChainMember(m, 1, z, hs[m]))
        for p in factor_blocks(st):
            out.append(ChainMember(m, p, z * p, p * hs[m] + sum(st.spacers[: p - 1])))
        z *= st.q
    out.append(ChainMember(M, 1, z, hs[M]))
    return out


def link_values(spec, u: ChainMember, w: ChainMember):
    """Set of gap values between consecutive copies of u inside w (u < w)."""
    m1, p1, m2, p2 = u.stage, u.blocks, w.stage, w.blocks
    st = params.stage_at(spec, m1)
    if m1 == m2:
        return {st.spacers[k * p1 - 1] for k in range(1, p2 // p1)}
    vals = {st.spacers[k * p1 - 1] for k in range(1, st.q // p1)}
    for s in range(m1 + 1, m2):
        vals.update(params.stage_at(spec, s).spacers)
    if p2 > 1:
        vals.update(params.stage_at(spec, m2).spacers[: p2 - 1])
    return vals


def _below(u, w):
    return u.zero_count < w.zero_count and w.zero_count % u.zero_count == 0


def _simply(spec, u, w):
    return len(link_values(spec, u, w)) == 1


@dataclass(frozen=True)
class CandidateSet:
    members: tuple
    zero_counts: tuple
    horizon: tuple  # (stage M, length bound L)
    source: str

    def __contains__(self, word):
        return word in set(self.members)

    def as_set(self):
        return set(self.members)


def _horizon_for(spec, L):
    """Least M >= 2 with |w_{M-2}| >= L."""
    M = 2
    while True:
        try:
            if params.height(spec, M - 2) >= L:
                params.stage_at(spec, M - 1)
                return M
        except BeyondHorizon:
            raise BeyondHorizon(M - 1, len(spec.prefix)) from None
        M += 1


def _residue_periodic(G, n, p):
    """Gaps j <= n with p not dividing j all equal the gap at j mod p.

    ``G[j]`` holds gap j for 1 <= j <= n and -1 past the end.
    """
    if p == 1:
        return True
    ref = G[1:p]
    if 2 * p <= n + 1 and not np.array_equal(G[p + 1 : 2 * p], ref):
        return False
    K = -(-(n + 1) // p)
    rows = G[: K * p].reshape(K, p)[:, 1:]
    return bool(((rows == ref) | (rows < 0)).all())


def enumerate_av(spec: ParamSpec, L: int, cap=DEFAULT_CAP) -> CandidateSet:
    """Members of A_V of length at most L, computed from the parameters.

    Chain members are accepted outright; every other prefix is tested on the
    flattened gap sequence of w_M, where |w_{M-2}| >= L.  No stage word is
    ever materialized: member words are spelled out from their gaps.
    """
    M = _horizon_for(spec, L)
    if params.height(spec, M) > cap:
        raise CapExceeded(params.height(spec, M), cap)
    n = params.zero_count(spec, M) - 1
    g = words.gap_array(spec, M, cap)
    chain_z = {c.zero_count for c in chain(spec, M) if c.length <= L}
    lengths = np.concatenate(([1], np.arange(2, n + 2) + np.cumsum(g)))
    pmax = int(np.searchsorted(lengths, L, side="right"))
    G = np.full(n + 2 + pmax, -1, dtype=np.int64)
    G[1 : n + 1] = g
    zs = [p for p in range(1, pmax + 1) if p in chain_z or _residue_periodic(G, n, p)]
    spelled = "0" + "".join("1" * int(a) + "0" for a in g[: max(zs) - 1])
    members = tuple(spelled[: int(lengths[p - 1])] for p in zs)
    return CandidateSet(members, tuple(zs), (M, L), "fast")


def _oracle_accepts(text, u, min_clean):
    n, m = len(text), len(u)
    pos = 0
    while True:
        if text.startswith(u, pos):
            pos += m
            if pos == n:
                return pos >= min_clean
            pos = text.find("0", pos)
        else:
            rest = text[pos:]
            return len(rest) < m and u.startswith(rest) and pos >= min_clean


def enumerate_av_oracle(spec: ParamSpec, L: int, cap=DEFAULT_CAP) -> CandidateSet:
    """Brute force: every 0-ending prefix u of w_M, |u| <= L, that parses w_M.

    The last copy may be cut short by the end of w_M; at least |w_{M-1}|
    symbols must be consumed by whole copies.
    """
    M = _horizon_for(spec, L)
    text = words.stage_word(spec, M, cap)
    min_clean = params.height(spec, M - 1)
    members = []
    end = min(L, len(text))
    e = text.find("0")
    while 0 <= e < end:
        u = text[: e + 1]
        if _oracle_accepts(text, u, min_clean):
            members.append(u)
        e = text.find("0", e + 1)
    return CandidateSet(tuple(members), tuple(w.count("0") for w in members), (M, L), "oracle")


def _leq(u, v):
    return u == v or (len(u) < len(v) and parse_blocks(v, u) is not None)


def _check_members(cs, *ws):
    have = cs.as_set()
    for w in ws:
        if w not in have:
            raise NotInSet(w)


def meet(u, v, cs: CandidateSet):
    """Longest member both u and v are built from (or equal to)."""
    _check_members(cs, u, v)
    lower = [x for x in cs.members if _leq(x, u) and _leq(x, v)]
    best = max(lower, key=len)
    if not all(_leq(x, best) for x in lower):
        raise LatticeViolation(f"common lower bounds of {u!r}, {v!r} have no greatest element")
    return best


def join(u, v, cs: CandidateSet):
    """Shortest member built from both u and v.

    For incomparable u, v the meet must be simply built into the join; a
    failure means the candidate set is wrong and raises LatticeViolation.
    """
    _check_members(cs, u, v)
    upper = [x for x in cs.members if _leq(u, x) and _leq(v, x)]
    if not upper:
        raise NoUpperBoundInHorizon(f"no common upper bound within length {cs.horizon[1]}")
    best = min(upper, key=len)
    if not all(_leq(best, x) for x in upper):
        raise LatticeViolation(f"common upper bounds of {u!r}, {v!r} have no least element")
    if not (_leq(u, v) or _leq(v, u)):
        low = meet(u, v, cs)
        d = parse_blocks(best, low)
        if d is None or not words.is_simple(d):
            raise LatticeViolation(f"meet {low!r} is not simply built into join {best!r}")
    return best


@dataclass(frozen=True)
class CanonicalResult:
    stages: tuple
    words: tuple
    zero_counts: tuple
    status: str
    horizon: int
    judged_length: int

    def as_spec(self, name=None):
        return ParamSpec(self.stages, None, name)


def constant_from(spec):
    """First stage from which every spacer is the same value, for constant tails."""
    a = spec.periodic_constant()
    if a is None:
        return None
    n = len(spec.prefix)
    while n > 0 and set(spec.prefix[n - 1].spacers) == {a}:
        n -= 1
    return n


def _survivors(spec, members, judge_len):
    ordered = sorted(members, key=lambda c: c.zero_count)
    out = []
    for v in ordered:
        if v.length > judge_len:
            break
        lower = [u for u in ordered if _below(u, v)]
        upper = [w for w in ordered if _below(v, w)]
        lower = [u for u in lower if not any(_below(u, x) and _below(x, v) for x in lower)]
        upper = [w for w in upper if not any(_below(v, x) and _below(x, w) for x in upper)]
        if not any(_simply(spec, u, w) for u in lower for w in upper):
            out.append(v)
    return out


def _spell(spec, c: ChainMember, cap):
    if c.length > cap:
        raise CapExceeded(c.length, cap)
    block = words.stage_word(spec, c.stage, cap)
    if c.blocks == 1:
        return block
    st = params.stage_at(spec, c.stage)
    return words.compose(Decomposition.build(block, st.spacers[: c.blocks - 1]))


def canonicalize(spec: ParamSpec, depth: int = 6, cap: int = DEFAULT_CAP, verify: bool = False):
    """Canonical stages v^_0 .. v^_depth read off the filtered chain.

    Chain members of length at most |w_{M-2}| are judged, witnesses come from
    the chain up to w_M, and M grows until ``depth`` stages are certain, the
    horizon or ``cap`` on |w_M| runs out, or (constant tail) the limit word is
    periodic and no further survivor can appear.  With ``verify`` the full
    fast-path family is enumerated under a small cap and every survivor is
    checked to be comparable with all of it.
    """
    start = constant_from(spec)
    limit = spec.defined_stages
    M = 2 if limit is None else min(2, limit)
    while True:
        members = chain(spec, M)
        judge_len = params.height(spec, M - 2) if M >= 2 else 1
        surv = _survivors(spec, members, judge_len)
        if len(surv) >= depth + 1:
            surv, status = surv[: depth + 1], COMPLETE
            break
        if start is not None and M >= start + 3:
            status = PERIODIC
            _check_periodic(spec, start, cap)
            break
        if (limit is not None and M >= limit) or params.height(spec, M + 1) > cap:
            status = HORIZON_LIMITED
            break
        M += 1

    stages_out = []
    for a, b in zip(surv, surv[1:]):
        if b.zero_count % a.zero_count:
            raise LatticeViolation(f"consecutive canonical words with {a.zero_count} and {b.zero_count} zeros")
        q = b.zero_count // a.zero_count
        gaps = tuple(params.gap_at(spec, k * a.zero_count) for k in range(1, q))
        skipped = any(_below(a, x) and _below(x, b) for x in members)
        if skipped and len(set(gaps)) != 1:
            raise LatticeViolation("an intermediate word was skipped between non-simply linked canonical words")
        stages_out.append(StageSpec(q, gaps))
    for v in surv:
        for x in members:
            if not (_below(v, x) or _below(x, v) or x.zero_count == v.zero_count) and status != PERIODIC:
                raise LatticeViolation(f"canonical word with {v.zero_count} zeros is incomparable with a chain member")
    if verify and start is None and M >= 2 and params.height(spec, M) <= 2 ** 16:
        full = enumerate_av(spec, params.height(spec, M - 2), cap)
        for v in surv:
            for z in full.zero_counts:
                if z % v.zero_count and v.zero_count % z:
                    raise LatticeViolation(f"canonical word with {v.zero_count} zeros is incomparable with a member of A_V")

    return CanonicalResult(
        tuple(stages_out),
        tuple(_spell(spec, c, cap) for c in surv),
        tuple(c.zero_count for c in surv),
        status,
        M,
        judge_len,
    )


def _check_periodic(spec, start, cap):
    a = spec.periodic_constant()
    period = params.height(spec, start) + a
    n = start + 2
    if params.height(spec, n) > min(cap, 2 ** 20):
        return
    text = words.stage_word(spec, n, cap)
    if text[period:] != text[: len(text) - period]:
        raise LatticeViolation(f"constant tail but the prefix is not {period}-periodic")


def equal_windows(spec, stop):
    """Lengths of maximal runs of consecutive stages sharing a single spacer value."""
    runs, cur, val = [], 0, None
    for n in range(stop):
        vals = set(params.stage_at(spec, n).spacers)
        if len(vals) == 1 and vals == {val}:
            cur += 1
        else:
            if cur:
                runs.append(cur)
            cur, val = (1, next(iter(vals))) if len(vals) == 1 else (0, None)
    if cur:
        runs.append(cur)
    return runs


def is_canonically_bounded(spec: ParamSpec) -> Verdict:
    """Unbounded canonical cuts exactly when all-equal stage windows grow without bound.

    For an eventually periodic spec the windows are unbounded iff the tail
    is constant.  Prefix-only specs give Unknown with the windows observed.
    """
    P = len(spec.prefix)
    if spec.tail is None:
        runs = equal_windows(spec, P)
        return Verdict(
            "canonbounded",
            Status.UNKNOWN,
            {"longest_equal_window": max(runs, default=0), "windows": tuple(runs)},
            {"stages": P},
            "equal-window-search",
        )
    T = len(spec.tail)
    a = spec.periodic_constant()
    if a is not None:
        return Verdict(
            "canonbounded",
            Status.FALSE,
            {"constant": a, "from_stage": constant_from(spec)},
            {"stages": P + T},
            "constant-tail",
        )
    runs = equal_windows(spec, P + 3 * T)
    values = sorted({x for st in spec.tail for x in st.spacers})
    return Verdict(
        "canonbounded",
        Status.TRUE,
        {"values": (values[0], values[1]), "k": P + T, "longest_equal_window": max(runs, default=0)},
        {"stages": P + 3 * T},
        "equal-window-bound",
    )
