"""Decision procedures with checkable certificates.

All four main deciders are exact on eventually periodic specs and return
Unknown (with the evidence gathered) on prefix-only ones.
"""

from math import gcd

from . import lattice, params, tower
from .errors import Inapplicable
from .params import ParamSpec
from .verdict import Status, Verdict

SMALL_DIVISORS = 12


def _tail_values(spec):
    return sorted({a for st in spec.tail for a in st.spacers})


def _windows_all_distinct(spec, k, starts):
    """Every stage window [N, N + k) for N in ``starts`` holds two different spacers."""
    for N in starts:
        vals = set()
        for n in range(N, N + k):
            vals.update(params.stage_at(spec, n).spacers)
        if len(vals) < 2:
            return False
    return True


def _first_distinct_pair(spec):
    P = len(spec.prefix)
    first = None
    for t, st in enumerate(spec.tail):
        for i, a in enumerate(st.spacers, 1):
            if first is None:
                first = (P + t, i, a)
            elif a != first[2]:
                return (first[0], first[1]), (P + t, i)
    return None


def decide_trivial_centralizer(spec: ParamSpec) -> Verdict:
    """Trivial centralizer iff some window length k sees two spacer values from every start."""
    P = len(spec.prefix)
    if spec.tail is None:
        runs = lattice.equal_windows(spec, P)
        return Verdict(
            "centralizer",
            Status.UNKNOWN,
            {"longest_equal_window": max(runs, default=0), "windows": tuple(runs)},
            {"stages": P},
            "window-criterion",
        )
    T = len(spec.tail)
    a = spec.periodic_constant()
    if a is not None:
        return Verdict(
            "centralizer",
            Status.FALSE,
            {"constant": a, "from_stage": lattice.constant_from(spec)},
            {"stages": P + T},
            "constant-tail",
        )
    pair = _first_distinct_pair(spec)
    k = P + T
    shortest = next(j for j in range(1, k + 1) if _windows_all_distinct(spec, j, range(P + T)))
    return Verdict(
        "centralizer",
        Status.TRUE,
        {"k": k, "pos1": pair[0], "pos2": pair[1], "shortest_window": shortest},
        {"stages": 2 * (P + T)},
        "window-criterion",
    )


def verify_centralizer_certificate(spec, cert):
    """Independent check of a True certificate by scanning every window start."""
    (n, i), (m, j) = cert["pos1"], cert["pos2"]
    if params.stage_at(spec, n).spacers[i - 1] == params.stage_at(spec, m).spacers[j - 1]:
        return False
    P, T = len(spec.prefix), len(spec.tail)
    # windows starting later repeat those starting in [P, P + T)
    return _windows_all_distinct(spec, cert["k"], range(P + T))


def witness_condition_iii(spec, d, N, horizon):
    """Least (n, i), N <= n < horizon, with d not dividing h_N + a_{n,i}."""
    if d < 2:
        raise ValueError("d must be at least 2")
    hN = params.height(spec, N)
    for n in range(N, horizon):
        for i, a in enumerate(params.stage_at(spec, n).spacers, 1):
            if (hN + a) % d:
                return n, i
    return None


def return_offsets(spec, n):
    """l_0 = 0, l_{j+1} = l_j + h_n + a_{n,j+1}: the copies of v_n in v_{n+1}."""
    return tower.block_offsets(spec, n)


def witness_condition_iv(spec, d, N, horizon):
    """Least (n, l), N <= n < horizon, with l a copy offset of stage n and d not dividing l."""
    if d < 2:
        raise ValueError("d must be at least 2")
    for n in range(N, horizon):
        for l in return_offsets(spec, n):
            if l % d:
                return n, l
    return None


def witness_condition_ii(spec, d, N, horizon, cap=tower.LEVEL_CAP):
    """Some k = l' - l between return levels of B_N in a stage-M tower with d not dividing k.

    Level 0 is always a return level, so a level l not divisible by d is
    itself a witness; the least one over stages N+1 .. horizon is returned.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    for M in range(N + 1, horizon + 1):
        bad = [l for l in tower.return_levels(spec, N, M, cap).positions if l % d]
        if bad:
            return bad[0]
    return None


def _divisors(n):
    return [d for d in range(2, n + 1) if n % d == 0]


def _congruent_from(spec, d, c):
    """First stage after which every spacer is congruent to c mod d."""
    n = len(spec.prefix)
    while n > 0 and all(a % d == c for a in spec.prefix[n - 1].spacers):
        n -= 1
    return n


def _search_divisor(spec, d):
    """Least N with d | h_N + a_{n,i} for all n >= N and all i, or None.

    Walks N upward from the first stage where the spacers settle mod d,
    tracking (tail phase, h_N mod d) until a state repeats.
    """
    P, T = len(spec.prefix), len(spec.tail)
    c = spec.tail[0].spacers[0] % d
    n = _congruent_from(spec, d, c)
    h = params.height(spec, n) % d
    seen = {}
    while True:
        if (h + c) % d == 0:
            return n, None
        if n >= P:
            key = ((n - P) % T, h)
            if key in seen:
                return None, (seen[key], n - seen[key])
            seen[key] = n
        st = params.stage_at(spec, n)
        h = (st.q * h + st.total) % d
        n += 1


def decide_total_ergodicity(spec: ParamSpec) -> Verdict:
    P = len(spec.prefix)
    if spec.tail is None:
        open_d = tuple(
            d for d in range(2, SMALL_DIVISORS + 1)
            if any(witness_condition_iii(spec, d, N, P) is None for N in range(P))
        )
        return Verdict("ergodic", Status.UNKNOWN, {"unrefuted_divisors": open_d}, {"stages": P}, "divisor-search")
    T = len(spec.tail)
    a = spec.periodic_constant()
    if a is not None:
        N = max(1, lattice.constant_from(spec))
        return Verdict(
            "ergodic", Status.FALSE, {"d": params.height(spec, N) + a, "N": N}, {"stages": P + T}, "constant-tail"
        )
    vals = _tail_values(spec)
    D = 0
    for v in vals[1:]:
        D = gcd(D, v - vals[0])
    cycles = []
    for d in _divisors(D):
        N, cyc = _search_divisor(spec, d)
        if N is not None:
            return Verdict("ergodic", Status.FALSE, {"d": d, "N": N}, {"D": D, "divisors": tuple(_divisors(D))}, "divisor-cycle")
        cycles.append((d,) + cyc)
    return Verdict(
        "ergodic",
        Status.TRUE,
        {"D": D, "divisors": tuple(_divisors(D)), "cycles": tuple(cycles)},
        {"D": D, "stages": P + T},
        "divisor-cycle",
    )


def verify_failure_certificate(spec, d, N):
    """A (d, N) failure holds iff no condition-(iii) witness exists over one full period past N."""
    if d < 2 or spec.tail is None:
        return False
    horizon = max(N, len(spec.prefix)) + len(spec.tail) + 1
    return witness_condition_iii(spec, d, N, horizon) is None


def _bundle(prefix, v):
    out = {f"{prefix}.status": str(v.status)}
    out.update({f"{prefix}.{k}": x for k, x in v.certificate.items()})
    return out


def decide_msj(spec: ParamSpec) -> Verdict:
    """Minimal self-joinings: trivial centralizer and total ergodicity together."""
    c = decide_trivial_centralizer(spec)
    e = decide_total_ergodicity(spec)
    if Status.FALSE in (c.status, e.status):
        status = Status.FALSE
    elif c.status is e.status is Status.TRUE:
        status = Status.TRUE
    else:
        status = Status.UNKNOWN
    cert = _bundle("centralizer", c)
    cert.update(_bundle("ergodic", e))
    horizon = {f"centralizer.{k}": x for k, x in c.horizon.items()}
    horizon.update({f"ergodic.{k}": x for k, x in e.horizon.items()})
    return Verdict("msj", status, cert, horizon, "conjunction")


def decide_weak_mixing(spec: ParamSpec) -> Verdict:
    """Equal to total ergodicity for canonically bounded specs; always implies it."""
    e = decide_total_ergodicity(spec)
    cert = _bundle("ergodic", e)
    if e.status is Status.FALSE:
        return Verdict("weakmixing", Status.FALSE, cert, e.horizon, "necessary-condition")
    b = lattice.is_canonically_bounded(spec)
    cert.update(_bundle("canonbounded", b))
    if b.status is Status.TRUE:
        return Verdict("weakmixing", e.status, cert, e.horizon, "bounded-equivalence")
    return Verdict("weakmixing", Status.UNKNOWN, cert, e.horizon, "hypotheses-not-met")


def nontrivial_centralizer_certificate(spec: ParamSpec, count: int = 3):
    """Stages n_k with shifts r_k = h_{n_k} + a, for a constant tail value a.

    Each shift moves all but one copy of v_{n_k} in v_{n_k + 1} onto the next
    copy, so the r_k shifts tend to the identity against any fixed base.
    """
    a = spec.periodic_constant()
    if a is None:
        raise Inapplicable("the tail is not constant, so the centralizer is trivial")
    start = max(1, lattice.constant_from(spec))
    return [(n, params.height(spec, n) + a) for n in range(start, start + count)]
