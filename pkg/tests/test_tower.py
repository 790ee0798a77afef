from fractions import Fraction

import pytest

from rankone import decide, params, tower, words
from rankone.errors import BeyondHorizon, CapExceeded, SpacersNotConstant
from rankone.params import ParamSpec, StageSpec
from rankone.tower import Offset, Spacer

from conftest import CHACON, CONST2, ODOMETER, djr


def test_base_measure_examples():
    assert tower.base_measure(CHACON, 0) == Fraction(2, 3)
    assert tower.base_measure(ODOMETER, 3) == Fraction(1, 8)
    assert tower.base_measure(CHACON, 2) == Fraction(2, 27)


def test_base_measure_matches_frequency(specs):
    # Z(v_n)/h_n decreases to λ[B_0]
    for spec in specs[:60]:
        b0 = tower.base_measure(spec, 0)
        freqs = [Fraction(params.zero_count(spec, n), params.height(spec, n)) for n in range(0, 40)]
        assert all(f >= b0 for f in freqs)
        assert all(b <= a for a, b in zip(freqs, freqs[1:]))
        assert freqs[-1] - b0 < Fraction(1, 10 ** 6)


def test_base_measure_coherence(specs):
    for spec in specs[:60]:
        for N in range(4):
            assert tower.base_measure(spec, N) == tower.base_measure(spec, N + 2) * params.cut_product(spec, N, N + 2)
            s = tower.tower_stats(spec, N)
            assert 0 < s.base_measure <= Fraction(1, s.height)


def test_base_measure_interval():
    spec = djr(10)
    iv = tower.base_measure(spec, 0)
    assert iv.low == 0 and iv.high == Fraction(2 ** 10, params.height(spec, 10))
    assert tower.base_measure(spec, 3).high == iv.high / 8
    with pytest.raises(BeyondHorizon):
        tower.base_measure(spec, 11)


def test_tower_mass():
    assert tower.tower_mass(CHACON, 1) == Fraction(8, 9)
    assert tower.tower_mass(CHACON, 0) == Fraction(2, 3)
    assert all(tower.tower_mass(ODOMETER, N) == 1 for N in range(6))


def test_tower_mass_increases(specs):
    for spec in specs[:60]:
        ms = [tower.tower_mass(spec, N) for N in range(10)]
        assert all(a <= b for a, b in zip(ms, ms[1:])) and ms[-1] <= 1


def test_return_levels_examples():
    assert tower.return_levels(CHACON, 0, 1).positions == (0, 1, 3)
    assert tower.return_levels(CHACON, 1, 2).positions == (0, 4, 9)
    assert tower.return_levels(CHACON, 3, 3).positions == (0,)
    with pytest.raises(CapExceeded):
        tower.return_levels(CHACON, 0, 20, cap=1000)


def test_return_levels_duality(specs):
    for spec in specs[:60]:
        for M in range(1, 6):
            for N in range(M + 1):
                rl = tower.return_levels(spec, N, M)
                v_n = words.stage_word(spec, N)
                assert list(rl.positions) == words.occurrence_positions(v_n, words.handle(spec, M), expected_only=True)
                assert len(rl.positions) == words.expected_block_count(spec, N, M)


def test_level_decompose_examples():
    assert tower.level_decompose(CHACON, 2, 8, 1) == Spacer(1, 2, 0)
    assert tower.level_decompose(CHACON, 2, 5, 1) == Offset(4, 1)
    assert tower.level_decompose(CHACON, 2, 0, 0) == Offset(0, 0)


def test_level_decompose_against_word(specs):
    # offsets tile the N-blocks; spacer levels are exactly the 1s outside them
    for spec in specs[:30]:
        M, N = 4, 2
        text = words.stage_word(spec, M)
        hN = params.height(spec, N)
        starts = set(tower.return_levels(spec, N, M).positions)
        for l in range(len(text)):
            c = tower.level_decompose(spec, M, l, N)
            if isinstance(c, Offset):
                assert c.return_level in starts and 0 <= c.offset < hN
                assert c.return_level + c.offset == l
            else:
                assert text[l] == "1" and N <= c.stage < M
                assert 0 <= c.depth < params.stage_at(spec, c.stage).spacers[c.index - 1]


def test_shift_overlap_examples():
    r = tower.shift_overlap(ODOMETER, 0, 2)
    assert (r.r, r.overlap_lower_bound, r.defect_upper_bound) == (4, Fraction(1, 2), Fraction(1))
    assert r.verified
    q4 = ParamSpec((), (StageSpec(4, (1, 1, 1)),))
    r = tower.shift_overlap(q4, 0, 1)
    lam = tower.base_measure(q4, 0)
    assert r.r == params.height(q4, 1) + 1
    assert (r.overlap_lower_bound, r.defect_upper_bound) == (lam * Fraction(3, 4), lam / 2)
    with pytest.raises(SpacersNotConstant):
        tower.shift_overlap(CHACON, 0, 1)


def test_shift_overlap_span():
    r = tower.shift_overlap(CONST2, 1, 2, span=3)
    assert r.blocks == 8 and r.verified
    assert r.defect_upper_bound == 2 * tower.base_measure(CONST2, 1) / 8


def test_certificate_defects_decrease():
    cert = decide.nontrivial_centralizer_certificate(ODOMETER, 5)
    ds = tower.certificate_defects(ODOMETER, 1, cert)
    assert ds == [Fraction(1, 2) / 2 ** k for k in range(5)]
