from fractions import Fraction

import pytest

from rankone import params
from rankone.errors import BeyondHorizon, CutTooSmall, EmptyTail, NegativeSpacer, SpacerCountMismatch
from rankone.params import ParamSpec, StageSpec, validate_spec
from rankone.words import stage_word

from conftest import CHACON, ODOMETER


def test_validate_chacon():
    spec = validate_spec({"prefix": [(3, (0, 1))], "tail": [{"q": 3, "a": [0, 1]}]})
    assert spec.prefix == (StageSpec(3, (0, 1)),)
    assert not spec.horizon_limited


@pytest.mark.parametrize(
    "stage, err",
    [((2, (0, 0)), SpacerCountMismatch), ((1, ()), CutTooSmall), ((3, (0, -1)), NegativeSpacer)],
)
def test_validate_rejects(stage, err):
    with pytest.raises(err):
        validate_spec({"prefix": [stage]})


def test_empty_tail():
    with pytest.raises(EmptyTail):
        validate_spec({"prefix": [], "tail": []})


def test_stage_at():
    assert params.stage_at(ODOMETER, 7) == StageSpec(2, (0,))
    assert params.stage_at(CHACON, 0) == StageSpec(3, (0, 1))
    short = ParamSpec((StageSpec(2, (0,)), StageSpec(2, (1,))))
    with pytest.raises(BeyondHorizon):
        params.stage_at(short, 5)


def test_heights():
    assert params.heights(CHACON, 3) == [1, 4, 13, 40]
    assert params.heights(ODOMETER, 3) == [1, 2, 4, 8]
    assert params.heights(ParamSpec((), (StageSpec(2, (3,)),)), 2) == [1, 5, 13]


def test_heights_match_words_and_double(specs):
    for spec in specs[:50]:
        hs = params.heights(spec, 6)
        assert all(b >= 2 * a for a, b in zip(hs, hs[1:]))
        assert len(stage_word(spec, 5)) == hs[5]


def test_heights_big_integers():
    spec = ParamSpec((), (StageSpec(5, (3, 3, 3, 3)),))
    h = params.height(spec, 60)
    assert h > 2 ** 63
    assert h == 5 * params.height(spec, 59) + 12


def test_bounds():
    assert params.bounds(CHACON) == (3, 1)
    assert params.bounds(ODOMETER) == (2, 0)
    spec = ParamSpec((StageSpec(4, (2, 0, 5)),), (StageSpec(2, (1,)),))
    assert params.bounds(spec) == (4, 5)
    with pytest.raises(BeyondHorizon):
        params.bounds(ParamSpec((StageSpec(2, (0,)),)))


def test_finiteness_margin():
    assert params.finiteness_margin(ODOMETER, 0) == 0
    m = params.finiteness_margin(CHACON, 0)
    assert 0 < m < 1
    # exact terms alone: 1/h_{n+1} at every Chacon stage
    exact = sum(Fraction(1, h) for h in params.heights(CHACON, 21)[1:])
    assert exact <= m
    with pytest.raises(BeyondHorizon):
        params.finiteness_margin(ParamSpec((StageSpec(2, (0,)),)), 0)


def test_finiteness_margin_decreases(specs):
    for spec in specs[:40]:
        ms = [params.finiteness_margin(spec, N) for N in range(0, 8)]
        assert all(b <= a for a, b in zip(ms, ms[1:]))


def test_gap_at_matches_word(specs):
    for spec in specs[:40]:
        w = stage_word(spec, 4)
        zeros = [i for i, c in enumerate(w) if c == "0"]
        gaps = [b - a - 1 for a, b in zip(zeros, zeros[1:])]
        assert [params.gap_at(spec, j) for j in range(1, len(zeros))] == gaps


def test_zero_count_and_cut_product():
    assert params.zero_count(CHACON, 4) == 81
    assert params.cut_product(CHACON, 1, 3) == 9
