import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from rankone.params import ParamSpec, StageSpec  # noqa: E402

SEED = 20240611
N_RANDOM = 200


def random_stage(rng):
    q = rng.randint(2, 5)
    return StageSpec(q, tuple(rng.randint(0, 3) for _ in range(q - 1)))


def random_specs(n=N_RANDOM, seed=SEED):
    """Eventually periodic specs with q <= 5, spacers <= 3, prefix <= 3, period <= 4."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        prefix = tuple(random_stage(rng) for _ in range(rng.randint(0, 3)))
        tail = tuple(random_stage(rng) for _ in range(rng.randint(1, 4)))
        out.append(ParamSpec(prefix, tail, f"rand{i:03d}"))
    return out


CHACON = ParamSpec((), (StageSpec(3, (0, 1)),), "chacon")
ODOMETER = ParamSpec((), (StageSpec(2, (0,)),), "odometer2")
CONST2 = ParamSpec((), (StageSpec(2, (2,)),), "const-q2-a2")


def djr(stages=16):
    tri = {k * (k + 1) // 2 for k in range(1, stages + 2)}
    return ParamSpec(tuple(StageSpec(2, (1 if m + 1 in tri else 0,)) for m in range(stages)), None, f"djr{stages}")


@pytest.fixture(scope="session")
def specs():
    return random_specs()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
