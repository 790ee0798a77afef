"""Built-in parameter sets."""

from math import isqrt

from .params import ParamSpec, StageSpec


def chacon():
    return ParamSpec((), (StageSpec(3, (0, 1)),), "chacon")


def odometer2():
    return ParamSpec((), (StageSpec(2, (0,)),), "odometer2")


def triangular(n):
    r = isqrt(8 * n + 1)
    return n > 0 and r * r == 8 * n + 1


def djr(stages=16):
    """q = 2 throughout, one spacer at stage m exactly when m + 1 is triangular."""
    return ParamSpec(
        tuple(StageSpec(2, (1 if triangular(m + 1) else 0,)) for m in range(stages)),
        None,
        f"djr{stages}",
    )


BUILTIN = {"chacon": chacon, "odometer2": odometer2, "djr": djr}
