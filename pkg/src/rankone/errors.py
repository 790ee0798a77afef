"""Exception hierarchy shared by every module."""


class RankOneError(Exception):
    """Base class for all errors raised by rankone."""


class SpecError(RankOneError, ValueError):
    """A parameter set violates a structural invariant."""


class SpacerCountMismatch(SpecError):
    pass


class CutTooSmall(SpecError):
    pass


class NegativeSpacer(SpecError):
    pass


class EmptyTail(SpecError):
    pass


class BeyondHorizon(RankOneError, LookupError):
    """A stage past the end of a prefix-only parameter set was requested."""

    def __init__(self, stage, horizon):
        super().__init__(f"stage {stage} is beyond the horizon of {horizon} defined stages")
        self.stage = stage
        self.horizon = horizon


class CapExceeded(RankOneError):
    """Materializing or enumerating would exceed the configured cap."""

    def __init__(self, required, cap, what="symbols"):
        super().__init__(f"need {required} {what}, cap is {cap}")
        self.required = required
        self.cap = cap


class NotAStageWord(RankOneError, ValueError):
    pass


class NotInSet(RankOneError, KeyError):
    pass


class NoUpperBoundInHorizon(RankOneError):
    pass


class LatticeViolation(RankOneError, AssertionError):
    """An internal consistency check on the candidate lattice failed."""


class SpacersNotConstant(RankOneError, ValueError):
    pass


class Inapplicable(RankOneError):
    pass
