import enum
from dataclasses import dataclass, field


class Status(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value

    @classmethod
    def of(cls, flag):
        return cls.TRUE if flag else cls.FALSE


@dataclass(frozen=True)
class Verdict:
    """Tri-state decision with the witness that produced it.

    ``certificate`` and ``horizon`` are flat dicts of scalars (ints, strings,
    tuples) so that they serialize to key=value records deterministically.
    """

    property: str
    status: Status
    certificate: dict = field(default_factory=dict)
    horizon: dict = field(default_factory=dict)
    method: str = ""

    @property
    def decided(self):
        return self.status is not Status.UNKNOWN

    def __bool__(self):
        raise TypeError("a Verdict is tri-state; compare .status instead")
