from dataclasses import dataclass, field
from typing import Callable, List, Optional

MAX_DETAILS = 5


@dataclass
class PropertyResult:
    """Outcome of one property over many trials; only the first few failures keep their details"""

    name: str
    trials: int = 0
    failures: int = 0
    details: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, detail: Optional[str] = None):
        self.trials += 1
        if not ok:
            self.failures += 1
            if detail and len(self.details) < MAX_DETAILS:
                self.details.append(detail)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "failures": self.failures,
            "ok": self.ok,
            "details": list(self.details),
        }


Suite = Callable[[float, int], List[PropertyResult]]


def scaled(count: int, scale: float, minimum: int = 1) -> int:
    return max(minimum, int(round(count * scale)))
