from dataclasses import dataclass
from typing import Any, ClassVar, Optional, Protocol, Tuple

from bbext.authentic.sizes import SizeModel

Scope = Tuple[str, ...]


class Message(Protocol):
    """Anything sent between nodes: a frozen dataclass with a ``kind`` and a nominal size"""

    kind: ClassVar[str]

    def nominal_bits(self, sizes: SizeModel) -> int:
        ...


@dataclass(frozen=True)
class Envelope:
    """
    One message in flight.

    :param seq: global send order, unique within a run
    :param tag: instance path of the (sub-)protocol that sent it; it is delivered to the same path at the recipient
    :param bits: accounted size, zero for self-sends and traffic of the trusted functionality
    :param label: protocol step the bits are charged to
    :param oracle_kind: set when the message belongs to an oracle sub-protocol; bits are then charged to the oracle
    :param sent_at: round (rounds mode) or scheduling step (events mode) at submission
    """

    seq: int
    sender: int
    recipient: int
    tag: Scope
    payload: Any
    bits: int
    label: str
    oracle_kind: Optional[str]
    sent_at: int

    @property
    def kind(self) -> str:
        return getattr(self.payload, "kind", type(self.payload).__name__)
