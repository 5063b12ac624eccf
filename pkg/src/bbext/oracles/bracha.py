import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, ClassVar, Dict, Optional, Set

from bbext.authentic import SizeModel
from bbext.simnet.context import AsyncHandler, PartyContext
from bbext.simnet.envelope import Envelope


@dataclass(frozen=True)
class BrachaMsg:
    kind: ClassVar[str] = "bracha"
    phase: str
    value: bytes
    value_bits: int

    def nominal_bits(self, sizes: SizeModel) -> int:
        return self.value_bits


SEND, ECHO, READY = "send", "echo", "ready"


class BrachaBroadcast(AsyncHandler):
    """
    Reliable broadcast for t < n/3: echo the sender's value once, send READY after ⌈(n+t+1)/2⌉ matching echoes
    or t + 1 matching readies, deliver after 2t + 1 matching readies.
    """

    def __init__(
        self, ctx: PartyContext, sender: int, value_bits: int, on_output: Callable[[Optional[bytes]], None]
    ):
        super().__init__(ctx)
        self.sender = sender
        self.value_bits = value_bits
        self._on_output = on_output
        self.echoes: Dict[bytes, Set[int]] = defaultdict(set)
        self.readies: Dict[bytes, Set[int]] = defaultdict(set)
        self.echo_sent = False
        self.ready_sent = False
        self.delivered = False
        self.value: Optional[bytes] = None
        self.echo_threshold = math.ceil((ctx.n + ctx.t + 1) / 2)

    def provide(self, value: Optional[bytes]):
        if self.ctx.party == self.sender and isinstance(value, bytes):
            self.ctx.send_all(BrachaMsg(SEND, value, self.value_bits))

    def _ready(self, value: bytes):
        if not self.ready_sent:
            self.ready_sent = True
            self.ctx.send_all(BrachaMsg(READY, value, self.value_bits))

    def on_message(self, envelope: Envelope):
        msg = envelope.payload
        if not isinstance(msg, BrachaMsg) or not isinstance(msg.value, bytes):
            return
        if msg.phase == SEND:
            if envelope.sender == self.sender and not self.echo_sent:
                self.echo_sent = True
                self.ctx.send_all(BrachaMsg(ECHO, msg.value, self.value_bits))
        elif msg.phase == ECHO:
            self.echoes[msg.value].add(envelope.sender)
            if len(self.echoes[msg.value]) >= self.echo_threshold:
                self._ready(msg.value)
        elif msg.phase == READY:
            self.readies[msg.value].add(envelope.sender)
            if len(self.readies[msg.value]) >= self.ctx.t + 1:
                self._ready(msg.value)
            if len(self.readies[msg.value]) >= 2 * self.ctx.t + 1 and not self.delivered:
                self.delivered = True
                self.value = msg.value
                self._on_output(msg.value)
