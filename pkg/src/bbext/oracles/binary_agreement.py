"""
Randomized binary agreement for t < n/3 with a common coin: binary-value broadcast of estimates, one AUX vote
per round and a coin tie-break. Decided parties announce TERM; t + 1 matching TERMs decide, n - t halt.
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, ClassVar, Dict, List, Optional, Set, Tuple

from bbext.authentic import SizeModel
from bbext.constants import MAX_BINARY_AGREEMENT_ROUNDS
from bbext.errors import SchedulerError
from bbext.oracles.base import decode_bit, encode_bit
from bbext.simnet.context import AsyncHandler, PartyContext
from bbext.simnet.envelope import Envelope
from bbext.utils.logging import get_logger

logger = get_logger(__name__)

# round numbers ride on the instance scope convention and are not charged
BINARY_MESSAGE_BITS = 2


@dataclass(frozen=True)
class EstMsg:
    kind: ClassVar[str] = "aba_est"
    round_no: int
    bit: int

    def nominal_bits(self, sizes: SizeModel) -> int:
        return BINARY_MESSAGE_BITS


@dataclass(frozen=True)
class AuxMsg:
    kind: ClassVar[str] = "aba_aux"
    round_no: int
    bit: int

    def nominal_bits(self, sizes: SizeModel) -> int:
        return BINARY_MESSAGE_BITS


@dataclass(frozen=True)
class TermMsg:
    kind: ClassVar[str] = "aba_term"
    bit: int

    def nominal_bits(self, sizes: SizeModel) -> int:
        return BINARY_MESSAGE_BITS


class AsyncBinaryAgreement(AsyncHandler):
    def __init__(self, ctx: PartyContext, on_output: Callable[[Optional[bytes]], None]):
        super().__init__(ctx)
        self._on_output = on_output
        self.round_no = 0
        self.estimate: Optional[int] = None
        self.decided: Optional[int] = None
        self.decided_round: Optional[int] = None
        self.halted = False
        self._est_from: Dict[Tuple[int, int], Set[int]] = defaultdict(set)
        self._est_sent: Set[Tuple[int, int]] = set()
        self._bin_values: Dict[int, List[int]] = defaultdict(list)
        self._aux: Dict[int, Dict[int, int]] = defaultdict(dict)
        self._aux_sent: Set[int] = set()
        self._term_from: Dict[int, Set[int]] = defaultdict(set)
        self._term_sent = False

    def provide(self, value: Optional[bytes]):
        if self.round_no or self.halted:
            return
        self.round_no = 1
        self.estimate = decode_bit(value)
        self._send_est(1, self.estimate)
        # estimates that reached t + 1 senders before the input arrived still have to be relayed
        for (round_no, bit), senders in sorted(self._est_from.items()):
            if len(senders) >= self.ctx.t + 1:
                self._send_est(round_no, bit)
        self._progress()

    def _send_est(self, round_no: int, bit: int):
        if (round_no, bit) not in self._est_sent:
            self._est_sent.add((round_no, bit))
            self.ctx.send_all(EstMsg(round_no, bit))

    def _decide(self, bit: int):
        if self.decided is not None:
            return
        self.decided = bit
        self.decided_round = self.round_no
        if not self._term_sent:
            self._term_sent = True
            self.ctx.send_all(TermMsg(bit))
        logger.debug(f"party {self.ctx.party}: binary agreement decided {bit} in round {self.round_no}")
        self._on_output(encode_bit(bit))

    def on_message(self, envelope: Envelope):
        if self.halted:
            return
        msg, source = envelope.payload, envelope.sender
        if isinstance(msg, EstMsg) and msg.bit in (0, 1) and msg.round_no >= 1:
            senders = self._est_from[(msg.round_no, msg.bit)]
            senders.add(source)
            if len(senders) >= self.ctx.t + 1 and self.round_no >= 1:
                self._send_est(msg.round_no, msg.bit)
            if len(senders) >= 2 * self.ctx.t + 1 and msg.bit not in self._bin_values[msg.round_no]:
                self._bin_values[msg.round_no].append(msg.bit)
        elif isinstance(msg, AuxMsg) and msg.bit in (0, 1):
            self._aux[msg.round_no].setdefault(source, msg.bit)
        elif isinstance(msg, TermMsg) and msg.bit in (0, 1):
            self._term_from[msg.bit].add(source)
            if len(self._term_from[msg.bit]) >= self.ctx.t + 1:
                self._decide(msg.bit)
            if len(self._term_from[msg.bit]) >= self.ctx.n - self.ctx.t:
                self.halted = True
                return
        self._progress()

    def _coin(self, round_no: int) -> int:
        if round_no == 1:
            return 1
        return self.ctx.coin.query(self.ctx.scope, round_no, honest=not self.ctx.coalition)

    def _progress(self):
        while self.round_no and not self.halted:
            round_no = self.round_no
            bin_values = self._bin_values[round_no]
            if not bin_values:
                return
            if round_no not in self._aux_sent:
                self._aux_sent.add(round_no)
                self.ctx.send_all(AuxMsg(round_no, bin_values[0]))
            supported = [bit for bit in self._aux[round_no].values() if bit in bin_values]
            if len(supported) < self.ctx.n - self.ctx.t:
                return
            values = set(supported)
            coin = self._coin(round_no)
            if len(values) == 1:
                (bit,) = values
                if bit == coin:
                    self._decide(bit)
                estimate = bit
            else:
                estimate = coin
            if round_no >= MAX_BINARY_AGREEMENT_ROUNDS:
                raise SchedulerError(f"binary agreement still running after {round_no} rounds")
            self.round_no = round_no + 1
            self.estimate = estimate
            self._send_est(self.round_no, estimate)
