"""
Error-free asynchronous reliable broadcast for t < n/3. Parties announce consistency with OK messages, grow their
graph edge by edge until STAR yields an E-set, reliably broadcast a single availability bit, and decode the
majority values online, tolerating more errors as more values arrive.
"""
from functools import partial
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from bbext.errors import DecodeFailure
from bbext.oracles import decode_bit, encode_bit, spawn_broadcast
from bbext.protocols.error_free import (
    block_shares,
    decode_majorities,
    find_eset,
    from_vector,
    select_majority,
    share_bytes,
    to_vector,
)
from bbext.protocols.messages import ESetMsg, ExchangeMsg, MajorityMsg, OkMsg, PayloadMsg
from bbext.simnet.context import AsyncHandler, PartyContext
from bbext.simnet.envelope import Envelope
from bbext.star import PartyGraph
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


class AsyncErrorFreeRB(AsyncHandler):
    def __init__(self, ctx: PartyContext, value: Optional[bytes], sender: int):
        super().__init__(ctx)
        self.sender = sender
        self.value = value if ctx.party == sender else None
        self.shares: Optional[List[bytes]] = None
        self._payload_seen = False
        self.exchanges: Dict[int, ExchangeMsg] = {}
        self._oks_sent: Set[int] = set()
        self._ok_claims: Set[Tuple[int, int]] = set()
        self.edges: Set[Tuple[int, int]] = set()
        self.eset: Optional[FrozenSet[int]] = None
        self.availability: Dict[int, int] = {}
        self.esets: Dict[int, FrozenSet[int]] = {}
        self.majority_sent = False
        self.majorities: Dict[int, Optional[bytes]] = {}
        self._decoded_at = 0
        self.done = False
        self._own_availability = None

    def start(self):
        ctx = self.ctx
        ctx.proc.phase = "exchange"
        for j in ctx.params.parties:
            handler = spawn_broadcast(ctx, ("avail", j), j, 1, partial(self._on_availability, j))
            if j == ctx.party:
                self._own_availability = handler
        if ctx.party == self.sender:
            ctx.multicast(PayloadMsg(self.value))
            self._set_message(self.value)

    def _set_message(self, message: bytes):
        ctx = self.ctx
        self._payload_seen = True
        self.shares = block_shares(ctx, message)
        me = ctx.party
        for j in ctx.params.parties:
            if j != me:
                ctx.send(j, ExchangeMsg(self.shares[me - 1], self.shares[j - 1]))
        for j in list(self.exchanges):
            self._check_exchange(j)
        self._try_majority()

    def on_message(self, envelope: Envelope):
        msg, source = envelope.payload, envelope.sender
        if isinstance(msg, PayloadMsg):
            if source == self.sender and not self._payload_seen:
                if isinstance(msg.message, bytes) and len(msg.message) == self.ctx.params.message_bytes:
                    self._set_message(msg.message)
                else:
                    self._payload_seen = True
        elif isinstance(msg, ExchangeMsg):
            if source not in self.exchanges:
                self.exchanges[source] = msg
                self._check_exchange(source)
                self._try_majority()
        elif isinstance(msg, OkMsg):
            self._on_ok(source, msg.subject)
        elif isinstance(msg, ESetMsg):
            if source not in self.esets:
                self.esets[source] = from_vector(self.ctx, msg.vector)
                self._try_majority()
        elif isinstance(msg, MajorityMsg):
            if source not in self.majorities:
                self.majorities[source] = msg.value
                self._try_decode()

    def _check_exchange(self, j: int):
        if self.shares is None or j in self._oks_sent or j == self.ctx.party:
            return
        if self.exchanges[j].diagonal == self.shares[j - 1]:
            self._oks_sent.add(j)
            self.ctx.send_all(OkMsg(j))

    def _on_ok(self, x: int, y: int):
        if not isinstance(y, int) or x == y or not 1 <= y <= self.ctx.n:
            return
        self._ok_claims.add((x, y))
        edge = (min(x, y), max(x, y))
        if self.eset is not None or edge in self.edges or (y, x) not in self._ok_claims:
            return
        self.edges.add(edge)
        eset = find_eset(PartyGraph.from_edges(self.ctx.n, self.edges), self.ctx.n, self.ctx.t)
        if eset is not None:
            self._found_eset(eset)

    def _found_eset(self, eset: FrozenSet[int]):
        self.eset = eset
        self.ctx.proc.phase = "availability"
        logger.debug(f"party {self.ctx.party}: E-set of {len(eset)} parties after {len(self.edges)} edges")
        self._own_availability.provide(encode_bit(1))
        self.ctx.send_all(ESetMsg(to_vector(self.ctx, eset)))

    def _on_availability(self, owner: int, value: Optional[bytes]):
        self.availability[owner] = decode_bit(value)
        self._try_majority()

    def _cross(self) -> Dict[int, bytes]:
        cross = {j: msg.cross for j, msg in self.exchanges.items()}
        if self.shares is not None:
            cross[self.ctx.party] = self.shares[self.ctx.party - 1]
        return cross

    def _try_majority(self):
        if self.majority_sent:
            return
        ones = {owner for owner, bit in self.availability.items() if bit == 1}
        if len(ones) < 2 * self.ctx.t + 1:
            return
        esets = {owner: members for owner, members in self.esets.items() if owner in ones}
        majority = select_majority(esets, self._cross(), self.ctx.t)
        if majority is None:
            return
        self.majority_sent = True
        self.ctx.proc.phase = "majority"
        self.ctx.send_all(MajorityMsg(majority))

    def _try_decode(self):
        n, t = self.ctx.n, self.ctx.t
        received = len(self.majorities)
        if self.done or received < 2 * t + 1 or received <= self._decoded_at:
            return
        self._decoded_at = received
        errors = min(received - 2 * t - 1, (received - t - 1) // 2)
        size = share_bytes(self.ctx)
        # a malformed value that arrived is an error within c, only absent values are erasures
        values = [self._majority_block(j, size) for j in self.ctx.params.parties]
        try:
            result = decode_majorities(self.ctx, values, c=errors, d=n - received)
        except DecodeFailure:
            return
        self.done = True
        self.ctx.proc.phase = "output"
        self.ctx.output(result)

    def _majority_block(self, j: int, size: int) -> Optional[bytes]:
        if j not in self.majorities:
            return None
        value = self.majorities[j]
        return value if isinstance(value, bytes) and len(value) == size else bytes(size)


def async_ef_rb(ctx: PartyContext, value: Optional[bytes], sender: int) -> AsyncErrorFreeRB:
    return AsyncErrorFreeRB(ctx, value, sender)
