"""
Asynchronous extension protocols for t < n/3. Every step fires as soon as its inputs are there:
agreement needs k-bit and 1-bit asynchronous BA, reliable broadcast needs a k-bit reliable broadcast.
"""
from typing import Dict, List, Optional, Sequence

from bbext.authentic import AccValue
from bbext.blocks import (
    IndexedShare,
    PackageMsg,
    SharePackage,
    accumulate,
    distribute,
    encode,
    reconstruct,
    verify_package,
)
from bbext.errors import InvariantViolation, ReconstructionFailure
from bbext.oracles import OracleKind, decode_bit, encode_bit, spawn_agreement, spawn_broadcast
from bbext.protocols.common import claims_happy, slot_list
from bbext.protocols.messages import ForwardMsg, PayloadMsg
from bbext.simnet.context import AsyncHandler, PartyContext
from bbext.simnet.envelope import Envelope
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


class _Dissemination(AsyncHandler):
    """
    The package flow shared by both protocols once z is fixed: forward one's own valid package once, then either
    output one's own message (happy) or reconstruct from n - t valid forwarded packages.
    """

    def __init__(self, ctx: PartyContext):
        super().__init__(ctx)
        self.z: Optional[AccValue] = None
        self.message: Optional[bytes] = None
        self.shares: Optional[Sequence[IndexedShare]] = None
        self.happy = False
        self.active = False
        self.done = False
        self.forwarded = False
        self.slots: Dict[int, SharePackage] = {}
        self._packages: List[SharePackage] = []
        self._forwards: List[Envelope] = []

    def on_message(self, envelope: Envelope):
        payload = envelope.payload
        if isinstance(payload, PackageMsg):
            self._packages.append(payload.package)
        elif isinstance(payload, ForwardMsg):
            self._forwards.append(envelope)
        else:
            self.on_other(envelope)
            return
        self._progress()

    def on_other(self, envelope: Envelope):
        pass

    def _forward(self):
        for package in self._packages:
            if verify_package(self.ctx.acc_key, self.z, package, index=self.ctx.party):
                self.forwarded = True
                self.slots.setdefault(self.ctx.party, package)
                self.ctx.multicast(ForwardMsg(package))
                return
        self._packages.clear()

    def _progress(self):
        if not self.active or self.done:
            return
        if not self.forwarded:
            self._forward()
            if not self.forwarded:
                return
        if self.happy:
            self.done = True
            self.ctx.output(self.message)
            return
        for envelope in self._forwards:
            if envelope.sender not in self.slots:
                if verify_package(self.ctx.acc_key, self.z, envelope.payload.package, index=envelope.sender):
                    self.slots[envelope.sender] = envelope.payload.package
        self._forwards.clear()
        if len(self.slots) >= self.ctx.n - self.ctx.t:
            self._reconstruct()

    def _reconstruct(self):
        try:
            result = reconstruct(slot_list(self.ctx, self.slots), self.ctx.acc_key, self.z, d0=self.ctx.t)
        except ReconstructionFailure as e:
            raise InvariantViolation(
                f"reconstruction failed with {len(self.slots)} valid packages: {e}", self.ctx.party
            )
        self.done = True
        self.ctx.proc.packages.update(self.slots)
        self.ctx.output(result)


class AsyncThirdBA(_Dissemination):
    def __init__(self, ctx: PartyContext, value: bytes, sender: Optional[int] = None):
        super().__init__(ctx)
        params = ctx.params
        self.message = value
        self.shares = encode(value, params.b, params.n)
        self.z_i = accumulate(ctx.acc_key, self.shares)

    def start(self):
        self.ctx.proc.phase = "agree-z"
        z_ba = spawn_agreement(self.ctx, "z", OracleKind.ASYNC_BA_KBIT, self.ctx.params.k, self._on_z)
        z_ba.provide(self.z_i.data)

    def _on_z(self, agreed: Optional[bytes]):
        if isinstance(agreed, bytes):
            self.z = AccValue(agreed, self.z_i.nominal_bits)
        self.happy = self.z == self.z_i
        if self.happy:
            self.ctx.set_happy()
        self.ctx.proc.phase = "agree-happy"
        happy_ba = spawn_agreement(self.ctx, "happy", OracleKind.ASYNC_BA_BIT, 1, self._on_decision)
        happy_ba.provide(encode_bit(claims_happy(self.ctx, self.happy)))

    def _on_decision(self, decision: Optional[bytes]):
        if decode_bit(decision) != 1 or self.z is None:
            self.done = True
            self.ctx.proc.phase = "aborted"
            self.ctx.output(None)
            return
        self.active = True
        self.ctx.proc.phase = "disseminate"
        if self.happy:
            distribute(self.ctx, self.shares, self.ctx.acc_key, self.z)
        self._progress()


class AsyncThirdRB(_Dissemination):
    """
    The sender sends m and reliably broadcasts z_s. Reconstructed outputs are accepted only if they re-encode to z
    and are then distributed again, which carries every honest party to the output.
    """

    def __init__(self, ctx: PartyContext, value: Optional[bytes], sender: int):
        super().__init__(ctx)
        self.sender = sender
        self.value = value if ctx.party == sender else None
        self._payload_seen = False

    def start(self):
        self.ctx.proc.phase = "broadcast-z"
        rb = spawn_broadcast(self.ctx, "z", self.sender, self.ctx.params.k, self._on_z)
        if self.ctx.party == self.sender:
            self.ctx.multicast(PayloadMsg(self.value))
            self._set_message(self.value)
            rb.provide(accumulate(self.ctx.acc_key, self.shares).data)

    def _set_message(self, message: bytes):
        self._payload_seen = True
        self.message = message
        self.shares = encode(message, self.ctx.params.b, self.ctx.params.n)
        self._check_happy()

    def on_other(self, envelope: Envelope):
        payload = envelope.payload
        if isinstance(payload, PayloadMsg) and envelope.sender == self.sender and not self._payload_seen:
            if isinstance(payload.message, bytes) and len(payload.message) == self.ctx.params.message_bytes:
                self._set_message(payload.message)
            else:
                self._payload_seen = True

    def _on_z(self, value: Optional[bytes]):
        if not isinstance(value, bytes):
            return
        self.z = AccValue(value, self.ctx.sizes.acc_value_bits)
        self.active = True
        self.ctx.proc.phase = "disseminate"
        self._check_happy()
        self._progress()

    def _check_happy(self):
        if self.z is None or self.shares is None or self.happy or self.done:
            return
        if accumulate(self.ctx.acc_key, self.shares) == self.z:
            self.happy = True
            self.ctx.set_happy()
            distribute(self.ctx, self.shares, self.ctx.acc_key, self.z)
            self._progress()

    def _reconstruct(self):
        params = self.ctx.params
        try:
            result = reconstruct(slot_list(self.ctx, self.slots), self.ctx.acc_key, self.z, d0=params.t)
        except ReconstructionFailure:
            return
        shares = encode(result, params.b, params.n)
        # a corrupt sender may have committed to something that is not a codeword
        if accumulate(self.ctx.acc_key, shares) != self.z:
            return
        self.done = True
        self.ctx.proc.packages.update(self.slots)
        self.ctx.output(result)
        distribute(self.ctx, shares, self.ctx.acc_key, self.z, label="redistribute")


def async_third_ba(ctx: PartyContext, value: bytes, sender: Optional[int] = None) -> AsyncThirdBA:
    return AsyncThirdBA(ctx, value, sender)


def async_third_rb(ctx: PartyContext, value: Optional[bytes], sender: int) -> AsyncThirdRB:
    return AsyncThirdRB(ctx, value, sender)
