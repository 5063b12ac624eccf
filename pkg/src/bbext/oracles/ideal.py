"""
Ideal oracles: a trusted functionality (party id 0) collects the inputs of every instance and hands the output to
all parties. Traffic to and from it is free; each firing charges the oracle's model cost to the honest parties.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Sequence, Set, Tuple

from bbext.constants import FUNCTIONALITY_ID
from bbext.errors import InvariantViolation
from bbext.oracles.base import OracleInput, OracleKind, OracleOutput
from bbext.oracles.costs import model_cost, split_cost
from bbext.simnet.context import AsyncHandler, PartyContext
from bbext.simnet.envelope import Envelope, Scope
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


def ideal_sync(ctx: PartyContext, kind: OracleKind, value, value_bits: int, sender: Optional[int] = None):
    """Two rounds: submit in the first, read the functionality's answer at the end of the second"""
    ctx.send_functionality(OracleInput(kind.value, value, value_bits, sender))
    yield
    inbox = yield
    for envelope in inbox.at(ctx.scope):
        if envelope.sender == FUNCTIONALITY_ID and isinstance(envelope.payload, OracleOutput):
            if envelope.payload.sender == sender:
                return envelope.payload.value
    raise InvariantViolation(f"ideal {kind.value} oracle at {'/'.join(ctx.scope)} did not answer", ctx.party)


class IdealClient(AsyncHandler):
    """A party's end of an ideal asynchronous oracle instance"""

    def __init__(
        self,
        ctx: PartyContext,
        kind: OracleKind,
        value_bits: int,
        on_output: Callable[[Optional[bytes]], None],
        sender: Optional[int] = None,
    ):
        super().__init__(ctx)
        self.kind = kind
        self.value_bits = value_bits
        self.sender = sender
        self._on_output = on_output
        self._provided = False
        self.delivered = False
        self.value: Optional[bytes] = None

    def provide(self, value: Optional[bytes]):
        if self._provided:
            return
        self._provided = True
        self.ctx.send_functionality(OracleInput(self.kind.value, value, self.value_bits, self.sender))

    def on_message(self, envelope: Envelope):
        payload = envelope.payload
        if self.delivered or envelope.sender != FUNCTIONALITY_ID or not isinstance(payload, OracleOutput):
            return
        if payload.sender != self.sender:
            return
        self.delivered = True
        self.value = payload.value
        self._on_output(payload.value)


@dataclass
class _Instance:
    kind: OracleKind
    sender: Optional[int]
    inputs: Dict[int, Optional[bytes]] = field(default_factory=dict)
    value_bits: Dict[int, int] = field(default_factory=dict)
    fired: bool = False


class IdealFunctionality:
    """
    The trusted party behind every ideal oracle instance of a run.

    :param honest: honest party ids; agreement and sync broadcast instances fire once all of them submitted
    :param chooser: adversary callbacks deciding outputs wherever the oracle's definition leaves a choice
    :param submit: scheduler entry point for the outputs
    :param charge: accountant hook, (kind, party, bits)
    """

    node_id = FUNCTIONALITY_ID
    finished = True

    def __init__(
        self,
        n: int,
        k: int,
        honest: Iterable[int],
        chooser,
        submit: Callable[..., Envelope],
        charge: Callable[[str, int, int], None],
    ):
        self.n = n
        self.k = k
        self.honest: Set[int] = set(honest)
        self.chooser = chooser
        self._submit = submit
        self._charge = charge
        self.instances: Dict[Tuple[Scope, Optional[int]], _Instance] = {}
        self.firings = 0

    def start(self):
        pass

    def on_round(self, envelopes: Sequence[Envelope]):
        touched = []
        for envelope in envelopes:
            key = self._accept(envelope)
            if key is not None and key not in touched:
                touched.append(key)
        for key in touched:
            self._try_fire(key)

    def on_envelope(self, envelope: Envelope):
        key = self._accept(envelope)
        if key is not None:
            self._try_fire(key)

    def _accept(self, envelope: Envelope) -> Optional[Tuple[Scope, Optional[int]]]:
        payload = envelope.payload
        if not isinstance(payload, OracleInput):
            return None
        try:
            kind = OracleKind(payload.oracle)
        except ValueError:
            return None
        sender = None if kind.is_agreement else payload.sender
        if kind is OracleKind.ASYNC_RB and envelope.sender != sender:
            return None
        key = (envelope.tag, sender)
        instance = self.instances.setdefault(key, _Instance(kind, sender))
        if instance.kind is not kind or instance.fired:
            return None
        if envelope.sender not in instance.inputs:
            instance.inputs[envelope.sender] = payload.value
            instance.value_bits[envelope.sender] = payload.value_bits
        return key

    def _try_fire(self, key: Tuple[Scope, Optional[int]]):
        instance = self.instances[key]
        tag, sender = key
        kind = instance.kind
        if kind is OracleKind.ASYNC_RB:
            if sender not in instance.inputs:
                return
            if sender in self.honest:
                value = instance.inputs[sender]
            elif self.chooser.release_broadcast(kind, tag):
                value = self.chooser.choose_broadcast_output(kind, tag, instance.inputs[sender])
            else:
                return
        else:
            if not self.honest <= set(instance.inputs):
                return
            if kind is OracleKind.SYNC_BB:
                if sender in self.honest:
                    value = instance.inputs[sender]
                else:
                    value = self.chooser.choose_broadcast_output(kind, tag, instance.inputs.get(sender))
            else:
                honest_inputs = {p: v for p, v in instance.inputs.items() if p in self.honest}
                corrupt_inputs = {p: v for p, v in instance.inputs.items() if p not in self.honest}
                if len(set(honest_inputs.values())) == 1:
                    value = next(iter(honest_inputs.values()))
                else:
                    value = self.chooser.choose_agreement_output(kind, tag, honest_inputs, corrupt_inputs)
        self._fire(key, instance, value)

    def _fire(self, key, instance: _Instance, value: Optional[bytes]):
        tag, sender = key
        instance.fired = True
        self.firings += 1
        honest_widths = [bits for party, bits in instance.value_bits.items() if party in self.honest]
        value_bits = max(honest_widths or instance.value_bits.values())
        cost = model_cost(instance.kind, value_bits, self.n, self.k)
        for party, bits in split_cost(cost, range(1, self.n + 1)).items():
            self._charge(instance.kind.value, party, bits)
        logger.debug(f"ideal {instance.kind.value} at {'/'.join(tag)} fired, {cost} model bits")
        for party in range(1, self.n + 1):
            self._submit(
                FUNCTIONALITY_ID,
                party,
                tag,
                OracleOutput(value, sender),
                instance.kind.value,
                instance.kind.value,
            )
