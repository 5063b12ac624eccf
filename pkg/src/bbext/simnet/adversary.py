"""
Static Byzantine adversaries. A script fixes the corrupt set, what every corrupt party runs, the delivery order of
the event scheduler and how ideal oracles resolve the choices their definitions leave open.
"""
import dataclasses
from abc import ABC
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence

import numpy as np

from bbext.authentic import Witness
from bbext.blocks import IndexedShare, SharePackage
from bbext.constants import FUNCTIONALITY_ID
from bbext.data_structures import SessionParams
from bbext.errors import AdversaryConfigError
from bbext.simnet.envelope import Envelope, Scope
from bbext.simnet.nodes import Outgoing, Program
from bbext.simnet.scheduler import (
    DeliveryPolicyBase,
    FifoPolicy,
    LifoPolicy,
    RandomPolicy,
    StarveHonestPolicy,
    TargetedDelayPolicy,
)
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class HeadSpec:
    """One program instance run by a corrupt party; program None means the protocol's own program"""

    value: Optional[bytes]
    overrides: Mapping[str, Any] = field(default_factory=dict)
    program: Optional[Program] = None


@dataclass(frozen=True)
class CorruptView:
    """What the adversary knows when it sets up one corrupt party"""

    party: int
    params: SessionParams
    protocol: str
    honest: FrozenSet[int]
    corrupt: FrozenSet[int]
    sender: Optional[int]
    rng: np.random.Generator = field(compare=False)


def flip_value(value: Optional[bytes]) -> Optional[bytes]:
    """A different input of the same length: the other bit for single-bit values, all bits inverted otherwise"""
    if not value:
        return value
    if value in (b"\x00", b"\x01"):
        return b"\x01" if value == b"\x00" else b"\x00"
    return bytes(byte ^ 0xFF for byte in value)


class Behavior(ABC):
    """What a corrupt party does. By default it runs the protocol honestly and lets every message through."""

    def bind(self, view: CorruptView):
        self.view = view

    def heads(self, value: Optional[bytes]) -> List[HeadSpec]:
        return [HeadSpec(value)]

    def outgoing(self, head: int, out: Outgoing, tick: int) -> List[Outgoing]:
        return [out]

    def observe(self, envelopes: Sequence[Envelope], tick: int):
        pass


class FollowProtocol(Behavior):
    pass


class Silent(Behavior):
    def heads(self, value):
        return []


class Crash(Behavior):
    """Runs honestly and stops sending from a given round or step on"""

    def __init__(self, at_tick: int = 2):
        self.at_tick = at_tick

    def outgoing(self, head, out, tick):
        return [] if tick >= self.at_tick else [out]


class Equivocate(Behavior):
    """Two honest runs on different inputs; the lower half of the parties hears one, the upper half the other"""

    def heads(self, value):
        alternative = flip_value(value)
        if alternative == value:
            return [HeadSpec(value)]
        return [HeadSpec(value), HeadSpec(alternative)]

    def outgoing(self, head, out, tick):
        if out.recipient == FUNCTIONALITY_ID:
            return [out] if head == 0 else []
        lower = out.recipient <= self.view.params.n // 2
        return [out] if lower == (head == 0) else []


def _with_package(payload, package):
    return dataclasses.replace(payload, package=package)


class CorruptShare(Behavior):
    """Every share it sends has its bytes inverted but keeps the witness of the true share"""

    def outgoing(self, head, out, tick):
        package = getattr(out.payload, "package", None)
        if not isinstance(package, SharePackage):
            return [out]
        share = bytes(byte ^ 0xFF for byte in package.indexed_share.share) or b"\xff"
        tampered = SharePackage(IndexedShare(package.index, share), package.witness)
        return [dataclasses.replace(out, payload=_with_package(out.payload, tampered))]


class ForgedWitness(Behavior):
    """Replaces every share package it sends by random bytes of the right shape"""

    def outgoing(self, head, out, tick):
        package = getattr(out.payload, "package", None)
        if not isinstance(package, SharePackage):
            return [out]
        rng = self.view.rng
        share = rng.bytes(len(package.indexed_share.share))
        witness = Witness(rng.bytes(len(package.witness.data)), package.witness.nominal_bits)
        forged = SharePackage(IndexedShare(package.index, share), witness)
        return [dataclasses.replace(out, payload=_with_package(out.payload, forged))]


class WrongHappy(Behavior):
    """Claims to be happy wherever the protocol asks, whatever it actually holds"""

    def heads(self, value):
        return [HeadSpec(value, overrides={"claim_happy": True})]


class WithholdUntilLast(Behavior):
    """
    A corrupt sender of the (1 - eps) broadcast that stays silent through the iterations and, in iteration t,
    hands valid shares to every honest party and a HAPPY certificate of the whole corrupt set to a single one,
    whose own signature then carries everybody else to acceptance in the last iteration.
    Other corrupt parties stay silent.
    """

    def __init__(self, release_iteration: Optional[int] = None):
        self.release_iteration = release_iteration

    def heads(self, value):
        if self.view.party != self.view.sender:
            return []
        from bbext.protocols.sync_eps_bb import withholding_sender

        iteration = self.release_iteration or max(1, self.view.params.t)
        return [HeadSpec(value, program=withholding_sender(iteration))]


class ConflictingVectors(Behavior):
    """
    Tells every recipient a different story in the error-free protocols: random consistency vectors and E-sets,
    OK messages to even parties only and random majority values.
    """

    def outgoing(self, head, out, tick):
        payload, rng, n = out.payload, self.view.rng, self.view.params.n
        kind = getattr(payload, "kind", None)
        if kind in ("vvector", "eset"):
            vector = tuple(bool(bit) for bit in rng.integers(0, 2, size=n))
            return [dataclasses.replace(out, payload=dataclasses.replace(payload, vector=vector))]
        if kind == "ok":
            return [out] if out.recipient % 2 == 0 else []
        if kind == "majority" and isinstance(getattr(payload, "value", None), bytes):
            value = rng.bytes(len(payload.value))
            return [dataclasses.replace(out, payload=dataclasses.replace(payload, value=value))]
        return [out]


class MalformedMajority(Behavior):
    """Runs honestly but hands every party a majority value of the wrong length ahead of its exchange message"""

    def outgoing(self, head, out, tick):
        if getattr(out.payload, "kind", None) != "exchange":
            return [out]
        from bbext.protocols.messages import MajorityMsg

        early = dataclasses.replace(out, payload=MajorityMsg(b"x"), label=MajorityMsg.kind)
        return [early, out]


ORACLE_CHOICES = ("smallest", "largest", "corrupt-first")


class OracleChooser:
    """
    Resolves ideal oracle outputs where the definitions leave a choice to the adversary.

    :param strategy: smallest or largest submitted value, or a corrupt party's value whenever one was submitted
    :param release_broadcasts: whether reliable broadcasts of corrupt senders are ever delivered
    """

    def __init__(self, strategy: str = "smallest", release_broadcasts: bool = True):
        if strategy not in ORACLE_CHOICES:
            raise AdversaryConfigError(f"unknown oracle choice {strategy!r}, expected one of {ORACLE_CHOICES}")
        self.strategy = strategy
        self.release_broadcasts = release_broadcasts

    def choose_agreement_output(
        self, kind, tag: Scope, honest_inputs: Mapping[int, Any], corrupt_inputs: Mapping[int, Any]
    ) -> Optional[bytes]:
        pool = [value for value in list(honest_inputs.values()) + list(corrupt_inputs.values()) if value is not None]
        if self.strategy == "corrupt-first":
            pool = [value for value in corrupt_inputs.values() if value is not None] or pool
        if not pool:
            return None
        return max(pool) if self.strategy == "largest" else min(pool)

    def choose_broadcast_output(self, kind, tag: Scope, sender_input: Optional[bytes]) -> Optional[bytes]:
        return sender_input

    def release_broadcast(self, kind, tag: Scope) -> bool:
        return self.release_broadcasts


@dataclass(frozen=True)
class AdversaryScript:
    """
    :param behavior: factory of the per-party behavior
    :param corrupt_sender: corrupt the sender (if the protocol has one) before anybody else
    :param corruptions: corrupt set size, t if None; the highest party ids are corrupted
    :param policy: factory of the event scheduler's delivery policy
    :param applies_to: protocol names the script is meant for, every protocol if None
    """

    name: str
    behavior: Callable[[], Behavior] = FollowProtocol
    corrupt_sender: bool = False
    corruptions: Optional[int] = None
    policy: Callable[[], DeliveryPolicyBase] = FifoPolicy
    oracle_choice: str = "smallest"
    release_broadcasts: bool = True
    applies_to: Optional[FrozenSet[str]] = None
    description: str = ""

    def select_corrupt(self, params: SessionParams, sender: Optional[int]) -> FrozenSet[int]:
        count = params.t if self.corruptions is None else self.corruptions
        if count > params.t:
            raise AdversaryConfigError(f"script {self.name} corrupts {count} parties but t={params.t}")
        candidates = [party for party in reversed(params.parties) if party != sender]
        if self.corrupt_sender and sender is not None:
            candidates.insert(0, sender)
        return frozenset(candidates[:count])

    def applies(self, protocol: str) -> bool:
        return self.applies_to is None or protocol in self.applies_to

    def chooser(self) -> OracleChooser:
        return OracleChooser(self.oracle_choice, self.release_broadcasts)


HONEST = AdversaryScript("honest", corruptions=0, description="no corruption")

_BATTERY = (
    HONEST,
    AdversaryScript("silent", Silent, description="t corrupt parties never send"),
    AdversaryScript("silent-sender", Silent, corrupt_sender=True, description="the sender and t - 1 others are silent"),
    AdversaryScript("crash", Crash, description="t parties follow the protocol and crash after two ticks"),
    AdversaryScript("equivocate", Equivocate, corrupt_sender=True, description="two inputs, one per half"),
    AdversaryScript(
        "corrupt-share", CorruptShare, corrupt_sender=True, description="inverted shares with stale witnesses"
    ),
    AdversaryScript("forged-witness", ForgedWitness, description="random shares and witnesses"),
    AdversaryScript("wrong-happy", WrongHappy, description="claims happiness unconditionally"),
    AdversaryScript(
        "withhold-until-last",
        WithholdUntilLast,
        corrupt_sender=True,
        applies_to=frozenset({"sync-eps-bb"}),
        description="sender releases shares and a HAPPY certificate in the last iteration only",
    ),
    AdversaryScript("conflicting-vectors", ConflictingVectors, description="per-recipient vectors and OKs"),
    AdversaryScript(
        "malformed-majority",
        MalformedMajority,
        applies_to=frozenset({"async-ef-rb"}),
        description="a wrong-length majority value reaches every party before the exchange",
    ),
    AdversaryScript("lifo", Silent, policy=LifoPolicy, description="silent corrupt set, newest envelope first"),
    AdversaryScript("random-order", FollowProtocol, policy=RandomPolicy, description="random delivery order"),
    AdversaryScript(
        "starve-honest",
        FollowProtocol,
        policy=StarveHonestPolicy,
        description="honest-to-honest traffic waits for the fairness bound",
    ),
    AdversaryScript(
        "delay-victim",
        Silent,
        policy=TargetedDelayPolicy,
        description="everything to or from the lowest honest party waits for the fairness bound",
    ),
)

ADVERSARIES: Dict[str, AdversaryScript] = {script.name: script for script in _BATTERY}


def adversary_battery() -> List[AdversaryScript]:
    return list(_BATTERY)


def get_adversary(name: str) -> AdversaryScript:
    try:
        return ADVERSARIES[name]
    except KeyError:
        raise AdversaryConfigError(f"unknown adversary {name!r}, expected one of {sorted(ADVERSARIES)}") from None
