"""
Deterministic schedulers. RoundScheduler delivers everything sent in round r at the boundary of round r + 1;
EventScheduler delivers one envelope per step in the order the adversary's DeliveryPolicy asks for, except that
no envelope waits longer than FAIRNESS_FACTOR * n^2 steps.
"""
import heapq
from abc import ABC, abstractmethod
from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import count
from typing import Deque, Dict, List, Optional, Set

import numpy as np

from bbext.authentic import SizeModel
from bbext.constants import FAIRNESS_FACTOR, FUNCTIONALITY_ID, MAX_EVENTS, MAX_ROUNDS
from bbext.errors import SchedulerError
from bbext.simnet.envelope import Envelope, Scope
from bbext.simnet.metrics import Accountant, TraceRecorder
from bbext.utils.logging import get_logger

logger = get_logger(__name__)

# priority offset that pushes an envelope behind everything the policy does not defer
DEFERRED = float(1 << 40)


class DeliveryPolicyBase(ABC):
    """Adversarial delivery order for the event scheduler. Lower priority is delivered first."""

    name = "base"

    def bind(self, honest: Set[int], n: int, rng: np.random.Generator):
        self.honest = honest
        self.n = n
        self.rng = rng

    @abstractmethod
    def prioritize(self, envelope: Envelope) -> float:
        pass


class FifoPolicy(DeliveryPolicyBase):
    name = "fifo"

    def prioritize(self, envelope: Envelope) -> float:
        return envelope.seq


class LifoPolicy(DeliveryPolicyBase):
    name = "lifo"

    def prioritize(self, envelope: Envelope) -> float:
        return -envelope.seq


class RandomPolicy(DeliveryPolicyBase):
    name = "random"

    def prioritize(self, envelope: Envelope) -> float:
        return float(self.rng.random())


class StarveHonestPolicy(DeliveryPolicyBase):
    """Honest-to-honest traffic only moves when nothing else is in flight or the fairness bound forces it"""

    name = "starve-honest"

    def prioritize(self, envelope: Envelope) -> float:
        if envelope.sender in self.honest and envelope.recipient in self.honest:
            return DEFERRED + envelope.seq
        return envelope.seq


class TargetedDelayPolicy(DeliveryPolicyBase):
    """Delays everything sent to or by one victim party, the lowest honest id unless given"""

    name = "targeted-delay"

    def __init__(self, victim: Optional[int] = None):
        self.victim = victim

    def bind(self, honest: Set[int], n: int, rng: np.random.Generator):
        super().bind(honest, n, rng)
        if self.victim is None:
            self.victim = min(honest)

    def prioritize(self, envelope: Envelope) -> float:
        if self.victim in (envelope.sender, envelope.recipient):
            return DEFERRED + envelope.seq
        return envelope.seq


@dataclass(order=True, frozen=True)
class Pending:
    priority: float
    seq: int
    envelope: Envelope = field(compare=False)


class SchedulerBase(ABC):
    """
    Owns the in-flight envelopes of one run. Every send goes through submit(), which sizes, accounts and traces it.

    :param sizes: nominal sizes used to charge envelopes
    :param accountant: receives every envelope at send time
    :param trace: optional send log
    """

    def __init__(self, sizes: SizeModel, accountant: Accountant, trace: Optional[TraceRecorder] = None):
        self.sizes = sizes
        self.accountant = accountant
        self.trace = trace
        self.tick = 0
        self._seq = count()

    def submit(
        self, sender: int, recipient: int, tag: Scope, payload, label: str, oracle_kind: Optional[str] = None
    ) -> Envelope:
        free = sender == recipient or FUNCTIONALITY_ID in (sender, recipient)
        envelope = Envelope(
            seq=next(self._seq),
            sender=sender,
            recipient=recipient,
            tag=tag,
            payload=payload,
            bits=0 if free else payload.nominal_bits(self.sizes),
            label=label,
            oracle_kind=oracle_kind,
            sent_at=self.tick,
        )
        self.accountant.charge(envelope)
        if self.trace is not None:
            self.trace.record(envelope)
        self._enqueue(envelope)
        return envelope

    @abstractmethod
    def _enqueue(self, envelope: Envelope):
        pass

    @abstractmethod
    def run(self, nodes: Dict[int, "object"], honest: Set[int]) -> int:
        """Drive the nodes to completion; returns the number of rounds or delivery steps elapsed"""


class RoundScheduler(SchedulerBase):
    def __init__(self, *args, max_rounds: int = MAX_ROUNDS, **kwargs):
        super().__init__(*args, **kwargs)
        self.max_rounds = max_rounds
        self._outbox: List[Envelope] = []

    def _enqueue(self, envelope: Envelope):
        self._outbox.append(envelope)

    def run(self, nodes, honest) -> int:
        for node_id in sorted(nodes):
            nodes[node_id].start()
        while not all(nodes[party].finished for party in honest):
            if self.tick >= self.max_rounds:
                raise SchedulerError(f"honest parties still running after {self.max_rounds} rounds")
            batch, self._outbox = self._outbox, []
            self.tick += 1
            by_recipient: Dict[int, List[Envelope]] = defaultdict(list)
            for envelope in batch:
                by_recipient[envelope.recipient].append(envelope)
            for node_id in sorted(nodes):
                nodes[node_id].on_round(by_recipient.get(node_id, []))
        logger.debug(f"all honest parties finished after {self.tick} rounds")
        return self.tick


class EventScheduler(SchedulerBase):
    """
    :param policy: adversarial delivery order
    :param rng: schedule stream, consumed by randomized policies only
    :param n: number of parties, sets the fairness bound
    """

    def __init__(
        self,
        *args,
        policy: DeliveryPolicyBase,
        rng: np.random.Generator,
        n: int,
        max_events: int = MAX_EVENTS,
        **kwargs,
    ):
        super().__init__(*args, **kwargs)
        self.policy = policy
        self.rng = rng
        self.fairness_bound = FAIRNESS_FACTOR * n * n
        self.n = n
        self.max_events = max_events
        self._local: Deque[Envelope] = deque()
        self._heap: List[Pending] = []
        self._by_age: Deque[Envelope] = deque()
        self._taken: Set[int] = set()
        self._in_flight = 0

    def _enqueue(self, envelope: Envelope):
        # a party's messages to itself are local computation, the adversary cannot hold them
        if envelope.sender == envelope.recipient:
            self._local.append(envelope)
        else:
            heapq.heappush(self._heap, Pending(self.policy.prioritize(envelope), envelope.seq, envelope))
            self._by_age.append(envelope)
        self._in_flight += 1

    def _next(self) -> Envelope:
        if self._local:
            return self._local.popleft()
        while self._by_age[0].seq in self._taken:
            self._taken.discard(self._by_age.popleft().seq)
        oldest = self._by_age[0]
        if self.tick - oldest.sent_at >= self.fairness_bound:
            self._by_age.popleft()
            self._taken.add(oldest.seq)
            return oldest
        while True:
            pending = heapq.heappop(self._heap)
            if pending.seq in self._taken:
                self._taken.discard(pending.seq)
                continue
            self._taken.add(pending.seq)
            return pending.envelope

    def run(self, nodes, honest) -> int:
        self.policy.bind(set(honest), self.n, self.rng)
        for node_id in sorted(nodes):
            nodes[node_id].start()
        while self._in_flight:
            if self.tick >= self.max_events:
                raise SchedulerError(f"still {self._in_flight} envelopes in flight after {self.max_events} steps")
            envelope = self._next()
            self._in_flight -= 1
            self.tick += 1
            nodes[envelope.recipient].on_envelope(envelope)
        logger.debug(f"quiescent after {self.tick} delivery steps")
        return self.tick
