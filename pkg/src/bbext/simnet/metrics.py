import hashlib
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Set

import simplejson as json

from bbext.constants import FUNCTIONALITY_ID
from bbext.simnet.envelope import Envelope

METRICS_FIELDS = (
    "honest_bits_total",
    "bits_by_step",
    "bits_by_oracle",
    "rounds_or_events_elapsed",
    "outputs_digest",
    "bits_by_party",
    "received_bits_by_party",
)


@dataclass
class RunMetrics:
    """
    Honest communication of one run. honest_bits_total always equals the sum of both breakdowns.
    bits_by_party and received_bits_by_party are diagnostics and never enter complexity claims.
    """

    honest_bits_total: int = 0
    bits_by_step: Dict[str, int] = field(default_factory=dict)
    bits_by_oracle: Dict[str, int] = field(default_factory=dict)
    rounds_or_events_elapsed: int = 0
    outputs_digest: str = ""
    bits_by_party: Dict[int, int] = field(default_factory=dict)
    received_bits_by_party: Dict[int, int] = field(default_factory=dict)

    @property
    def oracle_bits(self) -> int:
        return sum(self.bits_by_oracle.values())

    @property
    def step_bits(self) -> int:
        return sum(self.bits_by_step.values())

    def to_dict(self) -> dict:
        result = {}
        for name in METRICS_FIELDS:
            value = getattr(self, name)
            if isinstance(value, dict):
                value = {str(key): value[key] for key in sorted(value)}
            result[name] = value
        return result

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def outputs_digest(outputs: Mapping[int, Optional[bytes]]) -> str:
    """sha256 over the honest outputs in party order, ⊥ encoded distinctly from every byte string"""
    hasher = hashlib.sha256()
    for party in sorted(outputs):
        value = outputs[party]
        hasher.update(party.to_bytes(2, "big"))
        if value is None:
            hasher.update(b"\x00")
        else:
            hasher.update(b"\x01" + len(value).to_bytes(8, "big") + value)
    return hasher.hexdigest()


class Accountant:
    """
    Charges every envelope sent by an honest party at its nominal size, to its oracle if it belongs to an oracle
    sub-protocol and to its step label otherwise. Traffic to and from the trusted functionality is free;
    the functionality's model cost is charged separately through charge_oracle().
    """

    def __init__(self, honest: Iterable[int]):
        self.honest: Set[int] = set(honest)
        self.by_step: Dict[str, int] = defaultdict(int)
        self.by_oracle: Dict[str, int] = defaultdict(int)
        self.by_party: Dict[int, int] = defaultdict(int)
        self.received: Dict[int, int] = defaultdict(int)

    def charge(self, envelope: Envelope):
        if FUNCTIONALITY_ID in (envelope.sender, envelope.recipient):
            return
        self.received[envelope.recipient] += envelope.bits
        if envelope.sender not in self.honest:
            return
        if envelope.oracle_kind is not None:
            self.by_oracle[envelope.oracle_kind] += envelope.bits
        else:
            self.by_step[envelope.label] += envelope.bits
        self.by_party[envelope.sender] += envelope.bits

    def charge_oracle(self, kind: str, party: int, bits: int):
        if party in self.honest and bits:
            self.by_oracle[kind] += bits
            self.by_party[party] += bits

    def finalize(self, elapsed: int, outputs: Mapping[int, Optional[bytes]]) -> RunMetrics:
        by_step, by_oracle = dict(self.by_step), dict(self.by_oracle)
        return RunMetrics(
            honest_bits_total=sum(by_step.values()) + sum(by_oracle.values()),
            bits_by_step=by_step,
            bits_by_oracle=by_oracle,
            rounds_or_events_elapsed=elapsed,
            outputs_digest=outputs_digest(outputs),
            bits_by_party=dict(self.by_party),
            received_bits_by_party=dict(self.received),
        )


class TraceRecorder:
    """Per-run send log: one {tick, from, to, msg_kind, bits} record per envelope"""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.records: List[dict] = []

    def record(self, envelope: Envelope):
        if self.enabled:
            self.records.append(
                {
                    "tick": envelope.sent_at,
                    "from": envelope.sender,
                    "to": envelope.recipient,
                    "msg_kind": envelope.kind,
                    "bits": envelope.bits,
                }
            )

    def to_ndjson(self) -> str:
        return "".join(json.dumps(record) + "\n" for record in self.records)

    def write(self, path: str):
        with open(path, "w") as f:
            f.write(self.to_ndjson())
