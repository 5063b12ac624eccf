"""
What a protocol program sees of the world: its party id, the session parameters and keys, and a scoped view of the
network. Synchronous programs are generators (``inbox = yield`` ends a round), asynchronous ones are handlers.
"""
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, Generator, Iterator, List, Optional, Sequence, Set, Tuple, Type

from bbext.authentic import AccKey, PartySigner, SigningAuthority, SizeModel
from bbext.authentic.hashing import tagged
from bbext.constants import FUNCTIONALITY_ID
from bbext.data_structures import Mode, SessionParams
from bbext.simnet.envelope import Envelope, Scope
from bbext.simnet.party import PartyProc

if TYPE_CHECKING:
    from bbext.oracles.base import OracleConfig
    from bbext.oracles.coin import CoinOracle


@dataclass
class Session:
    """Everything the parties of one run share: parameters, public keys, the coin and the network"""

    params: SessionParams
    mode: Mode
    sizes: SizeModel
    acc_key: AccKey
    authority: SigningAuthority
    coin: "CoinOracle"
    oracles: "OracleConfig"
    network: Any
    honest: Set[int] = field(default_factory=set)
    sender: Optional[int] = None

    @property
    def tick(self) -> int:
        return self.network.tick


class Inbox:
    """Envelopes delivered to one party at one round boundary, grouped by instance path"""

    def __init__(self, envelopes: Sequence[Envelope] = ()):
        self._by_tag: Dict[Scope, List[Envelope]] = defaultdict(list)
        for envelope in envelopes:
            self._by_tag[envelope.tag].append(envelope)

    def at(self, scope: Scope) -> List[Envelope]:
        return self._by_tag.get(scope, [])

    def of(self, scope: Scope, message_type: Type) -> Iterator[Tuple[int, Any]]:
        """(sender, payload) pairs of one message type, in delivery order"""
        for envelope in self.at(scope):
            if isinstance(envelope.payload, message_type):
                yield envelope.sender, envelope.payload

    def __len__(self):
        return sum(len(envelopes) for envelopes in self._by_tag.values())


SyncProgram = Generator[None, Inbox, Any]


class PartyContext:
    """
    A party's handle on the session, bound to one instance path (scope).
    Every message sent through a context is tagged with its scope and delivered to the same scope at the recipient,
    so parallel sub-protocol instances never see each other's traffic.

    :param host: the party runtime that owns this context
    :param scope: instance path, () for the top-level protocol
    :param oracle_kind: when set, traffic of this context is charged to the oracle instead of a protocol step
    """

    def __init__(self, host, scope: Scope = (), oracle_kind: Optional[str] = None):
        self._host = host
        self.scope = scope
        self.oracle_kind = oracle_kind

    @property
    def session(self) -> Session:
        return self._host.session

    @property
    def party(self) -> int:
        return self._host.party

    @property
    def params(self) -> SessionParams:
        return self._host.session.params

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def t(self) -> int:
        return self.params.t

    @property
    def sizes(self) -> SizeModel:
        return self._host.session.sizes

    @property
    def acc_key(self) -> AccKey:
        return self._host.session.acc_key

    @property
    def authority(self) -> SigningAuthority:
        return self._host.session.authority

    @property
    def signer(self) -> PartySigner:
        return self._host.signer

    @property
    def coalition(self) -> Dict[int, PartySigner]:
        """Signing keys of every corrupt party; empty for honest parties"""
        return self._host.coalition

    @property
    def coin(self) -> "CoinOracle":
        return self._host.session.coin

    @property
    def oracles(self) -> "OracleConfig":
        return self._host.session.oracles

    @property
    def overrides(self) -> Dict[str, Any]:
        return self._host.overrides

    @property
    def proc(self) -> PartyProc:
        return self._host.proc

    @property
    def tick(self) -> int:
        return self._host.session.tick

    def scoped(self, *parts, oracle_kind: Optional[str] = None) -> "PartyContext":
        return PartyContext(self._host, self.scope + tuple(map(str, parts)), oracle_kind or self.oracle_kind)

    def message_tag(self, *parts: bytes) -> bytes:
        """Signing tag bound to the session and to this instance path"""
        return tagged(self.params.session_id, "/".join(self.scope).encode(), *parts)

    def send(self, recipient: int, message, label: Optional[str] = None):
        self._host.emit(recipient, self.scope, message, label or message.kind, self.oracle_kind)

    def multicast(self, message, label: Optional[str] = None):
        """Send to every other party"""
        for recipient in self.params.parties:
            if recipient != self.party:
                self.send(recipient, message, label)

    def send_all(self, message, label: Optional[str] = None):
        """Send to every party including oneself (the self copy is free)"""
        for recipient in self.params.parties:
            self.send(recipient, message, label)

    def send_functionality(self, message):
        self._host.emit(FUNCTIONALITY_ID, self.scope, message, message.kind, self.oracle_kind)

    def history(self, scope: Optional[Scope] = None) -> List[Envelope]:
        """Every envelope delivered so far to an instance path, this one by default"""
        return self._host.history.get(self.scope if scope is None else scope, [])

    def output(self, value: Optional[bytes]):
        self.proc.set_output(value, self.tick)

    def set_happy(self, happy: bool = True):
        self.proc.set_happy(happy, self.tick)

    def spawn(self, handler: "AsyncHandler") -> "AsyncHandler":
        """Attach an event-driven sub-protocol to its scope; envelopes that arrived early are replayed to it"""
        self._host.register(handler.ctx.scope, handler)
        return handler

    def __repr__(self):
        return f"PartyContext(party={self.party}, scope={'/'.join(self.scope) or '/'})"


class AsyncHandler(ABC):
    """An event-driven protocol instance bound to one scope of one party"""

    def __init__(self, ctx: PartyContext):
        self.ctx = ctx

    def start(self):
        pass

    @abstractmethod
    def on_message(self, envelope: Envelope):
        ...


def run_parallel(programs: Sequence[SyncProgram]) -> Generator[None, Inbox, List[Any]]:
    """Run synchronous sub-programs side by side, round by round; returns their results in order"""
    results: List[Any] = [None] * len(programs)
    active = {}
    for index, program in enumerate(programs):
        try:
            next(program)
            active[index] = program
        except StopIteration as e:
            results[index] = e.value
    while active:
        inbox = yield
        for index, program in list(active.items()):
            try:
                program.send(inbox)
            except StopIteration as e:
                results[index] = e.value
                del active[index]
    return results
