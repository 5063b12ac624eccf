from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from bbext.authentic import PartySigner
from bbext.data_structures import Mode, Role
from bbext.errors import Error, SchedulerError
from bbext.simnet.context import AsyncHandler, Inbox, PartyContext, Session
from bbext.simnet.envelope import Envelope, Scope
from bbext.simnet.party import PartyProc
from bbext.utils.logging import get_logger

logger = get_logger(__name__)

Program = Callable[[PartyContext, Optional[bytes], Optional[int]], Any]


@dataclass(frozen=True)
class Outgoing:
    recipient: int
    tag: Scope
    payload: Any
    label: str
    oracle_kind: Optional[str] = None


class PartyHost:
    """
    Runs one program instance for one party: a generator under the round scheduler, a tree of handlers under the
    event scheduler. Keeps the party's delivery history per instance path.

    :param program: protocol program, called as program(ctx, value, sender)
    :param value: the party's input (its message, or None for a non-sender)
    :param emit: where the program's sends go, Outgoing -> None
    :param coalition: signing keys of the whole corrupt set, only for corrupt hosts
    """

    def __init__(
        self,
        session: Session,
        party: int,
        program: Program,
        value: Optional[bytes],
        emit: Callable[[Outgoing], None],
        signer: PartySigner,
        coalition: Optional[Dict[int, PartySigner]] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ):
        self.session = session
        self.party = party
        self.program = program
        self.value = value
        self.signer = signer
        self.coalition = coalition or {}
        self.overrides = overrides or {}
        self._emit = emit
        if session.sender is None:
            role = Role.PEER
        else:
            role = Role.SENDER if party == session.sender else Role.NONSENDER
        self.proc = PartyProc(party, session.params, role)
        self.history: Dict[Scope, List[Envelope]] = defaultdict(list)
        self.ctx = PartyContext(self)
        self.finished = False
        self._generator = None
        self._handlers: Dict[Scope, AsyncHandler] = {}
        self._early: Dict[Scope, List[Envelope]] = defaultdict(list)

    def emit(self, recipient: int, tag: Scope, payload, label: str, oracle_kind: Optional[str]):
        self._emit(Outgoing(recipient, tag, payload, label, oracle_kind))

    def start(self):
        if self.session.mode is Mode.ROUNDS:
            self._generator = self.program(self.ctx, self.value, self.session.sender)
            self._advance(None)
        else:
            handler = self.program(self.ctx, self.value, self.session.sender)
            self.register(handler.ctx.scope, handler)
            handler.start()

    def _advance(self, inbox: Optional[Inbox]):
        try:
            if inbox is None:
                next(self._generator)
            else:
                self._generator.send(inbox)
        except StopIteration:
            self.finished = True

    def deliver_round(self, envelopes: Sequence[Envelope]):
        for envelope in envelopes:
            self.history[envelope.tag].append(envelope)
        if not self.finished:
            self._advance(Inbox(envelopes))

    def deliver(self, envelope: Envelope):
        self.history[envelope.tag].append(envelope)
        handler = self._handlers.get(envelope.tag)
        if handler is None:
            self._early[envelope.tag].append(envelope)
        else:
            handler.on_message(envelope)

    def register(self, scope: Scope, handler: AsyncHandler):
        if scope in self._handlers:
            raise SchedulerError(f"party {self.party}: instance {'/'.join(scope)} spawned twice")
        self._handlers[scope] = handler
        for envelope in self._early.pop(scope, []):
            handler.on_message(envelope)


class HonestNode:
    def __init__(self, host: PartyHost):
        self.host = host
        self.node_id = host.party

    @property
    def finished(self) -> bool:
        return self.host.finished

    @property
    def proc(self) -> PartyProc:
        return self.host.proc

    def start(self):
        self.host.start()

    def on_round(self, envelopes: Sequence[Envelope]):
        self.host.deliver_round(envelopes)

    def on_envelope(self, envelope: Envelope):
        self.host.deliver(envelope)


class CorruptNode:
    """
    A corrupt party. The behavior decides which program instances ("heads") the party runs and rewrites, drops or
    reroutes everything they send. A head that raises is silenced for the rest of the run.
    """

    finished = True

    def __init__(self, session: Session, party: int, behavior, submit: Callable[..., Envelope]):
        self.session = session
        self.node_id = party
        self.party = party
        self.behavior = behavior
        self._submit = submit
        self.heads: List[PartyHost] = []
        self._silenced = set()

    def add_head(self, host: PartyHost):
        self.heads.append(host)

    def emit_from(self, head: int) -> Callable[[Outgoing], None]:
        def emit(outgoing: Outgoing):
            for rewritten in self.behavior.outgoing(head, outgoing, self.session.tick):
                self._submit(
                    self.party,
                    rewritten.recipient,
                    rewritten.tag,
                    rewritten.payload,
                    rewritten.label,
                    rewritten.oracle_kind,
                )

        return emit

    def _guarded(self, head: int, action: Callable[[], None]):
        if head in self._silenced:
            return
        try:
            action()
        except (Error, ValueError, TypeError, AttributeError, KeyError, IndexError) as e:
            logger.debug(f"corrupt party {self.party} head {head} silenced: {e!r}")
            self._silenced.add(head)

    def start(self):
        for head, host in enumerate(self.heads):
            self._guarded(head, host.start)

    def on_round(self, envelopes: Sequence[Envelope]):
        self.behavior.observe(envelopes, self.session.tick)
        for head, host in enumerate(self.heads):
            self._guarded(head, lambda: host.deliver_round(envelopes))

    def on_envelope(self, envelope: Envelope):
        self.behavior.observe([envelope], self.session.tick)
        for head, host in enumerate(self.heads):
            self._guarded(head, lambda: host.deliver(envelope))
