import dataclasses
import hashlib
from dataclasses import dataclass
from functools import partial
from typing import Dict, FrozenSet, Mapping, Optional, Union

import numpy as np

from bbext.authentic import SigningAuthority, SizeModel, acc_gen
from bbext.constants import FUNCTIONALITY_ID
from bbext.data_structures import AccScheme, Definition, Mode, SessionParams
from bbext.simnet.adversary import HONEST, AdversaryScript, CorruptView, get_adversary
from bbext.simnet.context import Session
from bbext.simnet.metrics import Accountant, RunMetrics, TraceRecorder
from bbext.simnet.nodes import CorruptNode, HonestNode, Outgoing, PartyHost
from bbext.simnet.party import PartyProc
from bbext.simnet.scheduler import EventScheduler, RoundScheduler, SchedulerBase
from bbext.utils.logging import get_logger
from bbext.utils.random import SeedStreams

logger = get_logger(__name__)

Inputs = Union[None, bytes, Mapping[int, Optional[bytes]]]


@dataclass
class RunResult:
    """
    Outcome of one run. outputs holds the honest parties that decided, ⊥ as None; inputs holds every party's
    input, None for non-senders of a broadcast.
    """

    protocol: str
    definition: Definition
    params: SessionParams
    adversary: str
    seed: int
    honest: FrozenSet[int]
    corrupt: FrozenSet[int]
    sender: Optional[int]
    inputs: Dict[int, Optional[bytes]]
    outputs: Dict[int, Optional[bytes]]
    procs: Dict[int, PartyProc]
    metrics: RunMetrics
    trace: Optional[TraceRecorder] = None


def session_id_for(params: SessionParams, protocol: str, seed: int) -> bytes:
    return hashlib.sha256(b"/".join([params.session_id, protocol.encode(), str(seed).encode()])).digest()[:16]


def _normalize_inputs(
    spec, params: SessionParams, inputs: Inputs, sender: Optional[int], rng
) -> Dict[int, Optional[bytes]]:
    if inputs is None:
        inputs = spec.random_input(params, rng)
    if isinstance(inputs, bytes):
        if sender is not None:
            return {party: inputs if party == sender else None for party in params.parties}
        return {party: inputs for party in params.parties}
    return {party: inputs.get(party) for party in params.parties}


def _submit_from(scheduler: SchedulerBase, party: int, out: Outgoing):
    scheduler.submit(party, out.recipient, out.tag, out.payload, out.label, out.oracle_kind)


def run(
    protocol,
    params: SessionParams,
    adversary: Union[None, str, AdversaryScript] = None,
    seed: int = 0,
    inputs: Inputs = None,
    oracles=None,
    acc_scheme: AccScheme = AccScheme.HASH_TREE,
    trace: bool = False,
) -> RunResult:
    """
    Run one protocol session to completion. The result is a pure function of the arguments.

    :param protocol: registered protocol name or ProtocolSpec
    :param adversary: script or battery name, no corruption by default
    :param inputs: per-party inputs, or one message (the sender's for broadcasts, everybody's for agreement);
      a random message by default
    :param oracles: OracleConfig, every oracle ideal by default
    :raises ConfigurationError: parameters outside the protocol's threshold regime or an oracle the scheduler
      cannot run
    :raises AdversaryConfigError: the script corrupts more than t parties
    """
    from bbext.oracles import CoinOracle, IdealFunctionality, OracleConfig
    from bbext.protocols.registry import get_protocol

    spec = get_protocol(protocol) if isinstance(protocol, str) else protocol
    script = get_adversary(adversary) if isinstance(adversary, str) else (adversary or HONEST)
    oracles = oracles or OracleConfig()
    spec.check(params, oracles)

    streams = SeedStreams(seed)
    params = dataclasses.replace(params, session_id=session_id_for(params, spec.name, seed))
    sender = 1 if spec.has_sender else None
    corrupt = script.select_corrupt(params, sender)
    honest = frozenset(params.parties) - corrupt
    values = _normalize_inputs(spec, params, inputs, sender, streams.generator("inputs"))

    setup = streams.seed_bytes("setup", 64)
    acc_key = acc_gen(acc_scheme, params.n, params.k, setup[:32])
    authority = SigningAuthority(params.n, setup[32:], params.session_id)
    sizes = SizeModel(params.n, params.k, acc_scheme)
    accountant = Accountant(honest)
    recorder = TraceRecorder() if trace else None
    if spec.mode is Mode.ROUNDS:
        scheduler = RoundScheduler(sizes, accountant, recorder)
    else:
        scheduler = EventScheduler(
            sizes, accountant, recorder, policy=script.policy(), rng=streams.generator("schedule"), n=params.n
        )
    session = Session(
        params=params,
        mode=spec.mode,
        sizes=sizes,
        acc_key=acc_key,
        authority=authority,
        coin=CoinOracle(streams.seed_bytes("coin")),
        oracles=oracles,
        network=scheduler,
        honest=set(honest),
        sender=sender,
    )

    nodes = {
        FUNCTIONALITY_ID: IdealFunctionality(
            params.n, params.k, honest, script.chooser(), scheduler.submit, accountant.charge_oracle
        )
    }
    for party in sorted(honest):
        host = PartyHost(
            session,
            party,
            spec.program,
            values[party],
            partial(_submit_from, scheduler, party),
            authority.signer(party),
        )
        nodes[party] = HonestNode(host)

    coalition = authority.signers(corrupt)
    adversary_seed = int.from_bytes(streams.seed_bytes("adversary", 8), "big")
    for party in sorted(corrupt):
        behavior = script.behavior()
        rng = np.random.default_rng([adversary_seed, party])
        behavior.bind(CorruptView(party, params, spec.name, honest, corrupt, sender, rng))
        node = CorruptNode(session, party, behavior, scheduler.submit)
        for head, head_spec in enumerate(behavior.heads(values[party])):
            node.add_head(
                PartyHost(
                    session,
                    party,
                    head_spec.program or spec.program,
                    head_spec.value,
                    node.emit_from(head),
                    coalition[party],
                    coalition=coalition,
                    overrides=dict(head_spec.overrides),
                )
            )
        nodes[party] = node

    logger.debug(f"running {spec.name} n={params.n} t={params.t} l={params.l} adversary={script.name} seed={seed}")
    elapsed = scheduler.run(nodes, honest)
    procs = {party: nodes[party].proc for party in sorted(honest)}
    outputs = {party: proc.output for party, proc in procs.items() if proc.decided}
    return RunResult(
        protocol=spec.name,
        definition=spec.definition,
        params=params,
        adversary=script.name,
        seed=seed,
        honest=honest,
        corrupt=corrupt,
        sender=sender,
        inputs=values,
        outputs=outputs,
        procs=procs,
        metrics=accountant.finalize(elapsed, outputs),
        trace=recorder,
    )
