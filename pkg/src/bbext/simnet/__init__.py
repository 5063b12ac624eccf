from bbext.simnet.envelope import Envelope, Message, Scope
from bbext.simnet.party import PartyProc
from bbext.simnet.context import AsyncHandler, Inbox, PartyContext, Session, run_parallel
from bbext.simnet.metrics import Accountant, RunMetrics, TraceRecorder, outputs_digest
from bbext.simnet.scheduler import (
    DeliveryPolicyBase,
    EventScheduler,
    FifoPolicy,
    LifoPolicy,
    RandomPolicy,
    RoundScheduler,
    StarveHonestPolicy,
    TargetedDelayPolicy,
)
from bbext.simnet.nodes import CorruptNode, HonestNode, Outgoing, PartyHost
from bbext.simnet.adversary import (
    ADVERSARIES,
    HONEST,
    AdversaryScript,
    Behavior,
    HeadSpec,
    OracleChooser,
    adversary_battery,
    get_adversary,
)
from bbext.simnet.properties import PropertyVerdict, check_properties
from bbext.simnet.runner import RunResult, run
