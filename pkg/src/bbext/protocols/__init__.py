from bbext.protocols.messages import (
    ESetMsg,
    ExchangeMsg,
    ForwardMsg,
    HappyMsg,
    MajorityMsg,
    OkMsg,
    PayloadMsg,
    VVectorMsg,
)
from bbext.protocols.sync_half import broadcast_via_agreement, sync_half_ba, sync_half_bb, sync_half_bb_reduction
from bbext.protocols.sync_eps_bb import sync_eps_bb
from bbext.protocols.async_third import AsyncThirdBA, AsyncThirdRB, async_third_ba, async_third_rb
from bbext.protocols.sync_ef import sync_ef_ba, sync_ef_bb
from bbext.protocols.async_ef_rb import AsyncErrorFreeRB, async_ef_rb
from bbext.protocols.registry import (
    EXTENSION_PROTOCOLS,
    ORACLE_PROTOCOLS,
    PROTOCOLS,
    ProtocolSpec,
    get_protocol,
)
