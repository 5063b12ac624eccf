import pytest

from bbext.checks.runs import explored_scripts, params_for, scripts_for
from bbext.complexity import sync_half_ba_bits
from bbext.data_structures import AccScheme, SessionParams, ThresholdRegime
from bbext.oracles import OracleConfig, OracleImpl
from bbext.protocols import EXTENSION_PROTOCOLS, get_protocol
from bbext.simnet import AdversaryScript, check_properties, run
from bbext.simnet.adversary import Silent
from bbext.simnet.scheduler import RandomPolicy

SYNC_PROTOCOLS = ("sync-half-ba", "sync-half-bb", "sync-half-bb-reduction", "sync-eps-bb", "sync-ef-ba", "sync-ef-bb")
ASYNC_PROTOCOLS = ("async-third-ba", "async-third-rb", "async-ef-rb")


def _params(protocol: str, n: int) -> SessionParams:
    epsilon = 0.5 if get_protocol(protocol).regime is ThresholdRegime.ONE_MINUS_EPS else None
    return params_for(protocol, n, l=256, epsilon=epsilon)


def _assert_correct(result):
    verdict = check_properties(result)
    assert verdict.ok, verdict.details


def test_registry_covers_every_protocol():
    assert set(SYNC_PROTOCOLS + ASYNC_PROTOCOLS) == set(EXTENSION_PROTOCOLS)


@pytest.mark.parametrize("protocol", SYNC_PROTOCOLS + ASYNC_PROTOCOLS)
@pytest.mark.parametrize("n", [4, 7])
def test_battery(protocol, n):
    params = _params(protocol, n)
    for script in scripts_for(protocol):
        _assert_correct(run(protocol, params, adversary=script, seed=n))


@pytest.mark.parametrize("protocol", ["sync-half-bb", "sync-half-bb-reduction", "sync-ef-bb", "async-third-rb"])
def test_honest_sender_message_is_delivered(protocol):
    params = _params(protocol, 7)
    message = bytes(range(32))
    result = run(protocol, params, inputs=message, seed=2)
    assert result.outputs == {party: message for party in params.parties}


@pytest.mark.parametrize("protocol", ["sync-half-ba", "sync-ef-ba", "async-third-ba"])
def test_agreement_on_split_inputs(protocol):
    params = _params(protocol, 7)
    inputs = {party: bytes([party % 2]) * params.message_bytes for party in params.parties}
    result = run(protocol, params, inputs=inputs, seed=4)
    _assert_correct(result)
    assert len(set(result.outputs.values())) == 1


def test_sync_half_ba_bits_match_the_model():
    params = SessionParams(n=10, t=4, l=8192, k=256, regime=ThresholdRegime.HALF)
    for scheme in AccScheme:
        result = run("sync-half-ba", params, seed=0, acc_scheme=scheme)
        _assert_correct(result)
        assert result.metrics.honest_bits_total == sync_half_ba_bits(params, scheme)


def test_sync_half_ba_unhappy_parties_reconstruct():
    params = SessionParams(n=7, t=3, l=1024, k=128, regime=ThresholdRegime.HALF)
    message, other = b"\x11" * 128, b"\x22" * 128
    inputs = {party: message if party <= 4 else other for party in params.parties}
    # the oracles pick the largest submitted value, so the happy bit is 1 although some parties are unhappy
    script = AdversaryScript("largest-choice", corruptions=0, oracle_choice="largest")
    result = run("sync-half-ba", params, adversary=script, inputs=inputs, seed=1)
    _assert_correct(result)
    (output,) = set(result.outputs.values())
    assert output in (message, other)
    assert any(not proc.happy for proc in result.procs.values())


@pytest.mark.parametrize("epsilon, t", [(0.25, 6), (0.5, 4)])
def test_sync_eps_bb_tolerates_a_dishonest_majority(epsilon, t):
    params = params_for("sync-eps-bb", 8, l=512, epsilon=epsilon)
    assert params.t == t
    for adversary in ("honest", "silent", "silent-sender", "equivocate", "withhold-until-last", "wrong-happy"):
        _assert_correct(run("sync-eps-bb", params, adversary=adversary, seed=7))


@pytest.mark.parametrize("protocol", ["sync-ef-ba", "sync-ef-bb"])
def test_error_free_with_concrete_broadcast(protocol):
    params = _params(protocol, 4)
    oracles = OracleConfig(sync_bb=OracleImpl.CONCRETE)
    for adversary in ("honest", "silent", "conflicting-vectors"):
        _assert_correct(run(protocol, params, adversary=adversary, seed=0, oracles=oracles))


@pytest.mark.parametrize("protocol", ["async-third-ba", "async-third-rb", "async-ef-rb"])
def test_async_with_concrete_oracles(protocol):
    params = _params(protocol, 4)
    oracles = OracleConfig(async_rb=OracleImpl.CONCRETE, async_ba_bit=OracleImpl.CONCRETE)
    for adversary in ("honest", "silent", "random-order"):
        _assert_correct(run(protocol, params, adversary=adversary, seed=1, oracles=oracles))


@pytest.mark.parametrize("n", [4, 7])
def test_async_ef_rb_decodes_around_malformed_majorities(n):
    params = _params("async-ef-rb", n)
    message = bytes(range(params.message_bytes))
    result = run("async-ef-rb", params, adversary="malformed-majority", inputs=message, seed=0)
    _assert_correct(result)
    assert result.outputs == {party: message for party in result.honest}


@pytest.mark.parametrize("n", [4, 7])
def test_concrete_binary_agreement_under_random_delivery(n):
    params = _params("async-third-ba", n)
    inputs = {party: bytes([party % 2]) * params.message_bytes for party in params.parties}
    script = AdversaryScript("silent-random-order", Silent, policy=RandomPolicy)
    oracles = OracleConfig(async_rb=OracleImpl.CONCRETE, async_ba_bit=OracleImpl.CONCRETE)
    for seed in range(6):
        _assert_correct(run("async-third-ba", params, adversary=script, inputs=inputs, seed=seed, oracles=oracles))


@pytest.mark.parametrize("protocol", ASYNC_PROTOCOLS)
def test_every_behavior_and_delivery_policy_with_concrete_oracles(protocol):
    params = _params(protocol, 4)
    for script in explored_scripts(protocol):
        result = run(protocol, params, adversary=script, seed=0, oracles=OracleConfig.concrete())
        verdict = check_properties(result)
        assert verdict.ok, (script.name, verdict.details)
