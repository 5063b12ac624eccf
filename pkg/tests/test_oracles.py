import pytest

from bbext.checks.oracles import oracle_params
from bbext.checks.runs import scripts_for
from bbext.complexity import dolev_strong_bits
from bbext.data_structures import Mode, SessionParams, ThresholdRegime
from bbext.errors import ConfigurationError
from bbext.oracles import OracleConfig, OracleImpl, OracleKind, check_mode, decode_bit, encode_bit, model_cost
from bbext.protocols import ORACLE_PROTOCOLS
from bbext.simnet import check_properties, run

CONFIGS = {"ideal": OracleConfig(), "concrete": OracleConfig.concrete()}


@pytest.mark.parametrize("label", sorted(CONFIGS))
@pytest.mark.parametrize("protocol", ORACLE_PROTOCOLS)
def test_oracle_battery(protocol, label):
    params = oracle_params(protocol, 4)
    for script in scripts_for(protocol):
        for seed in range(2):
            result = run(protocol, params, adversary=script, seed=seed, oracles=CONFIGS[label])
            verdict = check_properties(result)
            assert verdict.ok, (script.name, seed, verdict.details)


def test_dolev_strong_tolerates_all_but_one():
    params = oracle_params("oracle-dolev-strong", 5)
    assert params.t == 4
    for adversary in ("silent", "equivocate", "silent-sender"):
        result = run("oracle-dolev-strong", params, adversary=adversary, seed=3, oracles=OracleConfig.concrete())
        assert check_properties(result).ok


@pytest.mark.parametrize("n", [4, 7])
def test_dolev_strong_cost_tracks_the_model(n):
    params = oracle_params("oracle-dolev-strong", n)
    result = run("oracle-dolev-strong", params, seed=0, oracles=OracleConfig.concrete())
    model = dolev_strong_bits(params, params.l)
    assert model / 2 <= result.metrics.honest_bits_total <= 2 * model
    assert result.metrics.bits_by_oracle.keys() == {OracleKind.SYNC_BB.value}


@pytest.mark.parametrize(
    "protocol, kind", [("oracle-sync-ba", OracleKind.SYNC_BA), ("oracle-bracha", OracleKind.ASYNC_RB)]
)
def test_ideal_oracles_charge_the_model_cost(protocol, kind):
    params = oracle_params(protocol, 7)
    result = run(protocol, params, seed=0)
    assert result.metrics.honest_bits_total == model_cost(kind, params.l, params.n, params.k)
    assert result.metrics.step_bits == 0


def test_ideal_cost_is_charged_to_honest_parties_only():
    params = oracle_params("oracle-sync-ba", 7)
    result = run("oracle-sync-ba", params, adversary="silent", seed=0)
    full = model_cost(OracleKind.SYNC_BA, params.l, params.n, params.k)
    assert 0 < result.metrics.honest_bits_total < full
    assert set(result.metrics.bits_by_party) == set(result.honest)


def test_oracle_config():
    config = OracleConfig.from_dict({"sync_bb": "concrete"})
    assert config.impl(OracleKind.SYNC_BB) is OracleImpl.CONCRETE
    assert config.impl(OracleKind.SYNC_BA) is OracleImpl.IDEAL
    assert OracleConfig.from_dict(config.to_dict()) == config
    with pytest.raises(ConfigurationError):
        OracleConfig.from_dict({"async_ba_kbit": "concrete"})
    with pytest.raises(ConfigurationError):
        OracleConfig.from_dict({"quantum_ba": "ideal"})
    with pytest.raises(ConfigurationError):
        check_mode(OracleKind.ASYNC_RB, Mode.ROUNDS)


def test_concrete_agreement_at_the_half_threshold():
    params = SessionParams(n=7, t=3, l=64, k=128, regime=ThresholdRegime.HALF)
    inputs = {party: bytes([party]) * 8 for party in params.parties}
    for adversary in ("honest", "equivocate", "wrong-happy"):
        result = run("oracle-sync-ba", params, adversary=adversary, inputs=inputs, oracles=OracleConfig.concrete())
        assert check_properties(result).ok


def test_bits():
    assert decode_bit(encode_bit(1)) == 1
    assert decode_bit(encode_bit(0)) == 0
    assert decode_bit(None) == 0
