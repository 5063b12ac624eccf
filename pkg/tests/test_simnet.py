from types import SimpleNamespace

import pytest

from bbext.data_structures import Definition, SessionParams, ThresholdRegime
from bbext.errors import AdversaryConfigError, ConfigurationError
from bbext.oracles import CoinOracle, split_cost
from bbext.simnet import AdversaryScript, check_properties, get_adversary, outputs_digest, run


def test_runs_are_deterministic(half_params):
    first = run("sync-half-ba", half_params, adversary="forged-witness", seed=11)
    second = run("sync-half-ba", half_params, adversary="forged-witness", seed=11)
    assert first.metrics.to_dict() == second.metrics.to_dict()
    assert first.outputs == second.outputs

    other = run("sync-half-ba", half_params, adversary="forged-witness", seed=12)
    assert other.inputs != first.inputs


def test_metrics_breakdowns_add_up(third_params):
    result = run("async-third-rb", third_params, adversary="equivocate", seed=3)
    metrics = result.metrics
    assert metrics.honest_bits_total == metrics.step_bits + metrics.oracle_bits
    assert metrics.rounds_or_events_elapsed > 0
    assert set(metrics.bits_by_party) <= set(result.honest)
    assert metrics.outputs_digest == outputs_digest(result.outputs)


def test_corruption_selection(half_params):
    result = run("sync-half-bb", half_params, adversary="silent-sender", seed=0)
    assert result.sender == 1
    assert result.corrupt == frozenset({1, 7, 6})
    assert result.honest == frozenset({2, 3, 4, 5})

    result = run("sync-half-bb", half_params, adversary="silent", seed=0)
    assert result.corrupt == frozenset({5, 6, 7})


def test_rejects_bad_configurations(half_params):
    with pytest.raises(AdversaryConfigError):
        run("sync-half-ba", half_params, adversary=AdversaryScript("too-many", corruptions=4))
    with pytest.raises(AdversaryConfigError):
        get_adversary("no-such-adversary")
    with pytest.raises(ConfigurationError):
        run("no-such-protocol", half_params)
    with pytest.raises(ConfigurationError):
        run("async-third-ba", half_params)
    with pytest.raises(ConfigurationError):
        SessionParams(n=4, t=2, l=64, regime=ThresholdRegime.HALF)
    with pytest.raises(ConfigurationError):
        SessionParams(n=4, t=1, l=63)


def test_trace_records_every_send(half_params):
    result = run("sync-half-ba", half_params, seed=1, trace=True)
    records = result.trace.records
    assert records
    assert {"tick", "from", "to", "msg_kind", "bits"} <= set(records[0])
    assert len(result.trace.to_ndjson().splitlines()) == len(records)
    honest_bits = sum(r["bits"] for r in records if r["from"] in result.honest)
    assert honest_bits == result.metrics.step_bits


@pytest.mark.parametrize("adversary", ["random-order", "lifo", "starve-honest", "delay-victim"])
def test_delivery_policies_keep_rb_correct(third_params, adversary):
    result = run("async-third-rb", third_params, adversary=adversary, seed=5)
    assert check_properties(result).ok
    assert set(result.outputs.values()) == {result.inputs[1]}


def _outcome(definition, honest, outputs, inputs, sender=None):
    return SimpleNamespace(
        definition=definition, honest=frozenset(honest), outputs=outputs, inputs=inputs, sender=sender
    )


def test_property_checker():
    inputs = {1: b"m", 2: b"m", 3: b"m", 4: b"x"}
    assert check_properties(_outcome(Definition.BA, {1, 2, 3}, {1: b"m", 2: b"m", 3: b"m"}, inputs)).ok

    verdict = check_properties(_outcome(Definition.BA, {1, 2, 3}, {1: b"m", 2: b"x", 3: b"m"}, inputs))
    assert not verdict.agreement and not verdict.validity

    verdict = check_properties(_outcome(Definition.BB, {1, 2, 3}, {1: b"m", 2: b"m"}, inputs, sender=1))
    assert not verdict.termination and verdict.agreement

    # with a corrupt sender, reliable broadcast may leave every honest party undecided but not only some
    assert check_properties(_outcome(Definition.RB, {2, 3}, {}, inputs, sender=1)).ok
    assert not check_properties(_outcome(Definition.RB, {2, 3}, {2: None}, inputs, sender=1)).termination


def test_outputs_digest_distinguishes_bottom():
    assert outputs_digest({1: None}) != outputs_digest({1: b""})
    assert outputs_digest({1: b"a", 2: b"b"}) == outputs_digest({2: b"b", 1: b"a"})


def test_split_cost():
    shares = split_cost(10, [3, 1, 2])
    assert shares == {1: 4, 2: 3, 3: 3}
    assert sum(split_cost(1_000_003, range(1, 8)).values()) == 1_000_003


def test_coin_oracle():
    coin = CoinOracle(b"seed")
    assert coin.peek(("aba",), 1) is None
    bit = coin.query(("aba",), 1)
    assert bit in (0, 1)
    assert coin.peek(("aba",), 1) == bit
    assert CoinOracle(b"seed").query(("aba",), 1, honest=False) == bit
