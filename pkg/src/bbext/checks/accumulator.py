"""Accumulator completeness, a battery of forgeries that must be rejected, and message binding of Encode + Eval."""
from typing import List, Sequence

import numpy as np

from bbext.authentic import AccValue, Witness, acc_create_witnesses, acc_eval, acc_gen, acc_verify
from bbext.blocks import accumulate, encode
from bbext.checks.base import PropertyResult, scaled
from bbext.data_structures import AccScheme

K = 128


def _flip_last(data: bytes) -> bytes:
    return data[:-1] + bytes([data[-1] ^ 0x01])


def _forgeries(values: Sequence[bytes], z: AccValue, witnesses: List[Witness], other_z: AccValue, rng):
    """(description, value, witness, accumulation value) tuples, none of which may verify"""
    n = len(values)
    i = int(rng.integers(0, n))
    outsider = rng.bytes(len(values[i]) + 1)
    yield "non-member value", outsider, witnesses[i], z
    if n > 1:
        j = (i + 1 + int(rng.integers(0, n - 1))) % n
        yield "witness of another member", values[j], witnesses[i], z
    if witnesses[i].data:
        yield "tampered witness", values[i], Witness(_flip_last(witnesses[i].data), witnesses[i].nominal_bits), z
        yield "truncated witness", values[i], Witness(witnesses[i].data[:-1], witnesses[i].nominal_bits), z
    yield "tampered value", _flip_last(values[i]), witnesses[i], z
    yield "other accumulation value", values[i], witnesses[i], other_z
    yield "missing witness", values[i], None, z


def run_suite(scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    rng = np.random.default_rng([seed, 2])
    results = []
    for scheme in AccScheme:
        completeness = PropertyResult(f"{scheme.value}: every member witness verifies")
        forgery = PropertyResult(f"{scheme.value}: forgery battery is rejected")
        for trial in range(scaled(100, scale)):
            n = int(rng.integers(1, 17))
            ak = acc_gen(scheme, n, K, rng.bytes(32))
            values = [index.to_bytes(2, "big") + rng.bytes(int(rng.integers(1, 40))) for index in range(n)]
            z = acc_eval(ak, values)
            witnesses = acc_create_witnesses(ak, values)
            missing = [i for i, (w, d) in enumerate(zip(witnesses, values)) if not acc_verify(ak, z, w, d)]
            completeness.record(not missing, f"n={n}: members {missing} do not verify")

            other = [index.to_bytes(2, "big") + rng.bytes(8) for index in range(n)]
            other_z = acc_eval(ak, other)
            for description, value, witness, target in _forgeries(values, z, witnesses, other_z, rng):
                forgery.record(not acc_verify(ak, target, witness, value), f"n={n}: {description} accepted")
        results += [completeness, forgery]

    binding = PropertyResult("distinct messages never share an accumulation value")
    n, b, size = 4, 2, 16
    keys = {scheme: acc_gen(scheme, n, K, rng.bytes(32)) for scheme in AccScheme}
    for trial in range(scaled(10_000, scale)):
        scheme = list(AccScheme)[trial % len(AccScheme)]
        m = rng.bytes(size)
        m_prime = _flip_last(m) if trial % 2 else rng.bytes(size)
        if m_prime == m:
            continue
        z = accumulate(keys[scheme], encode(m, b, n))
        z_prime = accumulate(keys[scheme], encode(m_prime, b, n))
        binding.record(z != z_prime, f"{scheme.value}: {m.hex()} and {m_prime.hex()} collide")
    results.append(binding)
    return results
