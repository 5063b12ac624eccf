"""
Cryptographic accumulators binding an ordered set of n canonical share encodings to a short value.

Two schemes share one interface:

- ``hash_tree``: binary hash tree over H(value) leaves (zero-digest padding up to a power of two); the witness is
  the leaf position followed by the sibling path.
- ``bilinear_emulated``: the bilinear accumulator's algebra in a 2k-bit prime field. The value is
  z = prod(s + H(d_i)) mod p and the witness of d_i is prod_{j != i}(s + H(d_j)) mod p. The trapdoor s lives only
  in a trusted-setup registry that evaluates and verifies on behalf of parties; keys carry a setup id.
"""
import hashlib
import math
import threading
from abc import ABC, abstractmethod
from collections import OrderedDict
from dataclasses import dataclass
from typing import List, Optional, Sequence

from bbext.authentic.hashing import digest, digest_int, tagged
from bbext.constants import SECURITY_BITS
from bbext.data_structures import AccScheme
from bbext.utils.logging import get_logger

logger = get_logger(__name__)

# 2k-bit primes of the emulated groups: 2^256 - 189 and 2^512 - 569
BILINEAR_PRIMES = {128: (1 << 256) - 189, 256: (1 << 512) - 569}

_POSITION_BYTES = 2


@dataclass(frozen=True)
class AccKey:
    scheme: AccScheme
    capacity: int
    k: int
    setup_id: bytes


@dataclass(frozen=True)
class AccValue:
    data: bytes
    nominal_bits: int


@dataclass(frozen=True)
class Witness:
    data: bytes
    nominal_bits: int


class _TrustedSetup:
    """Holds the bilinear trapdoor. Immutable after creation."""

    def __init__(self, secret: int, prime: int):
        self._secret = secret
        self.prime = prime

    def characteristic(self, roots: Sequence[int]) -> int:
        value = 1
        for root in roots:
            value = value * (self._secret + root) % self.prime
        return value

    def check(self, z: int, w: int, root: int) -> bool:
        return (self._secret + root) * w % self.prime == z


# least recently used setups are dropped past the cap; every lookup refreshes its entry
MAX_TRUSTED_SETUPS = 64
_SETUPS: "OrderedDict[bytes, _TrustedSetup]" = OrderedDict()
_SETUPS_LOCK = threading.Lock()


def _register_setup(setup_id: bytes, setup: _TrustedSetup):
    with _SETUPS_LOCK:
        _SETUPS.setdefault(setup_id, setup)
        _SETUPS.move_to_end(setup_id)
        while len(_SETUPS) > MAX_TRUSTED_SETUPS:
            _SETUPS.popitem(last=False)


def _lookup_setup(setup_id: bytes) -> Optional[_TrustedSetup]:
    with _SETUPS_LOCK:
        setup = _SETUPS.get(setup_id)
        if setup is not None:
            _SETUPS.move_to_end(setup_id)
        return setup


def acc_gen(scheme: AccScheme, n: int, k: int, rng_seed: bytes) -> AccKey:
    """
    Trusted dealer key generation. Identical arguments always give an identical key.

    :param rng_seed: seed bytes for the dealer's randomness (the bilinear trapdoor)
    """
    scheme = AccScheme(scheme)
    if n < 1:
        raise ValueError(f"accumulator capacity must be positive, got {n}")
    if k not in SECURITY_BITS:
        raise ValueError(f"k must be one of {SECURITY_BITS}, got {k}")
    setup_id = hashlib.sha256(tagged(b"acc-setup", scheme.value.encode(), str((n, k)).encode(), rng_seed)).digest()
    if scheme is AccScheme.BILINEAR_EMULATED:
        prime = BILINEAR_PRIMES[k]
        expanded = hashlib.shake_256(tagged(b"acc-trapdoor", rng_seed)).digest(2 * k // 8 + 16)
        secret = int.from_bytes(expanded, "big") % (prime - 1) + 1
        _register_setup(setup_id, _TrustedSetup(secret, prime))
    return AccKey(scheme=scheme, capacity=n, k=k, setup_id=setup_id)


class AccumulatorBase(ABC):
    """Scheme-specific Eval/CreateWit/Verify; obtained through get_accumulator()"""

    def __init__(self, ak: AccKey):
        self.ak = ak

    def _check_members(self, values: Sequence[bytes]):
        if len(values) != self.ak.capacity:
            raise ValueError(f"accumulator expects {self.ak.capacity} values, got {len(values)}")
        if len(set(values)) != len(values):
            raise ValueError("accumulated values must be distinct")

    @abstractmethod
    def evaluate(self, values: Sequence[bytes]) -> AccValue:
        pass

    @abstractmethod
    def witnesses(self, values: Sequence[bytes]) -> List[Witness]:
        """Witnesses for every member, in order"""
        pass

    @abstractmethod
    def verify(self, z: AccValue, w: Witness, d: bytes) -> bool:
        pass

    @property
    @abstractmethod
    def witness_bits(self) -> int:
        pass


class HashTreeAccumulator(AccumulatorBase):
    @property
    def depth(self) -> int:
        return math.ceil(math.log2(self.ak.capacity)) if self.ak.capacity > 1 else 0

    @property
    def witness_bits(self) -> int:
        return self.ak.k * self.depth

    def _leaf(self, value: bytes) -> bytes:
        return digest(value, self.ak.k)

    def _node(self, left: bytes, right: bytes) -> bytes:
        return digest(left + right, self.ak.k)

    def _levels(self, values: Sequence[bytes]) -> List[List[bytes]]:
        level = [self._leaf(v) for v in values]
        level += [bytes(self.ak.k // 8)] * ((1 << self.depth) - len(level))
        levels = [level]
        while len(level) > 1:
            level = [self._node(level[i], level[i + 1]) for i in range(0, len(level), 2)]
            levels.append(level)
        return levels

    def evaluate(self, values: Sequence[bytes]) -> AccValue:
        self._check_members(values)
        return AccValue(self._levels(values)[-1][0], self.ak.k)

    def witnesses(self, values: Sequence[bytes]) -> List[Witness]:
        self._check_members(values)
        levels = self._levels(values)
        result = []
        for position in range(len(values)):
            path, index = [], position
            for level in levels[:-1]:
                path.append(level[index ^ 1])
                index //= 2
            result.append(Witness(position.to_bytes(_POSITION_BYTES, "big") + b"".join(path), self.witness_bits))
        return result

    def verify(self, z: AccValue, w: Witness, d: bytes) -> bool:
        size = self.ak.k // 8
        if len(w.data) != _POSITION_BYTES + size * self.depth or len(z.data) != size:
            return False
        index = int.from_bytes(w.data[:_POSITION_BYTES], "big")
        if index >= self.ak.capacity:
            return False
        node = self._leaf(d)
        for level in range(self.depth):
            sibling = w.data[_POSITION_BYTES + level * size : _POSITION_BYTES + (level + 1) * size]
            node = self._node(sibling, node) if index & 1 else self._node(node, sibling)
            index //= 2
        return node == z.data


class BilinearAccumulator(AccumulatorBase):
    def __init__(self, ak: AccKey):
        super().__init__(ak)
        self._setup = _lookup_setup(ak.setup_id)
        if self._setup is None:
            raise ValueError("unknown trusted setup; keys must come from acc_gen()")

    @property
    def witness_bits(self) -> int:
        return self.ak.k

    @property
    def _width(self) -> int:
        return (self._setup.prime.bit_length() + 7) // 8

    def _root(self, value: bytes) -> int:
        return digest_int(value, self.ak.k) % self._setup.prime

    def _encode(self, value: int) -> bytes:
        return value.to_bytes(self._width, "big")

    def evaluate(self, values: Sequence[bytes]) -> AccValue:
        self._check_members(values)
        return AccValue(self._encode(self._setup.characteristic([self._root(v) for v in values])), self.ak.k)

    def witnesses(self, values: Sequence[bytes]) -> List[Witness]:
        self._check_members(values)
        roots = [self._root(v) for v in values]
        # prefix[i] * suffix[i + 1] is the product over all members except i
        prefix, suffix = [1], [1]
        for root in roots:
            prefix.append(prefix[-1] * self._setup.characteristic([root]) % self._setup.prime)
        for root in reversed(roots):
            suffix.append(suffix[-1] * self._setup.characteristic([root]) % self._setup.prime)
        suffix.reverse()
        return [
            Witness(self._encode(prefix[i] * suffix[i + 1] % self._setup.prime), self.ak.k) for i in range(len(roots))
        ]

    def verify(self, z: AccValue, w: Witness, d: bytes) -> bool:
        if len(z.data) != self._width or len(w.data) != self._width:
            return False
        z_int, w_int = int.from_bytes(z.data, "big"), int.from_bytes(w.data, "big")
        if z_int >= self._setup.prime or w_int >= self._setup.prime:
            return False
        return self._setup.check(z_int, w_int, self._root(d))


def get_accumulator(ak: AccKey) -> AccumulatorBase:
    if ak.scheme is AccScheme.HASH_TREE:
        return HashTreeAccumulator(ak)
    return BilinearAccumulator(ak)


def acc_eval(ak: AccKey, values: Sequence[bytes]) -> AccValue:
    return get_accumulator(ak).evaluate(values)


def acc_create_witnesses(ak: AccKey, values: Sequence[bytes]) -> List[Witness]:
    return get_accumulator(ak).witnesses(values)


def acc_create_wit(ak: AccKey, z: AccValue, d: bytes, members: Sequence[bytes]) -> Optional[Witness]:
    """
    Witness for ``d`` as a member of ``members``, or None (the ⊥ answer) if d is not a member or ``members`` does
    not accumulate to ``z``.
    """
    accumulator = get_accumulator(ak)
    if d not in members or accumulator.evaluate(members) != z:
        return None
    return accumulator.witnesses(members)[list(members).index(d)]


def acc_verify(ak: AccKey, z: AccValue, w: Optional[Witness], d: bytes) -> bool:
    if w is None or z is None:
        return False
    try:
        return get_accumulator(ak).verify(z, w, d)
    except (ValueError, TypeError):
        logger.debug("Malformed accumulator input rejected", exc_info=True)
        return False
