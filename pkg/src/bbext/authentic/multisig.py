"""
Multi-signatures over Ed25519 member signatures.

The aggregate is the canonical, signer-sorted concatenation of (2-byte signer id ‖ 64-byte signature), so combining
overlapping signer sets is a plain union. Accounting never looks at these bytes: a multi-signature is charged
k + n bits (aggregate plus signer bitmap) whatever its signer count.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from cryptography.exceptions import InvalidSignature
from cryptography.hazmat.primitives import hashes
from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PrivateKey, Ed25519PublicKey
from cryptography.hazmat.primitives.kdf.hkdf import HKDF

from bbext.authentic.hashing import tagged

_ID_BYTES = 2
_SIGNATURE_BYTES = 64
_ENTRY_BYTES = _ID_BYTES + _SIGNATURE_BYTES


@dataclass(frozen=True)
class MultiSig:
    message_tag: bytes
    aggregate: bytes
    signers: FrozenSet[int]

    @property
    def chain_length(self) -> int:
        return len(self.signers)


def _entries(aggregate: bytes) -> Optional[Dict[int, bytes]]:
    if len(aggregate) % _ENTRY_BYTES:
        return None
    entries = {}
    for offset in range(0, len(aggregate), _ENTRY_BYTES):
        signer = int.from_bytes(aggregate[offset : offset + _ID_BYTES], "big")
        if signer in entries:
            return None
        entries[signer] = aggregate[offset + _ID_BYTES : offset + _ENTRY_BYTES]
    return entries


def _pack(entries: Dict[int, bytes]) -> bytes:
    return b"".join(signer.to_bytes(_ID_BYTES, "big") + entries[signer] for signer in sorted(entries))


def msig_combine(sig_a: MultiSig, sig_b: MultiSig) -> MultiSig:
    if sig_a.message_tag != sig_b.message_tag:
        raise ValueError("cannot combine multi-signatures over different messages")
    entries = _entries(sig_b.aggregate) or {}
    entries.update(_entries(sig_a.aggregate) or {})
    return MultiSig(sig_a.message_tag, _pack(entries), sig_a.signers | sig_b.signers)


class PartySigner:
    """Signing handle of one party. Only the party (or the adversary, for corrupt parties) ever holds it."""

    def __init__(self, party: int, private_key: Ed25519PrivateKey, session_id: bytes):
        self.party = party
        self._private_key = private_key
        self._session_id = session_id

    def sign(self, message_tag: bytes) -> MultiSig:
        signature = self._private_key.sign(tagged(self._session_id, message_tag))
        return MultiSig(message_tag, _pack({self.party: signature}), frozenset([self.party]))


class SigningAuthority:
    """
    Session PKI: derives every party's Ed25519 key from the session seed and verifies multi-signatures against the
    public keys. Verification results of individual member signatures are cached.

    :param n: number of parties, ids 1..n
    :param seed: session key material
    :param session_id: bound into every signed message
    """

    def __init__(self, n: int, seed: bytes, session_id: bytes):
        self.n = n
        self.session_id = session_id
        self._private_keys = {party: self._derive(seed, party) for party in range(1, n + 1)}
        self._public_keys: Dict[int, Ed25519PublicKey] = {
            party: key.public_key() for party, key in self._private_keys.items()
        }
        self._verified: Dict[Tuple[int, bytes, bytes], bool] = {}

    def _derive(self, seed: bytes, party: int) -> Ed25519PrivateKey:
        material = HKDF(
            algorithm=hashes.SHA256(), length=32, salt=self.session_id, info=b"msig-party-%d" % party
        ).derive(seed)
        return Ed25519PrivateKey.from_private_bytes(material)

    def signer(self, party: int) -> PartySigner:
        return PartySigner(party, self._private_keys[party], self.session_id)

    def signers(self, parties: Iterable[int]) -> Dict[int, PartySigner]:
        return {party: self.signer(party) for party in parties}

    def _check(self, party: int, message_tag: bytes, signature: bytes) -> bool:
        key = (party, message_tag, signature)
        if key not in self._verified:
            try:
                self._public_keys[party].verify(signature, tagged(self.session_id, message_tag))
                self._verified[key] = True
            except InvalidSignature:
                self._verified[key] = False
        return self._verified[key]

    def verify(self, msig: Optional[MultiSig], message_tag: bytes) -> bool:
        if msig is None or msig.message_tag != message_tag or not msig.signers:
            return False
        entries = _entries(msig.aggregate)
        if entries is None or set(entries) != set(msig.signers):
            return False
        if any(party not in self._public_keys for party in entries):
            return False
        return all(self._check(party, message_tag, signature) for party, signature in entries.items())
