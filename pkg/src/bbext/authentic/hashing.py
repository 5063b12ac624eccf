import hashlib


def digest(data: bytes, k: int) -> bytes:
    """SHA-256 truncated to k bits (k a multiple of 8, at most 256)"""
    if k > 256 or k % 8:
        raise ValueError(f"cannot truncate SHA-256 to {k} bits")
    return hashlib.sha256(data).digest()[: k // 8]


def digest_int(data: bytes, k: int) -> int:
    return int.from_bytes(digest(data, k), "big")


def tagged(*parts: bytes) -> bytes:
    """Length-prefixed concatenation, so distinct part lists never collide"""
    return b"".join(len(part).to_bytes(4, "big") + part for part in parts)
