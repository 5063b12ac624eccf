from bbext.coding.reed_solomon import DataBlocks
from bbext.constants import LENGTH_TRAILER_BITS
from bbext.errors import DecodeFailure

_TRAILER_BYTES = LENGTH_TRAILER_BITS // 8


def pad_message(message: bytes, b: int) -> DataBlocks:
    """
    Lay out ``message ‖ zero padding ‖ 64-bit big-endian bit length`` and split it into b equal symbol-blocks.
    The padded length is the smallest multiple of 16·b bits that fits the message and the trailer.
    """
    if b < 1:
        raise ValueError(f"b must be positive, got {b}")
    row = 2 * b
    total = -(-(len(message) + _TRAILER_BYTES) // row) * row
    bit_length = 8 * len(message)
    payload = message + bytes(total - len(message) - _TRAILER_BYTES) + bit_length.to_bytes(_TRAILER_BYTES, "big")
    size = total // b
    return DataBlocks(tuple(payload[i * size : (i + 1) * size] for i in range(b)), bit_length)


def unpad_blocks(data: DataBlocks) -> bytes:
    payload = b"".join(data.blocks)
    if len(payload) < _TRAILER_BYTES:
        raise DecodeFailure("payload is shorter than the length trailer")
    bit_length = int.from_bytes(payload[-_TRAILER_BYTES:], "big")
    if bit_length % 8 or bit_length // 8 > len(payload) - _TRAILER_BYTES:
        raise DecodeFailure(f"malformed length trailer ({bit_length} bits)")
    size = bit_length // 8
    # non-zero padding means the blocks are not the layout of any message
    if any(payload[size:-_TRAILER_BYTES]):
        raise DecodeFailure("non-zero padding")
    return payload[:size]


def padded_share_bits(l: int, b: int) -> int:
    """Bits of one symbol-block for an l-bit message split into b blocks"""
    row_bits = 16 * b
    return -(-(l + LENGTH_TRAILER_BITS) // row_bits) * 16
