# GF(2^16) with x^16 + x^12 + x^3 + x + 1
GF_BITS = 16
PRIMITIVE_POLY = 0x1100B

# m ‖ zero padding ‖ 64-bit big-endian bit length
LENGTH_TRAILER_BITS = 64

# wire width of a share index (16-bit big-endian)
INDEX_BITS = 16

SECURITY_BITS = (128, 256)
DEFAULT_SECURITY_BITS = 256

# an envelope may be deferred at most FAIRNESS_FACTOR * n^2 scheduling steps
FAIRNESS_FACTOR = 10

MAX_ROUNDS = 10_000
MAX_EVENTS = 5_000_000
MAX_BINARY_AGREEMENT_ROUNDS = 128

# party id of the trusted functionality that hosts ideal oracles
FUNCTIONALITY_ID = 0

HAPPY_MESSAGE = b"HAPPY"

SEED_ENV_VAR = "BBEXT_SEED"
DEFAULT_SEED = 0
