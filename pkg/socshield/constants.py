"""Fixed cipher parameters, clock counts and channel limits."""

from pathlib import Path

# Table of RAM sizes per cipher: (key bits, max IV bits, internal state bits).
TRIVIUM_KEY_BITS = 80
TRIVIUM_IV_BITS = 80
TRIVIUM_STATE_BITS = 288
TRIVIUM_REGISTER_LENGTHS = (93, 84, 111)

GRAIN_KEY_BITS = 128
GRAIN_IV_BITS = 96
GRAIN_STATE_BITS = 256
GRAIN_REGISTER_BITS = 128

# Warm-up clocks before the first keystream bit.
TRIVIUM_INIT_CLOCKS = 4 * TRIVIUM_STATE_BITS  # 1152
GRAIN_INIT_CLOCKS = 256

# Grain-128a MAC: 32-bit accumulator + 32-bit shift register preloaded from the
# first 64 pre-output bits after warm-up.
GRAIN_MAC_REGISTER_BITS = 32
GRAIN_MAC_PRELOAD_BITS = 2 * GRAIN_MAC_REGISTER_BITS
GRAIN_MAX_TAG_BITS = 32

DATAPATH_BITS = 32
RADIX_SET = (1, 8, 16, 32)

KEYSTREAM_CAP_BITS = 1 << 32
CLOCK_SATURATION = (1 << 64) - 1

# Secure channel
MAX_PAYLOAD_BYTES = 1 << 28
MSG_COUNTER_LIMIT = 1 << 63
SESSION_ID_LIMIT = 1 << 16

# Benchmark
DEFAULT_PAYLOAD_BYTES = 1 << 20
DEFAULT_REPETITIONS = 5
MIN_REPETITIONS = 3

DATA_DIR = Path(__file__).resolve().parent / "data"
BUNDLED_KAT_FILE = DATA_DIR / "kat_vectors.txt"
