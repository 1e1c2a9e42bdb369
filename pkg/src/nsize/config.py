"""Runtime limits. The enumeration cap can be overridden with ``NSIZE_MAX_ENUM``."""

from __future__ import annotations

import os

DEFAULT_MAX_ENUM = 1 << 24
DEFAULT_HORIZON = 1 << 20
# lcm of moduli above which periodic structure is not tabulated
MAX_PERIOD = 1 << 20
# largest argument accepted by the prime counting routine
MAX_PRIME_PI = 10**12


def max_enum() -> int:
    raw = os.environ.get("NSIZE_MAX_ENUM")
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_ENUM
    value = int(raw)
    if value < 1:
        raise ValueError("NSIZE_MAX_ENUM must be a positive integer")
    return value
