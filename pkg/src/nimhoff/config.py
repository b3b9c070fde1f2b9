"""Resource caps. DP and node caps can be overridden through the environment."""

import os

from nimhoff.errors import ResourceCapError

HEAP_CAP = 2**32 - 1
DEFAULT_DP_CAP = 100_000
DEFAULT_NODE_CAP = 5_000_000


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def dp_cap() -> int:
    return _env_int("NIMHOFF_DP_CAP", DEFAULT_DP_CAP)


def node_cap() -> int:
    return _env_int("NIMHOFF_NODE_CAP", DEFAULT_NODE_CAP)


def check_dp_length(length: int) -> None:
    cap = dp_cap()
    if length > cap:
        raise ResourceCapError("Grundy sequence length", length, cap)


def check_node_count(count: int) -> None:
    cap = node_cap()
    if count > cap:
        raise ResourceCapError("oracle node count", count, cap)
