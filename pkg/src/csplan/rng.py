"""Deterministic random streams keyed by a 64-bit seed plus string labels."""

import hashlib

import numpy as np


def stream(seed: int, *labels) -> np.random.Generator:
    """Return a counter-based generator for (seed, labels).

    Streams with distinct labels are statistically independent, so every
    stochastic operation can own its stream and draw from it without
    affecting any other, keeping results reproducible run to run.
    """
    h = hashlib.sha256()
    h.update(int(seed).to_bytes(8, "little", signed=True))
    for label in labels:
        h.update(str(label).encode("utf-8"))
        h.update(b"\x00")
    key = int.from_bytes(h.digest()[:16], "little")
    return np.random.Generator(np.random.Philox(key=key))


def child_seed(seed: int, *labels) -> int:
    """Derive a new 63-bit seed from (seed, labels), for nested components."""
    h = hashlib.sha256()
    h.update(int(seed).to_bytes(8, "little", signed=True))
    for label in labels:
        h.update(str(label).encode("utf-8"))
        h.update(b"\x01")
    return int.from_bytes(h.digest()[:8], "little") >> 1
