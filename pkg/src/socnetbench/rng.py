"""Deterministic derivation of independent random streams from a master seed."""

import hashlib
import secrets

import numpy as np


def _key(k) -> int:
    if isinstance(k, (int, np.integer)) and k >= 0:
        return int(k)
    if isinstance(k, str):
        k = k.encode("utf-8")
    if isinstance(k, bytes):
        return int.from_bytes(hashlib.blake2b(k, digest_size=8).digest(), "little")
    raise TypeError(f"cannot derive a stream key from {k!r}")


def derive_rng(seed, *keys) -> np.random.Generator:
    """Generator for the stream named by ``keys`` under master ``seed``.

    Streams for different keys are statistically independent, and a stream
    depends only on its own key, so adding streams never perturbs others.
    """
    if isinstance(seed, np.random.Generator):
        if keys:
            raise TypeError("keys cannot be combined with a Generator")
        return seed
    if seed is None:
        raise ValueError("a seed is required")
    return np.random.default_rng(np.random.SeedSequence([_key(seed), *map(_key, keys)]))


def fresh_seed() -> int:
    return secrets.randbits(32)
