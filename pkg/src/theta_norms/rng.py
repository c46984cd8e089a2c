"""Reproducible per-trial random streams.

Every trial draws from Philox4x64-10 (the counter-based generator shipped
with numpy) with

    key     = (master_seed mod 2**64, crc32(check_id))
    counter = (trial, 0, 0, 0)

so the stream of a trial depends only on ``(master_seed, check_id, trial)``
and never on scheduling or on which other trials ran.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def check_key(check_id: str) -> int:
    return zlib.crc32(check_id.encode("utf-8")) & 0xFFFFFFFF


def trial_rng(master_seed: int, check_id: str, trial: int) -> np.random.Generator:
    bitgen = np.random.Philox(
        key=np.array([master_seed & _MASK64, check_key(check_id)], dtype=np.uint64),
        counter=np.array([trial & _MASK64, 0, 0, 0], dtype=np.uint64),
    )
    return np.random.Generator(bitgen)
