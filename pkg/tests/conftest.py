"""Shared helpers: seeded random structures and brute-force oracles."""

from __future__ import annotations

import random

import pytest

from dmkit.setsystem import SetSystem

LABELS = "abcdefgh"


def random_system(rng: random.Random, n: int, proper: bool = True) -> SetSystem:
    """Uniform random family over the subsets of an n-element ground set."""
    masks = {m for m in range(1 << n) if rng.random() < 0.5}
    if proper and not masks:
        masks = {rng.randrange(1 << n)}
    return SetSystem(tuple(LABELS[:n]), frozenset(masks))


def random_delta_matroid(rng: random.Random, n: int, tries: int = 2000) -> SetSystem:
    """Rejection-sample a delta-matroid; falls back to a twisted uniform
    matroid when the dice are cold."""
    for _ in range(tries):
        s = random_system(rng, n)
        if s.is_delta_matroid():
            return s
    r = rng.randrange(n + 1)
    masks = frozenset(m for m in range(1 << n) if m.bit_count() == r)
    base = SetSystem(tuple(LABELS[:n]), masks)
    return base.twist(rng.sample(list(base.labels), rng.randrange(n + 1)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260809)
