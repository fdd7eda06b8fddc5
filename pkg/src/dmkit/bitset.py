"""Bitmask helpers for subsets of small ground sets.

Two encodings are used throughout the package:

* a *mask* is an int whose bit i stands for element i of an ordered
  ground set, so a subset of an n-element set is an int < 2**n;
* a *family bitmap* is an int over 2**n bit positions whose bit m is set
  when mask m belongs to the family.  Whole-family transforms (upward and
  downward closure, layer slicing) become a handful of big-int operations.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def permute_mask(mask: int, perm: tuple[int, ...]) -> int:
    """Relocate bit i of mask to position perm[i]."""
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


@lru_cache(maxsize=None)
def masks_without_bit(n: int, i: int) -> int:
    """Family bitmap of all masks over n elements that avoid element i."""
    bm = 0
    for m in range(1 << n):
        if not m >> i & 1:
            bm |= 1 << m
    return bm


@lru_cache(maxsize=None)
def masks_of_size(n: int, k: int) -> int:
    """Family bitmap of all masks over n elements with exactly k bits."""
    bm = 0
    for m in range(1 << n):
        if m.bit_count() == k:
            bm |= 1 << m
    return bm


def family_to_bitmap(masks) -> int:
    bm = 0
    for m in masks:
        bm |= 1 << m
    return bm


def bitmap_to_masks(bm: int) -> list[int]:
    return list(iter_bits(bm))


def up_closure(bm: int, n: int) -> int:
    """Bitmap of all supersets of members of bm."""
    for i in range(n):
        bm |= (bm & masks_without_bit(n, i)) << (1 << i)
    return bm


def down_closure(bm: int, n: int) -> int:
    """Bitmap of all subsets of members of bm."""
    for i in range(n):
        with_i = ~masks_without_bit(n, i)
        bm |= (bm & with_i) >> (1 << i)
    return bm


def minimal_members(bm: int, n: int) -> int:
    """Bitmap of the inclusion-minimal masks in bm; bm must be up-closed."""
    covered = 0
    for i in range(n):
        covered |= (bm & masks_without_bit(n, i)) << (1 << i)
    return bm & ~covered


def format_members(mask: int, labels: tuple[str, ...]) -> str:
    """Human-readable subset, e.g. ``{a,c}`` or ``{}``."""
    return "{" + ",".join(labels[i] for i in iter_bits(mask)) + "}"
