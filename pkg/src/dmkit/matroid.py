"""Matroids as equicardinal set systems: exchange axiom, rank, circuits,
quotients, and paving properties."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .bitset import (
    down_closure,
    family_to_bitmap,
    iter_bits,
    minimal_members,
    up_closure,
)
from .errors import (
    GroundSetMismatchError,
    NotADeltaMatroidError,
    NotAMatroidError,
)
from .setsystem import SetSystem


def exchange_violation(system: SetSystem) -> tuple[int, int, int] | None:
    """First (B1, B2, x) failing basis exchange, or None.

    Assumes the family is equicardinal; exchange asks for y in B2-B1 with
    (B1 - x) + y feasible, for every x in B1-B2.
    """
    masks = system.sorted_masks
    fam = system.masks
    for b1 in masks:
        for b2 in masks:
            out = b2 & ~b1
            for x in iter_bits(b1 & ~b2):
                w = b1 ^ (1 << x)
                if not any(w | (1 << y) in fam for y in iter_bits(out)):
                    return (b1, b2, x)
    return None


def is_matroid(system: SetSystem) -> bool:
    """True when the feasible sets are equicardinal and satisfy exchange."""
    if not system.is_proper:
        return False
    sizes = {m.bit_count() for m in system.masks}
    if len(sizes) != 1:
        return False
    return exchange_violation(system) is None


@dataclass(frozen=True)
class Matroid:
    """A matroid carried by its basis family."""

    system: SetSystem
    rank: int

    @classmethod
    def from_system(cls, system: SetSystem) -> Matroid:
        if not system.is_proper:
            raise NotAMatroidError("empty basis family")
        sizes = {m.bit_count() for m in system.masks}
        if len(sizes) != 1:
            raise NotAMatroidError(f"basis sizes differ: {sorted(sizes)}")
        bad = exchange_violation(system)
        if bad is not None:
            raise NotAMatroidError(f"basis exchange fails at {bad}")
        return cls(system, sizes.pop())

    @classmethod
    def _unchecked(cls, system: SetSystem) -> Matroid:
        # For constructions whose output is a matroid by theorem; tests
        # re-validate on small instances.
        return cls(system, next(iter(system.masks)).bit_count())

    @property
    def labels(self) -> tuple[str, ...]:
        return self.system.labels

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def bases(self) -> frozenset[int]:
        return self.system.masks

    # -- rank and circuits ---------------------------------------------

    def rank_of_mask(self, x: int) -> int:
        return max((b & x).bit_count() for b in self.system.masks)

    def rank_of(self, elements: Iterable[str]) -> int:
        return self.rank_of_mask(self.system.mask_of(elements))

    def independent_bitmap(self) -> int:
        """Family bitmap of the independent sets (subsets of bases)."""
        return _independent_bitmap(self)

    def spanning_bitmap(self) -> int:
        """Family bitmap of the spanning sets (supersets of bases)."""
        return _spanning_bitmap(self)

    def circuit_masks(self) -> tuple[int, ...]:
        return _circuit_masks(self)

    def circuits(self) -> tuple[tuple[str, ...], ...]:
        """Minimal dependent sets, sorted by (size, members)."""
        return tuple(self.system.members(c) for c in self.circuit_masks())

    # -- constructions --------------------------------------------------

    def dual(self) -> Matroid:
        full = (1 << self.n) - 1
        sys = SetSystem(self.labels, frozenset(full ^ b for b in self.bases))
        return Matroid(sys, self.n - self.rank)

    def delete(self, e: str) -> Matroid:
        return Matroid._unchecked(self.system.delete(e))

    def contract(self, e: str) -> Matroid:
        return Matroid._unchecked(self.system.contract(e))

    def restrict(self, elements: Iterable[str]) -> Matroid:
        keep = set(elements)
        out = self
        for e in self.labels:
            if e not in keep:
                out = out.delete(e)
        return out

    def contract_set(self, elements: Iterable[str]) -> Matroid:
        out = self
        for e in elements:
            out = out.contract(e)
        return out


@lru_cache(maxsize=1 << 16)
def _independent_bitmap(m: Matroid) -> int:
    return down_closure(family_to_bitmap(m.bases), m.n)


@lru_cache(maxsize=1 << 16)
def _spanning_bitmap(m: Matroid) -> int:
    return up_closure(family_to_bitmap(m.bases), m.n)


@lru_cache(maxsize=1 << 16)
def _circuit_masks(m: Matroid) -> tuple[int, ...]:
    dependent = ~_independent_bitmap(m) & ((1 << (1 << m.n)) - 1)
    return tuple(
        sorted(iter_bits(minimal_members(dependent, m.n)), key=lambda c: (c.bit_count(), c))
    )


def uniform_matroid(r: int, n: int | None = None, labels: Iterable[str] | None = None) -> Matroid:
    """U_{r,n} on the given labels (defaults to a, b, c, ...)."""
    if labels is None:
        labels = tuple("abcdefghijkl"[:n])
    labels = tuple(labels)
    masks = frozenset(m for m in range(1 << len(labels)) if m.bit_count() == r)
    return Matroid(SetSystem(labels, masks), r)


def is_quotient(q: Matroid, lift: Matroid) -> bool:
    """True when every circuit of the lift is a union of circuits of q.

    Both matroids must share the (ordered) ground set.  This is the
    circuit form of the standard quotient characterizations; the basis
    form is used as an independent oracle in the test suite.
    """
    if q.labels != lift.labels:
        raise GroundSetMismatchError("quotient test needs a common ground set")
    q_circuits = q.circuit_masks()
    for c in lift.circuit_masks():
        covered = 0
        for qc in q_circuits:
            if not qc & ~c:
                covered |= qc
                if covered == c:
                    break
        if covered != c:
            return False
    return True


def paving_flags(m: Matroid) -> tuple[bool, bool]:
    """(paving, sparse paving): circuits no smaller than the rank, and the
    same for the dual."""
    paving = all(c.bit_count() >= m.rank for c in m.circuit_masks())
    if not paving:
        return (False, False)
    d = m.dual()
    co_paving = all(c.bit_count() >= d.rank for c in d.circuit_masks())
    return (True, co_paving)


def min_max_matroids(system: SetSystem) -> tuple[Matroid, Matroid]:
    """The minimal and maximal matroids of a delta-matroid, with the
    containment property of every feasible set checked on the way."""
    if not system.is_delta_matroid():
        raise NotADeltaMatroidError("min/max matroids need the exchange axiom")
    lo = Matroid.from_system(SetSystem(system.labels, frozenset(system.min_sets())))
    hi = Matroid.from_system(SetSystem(system.labels, frozenset(system.max_sets())))
    lo_up = up_closure(family_to_bitmap(lo.bases), system.n)
    hi_down = down_closure(family_to_bitmap(hi.bases), system.n)
    for m in system.masks:
        if not (lo_up >> m & 1 and hi_down >> m & 1):
            raise NotADeltaMatroidError(
                f"feasible mask {m} is not sandwiched between minimal and "
                "maximal bases"
            )
    return lo, hi
