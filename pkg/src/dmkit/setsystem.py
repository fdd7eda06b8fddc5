"""Proper set systems: twists, minors, the symmetric exchange axiom,
isomorphism, and (de)serialization.

A set system is an ordered tuple of element labels together with a family
of feasible subsets encoded as bitmasks against the label order.  Values
are immutable and all operations are pure functions, so instances may be
shared freely across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .bitset import format_members, iter_bits, permute_mask
from .errors import (
    CapacityError,
    FormatError,
    ImproperSystemError,
    InvalidMinorError,
    UnknownElementError,
)

# Exhaustive permutation canonicalization is meant for small ground sets.
PERMUTATION_CAP = 10


class ElementStatus(Enum):
    LOOP = "loop"
    COLOOP = "coloop"
    NEITHER = "neither"


@dataclass(frozen=True)
class SetSystem:
    """A set system (E, F) with E ordered and F stored as bitmasks."""

    labels: tuple[str, ...]
    masks: frozenset[int]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise FormatError("duplicate element labels")
        full = (1 << len(self.labels)) - 1
        for m in self.masks:
            if m < 0 or m & ~full:
                raise FormatError(f"mask {m} uses bits outside the ground set")

    @classmethod
    def from_sets(cls, labels: Sequence[str], feasible: Iterable[Iterable[str]]) -> SetSystem:
        labels = tuple(labels)
        index = {e: i for i, e in enumerate(labels)}
        if len(index) != len(labels):
            raise FormatError("duplicate element labels")
        masks = set()
        for fs in feasible:
            m = 0
            for e in fs:
                if e not in index:
                    raise FormatError(f"feasible set references unknown label {e!r}")
                m |= 1 << index[e]
            masks.add(m)
        return cls(labels, frozenset(masks))

    # -- basic queries ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def is_proper(self) -> bool:
        return bool(self.masks)

    @cached_property
    def sorted_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self.masks, key=lambda m: (m.bit_count(), m)))

    @cached_property
    def size_signature(self) -> tuple[int, ...]:
        """Sorted multiset of feasible-set sizes; isomorphism prefilter."""
        return tuple(sorted(m.bit_count() for m in self.masks))

    @cached_property
    def is_even(self) -> bool:
        self._require_proper()
        parities = {m.bit_count() & 1 for m in self.masks}
        return len(parities) == 1

    def _require_proper(self) -> None:
        if not self.masks:
            raise ImproperSystemError("operation requires a proper set system")

    def mask_of(self, elements: Iterable[str]) -> int:
        m = 0
        for e in elements:
            try:
                m |= 1 << self.labels.index(e)
            except ValueError:
                raise UnknownElementError(f"unknown element {e!r}") from None
        return m

    def members(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in iter_bits(mask))

    def feasible_sets(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.members(m) for m in self.sorted_masks)

    def element_status(self, e: str) -> ElementStatus:
        self._require_proper()
        bit = self.mask_of([e])
        if all(m & bit for m in self.masks):
            return ElementStatus.COLOOP
        if not any(m & bit for m in self.masks):
            return ElementStatus.LOOP
        return ElementStatus.NEITHER

    # -- twists and minors --------------------------------------------

    def twist(self, elements: Iterable[str]) -> SetSystem:
        """Partial dual: replace each feasible F by F symmetric-difference A."""
        a = self.mask_of(elements)
        return SetSystem(self.labels, frozenset(m ^ a for m in self.masks))

    def dual(self) -> SetSystem:
        return self.twist(self.labels)

    def _drop(self, bit_index: int) -> tuple[str, ...]:
        return self.labels[:bit_index] + self.labels[bit_index + 1 :]

    def _squeeze(self, m: int, bit_index: int) -> int:
        low = m & ((1 << bit_index) - 1)
        return low | ((m >> (bit_index + 1)) << bit_index)

    def delete(self, e: str) -> SetSystem:
        """Single-element deletion; a coloop is contracted instead."""
        self._require_proper()
        if self.element_status(e) is ElementStatus.COLOOP:
            return self._contract_raw(e)
        return self._delete_raw(e)

    def contract(self, e: str) -> SetSystem:
        """Single-element contraction; a loop is deleted instead."""
        self._require_proper()
        if self.element_status(e) is ElementStatus.LOOP:
            return self._delete_raw(e)
        return self._contract_raw(e)

    def _delete_raw(self, e: str) -> SetSystem:
        i = self.labels.index(e)
        bit = 1 << i
        masks = frozenset(self._squeeze(m, i) for m in self.masks if not m & bit)
        return SetSystem(self._drop(i), masks)

    def _contract_raw(self, e: str) -> SetSystem:
        i = self.labels.index(e)
        bit = 1 << i
        masks = frozenset(self._squeeze(m ^ bit, i) for m in self.masks if m & bit)
        return SetSystem(self._drop(i), masks)

    def minor(self, delete: Iterable[str] = (), contract: Iterable[str] = ()) -> SetSystem:
        """Normal-form minor S\\X/Y.

        Requires disjoint X and Y and a witnessing feasible set F with
        Y <= F <= E-X; rejected otherwise rather than reordered.
        """
        self._require_proper()
        x = self.mask_of(delete)
        y = self.mask_of(contract)
        if x & y:
            raise InvalidMinorError(
                f"delete and contract sets overlap on {format_members(x & y, self.labels)}"
            )
        if not any(m & y == y and not m & x for m in self.masks):
            raise InvalidMinorError(
                "no feasible set is disjoint from the deleted part and "
                "contains the contracted part"
            )
        keep = [i for i in range(self.n) if not (x | y) >> i & 1]
        labels = tuple(self.labels[i] for i in keep)
        masks = set()
        for m in self.masks:
            if m & y == y and not m & x:
                masks.add(sum(1 << j for j, i in enumerate(keep) if m >> i & 1))
        return SetSystem(labels, frozenset(masks))

    def restrict(self, elements: Iterable[str]) -> SetSystem:
        """Sequential deletion of everything outside the given elements."""
        keep = set(elements)
        out = self
        for e in self.labels:
            if e not in keep:
                out = out.delete(e)
        return out

    # -- the symmetric exchange axiom ---------------------------------

    def se_violation(self) -> tuple[int, int, int] | None:
        """First (X, Y, u) witnessing failure of the exchange axiom, or None.

        X and Y are feasible masks and u an element index with u in X^Y such
        that no v in X^Y makes X ^ {u,v} feasible.  Scan order is fixed:
        masks sorted by (size, value), u ascending.
        """
        self._require_proper()
        masks = self.sorted_masks
        fam = self.masks
        for x in masks:
            for y in masks:
                d = x ^ y
                if not d:
                    continue
                for u in iter_bits(d):
                    w = x ^ (1 << u)
                    if w in fam:
                        continue
                    rest = d & ~(1 << u)
                    if not any(w ^ (1 << v) in fam for v in iter_bits(rest)):
                        return (x, y, u)
        return None

    def is_delta_matroid(self) -> bool:
        """True when the symmetric exchange axiom holds."""
        self._require_proper()
        if self.n <= PERMUTATION_CAP and len(self.masks) ** 2 > (1 << self.n):
            return _se_holds_bitmap(sum(1 << m for m in self.masks), self.n)
        return self.se_violation() is None

    def min_sets(self) -> tuple[int, ...]:
        self._require_proper()
        k = min(m.bit_count() for m in self.masks)
        return tuple(m for m in self.sorted_masks if m.bit_count() == k)

    def max_sets(self) -> tuple[int, ...]:
        self._require_proper()
        k = max(m.bit_count() for m in self.masks)
        return tuple(m for m in self.sorted_masks if m.bit_count() == k)

    # -- isomorphism ---------------------------------------------------

    def canonical_form(self, cap: int = PERMUTATION_CAP) -> tuple:
        """Minimum over ground-set permutations of the sorted (size, mask)
        family encoding, prefixed with the ground-set size."""
        if self.n > cap:
            raise CapacityError(
                f"canonical form needs {self.n}! permutations; cap is {cap}"
            )
        return _canonical_form(self.n, tuple(sorted(self.masks)))

    def canonical_permutation(self, cap: int = PERMUTATION_CAP) -> tuple[int, ...]:
        """A permutation (bit i -> position perm[i]) achieving canonical_form;
        ties broken by the lexicographically least permutation."""
        if self.n > cap:
            raise CapacityError(
                f"canonical form needs {self.n}! permutations; cap is {cap}"
            )
        best_enc = None
        best_perm = None
        for perm in permutations(range(self.n)):
            enc = tuple(sorted((m.bit_count(), permute_mask(m, perm)) for m in self.masks))
            if best_enc is None or enc < best_enc:
                best_enc, best_perm = enc, perm
        return best_perm if best_perm is not None else ()

    def is_isomorphic(self, other: SetSystem, cap: int = PERMUTATION_CAP) -> bool:
        """Relabeling equivalence via cached canonical forms (small n) or
        an early-exit permutation search."""
        if self.n != other.n or len(self.masks) != len(other.masks):
            return False
        if self.size_signature != other.size_signature:
            return False
        if self.n <= 5:
            return self.canonical_form(cap) == other.canonical_form(cap)
        if self.n > cap:
            raise CapacityError(f"isomorphism search cap is {cap} elements")
        target = other.masks
        for perm in permutations(range(self.n)):
            if all(permute_mask(m, perm) in target for m in self.masks):
                return True
        return False

    def relabel(self, mapping: dict[str, str]) -> SetSystem:
        """Rename elements; mask encoding is unchanged."""
        labels = tuple(mapping.get(e, e) for e in self.labels)
        return SetSystem(labels, self.masks)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        fam = ";".join(
            ",".join(self.members(m)) or "-" for m in self.sorted_masks
        )
        return f"SetSystem({' '.join(self.labels)} | {fam})"


def _se_holds_bitmap(bm: int, n: int) -> bool:
    """Exchange-axiom check in O(2^n n + |F|^2 n) using a flip table."""
    size = 1 << n
    flip1 = [0] * size
    for w in range(size):
        acc = 0
        for i in range(n):
            if bm >> (w ^ (1 << i)) & 1:
                acc |= 1 << i
        flip1[w] = acc
    masks = [m for m in range(size) if bm >> m & 1]
    for x in masks:
        fx = flip1[x]
        for y in masks:
            bad = (x ^ y) & ~fx
            d = x ^ y
            while bad:
                ub = bad & -bad
                bad ^= ub
                if not d & flip1[x ^ ub] & ~ub:
                    return False
    return True


@lru_cache(maxsize=65536)
def _canonical_form(n: int, masks: tuple[int, ...]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        enc = tuple(sorted((m.bit_count(), permute_mask(m, perm)) for m in masks))
        if best is None or enc < best:
            best = enc
    if best is None:
        best = tuple(sorted((m.bit_count(), m) for m in masks))
    return (n,) + best


# -- serialization -----------------------------------------------------


def parse_set_system(text: str) -> SetSystem:
    """Parse the JSON or compact text serialization.

    JSON: ``{"elements": [...], "feasible": [[...], ...]}``.
    Compact: labels, a ``|`` separator, then ``;``-separated feasible sets
    with ``-`` for the empty set.  An empty feasible family parses to an
    improper system (usable by the census, rejected by delta-matroid ops).
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON: {exc}") from None
        if not isinstance(doc, dict) or "elements" not in doc or "feasible" not in doc:
            raise FormatError('JSON form needs "elements" and "feasible" keys')
        elements = doc["elements"]
        feasible = doc["feasible"]
        if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
            raise FormatError('"elements" must be a list of strings')
        if not isinstance(feasible, list):
            raise FormatError('"feasible" must be a list of label lists')
        return SetSystem.from_sets(elements, feasible)
    if "|" not in stripped:
        raise FormatError("compact form needs a '|' separating labels from sets")
    head, _, tail = stripped.partition("|")
    labels = head.split()
    sets = []
    tail = tail.strip()
    if tail:
        for part in tail.split(";"):
            part = part.strip()
            if part == "-":
                sets.append([])
            elif part:
                sets.append(part.split())
    return SetSystem.from_sets(labels, sets)


def serialize_set_system(system: SetSystem, fmt: str = "json", canonical: bool = False) -> str:
    """Serialize with feasible sets sorted by (size, lexicographic members).

    With canonical=True the elements are reordered by the canonical
    permutation first, making the output isomorphism-invariant.
    """
    if canonical:
        perm = system.canonical_permutation()
        order = sorted(range(system.n), key=lambda i: perm[i])
        # Among label orders realizing the canonical mask encoding, pick a
        # deterministic one: stable sort on target position.
        labels = tuple(system.labels[i] for i in order)
        masks = frozenset(permute_mask(m, perm) for m in system.masks)
        system = SetSystem(labels, masks)
    fam = sorted(system.feasible_sets(), key=lambda fs: (len(fs), fs))
    if fmt == "json":
        doc = {"elements": list(system.labels), "feasible": [list(fs) for fs in fam]}
        return json.dumps(doc, separators=(", ", ": "))
    if fmt == "compact":
        body = " ; ".join(" ".join(fs) if fs else "-" for fs in fam)
        return f"{' '.join(system.labels)} | {body}"
    raise FormatError(f"unknown serialization format {fmt!r}")
