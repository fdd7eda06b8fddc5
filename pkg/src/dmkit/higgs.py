"""Higgs lifts between a quotient pair and the Higgs lift delta-matroids
built from index sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bitset import down_closure, family_to_bitmap, iter_bits, masks_of_size, up_closure
from .errors import InvalidIndexSetError, NotAQuotientError
from .matroid import Matroid, is_quotient, min_max_matroids
from .setsystem import SetSystem


def validate_index_set(k: int, index_set) -> frozenset[int]:
    """Check K against [0, k]: nonempty, in range, and the complement of K
    in {0..k} may not contain two consecutive integers."""
    ks = frozenset(index_set)
    if not ks:
        raise InvalidIndexSetError("index set is empty; the union would be improper")
    for i in ks:
        if not isinstance(i, int) or i < 0 or i > k:
            raise InvalidIndexSetError(f"index {i} outside [0, {k}]")
    complement = sorted(set(range(k + 1)) - ks)
    for a, b in zip(complement, complement[1:]):
        if b == a + 1:
            raise InvalidIndexSetError(
                f"complement of the index set contains the consecutive pair "
                f"({a}, {b})",
                offending_pair=(a, b),
            )
    return ks


@lru_cache(maxsize=1 << 14)
def _pair_bitmaps(q: Matroid, lift: Matroid) -> tuple[int, int]:
    """(spanning-in-q bitmap, independent-in-lift bitmap)."""
    n = q.n
    return (
        up_closure(family_to_bitmap(q.bases), n),
        down_closure(family_to_bitmap(lift.bases), n),
    )


def _require_quotient(q: Matroid, lift: Matroid) -> None:
    if not is_quotient(q, lift):
        raise NotAQuotientError("first matroid is not a quotient of the second")


def higgs_lift(q: Matroid, lift: Matroid, i: int) -> Matroid:
    """The i-th Higgs lift of q toward lift.

    Bases are the sets of size r(q)+i that span q and are independent in
    the lift; i is clamped to q below 0 and to the lift above k.
    """
    _require_quotient(q, lift)
    k = lift.rank - q.rank
    if i <= 0:
        return q
    if i > k:
        return lift
    span_q, indep_l = _pair_bitmaps(q, lift)
    layer = span_q & indep_l & masks_of_size(q.n, q.rank + i)
    system = SetSystem(q.labels, frozenset(iter_bits(layer)))
    return Matroid._unchecked(system)


def build_higgs_dm(q: Matroid, lift: Matroid, index_set) -> SetSystem:
    """Union of the basis families of the Higgs lifts indexed by K.

    K must be nonempty, lie in [0, k], and have no two consecutive
    integers missing; the result satisfies the exchange axiom (verified
    in the test suite, not assumed here).
    """
    _require_quotient(q, lift)
    k = lift.rank - q.rank
    ks = validate_index_set(k, index_set)
    span_q, indep_l = _pair_bitmaps(q, lift)
    sandwich = span_q & indep_l
    masks: set[int] = set()
    for i in ks:
        masks.update(iter_bits(sandwich & masks_of_size(q.n, q.rank + i)))
    return SetSystem(q.labels, frozenset(masks))


@dataclass(frozen=True)
class HiggsClassification:
    """Outcome of the layer-by-layer Higgs test.

    kind is one of "not_higgs", "higgs", "full", "even"; index_set holds
    the occupied layer indices (relative to the minimal rank) when the
    system is a Higgs lift delta-matroid; failing_layer names the first
    offending cardinality otherwise.
    """

    kind: str
    index_set: frozenset[int] | None = None
    k: int | None = None
    failing_layer: int | None = None

    @property
    def is_higgs(self) -> bool:
        return self.kind != "not_higgs"

    @property
    def is_full(self) -> bool:
        return self.kind == "full"

    @property
    def is_even_higgs(self) -> bool:
        """Even Higgs lift delta-matroid: k and every index even."""
        if not self.is_higgs:
            return False
        return self.k % 2 == 0 and all(i % 2 == 0 for i in self.index_set)


def classify_higgs(system: SetSystem) -> HiggsClassification:
    """Decide whether a delta-matroid is a Higgs lift delta-matroid.

    Each occupied size layer must coincide with the basis family of the
    corresponding Higgs lift of (D_min, D_max); the first layer where the
    feasibility criterion fails is reported.
    """
    lo, hi = min_max_matroids(system)
    k = hi.rank - lo.rank
    n = system.n
    span_lo, indep_hi = _pair_bitmaps(lo, hi)
    sandwich = span_lo & indep_hi
    family = family_to_bitmap(system.masks)
    occupied = []
    for i in range(k + 1):
        size_slice = masks_of_size(n, lo.rank + i)
        layer = family & size_slice
        if not layer:
            continue
        if layer != sandwich & size_slice:
            return HiggsClassification("not_higgs", failing_layer=lo.rank + i)
        occupied.append(i)
    ks = frozenset(occupied)
    if len(ks) == k + 1:
        kind = "full"
    elif k % 2 == 0 and all(i % 2 == 0 for i in ks):
        kind = "even"
    else:
        kind = "higgs"
    return HiggsClassification(kind, index_set=ks, k=k)


def full_higgs_dm(q: Matroid, lift: Matroid) -> SetSystem:
    """The full Higgs lift delta-matroid of the pair (q, lift)."""
    k = lift.rank - q.rank
    return build_higgs_dm(q, lift, range(k + 1))
