"""Minor enumeration in the delete/contract normal form and the
excluded-minor membership classifiers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .catalog import CatalogEntry, ExminorClassId, excluded_minor_set
from .errors import AmbientHypothesisError
from .setsystem import SetSystem


@dataclass(frozen=True)
class MinorWitness:
    """A minor S\\X/Y isomorphic to a named target."""

    deleted: tuple[str, ...]
    contracted: tuple[str, ...]
    target_name: str

    def verify(self, system: SetSystem) -> bool:
        from .catalog import make_named

        minor = system.minor(self.deleted, self.contracted)
        return minor.is_isomorphic(make_named(self.target_name))


def _removal_splits(system: SetSystem, removed: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    """(delete-mask, contract-mask) splits of a removed index tuple, in
    ascending delete-size then lexicographic order."""
    for dsize in range(len(removed) + 1):
        for dels in combinations(removed, dsize):
            x = sum(1 << i for i in dels)
            y = sum(1 << i for i in removed) ^ x
            yield x, y


def _valid(system: SetSystem, x: int, y: int) -> bool:
    return any(m & y == y and not m & x for m in system.masks)


def enumerate_minors(
    system: SetSystem, m: int
) -> Iterator[tuple[tuple[str, ...], tuple[str, ...], SetSystem]]:
    """Yield every valid (X, Y, S\\X/Y) with an m-element ground set.

    Scan order is deterministic: removed sets ascending lexicographically,
    then the delete/contract split by (|X|, lex).
    """
    n = system.n
    if not 0 <= m <= n:
        raise ValueError(f"minor size {m} outside [0, {n}]")
    for removed in combinations(range(n), n - m):
        for x, y in _removal_splits(system, removed):
            if _valid(system, x, y):
                dels = system.members(x)
                cons = system.members(y)
                yield dels, cons, system.minor(dels, cons)


def has_minor_from(
    system: SetSystem, targets: Sequence[CatalogEntry]
) -> MinorWitness | None:
    """First minor of the system isomorphic to a target, or None.

    The scan ascends by |X|+|Y| (so larger minors are found first) and is
    deterministic for fixed inputs.
    """
    n = system.n
    by_size: dict[int, list[CatalogEntry]] = {}
    for t in targets:
        if t.system.n <= n:
            by_size.setdefault(t.system.n, []).append(t)
    if not by_size:
        return None
    smallest = min(by_size)
    for m in range(n, smallest - 1, -1):
        pool = by_size.get(m)
        if not pool:
            continue
        for dels, cons, minor in enumerate_minors(system, m):
            sig = minor.size_signature
            candidates = [t for t in pool if t.system.size_signature == sig]
            if not candidates:
                continue
            if m <= 5:
                canon = minor.canonical_form()
                for t in candidates:
                    if t.canonical == canon:
                        return MinorWitness(dels, cons, t.name)
            else:
                for t in candidates:
                    if minor.is_isomorphic(t.system):
                        return MinorWitness(dels, cons, t.name)
    return None


def _ambient_ok(system: SetSystem, class_id: ExminorClassId) -> tuple[bool, str]:
    """Check the side condition a classifier imposes on its inputs."""
    from . import stacks  # deferred: stacks depends on this module's siblings

    cid = ExminorClassId(class_id)
    if cid in (ExminorClassId.DELTA_MATROID, ExminorClassId.EVEN_DELTA_WITHIN_ALL,
               ExminorClassId.BINARY):
        return True, ""
    if cid is ExminorClassId.EVEN_DELTA_WITHIN_EVEN:
        return system.is_even, "system is not even"
    if cid in (ExminorClassId.HIGGS_LIFT, ExminorClassId.FULL_HIGGS):
        return system.is_delta_matroid(), "system is not a delta-matroid"
    if cid is ExminorClassId.EVEN_HIGGS_WITHIN_EVEN:
        return (
            system.is_even and system.is_delta_matroid(),
            "system is not an even delta-matroid",
        )
    if cid is ExminorClassId.MATROID_EQUICARDINAL:
        sizes = {m.bit_count() for m in system.masks}
        return len(sizes) == 1, "feasible sets are not equicardinal"
    flags = stacks.classify_stack(system)
    if cid is ExminorClassId.MATROID_STACK:
        return flags.matroid_stack, "system is not a matroid stack system"
    if cid is ExminorClassId.EVEN_MATROID_STACK:
        return (
            flags.even and flags.matroid_stack,
            "system is not an even matroid stack system",
        )
    if cid is ExminorClassId.PAVING:
        return flags.paving_system, "system is not a paving set system"
    if cid is ExminorClassId.SPARSE_PAVING:
        return flags.sparse_paving_system, "system is not a sparse paving set system"
    if cid is ExminorClassId.QUOTIENT_STACK:
        return flags.quotient_system, "system is not a quotient set system"
    raise ValueError(f"unhandled class id {class_id}")


def classify_by_exminors(
    system: SetSystem, class_id: ExminorClassId, cap: int | None = None
) -> tuple[bool, MinorWitness | None]:
    """Membership verdict for a minor-closed class by excluded-minor scan.

    Raises AmbientHypothesisError when the side condition of the class
    fails, which is distinct from a negative scan verdict.  The cap for
    infinite excluded-minor families defaults to the scanned ground-set
    size (minors never gain elements).
    """
    ok, why = _ambient_ok(system, class_id)
    if not ok:
        raise AmbientHypothesisError(why)
    if cap is None:
        cap = system.n
    witness = has_minor_from(system, excluded_minor_set(ExminorClassId(class_id), cap))
    return witness is None, witness
