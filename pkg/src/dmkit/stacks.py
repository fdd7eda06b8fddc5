"""Cardinality-layer decomposition of set systems and the matroid-stack,
paving, sparse-paving, and quotient classifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import ExminorClassId
from .errors import AmbientHypothesisError
from .matroid import Matroid, is_matroid, is_quotient, paving_flags
from .setsystem import SetSystem


@dataclass(frozen=True)
class Stack:
    """The size layers N_k .. N_l of a set system.

    Improper layers (no feasible set of that size) are kept as explicit
    empty-family systems so that layer indices stay aligned with
    cardinalities.
    """

    layers: tuple[SetSystem, ...]
    k: int
    l: int

    def layer(self, size: int) -> SetSystem:
        return self.layers[size - self.k]

    def proper_layers(self) -> list[tuple[int, SetSystem]]:
        return [(self.k + i, s) for i, s in enumerate(self.layers) if s.is_proper]


def stack_of(system: SetSystem) -> Stack:
    system._require_proper()
    sizes = [m.bit_count() for m in system.masks]
    k, l = min(sizes), max(sizes)
    layers = []
    for size in range(k, l + 1):
        masks = frozenset(m for m in system.masks if m.bit_count() == size)
        layers.append(SetSystem(system.labels, masks))
    return Stack(tuple(layers), k, l)


@dataclass(frozen=True)
class StackClassification:
    """Flag vector for the layer-based classes of a set system."""

    matroid_stack: bool
    paving_system: bool
    sparse_paving_system: bool
    quotient_system: bool
    even: bool
    delta_matroid: bool
    rank_gaps: tuple[int, ...] = field(default=())
    # The motivating question bounds gaps by 1 <= gap <= 2; reported, not
    # enforced, because the formal definitions do not impose it.
    gaps_within_bounds: bool = True


def classify_stack(system: SetSystem) -> StackClassification:
    """Evaluate every layer flag directly from the definitions."""
    stack = stack_of(system)
    proper = stack.proper_layers()
    matroids: list[tuple[int, Matroid | None]] = []
    matroid_stack = True
    for size, layer in proper:
        if is_matroid(layer):
            matroids.append((size, Matroid.from_system(layer)))
        else:
            matroid_stack = False
            matroids.append((size, None))
    paving = matroid_stack
    sparse = matroid_stack
    if matroid_stack:
        for _, m in matroids:
            p, sp = paving_flags(m)
            paving = paving and p
            sparse = sparse and sp
    else:
        paving = sparse = False
    quotient = matroid_stack
    if matroid_stack:
        for (_, below), (_, above) in zip(matroids, matroids[1:]):
            if not is_quotient(below, above):
                quotient = False
                break
    gaps = tuple(b - a for (a, _), (b, _) in zip(proper, proper[1:]))
    return StackClassification(
        matroid_stack=matroid_stack,
        paving_system=paving,
        sparse_paving_system=sparse,
        quotient_system=quotient,
        even=system.is_even,
        delta_matroid=system.is_delta_matroid(),
        rank_gaps=gaps,
        gaps_within_bounds=all(1 <= g <= 2 for g in gaps),
    )


_AMBIENT_FLAG = {
    ExminorClassId.MATROID_STACK: "matroid_stack",
    ExminorClassId.EVEN_MATROID_STACK: "even matroid stack",
    ExminorClassId.PAVING: "paving_system",
    ExminorClassId.SPARSE_PAVING: "sparse_paving_system",
    ExminorClassId.QUOTIENT_STACK: "quotient_system",
}


def stack_class_exminors(system: SetSystem, class_id: ExminorClassId):
    """Excluded-minor verdict for the layer-based corollaries.

    The ambient hypothesis (matroid stack / even / paving / sparse paving
    / quotient system) is checked first and its violation reported as an
    error distinct from a negative scan.
    """
    from .minorscan import classify_by_exminors

    cid = ExminorClassId(class_id)
    if cid not in _AMBIENT_FLAG:
        raise ValueError(f"{class_id} is not a stack-classifier id")
    return classify_by_exminors(system, cid)


def check_speven(system: SetSystem) -> bool:
    """Quotient verdict for an even sparse paving set system.

    Raises AmbientHypothesisError unless the system is even and sparse
    paving; the verdict is expected (and tested) to always be True.
    """
    flags = classify_stack(system)
    if not flags.even:
        raise AmbientHypothesisError("system is not even")
    if not flags.sparse_paving_system:
        raise AmbientHypothesisError("system is not a sparse paving set system")
    return flags.quotient_system
