"""Skew-symmetric GF(2) matrices, the delta-matroid of nonsingular
principal submatrices, and the binary-representability classifier."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .bitset import iter_bits
from .catalog import ExminorClassId, excluded_minor_set
from .errors import FormatError, NotADeltaMatroidError
from .matroid import Matroid
from .minorscan import MinorWitness, has_minor_from
from .setsystem import SetSystem


@dataclass(frozen=True)
class SkewSymMatrixGF2:
    """Square GF(2) matrix, symmetric off the diagonal (skew-symmetric in
    characteristic two; the diagonal is unrestricted)."""

    labels: tuple[str, ...]
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.rows) != n:
            raise FormatError("row count differs from label count")
        for i, row in enumerate(self.rows):
            if row < 0 or row >> n:
                raise FormatError(f"row {i} wider than the matrix")
        for i in range(n):
            for j in range(i + 1, n):
                if (self.rows[i] >> j & 1) != (self.rows[j] >> i & 1):
                    raise FormatError(f"entries ({i},{j}) and ({j},{i}) differ")

    @property
    def n(self) -> int:
        return len(self.labels)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) by elimination on bitmask rows, lowest column first."""
    work = list(rows)
    ncols = max((r.bit_length() for r in work), default=0)
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = None
        for i in range(rank, len(work)):
            if work[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i] & bit:
                work[i] ^= prow
        rank += 1
        if rank == len(work):
            break
    return rank


def principal_nonsingular(matrix: SkewSymMatrixGF2, subset: int) -> bool:
    """True when the principal submatrix on the subset mask has full rank."""
    k = subset.bit_count()
    if k == 0:
        return True
    cols = list(iter_bits(subset))
    rows = []
    for i in cols:
        r = matrix.rows[i]
        rows.append(sum(((r >> c) & 1) << j for j, c in enumerate(cols)))
    return gf2_rank(rows) == k


def _feasible_masks(rows: list[int], elems: int) -> set[int]:
    """Subsets of the elems mask whose principal submatrix is nonsingular.

    Recursive principal pivoting: an invertible 1x1 or 2x2 principal block
    is eliminated and replaced by its Schur complement, which preserves
    nonsingularity of the remaining principal minors.
    """
    if not elems:
        return {0}
    low = elems & -elems
    e = low.bit_length() - 1
    rest = elems ^ low
    out = set(_feasible_masks(rows, rest))
    row_e = rows[e]
    if row_e >> e & 1:
        pivoted = [
            rows[i] ^ row_e if (i != e and rows[i] >> e & 1) else rows[i]
            for i in range(len(rows))
        ]
        out.update(a | low for a in _feasible_masks(pivoted, rest))
        return out
    # Diagonal entry of e is zero: a feasible set containing e must pair it
    # with a partner f where C[e][f] = 1; split by the least such partner.
    partners = row_e & rest
    smaller = 0
    while partners:
        flow = partners & -partners
        partners ^= flow
        f = flow.bit_length() - 1
        rest2 = rest & ~flow & ~smaller
        d = rows[f] >> f & 1
        row_f = rows[f]
        new_rows = list(rows)
        work = rest2
        while work:
            ilow = work & -work
            work ^= ilow
            i = ilow.bit_length() - 1
            ri = rows[i]
            be_i = ri >> e & 1
            bf_i = ri >> f & 1
            # Schur complement of the invertible 2x2 block on {e, f}:
            # C'[i][j] = C[i][j] ^ d*be_i*be_j ^ bf_i*be_j ^ be_i*bf_j.
            adj = 0
            if (d & be_i) ^ bf_i:
                adj ^= row_e
            if be_i:
                adj ^= row_f
            if adj:
                new_rows[i] = ri ^ adj
        out.update(a | low | flow for a in _feasible_masks(new_rows, rest2))
        smaller |= flow
    return out


def d_of_c(matrix: SkewSymMatrixGF2) -> SetSystem:
    """Feasible sets are the index sets of nonsingular principal
    submatrices; the empty set is always feasible."""
    masks = frozenset(_feasible_masks(list(matrix.rows), (1 << matrix.n) - 1))
    return SetSystem(matrix.labels, masks)


def representation_twist(
    a_rows: Sequence[int], basis_labels: Sequence[str], other_labels: Sequence[str]
) -> SkewSymMatrixGF2:
    """Block matrix ((0, A), (A^T, 0)) for a standard representation (I|A).

    Rows of A correspond to the basis labels (columns of I), columns to
    the remaining labels; over GF(2), -A^T = A^T.
    """
    r = len(basis_labels)
    s = len(other_labels)
    if len(a_rows) != r:
        raise FormatError(f"A has {len(a_rows)} rows for {r} basis elements")
    for row in a_rows:
        if row < 0 or row >> s:
            raise FormatError("A row wider than the non-basis column count")
    labels = tuple(basis_labels) + tuple(other_labels)
    rows = []
    for i in range(r):
        rows.append(a_rows[i] << r)
    for j in range(s):
        col = sum(((a_rows[i] >> j) & 1) << i for i in range(r))
        rows.append(col)
    return SkewSymMatrixGF2(labels, tuple(rows))


def column_matroid(rows: Sequence[int], labels: Sequence[str]) -> Matroid:
    """Binary matroid of the columns of a GF(2) matrix given as row masks."""
    labels = tuple(labels)
    n = len(labels)
    width = max((r.bit_length() for r in rows), default=0)
    if width > n:
        raise FormatError("matrix wider than the label list")
    cols = [sum(((rows[i] >> j) & 1) << i for i in range(len(rows))) for j in range(n)]
    rank = gf2_rank(cols)
    masks = frozenset(
        a
        for a in range(1 << n)
        if a.bit_count() == rank and gf2_rank([cols[j] for j in iter_bits(a)]) == rank
    )
    return Matroid(SetSystem(labels, masks), rank)


def is_binary_dm(system: SetSystem) -> tuple[bool, MinorWitness | None]:
    """Binary delta-matroid test by excluded-minor scan.

    Only the twists of the five binary excluded minors need scanning: the
    rest of the combined proper-set-system list never occurs inside a
    delta-matroid.
    """
    if not system.is_delta_matroid():
        raise NotADeltaMatroidError("binary test is defined for delta-matroids")
    targets = [
        e
        for e in excluded_minor_set(ExminorClassId.BINARY, system.n)
        if e.name.startswith("P")
    ]
    witness = has_minor_from(system, targets)
    return witness is None, witness


# -- matrix file format -------------------------------------------------


def parse_matrix(text: str) -> SkewSymMatrixGF2:
    """JSON form {"labels": [...], "rows": ["0110", ...]} with row bit
    strings in label order."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from None
    if not isinstance(doc, dict) or "labels" not in doc or "rows" not in doc:
        raise FormatError('matrix JSON needs "labels" and "rows"')
    labels = tuple(doc["labels"])
    rows = []
    for s in doc["rows"]:
        if not isinstance(s, str) or len(s) != len(labels) or set(s) - {"0", "1"}:
            raise FormatError(f"bad row bit string {s!r}")
        rows.append(sum(1 << j for j, ch in enumerate(s) if ch == "1"))
    return SkewSymMatrixGF2(labels, tuple(rows))


def serialize_matrix(matrix: SkewSymMatrixGF2) -> str:
    rows = [
        "".join("1" if matrix.rows[i] >> j & 1 else "0" for j in range(matrix.n))
        for i in range(matrix.n)
    ]
    return json.dumps({"labels": list(matrix.labels), "rows": rows}, separators=(", ", ": "))
