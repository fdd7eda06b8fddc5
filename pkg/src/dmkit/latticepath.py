"""Two-path lattice regions and the delta-matroids they generate.

A region is bounded by a lower path P from (0,0) to (u+c, v-c), an upper
path Q from (-d, d) to (u, v), and the two anti-diagonal segments joining
their endpoints.  Every in-region path from a start point s_i to an end
point t_j has exactly u+v steps, and the label of a step equals the
coordinate sum of its endpoint, so the in-region north-step label sets are
subsets of {1, ..., u+v}.

Internally a path is its height profile h(level) for level = x+y from 0 to
u+v; the region is the set of points between the two profiles on each
level.  Families of label sets are manipulated as family bitmaps (big
ints over 2**(u+v) bit positions).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterator, NamedTuple

from .bitset import down_closure, iter_bits, minimal_members, up_closure
from .errors import CapacityError, FormatError, InvalidRegionError, UnknownElementError
from .higgs import full_higgs_dm
from .matroid import Matroid, is_quotient
from .setsystem import SetSystem

PATH_COUNT_CAP = 10**7


def _heights(word: str, start_y: int) -> tuple[int, ...]:
    hs = [start_y]
    for step in word:
        hs.append(hs[-1] + (1 if step == "N" else 0))
    return tuple(hs)


def _word_from_heights(hs) -> str:
    return "".join("N" if b > a else "E" for a, b in zip(hs, hs[1:]))


@dataclass(frozen=True)
class Region:
    """A two-path region in normalized coordinates (s_P at the origin)."""

    d: int
    c: int
    u: int
    v: int
    p_word: str
    q_word: str

    @property
    def n(self) -> int:
        return self.u + self.v

    @cached_property
    def hp(self) -> tuple[int, ...]:
        """Lower-path height per level; hp[l] is the y of P at x+y = l."""
        return _heights(self.p_word, 0)

    @cached_property
    def hq(self) -> tuple[int, ...]:
        return _heights(self.q_word, self.d)

    def labels(self) -> tuple[str, ...]:
        return tuple(str(i) for i in range(1, self.n + 1))

    def diagnostics(self) -> list[str]:
        """All violated region constraints, first one first."""
        out = []
        if min(self.d, self.c, self.u, self.v) < 0:
            out.append("offsets and endpoint coordinates must be nonnegative")
        if self.v - self.c < self.d:
            out.append(f"v - c = {self.v - self.c} is below d = {self.d}")
        if set(self.p_word) - {"E", "N"} or set(self.q_word) - {"E", "N"}:
            out.append("path words must use steps E and N only")
            return out
        if len(self.p_word) != self.n:
            out.append(f"P has {len(self.p_word)} steps, expected {self.n}")
        elif self.hp[-1] != self.v - self.c:
            out.append(f"P ends at height {self.hp[-1]}, expected {self.v - self.c}")
        if len(self.q_word) != self.n:
            out.append(f"Q has {len(self.q_word)} steps, expected {self.n}")
        elif self.hq[-1] != self.v:
            out.append(f"Q ends at height {self.hq[-1]}, expected {self.v}")
        if out:
            return out
        for level in range(self.n + 1):
            if self.hp[level] > self.hq[level]:
                out.append(f"P crosses above Q at level {level}")
                break
        return out

    def validate(self) -> Region:
        diags = self.diagnostics()
        if diags:
            raise InvalidRegionError("; ".join(diags))
        return self


def validate_region(region: Region) -> tuple[bool, list[str]]:
    """Verdict plus the list of violated constraints."""
    diags = region.diagnostics()
    return not diags, diags


class LatticePath(NamedTuple):
    """An in-region path from start point s_i to end point t_j."""

    start: int
    end: int
    word: str

    def north_labels(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, step in enumerate(self.word) if step == "N")


def _level_bitmaps(region: Region, start_ys, end_offsets) -> int:
    """Family bitmap of the north-label sets of in-region paths from the
    given start heights (s_i has height i) to the given end offsets above
    t_P (t_j is j above t_P).

    A path at a level-l point has used labels 1..l only, so adding the
    north step into level l shifts a family bitmap left by 2**(l-1) bits.
    """
    hp, hq = region.hp, region.hq
    n = region.n
    wanted = set(start_ys)
    # maps[y] = family bitmap of paths reaching the current level at height y
    maps = {y: 1 for y in range(hp[0], hq[0] + 1) if y in wanted}
    for level in range(1, n + 1):
        nxt: dict[int, int] = {}
        lo, hi = hp[level], hq[level]
        shift = 1 << (level - 1)
        for y, bm in maps.items():
            if lo <= y <= hi:
                nxt[y] = nxt.get(y, 0) | bm
            if lo <= y + 1 <= hi:
                nxt[y + 1] = nxt.get(y + 1, 0) | (bm << shift)
        maps = nxt
    out = 0
    end_set = set(end_offsets)
    for y, bm in maps.items():
        if y - hp[n] in end_set:
            out |= bm
    return out


def _all_paths_bitmap(region: Region) -> int:
    return _level_bitmaps(
        region,
        range(region.hp[0], region.hq[0] + 1),
        range(0, region.c + 1),
    )


def _min_matroid_bitmap(region: Region) -> int:
    # s_Q to t_P
    return _level_bitmaps(region, [region.hq[0]], [0])


def _max_matroid_bitmap(region: Region) -> int:
    # s_P to t_Q
    return _level_bitmaps(region, [region.hp[0]], [region.c])


def count_paths(region: Region) -> int:
    """Number of in-region paths between all start and end points."""
    region.validate()
    hp, hq = region.hp, region.hq
    counts = {y: 1 for y in range(hp[0], hq[0] + 1)}
    for level in range(1, region.n + 1):
        nxt: dict[int, int] = {}
        lo, hi = hp[level], hq[level]
        for y, k in counts.items():
            for y2 in (y, y + 1):
                if lo <= y2 <= hi:
                    nxt[y2] = nxt.get(y2, 0) + k
        counts = nxt
    return sum(counts.values())


def enumerate_paths(region: Region, cap: int = PATH_COUNT_CAP) -> list[LatticePath]:
    """Every in-region path from every s_i to every t_j, exactly once."""
    region.validate()
    total = count_paths(region)
    if total > cap:
        raise CapacityError(f"{total} paths exceed the cap of {cap}")
    hp, hq = region.hp, region.hq
    n = region.n
    out: list[LatticePath] = []

    def walk(level: int, y: int, word: list[str]) -> None:
        if level == n:
            out.append(LatticePath(start_i, y - hp[n], "".join(word)))
            return
        lo, hi = hp[level + 1], hq[level + 1]
        if lo <= y <= hi:
            word.append("E")
            walk(level + 1, y, word)
            word.pop()
        if lo <= y + 1 <= hi:
            word.append("N")
            walk(level + 1, y + 1, word)
            word.pop()

    for start_i in range(0, region.d + 1):
        y0 = start_i
        if hp[0] <= y0 <= hq[0]:
            walk(0, y0, [])
    return out


class LpdmResult(NamedTuple):
    system: SetSystem
    min_matroid: Matroid
    max_matroid: Matroid


def lpdm(region: Region) -> LpdmResult:
    """The lattice path delta-matroid of a region with its two matroids.

    Checks on the way out that the minimal matroid is a quotient of the
    maximal one and that the path image equals the full Higgs lift
    delta-matroid of the pair.
    """
    region.validate()
    labels = region.labels()
    d_bm, lo_bm, hi_bm = (
        _all_paths_bitmap(region),
        _min_matroid_bitmap(region),
        _max_matroid_bitmap(region),
    )
    system = SetSystem(labels, frozenset(iter_bits(d_bm)))
    lo = Matroid.from_system(SetSystem(labels, frozenset(iter_bits(lo_bm))))
    hi = Matroid.from_system(SetSystem(labels, frozenset(iter_bits(hi_bm))))
    if not is_quotient(lo, hi):
        raise InvalidRegionError("minimal matroid is not a quotient of the maximal")
    if system != full_higgs_dm(lo, hi):
        raise InvalidRegionError("path image differs from the full Higgs lift family")
    return LpdmResult(system, lo, hi)


def region_dual(region: Region) -> Region:
    """Flip the diagram so starts and ends exchange; d and c swap roles.

    The dual region's delta-matroid is the dual of the original one after
    the label reversal e -> n+1-e induced by the flip.
    """
    region.validate()

    def flip(word: str) -> str:
        return "".join("E" if s == "N" else "N" for s in reversed(word))

    return Region(
        d=region.c,
        c=region.d,
        u=region.v - region.c - region.d,
        v=region.u + region.c + region.d,
        p_word=flip(region.p_word),
        q_word=flip(region.q_word),
    )


def _delete_heights(region: Region, e: int) -> tuple[list[int], list[int]]:
    """Height profiles after deleting a non-coloop element e: erase the
    north steps into level e and shrink the east steps to points, gluing
    level e-1 of the left half to level e of the right half."""
    hp, hq = region.hp, region.hq
    # Glue interval: points with an east step across the cut.
    new_p = list(hp[: e - 1]) + list(hp[e:])
    new_q = list(hq[:e]) + list(hq[e + 1 :])
    return new_p, new_q


def _normalize_profiles(p: list[int], q: list[int]) -> tuple[list[int], list[int]]:
    """Restore the region parameterization without changing the path image.

    First trim to the points that lie on some start-to-end path.  The
    result can still be skew (no corner-to-corner path); in that case the
    top end point (when v > n) or the top start point (when the lower
    path ends below the upper start) only carries paths that stay
    strictly above the lower path, so they translate one anti-diagonal
    step down and the point can be dropped.
    """
    n = len(p) - 1
    for level in range(1, n + 1):
        p[level] = max(p[level], p[level - 1])
        q[level] = min(q[level], q[level - 1] + 1)
    for level in range(n - 1, -1, -1):
        p[level] = max(p[level], p[level + 1] - 1)
        q[level] = min(q[level], q[level + 1])
    while True:
        if q[n] - p[0] > n:
            q[n] -= 1
            for level in range(n - 1, -1, -1):
                q[level] = min(q[level], q[level + 1])
        elif p[n] < q[0]:
            q[0] -= 1
            for level in range(1, n + 1):
                q[level] = min(q[level], q[level - 1] + 1)
        else:
            return p, q


def _region_from_heights(raw_p: list[int], raw_q: list[int]) -> Region:
    new_p, new_q = _normalize_profiles(list(raw_p), list(raw_q))
    shift = new_p[0]
    new_p = [h - shift for h in new_p]
    new_q = [h - shift for h in new_q]
    n = len(new_p) - 1
    v = new_q[-1]
    c = v - new_p[-1]
    return Region(
        d=new_q[0],
        c=c,
        u=n - v,
        v=v,
        p_word=_word_from_heights(new_p),
        q_word=_word_from_heights(new_q),
    ).validate()


def element_kind(region: Region, e: int) -> str:
    """'loop', 'coloop', or 'neither' for label e of the region's LPDM.

    A loop has no in-region north step at level e (the bounding paths
    pinch through an east step there); a coloop has no east step.
    """
    if not 1 <= e <= region.n:
        raise UnknownElementError(f"label {e} outside 1..{region.n}")
    hp, hq = region.hp, region.hq
    if hq[e] == hp[e - 1]:
        return "loop"
    if hp[e] > hq[e - 1]:
        return "coloop"
    return "neither"


def region_minor(region: Region, e: int, op: str) -> Region:
    """Delete or contract label e at the region level.

    Deleting a coloop contracts it (and dually), matching the set-system
    conventions; contraction is dual-delete-dual with the flipped label.
    """
    region.validate()
    if op not in ("delete", "contract"):
        raise ValueError(f"op must be 'delete' or 'contract', not {op!r}")
    kind = element_kind(region, e)
    if op == "delete":
        if kind == "coloop":
            return region_minor(region, e, "contract")
        return _region_from_heights(*_delete_heights(region, e))
    if kind == "loop":
        return _region_from_heights(*_delete_heights(region, e))
    flipped = region_dual(region)
    deleted = region_minor(flipped, region.n + 1 - e, "delete")
    return region_dual(deleted)


# -- region file format --------------------------------------------------


def parse_region(text: str) -> Region:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from None
    try:
        region = Region(
            d=int(doc["d"]),
            c=int(doc["c"]),
            u=int(doc["u"]),
            v=int(doc["v"]),
            p_word=str(doc["P"]),
            q_word=str(doc["Q"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"region JSON needs d, c, u, v, P, Q: {exc}") from None
    return region.validate()


def serialize_region(region: Region) -> str:
    return json.dumps(
        {
            "d": region.d,
            "c": region.c,
            "u": region.u,
            "v": region.v,
            "P": region.p_word,
            "Q": region.q_word,
        },
        separators=(", ", ": "),
    )


def region_svg(region: Region) -> str:
    """A small standalone SVG drawing of the region and its label grid."""
    region.validate()
    scale, pad = 28, 30
    hp, hq = region.hp, region.hq

    def pt(x: int, y: int) -> tuple[float, float]:
        top = max(hq) + 1
        return (pad + (x + region.d) * scale, pad + (top - y) * scale)

    lines = []
    for level in range(region.n + 1):
        for y in range(hp[level], hq[level] + 1):
            x = level - y
            cx, cy = pt(x, y)
            lines.append(
                f'<circle cx="{cx}" cy="{cy}" r="2.2" fill="#444"/>'
            )
    for word, h0, color in ((region.p_word, 0, "#d62728"), (region.q_word, region.d, "#1f77b4")):
        y = h0
        x = -h0  # P starts at (0,0), Q at (-d, d)
        pts = [pt(x, y)]
        for step in word:
            if step == "N":
                y += 1
            else:
                x += 1
            pts.append(pt(x, y))
        path = " ".join(f"{px},{py}" for px, py in pts)
        lines.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="2.5"/>'
        )
    width = pad * 2 + (region.u + region.c + region.d + 1) * scale
    height = pad * 2 + (max(hq) + 2) * scale
    body = "\n".join(lines)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
        f"{body}\n</svg>\n"
    )


@lru_cache(maxsize=None)
def _profiles(total: int, norths: int, start_y: int) -> tuple[tuple[str, tuple[int, ...]], ...]:
    out = []
    for positions in combinations(range(total), norths):
        word = "".join("N" if i in positions else "E" for i in range(total))
        out.append((word, _heights(word, start_y)))
    return tuple(out)


def iter_regions(max_size: int) -> Iterator[Region]:
    """Every valid region with u + v up to max_size, exhaustively."""
    for total in range(max_size + 1):
        for v in range(total + 1):
            u = total - v
            for d in range(v + 1):
                for c in range(v - d + 1):
                    ps = _profiles(total, v - c, 0)
                    qs = _profiles(total, v - d, d)
                    for p_word, hp in ps:
                        for q_word, hq in qs:
                            if all(a <= b for a, b in zip(hp, hq)):
                                yield Region(d, c, u, v, p_word, q_word)


def verify_region_prop(region: Region) -> str | None:
    """Fast bitmap check of the quotient and full-Higgs claims for one
    region; returns None on success or a short failure tag.

    This is the bulk-sweep counterpart of lpdm(), which performs the same
    checks through the validated matroid API.
    """
    n = region.n
    full = (1 << (1 << n)) - 1
    lo_bm = _min_matroid_bitmap(region)
    hi_bm = _max_matroid_bitmap(region)
    d_bm = _all_paths_bitmap(region)
    if not lo_bm or not hi_bm or not d_bm:
        return "empty path family"
    span_lo = up_closure(lo_bm, n)
    indep_hi = down_closure(hi_bm, n)
    if d_bm != span_lo & indep_hi:
        return "path image differs from full Higgs lift family"
    dep_hi = full & ~indep_hi
    circuits_hi = list(iter_bits(minimal_members(dep_hi, n)))
    dep_lo = full & ~down_closure(lo_bm, n)
    circuits_lo = list(iter_bits(minimal_members(dep_lo, n)))
    for c_mask in circuits_hi:
        covered = 0
        for qc in circuits_lo:
            if not qc & ~c_mask:
                covered |= qc
                if covered == c_mask:
                    break
        if covered != c_mask:
            return "minimal matroid is not a quotient of the maximal"
    return None
