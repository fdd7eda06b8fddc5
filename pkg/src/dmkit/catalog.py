"""Named set systems, twist-class tables, and the excluded-minor lists of
the characterization theorems."""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import CapacityError, UnknownNameError
from .setsystem import SetSystem

TWIST_CLASS_CAP = 8

# Fixed small systems: label string (one character per element), feasible
# families as member strings ("" is the empty set).
_FIXED: dict[str, tuple[str, tuple[str, ...]]] = {
    "S2": ("ab", ("", "ab")),
    "T1": ("abc", ("", "ab", "abc")),
    "T2": ("abc", ("", "ab", "ac", "abc")),
    "T3": ("abc", ("", "a", "ab", "abc")),
    "T4": ("abc", ("", "a", "ab", "ac", "abc")),
    "T5": ("abcd", ("", "ab", "abcd")),
    "T6": ("abcd", ("", "ab", "ac", "abcd")),
    "T7": ("abcd", ("", "ab", "ac", "ad", "abcd")),
    "T8": ("abcd", ("", "a", "ab", "ac", "ad", "abcd")),
    "U1": ("ab", ("", "a", "ab")),
    "U2": ("abc", ("", "c", "ab", "abc")),
    # U3..U7: empty set, the ground set, and the edges of the graphs G3..G7.
    "U3": ("abcd", ("", "abcd", "ab", "cd")),
    "U4": ("abcd", ("", "abcd", "ab", "bc", "cd")),
    "U5": ("abcd", ("", "abcd", "ab", "bc", "ad", "cd")),
    "U6": ("abcd", ("", "abcd", "ab", "bc", "ac", "ad")),
    "U7": ("abcd", ("", "abcd", "ab", "bc", "ac", "cd", "ad")),
    "P1": ("abc", ("", "ab", "ac", "bc", "abc")),
    "P2": ("abc", ("", "a", "b", "c", "ab", "ac", "bc")),
    "P3": ("abc", ("", "b", "c", "ab", "ac", "abc")),
    "P4": ("abcd", ("", "ab", "ac", "ad", "bc", "bd", "cd")),
    "P5": ("abcd", ("", "ab", "ad", "bc", "cd", "abcd")),
}

_SK_RE = re.compile(r"^S_?(\d+)$")
_NAME_RE = re.compile(r"^(?P<base>[A-Za-z]\w*?)(?:\*(?P<twist>.*))?$")


def _base_system(name: str) -> SetSystem:
    if name in _FIXED:
        labels, fam = _FIXED[name]
        return SetSystem.from_sets(tuple(labels), [list(fs) for fs in fam])
    m = _SK_RE.match(name)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise UnknownNameError(f"S_{k} needs k >= 1")
        if k == 2:
            return _base_system("S2")
        labels = tuple(f"e{i}" for i in range(1, k + 1))
        return SetSystem(labels, frozenset({0, (1 << k) - 1}))
    raise UnknownNameError(f"unknown catalog name {name!r}")


def make_named(name: str) -> SetSystem:
    """Build a named system; ``X*{a,c}``, ``X*a`` and ``X*`` (dual) twist
    syntax is accepted on top of the base names."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise UnknownNameError(f"cannot parse catalog name {name!r}")
    base = _base_system(m.group("base"))
    twist = m.group("twist")
    if twist is None:
        return base
    twist = twist.strip()
    if twist == "":
        return base.dual()
    if twist.startswith("{"):
        if not twist.endswith("}"):
            raise UnknownNameError(f"malformed twist set in {name!r}")
        parts = [p.strip() for p in twist[1:-1].split(",") if p.strip()]
    else:
        parts = [twist]
    for p in parts:
        if p not in base.labels:
            raise UnknownNameError(f"twist element {p!r} not in ground set of {name!r}")
    return base.twist(parts)


@dataclass(frozen=True)
class CatalogEntry:
    """A named excluded-minor system in canonical form."""

    name: str
    system: SetSystem
    canonical: tuple

    @classmethod
    def of(cls, name: str, system: SetSystem) -> CatalogEntry:
        return cls(name, system, system.canonical_form())


def _twist_name(base: str, members: tuple[str, ...], n: int) -> str:
    if not members:
        return base
    if len(members) == n:
        return f"{base}*"
    if len(members) == 1:
        return f"{base}*{members[0]}"
    return f"{base}*{{{','.join(members)}}}"


def twist_classes(system: SetSystem, base_name: str = "S") -> list[CatalogEntry]:
    """All twists of a system up to isomorphism.

    Each class is represented by its (size, lexicographic) smallest twist
    set; the dual partner of a class is named by the complement of that
    representative, following the appendix table conventions.  Classes are
    returned ordered by (representative size, members).
    """
    n = system.n
    if n > TWIST_CLASS_CAP:
        raise CapacityError(f"twist enumeration capped at {TWIST_CLASS_CAP} elements")
    order = sorted(range(1 << n), key=lambda a: (a.bit_count(), system.members(a)))
    classes: list[dict] = []
    by_signature: dict[tuple, list[int]] = {}
    for a in order:
        twisted = system.twist(system.members(a))
        bucket = by_signature.setdefault(twisted.size_signature, [])
        for idx in bucket:
            if twisted.is_isomorphic(classes[idx]["system"]):
                classes[idx]["twists"].append(a)
                break
        else:
            bucket.append(len(classes))
            classes.append({"rep": a, "system": twisted, "twists": [a]})
    # Dual pairing: the dual of the class of A is the class of A ^ E.
    full = (1 << n) - 1
    index_of = {a: i for i, cls in enumerate(classes) for a in cls["twists"]}
    names: dict[int, str] = {}
    for i, cls in enumerate(classes):
        if i in names:
            continue
        partner = index_of[cls["rep"] ^ full]
        names[i] = _twist_name(base_name, system.members(cls["rep"]), n)
        if partner != i:
            names[partner] = _twist_name(
                base_name, system.members(cls["rep"] ^ full), n
            )
    return [
        CatalogEntry.of(names[i], cls["system"]) for i, cls in enumerate(classes)
    ]


class ExminorClassId(Enum):
    """One identifier per excluded-minor characterization."""

    DELTA_MATROID = "delta"
    EVEN_DELTA_WITHIN_EVEN = "even-delta"
    EVEN_DELTA_WITHIN_ALL = "even-delta-all"
    HIGGS_LIFT = "higgs"
    FULL_HIGGS = "full-higgs"
    EVEN_HIGGS_WITHIN_EVEN = "even-higgs"
    MATROID_EQUICARDINAL = "matroid"
    BINARY = "binary"
    MATROID_STACK = "matroid-stack"
    EVEN_MATROID_STACK = "even-matroid-stack"
    PAVING = "paving"
    SPARSE_PAVING = "sparse-paving"
    QUOTIENT_STACK = "quotient-stack"


def _named_entries(names: list[str]) -> list[CatalogEntry]:
    return [CatalogEntry.of(name, make_named(name)) for name in names]


@lru_cache(maxsize=None)
def _twist_class_entries(base: str) -> tuple[CatalogEntry, ...]:
    return tuple(twist_classes(make_named(base), base))


def _t_classes(indices) -> list[CatalogEntry]:
    out: list[CatalogEntry] = []
    for i in indices:
        out.extend(_twist_class_entries(f"T{i}"))
    return out


def _s_twist_reps(k: int, sizes) -> list[CatalogEntry]:
    """Twist classes of S_k by twist-set size; S_k is symmetric, so the
    size determines the class."""
    base = make_named(f"S_{k}")
    out = []
    for j in sizes:
        members = base.labels[:j]
        name = _twist_name(f"S_{k}", members, k)
        out.append(CatalogEntry.of(name, base.twist(members)))
    return out


# Explicit per-corollary twist lists for T5..T8 (matroid-stack flavors).
_STACK_T_LISTS = {
    5: ["T5", "T5*a", "T5*{b,c,d}"],
    6: ["T6", "T6*a", "T6*b", "T6*{b,c,d}"],
    7: ["T7", "T7*a", "T7*b", "T7*{a,c,d}", "T7*{b,c,d}", "T7*"],
    8: ["T8", "T8*a", "T8*b", "T8*{a,c,d}", "T8*{b,c,d}", "T8*"],
}

_PAVING_LISTS = [
    "T1*{b,c}", "T1*",
    "T2", "T2*{a,b}", "T2*{b,c}", "T2*",
    "T3*b", "T3*{b,c}",
    "T4", "T4*b", "T4*{a,c}", "T4*{b,c}",
    "T6*{b,c,d}",
    "T7", "T7*b", "T7*{b,c,d}",
    "T8", "T8*{b,c,d}",
]

_SPARSE_PAVING_LIST = ["T2", "T2*", "T3*b", "T4*b", "T4*{a,c}"]

_QUOTIENT_LIST = [
    "T1", "T1*", "T2", "T2*", "T3", "T4", "T4*",
    "T5", "T6", "T7", "T7*", "T8", "T8*",
]


def _dedupe(entries: list[CatalogEntry]) -> list[CatalogEntry]:
    seen: set[tuple] = set()
    out = []
    for e in entries:
        if e.canonical not in seen:
            seen.add(e.canonical)
            out.append(e)
    return out


@lru_cache(maxsize=None)
def excluded_minor_set(class_id: ExminorClassId, cap: int = 8) -> tuple[CatalogEntry, ...]:
    """The (cap-truncated) excluded-minor list for one characterization.

    The cap bounds the ground-set size of entries drawn from the infinite
    S_k families; finite entries larger than the cap are dropped as well
    since nothing of that size can appear in a smaller system.
    """
    cid = ExminorClassId(class_id)
    entries: list[CatalogEntry] = []
    if cid is ExminorClassId.DELTA_MATROID:
        for k in range(3, cap + 1):
            entries += _s_twist_reps(k, range(k + 1))
        entries += _t_classes(range(1, 9))
    elif cid is ExminorClassId.EVEN_DELTA_WITHIN_EVEN:
        for k in range(4, cap + 1, 2):
            entries += _s_twist_reps(k, range(k + 1))
        entries += _t_classes([5, 6, 7])
    elif cid is ExminorClassId.EVEN_DELTA_WITHIN_ALL:
        entries += _named_entries(["S1"])
        for k in range(3, cap + 1):
            entries += _s_twist_reps(k, range(k + 1))
        entries += _t_classes([5, 6, 7])
    elif cid is ExminorClassId.HIGGS_LIFT:
        entries += _named_entries(["U1", "U2", "U3", "U4", "U5", "U6", "U7"])
    elif cid is ExminorClassId.FULL_HIGGS:
        entries += _named_entries(["U1", "S2"])
    elif cid is ExminorClassId.EVEN_HIGGS_WITHIN_EVEN:
        entries += _named_entries(["U3", "U4", "U5", "U6", "U7"])
    elif cid is ExminorClassId.MATROID_EQUICARDINAL:
        entries += _named_entries(["T5*{a,d}", "T6*{a,d}"])
        for k in range(2, cap // 2 + 1):
            entries += _s_twist_reps(2 * k, [k])
    elif cid is ExminorClassId.BINARY:
        for base in ["P1", "P2", "P3", "P4", "P5"]:
            entries += _twist_class_entries(base)
        for k in range(3, cap + 1):
            entries += _s_twist_reps(k, range(k + 1))
        entries += _t_classes(range(1, 9))
    elif cid is ExminorClassId.MATROID_STACK:
        for k in range(3, cap + 1):
            entries += _s_twist_reps(k, [j for j in range(k + 1) if 2 * j != k])
        entries += _t_classes([1, 2, 3, 4])
        for i in (5, 6, 7, 8):
            entries += _named_entries(_STACK_T_LISTS[i])
    elif cid is ExminorClassId.EVEN_MATROID_STACK:
        for k2 in range(4, cap + 1, 2):
            entries += _s_twist_reps(k2, [j for j in range(k2 + 1) if 2 * j != k2])
        for i in (5, 6, 7):
            entries += _named_entries(_STACK_T_LISTS[i])
    elif cid is ExminorClassId.PAVING:
        entries += [CatalogEntry.of(f"S_{k}", make_named(f"S_{k}")) for k in range(3, cap + 1)]
        entries += _named_entries(_PAVING_LISTS)
    elif cid is ExminorClassId.SPARSE_PAVING:
        entries += [CatalogEntry.of(f"S_{k}", make_named(f"S_{k}")) for k in range(3, cap + 1)]
        entries += _named_entries(_SPARSE_PAVING_LIST)
    elif cid is ExminorClassId.QUOTIENT_STACK:
        entries += [CatalogEntry.of(f"S_{k}", make_named(f"S_{k}")) for k in range(3, cap + 1)]
        entries += _named_entries(_QUOTIENT_LIST)
    entries = [e for e in entries if e.system.n <= cap]
    return tuple(_dedupe(entries))
