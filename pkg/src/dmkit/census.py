"""Exhaustive and sampled enumeration of proper set systems, oracle
equivalence verification, and counting.

Family index encoding: bit j of the index means the subset with mask j is
feasible, with subsets ordered by mask value.  Index 0 is the empty
family and is skipped (improper).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterator

import numpy as np

from .bitset import iter_bits, permute_mask
from .catalog import ExminorClassId
from .errors import CapacityError, DmkitError, FormatError
from .higgs import classify_higgs
from .matroid import Matroid, exchange_violation, is_matroid, is_quotient
from .minorscan import classify_by_exminors
from .setsystem import SetSystem
from .stacks import classify_stack

CENSUS_LABELS = "abcdefgh"
EXHAUSTIVE_CAP = 4
CHECKPOINT_VERSION = 1
DEFAULT_CHUNK = 1 << 24


def family_system(n: int, index: int) -> SetSystem:
    """The set system encoded by a family index."""
    labels = tuple(CENSUS_LABELS[:n])
    return SetSystem(labels, frozenset(iter_bits(index)))


def enumerate_proper_systems(n: int, mode: str = "exhaustive", *, seed: int = 0,
                             count: int = 0) -> Iterator[tuple[int, SetSystem]]:
    """Yield (family index, system) pairs.

    Exhaustive mode requires n <= 4; sampled mode draws uniformly from the
    nonempty families, deterministically per seed.
    """
    if mode == "exhaustive":
        if n > EXHAUSTIVE_CAP:
            raise CapacityError(
                f"exhaustive enumeration of 2^{1 << n} families needs the "
                "long-run census entry point"
            )
        for index in range(1, 1 << (1 << n)):
            yield index, family_system(n, index)
    elif mode == "sampled":
        rng = random.Random(seed)
        bits = 1 << n
        for _ in range(count):
            index = 0
            while not index:
                index = rng.getrandbits(bits)
            yield index, family_system(n, index)
    else:
        raise ValueError(f"unknown mode {mode!r}")


# -- isomorphism reduction over family indices ---------------------------


@lru_cache(maxsize=None)
def _canonical_index_table(n: int) -> np.ndarray:
    """canonical[f] = least family index isomorphic to f, for all indices."""
    size = 1 << n
    count = 1 << size
    if n > EXHAUSTIVE_CAP:
        raise CapacityError(f"no canonical table for n = {n}")
    indices = np.arange(count, dtype=np.uint32)
    best = indices.copy()
    for perm in permutations(range(n)):
        sub = [permute_mask(m, perm) for m in range(size)]
        table = np.zeros(count, dtype=np.uint32)
        for j in range(size):
            table |= ((indices >> np.uint32(j)) & np.uint32(1)) << np.uint32(sub[j])
        np.minimum(best, table, out=best)
    return best


# -- the equivalence registry ---------------------------------------------


@dataclass(frozen=True)
class Equivalence:
    """A registered theorem: direct oracle vs excluded-minor scan, within
    an ambient hypothesis."""

    theorem_id: str
    description: str
    ambient: Callable[[SetSystem], bool]
    direct: Callable[[SetSystem], bool]
    exminor: Callable[[SetSystem], bool]


def _equicardinal(s: SetSystem) -> bool:
    return len({m.bit_count() for m in s.masks}) == 1


def _scan(cid: ExminorClassId) -> Callable[[SetSystem], bool]:
    def run(s: SetSystem) -> bool:
        return classify_by_exminors(s, cid)[0]

    return run


def _registry() -> dict[str, Equivalence]:
    always = lambda s: True  # noqa: E731
    is_dm = lambda s: s.is_delta_matroid()  # noqa: E731
    reg = [
        Equivalence(
            "exdelta", "delta-matroids within proper set systems",
            always, is_dm, _scan(ExminorClassId.DELTA_MATROID),
        ),
        Equivalence(
            "exevendelta", "even delta-matroids within even proper systems",
            lambda s: s.is_even, is_dm, _scan(ExminorClassId.EVEN_DELTA_WITHIN_EVEN),
        ),
        Equivalence(
            "exevendelta2", "even delta-matroids within all proper systems",
            always, lambda s: s.is_even and s.is_delta_matroid(),
            _scan(ExminorClassId.EVEN_DELTA_WITHIN_ALL),
        ),
        Equivalence(
            "exmatroid", "matroids within equicardinal proper systems",
            _equicardinal, is_matroid, _scan(ExminorClassId.MATROID_EQUICARDINAL),
        ),
        Equivalence(
            "exhiggs", "Higgs lift delta-matroids within delta-matroids",
            is_dm, lambda s: classify_higgs(s).is_higgs, _scan(ExminorClassId.HIGGS_LIFT),
        ),
        Equivalence(
            "exfull", "full Higgs lift delta-matroids within delta-matroids",
            is_dm, lambda s: classify_higgs(s).is_full, _scan(ExminorClassId.FULL_HIGGS),
        ),
        Equivalence(
            "exevenhiggs", "even Higgs lift delta-matroids within even delta-matroids",
            lambda s: s.is_even and s.is_delta_matroid(),
            lambda s: classify_higgs(s).is_even_higgs,
            _scan(ExminorClassId.EVEN_HIGGS_WITHIN_EVEN),
        ),
        Equivalence(
            "exmatroidstack", "matroid stack delta-matroids within matroid stack systems",
            lambda s: classify_stack(s).matroid_stack, is_dm,
            _scan(ExminorClassId.MATROID_STACK),
        ),
        Equivalence(
            "exevenmatroidstack",
            "even matroid stack delta-matroids within even matroid stack systems",
            lambda s: s.is_even and classify_stack(s).matroid_stack, is_dm,
            _scan(ExminorClassId.EVEN_MATROID_STACK),
        ),
        Equivalence(
            "expaving", "paving delta-matroids within paving systems",
            lambda s: classify_stack(s).paving_system, is_dm,
            _scan(ExminorClassId.PAVING),
        ),
        Equivalence(
            "exsparsepaving", "sparse paving delta-matroids within sparse paving systems",
            lambda s: classify_stack(s).sparse_paving_system, is_dm,
            _scan(ExminorClassId.SPARSE_PAVING),
        ),
        Equivalence(
            "exquotient", "quotient delta-matroids within quotient systems",
            lambda s: classify_stack(s).quotient_system, is_dm,
            _scan(ExminorClassId.QUOTIENT_STACK),
        ),
        Equivalence(
            "speven", "even sparse paving systems are quotient systems",
            lambda s: s.is_even and classify_stack(s).sparse_paving_system,
            lambda s: classify_stack(s).quotient_system,
            always,
        ),
    ]
    return {e.theorem_id: e for e in reg}


REGISTRY = _registry()


@dataclass
class CensusReport:
    """Aggregated result of one census or verification run."""

    n: int
    mode: str
    theorem: str | None = None
    totals: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "mode": self.mode,
                "theorem": self.theorem,
                "totals": self.totals,
                "discrepancies": self.discrepancies,
                "ok": self.ok,
            },
            separators=(", ", ": "),
        )

    def summary(self) -> str:
        parts = [f"n={self.n}", self.mode]
        if self.theorem:
            parts.append(self.theorem)
        parts.append(f"{self.totals.get('ambient', 0)} systems in hypothesis")
        parts.append(f"{len(self.discrepancies)} discrepancies")
        return " | ".join(parts)


def _check_one(eq: Equivalence, system: SetSystem) -> tuple[bool, bool | None, bool | None]:
    """(ambient, direct, exminor) verdicts; oracles skipped outside the
    hypothesis."""
    if not eq.ambient(system):
        return False, None, None
    return True, eq.direct(system), eq.exminor(system)


def verify_equivalence(
    n: int,
    theorem_id: str,
    mode: str = "exhaustive",
    *,
    seed: int = 0,
    count: int = 0,
    dedupe: bool = True,
    max_witnesses: int = 100,
) -> CensusReport:
    """Compare a direct oracle with its excluded-minor classifier.

    Exhaustive runs with dedupe=True evaluate both oracles once per
    isomorphism class (both sides are label-invariant; invariance itself
    is covered by the unit tests) and replicate the verdict across the
    class members, which all appear in the totals.
    """
    if theorem_id not in REGISTRY:
        raise DmkitError(f"unknown theorem id {theorem_id!r}; "
                         f"known: {sorted(REGISTRY)}")
    eq = REGISTRY[theorem_id]
    report = CensusReport(n=n, mode=mode, theorem=theorem_id)
    checked = ambient = members_direct = members_exminor = 0
    if mode == "exhaustive" and dedupe and n <= EXHAUSTIVE_CAP:
        canon = _canonical_index_table(n)
        reps, inverse, counts = np.unique(
            canon[1:], return_inverse=True, return_counts=True
        )
        rep_results = []
        for rep in reps.tolist():
            rep_results.append(_check_one(eq, family_system(n, rep)))
        checked = int((1 << (1 << n)) - 1)
        for (amb, direct, exm), size in zip(rep_results, counts.tolist()):
            if amb:
                ambient += size
                members_direct += size if direct else 0
                members_exminor += size if exm else 0
        for rep_pos, (amb, direct, exm) in enumerate(rep_results):
            if amb and direct != exm:
                bad_indices = (np.nonzero(inverse == rep_pos)[0] + 1)[:max_witnesses]
                for fi in bad_indices.tolist():
                    report.discrepancies.append(
                        {"family_index": int(fi), "direct": direct, "exminor": exm}
                    )
    else:
        for index, system in enumerate_proper_systems(n, mode, seed=seed, count=count):
            checked += 1
            amb, direct, exm = _check_one(eq, system)
            if not amb:
                continue
            ambient += 1
            members_direct += 1 if direct else 0
            members_exminor += 1 if exm else 0
            if direct != exm and len(report.discrepancies) < max_witnesses:
                report.discrepancies.append(
                    {"family_index": index, "direct": direct, "exminor": exm}
                )
    report.totals = {
        "checked": checked,
        "ambient": ambient,
        "direct_members": members_direct,
        "exminor_members": members_exminor,
    }
    if mode == "sampled":
        report.mode = f"sampled(seed={seed}, count={count})"
    return report


# -- counting --------------------------------------------------------------


_COUNT_FLAGS = (
    "delta_matroid",
    "even_delta_matroid",
    "higgs",
    "full_higgs",
    "matroid",
    "matroid_stack_dm",
    "paving_dm",
    "sparse_paving_dm",
    "quotient_dm",
    "binary_consistent",
)


def _count_flags(system: SetSystem) -> dict[str, bool]:
    from .gf2 import is_binary_dm

    flags = dict.fromkeys(_COUNT_FLAGS, False)
    if not system.is_delta_matroid():
        return flags
    flags["delta_matroid"] = True
    flags["even_delta_matroid"] = system.is_even
    cls = classify_higgs(system)
    flags["higgs"] = cls.is_higgs
    flags["full_higgs"] = cls.is_full
    stack = classify_stack(system)
    flags["matroid"] = _equicardinal(system) and stack.matroid_stack
    flags["matroid_stack_dm"] = stack.matroid_stack
    flags["paving_dm"] = stack.paving_system
    flags["sparse_paving_dm"] = stack.sparse_paving_system
    flags["quotient_dm"] = stack.quotient_system
    flags["binary_consistent"] = is_binary_dm(system)[0]
    return flags


def count_census(n: int, mode: str = "exhaustive", *, seed: int = 0, count: int = 0) -> CensusReport:
    """Class counts over the census; exhaustive runs assert the
    delta-matroid lower bound 2^(2^(n-1))."""
    report = CensusReport(n=n, mode=mode, theorem=None)
    totals = dict.fromkeys(_COUNT_FLAGS, 0)
    checked = 0
    if mode == "exhaustive" and n <= EXHAUSTIVE_CAP:
        canon = _canonical_index_table(n)
        reps, counts = np.unique(canon[1:], return_counts=True)
        for rep, size in zip(reps.tolist(), counts.tolist()):
            flags = _count_flags(family_system(n, rep))
            for key, value in flags.items():
                if value:
                    totals[key] += size
        checked = int((1 << (1 << n)) - 1)
    else:
        for _, system in enumerate_proper_systems(n, mode, seed=seed, count=count):
            checked += 1
            for key, value in _count_flags(system).items():
                if value:
                    totals[key] += 1
        if mode == "sampled":
            report.mode = f"sampled(seed={seed}, count={count})"
    report.totals = {"checked": checked, **totals}
    if mode == "exhaustive":
        bound = 1 << (1 << (n - 1)) if n >= 1 else 1
        if totals["delta_matroid"] < bound:
            report.discrepancies.append(
                {
                    "class": "delta_matroid",
                    "count": totals["delta_matroid"],
                    "lower_bound": bound,
                }
            )
    return report


# -- random quotient pairs ---------------------------------------------


def random_quotient_pair(n: int, r_q: int, r_l: int, seed: int) -> tuple[Matroid, Matroid]:
    """Seeded (Q, L) with Q a quotient of L, r(Q) = r_q, r(L) = r_l.

    L is repaired from a random basis family by deleting an offending
    basis until exchange holds; Q is the contraction of L by a random
    rank-(r_l - r_q) subset, put back on the full ground set with the
    contracted elements as loops.
    """
    if not 0 <= r_q <= r_l <= n:
        raise DmkitError(f"need 0 <= r_q <= r_l <= n, got ({r_q}, {r_l}, {n})")
    rng = random.Random(seed)
    labels = tuple(CENSUS_LABELS[:n])
    candidates = [m for m in range(1 << n) if m.bit_count() == r_l]
    family = {m for m in candidates if rng.random() < 0.5}
    if not family:
        family = {rng.choice(candidates)}
    while True:
        system = SetSystem(labels, frozenset(family))
        bad = exchange_violation(system)
        if bad is None:
            break
        family.discard(bad[0])
    lift = Matroid(SetSystem(labels, frozenset(family)), r_l)
    k = r_l - r_q
    if k == 0:
        return lift, lift
    subsets = list(range(1 << n))
    rng.shuffle(subsets)
    w = next(m for m in subsets if lift.rank_of_mask(m) == k)
    q_bases = frozenset(
        b
        for b in range(1 << n)
        if not b & w and b.bit_count() == r_q and lift.rank_of_mask(b | w) == r_l
    )
    q = Matroid(SetSystem(labels, q_bases), r_q)
    if not is_quotient(q, lift):
        raise DmkitError("internal: generated pair failed the quotient check")
    return q, lift


# -- long exhaustive runs with checkpointing -----------------------------


def _stream_range(
    n: int, theorem_id: str, start: int, stop: int, max_witnesses: int
) -> tuple[dict, list[dict]]:
    eq = REGISTRY[theorem_id]
    totals = {"checked": 0, "ambient": 0, "direct_members": 0, "exminor_members": 0}
    discrepancies: list[dict] = []
    for fi in range(start, stop):
        system = family_system(n, fi)
        totals["checked"] += 1
        amb, direct, exm = _check_one(eq, system)
        if not amb:
            continue
        totals["ambient"] += 1
        totals["direct_members"] += 1 if direct else 0
        totals["exminor_members"] += 1 if exm else 0
        if direct != exm and len(discrepancies) < max_witnesses:
            discrepancies.append(
                {"family_index": fi, "direct": direct, "exminor": exm}
            )
    return totals, discrepancies


def _stream_worker(task: tuple) -> tuple[dict, list[dict]]:
    return _stream_range(*task)


def _merge_partials(totals: dict, discrepancies: list, partial) -> None:
    part_totals, part_disc = partial
    for key, value in part_totals.items():
        totals[key] += value
    discrepancies.extend(part_disc)


def run_streaming(
    n: int,
    theorem_id: str,
    *,
    start: int = 1,
    stop: int | None = None,
    checkpoint_path: str | None = None,
    chunk: int = DEFAULT_CHUNK,
    max_witnesses: int = 100,
    jobs: int = 1,
) -> CensusReport:
    """Undeduped exhaustive scan over a family-index range with periodic
    checkpoints; the entry point for long (n = 5) runs.

    Chunks are processed in index order; with jobs > 1 the chunks of each
    round are distributed to worker processes and merged in order, so the
    report is identical to the single-process one.
    """
    if theorem_id not in REGISTRY:
        raise DmkitError(f"unknown theorem id {theorem_id!r}")
    end = stop if stop is not None else 1 << (1 << n)
    totals = {"checked": 0, "ambient": 0, "direct_members": 0, "exminor_members": 0}
    discrepancies: list[dict] = []
    index = start
    if checkpoint_path:
        loaded = _load_checkpoint(checkpoint_path, n, theorem_id)
        if loaded is not None:
            index, totals, discrepancies = loaded
    while index < end:
        round_end = min(index + chunk * max(jobs, 1), end)
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            tasks = []
            lo = index
            while lo < round_end:
                hi = min(lo + chunk, round_end)
                tasks.append((n, theorem_id, lo, hi, max_witnesses))
                lo = hi
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for partial in pool.map(_stream_worker, tasks):
                    _merge_partials(totals, discrepancies, partial)
        else:
            _merge_partials(
                totals, discrepancies,
                _stream_range(n, theorem_id, index, round_end, max_witnesses),
            )
        index = round_end
        if checkpoint_path:
            _save_checkpoint(checkpoint_path, n, theorem_id, index, totals, discrepancies)
    del discrepancies[max_witnesses:]
    return CensusReport(
        n=n, mode=f"streaming[{start},{end})", theorem=theorem_id,
        totals=totals, discrepancies=discrepancies,
    )


def _save_checkpoint(path, n, theorem_id, next_index, totals, discrepancies) -> None:
    doc = {
        "version": CHECKPOINT_VERSION,
        "n": n,
        "theorem": theorem_id,
        "next_index": next_index,
        "totals": totals,
        "discrepancies": discrepancies,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)


def _load_checkpoint(path, n, theorem_id):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        return None
    except json.JSONDecodeError as exc:
        raise FormatError(f"corrupt checkpoint {path}: {exc}") from None
    if doc.get("version") != CHECKPOINT_VERSION:
        raise FormatError(f"checkpoint version {doc.get('version')} unsupported")
    if doc.get("n") != n or doc.get("theorem") != theorem_id:
        raise FormatError("checkpoint belongs to a different run")
    return doc["next_index"], doc["totals"], doc["discrepancies"]
