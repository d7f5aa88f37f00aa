"""Exhaustive enumeration and classification of consistent betweenness
relations on 3 and 4 points.

Candidates are assembled as products of consistent per-support patterns:
the exclusion rule only ever relates triples on the same 3-point support,
so the product construction is complete.  Only that rule prunes the search;
no stronger inference is assumed.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from itertools import combinations, permutations, product
from typing import Iterator, Mapping

from . import kernels
from .core import Betweenness, DistanceMatrix, line_set
from .encoding import mask_from_triples, supports
from .isomorphism import canonical_form
from .realizability import realize

SUPPORTED_N = (3, 4)


def consistent_patterns_on_support() -> tuple[frozenset[tuple[int, int, int]], ...]:
    """All subsets of the 6 ordered triples on one 3-point support that obey
    the exclusion rule (xyz rules out yxz and xzy); there are 18."""
    triples = list(permutations(range(3)))
    patterns = []
    for k in range(len(triples) + 1):
        for chosen in combinations(triples, k):
            s = set(chosen)
            if all((y, x, z) not in s and (x, z, y) not in s for (x, y, z) in s):
                patterns.append(frozenset(s))
    return tuple(patterns)


def _support_pattern_masks(n: int) -> list[list[int]]:
    base = consistent_patterns_on_support()
    groups = []
    for sup in supports(n):
        masks = []
        for pattern in base:
            placed = [(sup[x], sup[y], sup[z]) for (x, y, z) in pattern]
            masks.append(mask_from_triples(n, placed))
        groups.append(masks)
    return groups


def raw_consistent_masks(n: int) -> Iterator[int]:
    """Every consistent relation on n points, exactly once, as encodings.

    The stream is the product of per-support patterns; at n=4 it has
    18^4 = 104,976 members.
    """
    if n not in SUPPORTED_N:
        raise ValueError(f"enumeration supports n in {SUPPORTED_N}, got {n}")
    groups = _support_pattern_masks(n)
    for combo in product(*groups):
        mask = 0
        for m in combo:
            mask |= m
        yield mask


def _chunked(seq, parts):
    step = (len(seq) + parts - 1) // parts
    return [seq[i : i + step] for i in range(0, len(seq), step)]


_classes_cache: dict[int, tuple[tuple[int, int], ...]] = {}


def canonical_classes(n: int, threads: int = 1) -> tuple[tuple[int, int], ...]:
    """(canonical encoding, orbit size) for every isomorphism class of
    consistent relations, in increasing encoding order."""
    cached = _classes_cache.get(n)
    if cached is not None:
        return cached
    masks = list(raw_consistent_masks(n))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            canons = []
            for part in pool.map(
                lambda chunk: kernels.canonical_batch(n, chunk), _chunked(masks, threads)
            ):
                canons.extend(part)
    else:
        canons = kernels.canonical_batch(n, masks)
    # the raw stream hits each orbit member exactly once, so multiplicity
    # under canonicalization is the orbit size
    result = tuple(sorted(Counter(canons).items()))
    _classes_cache[n] = result
    return result


def enumerate_consistent(n: int, threads: int = 1) -> Iterator[Betweenness]:
    """Each canonical consistent relation exactly once, increasing encoding."""
    for mask, _ in canonical_classes(n, threads):
        yield Betweenness(n, mask)


@dataclass(frozen=True)
class ClassificationRecord:
    """One isomorphism class of consistent relations with its line structure
    and realizability verdicts."""

    canonical: Betweenness
    class_size: int
    line_count: int
    has_universal: bool
    satisfies_dbe: bool
    realizable_quasi: bool
    realizable_metric: bool
    realizable_int: Mapping[int, bool]
    realizable_digraph: bool
    witness: DistanceMatrix | None


def _base_record(n, mask, orbit_size, digraph_canons) -> ClassificationRecord:
    b = Betweenness(n, mask)
    ls = line_set(b)
    quasi = realize(b, "quasi")
    if quasi.realizable:
        realizable_metric = realize(b, "metric").realizable
    else:
        # metric realizability implies quasi realizability
        realizable_metric = False
    return ClassificationRecord(
        canonical=b,
        class_size=orbit_size,
        line_count=ls.line_count,
        has_universal=ls.has_universal,
        satisfies_dbe=ls.has_universal or ls.line_count >= n,
        realizable_quasi=quasi.realizable,
        realizable_metric=realizable_metric,
        realizable_int={},
        realizable_digraph=mask in digraph_canons,
        witness=quasi.witness,
    )


_base_records_cache: dict[int, tuple[ClassificationRecord, ...]] = {}


def _base_records(n: int, threads: int = 1) -> tuple[ClassificationRecord, ...]:
    cached = _base_records_cache.get(n)
    if cached is not None:
        return cached
    digraph_canons = kernels.digraph_canon_witnesses(n)
    records = tuple(
        _base_record(n, mask, size, digraph_canons)
        for mask, size in canonical_classes(n, threads)
    )
    _base_records_cache[n] = records
    return records


def classify(n: int, kmax_list=(), threads: int = 1) -> tuple[ClassificationRecord, ...]:
    """Classify every canonical consistent relation on n points.

    Runs the slack-maximization LP for every class (quasi always, metric
    whenever quasi succeeds), the exhaustive digraph sweep, and one
    exhaustive integer sweep per requested bound.  Records are sorted by
    canonical encoding.
    """
    if n not in SUPPORTED_N:
        raise ValueError(f"classification supports n in {SUPPORTED_N}, got {n}")
    bounds = tuple(sorted(set(kmax_list)))
    int_canons = {k: kernels.integer_canon_witnesses(n, k) for k in bounds}
    records = []
    for rec in _base_records(n, threads):
        realizable_int = {k: rec.canonical.mask in int_canons[k] for k in bounds}
        records.append(replace(rec, realizable_int=realizable_int))
    return tuple(records)


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of the four-point uniqueness check: the quasi-realizable
    classes with no universal line and fewer than four lines."""

    n: int
    exceptional_classes: tuple[ClassificationRecord, ...]
    matches_q4: bool


def verify_theorem_four_points(
    threads: int = 1, reference: Betweenness | None = None
) -> TheoremReport:
    """Check that exactly one 4-point class is quasi-realizable with no
    universal line and fewer than four lines, and that it is the class of
    the reference relation (Q4's betweenness by default).

    The LP runs only on classes surviving the cheap line filter.
    """
    from .fixtures import q4_betweenness

    ref = reference if reference is not None else q4_betweenness()
    ref_canon, _ = canonical_form(ref)
    int2 = kernels.integer_canon_witnesses(4, 2)
    digraph_canons = kernels.digraph_canon_witnesses(4)
    exceptional = []
    for mask, size in canonical_classes(4, threads):
        ls = line_set(Betweenness(4, mask))
        if ls.has_universal or ls.line_count >= 4:
            continue
        rec = _base_record(4, mask, size, digraph_canons)
        rec = replace(rec, realizable_int={2: mask in int2})
        if rec.realizable_quasi:
            exceptional.append(rec)
    matches = len(exceptional) == 1 and exceptional[0].canonical == ref_canon
    return TheoremReport(4, tuple(exceptional), matches)
