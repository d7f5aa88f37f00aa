from itertools import combinations, permutations

import pytest

from qmlines import kernels
from qmlines.core import Betweenness, consistency_check
from qmlines.enumeration import (
    canonical_classes,
    classify,
    consistent_patterns_on_support,
    enumerate_consistent,
    raw_consistent_masks,
    verify_theorem_four_points,
)
from qmlines.fixtures import THREE_POINT_TABLE, q4_betweenness, three_point_relation
from qmlines.isomorphism import canonical_form
from qmlines.realizability import verify_witness

# canonical (encoding, orbit size) pairs for n=3, frozen from an independent
# brute-force script
N3_CLASSES = ((0, 1), (1, 6), (6, 6), (10, 3), (25, 2))

RAW_COUNT_N3 = 18
RAW_COUNT_N4 = 18**4  # four independent supports
N4_CLASS_COUNT = 4455


class TestPatterns:
    def test_exactly_eighteen(self):
        assert len(consistent_patterns_on_support()) == 18

    def test_matches_exhaustive_filter(self):
        # independent route: filter all 64 subsets of the 6 triples
        triples = list(permutations(range(3)))
        expected = set()
        for k in range(7):
            for chosen in combinations(triples, k):
                if consistency_check(Betweenness.from_triples(3, chosen)):
                    expected.add(frozenset(chosen))
        assert set(consistent_patterns_on_support()) == expected

    def test_contains_reference_patterns(self):
        patterns = set(consistent_patterns_on_support())
        assert frozenset() in patterns
        for t in permutations(range(3)):
            assert frozenset({t}) in patterns
        assert frozenset({(0, 1, 2), (2, 1, 0)}) in patterns  # abc, cba
        assert frozenset({(0, 1, 2), (1, 2, 0), (2, 0, 1)}) in patterns  # abc, bca, cab


class TestRawStream:
    def test_three_point_count(self):
        assert sum(1 for _ in raw_consistent_masks(3)) == RAW_COUNT_N3

    def test_four_point_count(self):
        assert sum(1 for _ in raw_consistent_masks(4)) == RAW_COUNT_N4

    def test_everything_yielded_is_consistent(self):
        for mask in raw_consistent_masks(4):
            assert consistency_check(Betweenness(4, mask))

    def test_no_duplicates_at_three_points(self):
        masks = list(raw_consistent_masks(3))
        assert len(masks) == len(set(masks))

    def test_unsupported_n(self):
        with pytest.raises(ValueError):
            list(raw_consistent_masks(5))


class TestCanonicalClasses:
    def test_three_point_classes_frozen(self):
        assert canonical_classes(3) == N3_CLASSES

    def test_four_point_orbit_accounting(self):
        classes = canonical_classes(4)
        assert len(classes) == N4_CLASS_COUNT
        assert sum(size for _, size in classes) == RAW_COUNT_N4

    def test_orbit_sizes_match_direct_computation(self):
        from qmlines.isomorphism import Relabeling, apply_relabeling

        for mask, size in canonical_classes(3):
            b = Betweenness(3, mask)
            orbit = {
                apply_relabeling(b, Relabeling(p)).mask for p in permutations(range(3))
            }
            assert len(orbit) == size

    def test_stream_is_canonical_and_increasing(self):
        previous = -1
        for b in enumerate_consistent(3):
            assert canonical_form(b)[0] == b
            assert b.mask > previous
            previous = b.mask

    def test_threads_do_not_change_the_result(self):
        # canonical_classes caches, so drop the cache for a real recomputation
        from qmlines import enumeration

        enumeration._classes_cache.pop(3, None)
        with_threads = canonical_classes(3, threads=4)
        enumeration._classes_cache.pop(3, None)
        sequential = canonical_classes(3, threads=1)
        assert with_threads == sequential


class TestClassifyThreePoints:
    def test_five_classes_all_quasi_realizable(self):
        records = classify(3)
        assert len(records) == 5
        assert all(r.realizable_quasi for r in records)
        assert all(verify_witness(r.witness, r.canonical) for r in records)

    def test_line_counts_against_reference_table(self):
        by_canon = {r.canonical.mask: r for r in classify(3)}
        for row in THREE_POINT_TABLE:
            canon, _ = canonical_form(three_point_relation(row))
            assert by_canon[canon.mask].line_count == row["line_count"]

    def test_metric_classes_match_reference(self):
        by_canon = {r.canonical.mask: r for r in classify(3)}
        for row in THREE_POINT_TABLE:
            canon, _ = canonical_form(three_point_relation(row))
            assert by_canon[canon.mask].realizable_metric == row["metric"]

    def test_int_bound_one_only_fits_the_empty_relation(self):
        records = classify(3, kmax_list=(1,))
        for r in records:
            assert r.realizable_int[1] == (r.canonical.mask == 0)

    def test_class_sizes(self):
        assert [r.class_size for r in classify(3)] == [1, 6, 6, 3, 2]

    def test_three_point_classes_all_digraph_realizable(self):
        assert all(r.realizable_digraph for r in classify(3))


@pytest.fixture(scope="module")
def records():
    return classify(4, kmax_list=(2, 3))


class TestClassifyFourPoints:
    def test_record_census(self, records):
        # realizable counts double as regression guards; every positive
        # verdict below is certified by a verified witness
        assert len(records) == N4_CLASS_COUNT
        assert sum(r.realizable_quasi for r in records) == 273
        assert sum(r.realizable_metric for r in records) == 9
        assert sum(r.realizable_int[2] for r in records) == 102
        assert sum(r.realizable_int[3] for r in records) == 265
        assert sum(r.realizable_digraph for r in records) == 83

    def test_witness_present_iff_realizable(self, records):
        for r in records:
            assert (r.witness is not None) == r.realizable_quasi
            if r.witness is not None:
                assert verify_witness(r.witness, r.canonical)

    def test_metric_implies_quasi(self, records):
        assert all(r.realizable_quasi for r in records if r.realizable_metric)

    def test_exhaustive_routes_imply_quasi(self, records):
        # every integer or digraph realization is itself a quasi-metric, so a
        # false negative from the LP would show up right here
        for r in records:
            if r.realizable_int[2] or r.realizable_int[3] or r.realizable_digraph:
                assert r.realizable_quasi

    def test_digraph_classes_within_integer_three(self, records):
        for r in records:
            if r.realizable_digraph:
                assert r.realizable_int[3]

    def test_the_single_dbe_failure_is_q4(self, records):
        failing = [r for r in records if not r.satisfies_dbe]
        assert len(failing) == 1
        assert failing[0].canonical == canonical_form(q4_betweenness())[0]
        assert failing[0].realizable_quasi

    def test_deterministic(self, records):
        assert records == classify(4, kmax_list=(2, 3))

    def test_integer_four_sweep_reproduces_the_lp_verdicts(self, records):
        # dual-route check over all 16.7M matrices with entries <= 4: the
        # exhaustive sweep realizes exactly the classes the LP accepts, so
        # every negative LP verdict is independently confirmed
        backends = kernels.available_backends()
        if "cython" not in backends:
            pytest.skip("needs the compiled kernels; the pure sweep takes minutes")
        int4 = set(backends["cython"].integer_canon_witnesses(4, 4))
        quasi = {r.canonical.mask for r in records if r.realizable_quasi}
        assert int4 == quasi


class TestTheorem:
    def test_matches_q4(self):
        report = verify_theorem_four_points()
        assert report.n == 4
        assert report.matches_q4
        assert len(report.exceptional_classes) == 1
        rec = report.exceptional_classes[0]
        assert rec.canonical == canonical_form(q4_betweenness())[0]
        assert rec.line_count == 3
        assert not rec.has_universal
        assert not rec.realizable_metric
        assert not rec.realizable_digraph
        assert rec.realizable_int == {2: False}
        assert verify_witness(rec.witness, rec.canonical)

    def test_perturbed_reference_is_reported(self):
        reference = q4_betweenness()
        smaller = Betweenness(4, reference.mask & (reference.mask - 1))  # drop one triple
        report = verify_theorem_four_points(reference=smaller)
        assert not report.matches_q4
        assert len(report.exceptional_classes) == 1  # the landscape itself is unchanged
