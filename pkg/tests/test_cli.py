import json

import pytest

from qmlines.cli import main

Q4_TEXT = "p s q r\n0 1 1 3\n3 0 2 3\n1 2 0 2\n1 1 2 0\n"
Q4_TRIPLES = "p q r\nr p q\ns q p\nq p s\n"
UNIFORM3 = "a b c\n0 1 1\n1 0 1\n1 1 0\n"
BROKEN = "a b c\n0 5 1\n5 0 1\n1 1 0\n"


@pytest.fixture
def q4_file(tmp_path):
    path = tmp_path / "q4.matrix"
    path.write_text(Q4_TEXT)
    return str(path)


@pytest.fixture
def q4_triples_file(tmp_path):
    path = tmp_path / "q4.triples"
    path.write_text(Q4_TRIPLES)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestValidate:
    def test_valid(self, capsys, q4_file):
        code, out, _ = run(capsys, "validate", q4_file)
        assert code == 0
        assert out.strip() == "ok"

    def test_invalid_exits_one(self, capsys, tmp_path):
        path = tmp_path / "bad.matrix"
        path.write_text(BROKEN)
        code, out, _ = run(capsys, "validate", str(path))
        assert code == 1
        assert "triangle" in out

    def test_unparsable_exits_two(self, capsys, tmp_path):
        path = tmp_path / "bad.matrix"
        path.write_text("a b\n0 0.5\n1 0\n")
        code, _, err = run(capsys, "validate", str(path))
        assert code == 2
        assert "decimal" in err

    def test_missing_file_exits_two(self, capsys):
        code, _, err = run(capsys, "validate", "/nonexistent/x.matrix")
        assert code == 2

    def test_json_payload(self, capsys, tmp_path):
        path = tmp_path / "bad.matrix"
        path.write_text(BROKEN)
        code, payload = run_json(capsys, "validate", str(path))
        assert code == 1
        assert payload["ok"] is False
        kinds = {v["kind"] for v in payload["violations"]}
        assert "triangle" in kinds
        assert ["a", "c", "b"] in [v["points"] for v in payload["violations"]]


class TestBetweenness:
    def test_q4(self, capsys, q4_file):
        code, out, _ = run(capsys, "betweenness", q4_file)
        assert code == 0
        assert set(out.strip().splitlines()) == {"p q r", "r p q", "s q p", "q p s"}

    def test_invalid_matrix_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "bad.matrix"
        path.write_text(BROKEN)
        code, _, err = run(capsys, "betweenness", str(path))
        assert code == 2
        assert "not a quasi-metric" in err

    def test_json(self, capsys, q4_file):
        code, payload = run_json(capsys, "betweenness", q4_file)
        assert payload["labels"] == ["p", "s", "q", "r"]
        assert ["p", "q", "r"] in payload["triples"]


class TestLines:
    def test_from_matrix(self, capsys, q4_file):
        code, out, _ = run(capsys, "lines", q4_file)
        assert code == 0
        assert "lines (3): {p,q,r} {p,q,s} {r,s}" in out
        assert "line q p = {p,q,s}" in out

    def test_from_triples(self, capsys, q4_triples_file):
        code, payload = run_json(
            capsys, "lines", "--triples", q4_triples_file, "--labels", "p,s,q,r"
        )
        assert code == 0
        assert payload["line_count"] == 3
        assert payload["has_universal"] is False

    def test_requires_exactly_one_source(self, capsys, q4_file, q4_triples_file):
        code, _, err = run(
            capsys, "lines", q4_file, "--triples", q4_triples_file, "--labels", "p,s,q,r"
        )
        assert code == 2
        code, _, err = run(capsys, "lines")
        assert code == 2

    def test_triples_require_labels(self, capsys, q4_triples_file):
        code, _, err = run(capsys, "lines", "--triples", q4_triples_file)
        assert code == 2
        assert "--labels" in err


class TestDbe:
    def test_q4_fails(self, capsys, q4_file):
        code, out, _ = run(capsys, "dbe", q4_file)
        assert code == 1
        assert "dbe: no" in out

    def test_uniform_satisfies(self, capsys, tmp_path):
        path = tmp_path / "u.matrix"
        path.write_text(UNIFORM3)
        code, out, _ = run(capsys, "dbe", str(path))
        assert code == 0
        assert "dbe: yes" in out


class TestCanon:
    def test_q4_canonical_encoding(self, capsys, q4_triples_file):
        code, payload = run_json(
            capsys, "canon", "--triples", q4_triples_file, "--labels", "p,s,q,r"
        )
        assert code == 0
        assert payload["encoding"] == 271392
        assert len(payload["triples"]) == 4
        assert sorted(payload["relabeling"]) == ["p", "q", "r", "s"]


class TestIso:
    def test_isomorphic_pair(self, capsys, tmp_path, q4_triples_file):
        other = tmp_path / "other.triples"
        # the uniqueness-argument relation {abc, bad, cab, dba}
        other.write_text("a b c\nb a d\nc a b\nd b a\n")
        code, payload = run_json(
            capsys,
            "iso",
            str(other),
            q4_triples_file,
            "--labels",
            "a,b,c,d",
            "--labels-b",
            "p,s,q,r",
        )
        assert code == 0
        assert payload["isomorphic"] is True
        assert payload["witness"]["a"] == "p"

    def test_non_isomorphic_exits_one(self, capsys, tmp_path):
        f1 = tmp_path / "one.triples"
        f1.write_text("a b c\n")
        f2 = tmp_path / "two.triples"
        f2.write_text("a b c\nc b a\n")
        code, out, _ = run(capsys, "iso", str(f1), str(f2), "--labels", "a,b,c")
        assert code == 1
        assert "not isomorphic" in out


class TestRealize:
    def test_quasi(self, capsys, q4_triples_file):
        code, payload = run_json(
            capsys, "realize", "--variant", "quasi",
            "--triples", q4_triples_file, "--labels", "p,s,q,r",
        )
        assert code == 0
        assert payload["realizable"] is True
        assert payload["witness"] is not None

    def test_metric_refuted(self, capsys, q4_triples_file):
        code, payload = run_json(
            capsys, "realize", "--variant", "metric",
            "--triples", q4_triples_file, "--labels", "p,s,q,r",
        )
        assert code == 1
        assert payload["realizable"] is False
        assert payload["optimal_slack"] == "0"

    def test_int_bounds(self, capsys, q4_triples_file):
        code, _ = run_json(
            capsys, "realize", "--variant", "int:2",
            "--triples", q4_triples_file, "--labels", "p,s,q,r",
        )
        assert code == 1
        code, payload = run_json(
            capsys, "realize", "--variant", "int:3",
            "--triples", q4_triples_file, "--labels", "p,s,q,r",
        )
        assert code == 0
        assert payload["witness"] is not None

    def test_digraph_refuted(self, capsys, q4_triples_file):
        code, payload = run_json(
            capsys, "realize", "--variant", "digraph",
            "--triples", q4_triples_file, "--labels", "p,s,q,r",
        )
        assert code == 1

    def test_digraph_positive(self, capsys, tmp_path):
        path = tmp_path / "cycle.triples"
        path.write_text("a b c\nb c a\nc a b\n")
        code, payload = run_json(
            capsys, "realize", "--variant", "digraph",
            "--triples", str(path), "--labels", "a,b,c",
        )
        assert code == 0
        assert payload["witness_arcs"]

    def test_bad_variant(self, capsys, q4_triples_file):
        code, _, err = run(
            capsys, "realize", "--variant", "euclid",
            "--triples", q4_triples_file, "--labels", "p,s,q,r",
        )
        assert code == 2

    def test_bad_int_bound(self, capsys, q4_triples_file):
        code, _, err = run(
            capsys, "realize", "--variant", "int:x",
            "--triples", q4_triples_file, "--labels", "p,s,q,r",
        )
        assert code == 2


class TestEnumerate:
    def test_three_points_text(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "3", "--int", "1,2")
        assert code == 0
        assert "classes: 5" in out
        header = out.splitlines()[0].split("\t")
        assert header == [
            "encoding", "size", "lines", "universal", "dbe", "quasi", "metric",
            "int1", "int2", "digraph",
        ]

    def test_three_points_json(self, capsys):
        code, payload = run_json(capsys, "enumerate", "--n", "3")
        assert payload["class_count"] == 5
        encodings = [c["encoding"] for c in payload["classes"]]
        assert encodings == sorted(encodings)
        assert all(c["realizable_quasi"] for c in payload["classes"])

    def test_bad_n(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n", "5")
        assert code == 2

    def test_bad_int_list(self, capsys):
        code, _, err = run(capsys, "enumerate", "--n", "3", "--int", "2,x")
        assert code == 2

    def test_thread_count_does_not_change_output(self, capsys):
        _, single, _ = run(capsys, "enumerate", "--n", "3", "--int", "2")
        _, threaded, _ = run(capsys, "enumerate", "--n", "3", "--int", "2", "--threads", "4")
        assert single == threaded


class TestTwoPoints:
    def test_dbe_on_two_points_via_triples(self, capsys, tmp_path):
        empty = tmp_path / "none.triples"
        empty.write_text("")
        code, out, _ = run(capsys, "dbe", "--triples", str(empty), "--labels", "a,b")
        assert code == 0
        assert "universal line: yes" in out

    def test_validate_two_point_matrix(self, capsys, tmp_path):
        path = tmp_path / "two.matrix"
        path.write_text("a b\n0 1\n1 0\n")
        code, out, _ = run(capsys, "validate", str(path))
        assert code == 0


class TestVerifyPaper:
    def test_all_claims_pass(self, capsys):
        code, out, _ = run(capsys, "verify-paper")
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
        assert len(lines) == 10
        assert all(l.startswith("PASS") for l in lines)
        assert "all claims pass" in out

    def test_json_shape(self, capsys):
        code, payload = run_json(capsys, "verify-paper")
        assert code == 0
        assert payload["all_pass"] is True
        assert len(payload["claims"]) == 10
        idents = [c["ident"] for c in payload["claims"]]
        assert idents[0] == "q4-betweenness"
        assert idents[-1] == "grid-oracle"
