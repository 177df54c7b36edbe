"""File-in, report-out command layer: parsing, validation, determinism, exits."""

import json
import subprocess
import sys

import pytest

from abcosp import cli

BASE_DOC = {
    "version": "1",
    "field": {"char": 0},
    "linmaps": {
        "f0": {"src": 1, "dst": 2, "matrix": [[1], [0]]},
        "f1": {"src": 1, "dst": 2, "matrix": [[0], [1]]},
        "g0": {"src": 1, "dst": 1, "matrix": [[1]]},
        "g1": {"src": 1, "dst": 1, "matrix": [[1]]},
    },
    "cospans": {"c": {"f0": "f0", "f1": "f1"}, "d": {"f0": "g0", "f1": "g1"}},
    "complexes": {
        "circle": {"n_vertices": 3, "maximal": [[0, 1], [1, 2], [0, 2]]},
        "s0": {"n_vertices": 2, "maximal": [[0], [1]]},
        "arc01": {"n_vertices": 3, "maximal": [[0, 1]]},
        "arc12": {"n_vertices": 3, "maximal": [[1, 2], [0, 2]]},
        "arcs_int": {"n_vertices": 3, "maximal": [[0], [1]]},
    },
    "maps": {
        "incl": {"src": "s0", "dst": "circle", "vertices": [0, 1]},
        "idc": {"src": "circle", "dst": "circle", "vertices": [0, 1, 2]},
    },
    "space_cospans": {
        "lam": {"f0": "incl", "f1": "idc"},
        "mu": {"f0": "idc", "f1": "incl"},
    },
    "inputs": {
        "left": "c",
        "right": "c",
        "complex": "circle",
        "cospan": "lam",
        "then": "mu",
        "triad": ["arcs_int", "arc01", "arc12", "circle"],
    },
    "suite": {"count": 4, "max_feet": 2, "max_bulk": 3, "max_vertices": 6},
    "oracle": {"max_feet": 1, "max_bulk": 1, "samples": 40},
}


def write_doc(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.fixture
def doc_path(tmp_path):
    return write_doc(tmp_path, BASE_DOC)


@pytest.fixture
def doc(doc_path):
    return cli.load(doc_path)


def variant(tmp_path, **overrides):
    d = {**BASE_DOC, **overrides}
    return cli.load(write_doc(tmp_path, d, "variant.json"))


class TestLoading:
    def test_minimal_document(self, tmp_path):
        d = cli.load(write_doc(tmp_path, {"version": "1", "field": {"char": 5}}))
        assert d.field.characteristic == 5

    def test_named_objects_materialize(self, doc):
        assert doc.cospans["c"].bulk.dim == 2
        assert doc.complexes["circle"].dim == 1
        assert doc.maps["incl"].dst == doc.complexes["circle"]
        assert doc.space_cospans["lam"].middle == doc.complexes["circle"]

    def test_round_trip_is_value_faithful(self, tmp_path, doc):
        data = cli.document_to_data(doc)
        doc2 = cli.load(write_doc(tmp_path, data, "round.json"))
        assert doc2.cospans["c"] == doc.cospans["c"]
        assert doc2.complexes["circle"] == doc.complexes["circle"]
        assert doc2.maps["incl"] == doc.maps["incl"]
        assert cli.document_to_data(doc2) == data

    def test_zero_dim_matrix_survives_round_trip(self, tmp_path):
        d = variant(
            tmp_path,
            matrices={"z": {"rows": 0, "cols": 2, "entries": []}},
        )
        data = cli.document_to_data(d)
        assert data["matrices"]["z"] == {"rows": 0, "cols": 2, "entries": []}
        d2 = cli.load(write_doc(tmp_path, data, "round0.json"))
        assert d2.matrices["z"].cols == 2


class TestValidation:
    def bad(self, tmp_path, match, **overrides):
        with pytest.raises(cli.ValidationError, match=match):
            variant(tmp_path, **overrides)

    def test_version_checked(self, tmp_path):
        self.bad(tmp_path, "version", version="7")

    def test_rational_must_be_lowest_terms(self, tmp_path):
        self.bad(tmp_path, "lowest terms", matrices={"m": [["2/4"]]})

    def test_gf_entry_out_of_range(self, tmp_path):
        d = {**BASE_DOC, "field": {"char": 3}, "linmaps": {}, "cospans": {},
             "inputs": {}, "matrices": {"m": [[3]]}}
        with pytest.raises(cli.ValidationError, match="outside"):
            cli.load(write_doc(tmp_path, d, "gf.json"))

    def test_bool_entries_rejected(self, tmp_path):
        self.bad(tmp_path, "scalar", matrices={"m": [[True]]})

    def test_ragged_matrix_rejected(self, tmp_path):
        self.bad(tmp_path, "ragged", matrices={"m": [[1, 0], [1]]})

    def test_unknown_reference(self, tmp_path):
        self.bad(
            tmp_path,
            "unknown",
            cospans={"c": {"f0": "f0", "f1": "missing"}},
        )

    def test_invalid_simplicial_map(self, tmp_path):
        self.bad(
            tmp_path,
            "maps.bad",
            maps={"bad": {"src": "s0", "dst": "circle", "vertices": [1, 2]}},
        )

    def test_parse_error_carries_position(self, tmp_path):
        p = tmp_path / "trunc.json"
        p.write_text('{"field": {"char": 0}')
        with pytest.raises(cli.ParseError, match="line"):
            cli.load(str(p))

    def test_missing_file_is_parse_error(self):
        with pytest.raises(cli.ParseError):
            cli.load("/nonexistent/doc.json")


class TestCommands:
    def test_value_commands(self, doc):
        for cmd in ("canon", "equiv", "leq", "compose", "tensor", "transpose", "dagger"):
            rep = cli.run(cmd, doc, {"q": None, "d": None, "seed": None})
            assert rep["outcome"] == "value", (cmd, rep)
            assert rep["command"] == cmd
            assert rep["timing_ms"] == 0

    def test_equiv_worked_pair(self, doc):
        rep = cli.run("equiv", doc, {})
        assert rep["value"] == {"kind": "cospan", "equal": True}

    def test_homology_of_circle(self, doc):
        rep = cli.run("homology", doc, {"q": 1})
        assert rep["value"]["dim"] == 1
        assert cli.run("homology", doc, {"q": 0})["value"]["dim"] == 0

    def test_mv_check_triad(self, doc):
        for q in (0, 1, 2):
            rep = cli.run("mv-check", doc, {"q": q})
            assert rep["outcome"] == "pass", (q, rep)

    def test_extensions(self, doc):
        rep = cli.run("extend-cospan", doc, {"q": 0})
        assert rep["outcome"] == "value"
        assert rep["value"]["feet"] == [1, 0]
        rep = cli.run("extend-span", doc, {"q": 1})
        assert rep["outcome"] == "value"
        assert set(rep["value"]) == {"feet", "class"}

    def test_extend_span_degree_guard(self, doc):
        from abcosp.brown import DegreeTooLow

        with pytest.raises(DegreeTooLow):
            cli.run("extend-span", doc, {"q": 0})

    def test_verify_reports(self, doc):
        rep = cli.run("verify", doc, {"q": 1})
        assert rep["outcome"] == "pass"
        assert len(rep["value"]["reports"]) == 4

    def test_oracle_gf2(self, tmp_path):
        d = {**BASE_DOC, "field": {"char": 2}, "linmaps": {
            k: {**v, "matrix": [[abs(x) % 2 for x in row] for row in v["matrix"]]}
            for k, v in BASE_DOC["linmaps"].items()
        }}
        docg = cli.load(write_doc(tmp_path, d, "gf2.json"))
        rep = cli.run("oracle", docg, {"seed": 1})
        assert rep["outcome"] == "pass"
        assert rep["value"]["checked"] > 0

    def test_missing_degree_flag(self, doc):
        with pytest.raises(cli.ValidationError):
            cli.run("homology", doc, {"q": None})

    def test_unknown_command(self, doc):
        with pytest.raises(cli.UnknownCommand):
            cli.run("frobnicate", doc, {})


class TestDeterminism:
    def test_random_suite_fixed_seed(self, doc):
        r1 = cli.run("random-suite", doc, {"seed": 7})
        r2 = cli.run("random-suite", doc, {"seed": 7})
        assert cli.dumps_report(r1) == cli.dumps_report(r2)
        assert r1["outcome"] == "pass"
        assert sum(r1["value"]["checks"].values()) > 0
        assert r1["value"]["instances"] == 4

    def test_zero_count_is_vacuous_pass(self, tmp_path):
        d = variant(tmp_path, suite={"count": 0})
        rep = cli.run("random-suite", d, {"seed": 3})
        assert rep["outcome"] == "pass"
        assert rep["value"] == {"checks": {}, "instances": 0}

    def test_digest_tracks_input_bytes(self, tmp_path, doc):
        other = variant(tmp_path, suite={"count": 1})
        a = cli.run("canon", doc, {})
        b = cli.run("canon", other, {})
        assert a["inputs_digest"] != b["inputs_digest"]
        assert a["value"] == b["value"]

    def test_report_serialization_is_canonical(self, doc):
        text = cli.dumps_report(cli.run("canon", doc, {}))
        assert text.endswith("\n")
        assert text == json.dumps(
            json.loads(text), sort_keys=True, separators=(",", ":")
        ) + "\n"


class TestMain:
    def test_exit_zero_and_stable_stdout(self, doc_path, capsys):
        assert cli.main(["equiv", "--in", doc_path]) == 0
        first = capsys.readouterr().out
        assert cli.main(["equiv", "--in", doc_path]) == 0
        assert capsys.readouterr().out == first
        rep = json.loads(first)
        assert rep["outcome"] == "value" and rep["value"]["equal"] is True

    def test_out_file_matches_stdout(self, doc_path, tmp_path, capsys):
        target = tmp_path / "report.json"
        assert cli.main(["canon", "--in", doc_path, "--out", str(target)]) == 0
        assert target.read_text() == capsys.readouterr().out

    def test_flags_surface_in_report(self, doc_path, capsys):
        assert cli.main(["mv-check", "--in", doc_path, "--q", "1", "--d", "inf"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["flags"] == {"d": "inf", "q": 1}

    def test_missing_required_flag_exits_two(self, doc_path, capsys):
        assert cli.main(["homology", "--in", doc_path]) == 2
        assert "--q" in capsys.readouterr().err

    def test_bad_document_exits_two(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{")
        assert cli.main(["canon", "--in", str(p)]) == 2
        assert "abcosp:" in capsys.readouterr().err

    def test_unknown_command_exits_two(self, doc_path, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate", "--in", doc_path])
        assert exc.value.code == 2

    def test_failing_check_exits_one(self, doc_path, capsys, monkeypatch):
        def fake_run(command, doc, flags):
            return {
                "version": cli.SCHEMA_VERSION,
                "command": command,
                "flags": {},
                "inputs_digest": "0" * 64,
                "outcome": "fail",
                "value": None,
                "counterexample": {"note": "forced"},
                "timing_ms": 0,
            }

        monkeypatch.setattr(cli, "run", fake_run)
        assert cli.main(["mv-check", "--in", doc_path, "--q", "0"]) == 1
        assert json.loads(capsys.readouterr().out)["outcome"] == "fail"

    def test_console_script(self, doc_path):
        out = subprocess.run(
            [sys.executable, "-m", "abcosp.cli", "homology", "--in", doc_path, "--q", "1"],
            capture_output=True,
            text=True,
        )
        assert out.returncode == 0, out.stderr
        assert json.loads(out.stdout)["value"]["dim"] == 1
