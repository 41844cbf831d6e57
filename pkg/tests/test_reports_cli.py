import json

import pytest

import hibilab.cli as cli
from hibilab.errors import ParseError
from hibilab.lattice import validate_planar_lattice
from hibilab.render import render_ascii, render_figure, render_svg
from hibilab.reports import (
    CorpusSpec,
    demo_staircase,
    full_grid,
    generate_corpus,
    parse_input,
    run_suite,
)


class TestParseInput:
    def test_points(self):
        lat = parse_input('{"points": [[0,0],[1,0],[0,1],[1,1]]}')
        assert lat.points == full_grid(1, 1).points

    def test_poset(self):
        doc = {
            "poset": {
                "elements": ["a", "b", "c", "x"],
                "relations": [["a", "b"], ["b", "c"]],
            }
        }
        lat = parse_input(json.dumps(doc))
        assert lat.points == full_grid(3, 1).points

    def test_malformed_json_has_position(self):
        with pytest.raises(ParseError) as err:
            parse_input("{not json")
        assert "position" in err.value.details

    def test_bad_points_schema(self):
        with pytest.raises(ParseError):
            parse_input('{"points": [[0, 0], [1]]}')

    def test_validation_errors_pass_through(self):
        from hibilab.errors import NotJoinClosed

        with pytest.raises(NotJoinClosed):
            parse_input('{"points": [[0,0],[1,0],[0,1]]}')


class TestCorpus:
    def test_deterministic(self):
        a = generate_corpus(CorpusSpec(seed=7, count=15))
        b = generate_corpus(CorpusSpec(seed=7, count=15))
        assert [(n, sorted(l.points)) for n, l in a] == [
            (n, sorted(l.points)) for n, l in b
        ]

    def test_all_validate(self):
        for name, lat in generate_corpus(CorpusSpec(seed=11, count=30, max_m=5, max_n=5)):
            revalidated = validate_planar_lattice(lat.points)
            assert revalidated.points == lat.points, name

    def test_named_members_present(self):
        names = {n for n, _ in generate_corpus(CorpusSpec(seed=0, count=10))}
        assert "staircase-5x4" in names
        assert "ell-3x3" in names

    def test_single_grid_family(self):
        got = generate_corpus(
            CorpusSpec(seed=0, count=1, max_m=2, max_n=2, families=("full-grid",))
        )
        assert got[0][1].points == full_grid(2, 2).points


class TestRender:
    def test_ascii_marks_generators_and_cells(self):
        doc = render_ascii(demo_staircase(), (3, 7))
        assert doc.count("*") == 14
        assert doc.count("#") == 5
        assert "window ranks 3..7" in doc

    def test_ascii_plain_lattice(self):
        doc = render_ascii(full_grid(1, 1))
        assert doc.count("o") == 4

    def test_svg_deterministic_and_marks_generators(self):
        a = render_svg(demo_staircase(), (3, 7))
        b = render_svg(demo_staircase(), (3, 7))
        assert a == b
        assert a.count('r="6"') == 14
        assert a.count("<rect") == 5 + 1  # cells plus background
        assert a.count("stroke-dasharray") == 2

    def test_render_figure_dispatch(self):
        assert render_figure(full_grid(1, 1), fmt="ascii").startswith("o")
        assert render_figure(full_grid(1, 1), fmt="svg").startswith("<svg")
        with pytest.raises(ValueError):
            render_figure(full_grid(1, 1), fmt="png")


class TestRunSuite:
    def test_grid_full_checks_clean(self):
        rep = run_suite(full_grid(2, 2), all_windows_flag=True, with_fiber=True, verify=True)
        assert rep.findings == []
        assert len(rep.stable["windows"]) == 10

    def test_staircase_report_contents(self):
        rep = run_suite(demo_staircase(), windows=[(3, 7)], with_fiber=True)
        rec = rep.stable["windows"][0]
        assert rec["generators"] == 14
        assert rec["cells"] == 5
        assert rec["dimension"] == 9
        assert rec["krull"] == 9
        assert rec["gb"]["quadratic"] and rec["gb"]["squarefree"]
        assert rec["fiber"]["generated"] and rec["fiber"]["gb_certified"]

    def test_byte_identical_stable_section(self):
        a = run_suite(full_grid(2, 2), all_windows_flag=True)
        b = run_suite(full_grid(2, 2), all_windows_flag=True)
        assert a.to_json(include_timings=False) == b.to_json(include_timings=False)
        assert a.stable["schema"] == 1

    def test_shape_route_covers_oversize_connected_window(self):
        rep = run_suite(demo_staircase(), windows=[(0, 9)])
        rec = rep.stable["windows"][0]
        assert rep.findings == []
        assert rec["verdict"]["basis"]["linear_resolution"].startswith("shape")

    def test_oversize_verification_skipped_not_failed(self):
        rep = run_suite(demo_staircase(), windows=[(0, 9)], verify=True)
        rec = rep.stable["windows"][0]
        assert rep.findings == []
        assert any("classify" in s for s in rec["skipped"])


def run_cli(capsys, argv, stdin_doc=None, monkeypatch=None):
    import io
    import sys

    if stdin_doc is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_doc))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


SQUARE = '{"points": [[0,0],[1,0],[0,1],[1,1]]}'


class TestCli:
    def test_validate(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, ["validate"], SQUARE, monkeypatch)
        assert code == 0
        doc = json.loads(out)
        assert doc["rank"] == 2 and doc["simple"]

    def test_generators(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, ["generators", "--window", "0,2"], SQUARE, monkeypatch
        )
        assert code == 0
        assert json.loads(out)[0]["count"] == 4

    def test_gb(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, ["gb", "--window", "0,2"], SQUARE, monkeypatch)
        doc = json.loads(out)[0]
        assert code == 0 and doc["quadratic"] and len(doc["basis"]) == 1

    def test_betti(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, ["betti", "--window", "0,2"], SQUARE, monkeypatch)
        doc = json.loads(out)[0]
        assert code == 0
        assert doc["betti"]["entries"] == [{"i": 0, "j": 2, "value": 1}]
        assert doc["krull"] == 3

    def test_classify_all_windows(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["classify", "--all-windows", "--expect-theorem"],
            SQUARE,
            monkeypatch,
        )
        assert code == 0
        assert len(json.loads(out)) == 3

    def test_classify_reproduces_window_list(self, capsys, monkeypatch):
        # linearly related verdicts over all windows = enumerated list plus
        # the degenerate (zero-ideal) windows
        grid = json.dumps({"points": sorted(map(list, full_grid(2, 2).points))})
        code, out, _ = run_cli(
            capsys, ["classify", "--all-windows"], grid, monkeypatch
        )
        assert code == 0
        verdicts = json.loads(out)
        related = {tuple(v["window"]) for v in verdicts if v["linearly_related"]}
        degenerate = {
            tuple(v["window"])
            for v in verdicts
            if v["basis"]["linearly_related"] == "degenerate"
        }
        listed = {(0, 2), (0, 3), (0, 4), (1, 4), (2, 4)}
        assert listed <= related
        assert related - listed <= degenerate

    def test_enumerate_windows(self, capsys, monkeypatch):
        grid = json.dumps(
            {"points": sorted(map(list, full_grid(2, 2).points))}
        )
        code, out, _ = run_cli(capsys, ["enumerate-windows"], grid, monkeypatch)
        assert code == 0
        assert json.loads(out)["windows"] == [[0, 2], [0, 3], [0, 4], [1, 4], [2, 4]]

    def test_corpus(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, ["corpus", "--count", "5"], None, monkeypatch)
        assert code == 0
        assert len(json.loads(out)) >= 5

    def test_render_svg_to_file(self, capsys, monkeypatch, tmp_path):
        target = tmp_path / "fig.svg"
        code, out, _ = run_cli(
            capsys,
            ["render", "--window", "0,2", "--format", "svg", "--out", str(target)],
            SQUARE,
            monkeypatch,
        )
        assert code == 0
        assert target.read_text().startswith("<svg")

    def test_parse_error_exit_code(self, capsys, monkeypatch):
        code, out, err = run_cli(capsys, ["validate"], "oops", monkeypatch)
        assert code == 2
        assert json.loads(err)["error"]["code"] == "parse-error"

    def test_invalid_window_exit_code(self, capsys, monkeypatch):
        code, _, err = run_cli(
            capsys, ["generators", "--window", "5,1"], SQUARE, monkeypatch
        )
        assert code == 2
        assert json.loads(err)["error"]["code"] == "invalid-window"

    def test_suite_ok(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys, ["suite", "--all-windows", "--expect-theorem"], SQUARE, monkeypatch
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["stable"]["findings"] == []

    def test_suite_detects_corrupted_classifier(self, capsys, monkeypatch):
        # harness self-test: a classifier forced to lie must flip the exit code
        import hibilab.classify as classify_mod

        def broken(poly):
            return True

        monkeypatch.setattr(classify_mod, "has_linear_resolution_shape", broken)
        grid = json.dumps({"points": sorted(map(list, full_grid(2, 2).points))})
        code, out, _ = run_cli(
            capsys,
            ["suite", "--window", "0,3", "--expect-theorem"],
            grid,
            monkeypatch,
        )
        assert code == 1
        doc = json.loads(out)
        assert any(
            f["check"] == "classifier-oracle-agreement" for f in doc["stable"]["findings"]
        )
