import json
import math
import os

import pytest

from pepcd.cli import main
from pepcd.domination import domination_bruteforce, PcdInstance
from pepcd.geometry import Point2, equilateral_triangle, write_points_csv
from pepcd.regions import CENTROID, ProximityParams


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def out_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


class TestPrCommand:
    def test_reference_value(self, capsys):
        data = out_json(capsys, "pr", "--r", "1.5")
        assert abs(data["p_r"] - 0.7413) < 1e-3

    def test_fraction_grammar(self, capsys):
        data = out_json(capsys, "pr", "--r", "3/2")
        assert abs(data["p_r"] - 0.7413) < 1e-3

    def test_r_one_rejected(self, capsys):
        code, out, err = run_cli(capsys, "pr", "--r", "1.0")
        assert code == 3
        msg = json.loads(err)
        assert msg["code"] == 3 and "r" in msg["error"]

    def test_tighter_tolerance_is_stable(self, capsys):
        a = out_json(capsys, "pr", "--r", "1.25")["p_r"]
        b = out_json(capsys, "pr", "--r", "1.25", "--tol", "1e-8")["p_r"]
        assert abs(a - b) < 1e-6


class TestLawCommand:
    def test_degenerate_one(self, capsys):
        data = out_json(capsys, "law", "--r", "2", "--M", "centroid")
        assert data["kind"] == "degenerate" and data["value"] == 1

    def test_vertex_bernoulli(self, capsys):
        data = out_json(capsys, "law", "--r", "1.25", "--M", "t2")
        assert data["kind"] == "two_plus_bernoulli"
        assert abs(data["q"] - 0.3486) < 1e-3

    def test_multi_lift(self, capsys):
        data = out_json(capsys, "law", "--r", "1.25", "--M", "centroid", "--Jm", "5")
        assert data["kind"] == "degenerate" and data["value"] == 15

    def test_degenerate_inner_point_classifies_exactly(self, capsys):
        # '3/2' stays rational, so the centroid matches the collapsed inner
        # triangle exactly and the nondegenerate law fires
        data = out_json(capsys, "law", "--r", "3/2", "--M", "centroid")
        assert data["kind"] == "two_plus_bernoulli"
        assert abs(data["q"] - 0.2587) < 1e-3
        assert abs(data["mean"] - 2.2587) < 1e-3
        data = out_json(capsys, "law", "--r", "1.5000001", "--M", "centroid")
        assert data["kind"] == "degenerate" and data["value"] == 1

    def test_t_vertex_with_empty_inner_triangle(self, capsys):
        code, _, err = run_cli(capsys, "law", "--r", "2", "--M", "t1")
        assert code == 2
        assert json.loads(err)["code"] == 2


class TestGammaCommand:
    def test_single_point(self, capsys, tmp_path):
        path = str(tmp_path / "one.csv")
        write_points_csv([Point2(0.5, 0.3)], path)
        data = out_json(capsys, "gamma", "--points", path, "--r", "1.5")
        assert data == {"arcs": 0, "gamma": 1, "n": 1, "witness": [0]}

    def test_three_corner_points_gamma3_at_r1(self, capsys, tmp_path):
        te = equilateral_triangle()
        pts = [
            Point2(0.05, 0.02),
            Point2(0.95, 0.02),
            Point2(0.5, 0.82),
        ]
        # cross-check the crafted file with the exhaustive oracle
        oracle = domination_bruteforce(PcdInstance(te, ProximityParams(1.0, CENTROID), pts))
        assert oracle.gamma == 3
        path = str(tmp_path / "three.csv")
        write_points_csv(pts, path)
        data = out_json(capsys, "gamma", "--points", path, "--r", "1")
        assert data["gamma"] == 3
        data = out_json(capsys, "gamma", "--points", path, "--r", "inf")
        assert data["gamma"] == 1

    def test_custom_triangle(self, capsys, tmp_path):
        path = str(tmp_path / "pts.csv")
        write_points_csv([Point2(0.5, 0.5), Point2(1.5, 0.5)], path)
        data = out_json(
            capsys, "gamma", "--points", path, "--triangle", "0,0,3,0,0,3", "--r", "2"
        )
        assert data["n"] == 2

    def test_missing_file_is_io_error(self, capsys):
        code, _, err = run_cli(capsys, "gamma", "--points", "/nonexistent.csv", "--r", "2")
        assert code == 4
        assert json.loads(err)["code"] == 4


class TestMultiCommand:
    def test_three_anchors_equals_gamma(self, capsys, tmp_path):
        anchors = [Point2(0, 0), Point2(1, 0), Point2(0.5, 0.9)]
        apath = str(tmp_path / "anchors.csv")
        write_points_csv(anchors, apath)
        pts = [Point2(0.5, 0.3), Point2(0.4, 0.2), Point2(0.6, 0.4)]
        ppath = str(tmp_path / "data.csv")
        write_points_csv(pts, ppath)
        multi = out_json(capsys, "multi", "--anchors", apath, "--points", ppath, "--r", "1.5")
        tri_arg = "0,0,1,0,0.5,0.9"
        single = out_json(
            capsys, "gamma", "--points", ppath, "--triangle", tri_arg, "--r", "1.5"
        )
        assert multi["J"] == 1
        assert multi["total_gamma"] == single["gamma"]

    def test_all_points_outside_hull(self, capsys, tmp_path):
        apath = str(tmp_path / "anchors.csv")
        write_points_csv([Point2(0, 0), Point2(1, 0), Point2(0.5, 0.9)], apath)
        ppath = str(tmp_path / "data.csv")
        write_points_csv([Point2(10, 10), Point2(-5, 2)], ppath)
        data = out_json(capsys, "multi", "--anchors", apath, "--points", ppath, "--r", "1.5")
        assert data["total_gamma"] == 0 and data["discarded"] == 2

    def test_seeded_consistency(self, capsys, tmp_path):
        import numpy as np

        rng = np.random.default_rng(77)
        apath = str(tmp_path / "anchors.csv")
        write_points_csv([Point2(*xy) for xy in rng.random((10, 2))], apath)
        ppath = str(tmp_path / "data.csv")
        write_points_csv([Point2(*xy) for xy in rng.random((200, 2))], ppath)
        data = out_json(capsys, "multi", "--anchors", apath, "--points", ppath, "--r", "3/2")
        assert data["kept"] + data["discarded"] == 200
        assert data["total_gamma"] == sum(
            c.get("gamma", 0) for c in data["per_cell"]
        )


class TestSimulateCommand:
    def test_repeat_invocation_identical(self, capsys):
        args = ("simulate", "--r", "2", "--M", "centroid", "--n", "10", "--replicates", "40", "--seed", "3")
        a = out_json(capsys, *args)
        b = out_json(capsys, *args)
        a.pop("wall_time_s")
        b.pop("wall_time_s")
        assert a == b

    def test_outputs_and_manifest(self, capsys, tmp_path):
        prefix = str(tmp_path / "run")
        data = out_json(
            capsys,
            "simulate", "--r", "3/2", "--M", "centroid", "--n", "5,10",
            "--replicates", "30", "--seed", "4", "--out", prefix,
        )
        assert data["tables"]["5"]
        for suffix in (".csv", ".json", ".manifest.json"):
            assert os.path.exists(prefix + suffix)
        manifest = json.load(open(prefix + ".manifest.json"))
        assert manifest["subcommand"] == "simulate"
        assert manifest["seed"] == 4
        assert set(manifest["outputs"]) == {prefix + ".csv", prefix + ".json"}

    def test_rerun_from_manifest_reproduces_outputs(self, capsys, tmp_path):
        prefix = str(tmp_path / "first")
        out_json(
            capsys,
            "simulate", "--r", "5/4", "--M", "t2", "--n", "8",
            "--replicates", "25", "--seed", "6", "--out", prefix,
        )
        prefix2 = str(tmp_path / "second")
        out_json(
            capsys,
            "simulate", "--config", prefix + ".manifest.json", "--out", prefix2,
        )
        assert open(prefix + ".csv").read() == open(prefix2 + ".csv").read()
        a = json.load(open(prefix + ".json"))
        b = json.load(open(prefix2 + ".json"))
        a.pop("wall_time_s")
        b.pop("wall_time_s")
        assert a == b

    def test_workers_do_not_change_bytes(self, capsys, tmp_path):
        outs = []
        for w, name in ((1, "w1"), (4, "w4"), (16, "w16")):
            prefix = str(tmp_path / name)
            out_json(
                capsys,
                "simulate", "--r", "3/2", "--M", "centroid", "--n", "25",
                "--replicates", "120", "--seed", "5", "--workers", str(w), "--out", prefix,
            )
            outs.append(open(prefix + ".csv").read())
        assert outs[0] == outs[1] == outs[2]

    def test_usage_error_no_partial_outputs(self, capsys, tmp_path):
        prefix = str(tmp_path / "bad")
        code, _, err = run_cli(
            capsys, "simulate", "--r", "0.5", "--n", "10", "--out", prefix
        )
        assert code == 3
        assert json.loads(err)["code"] == 3
        assert not any(os.path.exists(prefix + s) for s in (".csv", ".json", ".manifest.json"))

    def test_missing_required_flags(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--M", "centroid")
        assert code == 2
        assert "error" in json.loads(err)

    def test_d3_simulation(self, capsys):
        data = out_json(
            capsys,
            "simulate", "--r", "4/3", "--d", "3", "--n", "10", "--replicates", "30", "--seed", "8",
        )
        assert sum(data["tables"]["10"].values()) == 30


class TestMiscCommands:
    def test_tr_vertices(self, capsys):
        data = out_json(capsys, "tr", "--r", "5/4")
        assert data["t1"] == pytest.approx([0.3, math.sqrt(3) / 10])
        assert data["empty"] is False
        data = out_json(capsys, "tr", "--r", "2")
        assert data["empty"] is True and "t1" not in data

    def test_version(self, capsys):
        data = out_json(capsys, "version")
        assert data["version"]

    def test_unknown_command_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "frobnicate")
        assert code == 2
        assert json.loads(err)["code"] == 2
