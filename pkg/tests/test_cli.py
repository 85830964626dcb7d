"""Tests for documents, SVG output, and the command-line front end."""

import io
import json
import math

import numpy as np
import pytest

import splitpack as sp
from splitpack import (
    PHI_SQUARE,
    CircleSet,
    InstanceDocument,
    PackRequest,
    PackingDocument,
    Square,
    Triangle,
    pack,
    render_packing_svg,
    verify,
)
from splitpack.cli import main
from splitpack.documents import container_from_dict, container_to_dict

SQRT2 = math.sqrt(2.0)


def run_cli(argv, capsys, stdin: str | None = None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_instance(tmp_path, name, doc: InstanceDocument) -> str:
    path = tmp_path / name
    path.write_text(doc.to_json())
    return str(path)


class TestDocuments:
    def test_instance_roundtrip(self):
        doc = InstanceDocument(Square(1.5), [0.1, 0.2, 0.30000000000000004], min_size=0.05)
        again = InstanceDocument.from_dict(json.loads(doc.to_json()))
        assert again == doc  # bit-exact float round trip

    def test_radius_entries(self):
        data = {
            "container": {"type": "square", "side": 1.0},
            "circles": [{"radius": 0.25}, {"area": 0.1}],
        }
        doc = InstanceDocument.from_dict(data)
        assert doc.areas[0] == pytest.approx(math.pi * 0.0625, rel=1e-15)
        assert doc.areas[1] == 0.1

    def test_bad_circle_entries(self):
        base = {"container": {"type": "square", "side": 1.0}}
        for circles in ([{"area": 1.0, "radius": 1.0}], [{}], [{"area": -1.0}]):
            with pytest.raises(sp.DocumentError):
                InstanceDocument.from_dict({**base, "circles": circles})

    def test_container_variants(self):
        sq = container_from_dict({"type": "square", "side": 2.0})
        assert isinstance(sq, Square) and sq.side == 2.0
        t1 = container_from_dict({"type": "triangle", "sides": [3, 4, 5]})
        assert isinstance(t1, Triangle)
        t2 = container_from_dict(container_to_dict(t1))
        assert t1.vertices == t2.vertices
        with pytest.raises(sp.DocumentError):
            container_from_dict({"type": "pentagon"})

    def test_packing_document_roundtrip(self):
        areas = [PHI_SQUARE / 2.0, PHI_SQUARE / 2.0]
        root = pack(PackRequest(Square(1.0), CircleSet.from_areas(areas)))
        doc = PackingDocument.from_tree(root, Square(1.0))
        again = PackingDocument.from_dict(json.loads(doc.to_json()))
        assert again.to_dict() == doc.to_dict()
        assert len(doc.placements) == 2
        assert [p["input_index"] for p in doc.placements] == [0, 1]
        assert doc.density_used == pytest.approx(PHI_SQUARE, rel=1e-12)
        assert doc.critical_density == pytest.approx(PHI_SQUARE, rel=1e-12)

    def test_reconstructed_tree_verifies(self):
        rng = np.random.default_rng(11)
        w = rng.random(40)
        areas = list(w * (PHI_SQUARE * 0.9 / w.sum()))
        root = pack(PackRequest(Square(1.0), CircleSet.from_areas(areas)))
        doc = PackingDocument.from_dict(
            json.loads(PackingDocument.from_tree(root, Square(1.0)).to_json())
        )
        rebuilt = doc.to_tree()
        report = verify(rebuilt)
        assert report.passed, report.summary()


class TestSvg:
    def test_element_counts(self):
        rng = np.random.default_rng(13)
        w = rng.random(17)
        areas = list(w * (PHI_SQUARE * 0.8 / w.sum()))
        root = pack(PackRequest(Square(1.0), CircleSet.from_areas(areas)))
        doc = PackingDocument.from_tree(root, Square(1.0))
        svg = render_packing_svg(doc)
        assert svg.count("<circle ") == len(areas)
        assert svg.count("<path ") == len(doc.subcontainers)
        assert svg.count("<rect ") == 1

    def test_triangle_container_and_rounded_hats(self):
        t = Triangle.from_sides(3.0, 4.0, 5.0)
        areas = [0.9 * math.pi, 0.05 * math.pi]
        root = pack(PackRequest(t, CircleSet.from_areas(areas)))
        doc = PackingDocument.from_tree(root, t)
        svg = render_packing_svg(doc)
        assert svg.count("<circle ") == 2
        assert svg.count("<path ") == len(doc.subcontainers)
        assert svg.count("<polygon ") == 1
        assert "A " in svg  # rounded corners render as arcs

    def test_fully_rounded_hat_renders_as_circle_path(self):
        from splitpack.svg import _hat_path

        t = Triangle.from_sides(3.0, 4.0, 5.0)
        path = _hat_path(list(t.vertices), 1.0)  # rounding = inradius
        assert path.count("A ") == 2  # two half arcs make the incircle
        assert "L" not in path


class TestDecide:
    def test_yes(self, tmp_path, capsys):
        inst = InstanceDocument(Square(1.0), [0.539])
        path = write_instance(tmp_path, "inst.json", inst)
        code, out, _ = run_cli(["decide", "--circles", path], capsys)
        assert code == 0
        result = json.loads(out)
        assert result["packable"] == "yes"
        assert result["ratio"] == pytest.approx(0.539 / PHI_SQUARE, rel=1e-12)

    def test_unknown(self, tmp_path, capsys):
        inst = InstanceDocument(Square(1.0), [0.28, 0.28])
        path = write_instance(tmp_path, "inst.json", inst)
        code, out, _ = run_cli(["decide", "--circles", path], capsys)
        assert code == 0
        assert json.loads(out)["packable"] == "unknown"

    def test_empty_set_is_yes(self, capsys):
        code, out, _ = run_cli(["decide", "--container", "square:1"], capsys)
        assert code == 0
        assert json.loads(out)["packable"] == "yes"

    def test_acute_container_unsupported(self, tmp_path, capsys):
        inst = InstanceDocument(Triangle.from_sides(1.0, 1.0, 1.0), [0.1])
        path = write_instance(tmp_path, "inst.json", inst)
        code, _, err = run_cli(["decide", "--circles", path], capsys)
        assert code == 3
        assert "unsupported container" in err

    def test_min_size_constraint(self, tmp_path, capsys):
        inst = InstanceDocument(Square(1.0), [0.2, 0.01], min_size=0.05)
        path = write_instance(tmp_path, "inst.json", inst)
        code, out, _ = run_cli(["decide", "--circles", path], capsys)
        assert code == 0
        assert json.loads(out)["packable"] == "unknown"


class TestPack:
    def test_pack_verify_roundtrip(self, tmp_path, capsys, monkeypatch):
        code, out, _ = run_cli(
            ["gen", "-n", "20", "--ratio", "0.95", "--distribution", "uniform", "--seed", "3"],
            capsys,
        )
        assert code == 0
        inst_path = tmp_path / "inst.json"
        inst_path.write_text(out)
        code, packed, _ = run_cli(["pack", "--circles", str(inst_path)], capsys)
        assert code == 0
        code, report, _ = run_cli(["verify", "-"], capsys, stdin=packed, monkeypatch=monkeypatch)
        assert code == 0, report
        assert report.startswith("PASS")

    def test_over_capacity_diagnostic(self, tmp_path, capsys):
        inst = InstanceDocument(Square(1.0), [0.3, 0.3])
        path = write_instance(tmp_path, "inst.json", inst)
        code, _, err = run_cli(["pack", "--circles", path], capsys)
        assert code == 2
        assert "over-capacity" in err and "ratio" in err

    def test_svg_output(self, tmp_path, capsys):
        inst = InstanceDocument(Square(1.0), [PHI_SQUARE / 2.0, PHI_SQUARE / 2.0])
        path = write_instance(tmp_path, "inst.json", inst)
        out_path = tmp_path / "fig.svg"
        code, _, _ = run_cli(
            ["pack", "--circles", path, "--format", "svg", "--out", str(out_path)], capsys
        )
        assert code == 0
        svg = out_path.read_text()
        assert svg.count("<circle ") == 2

    def test_container_flag_with_bare_list(self, tmp_path, capsys):
        path = tmp_path / "circles.json"
        path.write_text(json.dumps([{"area": 0.1}, {"area": 0.2}]))
        code, out, _ = run_cli(
            ["pack", "--container", "square:1", "--circles", str(path)], capsys
        )
        assert code == 0
        doc = PackingDocument.from_dict(json.loads(out))
        assert len(doc.placements) == 2


class TestApprox:
    def test_single_circle_square(self, tmp_path, capsys):
        inst = InstanceDocument(Square(1.0), [math.pi])
        path = write_instance(tmp_path, "inst.json", inst)
        code, out, _ = run_cli(["approx", "--circles", path], capsys)
        assert code == 0
        result = json.loads(out)
        assert result["container"]["side"] == pytest.approx(1.0 + SQRT2, rel=1e-12)
        assert result["ratio"] == pytest.approx((3.0 + 2.0 * SQRT2) / math.pi, rel=1e-12)

    def test_triangle_family_ratio(self, tmp_path, capsys):
        inst = InstanceDocument(Triangle.from_sides(3.0, 4.0, 5.0), [0.5])
        path = write_instance(tmp_path, "inst.json", inst)
        code, out, _ = run_cli(["approx", "--circles", path], capsys)
        assert code == 0
        result = json.loads(out)
        assert result["ratio"] == pytest.approx(6.0 / math.pi, rel=1e-12)

    def test_packing_included_and_valid(self, tmp_path, capsys, monkeypatch):
        inst = InstanceDocument(Square(1.0), [0.4, 0.3, 0.2, 0.1])
        path = write_instance(tmp_path, "inst.json", inst)
        code, out, _ = run_cli(["approx", "--circles", path], capsys)
        assert code == 0
        packing = json.dumps(json.loads(out)["packing"])
        code, report, _ = run_cli(["verify"], capsys, stdin=packing, monkeypatch=monkeypatch)
        assert code == 0, report


class TestVerifyCommand:
    def test_overlap_detected(self, capsys, monkeypatch):
        doc = {
            "container": {"type": "square", "side": 1.0},
            "placements": [
                {"x": 0.4, "y": 0.5, "radius": 0.2, "input_index": 0},
                {"x": 0.6, "y": 0.5, "radius": 0.2, "input_index": 1},
            ],
            "subcontainers": [],
        }
        code, out, _ = run_cli(
            ["verify", "-"], capsys, stdin=json.dumps(doc), monkeypatch=monkeypatch
        )
        assert code == 1
        assert "circle-circle" in out

    def test_empty_placements_pass(self, capsys, monkeypatch):
        doc = {"container": {"type": "square", "side": 1.0}, "placements": [], "subcontainers": []}
        code, out, _ = run_cli(
            ["verify", "-"], capsys, stdin=json.dumps(doc), monkeypatch=monkeypatch
        )
        assert code == 0

    def test_malformed_document(self, capsys, monkeypatch):
        code, _, err = run_cli(["verify", "-"], capsys, stdin="{}", monkeypatch=monkeypatch)
        assert code == 2

    def test_invalid_json(self, capsys, monkeypatch):
        code, _, err = run_cli(["verify", "-"], capsys, stdin="{not json", monkeypatch=monkeypatch)
        assert code == 2


class TestGen:
    def test_twincircle_worst_case(self, capsys):
        code, out, _ = run_cli(["gen", "-n", "2", "--ratio", "1.0"], capsys)
        assert code == 0
        doc = InstanceDocument.from_dict(json.loads(out))
        assert doc.areas == [PHI_SQUARE / 2.0, PHI_SQUARE / 2.0]

    def test_equal_power_of_two(self, capsys):
        code, out, _ = run_cli(["gen", "-n", "16", "--ratio", "1.0"], capsys)
        doc = InstanceDocument.from_dict(json.loads(out))
        assert len(doc.areas) == 16
        assert all(a == doc.areas[0] for a in doc.areas)

    def test_seed_determinism(self, capsys):
        args = ["gen", "-n", "50", "--ratio", "0.8", "--distribution", "uniform", "--seed", "5"]
        _, out1, _ = run_cli(args, capsys)
        _, out2, _ = run_cli(args, capsys)
        assert out1 == out2
        _, out3, _ = run_cli(args[:-1] + ["6"], capsys)
        assert out1 != out3

    def test_generated_instances_are_feasible(self, capsys):
        for dist in ("equal", "geometric", "uniform"):
            for container in ("square:2", "triangle:3,4,5"):
                code, out, _ = run_cli(
                    ["gen", "-n", "40", "--ratio", "1.0", "--distribution", dist,
                     "--container", container], capsys,
                )
                assert code == 0
                doc = InstanceDocument.from_dict(json.loads(out))
                capacity = sp.packable_area(doc.container)
                assert math.fsum(doc.areas) <= capacity * (1.0 + 1e-12)
                assert min(doc.areas) > 0.0

    def test_bad_parameters(self, capsys):
        assert run_cli(["gen", "-n", "0"], capsys)[0] == 2
        assert run_cli(["gen", "-n", "5", "--ratio", "1.5"], capsys)[0] == 2
