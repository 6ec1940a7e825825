from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET

import jsonschema
import pytest

from ndrigid.analysis import analyze
from ndrigid.body import rotation
from ndrigid.catalogue import FIXTURES, fixture
from ndrigid.config import load_schema
from ndrigid.diagram import build_diagram
from ndrigid.reporting import decode_num, emit_report, num, render_svg

SVG = "{http://www.w3.org/2000/svg}"


@pytest.mark.parametrize("x,want", [
    (1 / 3, 0.333333333333),
    (math.inf, "inf"),
    (-math.inf, "-inf"),
    (2 + 0j, 2.0),
    (1 - 2j, {"re": 1.0, "im": -2.0}),
    (7, 7),
    (0.0, 0.0),
])
def test_num(x, want):
    assert num(x) == want


def test_decode_num_round_trip():
    for x in (1.5, math.inf, 1 - 2j):
        assert decode_num(num(x)) == x


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_report_validates_and_round_trips(name):
    a = analyze(FIXTURES[name].build())
    text = emit_report(a, seed=11)
    data = json.loads(text)
    jsonschema.validate(data, load_schema("report.schema.json"))
    assert data["verdict"]["status"] == a.verdict.status.value
    assert data["seed"] == 11 and data["tool"]["version"]
    if a.verdict.status.value == "Unstable":
        assert data["verdict"]["witnesses"]


def test_report_is_deterministic():
    a, b = analyze(fixture("5d-one-line")), analyze(fixture("5d-one-line"))
    assert emit_report(a, 3) == emit_report(b, 3)


def test_middle_axis_svg():
    svg = render_svg(build_diagram(fixture("3d-axis2")))
    root = ET.fromstring(svg)
    assert len(root.findall(f"{SVG}polyline")) == 1
    dashed = [e for e in root.findall(f"{SVG}line") if e.get("stroke-dasharray")]
    assert len(dashed) == 1
    hollow = [c for c in root.findall(f"{SVG}circle") if c.get("fill") == "white"]
    assert len(hollow) == 1


def test_empty_diagram_svg():
    root = ET.fromstring(render_svg(build_diagram(rotation([1, 2], [(1, 2, 1.0)]))))
    assert not root.findall(f"{SVG}circle")
    assert len(root.findall(f"{SVG}polyline")) == 1


def test_svg_is_byte_identical():
    assert render_svg(build_diagram(fixture("triple-point-u12"))) == render_svg(build_diagram(fixture("triple-point-u12")))


def test_svg_notes_for_complex_and_infinite():
    assert "complex pair" in render_svg(build_diagram(fixture("4d-nested-complex")))
    assert "meet at infinity" in render_svg(build_diagram(fixture("4d-adjacent-equal-m")))
