"""Tests for JSON report encoding."""

import json

import numpy as np
import pytest

from cbstools.core.models import GammaReport, Method
from cbstools.report import RunReport, encode, format_seed, input_digest


def test_encode_values(complex3):
    v = complex3.vector([1, 1j, 0])
    assert encode(v) == [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]
    assert encode(Method.EXACT_RAYS) == "exact_rays"
    assert encode({"n": np.int64(3), "ok": np.bool_(True), "x": np.float64(0.5)}) == {"n": 3, "ok": True, "x": 0.5}
    assert encode((1, 2)) == [1, 2]


def test_encode_model(plane):
    report = GammaReport(gamma=0.0, kappa=2.0 ** 0.5, method=Method.EXACT_SUBSPACE, certificate_v=plane.basis(0))
    data = encode(report)
    assert data["method"] == "exact_subspace"
    assert data["certificate_v"] == [1.0, 0.0]
    assert data["certificate_w"] is None


def test_input_digest():
    assert input_digest(b"") == "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"


def test_format_seed():
    assert format_seed(0xC5C5) == "0xc5c5"


class TestRunReport:
    def test_wall_time_omitted_by_default(self):
        data = json.loads(RunReport(command="verify").to_json())
        assert "wall_time" not in data
        assert list(data) == ["command", "arguments", "input", "input_digest", "seed", "results", "flags"]

    def test_wall_time_on_request(self):
        data = json.loads(RunReport(command="verify", wall_time=0.25).to_json())
        assert data["wall_time"] == 0.25

    def test_full_precision(self):
        text = RunReport(command="gamma", results={"gamma": 1.0 / 3.0}).to_json()
        assert json.loads(text)["results"]["gamma"] == 1.0 / 3.0

    def test_deterministic(self):
        make = lambda: RunReport(command="gamma", arguments={"b": 1, "a": 2}, results={"x": [1.5, 2j]})
        assert make().to_json() == make().to_json()

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            RunReport(command="gamma", results={"x": float("nan")}).to_json()
