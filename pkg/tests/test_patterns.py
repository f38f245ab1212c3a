import math

import numpy as np
import pytest

from risfading.core import geometry as geo
from risfading.core.exceptions import ConfigError
from risfading.core.patterns import (
    AntennaSpec,
    PatternModel,
    combined_pattern,
    pattern_value,
)


def test_isotropic():
    iso = PatternModel.isotropic()
    assert pattern_value(iso, 0.0) == 1.0
    assert pattern_value(iso, 2.0, 1.0) == 1.0
    values = pattern_value(iso, np.linspace(0, math.pi, 5))
    assert values.shape == (5,)
    assert np.all(values == 1.0)


def test_cosine():
    cos = PatternModel.cosine_power(1.0)
    assert pattern_value(cos, 0.0) == 1.0
    assert pattern_value(cos, math.radians(60)) == pytest.approx(0.5)


def test_horn_pattern():
    horn = PatternModel.cosine_power(161.0)
    assert pattern_value(horn, 0.0) == 1.0
    assert pattern_value(horn, math.radians(10)) == pytest.approx(math.cos(math.radians(10)) ** 161)
    assert pattern_value(horn, math.radians(10)) == pytest.approx(0.0850, abs=1e-3)


def test_underflow_flushed_to_zero():
    horn = PatternModel.cosine_power(161.0)
    value = pattern_value(horn, math.radians(89.999))
    assert value == 0.0
    assert not math.isnan(value)


def test_clamp_behind_aperture():
    clamped = PatternModel.cosine_power(1.0)
    unclamped = PatternModel.cosine_power(1.0, clamp=False)
    theta = math.radians(120)
    assert pattern_value(clamped, theta) == 0.0
    assert pattern_value(unclamped, theta) == pytest.approx(0.5)


@pytest.mark.parametrize("q", [0.0, 0.5, 1.0, 2.0, 161.0])
def test_values_in_unit_interval(q):
    theta = np.linspace(0, math.pi, 181)
    for clamp in (True, False):
        values = pattern_value(PatternModel.cosine_power(q, clamp=clamp), theta)
        assert np.all((values >= 0) & (values <= 1))


def test_azimuth_ignored():
    cos = PatternModel.cosine_power(2.0)
    assert pattern_value(cos, 0.3, 0.0) == pattern_value(cos, 0.3, 2.5)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("isotropic", PatternModel.isotropic()),
        ("cos", PatternModel.cosine_power(1.0)),
        ("cos^161", PatternModel.cosine_power(161.0)),
        (" cos ^ 2.5 ", PatternModel.cosine_power(2.5)),
        ("cos^2 unclamped", PatternModel.cosine_power(2.0, clamp=False)),
    ],
)
def test_parse(text, expected):
    model = PatternModel.parse(text)
    assert model == expected
    assert PatternModel.parse(str(model)) == model


@pytest.mark.parametrize("text", ["sin", "cos^", "cos^-1", "gaussian", ""])
def test_parse_invalid(text):
    with pytest.raises(ConfigError):
        PatternModel.parse(text)


def test_invalid_exponent():
    with pytest.raises(ConfigError):
        PatternModel.cosine_power(-1.0)
    with pytest.raises(ConfigError):
        PatternModel.cosine_power(float("inf"))


@pytest.mark.parametrize("field", ["gain_ris_path", "gain_direct_path"])
def test_antenna_gain_positive(field):
    with pytest.raises(ConfigError) as exc:
        AntennaSpec(**{field: 0.0})
    assert exc.value.path == field


def test_combined_pattern_single_cell_and_table():
    cfg = geo.GeometryConfig(
        rows=8,
        cols=8,
        cell_dx=3.8e-3,
        cell_dy=3.8e-3,
        d1=1.0,
        d2=0.8,
        theta_t=math.radians(30),
        theta_r=math.radians(45),
        frequency=35e9,
    )
    horn = AntennaSpec(323.6, 128.8, PatternModel.cosine_power(161.0))
    cell_pattern = PatternModel.cosine_power(1.0)
    table = geo.cell_geometry(cfg)
    combined = combined_pattern(table, horn, horn, cell_pattern)
    assert combined.shape == (8, 8)

    cell = table[3, 5]
    expected = (
        math.cos(cell.theta_tx) ** 161
        * math.cos(cell.theta_cell_t)
        * math.cos(cell.theta_cell_r)
        * math.cos(cell.theta_rx) ** 161
    )
    assert combined_pattern(cell, horn, horn, cell_pattern) == pytest.approx(expected, rel=1e-12)
    assert combined[2, 4] == pytest.approx(expected, rel=1e-12)


def test_combined_pattern_isotropic_terminals():
    cfg = geo.GeometryConfig(
        rows=1,
        cols=1,
        cell_dx=1e-2,
        cell_dy=1e-2,
        d1=1.0,
        d2=1.0,
        theta_t=math.radians(45),
        theta_r=math.radians(45),
        frequency=35e9,
    )
    cell = geo.cell_geometry(cfg)[1, 1]
    value = combined_pattern(cell, AntennaSpec(), AntennaSpec(), PatternModel.cosine_power(1.0))
    assert value == pytest.approx(0.5)


def test_combined_pattern_symmetric_under_terminal_exchange():
    cfg = geo.GeometryConfig(
        rows=6,
        cols=10,
        cell_dx=5e-3,
        cell_dy=4e-3,
        d1=0.7,
        d2=0.7,
        theta_t=math.radians(35),
        theta_r=math.radians(35),
        frequency=35e9,
    )
    narrow = AntennaSpec(pattern=PatternModel.cosine_power(20.0))
    wide = AntennaSpec(pattern=PatternModel.cosine_power(3.0))
    table = geo.cell_geometry(cfg)
    cell_pattern = PatternModel.cosine_power(1.0)
    forward = combined_pattern(table, narrow, wide, cell_pattern)
    exchanged = combined_pattern(table, wide, narrow, cell_pattern)
    # exchanging the terminals mirrors the grid: (n, m) <-> (n, cols + 1 - m)
    assert forward == pytest.approx(exchanged[:, ::-1], rel=1e-12)


def test_integer_exponent():
    model = PatternModel("cos_power", q=2)
    assert isinstance(model.q, float)
    assert model == PatternModel.cosine_power(2.0)
    assert str(model) == "cos^2"
    assert str(PatternModel("cos_power", q=1)) == "cos"
    with pytest.raises(ConfigError):
        PatternModel("cos_power", q="2")
    with pytest.raises(ConfigError):
        PatternModel("cos_power", q=True)
