import math

import numpy as np
import pytest

from risfading.core import geometry as geo
from risfading.core.exceptions import CellIndexError, ConfigError, DegenerateGeometryError


def make_cfg(**kw):
    params = dict(
        rows=64,
        cols=64,
        cell_dx=3.8e-3,
        cell_dy=3.8e-3,
        d1=1.0,
        d2=1.0,
        theta_t=math.radians(45),
        theta_r=math.radians(45),
        frequency=35e9,
    )
    params.update(kw)
    return geo.GeometryConfig(**params)


def test_wavelength_and_fixed_azimuths():
    cfg = make_cfg(frequency=299792458.0)
    assert cfg.wavelength == 1.0
    assert cfg.phi_t == math.pi
    assert cfg.phi_r == 0.0
    assert cfg.shape == (64, 64)
    assert cfg.cell_count == 4096


@pytest.mark.parametrize(
    "field,value",
    [
        ("rows", 0),
        ("cols", -1),
        ("rows", 2.5),
        ("cell_dx", 0.0),
        ("cell_dy", -1e-3),
        ("d1", 0.0),
        ("d2", float("nan")),
        ("frequency", 0.0),
        ("theta_t", math.pi / 2),
        ("theta_r", -0.1),
    ],
)
def test_invalid_config(field, value):
    with pytest.raises(ConfigError) as exc:
        make_cfg(**{field: value})
    assert exc.value.path == field


def test_cell_center():
    cfg = make_cfg()
    c = geo.cell_center(geo.CellIndex(1, 1), cfg)
    assert c.x == pytest.approx(0.1197)
    assert c.y == pytest.approx(0.1197)
    assert c.z == 0.0

    c = geo.cell_center(geo.CellIndex(32, 32), cfg)
    assert c.x == pytest.approx(0.0019)
    assert c.y == pytest.approx(0.0019)

    assert geo.cell_center((1, 1), make_cfg(rows=1, cols=1)) == (0.0, 0.0, 0.0)


def test_cell_center_odd_grid():
    cfg = make_cfg(rows=3, cols=5, cell_dx=1.0, cell_dy=2.0)
    assert geo.cell_center((2, 3), cfg) == (0.0, 0.0, 0.0)
    assert geo.cell_center((1, 1), cfg) == (2.0, 2.0, 0.0)
    assert geo.cell_center((3, 5), cfg) == (-2.0, -2.0, 0.0)


@pytest.mark.parametrize("idx", [(0, 1), (1, 0), (65, 1), (1, 65)])
def test_cell_center_out_of_range(idx):
    with pytest.raises(CellIndexError):
        geo.cell_center(idx, make_cfg())


def test_terminal_positions():
    cfg = make_cfg()
    tx = geo.tx_position(cfg)
    rx = geo.rx_position(cfg)
    assert tx.x == pytest.approx(-0.70711, abs=1e-5)
    assert tx.y == 0.0
    assert tx.z == pytest.approx(0.70711, abs=1e-5)
    assert rx.x == pytest.approx(0.70711, abs=1e-5)
    assert rx.z == pytest.approx(0.70711, abs=1e-5)

    tx = geo.tx_position(make_cfg(theta_t=0.0, d1=3.0))
    assert tx == (0.0, 0.0, 3.0)


def test_los_distance():
    assert geo.los_distance(make_cfg()) == pytest.approx(math.sqrt(2))
    assert geo.los_distance(make_cfg(theta_t=0.0, theta_r=0.0, d1=2.0, d2=1.0)) == pytest.approx(1.0)

    cfg = make_cfg(theta_t=math.radians(30))
    tx = np.array([-math.sin(math.radians(30)), 0.0, math.cos(math.radians(30))])
    rx = np.array([math.sin(math.radians(45)), 0.0, math.cos(math.radians(45))])
    assert geo.los_distance(cfg) == pytest.approx(float(np.linalg.norm(rx - tx)), rel=1e-12)


def test_los_distance_degenerate():
    with pytest.raises(DegenerateGeometryError):
        geo.los_distance(make_cfg(theta_t=0.0, theta_r=0.0, d1=1.0, d2=1.0))


def test_with_distance():
    cfg = make_cfg()
    other = cfg.with_distance(7.5)
    assert other.d2 == 7.5
    assert other.d1 == cfg.d1
    assert cfg.d2 == 1.0


def test_cell_geometry_matches_scalar_computation():
    cfg = make_cfg(rows=4, cols=6, theta_t=math.radians(30), d2=2.5)
    table = geo.cell_geometry(cfg)
    assert len(table) == 24
    tx = geo.tx_position(cfg)
    rx = geo.rx_position(cfg)
    for n in range(1, 5):
        for m in range(1, 7):
            cell = table[n, m]
            c = geo.cell_center((n, m), cfg)
            assert cell.center == pytest.approx(c)
            r_t = math.dist(c, tx)
            r_r = math.dist(c, rx)
            assert cell.r_t == pytest.approx(r_t, rel=1e-14)
            assert cell.r_r == pytest.approx(r_r, rel=1e-14)
            assert math.cos(cell.theta_cell_t) == pytest.approx(tx.z / r_t)
            assert math.cos(cell.theta_cell_r) == pytest.approx(rx.z / r_r)
            assert cell.phi_cell_t == pytest.approx(math.atan2(tx.y - c.y, tx.x - c.x))
            assert cell.phi_cell_r == pytest.approx(math.atan2(rx.y - c.y, rx.x - c.x))


def test_cell_geometry_invariants():
    cfg = make_cfg(rows=16, cols=16, d2=3.0, theta_r=math.radians(10))
    table = geo.cell_geometry(cfg)
    assert np.all(table.r_t > 0) and np.all(table.r_r > 0)
    assert np.all(table.r_t >= cfg.d1 * math.cos(cfg.theta_t))
    assert np.all(table.r_r >= cfg.d2 * math.cos(cfg.theta_r))
    for name in ("theta_cell_t", "theta_cell_r", "theta_tx", "theta_rx"):
        values = getattr(table, name)
        assert np.all((values >= 0) & (values <= math.pi))


def test_cell_geometry_read_only():
    table = geo.cell_geometry(make_cfg(rows=2, cols=2))
    with pytest.raises(ValueError):
        table.r_t[0, 0] = 1.0


def test_antenna_angles_small_off_boresight():
    # a small RIS far away sits close to both antenna boresights
    cfg = make_cfg(rows=2, cols=2, d1=10.0, d2=10.0)
    table = geo.cell_geometry(cfg)
    assert np.all(table.theta_tx < 1e-3)
    assert np.all(table.theta_rx < 1e-3)


def test_antenna_angles_single_cell_on_boresight():
    table = geo.cell_geometry(make_cfg(rows=1, cols=1))
    assert table[1, 1].theta_tx == pytest.approx(0.0, abs=1e-7)
    assert table[1, 1].theta_rx == pytest.approx(0.0, abs=1e-7)


def test_cell_geometry_row_major_iteration():
    cfg = make_cfg(rows=2, cols=3, cell_dx=1.0, cell_dy=1.0)
    centers = [cell.center[:2] for cell in geo.cell_geometry(cfg)]
    assert centers == [(1.0, 0.5), (0.0, 0.5), (-1.0, 0.5), (1.0, -0.5), (0.0, -0.5), (-1.0, -0.5)]


def test_mirror_symmetry():
    table = geo.cell_geometry(make_cfg(rows=8, cols=12, d1=1.5, d2=1.5))
    assert table.r_t == pytest.approx(table.r_r[:, ::-1], rel=1e-12)
    assert table.theta_cell_t == pytest.approx(table.theta_cell_r[:, ::-1], abs=1e-12)
    assert table.theta_tx == pytest.approx(table.theta_rx[:, ::-1], abs=1e-12)


@pytest.mark.parametrize("shape", [(64, 64), (5, 7), (1, 3), (30, 30)])
def test_cell_centers_average_to_origin(shape):
    rows, cols = shape
    table = geo.cell_geometry(make_cfg(rows=rows, cols=cols))
    assert abs(float(np.mean(table.x))) < 1e-12
    assert abs(float(np.mean(table.y))) < 1e-12


def test_receiver_distances_grow_with_d2():
    cfg = make_cfg(rows=16, cols=16)
    r_r = np.stack([geo.cell_geometry(cfg.with_distance(d2)).r_r for d2 in np.geomspace(1.0, 100.0, 25)])
    assert np.all(np.diff(r_r, axis=0) > 0)


@pytest.mark.parametrize(
    "kw",
    [
        dict(),
        dict(rows=30, cols=30, d1=0.6, d2=3.0),
        dict(rows=5, cols=9, cell_dx=0.05, cell_dy=0.02, d1=0.3, d2=0.4, theta_t=0.0),
    ],
)
def test_cell_distances_bounded_by_half_diagonal(kw):
    cfg = make_cfg(**kw)
    table = geo.cell_geometry(cfg)
    half_diagonal = 0.5 * math.hypot(cfg.cols * cfg.cell_dx, cfg.rows * cfg.cell_dy)
    assert np.all(table.r_t <= cfg.d1 + half_diagonal)
    assert np.all(table.r_r <= cfg.d2 + half_diagonal)
    assert np.all(table.r_t >= cfg.d1 - half_diagonal)
    assert np.all(table.r_r >= cfg.d2 - half_diagonal)
