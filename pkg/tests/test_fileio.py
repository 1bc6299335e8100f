import math
import struct

import numpy as np
import pytest

from isingchi import (
    ChiGrid,
    FrustratedModel,
    Peak,
    build_table,
    chi_grid,
    dual_pair,
    lookup,
    make_modulus,
    verify_identities,
)
from isingchi.fileio import (
    ConfigError,
    format_float,
    frustrated_rows,
    read_config,
    write_chi_csv,
    write_corr_csv,
    write_frustrated_csv,
    write_peaks_csv,
    write_pgm,
    write_sequence,
    write_verification_csv,
)


@pytest.fixture(scope="module")
def small_table():
    return build_table(make_modulus(0.5), 2)


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, 0.4013239632465773, 1e-300, -math.pi):
        assert float(format_float(x)) == x


def test_corr_csv_layout(tmp_path, small_table):
    path = tmp_path / "corr.csv"
    write_corr_csv(path, small_table)
    lines = path.read_text().splitlines()
    assert lines[0] == "m,n,C,Cbar"
    coords = [tuple(map(int, ln.split(",")[:2])) for ln in lines[1:]]
    # octant only, ordered by distance off the diagonal, then along it
    assert coords == [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)]
    first = lines[1].split(",")
    assert float(first[2]) == lookup(small_table, 0, 0)
    assert float(first[3]) == lookup(small_table, 0, 0, "Cbar")
    row12 = lines[5].split(",")
    assert float(row12[2]) == lookup(small_table, 1, 2)


def test_frustrated_csv_layout(tmp_path):
    table = build_table(make_modulus(dual_pair(1.0).k), 2)
    model = FrustratedModel(S=1.0, version="b")
    rows = frustrated_rows(model, table, 2)
    assert len(rows) == 25
    path = tmp_path / "ff.csv"
    write_frustrated_csv(path, rows)
    lines = path.read_text().splitlines()
    assert lines[0] == "dx,dy,value,class"
    classes = {ln.split(",")[3] for ln in lines[1:]}
    assert classes == {"even-even", "odd-odd", "odd-even", "even-odd"}
    for ln in lines[1:]:
        dx, dy, value, cls = ln.split(",")
        if cls == "odd-odd":
            assert float(value) == 0.0


def test_chi_csv_row_major_qy_outer(tmp_path, table05_r30):
    grid = chi_grid(("uniform", table05_r30), 4, 3, 5)
    path = tmp_path / "chi.csv"
    write_chi_csv(path, grid)
    lines = path.read_text().splitlines()
    assert lines[0] == "qx,qy,chi"
    assert len(lines) == 1 + 4 * 3
    rows = [ln.split(",") for ln in lines[1:]]
    # qy constant within a block of nx rows, qx cycling
    assert [r[1] for r in rows[:4]] == [format_float(grid.qy[0])] * 4
    assert [r[0] for r in rows[:4]] == [format_float(q) for q in grid.qx]
    assert float(rows[4][1]) == float(grid.qy[1])
    k = 0
    for j in range(3):
        for i in range(4):
            assert float(rows[k][2]) == float(grid.values[i, j])
            k += 1


def _parse_pgm(data):
    magic, dims, maxval, rest = data.split(b"\n", 3)
    w, h = map(int, dims.split())
    return magic, w, h, int(maxval), rest


def test_pgm_encoding(tmp_path):
    vals = np.array([[0.0, 1.0], [0.25, 0.5], [1.0, 0.75]])
    grid = ChiGrid(nx=3, ny=2, qx=np.zeros(3), qy=np.zeros(2), values=vals,
                   window_radius=0, tail_bound=0.0, source="synthetic")
    path = tmp_path / "map.pgm"
    write_pgm(path, grid)
    magic, w, h, maxval, body = _parse_pgm(path.read_bytes())
    assert (magic, w, h, maxval) == (b"P5", 3, 2, 65535)
    assert len(body) == 2 * w * h
    samples = struct.unpack(">%dH" % (w * h), body)
    # row j scans qy[j], within it sample i is qx[i]
    expect = [round(65535 * v) for v in
              (0.0, 0.25, 1.0,   # j = 0 row: values[:, 0]
               1.0, 0.5, 0.75)]  # j = 1 row: values[:, 1]
    assert list(samples) == expect


def test_pgm_constant_grid_all_zeros(tmp_path):
    grid = ChiGrid(nx=2, ny=2, qx=np.zeros(2), qy=np.zeros(2),
                   values=np.full((2, 2), 3.7), window_radius=0,
                   tail_bound=0.0, source="synthetic")
    path = tmp_path / "flat.pgm"
    write_pgm(path, grid)
    _, w, h, _, body = _parse_pgm(path.read_bytes())
    assert body == b"\x00" * (2 * w * h)


def test_peaks_csv(tmp_path):
    peaks = [Peak(qx=0.0, qy=-math.pi, value=2.5, commensurate=True),
             Peak(qx=0.7, qy=0.1, value=1.0, commensurate=False)]
    path = tmp_path / "peaks.csv"
    write_peaks_csv(path, peaks)
    lines = path.read_text().splitlines()
    assert lines[0] == "qx,qy,value,commensurate"
    assert lines[1].endswith(",true")
    assert lines[2].endswith(",false")
    assert float(lines[1].split(",")[1]) == -math.pi


def test_verification_csv(tmp_path):
    rep = verify_identities(("uniform", 0.5), radius=2)
    path = tmp_path / "report.csv"
    write_verification_csv(path, rep)
    lines = path.read_text().splitlines()
    assert lines[0] == "identity,location,residual,tolerance,pass"
    for ln in lines[1:]:
        fields = ln.split(",")
        assert len(fields) == 5
        assert fields[4] in ("true", "false")
        assert float(fields[2]) <= float(fields[3])


def test_sequence_file_and_stdout(tmp_path, capsys):
    path = tmp_path / "seq.txt"
    write_sequence(path, [0, 1, 0, 1, 1])
    assert path.read_text() == "0\n1\n0\n1\n1\n"
    write_sequence(None, np.array([-1, 1, -1]))
    assert capsys.readouterr().out == "-1\n1\n-1\n"


def test_atomic_write_leaves_no_droppings(tmp_path, small_table):
    target = tmp_path / "out.csv"
    write_corr_csv(target, small_table)
    write_corr_csv(target, small_table)  # overwrite in place
    assert [p.name for p in tmp_path.iterdir()] == ["out.csv"]


def test_config_parsing(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# susceptibility run\n"
        "k = 0.5\n"
        "grid = 64x64   # square zone\n"
        "\n"
        "radius=30\n")
    assert read_config(path) == {"k": "0.5", "grid": "64x64", "radius": "30"}


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("k 0.5\n")
    with pytest.raises(ConfigError) as err:
        read_config(bad)
    assert "bad.cfg:1" in str(err.value)
    empty_key = tmp_path / "empty.cfg"
    empty_key.write_text(" = 3\n")
    with pytest.raises(ConfigError):
        read_config(empty_key)
