import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from balanced_simplices.automaton import pascal_weights
from balanced_simplices.cli import render_grid
from balanced_simplices.orbit import DeltaSeed, PeriodicSeed
from balanced_simplices.pgm import read_pgm, residue_pixels, write_pgm


@given(arrays(np.int64, st.tuples(st.integers(1, 8), st.integers(1, 8)), elements=st.integers(0, 255)))
def test_round_trip(tmp_path_factory, pixels):
    path = tmp_path_factory.mktemp("pgm") / "x.pgm"
    write_pgm(path, pixels)
    assert np.array_equal(read_pgm(path), pixels)


def test_header_and_comments(tmp_path):
    path = tmp_path / "c.pgm"
    path.write_bytes(b"P5\n# made by hand\n2 1\n255\n\x07\x09")
    assert read_pgm(path).tolist() == [[7, 9]]
    write_pgm(path, np.array([[1, 2, 3]]))
    assert path.read_bytes().startswith(b"P5\n3 1\n255\n")


def test_rejects_bad_input(tmp_path):
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "a.pgm", np.array([1, 2]))
    with pytest.raises(ValueError):
        write_pgm(tmp_path / "a.pgm", np.array([[300]]))
    (tmp_path / "b.pgm").write_bytes(b"P2\n1 1\n255\n0")
    with pytest.raises(ValueError):
        read_pgm(tmp_path / "b.pgm")


def test_residue_pixels():
    assert residue_pixels(np.array([0, 1, 4]), 5).tolist() == [0, 63, 252]
    assert residue_pixels(np.array([0, 0]), 1).tolist() == [0, 0]
    assert residue_pixels(np.array([1]), 2).tolist() == [255]


def test_sierpinski_render():
    grid = render_grid(pascal_weights(1, 2), DeltaSeed(1, 2), 128, 64, x0=0)
    assert grid.shape == (64, 128)
    for j in range(64):
        for i in range(0, 64):
            assert grid[j, i] == (1 if i <= j and (i & (j - i)) == 0 else 0)


def test_periodic_render_wraps():
    W = pascal_weights(1, 3)
    grid = render_grid(W, PeriodicSeed(np.array([1, 0, 0, 0]), 3), 4, 5, periodic=True)
    assert grid[1].tolist() == [1, 1, 0, 0]
    flat = render_grid(W, PeriodicSeed(np.array([0]), 3), 5, 5)
    assert (flat == 0).all()
