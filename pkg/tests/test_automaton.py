import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from balanced_simplices.automaton import (
    Window, WindowTooSmall, WeightScheme, apply_stencil, format_stencil, parse_stencil,
    pascal_weights, step, step_periodic,
)


def naive_step_1d(w, row, m):
    # w lists weights at offsets -r..r; output cell i reads row[i - r .. i + r]
    r = (len(w) - 1) // 2
    return [sum(w[j] * row[i + j] for j in range(2 * r + 1)) % m for i in range(len(row) - 2 * r)]


@given(st.integers(2, 50), st.lists(st.integers(0, 100), min_size=3, max_size=3),
       st.lists(st.integers(0, 100), min_size=5, max_size=30))
def test_apply_stencil_matches_naive_loop(m, w, row):
    W = parse_stencil(",".join(map(str, w)), m)
    a = np.array(row, dtype=np.int64) % m
    assert apply_stencil(W, a).tolist() == naive_step_1d([x % m for x in w], a.tolist(), m)


def test_sigmas():
    W = parse_stencil("2,1,1", 5)
    assert W.sigma == 4
    assert W.sigmas == (-1 % 5,)
    P3 = pascal_weights(3, 5)
    assert P3.sigma == 4
    assert P3.sigmas == (4, 4, 4)


def test_pascal_two_display():
    assert pascal_weights(2, 7).display_matrix() == [[0, 0, 0], [1, 1, 0], [0, 1, 0]]


def test_stencil_grammar_round_trip():
    W = parse_stencil("q=2;r=1;w=0,1,0,1,1,0,0,0,0", 7)
    assert W.q == 2 and W.radius == 1
    assert parse_stencil(format_stencil(W), 7) == W
    assert parse_stencil("pascal:2", 7) == pascal_weights(2, 7)
    with pytest.raises(ValueError):
        parse_stencil("1,1", 5)
    with pytest.raises(ValueError):
        parse_stencil("q=1;r=2;w=1,1,1", 5)


def test_pascal_rows_are_binomials():
    m = 7
    W = pascal_weights(1, m)
    a = np.zeros(41, dtype=np.int64)
    a[20] = 1
    win = Window(a, (-20,), m)
    for j in range(1, 11):
        win = step(W, win)
        for i in range(0, j + 1):
            assert win[i] == math.comb(j, i) % m
        assert win[-1] == 0


def test_window_too_small():
    W = pascal_weights(1, 3)
    with pytest.raises(WindowTooSmall):
        step(W, Window(np.zeros(2, dtype=np.int64), (0,), 3))


def test_step_periodic_is_translation_equivariant():
    W = parse_stencil("1,2,3", 11)
    rng = np.random.default_rng(1)
    a = rng.integers(0, 11, 17)
    assert np.array_equal(step_periodic(W, np.roll(a, 3)), np.roll(step_periodic(W, a), 3))
    # on a constant row every cell becomes sigma * c
    c = np.full(9, 4)
    assert (step_periodic(W, c) == 4 * W.sigma % 11).all()


def test_weights_reduced_mod_m():
    W = WeightScheme(np.array([7, -1, 12]), 5)
    assert W.flat() == [2, 4, 2]
