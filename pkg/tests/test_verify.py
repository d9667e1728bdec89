import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from balanced_simplices import verify as V
from balanced_simplices.arith import ArithSimplex, PreconditionViolated, as_multiset
from balanced_simplices.automaton import parse_stencil, pascal_weights
from balanced_simplices.orbit import ArithmeticSeed
from balanced_simplices.verify import TheoremId, Verdict


def test_ids_and_aliases():
    assert TheoremId.parse("thm2") is TheoremId.ARITH_BALANCED
    assert TheoremId.parse("arith-balanced") is TheoremId.ARITH_BALANCED
    assert TheoremId.parse("CHAP2") is TheoremId.STEINHAUS_INTERLACE
    assert set(V.ALIASES.values()) <= set(TheoremId)
    assert set(V.registry()) == set(TheoremId)
    with pytest.raises(ValueError):
        TheoremId.parse("thm99")


def test_verdict_merge_is_order_insensitive():
    a, b = Verdict(TheoremId.MAIN_ORBIT), Verdict(TheoremId.MAIN_ORBIT)
    a.record({"s": 2}, False, "x")
    a.record({"s": 1}, True)
    b.record({"s": 1}, False, "y")
    ab, ba = a.merge(b), b.merge(a)
    assert ab.failures == ba.failures
    assert ab.instances == 3 and not ab.passed
    with pytest.raises(ValueError):
        a.merge(Verdict(TheoremId.TETRA_MOD3))
    empty = Verdict(TheoremId.MAIN_ORBIT, inconclusive=True)
    assert not empty.passed


def test_congruent_sizes():
    assert V.congruent_sizes(20, range(2), 2) == [19, 20]
    assert V.congruent_sizes(10, (0, 2), 4) == [8, 10, 18, 20]
    assert V.congruent_sizes(3, range(3), 4) == [1, 2, 3, 4]


def test_arith_balanced_small():
    v = V.verify_arith_balanced(5, 2)
    assert v.passed and v.instances > 0
    assert V.verify_arith_balanced(7, 3, exhaustive=False, samples=50, rng_seed=3).passed
    with pytest.raises(PreconditionViolated):
        V.verify_arith_balanced(6, 3)


def brute_triangle_structure(m, s_max):
    """Balanced arithmetic triangles by plain enumeration."""
    out = []
    for d1, d2 in itertools.product(range(m), repeat=2):
        for s in range(1, s_max + 1):
            vals = [(i * d1 + j * d2) % m for i in range(s) for j in range(s - i)]
            if len({vals.count(x) for x in range(m)}) == 1:
                out.append((d1, d2, s))
    return out


def test_triangle_necessity_against_enumeration():
    for m in (4, 5, 6):
        found = brute_triangle_structure(m, 2 * m)
        v = V.verify_triangle_necessary([m])
        assert v.passed and v.instances == len(found)
        for d1, d2, _ in found:
            assert all(math.gcd(x, m) == 1 for x in (d1, d2, d2 - d1))


def test_tetra_sweeps_small():
    assert V.verify_tetra_necessary([4, 5]).passed
    assert V.verify_tetra_mod3([3]).passed
    with pytest.raises(PreconditionViolated):
        V.verify_tetra_mod3([4])


def test_tetra_structure():
    assert V.even_tetra_pair((2, 1, 3), 10) == ("d1", "d3-d2")
    assert V.even_tetra_pair((1, 1, 3), 10) is None
    assert V.tetra_structure_ok((1, 2, 3), 5)
    assert not V.tetra_structure_ok((1, 2, 3), 7 * 3)
    assert V.tetra_differences((1, 2, 4))["d1-d3"] == -3


def test_tetra_even_instance():
    v = V.verify_tetra_even(10, 0, 2, 1, 3)
    assert v.passed and v.instances == 6
    with pytest.raises(PreconditionViolated):
        V.verify_tetra_even(12, 0, 2, 1, 3)
    with pytest.raises(PreconditionViolated):
        V.verify_tetra_even(10, 0, 1, 1, 3)


@given(st.sampled_from([(2, 5), (3, 5), (2, 7), (4, 3)]), st.integers(0, 20), st.data())
def test_periodicity_under_scaled_differences(mm, a, data):
    m1, m2 = mm
    n = data.draw(st.integers(1, 2))
    d = tuple(data.draw(st.integers(1, m2 - 1)) for _ in range(n))
    full = (0,) + d
    if not all(math.gcd(full[j] - full[i], m2) == 1 for i, j in itertools.combinations(range(n + 1), 2)):
        return
    lam = data.draw(st.integers(1, 3))
    s = lam * m2 - data.draw(st.integers(0, n - 1))
    assert V.periodicity_check(m1, m2, a, d, s)


def test_main_orbit_small():
    W = pascal_weights(1, 5)
    v = V.verify_main_orbit(W, ArithmeticSeed(0, (1,), 5), (1, -1), apexes=20)
    assert v.passed and v.instances == 40
    ex = V.verify_main_orbit(W, ArithmeticSeed(2, (3,), 5), (1, 1), exhaustive=True, space=(-3, 3),
                       times=(0, 5))
    assert ex.passed and ex.instances == 2 * 7 * 6
    with pytest.raises(PreconditionViolated):
        V.verify_main_orbit(W, ArithmeticSeed(0, (0,), 5), (1, 1))


def test_main_orbit_fails_off_the_size_class():
    # a size outside s = 0, -1 mod 20 is not guaranteed; the sweep must report it
    W = pascal_weights(1, 5)
    v = Verdict(TheoremId.MAIN_ORBIT)
    V.check_orbit_simplices(v, W, ArithmeticSeed(0, (1,), 5), (1, 1), [7], 10, 0)
    assert v.failures


def test_hypothesis_report():
    W = parse_stencil("2,1,1", 5)
    rep = V.orbit_hypotheses(W, (1,), (1, 1))
    assert not rep.ok
    assert any("sigma" in f or "invertible" in f for f in rep.failed())


def test_orbit_tetra_even():
    W = pascal_weights(2, 10)
    v = V.verify_orbit_tetra_even(W, ArithmeticSeed(0, (1, 2), 10), (1, 1, 1), apexes=3)
    assert v.passed
    with pytest.raises(PreconditionViolated):
        V.verify_orbit_tetra_even(pascal_weights(2, 20), ArithmeticSeed(0, (1, 2), 20), (1, 1, 1))
    with pytest.raises(PreconditionViolated):
        V.verify_orbit_tetra_even(pascal_weights(2, 5), ArithmeticSeed(0, (1, 2), 5), (1, 1, 1))


def test_antisymmetric_triangles():
    W = parse_stencil("0,1,1", 5)
    v = V.verify_antisym(W, ArithmeticSeed(0, (1,), 5), (1, 1), min_instances=5)
    assert v.passed and v.instances >= 5
    with pytest.raises(PreconditionViolated):
        V.verify_antisym(W, ArithmeticSeed(0, (1,), 5), (1, -1))
    none = V.verify_antisym(W, ArithmeticSeed(0, (1,), 5), (1, 1), space=(0, 0), times=(0, 0),
                            min_instances=5)
    assert none.inconclusive and not none.passed


def test_antisymmetry_constraints():
    W = parse_stencil("0,1,1", 7)
    rep = V.antisym_constraints(W, (1,), (1, 1), 0, 1)
    assert rep["satisfied"] and rep["sigma_relation"]
    assert rep["stencil_form"] == [0, 1, 1]
    zero = V.antisym_constraints(pascal_weights(2, 7), (0, 0), (1, 1, 1), 1, 2)
    assert zero["satisfied"]
    bad = V.antisym_constraints(pascal_weights(2, 7), (1, 2), (1, 1, 1), 1, 2)
    assert not bad["satisfied"]
    v = V.verify_antisym_constraints(W, ArithmeticSeed(0, (1,), 7), (1, 1), 0, 1, range(1, 8))
    assert v.passed


def test_sigma_necessity():
    W = parse_stencil("2,2,0", 4)
    v = V.verify_sigma_necessity(W, ArithmeticSeed(0, (1,), 4))
    assert v.passed and "sizes 7" in v.notes[0]
    with pytest.raises(PreconditionViolated):
        V.verify_sigma_necessity(pascal_weights(1, 5), ArithmeticSeed(0, (1,), 5))


@given(st.integers(0, 12), st.lists(st.integers(0, 6), min_size=1, max_size=3))
def test_multinomial_oracle(j, i):
    # Vandermonde-style recursion C(j; i) = sum over which axis the last step took
    if j == 0:
        want = int(all(x == 0 for x in i))
    else:
        want = V.multinomial(j - 1, i) + sum(
            V.multinomial(j - 1, i[:k] + [i[k] - 1] + i[k + 1:]) for k in range(len(i)))
    assert V.multinomial(j, i) == want


def test_pascal_multinomial():
    assert V.verify_pascal_multinomial(1, 2, 16).passed
    assert V.verify_pascal_multinomial(2, 7, 10).passed


def test_pascal_seed_constructions():
    assert V.pascal_seed_d(4, (1, 1, 1, 1)) == (1, 2, 3)
    assert V.pascal_seed_d(5, (1, -1, 1, -1, 1)) == (2, 1, 3, 4)
    assert V.pascal_seed_d(3, (1, 1, -1)) == (1, 5)
    assert V.pascal_even_d((1, -1, 1)) == (1, 2)
    assert V.pascal_even_d((-1, 1, 1)) == (2, 1)
    assert V.pascal_even_d((1, 1, -1)) == (4, 5)


@pytest.mark.parametrize("eps", list(itertools.product((1, -1), repeat=3)))
def test_pascal_seeds_all_tetra_orientations(eps):
    assert V.verify_pascal_seeds(3, 7, eps, count=2, apexes=2).passed
    even = 14 if V.pascal_even_d(eps) == (4, 5) else 10
    assert V.verify_pascal_seeds(3, even, eps, apexes=2).passed


def test_pascal_seeds_out_of_scope():
    with pytest.raises(PreconditionViolated):
        V.verify_pascal_seeds(4, 5, (1, 1, 1, 1))
    with pytest.raises(PreconditionViolated):
        V.verify_pascal_seeds(3, 5, (1, 1, -1))
    with pytest.raises(PreconditionViolated):
        V.verify_pascal_seeds(3, 4, (1, 1, 1))
    with pytest.raises(PreconditionViolated):
        V.verify_pascal_seeds(3, 10, (1, 1, -1))
    assert V.verify_pascal_seeds(4, 11, (1, 1, 1, 1), count=1, apexes=1).passed
