import random
from fractions import Fraction
from math import gcd

import pytest

from hasse.globalsearch import (
    abc_quality,
    coefficient_lattice,
    fermat_solutions,
    height_bound,
    lattice_points_in_box,
    pairs_on_line,
    thue_solutions,
)
from hasse.localsolve import FermatEquation, ThueEquation


def brute_thue(a, b, k, B):
    out = set()
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            if a * x**k + b * y**k == 1:
                out.add((x, y))
    return out


def test_height_bound_pinned():
    assert height_bound(4, 100, 1).B == 10
    assert height_bound(3, 50, 2).B == 100
    assert height_bound(6, 10**6, 1).B == 32
    assert height_bound(5, 1000, Fraction(3, 2)).B == 15  # 1.5 * 10
    hb = height_bound(4, 10, 4)
    assert hb.B >= 1 and hb.slack == 4


def test_height_bound_exact_at_boundaries():
    # ceil must not wobble from float error: 10^6 at k=5 gives exactly 100.
    assert height_bound(5, 10**6, 1).B == 100
    assert height_bound(5, 10**6 + 1, 1).B == 101


def test_thue_solutions_pinned():
    sols = thue_solutions(ThueEquation(1, 1, 3), 10)
    assert [s.point for s in sols] == [(0, 1), (1, 0)]
    sols = thue_solutions(ThueEquation(3, 4, 3), 10)
    assert [s.point for s in sols] == [(-1, 1)]
    assert thue_solutions(ThueEquation(2, 151, 3), 100) == []


def test_thue_solutions_match_brute_force():
    rng = random.Random(21)
    for _ in range(200):
        k = rng.choice((3, 4))
        a = rng.choice([v for v in range(-20, 21) if v])
        b = rng.choice([v for v in range(-20, 21) if v])
        B = rng.randint(0, 30)
        got = {s.point for s in thue_solutions(ThueEquation(a, b, k), B)}
        assert got == brute_thue(a, b, k, B), (a, b, k, B)


def test_pairs_on_line_pinned():
    assert pairs_on_line(1, 2, 3, 10) == [(-7, 1), (9, -1)]
    assert pairs_on_line(2, 2, 3, 10) == []
    line = pairs_on_line(1, 0, 3, 10)
    assert len(line) == 20 and all(a == 1 for a, _ in line)
    with pytest.raises(ValueError):
        pairs_on_line(0, 0, 3, 10)


def test_pairs_on_line_matches_brute_force():
    rng = random.Random(22)
    for _ in range(300):
        k = rng.choice((3, 4))
        x = rng.randint(-6, 6)
        y = rng.randint(-6, 6)
        if x == 0 and y == 0:
            continue
        H = rng.randint(1, 25)
        brute = {
            (a, b)
            for a in range(-H, H + 1)
            for b in range(-H, H + 1)
            if a and b and a * x**k + b * y**k == 1
        }
        assert set(pairs_on_line(x, y, k, H)) == brute, (x, y, k, H)


def test_coefficient_lattice_pinned():
    lat = coefficient_lattice(1, 1, 1, 3)
    assert lat.basis == ((1, -1, 0), (0, 1, -1))
    assert abs(lat.determinant - 3**0.5) < 1e-12
    lat = coefficient_lattice(1, 0, 0, 5)
    assert lat.basis == ((0, 1, 0), (0, 0, 1))
    assert lat.determinant == 1.0
    with pytest.raises(ValueError):
        coefficient_lattice(0, 0, 0, 3)
    with pytest.raises(ValueError):
        coefficient_lattice(2, 2, 4, 3)


def test_lattice_box_pinned():
    lat = coefficient_lattice(1, 1, 1, 6)
    pts = sorted(p for p in lattice_points_in_box(lat, 2) if all(p))
    assert pts == [
        (-2, 1, 1),
        (-1, -1, 2),
        (-1, 2, -1),
        (1, -2, 1),
        (1, 1, -2),
        (2, -1, -1),
    ]


def test_lattice_box_complete_against_brute_force():
    rng = random.Random(23)
    for _ in range(150):
        k = rng.choice((3, 4, 6))
        while True:
            xyz = tuple(rng.randint(-5, 5) for _ in range(3))
            if xyz != (0, 0, 0) and gcd(gcd(abs(xyz[0]), abs(xyz[1])), abs(xyz[2])) == 1:
                break
        H = rng.randint(1, 20)
        lat = coefficient_lattice(*xyz, k)
        got = set(lattice_points_in_box(lat, H))
        al, be, ga = (t**k for t in xyz)
        brute = {
            (a, b, c)
            for a in range(-H, H + 1)
            for b in range(-H, H + 1)
            for c in range(-H, H + 1)
            if a * al + b * be + c * ga == 0
        }
        assert got == brute, (xyz, k, H)


def test_lattice_determinant_dominates_powers():
    rng = random.Random(24)
    for _ in range(200):
        k = rng.choice((3, 4, 6))
        while True:
            xyz = tuple(rng.randint(-5, 5) for _ in range(3))
            if xyz != (0, 0, 0) and gcd(gcd(abs(xyz[0]), abs(xyz[1])), abs(xyz[2])) == 1:
                break
        lat = coefficient_lattice(*xyz, k)
        assert lat.determinant >= max(abs(t) ** k for t in xyz) - 1e-9


def test_fermat_solutions_pinned():
    sols = [s.point for s in fermat_solutions(FermatEquation(1, -1, 1, 3), 2)]
    assert (1, 1, 0) in sols
    assert fermat_solutions(FermatEquation(3, 4, 5, 3), 100) == []
    sols = [s.point for s in fermat_solutions(FermatEquation(1, 1, -1, 6), 3)]
    assert sols == [(0, 1, 1), (1, 0, 1)]


def test_fermat_solutions_match_brute_force():
    rng = random.Random(25)
    for _ in range(40):
        k = rng.choice((3, 4))
        a, b, c = (rng.choice([v for v in range(-8, 9) if v]) for _ in range(3))
        B = rng.randint(0, 6)
        eq = FermatEquation(a, b, c, k)
        got = {s.point for s in fermat_solutions(eq, B)}
        brute = set()
        for x in range(-B, B + 1):
            for y in range(-B, B + 1):
                for z in range(-B, B + 1):
                    if (x, y, z) == (0, 0, 0):
                        continue
                    if gcd(gcd(abs(x), abs(y)), abs(z)) != 1:
                        continue
                    if eq.value((x, y, z)) == 0:
                        if k % 2 == 0:
                            brute.add(tuple(abs(t) for t in (x, y, z)))
                        else:
                            head = next(t for t in (x, y, z) if t)
                            brute.add(
                                (x, y, z) if head > 0 else (-x, -y, -z)
                            )
        assert got == brute, (a, b, c, k, B)


def test_duality_equation_major_vs_solution_major():
    # the two census strategies agree exactly at the same bound
    k, H = 3, 25
    B = height_bound(k, H, 1).B
    equation_major = set()
    for a in range(-H, H + 1):
        for b in range(-H, H + 1):
            if a and b and thue_solutions(ThueEquation(a, b, k), B):
                equation_major.add((a, b))
    solution_major = set()
    for x in range(-B, B + 1):
        for y in range(-B, B + 1):
            if x == 0 and y == 0:
                continue
            solution_major.update(pairs_on_line(x, y, k, H))
    assert equation_major == solution_major


def test_abc_quality_pinned():
    t = abc_quality(1, 8, -9)
    assert t.radical_value == 6 and abs(t.quality - 1.2263) < 1e-4
    t = abc_quality(3, 125, -128)
    assert t.radical_value == 30 and abs(t.quality - 1.4266) < 1e-4
    t = abc_quality(1, 1, -2)
    assert t.radical_value == 2 and t.quality == 1.0
    t = abc_quality(10, 10, -20)  # reduces by gcd 10
    assert (t.u, t.v, t.w) == (1, 1, -2)
    with pytest.raises(ValueError):
        abc_quality(1, -1, 0)
    with pytest.raises(ValueError):
        abc_quality(1, 2, 3)


def test_thue_solution_quality_is_finite():
    # assembled zero-sum triples from found solutions always measure
    rng = random.Random(26)
    measured = 0
    for _ in range(200):
        k = rng.choice((3, 4))
        a = rng.choice([v for v in range(-12, 13) if v])
        b = rng.choice([v for v in range(-12, 13) if v])
        for s in thue_solutions(ThueEquation(a, b, k), 8):
            x, y = s.point
            u, v = a * x**k, b * y**k
            if u and v:
                q = abc_quality(u, v, -1).quality
                assert q > 0
                measured += 1
    assert measured > 20
