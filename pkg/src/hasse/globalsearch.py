"""Global integer solutions: bounded direct search, solution-major pair
enumeration, coefficient lattices, and abc quality measurement.

Variable bounds derived from height_bound are conditional (they encode the
abc-type inequality |y| << H^(1/(k-2)) up to a user-chosen slack constant);
every consumer of such bounds flags its output accordingly.  All decisions
are exact integer arithmetic; floating point appears only in reported
determinants and qualities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, log
from typing import Iterator, Union

from . import arith
from .localsolve import Equation, FermatEquation, ThueEquation


@dataclass(frozen=True)
class HeightBound:
    """Search bound B = ceil(slack * H^(1/(k-2))) for coefficient height H."""

    k: int
    H: int
    slack: Fraction
    B: int


@dataclass(frozen=True)
class GlobalSolution:
    equation: Equation
    point: tuple[int, ...]
    primitive: bool = True

    def __post_init__(self) -> None:
        if self.equation.value(self.point) != 0:
            raise ValueError("point does not satisfy the equation")


@dataclass(frozen=True)
class AbcTriple:
    """Reduced zero-sum coprime triple with its radical and quality."""

    u: int
    v: int
    w: int
    radical_value: int
    quality: float


@dataclass(frozen=True)
class CoefficientLattice:
    """Rank-2 lattice of (a, b, c) with a*x^k + b*y^k + c*z^k = 0."""

    xyz: tuple[int, int, int]
    k: int
    basis: tuple[tuple[int, int, int], tuple[int, int, int]]
    determinant: float


def _ceil_root_scaled(num: int, den: int, h: int, m: int) -> int:
    # smallest B with (B*den)^m >= num^m * h  (i.e. B >= (num/den) * h^(1/m))
    target = num**m * h
    b = arith._floor_kth_root(target, m) // den
    while (b * den) ** m < target:
        b += 1
    return b


def height_bound(k: int, H: int, slack: Union[int, float, Fraction] = 4) -> HeightBound:
    """Exact ceiling of slack * H^(1/(k-2)); results derived from B are
    conditional on the abc-type inequality plus the slack choice."""
    if k < 3 or H < 1:
        raise ValueError("need k >= 3 and H >= 1")
    fr = Fraction(str(slack)) if isinstance(slack, float) else Fraction(slack)
    if fr < 1:
        raise ValueError("slack must be at least 1")
    b = _ceil_root_scaled(fr.numerator, fr.denominator, H, k - 2)
    return HeightBound(k, H, fr, max(1, b))


def thue_solutions(eq: ThueEquation, B: int) -> list[GlobalSolution]:
    """All (x, y) with |x|, |y| <= B and a*x^k + b*y^k = 1, exactly.

    Iterates the variable with the smaller |coefficient| and root-tests the
    cofactor against the larger one.
    """
    if B < 0:
        raise ValueError("bound must be nonnegative")
    a, b, k = eq.a, eq.b, eq.k
    swap = abs(a) > abs(b)
    small, large = (b, a) if swap else (a, b)
    out = []
    for t in range(-B, B + 1):
        rhs = 1 - small * t**k
        if rhs % large:
            continue
        s = arith.integer_kth_root(rhs // large, k)
        if s is None or abs(s) > B:
            continue
        pts = {s}
        if k % 2 == 0 and s:
            pts.add(-s)
        for u in pts:
            point = (u, t) if swap else (t, u)
            out.append(GlobalSolution(eq, point))
    return sorted(out, key=lambda g: g.point)


def pairs_on_line(x: int, y: int, k: int, H: int) -> list[tuple[int, int]]:
    """All (a, b) with 0 < |a|, |b| <= H and a*x^k + b*y^k = 1.

    The solutions form a one-parameter family stepped from an extended-gcd
    base point; empty when gcd(x^k, y^k) does not divide 1.
    """
    if x == 0 and y == 0:
        raise ValueError("(x, y) must be nonzero")
    xk, yk = x**k, y**k
    if xk == 0 or yk == 0:
        big = xk + yk  # the nonzero one
        if big not in (1, -1):
            return []
        fixed = big  # a or b is forced to 1/big = big
        out = []
        for t in range(-H, H + 1):
            if t == 0:
                continue
            out.append((fixed, t) if xk else (t, fixed))
        return sorted(out)
    g, u, v = arith.egcd(xk, yk)
    if g != 1:
        return []
    # a = u + t*yk, b = v - t*xk; intersect the two |.| <= H windows
    out = []
    windows = []
    for base, step in ((u, yk), (v, -xk)):
        # need |base + t*step| <= H
        lo_t = _div_ceil(-H - base, step) if step > 0 else _div_ceil(base - H, -step)
        hi_t = (H - base) // step if step > 0 else (base + H) // -step
        windows.append((lo_t, hi_t))
    lo_t = max(w[0] for w in windows)
    hi_t = min(w[1] for w in windows)
    for t in range(lo_t, hi_t + 1):
        a = u + t * yk
        b = v - t * xk
        if a == 0 or b == 0:
            continue
        assert a * xk + b * yk == 1
        out.append((a, b))
    return sorted(out)


def _div_ceil(n: int, d: int) -> int:
    return -((-n) // d)


def coefficient_lattice(x: int, y: int, z: int, k: int) -> CoefficientLattice:
    """Integral basis of {(a,b,c): a*x^k + b*y^k + c*z^k = 0} for a primitive
    power vector, with the Euclidean determinant of the rank-2 lattice."""
    if (x, y, z) == (0, 0, 0):
        raise ValueError("power vector must be nonzero")
    if gcd(gcd(x, y), z) != 1:
        raise ValueError("(x, y, z) must be primitive")
    al, be, ga = x**k, y**k, z**k
    if al == 0 and be == 0:
        basis = ((1, 0, 0), (0, 1, 0))
    else:
        g1, u, v = arith.egcd(al, be)
        e1 = (be // g1, -al // g1, 0)
        g2 = gcd(g1, ga)
        e2 = (u * (ga // g2), v * (ga // g2), -(g1 // g2))
        basis = (e1, e2)
    basis = tuple(_sign_normalize(v) for v in basis)
    for vec in basis:
        if al * vec[0] + be * vec[1] + ga * vec[2] != 0:
            raise RuntimeError("internal: basis vector off the lattice")
    det = (al * al + be * be + ga * ga) ** 0.5
    return CoefficientLattice((x, y, z), k, basis, det)


def _sign_normalize(vec: tuple[int, int, int]) -> tuple[int, int, int]:
    for c in vec:
        if c:
            return vec if c > 0 else tuple(-t for t in vec)
    return vec


def lattice_points_in_box(lat: CoefficientLattice, H: int) -> Iterator[tuple[int, int, int]]:
    """All lattice points with sup-norm at most H (complete: the basis is
    Gauss-reduced first and the coefficient windows carry a safety margin,
    with every candidate checked exactly)."""
    u1, u2 = [list(v) for v in lat.basis]

    def dot(a, b):
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

    # Lagrange/Gauss reduction in the Euclidean metric.
    while True:
        if dot(u1, u1) > dot(u2, u2):
            u1, u2 = u2, u1
        n11 = dot(u1, u1)
        mu = round(Fraction(dot(u1, u2), n11))
        if mu:
            u2 = [a - mu * b for a, b in zip(u2, u1)]
        if dot(u2, u2) >= n11:
            break
    n11, n22, n12 = dot(u1, u1), dot(u2, u2), dot(u1, u2)
    # For reduced bases |t2| <= ||P|| / h2 with h2^2 = n22 - n12^2/n11 >= (3/4) n22.
    norm_cap = 3 * H * H  # ||P||^2 <= 3 H^2 in the box
    h2_sq = Fraction(n11 * n22 - n12 * n12, n11)
    t2_cap = isqrt(int(Fraction(norm_cap) / h2_sq)) + 1
    for t2 in range(-t2_cap, t2_cap + 1):
        center = Fraction(-t2 * n12, n11)
        radius = Fraction(isqrt(norm_cap * n11) + 1, n11)
        lo = int(center - radius) - 1
        hi = int(center + radius) + 1
        base = [t2 * c for c in u2]
        for t1 in range(lo, hi + 1):
            p0 = base[0] + t1 * u1[0]
            if abs(p0) > H:
                continue
            p1 = base[1] + t1 * u1[1]
            if abs(p1) > H:
                continue
            p2 = base[2] + t1 * u1[2]
            if abs(p2) > H:
                continue
            yield (p0, p1, p2)


def _canonical_point(point: tuple[int, ...], k: int) -> tuple[int, ...]:
    # For even degree every coordinate sign flip preserves solutions; for odd
    # degree only global negation does.
    if k % 2 == 0:
        return tuple(abs(t) for t in point)
    for t in point:
        if t:
            return point if t > 0 else tuple(-s for s in point)
    return point


def fermat_solutions(eq: FermatEquation, B: int) -> list[GlobalSolution]:
    """All primitive nonzero (x, y, z) with coordinates bounded by B solving
    a*x^k + b*y^k + c*z^k = 0, one representative per sign orbit."""
    if B < 0:
        raise ValueError("bound must be nonnegative")
    a, b, c, k = eq.a, eq.b, eq.c, eq.k
    found = set()
    xs = list(range(-B, B + 1))
    powk = {t: t**k for t in xs}
    for x in xs:
        ax = a * powk[x]
        for y in xs:
            rhs = -(ax + b * powk[y])
            if rhs % c:
                continue
            z = arith.integer_kth_root(rhs // c, k)
            if z is None or abs(z) > B:
                continue
            zs = {z}
            if k % 2 == 0 and z:
                zs.add(-z)
            for zz in zs:
                if x == 0 and y == 0 and zz == 0:
                    continue
                if gcd(gcd(abs(x), abs(y)), abs(zz)) != 1:
                    continue
                found.add(_canonical_point((x, y, zz), k))
    return [GlobalSolution(eq, p) for p in sorted(found)]


def abc_quality(u: int, v: int, w: int) -> AbcTriple:
    """Quality log(max |entry|) / log(radical of the product) of the triple
    reduced by its gcd; requires u + v + w = 0 with all entries nonzero."""
    if u == 0 or v == 0 or w == 0:
        raise ValueError("entries must be nonzero")
    if u + v + w != 0:
        raise ValueError("entries must sum to zero")
    g = gcd(gcd(abs(u), abs(v)), abs(w))
    u, v, w = u // g, v // g, w // g
    primes = set()
    for t in (u, v, w):
        primes.update(arith.factorize(t).factors)
    rad = 1
    for p in primes:
        rad *= p
    quality = log(max(abs(u), abs(v), abs(w))) / log(rad)
    return AbcTriple(u, v, w, rad, quality)
