"""Solubility of diagonal equations over the reals and over the p-adic integers.

The two equation shapes are a*x^k + b*y^k = 1 (inhomogeneous, "Thue") and
a*x^k + b*y^k + c*z^k = 0 (homogeneous, "Fermat", where only solutions other
than the origin count).  A per-prime decision is packaged as a LocalVerdict
and the aggregate over the whole checklist of relevant primes as a
SolubilityCertificate.

Correctness of the search bounds
--------------------------------
Write alpha = v_p(k).  Any p-adic solution of a*x^k + b*y^k = 1 has a
coordinate that is a unit (otherwise 1 = 0 mod p).  At a point whose i-th
coordinate is a unit, the i-th partial derivative k * coef_i * t^(k-1) has
valuation exactly alpha + v_p(coef_i).  Reducing an exact solution modulo
p^(2*n0+1), n0 = alpha + v_p(a*b), therefore yields a residue point that
itself satisfies the quadratic-convergence lifting criterion (congruence to
p^(2n+1) together with gradient valuation exactly n, where n is taken at the
reduced point).  Exhausting that modulus is hence a complete decision
procedure, and any point passing hensel_witness_valid lifts back to an exact
solution.  The homogeneous case is identical after normalizing coefficient
valuations into [0, k) by scaling variables by powers of p and discarding the
common p-power, with n0 = alpha + max normalized coefficient valuation; a
witness with a unit coordinate lifts to a solution with that coordinate a
unit, hence nonzero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Union

from . import arith
from ._version import __version__
from .arith import _val

DEFAULT_BUDGET = 10**8

METHOD_AUTOMATIC = "automatic_large_prime"
METHOD_SHORTCUT = "surjectivity_shortcut"
METHOD_RESIDUE = "residue_search"
METHOD_EXHAUSTIVE = "exhaustive_hensel"


class BudgetExceededError(RuntimeError):
    """A local search hit the candidate-evaluation cap before deciding."""

    def __init__(self, prime: int, modulus: int, budget: int):
        self.prime = prime
        self.modulus = modulus
        self.budget = budget
        super().__init__(
            f"local search at p={prime} exceeded budget {budget} "
            f"(modulus reached {modulus})"
        )


@dataclass(frozen=True)
class ThueEquation:
    """a*x^k + b*y^k = 1 with nonzero coefficients and degree k >= 3."""

    a: int
    b: int
    k: int

    def __post_init__(self) -> None:
        if self.a == 0 or self.b == 0:
            raise ValueError("coefficients must be nonzero")
        if self.k < 3:
            raise ValueError("degree must be at least 3")

    @property
    def arity(self) -> int:
        return 2

    @property
    def coefficients(self) -> tuple[int, ...]:
        return (self.a, self.b)

    def value(self, point: tuple[int, ...]) -> int:
        x, y = point
        return self.a * x**self.k + self.b * y**self.k - 1

    def gradient(self, point: tuple[int, ...]) -> tuple[int, ...]:
        x, y = point
        return (
            self.k * self.a * x ** (self.k - 1),
            self.k * self.b * y ** (self.k - 1),
        )


@dataclass(frozen=True)
class FermatEquation:
    """a*x^k + b*y^k + c*z^k = 0, solutions sought away from the origin."""

    a: int
    b: int
    c: int
    k: int

    def __post_init__(self) -> None:
        if self.a == 0 or self.b == 0 or self.c == 0:
            raise ValueError("coefficients must be nonzero")
        if self.k < 3:
            raise ValueError("degree must be at least 3")

    @property
    def arity(self) -> int:
        return 3

    @property
    def coefficients(self) -> tuple[int, ...]:
        return (self.a, self.b, self.c)

    def value(self, point: tuple[int, ...]) -> int:
        x, y, z = point
        return self.a * x**self.k + self.b * y**self.k + self.c * z**self.k

    def gradient(self, point: tuple[int, ...]) -> tuple[int, ...]:
        x, y, z = point
        return (
            self.k * self.a * x ** (self.k - 1),
            self.k * self.b * y ** (self.k - 1),
            self.k * self.c * z ** (self.k - 1),
        )


Equation = Union[ThueEquation, FermatEquation]


@dataclass(frozen=True)
class HenselWitness:
    """A residue point plus the gradient valuation n certifying liftability."""

    point: tuple[int, ...]
    precision_n: int
    prime: int


@dataclass(frozen=True)
class LocalVerdict:
    """Decision at one prime; soluble verdicts carry a replayable witness
    except when certified purely by the large-prime bound (no search ran)."""

    prime: int
    soluble: bool
    witness: HenselWitness | None
    method: str
    search_modulus: int | None = None

    def __post_init__(self) -> None:
        if self.soluble and self.witness is None and self.method != METHOD_AUTOMATIC:
            raise ValueError("searched soluble verdicts must carry a witness")
        if not self.soluble and self.search_modulus is None:
            raise ValueError("insoluble verdicts must record the exhausted modulus")


@dataclass(frozen=True)
class SolubilityCertificate:
    equation: Equation
    real_soluble: bool
    threshold: int
    checked_primes: tuple[LocalVerdict, ...]
    everywhere_soluble: bool


def automatic_prime_bound(k: int) -> int:
    """Primes above k^2*(k+1)^2 not dividing k or the coefficients never need
    an explicit search: a nonsingular residue point always exists there."""
    return k * k * (k + 1) ** 2


def hensel_witness_valid(eq: Equation, point: tuple[int, ...], p: int) -> int | None:
    """Gradient valuation n when the point satisfies the lifting criterion
    (value divisible by p^(2n+1), gradient valuation exactly n), else None."""
    if len(point) != eq.arity:
        raise ValueError("point arity does not match the equation")
    finite = [_val(g, p) for g in eq.gradient(point) if g != 0]
    if not finite:
        return None
    n = min(finite)
    value = eq.value(point)
    return n if value % p ** (2 * n + 1) == 0 else None


def real_soluble(eq: Equation) -> bool:
    """Solubility over the reals (nontrivial solubility for the homogeneous
    shape): automatic for odd degree, a sign condition for even degree."""
    if eq.k % 2 == 1:
        return True
    if isinstance(eq, ThueEquation):
        return eq.a > 0 or eq.b > 0
    signs = {c > 0 for c in eq.coefficients}
    return len(signs) == 2


def prime_checklist(eq: Equation) -> list[int]:
    """Exactly the primes that require an explicit local search: everything
    up to the automatic bound plus the primes dividing the coefficients or k."""
    bound = automatic_prime_bound(eq.k)
    primes = set(arith.primes_up_to(bound))
    product = 1
    for c in eq.coefficients:
        product *= c
    primes.update(arith.factorize(product).factors)
    primes.update(arith.factorize(eq.k).factors)
    return sorted(primes)


# ---------------------------------------------------------------------------
# mod-p residue tables for primes not dividing k or the coefficients
# ---------------------------------------------------------------------------


@lru_cache(maxsize=2048)
def _coset_tables(p: int, k: int):
    # Requires p odd, p not dividing k.  coset[x] identifies the class of x
    # modulo k-th power units; two equations whose coefficients lie in the
    # same classes have identical mod-p behaviour.
    d = gcd(k, p - 1)
    g = arith.primitive_root(p)
    coset = [0] * p
    cur = 1
    for e in range(p - 1):
        coset[cur] = e % d
        cur = cur * g % p
    reps = tuple(pow(g, j, p) for j in range(d))
    roots = arith._root_table(p, k)
    return d, coset, reps, roots


@lru_cache(maxsize=1 << 18)
def _thue_rep_point(p: int, k: int, ca: int, cb: int) -> tuple[int, int] | None:
    # Solution of A*x^k + B*y^k = 1 mod p for the class representatives,
    # or None (complete: every solution has x^k in the table's image).
    d, _, reps, roots = _coset_tables(p, k)
    A, B = reps[ca], reps[cb]
    inv_b = pow(B, -1, p)
    for x in range(p):
        u = (1 - A * pow(x, k, p)) % p
        if u == 0:
            return (x, 0)
        y = roots.get(u * inv_b % p)
        if y is not None:
            return (x, y)
    return None


@lru_cache(maxsize=1 << 18)
def _fermat_rep_point(p: int, k: int, ca: int, cb: int, cc: int) -> tuple[int, int, int] | None:
    # Nontrivial zero of A*x^k + B*y^k + C*z^k mod p for representatives.
    d, _, reps, roots = _coset_tables(p, k)
    A, B, C = reps[ca], reps[cb], reps[cc]
    inv_b = pow(B, -1, p)
    for x in range(p):
        u = (-C - A * pow(x, k, p)) % p
        if u == 0:
            return (x, 0, 1)
        y = roots.get(u * inv_b % p)
        if y is not None:
            return (x, y, 1)
    y = roots.get(-B * pow(A, -1, p) % p)
    if y is not None:
        return (y, 1, 0)
    return None


def _transfer_coordinate(rep_coord: int, rep_coef: int, coef: int, p: int, k: int) -> int:
    # rep_coef/coef is a k-th power unit mod p (same class); scale the
    # representative coordinate so coef * out^k = rep_coef * rep_coord^k.
    if rep_coord == 0:
        return 0
    _, _, _, roots = _coset_tables(p, k)
    rho = roots[rep_coef * pow(coef, -1, p) % p]
    return rep_coord * rho % p


# ---------------------------------------------------------------------------
# the one-dimensional residue search (production strategy)
# ---------------------------------------------------------------------------


def _unit_exponent(p: int, k: int) -> int:
    # Modulus exponent at which k-th-power-unit membership stabilizes.
    alpha = _val(k, p)
    return 2 * alpha + 3 if p == 2 else 2 * alpha + 1


def _lift_root(root: int, k: int, target: int, p: int, cur: int, goal: int) -> int:
    # root^k = target (mod p^cur) with root a unit and cur >= 2*v_p(k)+1;
    # extends digit by digit to p^goal.
    if goal <= cur:
        return root % p**goal
    alpha = _val(k, p)
    kappa = k // p**alpha
    for j in range(cur, goal):
        pj = p**j
        r = (target - root**k) // pj % p
        s = r * pow(kappa * pow(root, k - 1, p) % p, -1, p) % p
        root += s * p ** (j - alpha)
    return root % p**goal


def _root_classes(c: int, k: int, p: int, levels: int, spend) -> list[int]:
    # All residues t mod p^levels with t^k = c (mod p^levels), by lifting
    # level by level (c need not be a unit).
    if levels == 0:
        return [0]
    roots = [t for t in range(p) if pow(t, k, p) == c % p]
    spend(p)
    for level in range(1, levels):
        mod_next = p ** (level + 1)
        c_next = c % mod_next
        step = p**level
        new: list[int] = []
        for r in roots:
            for t in range(p):
                cand = r + t * step
                if pow(cand, k, mod_next) == c_next:
                    new.append(cand)
        spend(len(roots) * p)
        roots = new
    return roots


class _Budget:
    __slots__ = ("left", "prime", "modulus")

    def __init__(self, budget: int, prime: int):
        self.left = budget
        self.prime = prime
        self.modulus = 0

    def spend(self, n: int) -> None:
        self.left -= n
        if self.left < 0:
            raise BudgetExceededError(self.prime, self.modulus, self.left + n)


def _thue_residue_search(eq: ThueEquation, p: int, budget: _Budget) -> LocalVerdict:
    k = eq.k
    alpha = _val(k, p)
    eu = _unit_exponent(p, k)
    m_eu, unit_roots = arith.unit_root_map(p, k)
    betas = (_val(eq.a, p), _val(eq.b, p))

    # Case 0 enumerates x and completes y; case 1 the reverse.  A completed
    # coordinate is always a unit, so the two cases together are exhaustive.
    for enum_idx, unit_idx in ((0, 1), (1, 0)):
        facing = eq.coefficients[unit_idx]
        oc = eq.coefficients[enum_idx]
        beta = betas[unit_idx]
        budget.modulus = p ** (beta + eu)
        if beta == 0:
            candidates = range(p**eu)
            budget.spend(p**eu)
        else:
            if oc % p == 0:
                continue  # 1 - oc*t^k is a unit, can never reach valuation beta
            base = _root_classes(pow(oc, -1, p**beta), k, p, beta, budget.spend)
            step = p**beta
            ext = p**eu
            budget.spend(len(base) * ext)
            candidates = (r + step * t for r in base for t in range(ext))
        f_unit = facing // p**beta
        inv_f = pow(f_unit, -1, m_eu)
        for t in candidates:
            u = 1 - oc * t**k
            if u == 0:
                continue  # exact solution with the other coordinate 0; the
                # opposite case finds it (its coefficient is then +-1)
            v = _val(u, p)
            if v != beta:
                continue
            cof = u // p**v
            root0 = unit_roots.get(cof * inv_f % m_eu)
            if root0 is None:
                continue
            if t == 0:
                n_w = alpha + beta
            else:
                n_w = min(alpha + beta, alpha + _val(oc, p) + (k - 1) * _val(t, p))
            goal = max(eu, 2 * n_w + 1 - beta)
            target = cof * pow(f_unit, -1, p**goal) % p**goal
            root = _lift_root(root0, k, target, p, eu, goal)
            point = (t, root) if enum_idx == 0 else (root, t)
            n = hensel_witness_valid(eq, point, p)
            if n is None:
                raise RuntimeError("internal: constructed witness failed validation")
            return LocalVerdict(p, True, HenselWitness(point, n, p), METHOD_RESIDUE)
    return LocalVerdict(
        p, False, None, METHOD_RESIDUE, p ** (max(betas) + eu)
    )


def _normalize_fermat(eq: FermatEquation, p: int):
    # Push coefficient valuations into [0, k) by scaling variables by p-powers
    # and drop the common p-power; solubility away from zero is unchanged.
    k = eq.k
    es = [_val(c, p) for c in eq.coefficients]
    iis = [e // k for e in es]
    betas = [e % k for e in es]
    sigma = min(betas)
    betas = [b - sigma for b in betas]
    ncoefs = [
        c // p ** (i * k + sigma) for c, i in zip(eq.coefficients, iis)
    ]
    return ncoefs, betas, iis, sigma, es


def _fermat_witness_from_normalized(
    eq: FermatEquation,
    p: int,
    point: tuple[int, int, int],
    iis: list[int],
    sigma: int,
) -> HenselWitness:
    # Map a normalized-equation point back to the stated equation, dividing
    # out any common p-power so that a unit coordinate survives.
    m = max(iis)
    mapped = [p ** (m - i) * v for v, i in zip(point, iis)]
    strip = min(_val(v, p) for v in mapped if v != 0)
    if strip:
        mapped = [v // p**strip for v in mapped]
    final = tuple(mapped)
    n = hensel_witness_valid(eq, final, p)
    if n is None or all(v % p == 0 for v in final):
        raise RuntimeError("internal: mapped witness failed validation")
    return HenselWitness(final, n, p)


def _fermat_residue_search(eq: FermatEquation, p: int, budget: _Budget) -> LocalVerdict:
    k = eq.k
    alpha = _val(k, p)
    eu = _unit_exponent(p, k)
    m_eu, unit_roots = arith.unit_root_map(p, k)
    ncoefs, betas, iis, sigma, es = _normalize_fermat(eq, p)
    m = max(iis)

    def build(point_norm: tuple[int, int, int]) -> LocalVerdict:
        witness = _fermat_witness_from_normalized(eq, p, point_norm, iis, sigma)
        return LocalVerdict(p, True, witness, METHOD_RESIDUE)

    for j_star in range(3):
        beta = betas[j_star]
        others = [i for i in range(3) if i != j_star]
        if beta < min(betas[i] for i in others):
            continue  # the other two terms force a higher valuation
        n_unit = ncoefs[j_star] // p**beta
        inv_unit = pow(n_unit, -1, m_eu)
        budget.modulus = p ** (beta + eu)

        if beta == 0:
            span = p**eu
            budget.spend(span * span)
            pairs = ((w1, w2) for w1 in range(span) for w2 in range(span))
        else:
            # One of the remaining coefficients is a unit (the minimum
            # normalized valuation is 0); constrain its variable.
            if betas[others[1]] == 0:
                free_idx, dep_idx = others[0], others[1]
            else:
                free_idx, dep_idx = others[1], others[0]
            others = [free_idx, dep_idx]
            n_free, n_dep = ncoefs[free_idx], ncoefs[dep_idx]
            span = p ** (beta + eu)
            step = p**beta
            ext = p**eu
            inv_dep = pow(n_dep, -1, step)

            def constrained():
                for w1 in range(span):
                    c = -n_free * w1**k * inv_dep % step
                    base = _root_classes(c, k, p, beta, budget.spend)
                    budget.spend(len(base) * ext)
                    for r in base:
                        for t in range(ext):
                            yield (w1, r + step * t)

            pairs = constrained()

        i1, i2 = others
        n1, n2 = ncoefs[i1], ncoefs[i2]
        for w1, w2 in pairs:
            u = -(n1 * w1**k + n2 * w2**k)
            if u == 0:
                if w1 == 0 and w2 == 0:
                    continue
                point = [0, 0, 0]
                point[i1], point[i2] = w1, w2
                return build(tuple(point))
            v = _val(u, p)
            if v != beta:
                continue
            cof = u // p**v
            root0 = unit_roots.get(cof * inv_unit % m_eu)
            if root0 is None:
                continue
            comps = [alpha + es[j_star] + (k - 1) * (m - iis[j_star])]
            for idx, w in ((i1, w1), (i2, w2)):
                if w != 0:
                    comps.append(alpha + es[idx] + (k - 1) * (m - iis[idx] + _val(w, p)))
            n_cap = min(comps)
            goal = max(eu, 2 * n_cap + 1 - sigma - m * k - beta)
            target = cof * pow(n_unit, -1, p**goal) % p**goal
            root = _lift_root(root0, k, target, p, eu, goal)
            point = [0, 0, 0]
            point[j_star] = root
            point[i1], point[i2] = w1, w2
            return build(tuple(point))
    return LocalVerdict(
        p, False, None, METHOD_RESIDUE, p ** (max(betas) + eu)
    )


# ---------------------------------------------------------------------------
# exhaustive two-/three-dimensional witness scan (oracle strategy)
# ---------------------------------------------------------------------------


def _exhaustive_witness_search(eq: Equation, p: int, exponent: int, budget: int):
    """First valid witness among points mod p^exponent with a unit coordinate,
    scanned in lexicographic order; None when the scan exhausts."""
    m = p**exponent
    cells = m**eq.arity
    if cells > budget:
        raise BudgetExceededError(p, m, budget)
    k = eq.k
    powk = [t**k for t in range(m)]
    # gradient-component valuation per coordinate value (None marks a zero
    # component, i.e. infinite valuation)
    gvals = []
    for c in eq.coefficients:
        base = k * c
        gvals.append([None] + [_val(base * powk[t] // t, p) for t in range(1, m)])
    max_n = max(v for vals in gvals for v in vals if v is not None)
    pows = [p**(2 * n + 1) for n in range(max_n + 1)]

    def n_at(vals):
        finite = [v for v in vals if v is not None]
        return min(finite) if finite else None

    if eq.arity == 2:
        a, b = eq.coefficients
        gx, gy = gvals
        for x in range(m):
            fx = a * powk[x] - 1
            vx = gx[x]
            for y in range(m):
                n = n_at((vx, gy[y]))
                if n is None:
                    continue
                if (fx + b * powk[y]) % pows[n] == 0:
                    return (x, y)
        return None
    a, b, c = eq.coefficients
    gx, gy, gz = gvals
    for x in range(m):
        fx = a * powk[x]
        vx = gx[x]
        for y in range(m):
            fxy = fx + b * powk[y]
            vxy = vx if gy[y] is None else (gy[y] if vx is None else min(vx, gy[y]))
            for z in range(m):
                if x % p == 0 and y % p == 0 and z % p == 0:
                    continue
                n = vxy if gz[z] is None else (gz[z] if vxy is None else min(vxy, gz[z]))
                if n is None:
                    continue
                if (fxy + c * powk[z]) % pows[n] == 0:
                    return (x, y, z)
    return None


def _exhaustive_exponent(eq: Equation, p: int) -> int:
    alpha = _val(eq.k, p)
    if isinstance(eq, ThueEquation):
        return 2 * (alpha + _val(eq.a * eq.b, p)) + 1
    return 2 * (alpha + max(_val(c, p) for c in eq.coefficients)) + 1


# ---------------------------------------------------------------------------
# public per-prime deciders
# ---------------------------------------------------------------------------

_VERDICT_CACHE: dict[tuple, LocalVerdict] = {}


def clear_verdict_cache() -> None:
    _VERDICT_CACHE.clear()


def _thue_cache_key(eq: ThueEquation, p: int) -> tuple:
    alpha = _val(eq.k, p)
    ba, ua = arith.valuation(eq.a, p) if eq.a % p == 0 else (0, eq.a)
    bb, ub = arith.valuation(eq.b, p) if eq.b % p == 0 else (0, eq.b)
    mod = p ** (2 * (alpha + ba + bb) + 1)
    return ("T", p, eq.k, ba, ua % mod, bb, ub % mod)


def _fermat_cache_key(eq: FermatEquation, p: int) -> tuple:
    k = eq.k
    alpha = _val(k, p)
    es = [_val(c, p) for c in eq.coefficients]
    iis = [e // k for e in es]
    m = max(iis)
    cap = alpha + max(e + (k - 1) * (m - i) for e, i in zip(es, iis))
    mod = p ** (2 * cap + 1)
    key: list = ["F", p, k]
    for c, e in zip(eq.coefficients, es):
        key.append(e)
        key.append((c // p**e) % mod)
    return tuple(key)


def _decide_thue(eq: ThueEquation, p: int, budget: int, shortcuts: bool) -> LocalVerdict:
    k = eq.k
    kab = k * eq.a * eq.b
    if shortcuts and p > automatic_prime_bound(k) and kab % p != 0:
        return LocalVerdict(p, True, None, METHOD_AUTOMATIC)
    if p != 2 and kab % p != 0:
        d, coset, reps, _ = _coset_tables(p, k)
        rep = _thue_rep_point(p, k, coset[eq.a % p], coset[eq.b % p])
        method = METHOD_SHORTCUT if shortcuts and d <= 2 else METHOD_RESIDUE
        if rep is None:
            if d <= 2:
                raise RuntimeError("internal: index <= 2 search cannot fail")
            return LocalVerdict(p, False, None, METHOD_RESIDUE, p)
        x = _transfer_coordinate(rep[0], reps[coset[eq.a % p]], eq.a, p, k)
        y = _transfer_coordinate(rep[1], reps[coset[eq.b % p]], eq.b, p, k)
        n = hensel_witness_valid(eq, (x, y), p)
        if n is None:
            raise RuntimeError("internal: transferred witness failed validation")
        return LocalVerdict(p, True, HenselWitness((x, y), n, p), method)
    return _thue_residue_search(eq, p, _Budget(budget, p))


def _decide_fermat(eq: FermatEquation, p: int, budget: int, shortcuts: bool) -> LocalVerdict:
    k = eq.k
    kabc = k * eq.a * eq.b * eq.c
    if shortcuts and p > automatic_prime_bound(k) and kabc % p != 0:
        return LocalVerdict(p, True, None, METHOD_AUTOMATIC)
    if p != 2 and kabc % p != 0:
        d, coset, reps, _ = _coset_tables(p, k)
        cs = [coset[c % p] for c in eq.coefficients]
        rep = _fermat_rep_point(p, k, *cs)
        method = METHOD_SHORTCUT if shortcuts and d <= 2 else METHOD_RESIDUE
        if rep is None:
            if d <= 2:
                raise RuntimeError("internal: index <= 2 search cannot fail")
            return LocalVerdict(p, False, None, METHOD_RESIDUE, p)
        point = tuple(
            _transfer_coordinate(r, reps[ci], c, p, k)
            for r, ci, c in zip(rep, cs, eq.coefficients)
        )
        n = hensel_witness_valid(eq, point, p)
        if n is None:
            raise RuntimeError("internal: transferred witness failed validation")
        return LocalVerdict(p, True, HenselWitness(point, n, p), method)
    return _fermat_residue_search(eq, p, _Budget(budget, p))


def thue_local(
    eq: ThueEquation,
    p: int,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "B",
    shortcuts: bool = True,
) -> LocalVerdict:
    """Complete decision of p-adic solubility of a*x^k + b*y^k = 1.

    Strategy "B" (default) enumerates one variable per unit-coordinate case
    and tests the cofactor for k-th-power-unit membership; strategy "A" is the
    two-dimensional witness scan kept as an oracle and fallback.
    """
    if not arith.is_prime(p):
        raise ValueError("p must be prime")
    if strategy == "A":
        exponent = _exhaustive_exponent(eq, p)
        found = _exhaustive_witness_search(eq, p, exponent, budget)
        if found is None:
            return LocalVerdict(p, False, None, METHOD_EXHAUSTIVE, p**exponent)
        n = hensel_witness_valid(eq, found, p)
        return LocalVerdict(p, True, HenselWitness(found, n, p), METHOD_EXHAUSTIVE)
    if strategy != "B":
        raise ValueError("strategy must be 'A' or 'B'")
    cacheable = shortcuts
    if cacheable:
        key = _thue_cache_key(eq, p)
        hit = _VERDICT_CACHE.get(key)
        if hit is not None:
            return hit
    verdict = _decide_thue(eq, p, budget, shortcuts)
    if cacheable:
        _VERDICT_CACHE[key] = verdict
    return verdict


def fermat_local(
    eq: FermatEquation,
    p: int,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "B",
    shortcuts: bool = True,
) -> LocalVerdict:
    """Complete decision of nontrivial p-adic solubility of
    a*x^k + b*y^k + c*z^k = 0 (equivalently primitive solubility)."""
    if not arith.is_prime(p):
        raise ValueError("p must be prime")
    if strategy == "A":
        exponent = _exhaustive_exponent(eq, p)
        found = _exhaustive_witness_search(eq, p, exponent, budget)
        if found is None:
            return LocalVerdict(p, False, None, METHOD_EXHAUSTIVE, p**exponent)
        n = hensel_witness_valid(eq, found, p)
        return LocalVerdict(p, True, HenselWitness(found, n, p), METHOD_EXHAUSTIVE)
    if strategy != "B":
        raise ValueError("strategy must be 'A' or 'B'")
    cacheable = shortcuts
    if cacheable:
        key = _fermat_cache_key(eq, p)
        hit = _VERDICT_CACHE.get(key)
        if hit is not None:
            return hit
    verdict = _decide_fermat(eq, p, budget, shortcuts)
    if cacheable:
        _VERDICT_CACHE[key] = verdict
    return verdict


def local_verdict(eq: Equation, p: int, **kw) -> LocalVerdict:
    if isinstance(eq, ThueEquation):
        return thue_local(eq, p, **kw)
    return fermat_local(eq, p, **kw)


def certify(eq: Equation, budget: int = DEFAULT_BUDGET, strategy: str = "B") -> SolubilityCertificate:
    """Run the real check plus every checklist prime; the certificate is
    self-contained (each witness replays through hensel_witness_valid)."""
    verdicts = tuple(
        local_verdict(eq, p, budget=budget, strategy=strategy)
        for p in prime_checklist(eq)
    )
    real = real_soluble(eq)
    everywhere = real and all(v.soluble for v in verdicts)
    return SolubilityCertificate(
        eq, real, automatic_prime_bound(eq.k), verdicts, everywhere
    )


# ---------------------------------------------------------------------------
# serialization (stable JSON shape, byte-identical across runs)
# ---------------------------------------------------------------------------


def equation_to_jsonable(eq: Equation) -> dict:
    out = {"a": eq.a, "b": eq.b}
    if isinstance(eq, FermatEquation):
        out["c"] = eq.c
    out["k"] = eq.k
    return out


def equation_from_jsonable(data: dict) -> Equation:
    if "c" in data:
        return FermatEquation(data["a"], data["b"], data["c"], data["k"])
    return ThueEquation(data["a"], data["b"], data["k"])


def verdict_to_jsonable(v: LocalVerdict) -> dict:
    witness = None
    if v.witness is not None:
        witness = {"point": list(v.witness.point), "n": v.witness.precision_n}
    return {
        "p": v.prime,
        "soluble": v.soluble,
        "method": v.method,
        "witness": witness,
        "search_modulus": v.search_modulus,
    }


def verdict_from_jsonable(data: dict) -> LocalVerdict:
    witness = None
    if data["witness"] is not None:
        witness = HenselWitness(
            tuple(data["witness"]["point"]), data["witness"]["n"], data["p"]
        )
    return LocalVerdict(
        data["p"], data["soluble"], witness, data["method"], data["search_modulus"]
    )


def certificate_to_jsonable(cert: SolubilityCertificate) -> dict:
    return {
        "equation": equation_to_jsonable(cert.equation),
        "real": cert.real_soluble,
        "threshold": cert.threshold,
        "primes": [verdict_to_jsonable(v) for v in cert.checked_primes],
        "everywhere": cert.everywhere_soluble,
    }


def certificate_from_jsonable(data: dict) -> SolubilityCertificate:
    return SolubilityCertificate(
        equation_from_jsonable(data["equation"]),
        data["real"],
        data["threshold"],
        tuple(verdict_from_jsonable(v) for v in data["primes"]),
        data["everywhere"],
    )


def certificate_to_json(cert: SolubilityCertificate) -> str:
    return json.dumps(certificate_to_jsonable(cert), indent=2)


def certificate_from_json(text: str) -> SolubilityCertificate:
    return certificate_from_jsonable(json.loads(text))


def replay_certificate(cert: SolubilityCertificate) -> bool:
    """Re-validate every carried witness against the stated equation."""
    for v in cert.checked_primes:
        if v.witness is not None:
            n = hensel_witness_valid(cert.equation, v.witness.point, v.prime)
            if n != v.witness.precision_n:
                return False
    return True


# ---------------------------------------------------------------------------
# optional persistent verdict cache
# ---------------------------------------------------------------------------


def save_verdict_cache(path: str) -> None:
    entries = [
        [list(key), verdict_to_jsonable(v)] for key, v in sorted(_VERDICT_CACHE.items())
    ]
    payload = {"version": __version__, "entries": entries}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load_verdict_cache(path: str) -> int:
    """Merge a saved cache; ignored entirely on version mismatch."""
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, ValueError):
        return 0
    if payload.get("version") != __version__:
        return 0
    count = 0
    for key, data in payload.get("entries", []):
        _VERDICT_CACHE[tuple(key)] = verdict_from_jsonable(data)
        count += 1
    return count
