"""Prime pairs and triples whose Thue/Fermat equations are certified
everywhere locally soluble.

The theoretical modulus that makes every small-prime check succeed outright
is astronomically large (its prime support runs to k^2*(k+1)^2), so the
generators sieve the residue class -1 modulo a small practical surrogate that
secures the delicate primes (2 and the divisors of k) plus the two or three
family primes themselves, and close the gap at the remaining small primes by
machine certification.  Only candidates whose equation passes certify() are
emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, lcm

from . import arith
from .localsolve import (
    FermatEquation,
    SolubilityCertificate,
    ThueEquation,
    automatic_prime_bound,
    certify,
)


@dataclass(frozen=True)
class GuaranteeModulus:
    """Factored form of the modulus whose residue class -1 provably forces
    everywhere-local solubility; kept factored because the integer is
    astronomically large already for k = 3."""

    k: int
    value: arith.Factorization


@dataclass(frozen=True)
class FamilyPair:
    q: int
    r: int
    k: int
    modulus: int
    equation: ThueEquation
    certificate: SolubilityCertificate


@dataclass(frozen=True)
class FamilyTriple:
    q: int
    r: int
    s: int
    k: int
    modulus: int
    third_sign: int  # sign of the s-term: -1 when both class symbols are +1
    equation: FermatEquation
    certificate: SolubilityCertificate


def guarantee_modulus(k: int) -> GuaranteeModulus:
    """Product over primes p <= k^2*(k+1)^2 of p^(2*a_p+2), p^a_p || k."""
    if k < 3:
        raise ValueError("degree must be at least 3")
    factors = {}
    for p in arith.primes_up_to(automatic_prime_bound(k)):
        factors[p] = 2 * arith._val(k, p) + 2
    return GuaranteeModulus(k, arith.Factorization(factors))


def default_modulus(k: int) -> int:
    """lcm(4, prod_{p | k} p^(2*a_p+1)): forces q = -1 mod 4 (the reciprocity
    sign), mod k (k-th power surjectivity at the family primes), and mod
    p^(2*a_p+1) for p | k (the ready-made lifting witness at ramified primes)."""
    if k < 3:
        raise ValueError("degree must be at least 3")
    out = 1
    for p in arith.factorize(k).factors:
        out *= p ** (2 * arith._val(k, p) + 1)
    return lcm(4, out)


def candidate_primes(modulus: int, prime_limit: int) -> list[int]:
    """Primes congruent to -1 modulo the given modulus, up to the limit."""
    if modulus % 4 != 0:
        raise ValueError("modulus must be divisible by 4")
    out = []
    n = modulus - 1
    while n <= prime_limit:
        if arith.is_prime(n):
            out.append(n)
        n += modulus
    return out


def orient_pair(p1: int, p2: int) -> tuple[int, int]:
    """Order two distinct primes = 3 mod 4 as (q, r) with (q/r) = 1.

    Reciprocity makes the two symbols opposite, so exactly one order works.
    """
    if p1 == p2:
        raise ValueError("primes must be distinct")
    if p1 % 4 != 3 or p2 % 4 != 3:
        raise ValueError("primes must be = 3 mod 4")
    if arith.jacobi(p1, p2) == 1:
        return p1, p2
    return p2, p1


def pair_stream(
    k: int,
    modulus: int | None = None,
    prime_limit: int = 10_000,
    count: int | None = None,
) -> list[FamilyPair]:
    """Certified pairs (q, r) with q*x^k - r*y^k = 1 everywhere locally
    soluble; pairs are scanned in index order over the sieved candidates and
    only emitted when certification succeeds.

    Candidates are additionally required to exceed k^2*(k+1)^2; if the prime
    limit runs out before `count` pairs are found the partial list is
    returned.
    """
    if modulus is None:
        modulus = default_modulus(k)
    bound = automatic_prime_bound(k)
    cands = [p for p in candidate_primes(modulus, prime_limit) if p > bound]
    out: list[FamilyPair] = []
    for p1, p2 in combinations(cands, 2):
        q, r = orient_pair(p1, p2)
        eq = ThueEquation(q, -r, k)
        cert = certify(eq)
        if cert.everywhere_soluble:
            out.append(FamilyPair(q, r, k, modulus, eq, cert))
            if count is not None and len(out) >= count:
                break
    return out


def is_good_triple(p1: int, p2: int, p3: int) -> int | None:
    """Smallest index i (0-based) with (p_i/p_j) = (p_i/p_k), or None.

    All three primes must be distinct and = 3 mod 4.
    """
    ps = (p1, p2, p3)
    if len(set(ps)) != 3:
        raise ValueError("primes must be distinct")
    for p in ps:
        if p % 4 != 3 or not arith.is_prime(p):
            raise ValueError("arguments must be primes = 3 mod 4")
    for i in range(3):
        j, l = [t for t in range(3) if t != i]
        if arith.jacobi(ps[i], ps[j]) == arith.jacobi(ps[i], ps[l]):
            return i
    return None


def triple_stream(
    k: int,
    modulus: int | None = None,
    prime_limit: int = 10_000,
    count: int | None = None,
) -> list[FamilyTriple]:
    """Certified triples (q, r, s) with q*x^k - r*y^k -+ s*z^k = 0 everywhere
    locally soluble.

    s is the prime at the smallest good index, q < r are the remaining two,
    and the sign of the s-term is -1 exactly when (-r*s/q) = (q*s/r) = +1
    (the two symbols always agree under the sieve's congruence conditions).
    """
    if modulus is None:
        modulus = default_modulus(k)
    bound = automatic_prime_bound(k)
    cands = [p for p in candidate_primes(modulus, prime_limit) if p > bound]
    out: list[FamilyTriple] = []
    for trip in combinations(cands, 3):
        idx = is_good_triple(*trip)
        if idx is None:
            continue
        s = trip[idx]
        q, r = sorted(t for t in trip if t != s)
        sym = arith.jacobi(-r * s, q)
        if sym != arith.jacobi(q * s, r):
            raise RuntimeError("internal: class symbols must agree for sieved triples")
        third_sign = -1 if sym == 1 else 1
        eq = FermatEquation(q, -r, third_sign * s, k)
        cert = certify(eq)
        if cert.everywhere_soluble:
            out.append(FamilyTriple(q, r, s, k, modulus, third_sign, eq, cert))
            if count is not None and len(out) >= count:
                break
    return out
