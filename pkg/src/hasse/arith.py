"""Exact integer and modular arithmetic primitives.

Everything here is plain-integer, deterministic and exact; no floating point
is used in any decision.  All functions are pure, so they are safe to call
from any number of concurrent workers, and the cached tables are immutable
after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt


class FactorizationBudgetError(RuntimeError):
    """An integer resisted the factorization budget (trial + rho splitting)."""


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i in range(2, n + 1) if sieve[i]]


_SMALL_PRIMES = tuple(primes_up_to(1000))

# Miller-Rabin with these twelve bases is a proven-deterministic test below
# this bound (which comfortably exceeds 2**64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def _mr_round(n: int, base: int, d: int, s: int) -> bool:
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic for all n below ~3.3e24 (covers 64-bit); larger inputs
    get trial division by small primes plus 32 Miller-Rabin rounds with bases
    derived deterministically from n (error probability below 4**-32)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:25]:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_mr_round(n, b, d, s) for b in _MR_BASES)
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return False
    base = 40503 % n
    for _ in range(32):
        base = (base * base * 48271 + 1) % n
        b = 2 + base % (n - 3)
        if not _mr_round(n, b, d, s):
            return False
    return True


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, u, v) with g = gcd(a, b) > 0 and u*a + v*b = g."""
    if a == 0 and b == 0:
        raise ValueError("egcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; Legendre symbol when n is prime."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol requires an odd positive lower argument")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _val(n: int, p: int) -> int:
    # p-adic valuation of n != 0, no argument checking.
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def valuation(n: int, p: int) -> tuple[int, int]:
    """Largest e with p**e | n, plus the cofactor n / p**e.

    n = 0 is rejected (its valuation is infinite); callers must branch first.
    """
    if n == 0:
        raise ValueError("valuation of 0 is infinite; handle that case before calling")
    if p < 2 or not is_prime(p):
        raise ValueError("valuation needs a prime p")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e, n


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as a map prime -> exponent (empty for units)."""

    factors: dict[int, int]

    def __post_init__(self) -> None:
        for p, e in self.factors.items():
            if e < 1:
                raise ValueError("exponents must be >= 1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")

    def value(self) -> int:
        out = 1
        for p, e in self.factors.items():
            out *= p**e
        return out

    def radical(self) -> int:
        out = 1
        for p in self.factors:
            out *= p
        return out


def _pollard_brent(n: int, seed: int) -> int:
    # Brent's cycle variant; returns a nontrivial factor of composite odd n,
    # or n itself when this seed fails.
    y, c, m = seed % n, 1 + seed % (n - 1), 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g


_TRIAL_BOUND = 10**6


def factorize(n: int) -> Factorization:
    """Full factorization of |n|: trial division to 1e6, then rho splitting.

    Raises FactorizationBudgetError when splitting stalls (never at the scale
    of census coefficients and family primes this package works with).
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    m = abs(n)
    factors: dict[int, int] = {}
    while m % 2 == 0:
        factors[2] = factors.get(2, 0) + 1
        m //= 2
    f = 3
    while f * f <= m and f <= _TRIAL_BOUND:
        while m % f == 0:
            factors[f] = factors.get(f, 0) + 1
            m //= f
        f += 2
    pending = [m] if m > 1 else []
    while pending:
        m = pending.pop()
        if m == 1:
            continue
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = m
        for seed in range(2, 40):
            d = _pollard_brent(m, seed)
            if 1 < d < m:
                break
        else:
            raise FactorizationBudgetError(f"could not split {m}")
        pending.append(d)
        pending.append(m // d)
    return Factorization(dict(sorted(factors.items())))


def radical(n: int) -> int:
    """Product of the distinct primes dividing n; radical(+-1) = 1."""
    if n == 0:
        raise ValueError("radical of 0 is undefined")
    return factorize(n).radical()


@dataclass(frozen=True)
class ResidueTable:
    """Membership table of {x**k mod p : x in 0..p-1}."""

    modulus: int
    degree: int
    residues: frozenset[int]

    def __contains__(self, r: int) -> bool:
        return r % self.modulus in self.residues


@lru_cache(maxsize=4096)
def _power_image(p: int, k: int) -> frozenset[int]:
    return frozenset(pow(x, k, p) for x in range(p))


def kth_power_residues(p: int, k: int) -> ResidueTable:
    """Exact image of x -> x**k modulo the prime p (0 included)."""
    if k < 1:
        raise ValueError("degree must be positive")
    if not is_prime(p):
        raise ValueError("modulus must be prime")
    return ResidueTable(p, k, _power_image(p, k))


@lru_cache(maxsize=1024)
def _root_table(p: int, k: int) -> dict[int, int]:
    # kth power -> smallest root, over units mod p.
    table: dict[int, int] = {}
    for x in range(1, p):
        table.setdefault(pow(x, k, p), x)
    return table


def kth_root_mod(a: int, k: int, p: int) -> int | None:
    """Some x with x**k = a (mod p), or None if a is not a k-th power.

    When gcd(k, p-1) = 1 the root comes from an inverse exponent; otherwise
    the cached power table is consulted (O(p) once per (p, k)).
    """
    if k < 1:
        raise ValueError("degree must be positive")
    if a % p == 0:
        raise ValueError("argument must be coprime to p")
    if p == 2:
        return 1
    a %= p
    d = gcd(k, p - 1)
    if d == 1:
        return pow(a, pow(k, -1, p - 1), p)
    if pow(a, (p - 1) // d, p) != 1:
        return None
    return _root_table(p, k)[a]


@lru_cache(maxsize=1024)
def unit_root_map(p: int, k: int) -> tuple[int, dict[int, int]]:
    """(modulus M, map {x**k mod M: smallest root x}) over units x mod M.

    M is p**(2a+1) for odd p and 2**(2a+3) for p = 2, where p**a || k.  A unit
    is a k-th power in the p-adic integers exactly when its class mod M is a
    key: a root mod M lifts (the derivative k*x**(k-1) has valuation a, so the
    lifting criterion is met), and an exact root reduces mod M.
    """
    alpha = _val(k, p)
    e = 2 * alpha + 3 if p == 2 else 2 * alpha + 1
    m = p**e
    table: dict[int, int] = {}
    for x in range(1, m):
        if x % p:
            table.setdefault(pow(x, k, m), x)
    return m, table


def unit_kth_power_in_zp(u: int, k: int, p: int) -> bool:
    """True when the unit u is the k-th power of a p-adic unit."""
    if k < 1:
        raise ValueError("degree must be positive")
    if u % p == 0:
        raise ValueError("argument must be a unit mod p")
    m, table = unit_root_map(p, k)
    return u % m in table


def _floor_kth_root(n: int, k: int) -> int:
    # floor(n ** (1/k)) for n >= 0 by integer Newton iteration.
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def integer_kth_root(n: int, k: int) -> int | None:
    """Exact integer x with x**k = n, or None."""
    if k < 1:
        raise ValueError("degree must be positive")
    if k == 1:
        return n
    if n < 0:
        if k % 2 == 0:
            return None
        r = integer_kth_root(-n, k)
        return None if r is None else -r
    r = _floor_kth_root(n, k)
    return r if r**k == n else None


@lru_cache(maxsize=1024)
def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    if p == 2:
        return 1
    order_factors = factorize(p - 1).factors
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in order_factors):
            return g
    raise AssertionError("unreachable for prime p")
