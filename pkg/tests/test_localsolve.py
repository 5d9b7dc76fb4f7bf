import random

import pytest

from hasse.arith import _val, primes_up_to
from hasse.localsolve import (
    BudgetExceededError,
    FermatEquation,
    LocalVerdict,
    METHOD_AUTOMATIC,
    METHOD_RESIDUE,
    METHOD_SHORTCUT,
    ThueEquation,
    automatic_prime_bound,
    certificate_from_json,
    certificate_to_json,
    certify,
    fermat_local,
    hensel_witness_valid,
    prime_checklist,
    real_soluble,
    replay_certificate,
    thue_local,
)

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def thue_oracle(a, b, k, p):
    """Independent congruence oracle.

    Solubility over the p-adic integers is equivalent to solubility of the
    congruence mod p^(2*n0+1), n0 = v_p(k) + max(v_p(a), v_p(b)): any
    congruence solution has a unit coordinate (else 1 = 0 mod p), so its
    gradient valuation is at most n0 and the point is already a valid
    lifting witness.
    """
    alpha = _val(k, p)
    n0 = alpha + max(_val(a, p), _val(b, p))
    m = p ** (2 * n0 + 1)
    left = {a * pow(x, k, m) % m for x in range(m)}
    right = {(1 - b * pow(y, k, m)) % m for y in range(m)}
    return bool(left & right)


def nonzero(rng, lo, hi):
    while True:
        v = rng.randint(lo, hi)
        if v:
            return v


def test_hensel_witness_pinned():
    eq = ThueEquation(431, -107, 3)
    assert hensel_witness_valid(eq, (0, 1), 3) == 1
    assert hensel_witness_valid(ThueEquation(1, 1, 3), (1, 0), 5) == 0
    assert hensel_witness_valid(eq, (0, 0), 3) is None
    selmer = FermatEquation(3, 4, 5, 3)
    assert hensel_witness_valid(selmer, (0, 1, 4), 3) == 1


def test_thue_local_pinned():
    v = thue_local(ThueEquation(431, -107, 3), 3)
    assert v.soluble and v.witness.point == (0, 1) and v.witness.precision_n == 1
    v = thue_local(ThueEquation(23, -11, 3), 3)
    assert not v.soluble and v.search_modulus == 27
    v = thue_local(ThueEquation(2, 151, 3), 151)
    assert not v.soluble
    # oracle for the 151 case: 2 must be a cube mod 151 for unit-y solutions,
    # and no y = 0 mod 151 branch can reach valuation 1 either
    cubes = {pow(x, 3, 151) for x in range(1, 151)}
    assert 2 not in cubes


def test_fermat_local_pinned():
    v = fermat_local(FermatEquation(3, 4, 5, 3), 3)
    assert v.soluble
    assert v.witness is not None and hensel_witness_valid(
        FermatEquation(3, 4, 5, 3), v.witness.point, 3
    ) == v.witness.precision_n
    v = fermat_local(FermatEquation(1, 1, 1, 4), 2)
    assert not v.soluble
    for p in SMALL_PRIMES:
        assert fermat_local(FermatEquation(1, -1, 1, 3), p).soluble


def test_real_soluble():
    assert not real_soluble(ThueEquation(-1, -1, 4))
    assert real_soluble(ThueEquation(-3, -5, 5))
    assert real_soluble(ThueEquation(-3, 5, 4))
    assert not real_soluble(FermatEquation(1, 1, 1, 6))
    assert not real_soluble(FermatEquation(-1, -2, -3, 6))
    assert real_soluble(FermatEquation(1, 1, -1, 6))
    assert real_soluble(FermatEquation(-1, -1, -1, 5))


def test_prime_checklist_counts():
    assert len(prime_checklist(ThueEquation(2, 151, 3))) == 35
    assert len(prime_checklist(ThueEquation(1, 1, 3))) == 34
    assert len(prime_checklist(ThueEquation(1, 1, 4))) == 78
    cl = prime_checklist(ThueEquation(2, 151, 3))
    assert 151 in cl and cl == sorted(cl)


def test_certify_pinned():
    cert = certify(FermatEquation(3, 4, 5, 3))
    assert cert.everywhere_soluble
    assert len(cert.checked_primes) == 34
    assert cert.real_soluble and cert.threshold == 144

    cert = certify(ThueEquation(2, 151, 3))
    assert not cert.everywhere_soluble
    failing = {v.prime for v in cert.checked_primes if not v.soluble}
    assert 151 in failing

    assert certify(ThueEquation(1, 1, 3)).everywhere_soluble


def test_verdict_invariants():
    with pytest.raises(ValueError):
        LocalVerdict(3, True, None, METHOD_RESIDUE)
    with pytest.raises(ValueError):
        LocalVerdict(3, False, None, METHOD_RESIDUE, None)


def test_completeness_against_oracle_small():
    rng = random.Random(101)
    for _ in range(60):
        k = rng.choice((3, 4, 5))
        eq = ThueEquation(nonzero(rng, -30, 30), nonzero(rng, -30, 30), k)
        for p in SMALL_PRIMES:
            assert thue_local(eq, p).soluble == thue_oracle(eq.a, eq.b, k, p), (eq, p)


def test_strategy_equivalence_small():
    rng = random.Random(102)
    for _ in range(40):
        k = rng.choice((3, 4, 5))
        eq = ThueEquation(nonzero(rng, -30, 30), nonzero(rng, -30, 30), k)
        for p in SMALL_PRIMES:
            try:
                va = thue_local(eq, p, strategy="A", budget=2_000_000)
            except BudgetExceededError:
                continue
            vb = thue_local(eq, p)
            assert va.soluble == vb.soluble, (eq, p)
            if va.soluble:
                assert hensel_witness_valid(eq, va.witness.point, p) is not None


def test_fermat_strategy_equivalence_small():
    rng = random.Random(103)
    for _ in range(25):
        k = rng.choice((3, 4))
        eq = FermatEquation(
            nonzero(rng, -10, 10), nonzero(rng, -10, 10), nonzero(rng, -10, 10), k
        )
        for p in (2, 3, 5, 7):
            try:
                va = fermat_local(eq, p, strategy="A", budget=2_000_000)
            except BudgetExceededError:
                continue
            vb = fermat_local(eq, p)
            assert va.soluble == vb.soluble, (eq, p)


def test_soundness_every_witness_replays():
    rng = random.Random(104)
    for _ in range(40):
        k = rng.choice((3, 4, 5))
        eq = ThueEquation(nonzero(rng, -30, 30), nonzero(rng, -30, 30), k)
        for p in SMALL_PRIMES:
            v = thue_local(eq, p)
            if v.soluble:
                assert v.witness is not None
                assert (
                    hensel_witness_valid(eq, v.witness.point, p)
                    == v.witness.precision_n
                )
            else:
                assert v.search_modulus is not None


def test_fermat_witnesses_have_unit_coordinate():
    rng = random.Random(105)
    for _ in range(40):
        k = rng.choice((3, 4, 6))
        eq = FermatEquation(
            nonzero(rng, -20, 20), nonzero(rng, -20, 20), nonzero(rng, -20, 20), k
        )
        for p in (2, 3, 5, 7, 11):
            v = fermat_local(eq, p)
            if v.soluble:
                assert any(t % p for t in v.witness.point), (eq, p)
                assert (
                    hensel_witness_valid(eq, v.witness.point, p)
                    == v.witness.precision_n
                )


def test_shortcut_consistency_beyond_bound():
    # Above k^2 (k+1)^2 with p coprime to k*a*b the automatic verdict must
    # agree with the forced residue search.
    rng = random.Random(106)
    checked = 0
    while checked < 50:
        k = rng.choice((3, 4))
        bound = automatic_prime_bound(k)
        p = rng.choice([q for q in primes_up_to(bound + 200) if q > bound])
        eq = ThueEquation(nonzero(rng, -50, 50), nonzero(rng, -50, 50), k)
        if (k * eq.a * eq.b) % p == 0:
            continue
        auto = thue_local(eq, p)
        assert auto.method == METHOD_AUTOMATIC and auto.soluble
        forced = thue_local(eq, p, shortcuts=False)
        assert forced.soluble
        assert forced.method in (METHOD_RESIDUE, METHOD_SHORTCUT)
        checked += 1


def test_gcd_shortcut_needs_p_coprime_to_k():
    # 2x^3 + 2y^3 = 1 has no 3-adic solution although gcd(3, 3-1) = 1; the
    # index-one shortcut must not fire when p divides k.
    eq = ThueEquation(2, 2, 3)
    assert not thue_local(eq, 3).soluble
    assert not thue_oracle(2, 2, 3, 3)


def test_insolubility_monotone_in_modulus():
    from hasse.localsolve import _exhaustive_witness_search

    eq = ThueEquation(23, -11, 3)
    full = _val(3, 3) + _val(23 * -11, 3)
    assert _exhaustive_witness_search(eq, 3, 2 * full + 1, 10**7) is None
    for exp in range(1, 2 * full + 1):
        assert _exhaustive_witness_search(eq, 3, exp, 10**7) is None


def test_sign_flip_invariance_odd_degree():
    rng = random.Random(107)
    for _ in range(15):
        k = rng.choice((3, 5))
        a, b = nonzero(rng, -15, 15), nonzero(rng, -15, 15)
        c1 = certify(ThueEquation(a, b, k)).everywhere_soluble
        c2 = certify(ThueEquation(-a, b, k)).everywhere_soluble
        assert c1 == c2, (a, b, k)


def test_budget_exceeded_is_explicit():
    with pytest.raises(BudgetExceededError):
        thue_local(ThueEquation(3, 5, 3), 3, budget=3, shortcuts=False)
    with pytest.raises(BudgetExceededError):
        thue_local(ThueEquation(1, 1, 5), 11, strategy="A", budget=10)


def test_certificate_serialization_roundtrip():
    for eq in (
        FermatEquation(3, 4, 5, 3),
        ThueEquation(2, 151, 3),
        ThueEquation(-7, 9, 4),
    ):
        cert = certify(eq)
        text = certificate_to_json(cert)
        back = certificate_from_json(text)
        assert back == cert
        assert certificate_to_json(back) == text
        assert replay_certificate(back)


def test_certify_deterministic():
    eq = ThueEquation(10, -9, 3)
    a = certificate_to_json(certify(eq))
    b = certificate_to_json(certify(eq))
    assert a == b


def test_automatic_has_no_witness_but_searched_do():
    eq = ThueEquation(2, 3, 3)
    v = thue_local(eq, 1009)
    assert v.method == METHOD_AUTOMATIC and v.soluble and v.witness is None
    for v in certify(eq).checked_primes:
        if v.soluble:
            assert v.witness is not None
