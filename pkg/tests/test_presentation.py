import math

import pytest

from metacyclic import group
from metacyclic.automorphism import count
from metacyclic.errors import PresentationError
from metacyclic.group import Element
from metacyclic.numtheory import INFINITY, padic_deg
from metacyclic.oracle import brute_enumerate
from metacyclic.presentation import (
    LambdaClass,
    build_context,
    context_for,
    mu,
    normalization_exponent,
    normalize,
    parse_presentation,
    validate,
)

from .conftest import valid_presentations


def classes(ctx):
    return {cls: ctx.primes(cls) for cls in LambdaClass}


def test_validate_examples():
    assert validate(228, 30, 38, 7).as_tuple() == (228, 30, 38, 7)
    assert validate(4, 2, 2, 3).as_tuple() == (4, 2, 2, 3)


def test_validate_names_failing_congruence():
    with pytest.raises(PresentationError, match=r"t\(r-1\)"):
        validate(4, 2, 1, 3)
    with pytest.raises(PresentationError, match=r"r\^m"):
        validate(5, 3, 5, 2)


@pytest.mark.parametrize("args", [(0, 1, 1, 1), (4, 0, 1, 1), (2**31, 1, 1, 1), (4, 2, -1, 3)])
def test_validate_range(args):
    with pytest.raises(PresentationError):
        validate(*args)


def test_validate_wraps_residues():
    assert validate(8, 2, 10, 13).as_tuple() == (8, 2, 2, 5)
    assert validate(8, 2, 8, 9).as_tuple() == (8, 2, 8, 1)


def test_parse_presentation():
    assert parse_presentation(" 228, 30,38 ,7").as_tuple() == (228, 30, 38, 7)
    with pytest.raises(ValueError):
        parse_presentation("1,2,3")


def test_normalize_8_2_6_5():
    pres = validate(8, 2, 6, 5)
    assert normalization_exponent(pres) == 7
    assert normalize(pres).as_tuple() == (8, 2, 2, 5)
    # b' = b^7 inside H(8,2;6,5) satisfies b'^2 = a^2 and b' a b'^-1 = a^5
    b_new = group.power(pres, Element(0, 1), 7)
    a = Element(1, 0)
    assert group.power(pres, b_new, 2) == group.power(pres, a, 2)
    conj = group.mul(pres, group.mul(pres, b_new, a), group.inv(pres, b_new))
    assert conj == group.power(pres, a, 5)


def test_normalize_keeps_divisible_t():
    for args in [(4, 2, 4, 3), (228, 30, 38, 7)]:
        pres = validate(*args)
        assert normalize(pres) == pres
        assert normalization_exponent(pres) == 1


def test_normalize_all_small_presentations():
    for pres in valid_presentations(120, normalized=False):
        out = normalize(pres)
        assert out.n % out.t == 0
        assert out.t == math.gcd(pres.n, pres.t)
        validate(*out.as_tuple())
        assert normalize(out) == out
        assert math.gcd(normalization_exponent(pres), pres.m) == 1


def test_normalize_relations_hold_in_original_group():
    for pres in valid_presentations(60, normalized=False):
        out = normalize(pres)
        v = normalization_exponent(pres)
        a = Element(1 % pres.n, 0)
        b_new = group.power(pres, group.element(pres, 0, 1), v)
        assert group.power(pres, b_new, pres.m) == group.power(pres, a, out.t)
        conj = group.mul(pres, group.mul(pres, b_new, a), group.inv(pres, b_new))
        assert conj == group.power(pres, a, out.r)


def test_normalized_group_has_same_automorphism_count():
    # brute force needs no t | n, so it can count Aut on the original presentation
    for pres in valid_presentations(36, normalized=False):
        if pres.n % pres.t == 0:
            continue
        original = len(brute_enumerate(pres).automorphisms)
        assert count(build_context(normalize(pres))) == original, pres


def test_context_example():
    ctx = context_for(228, 30, 38, 7)
    assert ctx.d == 6
    assert ctx.m0 == 3
    assert classes(ctx) == {
        LambdaClass.LAMBDA1: [2, 3],
        LambdaClass.LAMBDA2: [19],
        LambdaClass.LAMBDA_PRIME: [5],
    }
    prof = {p.p: (p.alpha, p.beta, p.gamma, p.delta) for p in ctx.profiles}
    assert prof[2] == (2, 1, 1, 1)
    assert prof[3] == (1, 1, 0, 1)
    assert prof[19] == (1, 0, 1, 0)
    assert prof[5][1] == 1
    assert ctx.epsilon == padic_deg(2, 8) == 3


def test_context_quaternion():
    ctx = context_for(4, 2, 2, 3)
    assert ctx.d == 2
    assert [p.p for p in ctx.profiles] == [2]
    assert ctx.primes(LambdaClass.LAMBDA1) == [2]
    assert ctx.m0 == 1


def test_context_s3():
    ctx = context_for(3, 2, 3, 2)
    assert ctx.d == 1
    assert ctx.primes(LambdaClass.LAMBDA2) == [3]
    assert ctx.primes(LambdaClass.LAMBDA_PRIME) == [2]
    assert ctx.primes(LambdaClass.LAMBDA1) == []
    assert ctx.m0 == 2
    assert ctx.epsilon is None  # r = 2 is even


def test_context_abelian_has_infinite_delta():
    ctx = context_for(12, 2, 12, 1)
    assert all(p.delta == INFINITY for p in ctx.profiles)
    assert ctx.primes(LambdaClass.LAMBDA1) == [2, 3]
    assert ctx.d == 12


def test_build_context_requires_t_dividing_n():
    with pytest.raises(ValueError):
        build_context(validate(8, 2, 6, 5))


def test_context_invariants_small():
    for ctx in map(build_context, valid_presentations(120)):
        n, m = ctx.n, ctx.m
        assert math.prod(p.p**p.alpha for p in ctx.profiles) == n
        assert math.prod(p.p**p.beta for p in ctx.profiles) == m
        assert ctx.d == math.gcd(ctx.r - 1, n)
        assert m % ctx.m0 == 0
        for prof in ctx.profiles:
            if prof.alpha > 0:
                assert padic_deg(prof.p, ctx.d) == min(prof.alpha, prof.delta)
            if prof.lambda_class is LambdaClass.LAMBDA2:
                assert pow(ctx.r, ctx.m0, prof.p**prof.alpha) == 1
                assert prof.p != 2
        if not ctx.primes(LambdaClass.LAMBDA2):
            assert ctx.m0 == 1


def test_mu_examples():
    assert mu(context_for(228, 30, 38, 7), 15) == 0
    # alpha=3, delta=2, beta=2, gamma=3: min(beta, gamma) = 2 != alpha - delta = 1
    ctx = context_for(8, 4, 8, 5)
    assert mu(ctx, 1) == 0
    # alpha=3, delta=2, beta=2, gamma=1: all three defining clauses hold for odd y1
    ctx = context_for(8, 4, 2, 5)
    assert mu(ctx, 1) == 1
    assert mu(ctx, 3) == 1
    assert mu(ctx, 2) == 0


def test_mu_requires_two_in_lambda1():
    with pytest.raises(ValueError):
        mu(context_for(3, 2, 3, 2), 0)
    with pytest.raises(ValueError):
        mu(context_for(5, 4, 5, 2), 0)
