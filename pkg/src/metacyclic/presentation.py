"""Presentations <a, b | a^n = e, b^m = a^t, b a b^-1 = a^r> and their prime data."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import PresentationError
from .numtheory import factorize, gcd_ext, mul_order, padic_deg, prime_divisors

MAX_PARAM = 2**31 - 1


@dataclass(frozen=True)
class Presentation:
    n: int
    m: int
    t: int
    r: int

    def __str__(self) -> str:
        return f"H({self.n},{self.m};{self.t},{self.r})"

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.m, self.t, self.r)

    @property
    def order(self) -> int:
        return self.n * self.m


def validate(n: int, m: int, t: int, r: int) -> Presentation:
    """Check ``r^m = 1`` and ``t(r-1) = 0`` mod n and return the canonical form.

    ``t`` and ``r`` are wrapped into ``1..n``.
    """
    for name, value in (("n", n), ("m", m), ("t", t), ("r", r)):
        if not 1 <= value <= MAX_PARAM:
            raise PresentationError(f"{name}={value} outside 1..{MAX_PARAM}")
    t = (t - 1) % n + 1
    r = (r - 1) % n + 1
    if (pow(r, m, n) - 1) % n:
        raise PresentationError(f"r^m - 1 = {r}^{m} - 1 is not 0 (mod {n})")
    if t * (r - 1) % n:
        raise PresentationError(f"t(r-1) = {t}*{r - 1} is not 0 (mod {n})")
    return Presentation(n, m, t, r)


def parse_presentation(text: str) -> Presentation:
    """Parse ``"n,m,t,r"``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected n,m,t,r but got {text!r}")
    return validate(*(int(p) for p in parts))


def normalization_exponent(pres: Presentation) -> int:
    """Exponent ``v'`` such that ``b' = b^v'`` gives a presentation with t' = (n, t).

    Returns 1 when ``t`` already divides ``n``.
    """
    n, m, t = pres.n, pres.m, pres.t
    if n % t == 0:
        return 1
    g, _, v = gcd_ext(n, t)
    k = n // g
    # all Bezout coefficients for t are v + j*k; pick the smallest |v|, ties positive
    v %= k
    if 2 * v > k:
        v -= k
    w = math.prod(p for p in prime_divisors(m) if v % p)
    return v + w * k


def normalize(pres: Presentation) -> Presentation:
    """Rewrite ``pres`` so that ``t`` divides ``n`` (identity if it already does)."""
    if pres.n % pres.t == 0:
        return pres
    v = normalization_exponent(pres)
    g = math.gcd(pres.n, pres.t)
    return validate(pres.n, pres.m, g, pow(pres.r, v, pres.n))


class LambdaClass(enum.Enum):
    LAMBDA1 = "Lambda1"  # p | n and p | r-1
    LAMBDA2 = "Lambda2"  # p | n, p does not divide r-1
    LAMBDA_PRIME = "Lambda'"  # p does not divide n


@dataclass(frozen=True)
class PrimeProfile:
    p: int
    alpha: int
    beta: int
    gamma: int
    delta: int | float  # INFINITY when r == 1
    lambda_class: LambdaClass

    def as_dict(self) -> dict:
        delta = self.delta if self.delta != math.inf else "inf"
        return {
            "p": self.p,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "delta": delta,
            "class": self.lambda_class.value,
        }


@dataclass(frozen=True)
class GroupContext:
    presentation: Presentation
    d: int
    epsilon: int | float | None
    m0: int
    profiles: tuple[PrimeProfile, ...]

    @property
    def n(self) -> int:
        return self.presentation.n

    @property
    def m(self) -> int:
        return self.presentation.m

    @property
    def t(self) -> int:
        return self.presentation.t

    @property
    def r(self) -> int:
        return self.presentation.r

    @property
    def order(self) -> int:
        return self.presentation.order

    @cached_property
    def r_powers(self) -> tuple[int, ...]:
        """``r^v mod n`` for ``0 <= v < m``."""
        out, x = [], 1 % self.n
        for _ in range(self.m):
            out.append(x)
            x = x * self.r % self.n
        return tuple(out)

    def profile(self, p: int) -> PrimeProfile | None:
        for prof in self.profiles:
            if prof.p == p:
                return prof
        return None

    def primes(self, cls: LambdaClass) -> list[int]:
        return [prof.p for prof in self.profiles if prof.lambda_class is cls]

    def as_dict(self) -> dict:
        eps = self.epsilon
        if eps == math.inf:
            eps = "inf"
        return {
            "n": self.n,
            "m": self.m,
            "t": self.t,
            "r": self.r,
            "d": self.d,
            "epsilon": eps,
            "m0": self.m0,
            "Lambda1": self.primes(LambdaClass.LAMBDA1),
            "Lambda2": self.primes(LambdaClass.LAMBDA2),
            "Lambda_prime": self.primes(LambdaClass.LAMBDA_PRIME),
            "profiles": [prof.as_dict() for prof in self.profiles],
        }


def _profile(p: int, pres: Presentation) -> PrimeProfile:
    alpha = padic_deg(p, pres.n)
    delta = padic_deg(p, pres.r - 1)
    if alpha == 0:
        cls = LambdaClass.LAMBDA_PRIME
    elif delta > 0:
        cls = LambdaClass.LAMBDA1
    else:
        cls = LambdaClass.LAMBDA2
    return PrimeProfile(
        p=p,
        alpha=alpha,
        beta=padic_deg(p, pres.m),
        gamma=padic_deg(p, pres.t),
        delta=delta,
        lambda_class=cls,
    )


def build_context(pres: Presentation) -> GroupContext:
    if pres.n % pres.t:
        raise ValueError(f"{pres} is not normalized (t must divide n)")
    n, r = pres.n, pres.r
    profiles = tuple(_profile(p, pres) for p, _ in factorize(n * pres.m))
    d = math.gcd(r - 1, n)
    epsilon = padic_deg(2, r + 1) if r % 2 else None
    lambda2_part = math.prod(
        prof.p**prof.alpha for prof in profiles
        if prof.lambda_class is LambdaClass.LAMBDA2
    )
    m0 = mul_order(r, lambda2_part)
    ctx = GroupContext(pres, d, epsilon, m0, profiles)
    _check_consistency(ctx)
    return ctx


def context_for(n: int, m: int, t: int, r: int) -> GroupContext:
    """Validate, normalize and profile in one step."""
    return build_context(normalize(validate(n, m, t, r)))


def _check_consistency(ctx: GroupContext) -> None:
    # Consequences of r^m = t(r-1) = 0 (mod n); a failure here is a bug.
    for prof in ctx.profiles:
        p, a, b, g, dl = prof.p, prof.alpha, prof.beta, prof.gamma, prof.delta
        if a > 0 and padic_deg(p, ctx.d) != min(a, dl):
            raise AssertionError(f"deg_{p}(d) != min(alpha, delta)")
        if prof.lambda_class is LambdaClass.LAMBDA1:
            if not a - dl <= g <= a:
                raise AssertionError(f"gamma bounds fail at p={p}")
            if p == 2 and dl == 1 and b > 0:
                if ctx.epsilon + b < a:
                    raise AssertionError("epsilon + beta_2 < alpha_2")
            elif dl + b < a:
                raise AssertionError(f"delta + beta < alpha at p={p}")
        elif prof.lambda_class is LambdaClass.LAMBDA2:
            if g != a:
                raise AssertionError(f"gamma != alpha at p={p}")
    if ctx.m % ctx.m0:
        raise AssertionError("m0 does not divide m")


def mu(ctx: GroupContext, y1: int) -> int:
    """2-adic correction term entering the p = 2 congruence for y2."""
    prof = ctx.profile(2)
    if prof is None or prof.lambda_class is not LambdaClass.LAMBDA1:
        raise ValueError("mu is only defined when 2 divides both n and r-1")
    a, b, g, dl = prof.alpha, prof.beta, prof.gamma, prof.delta
    # with alpha <= delta the only consumer reduces mod 2^0, so no fraction is needed
    if a - dl < 1:
        return 0
    if g != b and min(b, g) == a - dl and padic_deg(2, y1) == b - dl:
        return 2 ** (a - dl - 1)
    return 0
