"""Integer and modular arithmetic primitives.

Everything here is a pure function on Python ints.  Valuations of zero are
``INFINITY`` (``math.inf``), which compares above every int.
"""

from __future__ import annotations

import math
import random

INFINITY = math.inf

# Deterministic Miller-Rabin witness set, valid for all n < 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _check_modulus(M: int) -> None:
    if M < 1:
        raise ValueError(f"modulus must be >= 1, got {M}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def padic_deg(p: int, x: int) -> int | float:
    """Largest ``s`` with ``p**s | x``; ``INFINITY`` when ``x == 0``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if x == 0:
        return INFINITY
    x = abs(x)
    s = 0
    while x % p == 0:
        x //= p
        s += 1
    return s


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, g = rng.randrange(1, n), rng.randrange(1, n), 1
        x = y
        while g == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            g = math.gcd(abs(x - y), n)
        if g != n:
            return g


def factorize(k: int) -> list[tuple[int, int]]:
    """Prime factorization of ``k >= 1`` as ``[(p, e), ...]`` with p increasing."""
    if k < 1:
        raise ValueError(f"cannot factor {k}")
    counts: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while k % p == 0:
            counts[p] = counts.get(p, 0) + 1
            k //= p
    stack = [k] if k > 1 else []
    rng = random.Random(0x5EED)
    while stack:
        f = stack.pop()
        if is_prime(f):
            counts[f] = counts.get(f, 0) + 1
            continue
        d = _pollard_rho(f, rng)
        stack.extend((d, f // d))
    return sorted(counts.items())


def prime_divisors(k: int) -> list[int]:
    return [p for p, _ in factorize(k)]


def pow_mod(s: int, e: int, M: int) -> int:
    """``s**e mod M`` with ``0**0 == 1`` (reduced, so M == 1 gives 0)."""
    _check_modulus(M)
    if e < 0:
        raise ValueError("negative exponent")
    return pow(s, e, M)


def geom_sum(u: int, s: int, M: int) -> int:
    """``1 + s + ... + s**(u-1) mod M`` (zero for ``u == 0``).

    Binary splitting on the bits of ``u``: keep the pair ``([k]_s, s**k)`` and
    use ``[2k] = [k](1 + s^k)`` and ``[k+1] = 1 + s[k]``.
    """
    _check_modulus(M)
    if u < 0:
        raise ValueError("negative length")
    s %= M
    total, power = 0, 1 % M
    for bit in bin(u)[2:]:
        total = total * (1 + power) % M
        power = power * power % M
        if bit == "1":
            total = (1 + s * total) % M
            power = power * s % M
    return total


def euler_phi(M: int) -> int:
    result = M
    for p, _ in factorize(M):
        result = result // p * (p - 1)
    return result


def mul_order(r: int, M: int) -> int:
    """Multiplicative order of ``r`` modulo ``M``.

    Starts from phi(M) and strips prime factors while the power stays 1.
    """
    _check_modulus(M)
    if math.gcd(r, M) != 1:
        raise ValueError(f"{r} is not a unit modulo {M}")
    if M == 1:
        return 1
    k = euler_phi(M)
    for q, _ in factorize(k):
        while k % q == 0 and pow(r, k // q, M) == 1:
            k //= q
    return k


def gcd_ext(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``u*a + v*b == g == gcd(a, b) > 0``."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v
