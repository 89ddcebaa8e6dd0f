"""Normal-form arithmetic in H(n, m; t, r).

Elements are pairs ``(u, v)`` standing for ``a^u b^v`` with ``0 <= u < n`` and
``0 <= v < m``.  Functions take anything exposing ``n, m, t, r`` (a
``Presentation`` or a ``GroupContext``); none of them needs ``t | n``.

Powers use ``(a^u b^v)^k = a^(u [k]_{r^v}) b^(vk)``.  The base of the geometric
sum is ``r^v``, not ``r``: expanding ``(a^u b^v)^2 = a^(u + r^v u) b^(2v)``
shows the plain-``r`` form only holds for ``v = 1``.
"""

from __future__ import annotations

import re
from typing import Iterator, NamedTuple

import numpy as np

from .errors import ResourceLimitError
from .numtheory import geom_sum

DEFAULT_ELEMENT_LIMIT = 10_000


class Element(NamedTuple):
    u: int
    v: int

    def __str__(self) -> str:
        return f"a^{self.u}*b^{self.v}"


def identity(G) -> Element:
    return Element(0, 0)


def element(G, u: int, v: int) -> Element:
    """Canonical form of the word ``a^u b^v`` for arbitrary integers u, v >= 0."""
    q, v = divmod(v, G.m)
    return Element((u + G.t * q) % G.n, v)


def mul(G, e1: Element, e2: Element) -> Element:
    n, m = G.n, G.m
    u = e1.u + pow(G.r, e1.v, n) * e2.u
    v = e1.v + e2.v
    if v >= m:
        u += G.t
        v -= m
    return Element(u % n, v)


def inv(G, e: Element) -> Element:
    n, m = G.n, G.m
    if e.v == 0:
        return Element(-e.u % n, 0)
    # (a^u b^v)(a^x b^(m-v)) = a^(u + r^v x + t), so x = -r^(m-v) (u + t)
    return Element(-pow(G.r, m - e.v, n) * (e.u + G.t) % n, m - e.v)


def power(G, e: Element, k: int) -> Element:
    if k < 0:
        return power(G, inv(G, e), -k)
    n, m = G.n, G.m
    base = pow(G.r, e.v, n)
    q, v = divmod(e.v * k, m)
    return Element((e.u * geom_sum(k, base, n) + G.t * q) % n, v)


def commutator(G, e1: Element, e2: Element) -> Element:
    """``e1 e2 e1^-1 e2^-1``, which always lies in <a>."""
    n = G.n
    x = (pow(G.r, e1.v, n) - 1) * e2.u - (pow(G.r, e2.v, n) - 1) * e1.u
    return Element(x % n, 0)


def _divisors(k: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= k:
        if k % i == 0:
            small.append(i)
            if i * i != k:
                large.append(k // i)
        i += 1
    return small + large[::-1]


def element_order(G, e: Element) -> int:
    for k in _divisors(G.n * G.m):
        if power(G, e, k) == (0, 0):
            return k
    raise AssertionError("element order does not divide |H|")


def all_elements(G, limit: int = DEFAULT_ELEMENT_LIMIT) -> Iterator[Element]:
    if G.n * G.m > limit:
        raise ResourceLimitError(
            f"group has {G.n * G.m} elements, limit is {limit}"
        )
    return (Element(u, v) for u in range(G.n) for v in range(G.m))


def index(G, e: Element) -> int:
    """Position of ``e`` in ``all_elements`` order."""
    return e.u * G.m + e.v


def mul_arrays(G, r_powers: np.ndarray, u1, v1, u2, v2):
    """Vectorised ``mul`` on int64 arrays; ``r_powers[v] = r^v mod n``."""
    n, m = G.n, G.m
    u = u1 + (r_powers[v1] * u2) % n
    v = v1 + v2
    carry = v >= m
    u = (u + G.t * carry) % n
    v = v - m * carry
    return u, v


_ELEMENT_RE = re.compile(
    r"""^\s*(?:
        \(\s*(?P<tu>-?\d+)\s*,\s*(?P<tv>-?\d+)\s*\)
      | (?:(?P<a>a)(?:\^(?P<u>-?\d+))?)?\s*\*?\s*(?:(?P<b>b)(?:\^(?P<v>-?\d+))?)?
    )\s*$""",
    re.VERBOSE,
)


def parse_element(G, text: str) -> Element:
    """Parse ``"(u,v)"``, ``"a^u*b^v"``, ``"a^u"``, ``"b^v"``, ``"a*b"`` or ``"e"``."""
    if text.strip() == "e":
        return identity(G)
    match = _ELEMENT_RE.match(text)
    if not match or not any(match.group(k) for k in ("tu", "a", "b")):
        raise ValueError(f"cannot parse element {text!r}")
    if match.group("tu") is not None:
        u, v = int(match.group("tu")), int(match.group("tv"))
    else:
        u = int(match.group("u") or 1) if match.group("a") else 0
        v = int(match.group("v") or 1) if match.group("b") else 0
    # negative exponents: go through inverses of the generators
    a_part = power(G, Element(1 % G.n, 0), u)
    b_part = power(G, element(G, 0, 1), v)
    return mul(G, a_part, b_part)
