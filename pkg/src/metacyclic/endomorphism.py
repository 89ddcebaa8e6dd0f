"""Endomorphisms given by generator images a -> a^x1 b^y1, b -> a^x2 b^y2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import group
from .group import Element
from .numtheory import geom_sum


class EndoSpec(NamedTuple):
    x1: int
    y1: int
    x2: int
    y2: int

    def as_dict(self) -> dict:
        return self._asdict()

    def __str__(self) -> str:
        return f"{self.x1},{self.y1},{self.x2},{self.y2}"


def canonical(G, x1: int, y1: int, x2: int, y2: int) -> EndoSpec:
    """Reduce generator images to normal form (a negative or large y carries into x)."""
    ea = group.element(G, x1 % G.n, y1) if y1 >= 0 else _word(G, x1, y1)
    eb = group.element(G, x2 % G.n, y2) if y2 >= 0 else _word(G, x2, y2)
    return EndoSpec(ea.u, ea.v, eb.u, eb.v)


def _word(G, x: int, y: int) -> Element:
    a = group.power(G, Element(1 % G.n, 0), x)
    return group.mul(G, a, group.power(G, group.element(G, 0, 1), y))


def parse_spec(G, text: str) -> EndoSpec:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected x1,y1,x2,y2 but got {text!r}")
    return canonical(G, *(int(p) for p in parts))


def identity_spec(G) -> EndoSpec:
    b = group.element(G, 0, 1)
    return EndoSpec(1 % G.n, 0, b.u, b.v)


@dataclass(frozen=True)
class WellDefinedness:
    ok: bool
    failed: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_well_defined(ctx, spec: EndoSpec) -> WellDefinedness:
    """Decide whether the generator images extend to a homomorphism.

    Three congruences: ``m | (d, t) y1``, then (with ``q = t y1 / m`` exact)
    the ``b^m = a^t`` relation and the conjugation relation, both mod n.
    """
    n, m, t, r = ctx.n, ctx.m, ctx.t, ctx.r
    x1, y1, x2, y2 = spec
    if math.gcd(ctx.d, t) * y1 % m:
        return WellDefinedness(False, "condition1", f"m={m} does not divide (d,t)*y1")
    q = t * y1 // m
    q_r = (r - 1) * y1 // m
    ry1 = pow(r, y1, n)
    ry2 = pow(r, y2, n)
    lhs2 = x2 * geom_sum(m, ry2, n) + t * y2 - x1 * geom_sum(t, ry1, n) - q * t
    if lhs2 % n:
        return WellDefinedness(False, "condition2", "image of b^m differs from image of a^t")
    lhs3 = (ry1 - 1) * x2 + (geom_sum(r, ry1, n) - ry2) * x1 + q_r * t
    if lhs3 % n:
        return WellDefinedness(False, "condition3", "image of b a b^-1 differs from image of a^r")
    return WellDefinedness(True)


def is_well_defined_oracle(G, spec: EndoSpec) -> bool:
    """Check the three defining relations on the images directly."""
    sa = Element(spec.x1 % G.n, spec.y1 % G.m)
    sb = Element(spec.x2 % G.n, spec.y2 % G.m)
    if group.power(G, sa, G.n) != (0, 0):
        return False
    if group.power(G, sb, G.m) != group.power(G, sa, G.t):
        return False
    conj = group.mul(G, group.mul(G, sb, sa), group.inv(G, sb))
    return conj == group.power(G, sa, G.r)


def apply(G, spec: EndoSpec, e: Element) -> Element:
    """Image of ``a^u b^v`` under the endomorphism, via the closed formula."""
    n = G.n
    x1, y1, x2, y2 = spec
    u, v = e
    s1 = pow(G.r, y1, n)
    s2 = pow(G.r, y2, n)
    # r^(y1 u) is read mod n; r^m = 1 makes the exponent's size irrelevant
    x = x1 * geom_sum(u, s1, n) + pow(G.r, y1 * u, n) * x2 * geom_sum(v, s2, n)
    return group.element(G, x, y1 * u + y2 * v)


def compose(G, s1: EndoSpec, s2: EndoSpec) -> EndoSpec:
    """Quadruple of ``s1 o s2`` (apply s2 first)."""
    ia = apply(G, s1, Element(s2.x1, s2.y1))
    ib = apply(G, s1, Element(s2.x2, s2.y2))
    return EndoSpec(ia.u, ia.v, ib.u, ib.v)
