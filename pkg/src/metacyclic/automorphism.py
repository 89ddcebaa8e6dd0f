"""Automorphisms of H(n, m; t, r) characterised by congruences on (x1, y1, x2, y2).

``theorem_accepts`` is the scalar decision procedure with diagnostics.
``enumerate_automorphisms`` evaluates the same clauses on whole (x1, x2)
grids with numpy, one (y1, y2) pair at a time.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .endomorphism import EndoSpec, compose, identity_spec, is_well_defined
from .numtheory import geom_sum, padic_deg
from .presentation import GroupContext, LambdaClass, mu

L1, L2, LP = LambdaClass.LAMBDA1, LambdaClass.LAMBDA2, LambdaClass.LAMBDA_PRIME

# rows of the (x1, x2) grid handled per numpy batch
_CHUNK_CELLS = 1 << 22


class Clause(str, enum.Enum):
    WELLDEF = "WELLDEF"
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"


@dataclass(frozen=True)
class TheoremVerdict:
    accepted: bool
    failed_clause: Clause | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "failed_clause": self.failed_clause.value if self.failed_clause else None,
            "detail": self.detail,
        }


def _pmod(p: int, e) -> int:
    """``p**e`` with nonpositive (or -inf) exponents clamped to modulus 1."""
    return p ** int(e) if e > 0 else 1


@dataclass(frozen=True)
class _TwoAdicCase:
    kind: Clause | None  # IV, V, VI, or None for the case no 2-clause covers
    prof: object


def _two_adic_case(ctx: GroupContext) -> _TwoAdicCase | None:
    prof = ctx.profile(2)
    if prof is None or prof.lambda_class is not L1:
        return None
    a, b, g, dl = prof.alpha, prof.beta, prof.gamma, prof.delta
    if dl > 1 or (dl == 1 and a == 1):
        return _TwoAdicCase(Clause.IV, prof)
    # here delta_2 == 1 and alpha_2 > 1
    if g == 1 and a == 2 and b > 1:
        return _TwoAdicCase(Clause.V, prof)
    if g > 1:
        return _TwoAdicCase(Clause.VI, prof)
    # delta_2 = gamma_2 = 1, alpha_2 = 2, beta_2 = 1: the 2-part of the
    # well-definedness congruences already follows from clause (i)
    return _TwoAdicCase(None, prof)


class _Unit(enum.Enum):
    """Which quantity must be a unit mod p for clause (i)."""

    Y2 = "y2"
    X1 = "x1"
    X1_Y2 = "x1 and y2"
    X1M_TY1 = "m*x1 + t*y1"
    DET = "x1*y2 - x2*y1"


def _unit_kind(ctx: GroupContext, prof) -> _Unit | None:
    """Clause (i) at one prime.

    The abelianisation is Z^2 / <(d, 0), (-t, m)>.  Its quotient mod p has
    dimension 2 - rank of that relation matrix mod p, and the induced map is
    invertible iff it is surjective there.  Primes of Lambda2 also need
    ``p ∤ x1`` for injectivity on the commutator subgroup.
    """
    p = prof.p
    if prof.lambda_class is not L1:
        # p does not divide d: only b survives mod p, and only if p | m
        if prof.lambda_class is L2:
            return _Unit.X1_Y2 if prof.beta > 0 else _Unit.X1
        return _Unit.Y2 if prof.beta > 0 else None
    if prof.beta == 0:
        return _Unit.X1M_TY1
    if ctx.t % p:
        return _Unit.Y2
    return _Unit.DET


def _reject(clause: Clause, detail: str) -> TheoremVerdict:
    return TheoremVerdict(False, clause, detail)


def theorem_accepts(
    ctx: GroupContext, spec: EndoSpec, check_welldef: bool = True
) -> TheoremVerdict:
    """Decide whether ``spec`` (in canonical range) is an automorphism.

    Clauses run in the order WELLDEF, I..VI and the first failure is reported.
    ``check_welldef=False`` evaluates clauses I..VI alone.
    """
    n, m, t = ctx.n, ctx.m, ctx.t
    x1, y1, x2, y2 = spec

    if check_welldef:
        wd = is_well_defined(ctx, spec)
        if not wd:
            return _reject(Clause.WELLDEF, f"{wd.failed}: {wd.detail}")

    for prof in ctx.profiles:
        kind = _unit_kind(ctx, prof)
        p = prof.p
        if kind is _Unit.Y2 and y2 % p == 0:
            return _reject(Clause.I, f"{p} divides y2")
        if kind is _Unit.X1_Y2 and (x1 % p == 0 or y2 % p == 0):
            return _reject(Clause.I, f"{p} divides x1 or y2")
        if kind is _Unit.X1 and x1 % p == 0:
            return _reject(Clause.I, f"{p} divides x1")
        if kind is _Unit.X1M_TY1 and (x1 * m + t * y1) % p == 0:
            return _reject(Clause.I, f"{p} divides m*x1 + t*y1")
        if kind is _Unit.DET and (x1 * y2 - x2 * y1) % p == 0:
            return _reject(Clause.I, f"{p} divides x1*y2 - x2*y1")

    if math.gcd(ctx.d, t) * y1 % m:
        return _reject(Clause.II, "m does not divide (d,t)*y1")
    if y1 % ctx.m0:
        return _reject(Clause.II, f"m0={ctx.m0} does not divide y1")
    if (y2 - 1) % ctx.m0:
        return _reject(Clause.II, f"m0={ctx.m0} does not divide y2-1")

    q = t * y1 // m
    for prof in ctx.profiles:
        if prof.lambda_class is not L1 or prof.p == 2:
            continue
        P = prof.p**prof.alpha
        if (m * x2 - t * (x1 + q - y2)) % P:
            return _reject(Clause.III, f"m*x2 != t(x1 + ty1/m - y2) mod {P}")
        Q = _pmod(prof.p, prof.alpha - prof.delta)
        if (y2 - 1 - q) % Q:
            return _reject(Clause.III, f"y2 != 1 + ty1/m mod {Q}")

    case = _two_adic_case(ctx)
    if case is None or case.kind is None:
        return TheoremVerdict(True)
    a, b, g, dl = case.prof.alpha, case.prof.beta, case.prof.gamma, case.prof.delta
    if case.kind is Clause.IV:
        P = 2**a
        if (m * x2 - t * (x1 + q - y2)) % P:
            return _reject(Clause.IV, f"m*x2 != t(x1 + ty1/m - y2) mod {P}")
        Q = _pmod(2, a - dl)
        if (y2 - 1 - q - mu(ctx, y1)) % Q:
            return _reject(Clause.IV, f"y2 != 1 + ty1/m + mu(y1) mod {Q}")
    elif case.kind is Clause.V:
        if padic_deg(2, y1) < b:
            return _reject(Clause.V, f"deg_2(y1) < beta_2={b}")
    else:
        eps = ctx.epsilon
        if y1 % 2:
            return _reject(Clause.VI, "y1 is odd")
        if padic_deg(2, x2) < a - b - eps + 1:
            return _reject(Clause.VI, "deg_2(x2) too small")
        if (2**eps * (y1 - y2 + 1) - 2 * q) % 2**a:
            return _reject(Clause.VI, f"2^eps (y1 - y2 + 1) != 2ty1/m mod {2**a}")
    return TheoremVerdict(True)


# ---------------------------------------------------------------- enumeration


def _y_candidates(ctx: GroupContext) -> list[tuple[int, int]]:
    """(y1, y2) pairs surviving every clause that involves y alone."""
    m = ctx.m
    step = m // math.gcd(m, math.gcd(ctx.d, ctx.t))
    step = step * ctx.m0 // math.gcd(step, ctx.m0)
    y2_units = [
        prof.p for prof in ctx.profiles
        if _unit_kind(ctx, prof) in (_Unit.Y2, _Unit.X1_Y2)
    ]
    y2s = [
        y2 for y2 in range(m)
        if (y2 - 1) % ctx.m0 == 0 and all(y2 % p for p in y2_units)
    ]
    pairs = []
    case = _two_adic_case(ctx)
    for y1 in range(0, m, step):
        q = ctx.t * y1 // m
        for y2 in y2s:
            ok = True
            for prof in ctx.profiles:
                if prof.lambda_class is L1 and prof.p != 2:
                    if (y2 - 1 - q) % _pmod(prof.p, prof.alpha - prof.delta):
                        ok = False
                        break
            if ok and case is not None and case.kind is not None:
                ok = _two_adic_y_ok(ctx, case, y1, y2, q)
            if ok:
                pairs.append((y1, y2))
    return pairs


def _two_adic_y_ok(ctx, case: _TwoAdicCase, y1: int, y2: int, q: int) -> bool:
    a, b, dl = case.prof.alpha, case.prof.beta, case.prof.delta
    if case.kind is Clause.IV:
        return (y2 - 1 - q - mu(ctx, y1)) % _pmod(2, a - dl) == 0
    if case.kind is Clause.V:
        return padic_deg(2, y1) >= b
    eps = ctx.epsilon
    return y1 % 2 == 0 and (2**eps * (y1 - y2 + 1) - 2 * q) % 2**a == 0


def _grid_mask(ctx: GroupContext, y1: int, y2: int, x1: np.ndarray, x2: np.ndarray):
    """Boolean mask over broadcast (x1, x2) arrays for fixed (y1, y2)."""
    n, m, t, r = ctx.n, ctx.m, ctx.t, ctx.r
    q = t * y1 // m
    q_r = (r - 1) * y1 // m
    ry1 = pow(r, y1, n)
    ry2 = pow(r, y2, n)

    # well-definedness, conditions 2 and 3 (condition 1 is a y-filter)
    A = geom_sum(m, ry2, n)
    B = geom_sum(t, ry1, n)
    c0 = (t * y2 - q * t) % n
    mask = ((x2 * A) % n + c0 - (x1 * B) % n) % n == 0
    C = (ry1 - 1) % n
    D = (geom_sum(r, ry1, n) - ry2) % n
    mask &= ((x2 * C) % n + (x1 * D) % n + (q_r * t) % n) % n == 0

    for prof in ctx.profiles:
        p = prof.p
        kind = _unit_kind(ctx, prof)
        if kind in (_Unit.X1, _Unit.X1_Y2):
            mask &= x1 % p != 0
        elif kind is _Unit.X1M_TY1:
            mask &= ((x1 * (m % p)) % p + t * y1 % p) % p != 0
        elif kind is _Unit.DET:
            mask &= ((x1 * (y2 % p)) % p - (x2 * (y1 % p)) % p) % p != 0

    def linear(P: int):
        # m*x2 == t(x1 + q - y2) mod P
        return ((x2 * (m % P)) % P - (x1 * (t % P)) % P - (t * (q - y2)) % P) % P == 0

    for prof in ctx.profiles:
        if prof.lambda_class is L1 and prof.p != 2:
            mask &= linear(prof.p**prof.alpha)
    case = _two_adic_case(ctx)
    if case is not None and case.kind is Clause.IV:
        mask &= linear(2**case.prof.alpha)
    elif case is not None and case.kind is Clause.VI:
        need = case.prof.alpha - case.prof.beta - ctx.epsilon + 1
        if need > 0:
            mask &= x2 % (2 ** int(need)) == 0
    return mask


def _pair_block(ctx: GroupContext, y1: int, y2: int, count_only: bool):
    n = ctx.n
    rows = max(1, _CHUNK_CELLS // n)
    x2 = np.arange(n, dtype=np.int64)[None, :]
    total = 0
    hits = []
    for start in range(0, n, rows):
        x1 = np.arange(start, min(n, start + rows), dtype=np.int64)[:, None]
        mask = _grid_mask(ctx, y1, y2, x1, x2)
        if count_only:
            total += int(mask.sum())
        else:
            i, j = np.nonzero(mask)
            hits.append(np.stack([i + start, j], axis=1))
    if count_only:
        return total
    return np.concatenate(hits) if hits else np.empty((0, 2), dtype=np.int64)


def _pair_task(args):
    ctx, y1, y2, count_only = args
    return _pair_block(ctx, y1, y2, count_only)


def _map_pairs(ctx: GroupContext, count_only: bool, workers: int):
    jobs = [(ctx, y1, y2, count_only) for y1, y2 in _y_candidates(ctx)]
    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            yield job[1], job[2], _pair_task(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves job order, so output is independent of scheduling
        for job, res in zip(jobs, pool.map(_pair_task, jobs)):
            yield job[1], job[2], res


def enumerate_automorphisms(ctx: GroupContext, workers: int = 1) -> Iterator[EndoSpec]:
    """All accepted quadruples, lexicographic in (y1, y2, x1, x2)."""
    for y1, y2, block in _map_pairs(ctx, False, workers):
        for x1, x2 in block.tolist():
            yield EndoSpec(x1, y1, x2, y2)


def count(ctx: GroupContext, workers: int = 1) -> int:
    return sum(res for _, _, res in _map_pairs(ctx, True, workers))


def aut_inverse(ctx: GroupContext, spec: EndoSpec) -> EndoSpec:
    """Inverse automorphism, as the last power of ``spec`` before the identity."""
    verdict = theorem_accepts(ctx, spec)
    if not verdict:
        raise ValueError(f"{spec} is not an automorphism ({verdict.failed_clause.value})")
    ident = identity_spec(ctx)
    prev, cur = ident, spec
    while cur != ident:
        prev, cur = cur, compose(ctx, spec, cur)
    return prev
