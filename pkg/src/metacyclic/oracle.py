"""Brute-force automorphism decisions from group arithmetic alone.

Nothing here looks at prime profiles or congruence clauses: an automorphism is
a quadruple whose images satisfy the three defining relations and whose
induced map on all n*m elements is injective.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import group
from .endomorphism import EndoSpec, is_well_defined_oracle
from .errors import ResourceLimitError
from .group import Element

DEFAULT_ELEMENT_LIMIT = 10_000
DEFAULT_BUDGET = 2 * 10**8  # quadruples scanned by brute_enumerate
# Cayley tables are built only up to this many elements
_TABLE_LIMIT = 2048


def _check_elements(G, limit: int) -> None:
    if G.n * G.m > limit:
        raise ResourceLimitError(
            f"|H| = {G.n * G.m} exceeds the oracle element limit {limit}"
        )


def _r_powers(G) -> np.ndarray:
    out = np.empty(G.m, dtype=np.int64)
    x = 1 % G.n
    for v in range(G.m):
        out[v] = x
        x = x * G.r % G.n
    return out


def _powers(G, e: Element, count: int) -> tuple[np.ndarray, np.ndarray]:
    us = np.empty(count, dtype=np.int64)
    vs = np.empty(count, dtype=np.int64)
    cur = Element(0, 0)
    for k in range(count):
        us[k], vs[k] = cur
        cur = group.mul(G, cur, e)
    return us, vs


def image_is_bijective(G, spec: EndoSpec, r_powers: np.ndarray | None = None) -> bool:
    """Injectivity of a^u b^v -> s(a)^u s(b)^v over all n*m elements (presence bitmap)."""
    n, m = G.n, G.m
    if r_powers is None:
        r_powers = _r_powers(G)
    au, av = _powers(G, Element(spec.x1, spec.y1), n)
    bu, bv = _powers(G, Element(spec.x2, spec.y2), m)
    u, v = group.mul_arrays(G, r_powers, au[:, None], av[:, None], bu[None, :], bv[None, :])
    seen = np.zeros(n * m, dtype=bool)
    seen[(u * m + v).ravel()] = True
    return bool(seen.all())


def is_automorphism_brute(G, spec: EndoSpec, limit: int = DEFAULT_ELEMENT_LIMIT) -> bool:
    _check_elements(G, limit)
    if not is_well_defined_oracle(G, spec):
        return False
    return image_is_bijective(G, spec)


@dataclass
class OracleReport:
    presentation: object
    total_quadruples: int
    automorphisms: list[EndoSpec] = field(default_factory=list)
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "presentation": list(self.presentation.as_tuple()),
            "total_quadruples": self.total_quadruples,
            "aut_order": len(self.automorphisms),
            "elapsed": round(self.elapsed, 6),
        }


class _Tables:
    """Cayley table, inverses and powers of a small group, indexed by u*m + v."""

    def __init__(self, G):
        n, m = G.n, G.m
        N = n * m
        elems = [Element(i // m, i % m) for i in range(N)]
        self.mul = np.array(
            [[group.index(G, group.mul(G, x, y)) for y in elems] for x in elems],
            dtype=np.int32,
        )
        self.inv = np.array([group.index(G, group.inv(G, x)) for x in elems], dtype=np.int32)
        top = max(n, m, G.t, G.r) + 1
        pw = np.zeros((N, top), dtype=np.int32)
        for k in range(1, top):
            pw[:, k] = self.mul[pw[:, k - 1], np.arange(N)]
        self.pow = pw


def _scan_tables(G, tabs: _Tables, ga_range) -> list[EndoSpec]:
    n, m, t, r = G.n, G.m, G.t, G.r
    N = n * m
    mul, inv, pw = tabs.mul, tabs.inv, tabs.pow
    pw_list = pw.tolist()
    mul_list = mul.tolist()
    inv_list = inv.tolist()
    # bucket images of b by the value of b^m so the b^m = a^t check is a lookup
    by_bm: dict[int, list[int]] = {}
    for gb in range(N):
        by_bm.setdefault(pw_list[gb][m], []).append(gb)
    found = []
    for ga in ga_range:
        row_a = pw_list[ga]
        if row_a[n] != 0:
            continue
        target = row_a[r]
        pa = pw[ga, :n]
        for gb in by_bm.get(row_a[t], ()):
            if mul_list[mul_list[gb][ga]][inv_list[gb]] != target:
                continue
            img = mul[pa[:, None], pw[gb, :m][None, :]]
            seen = np.zeros(N, dtype=bool)
            seen[img.ravel()] = True
            if seen.all():
                found.append(EndoSpec(ga // m, ga % m, gb // m, gb % m))
    return found


def _scan_direct(G, ga_range) -> list[EndoSpec]:
    n, m = G.n, G.m
    rp = _r_powers(G)
    found = []
    for ga in ga_range:
        x1, y1 = divmod(ga, m)
        for x2 in range(n):
            for y2 in range(m):
                spec = EndoSpec(x1, y1, x2, y2)
                if is_well_defined_oracle(G, spec) and image_is_bijective(G, spec, rp):
                    found.append(spec)
    return found


def _scan_task(args):
    G, start, stop = args
    rng = range(start, stop)
    if G.n * G.m <= _TABLE_LIMIT:
        return _scan_tables(G, _Tables(G), rng)
    return _scan_direct(G, rng)


def brute_enumerate(G, budget: int = DEFAULT_BUDGET, workers: int = 1) -> OracleReport:
    """Scan every canonical quadruple; the result is sorted by (y1, y2, x1, x2)."""
    N = G.n * G.m
    total = N * N
    if total > budget:
        raise ResourceLimitError(
            f"{total} quadruples exceed the oracle budget {budget}; "
            "use the congruence-based enumeration instead"
        )
    start = time.perf_counter()
    pres = getattr(G, "presentation", G)
    if workers <= 1:
        found = _scan_task((pres, 0, N))
    else:
        step = -(-N // workers)
        jobs = [(pres, lo, min(N, lo + step)) for lo in range(0, N, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            found = [s for part in pool.map(_scan_task, jobs) for s in part]
    found.sort(key=lambda s: (s.y1, s.y2, s.x1, s.x2))
    return OracleReport(pres, total, found, time.perf_counter() - start)


@dataclass
class Disagreement:
    spec: EndoSpec
    theorem: bool
    oracle: bool
    failed_clause: str | None

    def as_dict(self) -> dict:
        return {
            **self.spec.as_dict(),
            "theorem": self.theorem,
            "oracle": self.oracle,
            "failed_clause": self.failed_clause,
        }


@dataclass
class EquivalenceReport:
    presentation: object
    equal: bool
    theorem_count: int | None
    oracle_count: int | None
    checked: int
    mismatches: list[Disagreement]
    mode: str

    def as_dict(self) -> dict:
        return {
            "presentation": list(self.presentation.as_tuple()),
            "equal": self.equal,
            "mode": self.mode,
            "theorem_count": self.theorem_count,
            "oracle_count": self.oracle_count,
            "checked": self.checked,
            "mismatches": [d.as_dict() for d in self.mismatches],
        }


def verify_equivalence(
    ctx,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    sample: int | None = None,
    seed: int = 0,
) -> EquivalenceReport:
    """Compare the congruence-based automorphism set with the brute-force one.

    With ``sample=None`` both full sets are computed (subject to ``budget``).
    Otherwise ``sample`` accepted and ``sample`` rejected quadruples, drawn
    uniformly, are re-decided by ``is_automorphism_brute``.
    """
    from .automorphism import enumerate_automorphisms, theorem_accepts

    theorem_set = list(enumerate_automorphisms(ctx, workers=workers))
    if sample is None:
        report = brute_enumerate(ctx, budget=budget, workers=workers)
        a, b = set(theorem_set), set(report.automorphisms)
        mismatches = [
            Disagreement(s, s in a, s in b, _clause(theorem_accepts(ctx, s)))
            for s in sorted(a ^ b, key=lambda s: (s.y1, s.y2, s.x1, s.x2))
        ]
        return EquivalenceReport(
            ctx.presentation, not mismatches, len(a), len(b), report.total_quadruples,
            mismatches, "full",
        )

    rng = random.Random(seed)
    accepted = set(theorem_set)
    picks = rng.sample(theorem_set, min(sample, len(theorem_set)))
    n, m = ctx.n, ctx.m
    total = n * n * m * m
    rejected: set[EndoSpec] = set()
    limit = min(sample, total - len(accepted))
    while len(rejected) < limit:
        s = EndoSpec(rng.randrange(n), rng.randrange(m), rng.randrange(n), rng.randrange(m))
        if s not in accepted:
            rejected.add(s)
    mismatches = []
    limit_elems = max(DEFAULT_ELEMENT_LIMIT, n * m)
    for s in picks:
        if not is_automorphism_brute(ctx, s, limit_elems):
            mismatches.append(Disagreement(s, True, False, None))
    for s in sorted(rejected):
        if is_automorphism_brute(ctx, s, limit_elems):
            mismatches.append(Disagreement(s, False, True, _clause(theorem_accepts(ctx, s))))
    return EquivalenceReport(
        ctx.presentation, not mismatches, len(theorem_set), None,
        len(picks) + len(rejected), mismatches, "sampled",
    )


def _clause(verdict) -> str | None:
    return verdict.failed_clause.value if verdict.failed_clause else None
