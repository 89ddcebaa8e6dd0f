import itertools
import random

import numpy as np
import pytest

from metacyclic import group
from metacyclic.endomorphism import (
    EndoSpec,
    apply,
    canonical,
    compose,
    identity_spec,
    is_well_defined,
    is_well_defined_oracle,
    parse_spec,
)
from metacyclic.group import Element
from metacyclic.presentation import validate

from .conftest import small_contexts


def quadruples(G):
    return itertools.product(range(G.n), range(G.m), range(G.n), range(G.m))


def cayley(G):
    elems = list(group.all_elements(G))
    tab = np.array([[group.index(G, group.mul(G, x, y)) for y in elems] for x in elems])
    return elems, tab


def test_identity_is_well_defined(example_ctx, q8, s3):
    for ctx in (example_ctx, q8, s3):
        spec = identity_spec(ctx)
        assert is_well_defined(ctx, spec)
        assert is_well_defined_oracle(ctx, spec)


def test_well_defined_examples(example_ctx, q8, s3):
    assert is_well_defined(q8, EndoSpec(1, 0, 1, 1))
    wd = is_well_defined(example_ctx, EndoSpec(1, 1, 0, 1))
    assert not wd and wd.failed == "condition1"
    assert not is_well_defined_oracle(example_ctx, EndoSpec(1, 1, 0, 1))
    assert not is_well_defined(s3, EndoSpec(1, 1, 0, 1))
    assert not is_well_defined_oracle(s3, EndoSpec(1, 1, 0, 1))


def test_apply_examples(q8, example_ctx):
    assert apply(q8, EndoSpec(1, 0, 1, 1), Element(1, 1)) == (2, 1)
    spec = EndoSpec(5, 0, 3, 7)
    assert apply(example_ctx, spec, Element(1, 0)) == (5, 0)
    assert apply(example_ctx, spec, Element(0, 1)) == (3, 7)
    assert apply(example_ctx, spec, Element(0, 0)) == (0, 0)


def test_compose_example(q8):
    assert compose(q8, EndoSpec(1, 0, 1, 1), EndoSpec(1, 0, 1, 1)) == (1, 0, 2, 1)
    ident = identity_spec(q8)
    spec = EndoSpec(3, 0, 1, 1)
    assert compose(q8, ident, spec) == spec == compose(q8, spec, ident)


def test_canonical_and_parse(q8):
    assert canonical(q8, 5, 2, 1, 1) == (3, 0, 1, 1)
    assert parse_spec(q8, "1, 0, 1, 1") == (1, 0, 1, 1)
    assert str(EndoSpec(1, 0, 1, 1)) == "1,0,1,1"
    with pytest.raises(ValueError):
        parse_spec(q8, "1,0,1")


def test_deciders_agree_exhaustive():
    for ctx in small_contexts(36):
        for spec in itertools.starmap(EndoSpec, quadruples(ctx)):
            assert bool(is_well_defined(ctx, spec)) == is_well_defined_oracle(ctx, spec), (
                ctx.presentation,
                spec,
            )


def test_deciders_agree_sampled_on_example(example_ctx):
    rng = random.Random(11)
    G = example_ctx
    for _ in range(10_000):
        spec = EndoSpec(rng.randrange(G.n), rng.randrange(G.m), rng.randrange(G.n), rng.randrange(G.m))
        ok = bool(is_well_defined(G, spec))
        assert ok == is_well_defined_oracle(G, spec)
    # random quadruples almost never define homomorphisms, so also test structured ones
    for y1 in range(0, G.m, 5):
        for y2 in range(G.m):
            for _ in range(5):
                spec = EndoSpec(rng.randrange(G.n), y1, rng.randrange(G.n), y2)
                assert bool(is_well_defined(G, spec)) == is_well_defined_oracle(G, spec)


def test_homomorphism_law():
    for ctx in small_contexts(24):
        elems, tab = cayley(ctx)
        for spec in itertools.starmap(EndoSpec, quadruples(ctx)):
            if not is_well_defined(ctx, spec):
                continue
            img = np.array([group.index(ctx, apply(ctx, spec, e)) for e in elems])
            assert np.array_equal(tab[img[:, None], img[None, :]], img[tab]), (ctx.presentation, spec)


def test_apply_matches_word_evaluation(example_ctx):
    # apply(a^u b^v) == (sigma a)^u (sigma b)^v computed with group operations
    G = example_ctx
    rng = random.Random(5)
    specs = [EndoSpec(1, 0, 0, 1), EndoSpec(5, 0, 3, 7), EndoSpec(7, 15, 10, 1)]
    for spec in specs:
        sa, sb = Element(spec.x1, spec.y1), Element(spec.x2, spec.y2)
        for _ in range(300):
            e = Element(rng.randrange(G.n), rng.randrange(G.m))
            want = group.mul(G, group.power(G, sa, e.u), group.power(G, sb, e.v))
            assert apply(G, spec, e) == want


def test_compose_is_associative_and_matches_apply():
    rng = random.Random(2)
    for ctx in small_contexts(48):
        specs = [s for s in itertools.starmap(EndoSpec, quadruples(ctx)) if is_well_defined(ctx, s)]
        for _ in range(30):
            f, g, h = (rng.choice(specs) for _ in range(3))
            assert compose(ctx, compose(ctx, f, g), h) == compose(ctx, f, compose(ctx, g, h))
            fg = compose(ctx, f, g)
            assert is_well_defined(ctx, fg)
            for e in group.all_elements(ctx):
                assert apply(ctx, fg, e) == apply(ctx, f, apply(ctx, g, e))


def test_works_on_unnormalized_presentation():
    # H(8,2;6,5) has t not dividing n; the oracle path does not need a context
    G = validate(8, 2, 6, 5)
    assert is_well_defined_oracle(G, identity_spec(G))
    assert identity_spec(G) == (1, 0, 0, 1)
    assert not is_well_defined_oracle(G, EndoSpec(2, 0, 0, 1))
