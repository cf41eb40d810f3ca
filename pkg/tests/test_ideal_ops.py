import itertools
import random

import pytest

from forge.corpus import build_J, build_linkage, P1_gens, ring_A
from forge.groebner import Ideal, ideal_membership
from forge.ideal_ops import (ImproperIdeal, codim, codim_lower_bound, colon, colon_poly,
                             dimension, eliminate, hilbert_function, ideal_equal,
                             ideal_product, ideal_sum, intersect, is_subideal, monomial_codim)
from forge.parser import parse_poly
from forge.polyring import GF, QQ, Poly, Ring

from conftest import random_ideal, random_poly, seeded

R = Ring(["w", "x", "y", "z"], QQ)


def I(*texts, ring=R):
    return Ideal(ring, [parse_poly(t, ring) for t in texts])


def test_eliminate_examples():
    assert ideal_equal(eliminate(I("w-x", "w-y"), ["w"]), I("x-y"))
    assert eliminate(I("x"), ["x"]).gens == []
    assert ideal_equal(eliminate(I("w*x", "w-1"), ["w"]), I("x"))


def test_intersect_examples():
    assert ideal_equal(intersect(I("x"), I("y")), I("x*y"))
    assert ideal_equal(intersect(I("x", "y"), I("z")), I("x*z", "y*z"))
    J = I("x^2 - y", "x*z")
    assert ideal_equal(intersect(J, J), J)


def test_colon_examples():
    assert ideal_equal(colon(I("x^2"), I("x")), I("x"))
    assert ideal_equal(colon(I("x*y", "x*z"), I("x")), I("y", "z"))
    assert ideal_equal(colon_poly(I("x*y", "x*z"), parse_poly("x", R)), I("y", "z"))


def test_colon_linkage_K1():
    chain = build_linkage(False, strict=False)
    assert chain.K_matches and chain.P_matches


def test_ideal_equal_examples():
    assert ideal_equal(I("x", "y"), I("y", "x+y"))
    assert not ideal_equal(I("x"), I("x^2"))


def test_codim_examples():
    S = Ring(["x", "y", "z"], QQ)
    assert codim(I("x", "y", "z", ring=S)) == 3
    assert codim(I("x*y", ring=Ring(["x", "y"], QQ))) == 1
    assert codim(build_J()) == 3
    with pytest.raises(ImproperIdeal):
        codim(I("x", "1 - x"))


def test_codim_lower_bound_is_sound():
    J = build_J()
    b = codim_lower_bound(J.gens, target=3)
    assert b.bound >= 3
    full = codim_lower_bound(J.gens)
    assert full.exact and full.bound == 3


def test_hilbert_examples():
    S1 = Ring(["x"], QQ)
    assert hilbert_function(I("x^2", ring=S1), 3) == [1, 1, 0, 0]
    S2 = Ring(["x", "y"], QQ)
    assert hilbert_function(Ideal(S2, []), 3) == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        hilbert_function(Ideal(S2, []), 50)


def test_sum_product_subideal():
    A, B = I("x"), I("y")
    assert ideal_equal(ideal_sum(A, B), I("x", "y"))
    assert ideal_equal(ideal_product(A, B), I("x*y"))
    assert is_subideal(ideal_product(A, B), A)
    assert not is_subideal(A, B)


@pytest.mark.parametrize("rng", seeded(8, salt=21))
def test_colon_property(rng):
    S, gens = random_ideal(rng, nvars=3, ngens=2)
    if len(gens) < 2:
        return
    Iq = Ideal(S, gens)
    g = random_poly(S, rng, 2, 1)
    if not g:
        return
    Jq = Ideal(S, [g])
    Q = colon(Iq, Jq)
    for f in Q.gens:
        for h in Jq.gens:
            assert ideal_membership(f * h, Iq)
    assert is_subideal(Iq, Q)


@pytest.mark.parametrize("rng", seeded(8, salt=22))
def test_intersect_property(rng):
    S, g1 = random_ideal(rng, nvars=3, ngens=2)
    _, g2 = random_ideal(random.Random(rng.random()), nvars=3, ngens=1)
    g2 = [g.to_ring(S) for g in g2]
    if not g1 or not g2:
        return
    A, B = Ideal(S, g1), Ideal(S, g2)
    M = intersect(A, B)
    assert is_subideal(M, A) and is_subideal(M, B)
    f = random_poly(S, rng, 2, 1) * g1[0]
    g = random_poly(S, rng, 2, 1) * g2[0]
    assert ideal_membership(f * g, M)


@pytest.mark.parametrize("k", range(0, 6))
def test_codim_of_variable_subsets(k):
    S = Ring([f"v{i}" for i in range(6)], GF(32003))
    rng = random.Random(k)
    chosen = rng.sample(S.vars, k)
    assert codim(Ideal(S, [S.var(v) for v in chosen])) == k
    assert dimension(Ideal(S, [S.var(v) for v in chosen])) == 6 - k


def brute_hilbert(n, gens, bound):
    """Count exponent vectors of each degree avoiding every generator."""
    out = []
    for d in range(bound + 1):
        count = 0
        for e in itertools.product(range(d + 1), repeat=n):
            if sum(e) != d:
                continue
            if not any(all(a >= b for a, b in zip(e, g)) for g in gens):
                count += 1
        out.append(count)
    return out


def random_monomial_ideal(rng):
    n = rng.randint(1, 4)
    S = Ring(["a", "b", "c", "d"][:n], GF(32003))
    exps = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(1, 4))]
    exps = [e for e in exps if any(e)] or [tuple([2] * n)]
    return S, exps


@pytest.mark.parametrize("rng", seeded(30, salt=23))
def test_hilbert_vs_brute_force(rng):
    S, exps = random_monomial_ideal(rng)
    Iq = Ideal(S, [S.monomial(e) for e in exps])
    assert hilbert_function(Iq, 6).values == brute_hilbert(S.n, exps, 6)


def test_monomial_codim_matches_brute_force():
    rng = random.Random(5)
    for _ in range(30):
        S, exps = random_monomial_ideal(rng)
        # brute force: smallest set of variables meeting every generator's support
        best = min(len(c) for r in range(S.n + 1) for c in itertools.combinations(range(S.n), r)
                   if all(any(e[i] for i in c) for e in exps))
        assert monomial_codim(S, [S.mono(e) for e in exps]) == best


@pytest.mark.parametrize("rng", seeded(10, salt=24))
def test_ideal_equal_equivalence(rng):
    S, gens = random_ideal(rng, nvars=3, ngens=2)
    if not gens:
        return
    A = Ideal(S, gens)
    mixed = [gens[0] + random_poly(S, rng, 1, 1) * gens[-1]] + gens[1:] if len(gens) > 1 else [gens[0] * 3]
    B = Ideal(S, list(reversed(mixed)) + [gens[0] * gens[-1]])
    C = Ideal(S, gens + [sum(gens, S.zero())])
    assert ideal_equal(A, A)
    assert ideal_equal(A, B) == ideal_equal(B, A)
    if ideal_equal(A, B) and ideal_equal(B, C):
        assert ideal_equal(A, C)
    assert ideal_equal(A, C)
