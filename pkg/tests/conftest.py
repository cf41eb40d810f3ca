import random

from hypothesis import settings, strategies as st

from forge.polyring import GF, QQ, Poly, Ring

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

R3 = Ring(["x", "y", "z"], GF(101))
R3Q = Ring(["x", "y", "z"], QQ)


@st.composite
def polys(draw, ring=R3, max_terms=4, max_deg=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    p = ring.field.p
    for _ in range(n):
        e = draw(st.lists(st.integers(0, max_deg), min_size=ring.n, max_size=ring.n))
        c = draw(st.integers(-20, 20))
        k = ring.mono(e)
        terms[k] = terms.get(k, 0) + c
    terms = {k: ring.field(c) for k, c in terms.items() if ring.field(c)}
    return Poly(ring, terms)


def random_poly(ring, rng, terms=3, deg=3, homogeneous=None):
    out = ring.zero()
    for _ in range(terms):
        if homogeneous is not None:
            keys = ring.monomials_of_degree(homogeneous)
            k = rng.choice(keys)
        else:
            k = ring.mono([rng.randint(0, deg) for _ in range(ring.n)])
        c = rng.randint(1, 30) * rng.choice([1, -1])
        out = out + Poly(ring, {k: ring.field(c)})
    return out


def random_ideal(rng, nvars=None, ngens=None, field=None):
    nvars = nvars or rng.randint(2, 4)
    R = Ring(["a", "b", "c", "d"][:nvars], field or GF(32003))
    gens = [random_poly(R, rng, rng.randint(1, 3), 2) for _ in range(ngens or rng.randint(1, 3))]
    return R, [g for g in gens if g]


def seeded(n, salt=0):
    return [random.Random(1000 * salt + i) for i in range(n)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
