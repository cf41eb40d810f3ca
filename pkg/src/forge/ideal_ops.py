"""Elimination, intersection, colon ideals, dimension and Hilbert functions."""

from dataclasses import dataclass

from .groebner import Frame, GBEngine, Ideal, buchberger, normal_form
from .polyring import MonomialOrder, Poly, Ring, RingMismatch

__all__ = [
    "eliminate", "intersect", "colon", "colon_poly", "ideal_equal", "codim",
    "dimension", "monomial_codim", "codim_lower_bound", "hilbert_function",
    "HilbertFunction", "ImproperIdeal", "divide_exact", "ideal_sum",
    "ideal_product", "is_subideal",
]

HILBERT_BOUND_LIMIT = 20


class ImproperIdeal(ValueError):
    pass


def _fresh(ring, base):
    name = base
    while name in ring.index:
        name += "_"
    return name


def _same_ring(I, J):
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")


def eliminate(I, drop):
    """Generators of I intersected with the subring without ``drop`` variables.

    Uses the order: degree in the dropped variables first, then grevlex.
    The result is an ideal of the same ring.
    """
    ring = I.ring
    drop = set(drop)
    unknown = drop - set(ring.vars)
    if unknown:
        raise KeyError(f"not ring variables: {sorted(unknown)}")
    w = [1 if v in drop else 0 for v in ring.vars]
    elim = ring.with_(order=MonomialOrder("weighted_then_grevlex", w))
    G = buchberger([g.to_ring(elim) for g in I.gens if g]) if any(I.gens) else []
    keep = [g for g in G if not (set(g.variables()) & drop)]
    return Ideal(ring, [g.to_ring(ring) for g in keep])


def _ext_ring(ring, name, weight=0):
    """Ring with one extra variable of total-grading ``weight``."""
    gradings = [g + (weight if i == 0 else 0,) for i, g in enumerate(ring.gradings)]
    return Ring(ring.vars + (name,), ring.field, gradings=gradings)


def intersect(I, J):
    """I ∩ J via elimination of s from s*I + (1-s)*J."""
    _same_ring(I, J)
    ring = I.ring
    if not any(I.gens) or not any(J.gens):
        return Ideal(ring, [])
    s = _fresh(ring, "s_")
    # s gets degree 0 so homogeneous inputs stay homogeneous
    ext = _ext_ring(ring, s, 0)
    sv = ext.var(s)
    gens = [sv * f.to_ring(ext) for f in I.gens if f]
    gens += [(ext.one() - sv) * g.to_ring(ext) for g in J.gens if g]
    E = eliminate(Ideal(ext, gens), [s])
    return Ideal(ring, [g.to_ring(ring) for g in E.gens])


def divide_exact(f, g):
    """f / g, raising ValueError when g does not divide f."""
    cert = normal_form(f, [g], with_certificate=True)
    if not cert.remainder.is_zero():
        raise ValueError("division is not exact")
    return cert.cofactors[0]


def colon_poly(I, g):
    """I : g computed as (I ∩ (g)) / g."""
    ring = I.ring
    if g.is_zero():
        return Ideal(ring, [ring.one()])
    K = intersect(I, Ideal(ring, [g]))
    return Ideal(ring, [divide_exact(f, g) for f in K.gens])


def colon(I, J):
    """The ideal quotient I : J = {f : f*J ⊆ I}."""
    _same_ring(I, J)
    ring = I.ring
    gens = [g for g in J.gens if g]
    if not gens:
        return Ideal(ring, [ring.one()])
    result = None
    for g in gens:
        Q = colon_poly(I, g)
        result = Q if result is None else intersect(result, Q)
    return Ideal(ring, reduced_generators(result))


def reduced_generators(I):
    """The reduced Gröbner basis as a canonical generator list."""
    return I.gb()


def ideal_equal(I, J):
    _same_ring(I, J)
    return [g.terms for g in I.gb()] == [g.terms for g in J.gb()]


def is_subideal(I, J):
    """Is I contained in J?"""
    _same_ring(I, J)
    G = J.gb()
    return all(normal_form(f, G).remainder.is_zero() for f in I.gens if f)


def ideal_sum(I, J):
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I, J):
    _same_ring(I, J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def _min_supports(ring, monos):
    sups = {ring.support(m) for m in monos}
    sups = sorted(sups, key=len)
    out = []
    for s in sups:
        if not any(t <= s for t in out):
            out.append(s)
    return out


def monomial_codim(ring, monos):
    """Codimension of the monomial ideal generated by ``monos`` (keys).

    This is the minimum number of variables meeting the support of every
    generator (the complement is a maximal independent set).
    """
    if any(m == 0 for m in monos):
        raise ImproperIdeal("the unit ideal has no codimension")
    sups = _min_supports(ring, monos)
    if not sups:
        return 0
    best = [len(set().union(*sups))]

    def search(edges, chosen):
        if chosen >= best[0]:
            return
        if not edges:
            best[0] = chosen
            return
        # lower bound: disjoint edges need distinct variables
        used, disjoint = set(), 0
        for e in edges:
            if not (e & used):
                used |= e
                disjoint += 1
        if chosen + disjoint >= best[0]:
            return
        e = min(edges, key=len)
        for v in sorted(e):
            search([f for f in edges if v not in f], chosen + 1)

    search(sups, 0)
    return best[0]


def codim(I):
    """Codimension (number of variables minus Krull dimension) of I."""
    G = I.gb()
    if not G:
        return 0
    leads = [g.lead_key() for g in G]
    return monomial_codim(I.ring, leads)


def dimension(I):
    return I.ring.n - codim(I)


@dataclass
class CodimBound:
    bound: int
    exact: bool
    elements: int
    degree: object


def codim_lower_bound(gens, target=None, max_degree=None):
    """Certified lower bound for the codimension of the ideal of ``gens``.

    Leading terms of any elements of an ideal generate a monomial ideal
    contained in its initial ideal, so its codimension is a lower bound.  We
    first use the generators' leading terms, then run Buchberger degree by
    degree and stop as soon as ``target`` is reached (or the basis is
    complete, in which case the value is exact).
    """
    gens = [g for g in gens if g]
    if not gens:
        return CodimBound(0, True, 0, None)
    ring = gens[0].ring
    leads = [g.lead_key() for g in gens]
    if any(m == 0 for m in leads):
        raise ImproperIdeal("ideal contains a unit")
    b = monomial_codim(ring, leads)
    if target is not None and b >= target:
        return CodimBound(b, False, len(gens), None)
    eng = GBEngine(Frame(ring))
    vecs = sorted((dict(g.terms) for g in gens), key=lambda v: (eng.frame.vec_deg(v), max(v)))
    for v in vecs:
        eng.add(v)
    while True:
        d = eng.pending_degree()
        if d is None:
            done = True
        else:
            done = eng.complete(max_degree=d)
        leads = eng.leads()
        if any(m == 0 for m in leads):
            raise ImproperIdeal("ideal contains a unit")
        b = monomial_codim(ring, leads)
        if done:
            return CodimBound(b, True, len(eng.elts), d)
        if target is not None and b >= target:
            return CodimBound(b, False, len(eng.elts), d)
        if max_degree is not None and d >= max_degree:
            return CodimBound(b, False, len(eng.elts), d)


@dataclass
class HilbertFunction:
    values: list

    def __getitem__(self, d):
        return self.values[d]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if isinstance(other, HilbertFunction):
            other = other.values
        return list(self.values) == list(other)

    def __str__(self):
        return ", ".join(str(v) for v in self.values)


def standard_monomials_by_degree(ring, leads, bound):
    """Exponent vectors outside the monomial ideal, grouped by degree."""
    leads = [ring.exps(m) for m in leads]
    n = ring.n

    def is_std(e):
        for m in leads:
            if all(a >= b for a, b in zip(e, m)):
                return False
        return True

    layers = []
    cur = [tuple([0] * n)] if is_std(tuple([0] * n)) else []
    for d in range(bound + 1):
        layers.append(cur)
        nxt = set()
        for e in cur:
            # multiply only by variables at or after the last used one
            last = max((i for i, a in enumerate(e) if a), default=0)
            for i in range(last, n):
                f = list(e)
                f[i] += 1
                f = tuple(f)
                if is_std(f):
                    nxt.add(f)
        # every standard monomial has all its divisors standard, so building
        # from sorted prefixes reaches all of them
        cur = sorted(nxt)
    return layers


def hilbert_function(I, bound, limit=HILBERT_BOUND_LIMIT):
    """dim_k (R/I)_d for d = 0..bound, by counting standard monomials.

    Requires the all-ones grading.
    """
    ring = I.ring
    if any(a != 1 for a in ring.total_weights):
        raise ValueError("hilbert_function needs the all-ones total degree")
    if bound > limit:
        raise ValueError(f"bound {bound} exceeds the configured limit {limit}")
    leads = I.leading_monomials()
    if any(m == 0 for m in leads):
        return HilbertFunction([0] * (bound + 1))
    layers = standard_monomials_by_degree(ring, leads, bound)
    return HilbertFunction([len(layer) for layer in layers])
