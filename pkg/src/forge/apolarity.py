"""Macaulay inverse systems: contraction, catalecticants, apolar ideals and
the experiment with pencils of plane quartics."""

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
import random

from .complexes import free_resolution
from .groebner import Ideal
from .ideal_ops import hilbert_function
from .linalg import nullspace, rank
from .complexes import minimal_generators
from .polyring import GF, Poly, Ring

__all__ = [
    "S_ring", "dual_ring", "DualForm", "contract", "catalecticant", "apolar_ideal",
    "ApolarResult", "pencil_experiment", "PencilResult", "random_form",
    "CharacteristicError", "pencil_series",
]

S_VARS = ("X", "Y", "Z")
DUAL_VARS = ("Xd", "Yd", "Zd")

HILBERT_J = [1, 3, 6, 6, 2, 0]
HILBERT_L = [1, 3, 6, 6, 3, 0]
BETTI_J = [[0], [3, 3, 3, 3, 4], [5] * 6, [7, 7]]
BETTI_L = [[0], [3] * 4, [5, 5, 5, 6, 6, 6], [7, 7, 7]]


class CharacteristicError(ValueError):
    pass


@lru_cache(maxsize=None)
def S_ring(field=None, names=S_VARS):
    return Ring(list(names), field or GF())


@lru_cache(maxsize=None)
def dual_ring(field=None, names=DUAL_VARS):
    return Ring(list(names), field or GF())


class DualForm:
    """A homogeneous form in the dual variables."""

    def __init__(self, poly):
        if poly and not poly.is_homogeneous():
            raise ValueError("dual forms must be homogeneous")
        self.poly = poly
        self.ring = poly.ring
        self.degree = poly.sdegree() if poly else 0

    def __eq__(self, other):
        if isinstance(other, DualForm):
            return self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"DualForm({self.poly})"


def _as_form(f):
    return f if isinstance(f, DualForm) else DualForm(f)


def _falling(b, a):
    return factorial(b) // factorial(b - a)


def contract(g, f):
    """Apply ``g`` to ``f`` with each variable acting as the partial derivative
    in the matching dual variable."""
    f = _as_form(f)
    S, D = g.ring, f.ring
    if S.n != D.n:
        raise ValueError("operator and form rings have different numbers of variables")
    p = D.field.p
    if p and f.degree >= p:
        raise CharacteristicError(f"characteristic {p} is too small for forms of degree {f.degree}")
    out = {}
    for ka, ca in g.terms.items():
        a = S.exps(ka)
        for kb, cb in f.poly.terms.items():
            b = D.exps(kb)
            if any(x > y for x, y in zip(a, b)):
                continue
            c = ca * cb
            for x, y in zip(a, b):
                if x:
                    c *= _falling(y, x)
            k = D.mono([y - x for x, y in zip(a, b)])
            out[k] = out.get(k, 0) + c
    if p:
        out = {k: c % p for k, c in out.items() if c % p}
    else:
        out = {k: c for k, c in out.items() if c}
    return DualForm(Poly(D, out))


@dataclass
class Catalecticant:
    rows: list          # matrix over the field
    col_monos: list     # monomial keys of S_d (columns)
    row_labels: list    # (form index, dual monomial key)


def catalecticant(forms, d, S=None):
    """Matrix of ``S_d -> (+)_i D_{deg f_i - d}``, ``g -> (g o f_i)_i``."""
    forms = [_as_form(f) for f in forms]
    F = forms[0].ring.field
    S = S or S_ring(F)
    cols = S.monomials_of_degree(d)
    labels = []
    for i, f in enumerate(forms):
        e = f.degree - d
        if e < 0:
            continue
        for m in f.ring.monomials_of_degree(e):
            labels.append((i, m))
    index = {lab: r for r, lab in enumerate(labels)}
    rows = [[F(0)] * len(cols) for _ in labels]
    for j, k in enumerate(cols):
        g = Poly(S, {k: F(1)})
        for i, f in enumerate(forms):
            if f.degree < d:
                continue
            for kk, c in contract(g, f).poly.terms.items():
                rows[index[(i, kk)]][j] = c
    return Catalecticant(rows, cols, labels)


@dataclass
class ApolarResult:
    ideal: Ideal
    degree_bound: int
    hilbert: object
    betti: object
    complex: object
    annihilates: bool
    generators_by_degree: dict = field(default_factory=dict)


def apolar_ideal(forms, bound=None, resolve=True, S=None):
    """Minimal generators of the annihilator of ``forms`` with its Hilbert
    function and Betti table.

    ``S`` is the operator ring (by default X, Y, Z over the forms' field); it
    may be the forms' own ring. Every returned generator is checked to
    annihilate every form.
    """
    forms = [_as_form(f) for f in forms]
    D = max(f.degree for f in forms)
    if bound is None:
        bound = D + 1
    if bound < D + 1:
        raise ValueError(f"bound must be at least {D + 1}")
    F = forms[0].ring.field
    S = S or S_ring(F)
    kernel = []
    for d in range(1, bound + 1):
        cat = catalecticant(forms, d, S)
        if cat.rows:
            basis = nullspace(cat.rows, len(cat.col_monos), F)
        else:
            basis = [[F(1) if i == j else F(0) for i in range(len(cat.col_monos))]
                     for j in range(len(cat.col_monos))]
        for v in basis:
            kernel.append(Poly(S, {k: c for k, c in zip(cat.col_monos, v) if c}))
    gens = minimal_generators(kernel)
    ok = all(not contract(g, f).poly for g in gens for f in forms)
    if not ok:
        raise AssertionError("apolarity certificate failed")
    I = Ideal(S, gens)
    hf = hilbert_function(I, bound)
    by_deg = {}
    for g in gens:
        by_deg.setdefault(g.sdegree(), []).append(g)
    C = betti = None
    if resolve:
        C, betti = free_resolution(I)
    return ApolarResult(I, bound, hf, betti, C, ok, by_deg)


def random_form(ring, degree, rng):
    F = ring.field
    p = F.p
    terms = {}
    for m in ring.monomials_of_degree(degree):
        c = rng.randrange(p) if p else rng.randint(-100, 100)
        if c:
            terms[m] = F(c)
    return DualForm(Poly(ring, terms))


@dataclass
class PencilResult:
    seed: int
    forms: list
    hilbert_J: list
    betti_J: list
    hilbert_L: list
    betti_L: list
    linear_row_rank: int
    d3_shape_ok: bool
    annihilates: bool
    checks: dict

    @property
    def generic(self):
        return all(self.checks.values())


def _linear_row_rank(C):
    """Rank of the span of the linear entries in the row of d2 belonging to
    the quartic generator."""
    d1, d2 = C.maps[0], C.maps[1]
    rows = [i for i, s in enumerate(d2.row_shifts) if s == 4]
    if len(rows) != 1:
        return -1
    r = rows[0]
    S = C.ring
    lin = [e for e in d2.entries[r] if e and e.sdegree() == 1]
    if not lin:
        return 0
    keys = [S.var(v).lead_key() for v in S.vars]
    return rank([[e.terms.get(k, 0) for k in keys] for e in lin], S.field)


def _d3_shape(C):
    if len(C.maps) < 3:
        return False
    d3 = C.maps[2]
    if sorted(d3.row_shifts) != [5, 5, 5, 6, 6, 6] or d3.col_shifts != [7, 7, 7]:
        return False
    if d3.degree_errors():
        return False
    # quadric block over linear block
    for i, s in enumerate(d3.row_shifts):
        for e in d3.entries[i]:
            if e and e.sdegree() != 7 - s:
                return False
    return True


def pencil_experiment(seed=1, field=None, bound=5):
    """Two random quartics, their apolar ideal J and the four-cubic ideal L."""
    field = field or GF()
    rng = random.Random(seed)
    Dring = dual_ring(field)
    f1, f2 = random_form(Dring, 4, rng), random_form(Dring, 4, rng)
    res = apolar_ideal([f1, f2], bound)
    S = res.ideal.ring
    cubics = res.generators_by_degree.get(3, [])
    L = Ideal(S, cubics)
    hL = hilbert_function(L, bound)
    CL, bL = free_resolution(L) if cubics else (None, None)
    lin = _linear_row_rank(res.complex)
    shape = _d3_shape(CL) if CL else False
    checks = {
        "hilbert J": res.hilbert.values == HILBERT_J,
        "betti J": res.betti.shifts == BETTI_J,
        "hilbert L": hL.values == HILBERT_L,
        "betti L": bL is not None and bL.shifts == BETTI_L,
        "linear row spans (X,Y,Z)": lin == 3,
        "d3 of L: quadric block over linear block": shape,
        "annihilation": res.annihilates,
    }
    return PencilResult(seed, [f1, f2], res.hilbert.values, res.betti.shifts,
                        hL.values, bL.shifts if bL else None, lin, shape,
                        res.annihilates, checks)


def pencil_series(seeds, field=None):
    """Run several seeds; degenerate samples are reported, not resampled away."""
    from .parallel import pmap
    results = pmap(lambda s: pencil_experiment(s, field), list(seeds))
    good = [r.seed for r in results if r.generic]
    bad = [r.seed for r in results if not r.generic]
    return results, good, bad
