"""Exact coefficient fields, monomial orders and sparse graded polynomials.

Monomials are packed into a single Python ``int`` (8 bits per variable, the
top bit of each field is a guard bit).  The integer that is stored is the
*order key* of the monomial: comparing two keys as integers compares the
monomials in the ring's monomial order, and the key of a product is the sum
of the keys.  Polynomials are dictionaries ``{key: coefficient}``.
"""

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "FieldSpec", "MonomialOrder", "Ring", "Poly", "QQ", "GF",
    "RingMismatch", "mono_cmp", "poly_add", "poly_mul", "multidegree",
    "substitute", "INHOMOGENEOUS",
]

BITS = 8
MAX_EXP = (1 << (BITS - 1)) - 1
_DEG_BITS = 20

INHOMOGENEOUS = "inhomogeneous"


class RingMismatch(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if p % q == 0:
            return p == q
    d = 17
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``kind`` is ``"QQ"`` or ``"GF"``; ``p`` is the modulus of a prime field."""

    kind: str = "GF"
    p: int = 32003

    def __post_init__(self):
        if self.kind == "QQ":
            object.__setattr__(self, "p", 0)
        elif self.kind == "GF":
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p == 2:
                raise ValueError("characteristic 2 is not supported")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self):
        return self.p

    def __call__(self, c):
        """Coerce an integer or fraction into the field."""
        p = self.p
        if p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        return Fraction(c)

    def inv(self, c):
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def signed(self, c):
        """Representative used for printing: symmetric residue mod p."""
        p = self.p
        if p and c > p // 2:
            return c - p
        return c

    def __str__(self):
        return "QQ" if self.kind == "QQ" else f"GF({self.p})"


QQ = FieldSpec("QQ")


def GF(p=32003):
    return FieldSpec("GF", p)


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is one of ``lex``, ``grevlex``, ``weighted_then_grevlex``."""

    kind: str = "grevlex"
    weights: tuple = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "weighted_then_grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted_then_grevlex":
            if self.weights is None:
                raise ValueError("weighted order needs a weight vector")
            w = tuple(int(a) for a in self.weights)
            if any(a < 0 for a in w):
                raise ValueError("weights must be non-negative")
            object.__setattr__(self, "weights", w)
        elif self.weights is not None:
            object.__setattr__(self, "weights", None)


class Ring:
    """Polynomial ring over a field with named variables, gradings and an order.

    >>> R = Ring(["x", "y", "z"])
    >>> x, y, z = R.gens()
    >>> str((x + y) * (x - y))
    'x^2 - y^2'
    """

    def __init__(self, variables, field=None, gradings=None, order=None):
        self.vars = tuple(str(v) for v in variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be unique")
        self.n = n = len(self.vars)
        self.field = field if field is not None else GF()
        if gradings is None:
            gradings = [(1,) * n]
        self.gradings = tuple(tuple(int(a) for a in g) for g in gradings)
        if not self.gradings:
            raise ValueError("at least one grading vector is required")
        for g in self.gradings:
            if len(g) != n or any(a < 0 for a in g):
                raise ValueError("grading vectors need one non-negative weight per variable")
        self.order = order if order is not None else MonomialOrder()
        if self.order.weights is not None and len(self.order.weights) != n:
            raise ValueError("order weight vector has the wrong length")
        self.index = {v: i for i, v in enumerate(self.vars)}

        self.S = S = BITS * n
        self.PMASK = (1 << S) - 1
        self.GUARD = sum(1 << (BITS * i + BITS - 1) for i in range(n))
        self.kind = self.order.kind
        if self.kind == "lex":
            self._shift = [BITS * (n - 1 - i) for i in range(n)]
        else:
            self._shift = [BITS * i for i in range(n)]
        self._w = self.order.weights
        self.total_weights = tuple(sum(col) for col in zip(*self.gradings))
        if self.kind == "grevlex" and all(a == 1 for a in self.total_weights):
            self._sdeg = self.tdeg
        elif self.kind == "weighted_then_grevlex" and self._w == self.total_weights:
            self._sdeg = self.odeg
        else:
            self._sdeg = self._slow_sdeg
        self._key = (self.vars, self.field, self.gradings, self.order)
        self._hash = hash(self._key)

    # ring identity is structural
    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({list(self.vars)}, {self.field}, order={self.order.kind})"

    def with_(self, variables=None, field=None, gradings=None, order=None):
        """A copy with some attributes replaced.

        When the variable list changes, gradings and weighted orders must be
        supplied (or are reset to total degree / grevlex).
        """
        if variables is not None and tuple(variables) != self.vars:
            return Ring(variables, field or self.field, gradings, order)
        return Ring(self.vars, field or self.field,
                    gradings if gradings is not None else self.gradings,
                    order or self.order)

    # -- monomial encoding ------------------------------------------------
    def encode(self, P):
        """Order key of a packed exponent word."""
        if self.kind == "lex":
            return P
        deg = sum(P.to_bytes(self.n, "little")) if P else 0
        if self.kind == "grevlex":
            return (deg << self.S) - P
        w = self._w
        b = P.to_bytes(self.n, "little")
        wdeg = sum(w[i] * b[i] for i in range(self.n))
        return (((wdeg << _DEG_BITS) + deg) << self.S) - P

    def packed(self, K):
        if self.kind == "lex":
            return K
        return (-K) & self.PMASK

    def mono(self, exps):
        """Order key of an exponent vector."""
        if len(exps) != self.n:
            raise ValueError("exponent vector has the wrong length")
        P = 0
        for e, s in zip(exps, self._shift):
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_EXP:
                raise OverflowError(f"exponent {e} exceeds {MAX_EXP}")
            P |= e << s
        return self.encode(P)

    def exps(self, K):
        b = self.packed(K).to_bytes(self.n, "little")
        if self.kind == "lex":
            return tuple(reversed(b))
        return tuple(b)

    def var_key(self, i):
        return self.encode(1 << self._shift[i])

    def tdeg(self, K):
        """Total (all-ones) degree of a monomial key."""
        if self.kind == "lex":
            return sum(K.to_bytes(self.n, "little")) if K else 0
        t = (K + self.PMASK) >> self.S
        if self.kind == "grevlex":
            return t
        return t & ((1 << _DEG_BITS) - 1)

    def odeg(self, K):
        """The degree the order compares first."""
        if self.kind == "weighted_then_grevlex":
            return (K + self.PMASK) >> (self.S + _DEG_BITS)
        return self.tdeg(K)

    def sdeg(self, K):
        """Degree under the total grading (the sum of the grading vectors)."""
        return self._sdeg(K)

    def _slow_sdeg(self, K):
        return sum(a * e for a, e in zip(self.total_weights, self.exps(K)))

    def wdeg(self, K, g=0):
        w = self.gradings[g]
        return sum(a * e for a, e in zip(w, self.exps(K)))

    def divides(self, a, b):
        """Does monomial ``a`` divide monomial ``b``?"""
        G = self.GUARD
        return ((self.packed(b) | G) - self.packed(a)) & G == G

    def lcm(self, a, b):
        Pa, Pb = self.packed(a), self.packed(b)
        G = self.GUARD
        m = ((((Pb | G) - Pa) & G) >> (BITS - 1)) * 0xFF
        return self.encode((Pb & m) | (Pa & ~m & self.PMASK))

    def gcd(self, a, b):
        Pa, Pb = self.packed(a), self.packed(b)
        G = self.GUARD
        m = ((((Pb | G) - Pa) & G) >> (BITS - 1)) * 0xFF
        return self.encode((Pa & m) | (Pb & ~m & self.PMASK))

    def coprime(self, a, b):
        return self.gcd(a, b) == 0

    def support(self, K):
        """Indices of variables occurring in a monomial."""
        return frozenset(i for i, e in enumerate(self.exps(K)) if e)

    def mono_str(self, K):
        parts = []
        for v, e in zip(self.vars, self.exps(K)):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"

    # -- elements ---------------------------------------------------------
    def __call__(self, value):
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return value.to_ring(self)
        if isinstance(value, str):
            from .parser import parse_poly
            return parse_poly(value, self)
        return self.const(value)

    def const(self, c):
        c = self.field(c)
        return Poly(self, {0: c} if c else {})

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def var(self, name):
        if isinstance(name, int):
            i = name
        else:
            try:
                i = self.index[name]
            except KeyError:
                raise KeyError(f"no variable {name!r} in {self!r}") from None
        return Poly(self, {self.var_key(i): self.field(1)})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exps, c=1):
        c = self.field(c)
        return Poly(self, {self.mono(exps): c} if c else {})

    def monomials_of_degree(self, d):
        """All exponent vectors of total degree ``d``, in descending order."""
        out = [self.mono(e) for e in _compositions(d, self.n)]
        out.sort(reverse=True)
        return out


def _compositions(d, n):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _compositions(d - a, n - 1):
            yield (a,) + rest


def _check_ring(f, g):
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring!r} vs {g.ring!r}")


class Poly:
    """Sparse polynomial; ``terms`` maps monomial keys to non-zero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = terms if terms is not None else {}

    def _coerce(self, other):
        if isinstance(other, Poly):
            _check_ring(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    t[k] = v
                else:
                    del t[k]
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {k: p - c for k, c in self.terms.items()})
        return Poly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        p = ring.field.p
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        t = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        if p:
            t = {k: c % p for k, c in t.items() if c % p}
        else:
            t = {k: c for k, c in t.items() if c}
        if t and self.terms and other.terms:
            if self.max_deg() + other.max_deg() > MAX_EXP:
                G = ring.GUARD
                if any(ring.packed(k) & G for k in t):
                    raise OverflowError("exponent overflow in product")
        return Poly(ring, t)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def scale(self, c):
        ring = self.ring
        c = ring.field(c)
        p = ring.field.p
        if not c:
            return ring.zero()
        if p:
            return Poly(ring, {k: v * c % p for k, v in self.terms.items()})
        return Poly(ring, {k: v * c for k, v in self.terms.items()})

    def mul_mono(self, K, c=1):
        """Multiply by ``c`` times the monomial with key ``K``."""
        return Poly(self.ring, {k + K: v for k, v in self.scale(c).terms.items()})

    # -- inspection -------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def lead_key(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms)

    def lead_coeff(self):
        return self.terms[self.lead_key()] if self.terms else self.ring.field(0)

    def lead_exps(self):
        return self.ring.exps(self.lead_key())

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def max_deg(self):
        ring = self.ring
        if not self.terms:
            return 0
        if ring.kind == "grevlex":
            return ring.tdeg(max(self.terms))
        return max(ring.tdeg(k) for k in self.terms)

    def degree(self):
        """Total (all-ones) degree; -1 for the zero polynomial."""
        return self.max_deg() if self.terms else -1

    def multidegree(self):
        return multidegree(self)

    def is_homogeneous(self, g=None):
        """Homogeneous for grading ``g`` (default: the total grading)."""
        ring = self.ring
        if g is None:
            return len({ring.sdeg(k) for k in self.terms}) <= 1
        return len({ring.wdeg(k, g) for k in self.terms}) <= 1

    def sdegree(self):
        """Degree under the total grading; -1 for zero."""
        ring = self.ring
        return max((ring.sdeg(k) for k in self.terms), default=-1)

    def variables(self):
        s = set()
        for k in self.terms:
            s |= self.ring.support(k)
        return [self.ring.vars[i] for i in sorted(s)]

    def constant_coeff(self):
        return self.terms.get(0, self.ring.field(0))

    def coefficient(self, exps):
        return self.terms.get(self.ring.mono(exps), self.ring.field(0))

    def to_ring(self, target):
        """Reinterpret in another ring by matching variable names."""
        src = self.ring
        if src == target:
            return self
        idx = [target.index.get(v) for v in src.vars]
        for v in self.variables():
            if target.index.get(v) is None:
                raise RingMismatch(f"variable {v!r} missing from target ring")
        t = {}
        F = target.field
        for k, c in self.terms.items():
            e = [0] * target.n
            for i, a in zip(idx, src.exps(k)):
                if a:
                    e[i] = a
            if src.field.p:
                c = F(src.field.signed(c))
            else:
                c = F(c)
            if c:
                t[target.mono(e)] = c
        return Poly(target, t)

    def subs(self, sigma, target=None):
        return substitute(self, sigma, target)

    def evaluate(self, values):
        """Evaluate at a point given as ``{name: value}`` (missing names are 0)."""
        ring = self.ring
        vals = [ring.field(values.get(v, 0)) for v in ring.vars]
        p = ring.field.p
        total = ring.field(0)
        for k, c in self.terms.items():
            term = c
            for v, e in zip(vals, ring.exps(k)):
                if e:
                    term = term * v ** e
            total = total + term
        return total % p if p else total

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        out = []
        for k, c in self.sorted_terms():
            c = ring.field.signed(c)
            neg = c < 0
            a = -c if neg else c
            m = ring.mono_str(k)
            if m == "1":
                body = str(a)
            elif a == 1:
                body = m
            else:
                body = f"{a}*{m}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def poly_add(f, g):
    return f + g


def poly_mul(f, g):
    return f * g


def multidegree(f):
    """Degree vector under every grading, or ``INHOMOGENEOUS``.

    The zero polynomial is homogeneous of every degree; we report ``None``.
    """
    ring = f.ring
    if not f.terms:
        return None
    degs = {tuple(ring.wdeg(k, g) for g in range(len(ring.gradings))) for k in f.terms}
    if len(degs) != 1:
        return INHOMOGENEOUS
    return degs.pop()


def substitute(f, sigma, target=None):
    """Apply the ring map sending variable ``v`` to ``sigma[v]``.

    Images may be polynomials (all in one target ring) or field constants.
    Unmapped variables go to the same-named variable of the target ring.
    """
    ring = f.ring
    images = {}
    for v, img in sigma.items():
        name = v if isinstance(v, str) else ring.vars[v]
        if name not in ring.index:
            raise KeyError(f"no variable {name!r} in {ring!r}")
        if isinstance(img, Poly):
            if target is None:
                target = img.ring
            elif img.ring != target:
                raise RingMismatch("substitution images live in different rings")
        images[name] = img
    if target is None:
        target = ring
    imgs = []
    for v in ring.vars:
        img = images.get(v)
        if img is None:
            imgs.append(target.var(v))
        elif isinstance(img, Poly):
            imgs.append(img)
        else:
            imgs.append(target.const(img))
    powers = [{0: target.one(), 1: im} for im in imgs]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e // 2) * power(i, e - e // 2)
        return cache[e]

    F = target.field
    total = {}
    p = F.p
    for k, c in f.terms.items():
        c = F(ring.field.signed(c)) if ring.field.p else F(c)
        term = Poly(target, {0: c})
        for i, e in enumerate(ring.exps(k)):
            if e:
                term = term * power(i, e)
        for kk, cc in term.terms.items():
            total[kk] = total.get(kk, 0) + cc
    if p:
        total = {k: c % p for k, c in total.items() if c % p}
    else:
        total = {k: c for k, c in total.items() if c}
    return Poly(target, total)


def mono_cmp(order, m1, m2):
    """Compare exponent vectors under ``order``; returns -1, 0 or 1."""
    if len(m1) != len(m2):
        raise ValueError("exponent vectors of different length")
    R = _order_ring(order, len(m1))
    a, b = R.mono(m1), R.mono(m2)
    return (a > b) - (a < b)


_ORDER_RINGS = {}


def _order_ring(order, n):
    key = (order, n)
    if key not in _ORDER_RINGS:
        _ORDER_RINGS[key] = Ring([f"v{i}" for i in range(n)], order=order)
    return _ORDER_RINGS[key]
