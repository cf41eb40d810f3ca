"""Normal forms, Buchberger's algorithm and membership tests.

The engine works on *module vectors*: dictionaries ``{key: coeff}`` where a
key is ``offset[position] + monomial_key``.  Offsets put lower positions
above higher ones (position-over-term).  An ideal is the one-position case.
"""

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
import threading

from .polyring import Poly, Ring, RingMismatch, _DEG_BITS

__all__ = [
    "Frame", "GBEngine", "Ideal", "ReductionCertificate", "normal_form",
    "buchberger", "ideal_membership", "radical_membership", "is_groebner",
    "s_polynomial", "reduced_gb",
]


class Frame:
    """A graded free module ``R^npos`` with position-over-term order.

    ``shifts[i]`` is the degree of the i-th basis vector, so a term
    ``m * e_i`` has degree ``deg(m) + shifts[i]``.
    """

    def __init__(self, ring, shifts=(0,)):
        self.ring = ring
        self.shifts = list(shifts)
        self.npos = n = len(self.shifts)
        self.SM = ring.S + 2 * _DEG_BITS + 8
        self.KMASK = (1 << self.SM) - 1
        self.offsets = [(n - 1 - i) << self.SM for i in range(n)]

    def key(self, pos, K):
        return self.offsets[pos] + K

    def decode(self, key):
        return self.npos - 1 - (key >> self.SM), key & self.KMASK

    def pos(self, key):
        return self.npos - 1 - (key >> self.SM)

    def deg(self, key):
        pos, K = self.decode(key)
        return self.ring.sdeg(K) + self.shifts[pos]

    def threshold(self, r):
        """Smallest key with position < r (keys at or above are 'top')."""
        return (self.npos - r) << self.SM

    def from_polys(self, entries):
        if len(entries) != self.npos:
            raise ValueError("vector length does not match the module rank")
        out = {}
        for pos, f in enumerate(entries):
            if f is None:
                continue
            if f.ring != self.ring:
                raise RingMismatch("vector entry in a different ring")
            off = self.offsets[pos]
            for k, c in f.terms.items():
                out[off + k] = c
        return out

    def to_polys(self, vec):
        parts = [dict() for _ in range(self.npos)]
        for key, c in vec.items():
            pos, K = self.decode(key)
            parts[pos][K] = c
        return [Poly(self.ring, t) for t in parts]

    def vec_deg(self, vec):
        if not vec:
            return None
        return self.deg(max(vec))


class _Elt:
    __slots__ = ("lead", "lpos", "lP", "tail", "sugar", "vec")

    def __init__(self, frame, vec, sugar):
        self.vec = vec
        self.lead = lead = max(vec)
        self.lpos, K = frame.decode(lead)
        self.lP = frame.ring.packed(K)
        self.tail = [(k, c) for k, c in vec.items() if k != lead]
        self.sugar = sugar


class GBEngine:
    """Incremental Buchberger algorithm on submodules of a free module.

    With ``track=r`` the first ``r`` positions are the 'top' block and the
    rest carry a representation; elements whose leading term falls into the
    bottom block are not used as reducers but collected in ``self.syz``
    (they are relations among the top parts).
    """

    def __init__(self, frame, track=None, criteria=True):
        self.frame = frame
        self.ring = frame.ring
        self.p = frame.ring.field.p
        self.F = frame.ring.field
        self.elts = []
        self.by_pos = [[] for _ in range(frame.npos)]
        self.pairs = {}
        self.heap = []
        self.track = track
        self.top = frame.threshold(track) if track is not None else 0
        self.syz = []
        self.criteria = criteria
        # product criterion only holds for ideals
        if track is None:
            self.product = frame.npos == 1
        else:
            self.product = track == 1
        self.stats = {"pairs": 0, "zero": 0, "criteria": 0}

    # -- reduction --------------------------------------------------------
    def reduce(self, vec, full=True, cof=None):
        """Reduce a vector (dict) by the active elements; returns a new dict.

        When ``cof`` is a list, quotient steps ``(elt_index, shift, coeff)``
        are appended to it (the vector equals sum coeff*shift*elt + result).
        """
        f = dict(vec)
        heap = [-k for k in f]
        heapify(heap)
        rem = {}
        p = self.p
        frame = self.frame
        SM, KMASK, n1 = frame.SM, frame.KMASK, frame.npos - 1
        ring = self.ring
        lex = ring.kind == "lex"
        PMASK, G = ring.PMASK, ring.GUARD
        by_pos = self.by_pos
        elts = self.elts
        top = self.top
        while heap:
            k = -heappop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            if k < top:
                rem[k] = c
                rem.update(f)
                break
            pos = n1 - (k >> SM)
            K = k & KMASK
            P = K if lex else (-K) & PMASK
            PG = P | G
            for gi in by_pos[pos]:
                g = elts[gi]
                if (PG - g.lP) & G == G:
                    delta = k - g.lead
                    if cof is not None:
                        cof.append((gi, delta, c))
                    get = f.get
                    if p:
                        for gk, gc in g.tail:
                            nk = gk + delta
                            v = get(nk)
                            if v is None:
                                f[nk] = (-c * gc) % p
                                heappush(heap, -nk)
                            else:
                                v = (v - c * gc) % p
                                if v:
                                    f[nk] = v
                                else:
                                    del f[nk]
                    else:
                        for gk, gc in g.tail:
                            nk = gk + delta
                            v = get(nk)
                            if v is None:
                                f[nk] = -c * gc
                                heappush(heap, -nk)
                            else:
                                v = v - c * gc
                                if v:
                                    f[nk] = v
                                else:
                                    del f[nk]
                    break
            else:
                rem[k] = c
                if not full:
                    rem.update(f)
                    break
        return rem

    def _monic(self, vec):
        lc = vec[max(vec)]
        if lc == 1:
            return vec
        inv = self.F.inv(lc)
        p = self.p
        if p:
            return {k: c * inv % p for k, c in vec.items()}
        return {k: c * inv for k, c in vec.items()}

    # -- insertion --------------------------------------------------------
    def add(self, vec, sugar=None, reduce=True):
        """Add a generator; returns the index of the new element or None."""
        if reduce:
            vec = self.reduce(vec)
        if not vec:
            return None
        if sugar is None:
            sugar = max(self.frame.deg(k) for k in vec)
        return self._insert(vec, sugar)

    def _insert(self, vec, sugar):
        lead = max(vec)
        if lead < self.top:
            self.syz.append(vec)
            return None
        vec = self._monic(vec)
        e = _Elt(self.frame, vec, sugar)
        h = len(self.elts)
        self.elts.append(e)
        self._update(h)
        return h

    def _lcm_key(self, a, b):
        """Key of lcm of the leading terms of elements a, b (same position)."""
        ea, eb = self.elts[a], self.elts[b]
        ring = self.ring
        G = ring.GUARD
        Pa, Pb = ea.lP, eb.lP
        m = ((((Pb | G) - Pa) & G) >> 7) * 0xFF
        L = (Pb & m) | (Pa & ~m & ring.PMASK)
        return self.frame.offsets[ea.lpos] + ring.encode(L)

    def _coprime(self, a, b):
        Pa, Pb = self.elts[a].lP, self.elts[b].lP
        G = self.ring.GUARD
        m = ((((Pb | G) - Pa) & G) >> 7) * 0xFF
        return (Pa & m) | (Pb & ~m) == 0

    def _divides_key(self, a_P, lcm_key):
        ring = self.ring
        P = ring.packed(lcm_key & self.frame.KMASK)
        G = ring.GUARD
        return ((P | G) - a_P) & G == G

    def _update(self, h):
        eh = self.elts[h]
        pos = eh.lpos
        active = self.by_pos[pos]
        product = self.product and self.criteria
        if not self.criteria:
            for g in active:
                self._push_pair(g, h, self._lcm_key(g, h))
            active.append(h)
            return
        C = [(g, self._lcm_key(g, h)) for g in active]
        cop = {g: product and self._coprime(g, h) for g in active}
        D = []
        while C:
            g1, l1 = C.pop(0)
            if cop[g1]:
                D.append((g1, l1))
                continue
            P1 = self.ring.packed(l1 & self.frame.KMASK)
            G = self.ring.GUARD
            PG = P1 | G
            redundant = False
            for g2, l2 in C:
                if (PG - self.ring.packed(l2 & self.frame.KMASK)) & G == G:
                    redundant = True
                    break
            if not redundant:
                for g2, l2 in D:
                    if (PG - self.ring.packed(l2 & self.frame.KMASK)) & G == G:
                        redundant = True
                        break
            if redundant:
                self.stats["criteria"] += 1
            else:
                D.append((g1, l1))
        # chain criterion on old pairs
        hP = eh.lP
        for (a, b), (sug, lk) in list(self.pairs.items()):
            if self.elts[a].lpos != pos:
                continue
            if self._divides_key(hP, lk):
                if self._lcm_key(a, h) != lk and self._lcm_key(b, h) != lk:
                    del self.pairs[(a, b)]
                    self.stats["criteria"] += 1
        for g, l in D:
            if cop[g]:
                self.stats["criteria"] += 1
                if self.track is not None:
                    self._koszul(g, h)
                continue
            self._push_pair(g, h, l)
        self.by_pos[pos] = [g for g in active
                            if not self._divides_mono(hP, self.elts[g].lP)] + [h]

    def _divides_mono(self, aP, bP):
        G = self.ring.GUARD
        return ((bP | G) - aP) & G == G

    def _push_pair(self, a, b, lk):
        ea, eb = self.elts[a], self.elts[b]
        sdeg = self.ring.sdeg
        KM = self.frame.KMASK
        lK = lk & KM
        sugar = max(ea.sugar + sdeg(lK) - sdeg(ea.lead & KM),
                    eb.sugar + sdeg(lK) - sdeg(eb.lead & KM))
        self.pairs[(a, b)] = (sugar, lk)
        heappush(self.heap, (sugar, a, b))

    def _koszul(self, a, b):
        """Record the Koszul relation between two top-block elements."""
        ea, eb = self.elts[a], self.elts[b]
        top = self.top
        off0 = self.frame.offsets[0]
        p = self.p
        ha = [(k - off0, c) for k, c in ea.vec.items() if k >= top]
        hb = [(k - off0, c) for k, c in eb.vec.items() if k >= top]
        ta = [(k, c) for k, c in ea.vec.items() if k < top]
        tb = [(k, c) for k, c in eb.vec.items() if k < top]
        out = {}
        for mk, mc in hb:
            for k, c in ta:
                out[k + mk] = out.get(k + mk, 0) + mc * c
        for mk, mc in ha:
            for k, c in tb:
                out[k + mk] = out.get(k + mk, 0) - mc * c
        if p:
            out = {k: c % p for k, c in out.items() if c % p}
        else:
            out = {k: c for k, c in out.items() if c}
        if out:
            self.syz.append(out)

    def spoly(self, a, b, lk=None):
        if lk is None:
            lk = self._lcm_key(a, b)
        ea, eb = self.elts[a], self.elts[b]
        da, db = lk - ea.lead, lk - eb.lead
        p = self.p
        out = {k + da: c for k, c in ea.tail}
        get = out.get
        for k, c in eb.tail:
            nk = k + db
            v = get(nk, 0) - c
            if p:
                v %= p
            if v:
                out[nk] = v
            else:
                out.pop(nk, None)
        return out

    # -- main loop --------------------------------------------------------
    def complete(self, max_degree=None, should_stop=None):
        """Process pending pairs (all of them, or those of sugar <= max_degree)."""
        heap = self.heap
        while heap:
            sugar, a, b = heap[0]
            if max_degree is not None and sugar > max_degree:
                return False
            heappop(heap)
            info = self.pairs.pop((a, b), None)
            if info is None:
                continue
            self.stats["pairs"] += 1
            s = self.spoly(a, b, info[1])
            r = self.reduce(s)
            if not r:
                self.stats["zero"] += 1
                continue
            self._insert(r, sugar)
            if should_stop is not None and should_stop(self):
                return False
        return True

    def pending_degree(self):
        while self.heap and self.heap[0][1:] not in self.pairs:
            heappop(self.heap)
        return self.heap[0][0] if self.heap else None

    def active(self):
        out = []
        for lst in self.by_pos:
            out.extend(lst)
        return out

    def leads(self):
        return [self.elts[i].lead for i in self.active()]

    def reduced_basis(self):
        """Interreduced, monic basis sorted by decreasing leading term."""
        idx = sorted(self.active(), key=lambda i: self.elts[i].lead)
        out = []
        for i in idx:
            e = self.elts[i]
            lead = e.lead
            others = [j for j in idx if j != i]
            # reduce the tail only, with the other active elements
            saved = self.by_pos
            self.by_pos = [[j for j in lst if j != i] for lst in saved]
            tail = self.reduce({k: c for k, c in e.tail})
            self.by_pos = saved
            tail[lead] = e.vec[lead]
            out.append(tail)
        out.sort(key=lambda v: max(v), reverse=True)
        return out


@dataclass
class ReductionCertificate:
    remainder: Poly
    cofactors: list

    def check(self, f, G):
        total = self.remainder
        for c, g in zip(self.cofactors, G):
            total = total + c * g
        return total == f


def normal_form(f, G, with_certificate=False):
    """Division of ``f`` by the list ``G``.

    The remainder has no term divisible by a leading term of ``G``.  With
    ``with_certificate`` the cofactors satisfy ``f = sum(c_i*g_i) + r``.
    """
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise RingMismatch("normal_form: mixed rings")
    frame = Frame(ring)
    eng = GBEngine(frame)
    idx = []
    for g in G:
        if g.is_zero():
            idx.append(None)
            continue
        e = _Elt(frame, eng._monic(dict(g.terms)), 0)
        idx.append(len(eng.elts))
        eng.elts.append(e)
        eng.by_pos[0].append(idx[-1])
    cof = [] if with_certificate else None
    r = eng.reduce(dict(f.terms), cof=cof)
    rem = Poly(ring, r)
    if not with_certificate:
        return ReductionCertificate(rem, None)
    F = ring.field
    cofs = []
    for g, gi in zip(G, idx):
        if gi is None:
            cofs.append(ring.zero())
            continue
        inv = F.inv(g.lead_coeff())
        t = {}
        for j, delta, c in cof:
            if j == gi:
                t[delta] = t.get(delta, 0) + c
        q = Poly(ring, {k: v for k, v in t.items() if v}).scale(inv)
        cofs.append(q)
    return ReductionCertificate(rem, cofs)


def _gb_engine(gens, ring, criteria=True):
    frame = Frame(ring)
    eng = GBEngine(frame, criteria=criteria)
    vecs = [dict(g.terms) for g in gens if not g.is_zero()]
    vecs.sort(key=lambda v: (frame.vec_deg(v), max(v)))
    for v in vecs:
        eng.add(v)
        eng.complete(max_degree=eng.elts[-1].sugar if eng.elts else None)
    eng.complete()
    return eng


def buchberger(I, criteria=True):
    """Reduced Gröbner basis of an ideal (or list of generators), sorted
    by decreasing leading monomial."""
    gens = I.gens if isinstance(I, Ideal) else list(I)
    ring = I.ring if isinstance(I, Ideal) else gens[0].ring
    eng = _gb_engine(gens, ring, criteria)
    return [Poly(ring, v) for v in eng.reduced_basis()]


reduced_gb = buchberger


def s_polynomial(f, g):
    ring = f.ring
    lf, lg = f.lead_key(), g.lead_key()
    L = ring.lcm(lf, lg)
    F = ring.field
    return (f.mul_mono(L - lf, F.inv(f.lead_coeff()))
            - g.mul_mono(L - lg, F.inv(g.lead_coeff())))


def is_groebner(G):
    """All S-polynomials reduce to zero."""
    G = [g for g in G if not g.is_zero()]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if not normal_form(s_polynomial(G[i], G[j]), G).remainder.is_zero():
                return False
    return True


class Ideal:
    """An ideal given by generators, caching reduced Gröbner bases per order."""

    def __init__(self, ring, gens):
        gens = [ring(g) if not isinstance(g, Poly) else g for g in gens]
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("ideal generator in a different ring")
        self.ring = ring
        self.gens = gens
        self._gb = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def gb(self, order=None):
        """Reduced Gröbner basis; with ``order`` the ring is re-ordered."""
        order = order or self.ring.order
        with self._lock:
            if order not in self._gb:
                ring = self.ring if order == self.ring.order else self.ring.with_(order=order)
                gens = [g.to_ring(ring) for g in self.gens]
                self._gb[order] = buchberger(gens) if any(gens) else []
            return self._gb[order]

    def leading_monomials(self, order=None):
        return [g.lead_key() for g in self.gb(order)]

    def contains(self, f):
        return ideal_membership(f, self)

    def __contains__(self, f):
        return self.contains(f)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.gens)

    def reduce(self, f):
        return normal_form(f, self.gb()).remainder

    def is_unit(self):
        G = self.gb()
        return len(G) == 1 and G[0].lead_key() == 0


def ideal_membership(f, I):
    if f.ring != I.ring:
        raise RingMismatch("membership: element and ideal in different rings")
    if f.is_zero():
        return True
    return normal_form(f, I.gb()).remainder.is_zero()


def radical_membership(f, I, powers=3):
    """Is f in rad(I)?

    First tries f, f^2, ..., f^powers against the (cached) basis of I; if
    none lies in I, falls back to the Rabinowitsch trick: f is in rad(I)
    iff 1 is in I + (1 - w*f).
    """
    ring = I.ring
    if f.ring != ring:
        raise RingMismatch("radical membership: different rings")
    if f.is_zero():
        return True
    fk = f
    for _ in range(powers):
        if ideal_membership(fk, I):
            return True
        fk = fk * f
    w = "w_"
    while w in ring.index:
        w += "_"
    ext = Ring(ring.vars + (w,), ring.field)
    gens = [g.to_ring(ext) for g in I.gens]
    gens.append(ext.one() - ext.var(w) * f.to_ring(ext))
    G = buchberger(gens)
    return len(G) == 1 and G[0].lead_key() == 0
