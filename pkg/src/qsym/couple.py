"""Hopf bimodules, couples (H, M), couple pairings and the diagonal family."""

from __future__ import annotations

import itertools

from .hopf import AbelianGroupAlgebra, BicharacterPairing, HopfAlgebra, validate_hopf_pairing
from .linalg import Field, FieldMismatchError, axpy
from .report import Recorder, ValidationReport


class CoupleError(ValueError):
    pass


class HopfBimodule:
    """An H-bimodule and H-bicomodule; elements are dicts over basis keys.

    ``lcoact(m)`` is keyed by pairs (h, m') and ``rcoact(m)`` by pairs (m', h).
    """

    hopf: HopfAlgebra
    finite: bool

    @property
    def field(self):
        return self.hopf.field

    def basis(self):
        raise NotImplementedError

    def elements(self, bound=None):
        return self.basis()

    def lact(self, h, m):
        raise NotImplementedError

    def ract(self, m, h):
        raise NotImplementedError

    def lcoact(self, m):
        raise NotImplementedError

    def rcoact(self, m):
        raise NotImplementedError

    def lact_v(self, hv, mv):
        out = {}
        for h, s in hv.items():
            for m, t in mv.items():
                axpy(out, s * t, self.lact(h, m))
        return out

    def ract_v(self, mv, hv):
        out = {}
        for m, s in mv.items():
            for h, t in hv.items():
                axpy(out, s * t, self.ract(m, h))
        return out

    def lcoact_v(self, mv):
        out = {}
        for m, s in mv.items():
            axpy(out, s, self.lcoact(m))
        return out

    def rcoact_v(self, mv):
        out = {}
        for m, s in mv.items():
            axpy(out, s, self.rcoact(m))
        return out

    def bicoact(self, m):
        """(Id (x) rcoact) lcoact(m) as a dict keyed by (m_-1, m_0, m_1)."""
        out = {}
        for (h, m0), s in self.lcoact(m).items():
            for (m1, k), t in self.rcoact(m0).items():
                axpy(out, 1, {(h, m1, k): s * t})
        return out


class TableBimodule(HopfBimodule):
    """Bimodule given by explicit sparse tables over a finite Hopf algebra."""

    finite = True

    def __init__(self, hopf, keys, lact, ract, lcoact, rcoact, labels=None):
        self.hopf = hopf
        self.keys = list(keys)
        self._lact = {k: dict(v) for k, v in lact.items()}
        self._ract = {k: dict(v) for k, v in ract.items()}
        self._lcoact = {k: dict(v) for k, v in lcoact.items()}
        self._rcoact = {k: dict(v) for k, v in rcoact.items()}
        self.labels = labels

    def basis(self):
        return list(self.keys)

    def lact(self, h, m):
        return self._lact.get((h, m), {})

    def ract(self, m, h):
        return self._ract.get((m, h), {})

    def lcoact(self, m):
        return self._lcoact.get(m, {})

    def rcoact(self, m):
        return self._rcoact.get(m, {})


class RegularBimodule(HopfBimodule):
    """H as an H-Hopf bimodule: multiplication on both sides, both coactions = comultiplication."""

    def __init__(self, hopf):
        if not hopf.finite:
            raise CoupleError("regular couple needs a finite-dimensional Hopf algebra")
        self.hopf = hopf
        self.finite = True

    def basis(self):
        return self.hopf.basis()

    def lact(self, h, m):
        return self.hopf.mul(h, m)

    def ract(self, m, h):
        return self.hopf.mul(m, h)

    def lcoact(self, m):
        return self.hopf.comul(m)

    def rcoact(self, m):
        return self.hopf.comul(m)


class DiagonalData:
    """Letters i = 0..rank-1 of group degree ``degrees[i]`` with characters.

    ``chars[i][l]`` is chi_i(e_l), the value of the character of letter i on the
    l-th generator of the group. The braiding matrix is q_ij = chi_j(g_i).
    """

    def __init__(self, moduli, degrees, chars, field):
        self.field = field
        self.moduli = tuple(int(n) for n in moduli)
        self.group = AbelianGroupAlgebra(self.moduli, field)
        self.degrees = [self.group.reduce(tuple(d)) for d in degrees]
        self.chars = [tuple(field(x) for x in row) for row in chars]
        if len(self.chars) != len(self.degrees):
            raise CoupleError("one character per letter required")
        r = len(self.moduli)
        for d, c in zip(self.degrees, self.chars):
            if len(d) != r or len(c) != r:
                raise CoupleError(f"degree/character length must equal group rank {r}")

    @classmethod
    def standard(cls, q, field, moduli=None):
        """Letter i sits in degree e_i and chi_i(e_k) = q_ki, so that q_ij = chi_j(g_i).

        With ``moduli=()`` the group is trivial and q must be all ones.
        """
        theta = len(q)
        q = [[field(x) for x in row] for row in q]
        if moduli is not None and len(moduli) == 0:
            if any(x != 1 for row in q for x in row):
                raise CoupleError("trivial group only carries the braiding q = 1")
            return cls((), [()] * theta, [()] * theta, field)
        moduli = tuple(moduli) if moduli is not None else (0,) * theta
        if len(moduli) != theta:
            raise CoupleError("standard diagonal data needs one cyclic factor per letter")
        degrees = [tuple(1 if k == i else 0 for k in range(theta)) for i in range(theta)]
        chars = [[q[k][i] for k in range(theta)] for i in range(theta)]
        return cls(moduli, degrees, chars, field)

    @property
    def rank(self):
        return len(self.degrees)

    def chi(self, i, h):
        cache = self.__dict__.setdefault("_chi", {})
        v = cache.get((i, h))
        if v is None:
            v = self.field.one
            for c, e in zip(self.chars[i], h):
                if e:
                    v = v * c ** e
            cache[i, h] = v
        return v

    @property
    def braiding(self):
        return [[self.chi(j, self.degrees[i]) for j in range(self.rank)] for i in range(self.rank)]

    def problems(self):
        """Violated invariants as (message, witness) pairs."""
        out = []
        for i, row in enumerate(self.chars):
            for l, c in enumerate(row):
                if not c:
                    out.append(("character value is zero", (i, l)))
                elif self.moduli[l] and c ** self.moduli[l] != 1:
                    out.append(("character not well-defined on finite factor", (i, l)))
        return out

    def to_json(self):
        F = self.field
        return {"moduli": list(self.moduli), "degrees": [list(d) for d in self.degrees],
                "characters": [[F.to_json(x) for x in row] for row in self.chars]}

    def __repr__(self):
        return f"DiagonalData(rank={self.rank}, moduli={self.moduli})"


class DiagonalBimodule(HopfBimodule):
    """M = H (x) V with basis (g, i):

    k.(g,i) = (kg, i);  (g,i).k = chi_i(k) (gk, i);
    lcoact(g,i) = g g_i (x) (g,i);  rcoact(g,i) = (g,i) (x) g.
    """

    def __init__(self, data):
        self.data = data
        self.hopf = data.group
        self.finite = data.group.finite

    def basis(self):
        return [(g, i) for g in self.hopf.basis() for i in range(self.data.rank)]

    def elements(self, bound=None):
        return [(g, i) for g in self.hopf.elements(bound) for i in range(self.data.rank)]

    def lact(self, h, m):
        g, i = m
        return {(self.hopf.add(h, g), i): self.field.one}

    def ract(self, m, h):
        g, i = m
        return {(self.hopf.add(g, h), i): self.data.chi(i, h)}

    def lcoact(self, m):
        g, i = m
        return {(self.hopf.add(g, self.data.degrees[i]), m): self.field.one}

    def rcoact(self, m):
        return {(m, m[0]): self.field.one}


class Couple:
    def __init__(self, hopf, bimodule, diagonal=None):
        if bimodule.hopf is not hopf and bimodule.field != hopf.field:
            raise FieldMismatchError("bimodule and Hopf algebra over different fields")
        self.hopf = hopf
        self.bimodule = bimodule
        self.diagonal = diagonal

    @property
    def field(self):
        return self.hopf.field

    @property
    def finite(self):
        return self.hopf.finite and self.bimodule.finite

    def __repr__(self):
        kind = "diagonal" if self.diagonal is not None else type(self.bimodule).__name__
        return f"Couple({kind}, {self.hopf!r})"


def regular_couple(h):
    return Couple(h, RegularBimodule(h))


def build_diagonal_couple(diag, field=None, check=True):
    if field is not None and field != diag.field:
        raise FieldMismatchError("diagonal data built over a different field")
    if check:
        bad = diag.problems()
        if bad:
            raise CoupleError(f"{bad[0][0]} at {bad[0][1]}")
    return Couple(diag.group, DiagonalBimodule(diag), diagonal=diag)


def validate_hopf_bimodule(couple, degree_bound=1):
    H, M = couple.hopf, couple.bimodule
    F = H.field
    rep = ValidationReport(f"Hopf bimodule axioms for {couple!r}")
    if couple.diagonal is not None:
        bad = couple.diagonal.problems()
        rep.add("character well-definedness", not bad, bad[0][1] if bad else None)
    rec = Recorder(rep)
    HB = H.elements(degree_bound)
    MB = M.elements(degree_bound)
    one = H.unit()
    e = lambda k: {k: F.one}
    for m in MB:
        rec.check("left module: unit", M.lact_v(one, e(m)) == e(m), (m,))
        rec.check("right module: unit", M.ract_v(e(m), one) == e(m), (m,))
    for h, k in itertools.product(HB, repeat=2):
        hk = H.mul(h, k)
        for m in MB:
            rec.check("left module: associativity",
                      M.lact_v(hk, e(m)) == M.lact_v(e(h), M.lact(k, m)), (h, k, m))
            rec.check("right module: associativity",
                      M.ract_v(e(m), hk) == M.ract_v(M.ract(m, h), e(k)), (m, h, k))
            rec.check("bimodule: actions commute",
                      M.ract_v(M.lact(h, m), e(k)) == M.lact_v(e(h), M.ract(m, k)), (h, m, k))
    for m in MB:
        l1, l2, r1, r2, b1, b2 = {}, {}, {}, {}, {}, {}
        cl, cr = {}, {}
        for (h, m0), s in M.lcoact(m).items():
            for (x, y), t in H.comul(h).items():
                axpy(l1, s * t, {(x, y, m0): 1})
            for (y, m00), t in M.lcoact(m0).items():
                axpy(l2, s * t, {(h, y, m00): 1})
            axpy(cl, s * H.counit(h), {m0: 1})
            for (m1, k), t in M.rcoact(m0).items():
                axpy(b2, s * t, {(h, m1, k): 1})
        for (m0, k), s in M.rcoact(m).items():
            for (x, y), t in H.comul(k).items():
                axpy(r1, s * t, {(m0, x, y): 1})
            for (m00, y), t in M.rcoact(m0).items():
                axpy(r2, s * t, {(m00, y, k): 1})
            axpy(cr, s * H.counit(k), {m0: 1})
            for (h, m1), t in M.lcoact(m0).items():
                axpy(b1, s * t, {(h, m1, k): 1})
        rec.check("left comodule: coassociativity", l1 == l2, (m,))
        rec.check("left comodule: counit", cl == e(m), (m,))
        rec.check("right comodule: coassociativity", r1 == r2, (m,))
        rec.check("right comodule: counit", cr == e(m), (m,))
        rec.check("bicomodule: coactions commute", b1 == b2, (m,))
    for h, k in itertools.product(HB, repeat=2):
        dh, dk = H.comul(h), H.comul(k)
        for m in MB:
            hmk = M.ract_v(M.lact(h, m), e(k))
            lhs_l, lhs_r = M.lcoact_v(hmk), M.rcoact_v(hmk)
            rhs_l, rhs_r = {}, {}
            for (h1, h2), s in dh.items():
                for (k1, k2), t in dk.items():
                    for (a, m0), u in M.lcoact(m).items():
                        left = H.mul_v(H.mul(h1, a), e(k1))
                        right = M.ract_v(M.lact(h2, m0), e(k2))
                        for x, v in left.items():
                            for y, w in right.items():
                                axpy(rhs_l, s * t * u * v * w, {(x, y): 1})
                    for (m0, a), u in M.rcoact(m).items():
                        left = M.ract_v(M.lact(h1, m0), e(k1))
                        right = H.mul_v(H.mul(h2, a), e(k2))
                        for x, v in left.items():
                            for y, w in right.items():
                                axpy(rhs_r, s * t * u * v * w, {(x, y): 1})
            rec.check("compatibility: lcoact(h.m.k)", lhs_l == rhs_l, (h, m, k))
            rec.check("compatibility: rcoact(h.m.k)", lhs_r == rhs_r, (h, m, k))
    return rec.flush()


# ---------------------------------------------------------------------------
# couple pairings

class Bilinear:
    field: Field

    def value(self, m, n):
        raise NotImplementedError

    def transpose(self):
        return TransposedBilinear(self)


class ExplicitBilinear(Bilinear):
    def __init__(self, values, field):
        self.field = field
        self.values = {k: field(v) for k, v in values.items() if v}

    def value(self, m, n):
        return self.values.get((m, n), self.field.zero)


class TransposedBilinear(Bilinear):
    def __init__(self, inner):
        self.inner = inner
        self.field = inner.field

    def value(self, m, n):
        return self.inner.value(n, m)

    def transpose(self):
        return self.inner


class DiagonalBilinear(Bilinear):
    """phi1((g,i), (h,j)) = scale * delta_ij * beta(g, h) beta(g, g_i) beta(g_i, h)."""

    def __init__(self, beta, data, scale=1):
        self.beta = beta
        self.data = data
        self.field = data.field
        self.scale = self.field(scale)
        self._cache = {}

    def value(self, m, n):
        (g, i), (h, j) = m, n
        if i != j or not self.scale:
            return self.field.zero
        hit = self._cache.get((m, n))
        if hit is None:
            gi = self.data.degrees[i]
            b = self.beta.value
            hit = self._cache[m, n] = self.scale * b(g, h) * b(g, gi) * b(gi, h)
        return hit


class CouplePairing:
    def __init__(self, phi0, phi1, left, right):
        if left.field != right.field:
            raise FieldMismatchError("couples over different fields")
        self.phi0 = phi0
        self.phi1 = phi1
        self.left = left
        self.right = right

    @property
    def field(self):
        return self.left.field

    def transpose(self):
        return CouplePairing(self.phi0.transpose(), self.phi1.transpose(), self.right, self.left)

    def __repr__(self):
        return f"CouplePairing({self.left!r}, {self.right!r})"


def validate_couple_pairing(p, degree_bound=1):
    A, B = p.left, p.right
    if A.field != B.field or p.phi1.field != A.field:
        raise FieldMismatchError("couple pairing mixes fields")
    F = A.field
    rep = ValidationReport(f"couple pairing axioms for {p!r}")
    rep.extend(validate_hopf_pairing(p.phi0, degree_bound), prefix="phi0: ")
    rec = Recorder(rep)
    H, M = A.hopf, A.bimodule
    K, N = B.hopf, B.bimodule
    phi0, phi1 = p.phi0.value, p.phi1.value
    HB, KB = H.elements(degree_bound), K.elements(degree_bound)
    MB, NB = M.elements(degree_bound), N.elements(degree_bound)
    n3 = {n: N.bicoact(n) for n in NB}
    m3 = {m: M.bicoact(m) for m in MB}
    e = lambda k: {k: F.one}
    for h, g in itertools.product(HB, repeat=2):
        for m in MB:
            hmg = M.ract_v(M.lact(h, m), e(g))
            for n in NB:
                lhs = sum((s * phi1(x, n) for x, s in hmg.items()), F.zero)
                rhs = sum((s * phi0(h, a) * phi1(m, n0) * phi0(g, c)
                           for (a, n0, c), s in n3[n].items()), F.zero)
                rec.check("phi1(h.m.g, n) = phi0(h, n_-1) phi1(m, n_0) phi0(g, n_1)",
                          lhs == rhs, (h, m, g, n))
    for b, c in itertools.product(KB, repeat=2):
        for n in NB:
            bnc = N.ract_v(N.lact(b, n), e(c))
            for m in MB:
                lhs = sum((s * phi1(m, y) for y, s in bnc.items()), F.zero)
                rhs = sum((s * phi0(a, b) * phi1(m0, n) * phi0(d, c)
                           for (a, m0, d), s in m3[m].items()), F.zero)
                rec.check("phi1(m, b.n.c) = phi0(m_-1, b) phi1(m_0, n) phi0(m_1, c)",
                          lhs == rhs, (m, b, n, c))
    return rec.flush()


def self_dual_bicharacter(diag):
    """Bicharacter beta with beta(x, g_i) = beta(g_i, x) = chi_i(x)^-1, on standard data."""
    G = diag.group
    r = G.rank
    if r == 0:
        return BicharacterPairing(G, G, [])
    theta = diag.rank
    std = [tuple(1 if k == i else 0 for k in range(theta)) for i in range(theta)]
    if r != theta or diag.degrees != [G.reduce(d) for d in std]:
        raise CoupleError("self-dual diagonal pairing needs letters in the standard generator degrees")
    # beta(e_k, e_l) = chi_l(e_k)^-1 = q_kl^-1
    q = [[1 / diag.chars[l][k] for l in range(theta)] for k in range(theta)]
    for k, l in itertools.product(range(theta), repeat=2):
        if diag.chars[l][k] != diag.chars[k][l]:
            raise CoupleError(f"braiding not symmetric at ({k}, {l}); no self-dual diagonal pairing")
    beta = BicharacterPairing(G, G, q)
    bad = beta.well_defined()
    if bad:
        raise CoupleError(f"bicharacter ill-defined at {bad[0]}")
    return beta


def build_self_dual_diagonal_pairing(diag, field=None, phi1_scale=1):
    c = build_diagonal_couple(diag, field)
    beta = self_dual_bicharacter(diag)
    p = CouplePairing(beta, DiagonalBilinear(beta, diag, phi1_scale), c, c)
    return c, c, p


def zero_phi1_pairing(p):
    """Same phi0, phi1 = 0: always a valid, degenerate couple pairing."""
    return CouplePairing(p.phi0, ExplicitBilinear({}, p.field), p.left, p.right)


__all__ = [
    "HopfBimodule", "TableBimodule", "RegularBimodule", "DiagonalBimodule", "DiagonalData",
    "Couple", "CoupleError", "regular_couple", "build_diagonal_couple", "validate_hopf_bimodule",
    "Bilinear", "ExplicitBilinear", "TransposedBilinear", "DiagonalBilinear", "CouplePairing",
    "validate_couple_pairing", "build_self_dual_diagonal_pairing", "self_dual_bicharacter",
    "zero_phi1_pairing",
]
