"""Hopf algebras as data, Hopf pairings, and their validators.

Two backends share one interface: :class:`StructureConstantHopf` for any
finite-dimensional Hopf algebra given by tables, and
:class:`AbelianGroupAlgebra`, the group algebra of Z/n_1 x ... x Z/n_r
(n_k = 0 meaning Z) evaluated lazily on group-element tuples.

Elements are dicts ``basis key -> scalar``.
"""

from __future__ import annotations

import itertools

from .linalg import (ExactMatrix, Field, FieldMismatchError, Subspace, axpy,
                     kernel, vscale)
from .report import Recorder, ValidationReport


class GroupTableError(ValueError):
    pass


class HopfAlgebra:
    field: Field
    finite: bool
    grouplike: bool = False

    def basis(self):
        raise NotImplementedError

    def elements(self, bound=None):
        """Basis keys; lazy backends enumerate a finite window."""
        return self.basis()

    @property
    def dim(self):
        return len(self.basis())

    # basis-level structure -------------------------------------------------
    def mul(self, a, b):
        raise NotImplementedError

    def unit(self):
        raise NotImplementedError

    def comul(self, a):
        raise NotImplementedError

    def counit(self, a):
        raise NotImplementedError

    def antipode(self, a):
        raise NotImplementedError

    # linear extensions -----------------------------------------------------
    def mul_v(self, x, y):
        out = {}
        for a, s in x.items():
            for b, t in y.items():
                axpy(out, s * t, self.mul(a, b))
        return out

    def comul_v(self, x):
        out = {}
        for a, s in x.items():
            axpy(out, s, self.comul(a))
        return out

    def counit_v(self, x):
        return sum((s * self.counit(a) for a, s in x.items()), self.field.zero)

    def antipode_v(self, x):
        out = {}
        for a, s in x.items():
            axpy(out, s, self.antipode(a))
        return out

    def iterated_comul(self, a, k):
        """k-fold coproduct of a basis element: dict of k-tuples.

        k = 0 gives the counit as ``{(): eps(a)}``.
        """
        if k == 0:
            e = self.counit(a)
            return {(): e} if e else {}
        cur = {(a,): self.field.one}
        for _ in range(k - 1):
            nxt = {}
            for t, c in cur.items():
                for (x, y), d in self.comul(t[-1]).items():
                    key = t[:-1] + (x, y)
                    axpy(nxt, 1, {key: c * d})
            cur = nxt
        return cur


class StructureConstantHopf(HopfAlgebra):
    """Finite-dimensional Hopf algebra on basis 0..dim-1 (optionally labelled)."""

    finite = True

    def __init__(self, dim, mult, unit, comult, counit, antipode, field, labels=None,
                 grouplike=False):
        self.field = field
        self._dim = dim
        self._mult = {k: dict(v) for k, v in mult.items()}
        self._unit = dict(unit)
        self._comult = {k: dict(v) for k, v in comult.items()}
        self._counit = list(counit)
        self._antipode = {k: dict(v) for k, v in antipode.items()}
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(dim)]
        self.grouplike = grouplike

    def basis(self):
        return list(range(self._dim))

    def mul(self, a, b):
        return self._mult.get((a, b), {})

    def unit(self):
        return self._unit

    def comul(self, a):
        return self._comult.get(a, {})

    def counit(self, a):
        return self._counit[a]

    def antipode(self, a):
        return self._antipode.get(a, {})

    def antipode_matrix(self):
        return ExactMatrix.from_columns(self._dim, [self.antipode(i) for i in range(self._dim)],
                                        self.field)

    def replace(self, **kw):
        args = dict(dim=self._dim, mult=self._mult, unit=self._unit, comult=self._comult,
                    counit=self._counit, antipode=self._antipode, field=self.field,
                    labels=self.labels, grouplike=self.grouplike)
        args.update(kw)
        return StructureConstantHopf(**args)

    def __repr__(self):
        return f"StructureConstantHopf(dim={self._dim}, {self.field!r})"


class AbelianGroupAlgebra(HopfAlgebra):
    """K[Z/n_1 x ... x Z/n_r], basis = reduced integer tuples."""

    grouplike = True

    def __init__(self, moduli, field):
        moduli = tuple(int(n) for n in moduli)
        if any(n < 0 for n in moduli):
            raise ValueError(f"moduli must be >= 0, got {moduli}")
        self.moduli = moduli
        self.field = field
        self.finite = all(n > 0 for n in moduli)

    @property
    def rank(self):
        return len(self.moduli)

    def reduce(self, t):
        return tuple(x % n if n else x for x, n in zip(t, self.moduli))

    def add(self, a, b):
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a):
        return self.reduce(tuple(-x for x in a))

    def scale(self, k, a):
        return self.reduce(tuple(k * x for x in a))

    @property
    def identity(self):
        return (0,) * len(self.moduli)

    def basis(self):
        if not self.finite:
            raise ValueError("infinite group algebra has no finite basis; use elements(bound)")
        return list(itertools.product(*[range(n) for n in self.moduli]))

    def elements(self, bound=None):
        if self.finite and bound is None:
            return self.basis()
        if bound is None:
            raise ValueError("lazy group algebra needs a degree bound")
        ranges = [range(n) if n else range(-bound, bound + 1) for n in self.moduli]
        return list(itertools.product(*ranges))

    def mul(self, a, b):
        return {self.add(a, b): self.field.one}

    def unit(self):
        return {self.identity: self.field.one}

    def comul(self, a):
        return {(a, a): self.field.one}

    def iterated_comul(self, a, k):
        return {(a,) * k: self.field.one}

    def counit(self, a):
        return self.field.one

    def antipode(self, a):
        return {self.neg(a): self.field.one}

    def __repr__(self):
        return f"AbelianGroupAlgebra({self.moduli}, {self.field!r})"


def build_group_algebra(field, table=None, moduli=None, labels=None):
    """Group algebra from a multiplication table (structure constants) or abelian moduli (lazy)."""
    if moduli is not None:
        return AbelianGroupAlgebra(moduli, field)
    if table is None:
        raise ValueError("need a multiplication table or moduli")
    n = len(table)
    if any(len(row) != n for row in table):
        raise GroupTableError("table is not square")
    for i, j in itertools.product(range(n), repeat=2):
        if not (0 <= table[i][j] < n):
            raise GroupTableError(f"product ({i}, {j}) = {table[i][j]} out of range")
    ids = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not ids:
        raise GroupTableError("no identity element")
    e = ids[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise GroupTableError(f"associativity fails at triple ({a}, {b}, {c})")
    inv = {}
    for a in range(n):
        cands = [b for b in range(n) if table[a][b] == e and table[b][a] == e]
        if not cands:
            raise GroupTableError(f"element {a} has no inverse")
        inv[a] = cands[0]
    one = field.one
    mult = {(a, b): {table[a][b]: one} for a in range(n) for b in range(n)}
    comult = {a: {(a, a): one} for a in range(n)}
    antipode = {a: {inv[a]: one} for a in range(n)}
    return StructureConstantHopf(n, mult, {e: one}, comult, [one] * n, antipode, field,
                                 labels=labels or [f"g{i}" for i in range(n)], grouplike=True)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _tensor_mul(h, x, y):
    """Product in H (x) H of two dicts keyed by pairs."""
    out = {}
    for (a1, a2), s in x.items():
        for (b1, b2), t in y.items():
            for c1, u in h.mul(a1, b1).items():
                for c2, v in h.mul(a2, b2).items():
                    axpy(out, 1, {(c1, c2): s * t * u * v})
    return out


def validate_hopf(h, degree_bound=1):
    rep = ValidationReport(f"Hopf axioms for {h!r}")
    rec = Recorder(rep)
    B = h.elements(degree_bound)
    one = h.unit()
    for a, b, c in itertools.product(B, repeat=3):
        rec.check("associativity", h.mul_v(h.mul(a, b), {c: h.field.one})
                  == h.mul_v({a: h.field.one}, h.mul(b, c)), (a, b, c))
    for a in B:
        x = {a: h.field.one}
        rec.check("unit", h.mul_v(one, x) == x and h.mul_v(x, one) == x, (a,))
    for a in B:
        d = h.comul(a)
        left, right = {}, {}
        for (x, y), s in d.items():
            for (x1, x2), t in h.comul(x).items():
                axpy(left, s * t, {(x1, x2, y): 1})
            for (y1, y2), t in h.comul(y).items():
                axpy(right, s * t, {(x, y1, y2): 1})
        rec.check("coassociativity", left == right, (a,))
    for a in B:
        d = h.comul(a)
        l, r = {}, {}
        for (x, y), s in d.items():
            axpy(l, s * h.counit(x), {y: 1})
            axpy(r, s * h.counit(y), {x: 1})
        x = {a: h.field.one}
        rec.check("counit", l == x and r == x, (a,))
    for a, b in itertools.product(B, repeat=2):
        lhs = h.comul_v(h.mul(a, b))
        rhs = _tensor_mul(h, h.comul(a), h.comul(b))
        rec.check("comultiplication is an algebra map", lhs == rhs, (a, b))
        rec.check("counit is an algebra map",
                  h.counit_v(h.mul(a, b)) == h.counit(a) * h.counit(b), (a, b))
    d1 = h.comul_v(one)
    rec.check("comultiplication is an algebra map", d1 == {(u, v): s * t for u, s in one.items()
                                                           for v, t in one.items()}, ("unit",))
    rec.check("counit is an algebra map", h.counit_v(one) == h.field.one, ("unit",))
    for a in B:
        target = vscale(h.counit(a), one)
        l, r = {}, {}
        for (x, y), s in h.comul(a).items():
            axpy(l, s, h.mul_v(h.antipode(x), {y: h.field.one}))
            axpy(r, s, h.mul_v({x: h.field.one}, h.antipode(y)))
        rec.check("antipode", l == target and r == target, (a,))
    return rec.flush()


# ---------------------------------------------------------------------------
# Hopf pairings

class HopfPairing:
    left: HopfAlgebra
    right: HopfAlgebra

    def value(self, a, b):
        raise NotImplementedError

    def value_v(self, x, y):
        tot = self.left.field.zero
        for a, s in x.items():
            for b, t in y.items():
                tot = tot + s * t * self.value(a, b)
        return tot

    def transpose(self):
        raise NotImplementedError


class MatrixPairing(HopfPairing):
    """Pairing of finite algebras given on basis pairs; missing entries are zero."""

    def __init__(self, left, right, values):
        if left.field != right.field:
            raise FieldMismatchError("pairing between algebras over different fields")
        self.left = left
        self.right = right
        self.values = {k: v for k, v in values.items() if v}

    def value(self, a, b):
        return self.values.get((a, b), self.left.field.zero)

    def matrix(self):
        L, R = self.left.basis(), self.right.basis()
        return ExactMatrix(len(L), len(R), {(i, j): self.value(a, b) for i, a in enumerate(L)
                                            for j, b in enumerate(R)}, self.left.field)

    def transpose(self):
        return MatrixPairing(self.right, self.left, {(b, a): v for (a, b), v in self.values.items()})

    def __repr__(self):
        return f"MatrixPairing({self.left!r}, {self.right!r})"


class BicharacterPairing(HopfPairing):
    """beta(a, b) = prod_{k,l} q[k][l]^(a_k b_l) on two abelian group algebras."""

    def __init__(self, left, right, q):
        if left.field != right.field:
            raise FieldMismatchError("pairing between algebras over different fields")
        F = left.field
        self.left = left
        self.right = right
        self.q = tuple(tuple(F(x) for x in row) for row in q)
        if len(self.q) != left.rank or any(len(r) != right.rank for r in self.q):
            raise ValueError("bicharacter matrix shape does not match group ranks")
        if any(not x for row in self.q for x in row):
            raise ValueError("bicharacter entries must be nonzero")
        self._cache = {}

    def value(self, a, b):
        hit = self._cache.get((a, b))
        if hit is not None:
            return hit
        v = self.left.field.one
        for k, ak in enumerate(a):
            if not ak:
                continue
            for l, bl in enumerate(b):
                e = ak * bl
                if e:
                    v = v * self.q[k][l] ** e
        self._cache[a, b] = v
        return v

    def well_defined(self):
        """List of (k, l) where q_kl violates a finite modulus."""
        bad = []
        for k, row in enumerate(self.q):
            for l, x in enumerate(row):
                nk, nl = self.left.moduli[k], self.right.moduli[l]
                if (nk and x ** nk != 1) or (nl and x ** nl != 1):
                    bad.append((k, l))
        return bad

    def transpose(self):
        qt = [[self.q[k][l] for k in range(len(self.q))] for l in range(self.right.rank)]
        return BicharacterPairing(self.right, self.left, qt)

    def __repr__(self):
        return f"BicharacterPairing(q={[[str(x) for x in r] for r in self.q]})"


class CounitPairing(HopfPairing):
    """phi(h, b) = eps(h) eps(b)."""

    def __init__(self, left, right):
        self.left, self.right = left, right

    def value(self, a, b):
        return self.left.counit(a) * self.right.counit(b)

    def transpose(self):
        return CounitPairing(self.right, self.left)


def transpose_pairing(phi):
    return phi.transpose()


def validate_hopf_pairing(phi, degree_bound=1):
    H, B = phi.left, phi.right
    if H.field != B.field:
        raise FieldMismatchError(f"{H.field!r} vs {B.field!r}")
    F = H.field
    rep = ValidationReport(f"Hopf pairing axioms for {phi!r}")
    if isinstance(phi, BicharacterPairing):
        bad = phi.well_defined()
        rep.add("bicharacter well-defined", not bad, tuple(bad[0]) if bad else None)
    rec = Recorder(rep)
    HB, BB = H.elements(degree_bound), B.elements(degree_bound)
    one_h, one_b = H.unit(), B.unit()
    for b in BB:
        rec.check("phi(1, b) = eps(b)", phi.value_v(one_h, {b: F.one}) == B.counit(b), (b,))
    for a in HB:
        rec.check("phi(h, 1) = eps(h)", phi.value_v({a: F.one}, one_b) == H.counit(a), (a,))
    for a in HB:
        dh = H.comul(a)
        for b, c in itertools.product(BB, repeat=2):
            lhs = phi.value_v({a: F.one}, B.mul(b, c))
            rhs = sum((s * phi.value(x, b) * phi.value(y, c) for (x, y), s in dh.items()), F.zero)
            rec.check("phi(h, bc) = sum phi(h1, b) phi(h2, c)", lhs == rhs, (a, b, c))
    for b in BB:
        db = B.comul(b)
        for a, g in itertools.product(HB, repeat=2):
            lhs = phi.value_v(H.mul(a, g), {b: F.one})
            rhs = sum((s * phi.value(a, x) * phi.value(g, y) for (x, y), s in db.items()), F.zero)
            rec.check("phi(hg, b) = sum phi(h, b1) phi(g, b2)", lhs == rhs, (a, g, b))
    for a, b in itertools.product(HB, BB):
        rec.check("phi(S h, b) = phi(h, S b)",
                  phi.value_v(H.antipode(a), {b: F.one}) == phi.value_v({a: F.one}, B.antipode(b)),
                  (a, b))
    return rec.flush()


class NondegeneracyResult:
    def __init__(self, nondegenerate, radical, keys):
        self.nondegenerate = nondegenerate
        self.radical = radical
        self.keys = keys

    def __bool__(self):
        return self.nondegenerate

    def radical_vectors(self):
        return [{self.keys[i]: c for i, c in v.items()} for v in self.radical.basis]

    def __repr__(self):
        return f"NondegeneracyResult({self.nondegenerate}, radical dim {self.radical.dim})"


def nondegeneracy(phi, side="left", degree_bound=None):
    """Radical of a pairing H x B -> K.

    ``side="left"``: left non-degenerate means every nonzero y in B pairs
    nontrivially with some x in H, so the radical lives in B. ``"right"``
    is the mirror statement with the radical in H.

    For lazy backends the candidate radical vectors are restricted to group
    elements within ``degree_bound`` and tested against a window twice as wide.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "right":
        phi = phi.transpose()
    H, B = phi.left, phi.right
    if (not H.finite or not B.finite) and degree_bound is None:
        raise ValueError("lazy backend needs a degree_bound")
    cand = B.elements(degree_bound) if not B.finite else B.basis()
    tests = H.elements(2 * degree_bound) if not H.finite else H.basis()
    m = ExactMatrix(len(tests), len(cand), {(i, j): phi.value(a, b) for i, a in enumerate(tests)
                                            for j, b in enumerate(cand)}, H.field)
    rad = kernel(m)
    return NondegeneracyResult(rad.dim == 0, rad, cand)


def pairing_block(phi, rows, cols):
    return ExactMatrix(len(rows), len(cols), {(i, j): phi.value(a, b) for i, a in enumerate(rows)
                                              for j, b in enumerate(cols)}, phi.left.field)


__all__ = [
    "HopfAlgebra", "StructureConstantHopf", "AbelianGroupAlgebra", "build_group_algebra",
    "cyclic_table", "validate_hopf", "HopfPairing", "MatrixPairing", "BicharacterPairing",
    "CounitPairing", "transpose_pairing", "validate_hopf_pairing", "nondegeneracy",
    "NondegeneracyResult", "GroupTableError", "Subspace",
]
