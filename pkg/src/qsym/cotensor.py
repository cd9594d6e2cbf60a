"""Cotensor coalgebra Cot_H(M), the wedge operator and the quantum symmetrizer.

Elements of M^{(x)n} are sparse dicts keyed by raw words (tuples of M keys);
degree 0 elements are dicts over H keys.
"""

from __future__ import annotations

import itertools

from .linalg import ExactMatrix, Subspace, axpy, kernel, rank
from .tensor import (DEFAULT_CAP, ResourceLimitError, TensorComponent, coproduct_component,
                     model_for)


class NotInComponentError(ValueError):
    pass


class CotensorComponent:
    """M^{[]n} as a subspace of M^{(x)n}.

    Finite couples: intersection of the kernels of rcoact_i (x) id - id (x) lcoact_{i+1},
    computed on all raw words. Diagonal couples (``method="chain"``): the
    equalizer is monomial, spanned by chain words g_k = g_{k+1} g_{i_{k+1}}; the
    basis is the chain words whose last group entry lies in ``window``.
    """

    def __init__(self, couple, n, method="auto", window=None, cap=DEFAULT_CAP):
        if n < 0:
            raise ValueError("degree must be >= 0")
        self.couple = couple
        self.degree = n
        self.field = couple.field
        if method == "auto":
            method = "chain" if couple.diagonal is not None and not couple.finite else "kernel"
        if method == "chain" and couple.diagonal is None:
            raise ValueError("chain basis needs a diagonal couple")
        if method == "kernel" and not couple.finite:
            raise ValueError("kernel method needs finite H and M")
        self.method = method
        H, M = couple.hopf, couple.bimodule
        if method == "chain":
            G = H
            if window is None:
                window = G.basis() if G.finite else [G.identity]
            self.window = list(window)
        if n == 0:
            self.keys = list(self.window) if method == "chain" else list(H.basis())
            self._monomial()
            return
        if method == "chain":
            d = couple.diagonal
            rk = d.rank
            if len(self.window) * rk ** n > cap:
                raise ResourceLimitError(f"cotensor degree {n} exceeds cap {cap}")
            keys = []
            for g in self.window:
                for w in itertools.product(range(rk), repeat=n):
                    gs = [g]
                    for i in reversed(w[1:]):
                        gs.append(G.add(gs[-1], d.degrees[i]))
                    gs.reverse()
                    keys.append(tuple(zip(gs, w)))
            self.keys = keys
            self._monomial()
            return
        mk = list(M.basis())
        if len(mk) ** n > cap:
            raise ResourceLimitError(f"cotensor degree {n} raw dimension {len(mk) ** n} exceeds cap {cap}")
        self.raw_keys = list(itertools.product(mk, repeat=n))
        self.raw_index = {w: i for i, w in enumerate(self.raw_keys)}
        rows = {}
        ent = {}
        for j, w in enumerate(self.raw_keys):
            for i in range(n - 1):
                for (m, h), c in M.rcoact(w[i]).items():
                    r = rows.setdefault((i, w[:i] + (m,), h, w[i + 1:]), len(rows))
                    ent[r, j] = ent.get((r, j), 0) + c
                for (h, m), c in M.lcoact(w[i + 1]).items():
                    r = rows.setdefault((i, w[:i + 1], h, (m,) + w[i + 2:]), len(rows))
                    ent[r, j] = ent.get((r, j), 0) - c
        if n == 1:
            self.subspace = Subspace.full(len(self.raw_keys), self.field)
        else:
            self.subspace = kernel(ExactMatrix(len(rows), len(self.raw_keys), ent, self.field))
        self.basis = [{self.raw_keys[i]: c for i, c in v.items()} for v in self.subspace.basis]

    def _monomial(self):
        one = self.field.one
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.basis = [{k: one} for k in self.keys]
        self.subspace = None

    @property
    def dim(self):
        return len(self.basis)

    def _raw_vector(self, raw):
        out = {}
        for w, c in raw.items():
            i = self.raw_index.get(w)
            if i is None:
                raise NotInComponentError(f"{w!r} is not a degree-{self.degree} word")
            if c:
                out[i] = c
        return out

    def coordinates(self, raw):
        """Sparse coordinates of ``raw`` in the component basis."""
        if self.subspace is None:
            out = {}
            for k, c in raw.items():
                if not c:
                    continue
                i = self.index.get(k)
                if i is None:
                    raise NotInComponentError(f"{k!r} is not in the cotensor component")
                out[i] = c
            return out
        vec = self._raw_vector(raw)
        if not self.subspace.contains(vec):
            raise NotInComponentError("element is not in the cotensor component")
        return {i: c for i, c in enumerate(self.subspace.coordinates(vec)) if c}

    def contains(self, raw):
        try:
            self.coordinates(raw)
        except NotInComponentError:
            return False
        return True

    def element(self, coords):
        out = {}
        for i, c in coords.items():
            axpy(out, c, self.basis[i])
        return out

    def __repr__(self):
        return f"CotensorComponent(n={self.degree}, {self.method}, dim={self.dim})"


def cotensor_component(couple, n, method="auto", window=None, cap=DEFAULT_CAP):
    return CotensorComponent(couple, n, method, window, cap)


def cotensor_comultiply(z, n, couple, component=None):
    """Comultiplication of z in M^{[]n}: dict (i, n - i) -> {(left, right): coef}.

    Left and right are raw elements keyed by H keys (degree 0) or raw words.
    The (0, n) block uses the left coaction on the first factor, the (n, 0)
    block the right coaction on the last one, the others deconcatenate.
    """
    if component is not None and not component.contains(z):
        raise NotInComponentError("element is not in the cotensor component")
    H, M = couple.hopf, couple.bimodule
    out = {}
    if n == 0:
        blk = {}
        for h, c in z.items():
            axpy(blk, c, H.comul(h))
        return {(0, 0): blk}
    first, last = {}, {}
    for w, c in z.items():
        for (h, m), s in M.lcoact(w[0]).items():
            axpy(first, c * s, {(h, (m,) + w[1:]): 1})
        for (m, h), s in M.rcoact(w[-1]).items():
            axpy(last, c * s, {(w[:-1] + (m,), h): 1})
    out[(0, n)] = first
    for i in range(1, n):
        out[(i, n - i)] = {(w[:i], w[i:]): c for w, c in z.items() if c}
    out[(n, 0)] = last
    return out


# ---------------------------------------------------------------------------
# quantum symmetrizer

class SymmetrizerMap:
    """Omega_n: T_n -> M^{(x)n}, the (1, ..., 1) block of the iterated coproduct."""

    def __init__(self, component, images):
        self.component = component
        self.degree = component.degree
        self.images = images  # one raw dict per T basis key
        keys = sorted({w for im in images for w in im}, key=repr)
        self.raw_keys = keys
        self.raw_index = {w: i for i, w in enumerate(keys)}
        self.field = component.model.field
        ent = {}
        for j, im in enumerate(images):
            for w, c in im.items():
                ent[self.raw_index[w], j] = c
        self.matrix = ExactMatrix(len(keys), len(images), ent, self.field)
        self._rank = None
        self._kernel = None

    @property
    def rank(self):
        if self._rank is None:
            self._rank = rank(self.matrix)
        return self._rank

    def kernel(self):
        """ker Omega_n in coordinates of the tensor component basis."""
        if self._kernel is None:
            self._kernel = kernel(self.matrix)
        return self._kernel

    def apply(self, coords):
        out = {}
        for j, c in coords.items():
            axpy(out, c, self.images[j])
        return out

    def __repr__(self):
        return f"SymmetrizerMap(n={self.degree}, rank={self.rank} of {self.component.dim})"


def omega(x):
    """Omega applied to a GradedElement: raw element of M^{(x)n}."""
    model = x.model
    if x.degree == 0:
        out = {}
        for k, c in x.coeffs.items():
            axpy(out, c, {model.h_of(k): 1})
        return out
    out = {}
    for slots, c in coproduct_component(x, (1,) * x.degree).items():
        axpy(out, c, {tuple(model.m_of(k) for k in slots): 1})
    return out


def symmetrizer(couple, n, model="auto", reduced=False, cap=DEFAULT_CAP):
    m = model if not isinstance(model, str) else model_for(couple, model, cap)
    comp = TensorComponent(m, n, reduced)
    images = [omega(m.basis_element(k, n)) for k in comp.keys]
    return SymmetrizerMap(comp, images)


# ---------------------------------------------------------------------------
# wedge

ALL = "all"
ZERO = "zero"


class GradedSubspace:
    """Per-degree subspaces of Cot truncated at a degree bound.

    Each degree holds ``ALL``, ``ZERO`` or a :class:`Subspace` in the
    coordinates of the matching cotensor component.
    """

    def __init__(self, parts):
        self.parts = dict(parts)

    @classmethod
    def uniform(cls, D, value):
        return cls({n: value for n in range(D + 1)})

    @classmethod
    def degree0(cls, D):
        """H, sitting in degree 0."""
        return cls({n: ALL if n == 0 else ZERO for n in range(D + 1)})

    @classmethod
    def degrees01(cls, D):
        """H + M."""
        return cls({n: ALL if n <= 1 else ZERO for n in range(D + 1)})

    def part(self, n):
        return self.parts.get(n, ZERO)

    def dim(self, n, comp):
        p = self.part(n)
        if p == ALL:
            return comp.dim
        if p == ZERO:
            return 0
        return p.dim

    def subspace(self, n, comp):
        p = self.part(n)
        if p == ALL:
            return Subspace.full(comp.dim, comp.field)
        if p == ZERO:
            return Subspace.zero(comp.dim, comp.field)
        return p

    def same_as(self, other, comps):
        return all(self.subspace(n, c) == other.subspace(n, c) for n, c in comps.items())


def wedge(couple, V, W, D, window=None, cap=DEFAULT_CAP):
    """V ^ W = Delta^{-1}(V (x) C + C (x) W) in each degree n <= D.

    Returns (GradedSubspace, components) where components[n] is the cotensor
    component used for degree n. For lazy diagonal couples the degree-n
    component is the window of chain words ending in ``window``; the middle
    blocks of Delta are computed on raw words so no window is needed there.
    """
    comps = {n: CotensorComponent(couple, n, window=window, cap=cap) for n in range(D + 1)}
    lazy = not couple.finite
    parts = {}
    for n in range(D + 1):
        comp = comps[n]
        rows = {}
        cols = []
        for b in comp.basis:
            col = {}
            for (i, j), blk in cotensor_comultiply(b, n, couple).items():
                pv, pw = V.part(i), W.part(j)
                if pv == ALL or pw == ALL:
                    continue
                if lazy and (pv != ZERO or pw != ZERO):
                    raise ValueError("explicit wedge inputs need a finite couple")
                if pv == ZERO and pw == ZERO:
                    for (u, v), c in blk.items():
                        r = rows.setdefault((i, u, v), len(rows))
                        col[r] = col.get(r, 0) + c
                else:
                    _explicit_block(col, rows, blk, i, j, pv, pw, comps)
            cols.append({r: c for r, c in col.items() if c})
        if not rows:
            parts[n] = Subspace.full(comp.dim, comp.field)
        else:
            parts[n] = kernel(ExactMatrix.from_columns(len(rows), cols, comp.field))
    return GradedSubspace(parts), comps


def _explicit_block(col, rows, blk, i, j, pv, pw, comps):
    """Add (red_V (x) red_W)(blk) when at least one side is an explicit subspace."""
    ci, cj = comps[i], comps[j]
    # expand blk in component coordinates: sum_u u (x) f(u), with u, f(u) raw
    by_left = {}
    for (u, v), c in blk.items():
        axpy(by_left.setdefault(u, {}), c, {v: 1})
    # coordinates of the right legs for each raw left word, then regroup by right coordinate
    tens = {}
    for u, right in by_left.items():
        rc = _reduced_coords(pw, cj, right)
        for b, c in rc.items():
            axpy(tens.setdefault(b, {}), c, {u: 1})
    for b, left in tens.items():
        lc = _reduced_coords(pv, ci, left)
        for a, c in lc.items():
            r = rows.setdefault((i, ("c", a), ("c", b)), len(rows))
            col[r] = col.get(r, 0) + c


def _reduced_coords(part, comp, raw):
    if part == ZERO:
        return comp.coordinates(raw)
    return part.reduce(comp.coordinates(raw))


def wedge_fact(couple, D, window=None, cap=DEFAULT_CAP):
    """Compare wedge(H, H) with H + M degree by degree.

    Returns a list of (n, computed dim, expected dim, equal).
    """
    got, comps = wedge(couple, GradedSubspace.degree0(D), GradedSubspace.degree0(D), D, window, cap)
    want = GradedSubspace.degrees01(D)
    out = []
    for n in range(D + 1):
        a = got.subspace(n, comps[n])
        b = want.subspace(n, comps[n])
        out.append((n, a.dim, b.dim, a == b))
    return out


__all__ = [
    "CotensorComponent", "cotensor_component", "cotensor_comultiply", "NotInComponentError",
    "SymmetrizerMap", "symmetrizer", "omega", "GradedSubspace", "wedge", "wedge_fact", "ALL", "ZERO",
]
