"""Graded components of the tensor Hopf algebra T_H(M).

Every element of T_H(M) is handled through *atom sequences*: a basis element
of degree n is a product of atoms ``("H", h)`` and ``("M", m)`` with n atoms
of kind M. A model only has to say how to bring an atom sequence into normal
form; products, the comultiplication and the antipode are then computed by
the same generic code for every couple.

Two models:

* :class:`QuotientModel` -- M^{(x)n} modulo the balancing subspace
  span{x (x) h.y - x.h (x) y}; representatives are the non-pivot words of the
  RREF balancing basis. Works for any couple with finite H and M.
* :class:`FreeModel` -- diagonal couples only; basis (g, i_1...i_n) stands for
  (g, i_1) (x) (1, i_2) (x) ... (x) (1, i_n). Works for infinite groups.
"""

from __future__ import annotations

import itertools

from .linalg import Subspace, axpy, rref
from .report import Recorder, ValidationReport

DEFAULT_CAP = 10 ** 5


class ResourceLimitError(RuntimeError):
    pass


class CoupleMismatchError(ValueError):
    pass


def _mul_dicts(a, b, join):
    out = {}
    for k1, s in a.items():
        for k2, t in b.items():
            axpy(out, 1, {join(k1, k2): s * t})
    return out


class TensorModel:
    kind = "abstract"

    def __init__(self, couple, cap=DEFAULT_CAP):
        self.couple = couple
        self.hopf = couple.hopf
        self.bimodule = couple.bimodule
        self.field = couple.field
        self.cap = cap
        self._iter_cache = {}

    # -- model specific --------------------------------------------------------
    def basis(self, n, reduced=False):
        raise NotImplementedError

    def atoms(self, key, n):
        raise NotImplementedError

    def _normalize(self, atoms):
        raise NotImplementedError

    def raw_dim(self, n):
        raise NotImplementedError

    # -- generic -----------------------------------------------------------
    def normalize(self, atoms):
        atoms = tuple(atoms)
        return self._normalize_cached(atoms)

    def _normalize_cached(self, atoms):
        cache = self.__dict__.setdefault("_norm_cache", {})
        r = cache.get(atoms)
        if r is None:
            r = self._normalize(atoms)
            cache[atoms] = r
        return r

    def guard(self, n):
        d = self.raw_dim(n)
        if d > self.cap:
            raise ResourceLimitError(f"degree {n} raw dimension {d} exceeds cap {self.cap}")

    def iterated_atom(self, atom, k):
        """k-fold coproduct of one atom: list of (coef, slots, mslot)."""
        ck = (atom, k)
        hit = self._iter_cache.get(ck)
        if hit is not None:
            return hit
        H, M = self.hopf, self.bimodule
        out = []
        kind, x = atom
        if kind == "H":
            for t, c in H.iterated_comul(x, k).items():
                out.append((c, tuple(("H", h) for h in t), None))
        else:
            for (a, m0, b), s in M.bicoact(x).items():
                for j in range(k):
                    for lt, u in H.iterated_comul(a, j).items():
                        for rt, v in H.iterated_comul(b, k - 1 - j).items():
                            slots = tuple(("H", h) for h in lt) + (("M", m0),) + \
                                tuple(("H", h) for h in rt)
                            out.append((s * u * v, slots, j))
        self._iter_cache[ck] = out
        return out

    def element(self, n, coeffs):
        return GradedElement(self, n, {k: v for k, v in coeffs.items() if v})

    def basis_element(self, key, n, coef=None):
        return GradedElement(self, n, {key: self.field.one if coef is None else coef})

    def unit(self):
        return self.element(0, self.normalize(()))


class FreeModel(TensorModel):
    kind = "free"

    def __init__(self, couple, cap=DEFAULT_CAP):
        if couple.diagonal is None:
            raise ValueError("free model needs a diagonal couple")
        super().__init__(couple, cap)
        self.data = couple.diagonal
        self.group = couple.hopf

    def raw_dim(self, n):
        size = len(self.group.basis()) if self.group.finite else 1
        return size * self.data.rank ** n

    def words(self, n):
        return list(itertools.product(range(self.data.rank), repeat=n))

    def basis(self, n, reduced=False):
        self.guard(n)
        if reduced or not self.group.finite:
            gs = [self.group.identity]
        else:
            gs = self.group.basis()
        return [(g, w) for g in gs for w in self.words(n)]

    def atoms(self, key, n):
        g, w = key
        e = self.group.identity
        if not w:
            return (("H", g),)
        return (("M", (g, w[0])),) + tuple(("M", (e, i)) for i in w[1:])

    def _normalize(self, atoms):
        G, d = self.group, self.data
        g = G.identity
        coef = self.field.one
        letters = []
        for kind, x in atoms:
            h, i = (x, None) if kind == "H" else x
            for j in letters:
                coef = coef * d.chi(j, h)
            g = G.add(g, h)
            if i is not None:
                letters.append(i)
        return {(g, tuple(letters)): coef}

    def h_of(self, key):
        return key[0]

    def m_of(self, key):
        g, (i,) = key
        return (g, i)

    def to_raw(self, key):
        """The element of M^{(x)n} (or H) represented by a free basis key."""
        g, w = key
        if not w:
            return {g: self.field.one}
        return {tuple(x for _, x in self.atoms(key, len(w))): self.field.one}


class QuotientModel(TensorModel):
    kind = "quotient"

    def __init__(self, couple, cap=DEFAULT_CAP):
        if not couple.finite:
            raise ValueError("quotient model needs finite H and M")
        super().__init__(couple, cap)
        self.mkeys = self.bimodule.basis()
        self.hkeys = self.hopf.basis()
        self.mindex = {m: i for i, m in enumerate(self.mkeys)}
        self._bal = {}

    def raw_dim(self, n):
        if n == 0:
            return len(self.hkeys)
        return len(self.mkeys) ** n

    def word_index(self, word):
        idx = 0
        r = len(self.mkeys)
        for m in word:
            idx = idx * r + self.mindex[m]
        return idx

    def index_word(self, idx, n):
        r = len(self.mkeys)
        out = []
        for _ in range(n):
            idx, d = divmod(idx, r)
            out.append(self.mkeys[d])
        return tuple(reversed(out))

    def balancing(self, n):
        """RREF basis of span{x (x) h.y - x.h (x) y} inside M^{(x)n}."""
        if n in self._bal:
            return self._bal[n]
        self.guard(n)
        M = self.bimodule
        vecs = []
        if n >= 2:
            for word in itertools.product(self.mkeys, repeat=n):
                for p in range(1, n):
                    for h in self.hkeys:
                        v = {}
                        for y, s in M.lact(h, word[p]).items():
                            w = word[:p] + (y,) + word[p + 1:]
                            axpy(v, s, {self.word_index(w): 1})
                        for x, s in M.ract(word[p - 1], h).items():
                            w = word[:p - 1] + (x,) + word[p:]
                            axpy(v, -s, {self.word_index(w): 1})
                        if v:
                            vecs.append(v)
        sub = Subspace(self.raw_dim(n), rref(vecs, self.raw_dim(n), self.field), self.field)
        self._bal[n] = sub
        return sub

    def basis(self, n, reduced=False):
        if n == 0:
            return list(self.hkeys)
        bal = self.balancing(n)
        piv = set(bal.pivots)
        return [self.index_word(i, n) for i in range(self.raw_dim(n)) if i not in piv]

    def atoms(self, key, n):
        if n == 0:
            return (("H", key),)
        return tuple(("M", m) for m in key)

    def h_of(self, key):
        return key

    def m_of(self, key):
        return key[0]

    def to_raw(self, key):
        return {key: self.field.one}

    def fold(self, atoms):
        """Absorb H atoms into neighbouring M factors: returns (degree, raw dict)."""
        H, M = self.hopf, self.bimodule
        # state: (word, pending H key or None) -> coef
        state = {((), None): self.field.one}
        for kind, x in atoms:
            nxt = {}
            for (word, pend), c in state.items():
                if kind == "H":
                    if pend is None:
                        axpy(nxt, c, {(word, x): 1})
                    else:
                        for h, s in H.mul(pend, x).items():
                            axpy(nxt, c * s, {(word, h): 1})
                    continue
                if not word:
                    ms = {x: self.field.one} if pend is None else M.lact(pend, x)
                    for m, s in ms.items():
                        axpy(nxt, c * s, {((m,), None): 1})
                else:
                    lasts = {word[-1]: self.field.one} if pend is None else M.ract(word[-1], pend)
                    for m, s in lasts.items():
                        axpy(nxt, c * s, {(word[:-1] + (m, x), None): 1})
            state = nxt
        n = sum(1 for k, _ in atoms if k == "M")
        out = {}
        for (word, pend), c in state.items():
            if not word:
                hs = H.unit() if pend is None else {pend: self.field.one}
                axpy(out, c, hs)
            elif pend is None:
                axpy(out, c, {word: 1})
            else:
                for m, s in M.ract(word[-1], pend).items():
                    axpy(out, c * s, {word[:-1] + (m,): 1})
        return n, out

    def reduce_raw(self, n, raw):
        if n == 0:
            return dict(raw)
        bal = self.balancing(n)
        vec = bal.reduce({self.word_index(w): c for w, c in raw.items()})
        return {self.index_word(i, n): c for i, c in vec.items()}

    def _normalize(self, atoms):
        n, raw = self.fold(atoms)
        return self.reduce_raw(n, raw)


def model_for(couple, kind="auto", cap=DEFAULT_CAP):
    """Cached tensor model of a couple."""
    if kind == "auto":
        kind = "free" if couple.diagonal is not None else "quotient"
    cache = couple.__dict__.setdefault("_models", {})
    key = (kind, cap)
    if key not in cache:
        cache[key] = (FreeModel if kind == "free" else QuotientModel)(couple, cap)
    return cache[key]


class GradedElement:
    __slots__ = ("model", "degree", "coeffs")

    def __init__(self, model, degree, coeffs):
        self.model = model
        self.degree = degree
        self.coeffs = coeffs

    def _check(self, other):
        if other.model is not self.model:
            raise CoupleMismatchError("elements from different tensor models")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("adding elements of different degrees")
        out = dict(self.coeffs)
        axpy(out, 1, other.coeffs)
        return GradedElement(self.model, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, a):
        a = self.model.field(a)
        return GradedElement(self.model, self.degree,
                             {k: a * v for k, v in self.coeffs.items()} if a else {})

    def __mul__(self, other):
        return tensor_multiply(self, other)

    def __eq__(self, other):
        return (isinstance(other, GradedElement) and other.model is self.model
                and other.degree == self.degree and other.coeffs == self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"GradedElement(deg={self.degree}, {self.coeffs})"


class TensorComponent:
    def __init__(self, model, degree, reduced):
        self.model = model
        self.degree = degree
        self.reduced = reduced
        self.keys = model.basis(degree, reduced=reduced)
        self.index = {k: i for i, k in enumerate(self.keys)}

    @property
    def dim(self):
        return len(self.keys)

    def vector(self, el):
        return {self.index[k]: c for k, c in el.coeffs.items()}

    def __repr__(self):
        return f"TensorComponent({self.model.kind}, n={self.degree}, dim={self.dim})"


def tensor_component(couple, n, model="auto", reduced=False, cap=DEFAULT_CAP):
    if n < 0:
        raise ValueError("degree must be >= 0")
    m = model if isinstance(model, TensorModel) else model_for(couple, model, cap)
    return TensorComponent(m, n, reduced)


def tensor_multiply(x, y):
    x._check(y)
    model = x.model
    out = {}
    for a, s in x.coeffs.items():
        at = model.atoms(a, x.degree)
        for b, t in y.coeffs.items():
            axpy(out, s * t, model.normalize(at + model.atoms(b, y.degree)))
    return GradedElement(model, x.degree + y.degree, out)


def tensor_counit(x):
    if x.degree:
        return x.model.field.zero
    model = x.model
    tot = model.field.zero
    for key, c in x.coeffs.items():
        tot = tot + c * model.hopf.counit(model.h_of(key))
    return tot


def coproduct_component(x, shape):
    """Block of the iterated coproduct of x in T_{d_1} (x) ... (x) T_{d_k}.

    Returns a dict keyed by k-tuples of basis keys.
    """
    shape = tuple(shape)
    if sum(shape) != x.degree or any(d < 0 for d in shape):
        raise ValueError(f"shape {shape} does not split degree {x.degree}")
    model = x.model
    k = len(shape)
    if k == 1:
        return {(key,): c for key, c in x.coeffs.items()}
    out = {}
    for key, c in x.coeffs.items():
        states = {((),) * k + ((0,) * k,): c}
        for atom in model.atoms(key, x.degree):
            terms = model.iterated_atom(atom, k)
            nxt = {}
            for st, sc in states.items():
                slots, counts = st[:k], st[k]
                for tc, tslots, j in terms:
                    if j is not None:
                        if counts[j] >= shape[j]:
                            continue
                        ncounts = counts[:j] + (counts[j] + 1,) + counts[j + 1:]
                    else:
                        ncounts = counts
                    nslots = tuple(s + (a,) for s, a in zip(slots, tslots))
                    axpy(nxt, sc * tc, {nslots + (ncounts,): 1})
            states = nxt
        for st, sc in states.items():
            slots = st[:k]
            acc = {(): sc}
            for s in slots:
                acc = _mul_dicts(acc, model.normalize(s), lambda u, v: u + (v,))
            axpy(out, 1, acc)
    return out


def tensor_comultiply(x):
    """delta(x) as a list of (i, block) with block in T_i (x) T_{n-i}."""
    return [(i, coproduct_component(x, (i, x.degree - i))) for i in range(x.degree + 1)]


def _antipode_atom(model, atom):
    H, M = model.hopf, model.bimodule
    kind, x = atom
    if kind == "H":
        return [(c, (("H", h),)) for h, c in H.antipode(x).items()]
    out = []
    for (a, m0, b), s in M.bicoact(x).items():
        for sa, u in H.antipode(a).items():
            for sb, v in H.antipode(b).items():
                out.append((-s * u * v, (("H", sa), ("M", m0), ("H", sb))))
    return out


def tensor_antipode(x):
    model = x.model
    out = {}
    for key, c in x.coeffs.items():
        seqs = {(): c}
        for atom in reversed(model.atoms(key, x.degree)):
            nxt = {}
            for seq, sc in seqs.items():
                for tc, tail in _antipode_atom(model, atom):
                    axpy(nxt, sc * tc, {seq + tail: 1})
            seqs = nxt
        for seq, sc in seqs.items():
            axpy(out, sc, model.normalize(seq))
    return GradedElement(model, x.degree, out)


def embed_degree0(model, hvec):
    """An element of H viewed in T_0."""
    out = {}
    for h, c in hvec.items():
        axpy(out, c, model.normalize((("H", h),)))
    return GradedElement(model, 0, out)


def free_to_quotient(x, quotient):
    """Image of a free-model element in the quotient model of the same finite couple."""
    if x.model.kind != "free" or quotient.couple is not x.model.couple:
        raise CoupleMismatchError("need a free-model element and the quotient model of its couple")
    out = {}
    for key, c in x.coeffs.items():
        axpy(out, c, quotient.normalize(x.model.atoms(key, x.degree)))
    return GradedElement(quotient, x.degree, out)


def tensor_apply_pair(block, f, g):
    """(f (x) g) applied to a 2-slot block, f and g mapping keys to GradedElements."""
    out = None
    for (a, b), c in block.items():
        term = tensor_multiply(f(a), g(b)).scale(c)
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# structural checks

def check_coalgebra(model, elements):
    """Coassociativity and counit laws of delta on the given elements."""
    rep = ValidationReport(f"tensor coalgebra laws ({model.kind} model)")
    rec = Recorder(rep)
    one = model.field.one
    for x in elements:
        n = x.degree
        for a, b, c in ((a, b, n - a - b) for a in range(n + 1) for b in range(n + 1 - a)):
            # (delta (x) id) delta and (id (x) delta) delta, block (a, b, c)
            left = {}
            for (u, v), s in coproduct_component(x, (a + b, c)).items():
                for (u1, u2), t in coproduct_component(model.basis_element(u, a + b), (a, b)).items():
                    axpy(left, s * t, {(u1, u2, v): 1})
            right = {}
            for (u, v), s in coproduct_component(x, (a, b + c)).items():
                for (v1, v2), t in coproduct_component(model.basis_element(v, b + c), (b, c)).items():
                    axpy(right, s * t, {(u, v1, v2): 1})
            rec.check("coassociativity", left == right, (tuple(x.coeffs), (a, b, c)))
        l, r = {}, {}
        for (u, v), s in coproduct_component(x, (0, n)).items():
            axpy(l, s * tensor_counit(model.basis_element(u, 0)), {v: one})
        for (u, v), s in coproduct_component(x, (n, 0)).items():
            axpy(r, s * tensor_counit(model.basis_element(v, 0)), {u: one})
        rec.check("counit", l == x.coeffs and r == x.coeffs, tuple(x.coeffs))
    return rec.flush()


def check_antipode(model, elements):
    """m (s (x) id) delta = u eps = m (id (x) s) delta."""
    rep = ValidationReport(f"tensor antipode identity ({model.kind} model)")
    rec = Recorder(rep)
    for x in elements:
        n = x.degree
        target = model.unit().scale(tensor_counit(x)) if n == 0 else model.element(n, {})
        left = model.element(n, {})
        right = model.element(n, {})
        for i in range(n + 1):
            for (u, v), s in coproduct_component(x, (i, n - i)).items():
                U, V = model.basis_element(u, i, s), model.basis_element(v, n - i)
                left = left + tensor_multiply(tensor_antipode(U), V)
                right = right + tensor_multiply(U, tensor_antipode(V))
        rec.check("m(s x id)delta = u eps", left == target, tuple(x.coeffs))
        rec.check("m(id x s)delta = u eps", right == target, tuple(x.coeffs))
    return rec.flush()


def check_multiplicative(model, pairs):
    """delta(xy) = delta(x) delta(y), blockwise."""
    rep = ValidationReport(f"delta is an algebra map ({model.kind} model)")
    rec = Recorder(rep)
    for x, y in pairs:
        n = x.degree + y.degree
        for i in range(n + 1):
            lhs = coproduct_component(tensor_multiply(x, y), (i, n - i))
            rhs = {}
            for a in range(max(0, i - y.degree), min(i, x.degree) + 1):
                b = i - a
                for (x1, x2), s in coproduct_component(x, (a, x.degree - a)).items():
                    for (y1, y2), t in coproduct_component(y, (b, y.degree - b)).items():
                        p1 = tensor_multiply(model.basis_element(x1, a), model.basis_element(y1, b))
                        p2 = tensor_multiply(model.basis_element(x2, x.degree - a),
                                             model.basis_element(y2, y.degree - b))
                        for k1, u in p1.coeffs.items():
                            for k2, v in p2.coeffs.items():
                                axpy(rhs, s * t * u * v, {(k1, k2): 1})
            rec.check("delta(xy) = delta(x)delta(y)", lhs == rhs,
                      (tuple(x.coeffs), tuple(y.coeffs), i))
    return rec.flush()


def associated_couple_check(model, bound=1):
    """Degree 0 and 1 of T_H(M) reproduce the couple (H, M) (actions and coactions)."""
    rep = ValidationReport(f"associated couple of T ({model.kind} model)")
    rec = Recorder(rep)
    H, M = model.hopf, model.bimodule
    one = model.field.one

    def emb1(mvec):
        out = {}
        for m, c in mvec.items():
            axpy(out, c, model.normalize((("M", m),)))
        return out

    def emb0(hvec):
        return embed_degree0(model, hvec).coeffs

    for m in M.elements(bound):
        x = GradedElement(model, 1, emb1({m: one}))
        for h in H.elements(bound):
            hx = tensor_multiply(embed_degree0(model, {h: one}), x)
            xh = tensor_multiply(x, embed_degree0(model, {h: one}))
            rec.check("H1 left action = multiplication", hx.coeffs == emb1(M.lact(h, m)), (h, m))
            rec.check("H1 right action = multiplication", xh.coeffs == emb1(M.ract(m, h)), (m, h))
        left, right = {}, {}
        for (a, m0), s in M.lcoact(m).items():
            for u, t in emb0({a: one}).items():
                for v, w in emb1({m0: one}).items():
                    axpy(left, s * t * w, {(u, v): 1})
        for (m0, a), s in M.rcoact(m).items():
            for u, t in emb1({m0: one}).items():
                for v, w in emb0({a: one}).items():
                    axpy(right, s * t * w, {(u, v): 1})
        rec.check("rho_l = delta block (0,1)", coproduct_component(x, (0, 1)) == left, (m,))
        rec.check("rho_r = delta block (1,0)", coproduct_component(x, (1, 0)) == right, (m,))
    return rec.flush()
