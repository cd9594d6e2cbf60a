"""Graded Hopf pairings between tensor and cotensor algebras.

The T x T pairing is computed by peeling off the first tensor factor:
phi(m . rest, y) = sum phi1(m, y_(1)) phi(rest, y_(2)), with y_(1) y_(2) the
(1, n - 1) block of the coproduct of y. Only the comultiplication of the
second couple and the actions of the first are used, so any validated couple
pairing works.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cotensor import CotensorComponent, symmetrizer
from .couple import validate_couple_pairing
from .hopf import nondegeneracy
from .linalg import ExactMatrix, axpy, kernel, rank
from .report import Recorder, ValidationReport
from .tensor import (DEFAULT_CAP, CoupleMismatchError, TensorComponent,
                     coproduct_component, model_for, tensor_antipode, tensor_counit,
                     tensor_multiply)


class UnvalidatedPairingError(ValueError):
    pass


def default_reduced(couple):
    """Diagonal couples are reported modulo the free H factor."""
    return couple.diagonal is not None


class PairingEngine:
    """Memoized evaluation of the T x T pairing for one couple pairing."""

    def __init__(self, p, cap=DEFAULT_CAP, validate=True, degree_bound=1):
        if validate:
            rep = validate_couple_pairing(p, degree_bound)
            if not rep.ok:
                raise UnvalidatedPairingError(str(rep))
        self.p = p
        self.field = p.field
        self.A = model_for(p.left, "auto", cap)
        self.B = model_for(p.right, "auto", cap)
        self._memo = {}
        self._cop = {}

    def _split(self, y, n):
        hit = self._cop.get((y, n))
        if hit is None:
            hit = coproduct_component(self.B.basis_element(y, n), (1, n - 1))
            self._cop[(y, n)] = hit
        return hit

    def value(self, x, y, n):
        """phi''(x, y) on basis keys of degree n."""
        key = (x, y, n)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        F = self.field
        A, B = self.A, self.B
        if n == 0:
            v = self.p.phi0.value(A.h_of(x), B.h_of(y))
        else:
            atoms = A.atoms(x, n)
            kind, m = atoms[0]
            rest = A.normalize(atoms[1:])
            v = F.zero
            for (y1, y2), c in self._split(y, n).items():
                a = self.p.phi1.value(m, B.m_of(y1))
                if not a:
                    continue
                s = F.zero
                for r, d in rest.items():
                    s = s + d * self.value(r, y2, n - 1)
                v = v + c * a * s
        self._memo[key] = v
        return v

    def pair(self, x, y):
        """Bilinear extension to GradedElements."""
        if x.model is not self.A or y.model is not self.B:
            raise CoupleMismatchError("elements do not belong to this pairing")
        if x.degree != y.degree:
            return self.field.zero
        tot = self.field.zero
        for a, s in x.coeffs.items():
            for b, t in y.coeffs.items():
                tot = tot + s * t * self.value(a, b, x.degree)
        return tot

    def pair_tensor_cot(self, raw_x, raw_z, n):
        """phi1^{(x)n}(x', z) on raw elements of M^{(x)n} and N^{(x)n}."""
        F = self.field
        tot = F.zero
        for u, s in raw_x.items():
            for v, t in raw_z.items():
                if n == 0:
                    tot = tot + s * t * self.p.phi0.value(u, v)
                    continue
                prod = s * t
                for a, b in zip(u, v):
                    prod = prod * self.p.phi1.value(a, b)
                    if not prod:
                        break
                tot = tot + prod
        return tot


def engine_for(p, cap=DEFAULT_CAP):
    cache = p.__dict__.setdefault("_engines", {})
    if cap not in cache:
        cache[cap] = PairingEngine(p, cap)
    return cache[cap]


@dataclass
class GramMatrix:
    degree: int
    rows: list
    cols: list
    matrix: ExactMatrix
    provenance: str

    @property
    def rank(self):
        return rank(self.matrix)

    def row_radical(self):
        """Vectors r with r^T G = 0 (first-argument radical)."""
        return kernel(self.matrix.T)

    def column_radical(self):
        """Vectors k with G k = 0 (second-argument radical)."""
        return kernel(self.matrix)

    def to_lists(self):
        return self.matrix.to_lists()


def gram_matrix(p, n, reduced=None, cap=DEFAULT_CAP, engine=None):
    """T x T Gram block in degree n."""
    eng = engine or engine_for(p, cap)
    if reduced is None:
        reduced = default_reduced(p.left) and default_reduced(p.right)
    rows = TensorComponent(eng.A, n, reduced).keys
    cols = TensorComponent(eng.B, n, reduced).keys
    ent = {(i, j): eng.value(x, y, n) for i, x in enumerate(rows) for j, y in enumerate(cols)}
    return GramMatrix(n, rows, cols, ExactMatrix(len(rows), len(cols), ent, p.field), "TxT")


def cotensor_for(couple, n, reduced, cap=DEFAULT_CAP):
    if reduced and couple.diagonal is not None:
        return CotensorComponent(couple, n, method="chain", window=[couple.hopf.identity], cap=cap)
    return CotensorComponent(couple, n, cap=cap)


def gram_matrix_T_vs_Cot(p, n, reduced=None, cap=DEFAULT_CAP, engine=None):
    """T x Cot Gram block: entries phi1^{(x)n}(x', z) with x' a raw representative."""
    eng = engine or engine_for(p, cap)
    if reduced is None:
        reduced = default_reduced(p.left) and default_reduced(p.right)
    rows = TensorComponent(eng.A, n, reduced).keys
    cot = cotensor_for(p.right, n, reduced, cap)
    ent = {}
    for i, x in enumerate(rows):
        rx = eng.A.to_raw(x)
        for j, z in enumerate(cot.basis):
            ent[i, j] = eng.pair_tensor_cot(rx, z, n)
    g = GramMatrix(n, rows, list(range(cot.dim)), ExactMatrix(len(rows), cot.dim, ent, p.field), "TxCot")
    g.cotensor = cot
    return g


# ---------------------------------------------------------------------------
# relations and Hilbert series

def relations(c, n, reduced=None, cap=DEFAULT_CAP):
    """Basis of I(H, M)_n = ker Omega_n as dicts over tensor basis keys."""
    if reduced is None:
        reduced = default_reduced(c)
    om = symmetrizer(c, n, reduced=reduced, cap=cap)
    keys = om.component.keys
    return [{keys[i]: v for i, v in vec.items()} for vec in om.kernel().basis]


def _letter(i, rank):
    return "v" if rank == 1 else f"v{i + 1}"


def format_key(c, key, n):
    """Readable word for a tensor basis key."""
    if c.diagonal is not None:
        g, w = key
        word = ".".join(_letter(i, c.diagonal.rank) for i in w) if w else "1"
        if g != c.hopf.identity:
            word = f"g{list(g)}*" + word
        return word
    if n == 0:
        return f"h{key!r}"
    mk = list(c.bimodule.basis())
    return ".".join(f"m{mk.index(m)}" for m in key)


def format_combination(c, vec, n):
    parts = []
    for key, v in sorted(vec.items(), key=lambda kv: repr(kv[0])):
        word = format_key(c, key, n)
        s = str(v)
        if s == "1":
            parts.append(f"+ {word}")
        elif s == "-1":
            parts.append(f"- {word}")
        elif s.startswith("-"):
            parts.append(f"- ({s[1:]}) {word}")
        else:
            parts.append(f"+ ({s}) {word}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[1:]


@dataclass
class HilbertSeries:
    D: int
    mode: str
    omega: list = field(default_factory=list)
    gram: list | None = None
    truncated_at: int | None = None

    @property
    def dims(self):
        return self.omega

    @property
    def agree(self):
        return self.gram is None or self.gram == self.omega

    def to_dict(self):
        return {"D": self.D, "mode": self.mode, "omega": self.omega, "gram": self.gram,
                "agree": self.agree, "truncated_at": self.truncated_at}


def hilbert(c, p=None, D=4, reduced=None, cap=DEFAULT_CAP):
    """dim S_H(M)_n for n <= D via rank Omega_n and, given a pairing, via rank Gram_n."""
    from .tensor import ResourceLimitError
    if reduced is None:
        reduced = default_reduced(c)
    hs = HilbertSeries(D, "reduced-modulo-H" if reduced else "full")
    if p is not None:
        if p.left is not c:
            raise CoupleMismatchError("pairing's first couple differs from the couple")
        hs.gram = []
    for n in range(D + 1):
        try:
            om = symmetrizer(c, n, reduced=reduced, cap=cap).rank
            gr = gram_matrix(p, n, reduced, cap).rank if p is not None else None
        except ResourceLimitError:
            hs.truncated_at = n
            break
        hs.omega.append(om)
        if p is not None:
            hs.gram.append(gr)
    return hs


# ---------------------------------------------------------------------------
# structural checks of the induced pairing

def phi1_nondegeneracy(p, side="left", degree_bound=1):
    """Radical of phi1 on M x N (side as in hopf.nondegeneracy)."""
    A, B = (p.left, p.right) if side == "left" else (p.right, p.left)
    val = p.phi1.value if side == "left" else (lambda m, n: p.phi1.value(n, m))
    M, N = A.bimodule, B.bimodule
    cand = N.basis() if B.finite else N.elements(degree_bound)
    tests = M.basis() if A.finite else M.elements(2 * degree_bound)
    m = ExactMatrix(len(tests), len(cand), {(i, j): val(a, b) for i, a in enumerate(tests)
                                            for j, b in enumerate(cand)}, p.field)
    rad = kernel(m)
    return rad.dim == 0, rad


def nondegeneracy_report(p, degree_bound=1):
    rep = ValidationReport("two-sided non-degeneracy of phi0 and phi1")
    for side in ("left", "right"):
        r = nondegeneracy(p.phi0, side, degree_bound)
        rep.add(f"phi0 {side} non-degenerate", r.nondegenerate,
                None if r.nondegenerate else tuple(r.radical_vectors()[0].items()))
        ok, rad = phi1_nondegeneracy(p, side, degree_bound)
        rep.add(f"phi1 {side} non-degenerate", ok, None if ok else ("radical dim", rad.dim))
    return rep


def _vanishes_rows(G, vecs):
    M = G.matrix
    cols = M.column_dicts()
    for v in vecs:
        for col in cols:
            if sum((c * col.get(i, 0) for i, c in v.items()), G.matrix.field.zero):
                return v
    return None


def _vanishes_cols(G, vecs):
    for v in vecs:
        if G.matrix.apply(v):
            return v
    return None


def _sample_identities(p, eng, rec, samples, max_degree, rng, window=1):
    """The five Hopf pairing identities for phi'' on random basis triples."""
    A, B = eng.A, eng.B
    F = eng.field

    def keys(model, n):
        if model.couple.hopf.finite:
            return model.basis(n)
        G = model.couple.hopf
        return [(g, w) for g in G.elements(window) for w in model.words(n)] if n else \
            [(g, ()) for g in G.elements(window)]

    kA = {n: keys(A, n) for n in range(max_degree + 1)}
    kB = {n: keys(B, n) for n in range(max_degree + 1)}
    oneA, oneB = A.unit(), B.unit()

    def pick(model, table, n):
        return model.basis_element(rng.choice(table[n]), n)

    def split_pair(x, shape, other1, other2, first_slot):
        tot = F.zero
        for (u, v), c in coproduct_component(x, shape).items():
            if first_slot:
                a = eng.pair(A.basis_element(u, shape[0]), other1)
                b = eng.pair(A.basis_element(v, shape[1]), other2)
            else:
                a = eng.pair(other1, B.basis_element(u, shape[0]))
                b = eng.pair(other2, B.basis_element(v, shape[1]))
            tot = tot + c * a * b
        return tot

    for _ in range(samples):
        n = rng.randint(0, max_degree)
        i = rng.randint(0, n)
        h = pick(A, kA, n)
        b = pick(B, kB, n)
        b1, c1 = pick(B, kB, i), pick(B, kB, n - i)
        h1, g1 = pick(A, kA, i), pick(A, kA, n - i)
        w = (tuple(h.coeffs), tuple(b.coeffs), n, i)
        rec.check("phi(1, b) = eps(b)", eng.pair(oneA, b) == tensor_counit(b), w)
        rec.check("phi(h, 1) = eps(h)", eng.pair(h, oneB) == tensor_counit(h), w)
        rec.check("phi(h, bc) = sum phi(h1, b) phi(h2, c)",
                  eng.pair(h, tensor_multiply(b1, c1)) == split_pair(h, (i, n - i), b1, c1, True),
                  (tuple(h.coeffs), tuple(b1.coeffs), tuple(c1.coeffs)))
        rec.check("phi(hg, b) = sum phi(h, b1) phi(g, b2)",
                  eng.pair(tensor_multiply(h1, g1), b) == split_pair(b, (i, n - i), h1, g1, False),
                  (tuple(h1.coeffs), tuple(g1.coeffs), tuple(b.coeffs)))
        rec.check("phi(S(h), b) = phi(h, S(b))",
                  eng.pair(tensor_antipode(h), b) == eng.pair(h, tensor_antipode(b)), w)


def verify_induced_pairing(p, D=4, samples=100, seed=0, reduced=None, identity_degree=4,
                     cap=DEFAULT_CAP, degree_bound=1):
    """Induced pairing on S x S: well-defined, non-degenerate, Hopf."""
    eng = engine_for(p, cap)
    if reduced is None:
        reduced = default_reduced(p.left) and default_reduced(p.right)
    rep = ValidationReport("induced pairing on S x S")
    nd = nondegeneracy_report(p, degree_bound)
    for n in range(D + 1):
        G = gram_matrix(p, n, reduced, cap, eng)
        oL = symmetrizer(p.left, n, reduced=reduced, cap=cap)
        oR = symmetrizer(p.right, n, reduced=reduced, cap=cap)
        bad_r = _vanishes_rows(G, oL.kernel().basis)
        bad_c = _vanishes_cols(G, oR.kernel().basis)
        rep.add(f"degree {n}: Gram vanishes on ker Omega (first argument)", bad_r is None, bad_r)
        rep.add(f"degree {n}: Gram vanishes on ker Omega (second argument)", bad_c is None, bad_c)
        if nd.ok:
            r = G.rank
            rep.add(f"degree {n}: induced S x S rank = dim S_n", r == oL.rank == oR.rank,
                    None, f"rank {r}, dim S_n {oL.rank} / {oR.rank}")
        else:
            rep.add(f"degree {n}: induced S x S rank = dim S_n", None,
                    detail="phi0/phi1 not two-sided non-degenerate")
    rec = Recorder(rep)
    _sample_identities(p, eng, rec, samples, min(D, identity_degree), random.Random(seed))
    rec.flush()
    return rep


def verify_radicals(p, D=4, reduced=None, cap=DEFAULT_CAP, degree_bound=1):
    """Radicals of the Gram blocks are exactly the kernels of the symmetrizers."""
    if reduced is None:
        reduced = default_reduced(p.left) and default_reduced(p.right)
    rep = ValidationReport("radical = ker Omega")
    nd = nondegeneracy_report(p, degree_bound)
    rep.extend(nd, prefix="precondition: ")
    if not nd.ok:
        rep.add("precondition failed", False, detail="phi0 and phi1 must be two-sided non-degenerate")
        return rep
    eng = engine_for(p, cap)
    for n in range(D + 1):
        G = gram_matrix(p, n, reduced, cap, eng)
        kL = symmetrizer(p.left, n, reduced=reduced, cap=cap).kernel()
        kR = symmetrizer(p.right, n, reduced=reduced, cap=cap).kernel()
        rr, cr = G.row_radical(), G.column_radical()
        rep.add(f"degree {n}: first-argument radical = ker Omega", rr == kL, None, f"dim {rr.dim} vs {kL.dim}")
        rep.add(f"degree {n}: second-argument radical = ker Omega", cr == kR, None, f"dim {cr.dim} vs {kR.dim}")
    return rep


def self_dual_check(c, p, D=4, reduced=None, cap=DEFAULT_CAP, degree_bound=1):
    """Self-duality of the couple and graded self-duality of S_H(M)."""
    if p.left is not c or p.right is not c:
        raise CoupleMismatchError("self-duality needs a pairing of the couple with itself")
    if reduced is None:
        reduced = default_reduced(c)
    rep = ValidationReport("self-duality")
    nd = nondegeneracy_report(p, degree_bound)
    rep.extend(nd, prefix="couple: ")
    if not nd.ok:
        rep.add("couple self-dual", False, detail="stopped at the phi0/phi1 stage")
        return rep
    eng = engine_for(p, cap)
    for n in range(D + 1):
        r = gram_matrix(p, n, reduced, cap, eng).rank
        d = symmetrizer(c, n, reduced=reduced, cap=cap).rank
        rep.add(f"degree {n}: S x S non-degenerate", r == d, None, f"rank {r}, dim S_n {d}")
    return rep


def tensor_cot_check(p, D=4, reduced=None, cap=DEFAULT_CAP):
    """T x Cot pairing: well-defined on T_n, left non-degenerate, and matches T x T through Omega."""
    if reduced is None:
        reduced = default_reduced(p.left) and default_reduced(p.right)
    eng = engine_for(p, cap)
    rep = ValidationReport("T x Cot pairing")
    for n in range(D + 1):
        g = gram_matrix_T_vs_Cot(p, n, reduced, cap, eng)
        r = g.rank
        rep.add(f"degree {n}: left non-degenerate on Cot_n", r == g.cotensor.dim, None,
                f"rank {r} of {g.cotensor.dim}")
        G = gram_matrix(p, n, reduced, cap, eng)
        ok = True
        for j, y in enumerate(G.cols):
            oy = _omega_raw(eng.B, y, n)
            for i, x in enumerate(G.rows):
                if eng.pair_tensor_cot(eng.A.to_raw(x), oy, n) != G.matrix[i, j]:
                    ok = False
                    break
        rep.add(f"degree {n}: Gram(x, y) = phi(x, Omega(y))", ok)
        bad = None
        for v in _balancing_samples(p.left, eng.A, n, reduced):
            for z in g.cotensor.basis:
                if eng.pair_tensor_cot(v, z, n):
                    bad = tuple(v)
                    break
            if bad:
                break
        rep.add(f"degree {n}: independent of the representative", bad is None, bad)
    return rep


def _balancing_samples(c, model, n, reduced, bound=1):
    """Vectors x (x) h.y - x.h (x) y built on the raw words of the tensor basis."""
    if n < 2:
        return []
    H, M = c.hopf, c.bimodule
    hs = H.basis() if H.finite else H.elements(bound)
    out = []
    for key in TensorComponent(model, n, reduced).keys:
        for word in model.to_raw(key):
            for pos in range(1, n):
                for h in hs:
                    v = {}
                    for y, s in M.lact(h, word[pos]).items():
                        axpy(v, s, {word[:pos] + (y,) + word[pos + 1:]: 1})
                    for x, s in M.ract(word[pos - 1], h).items():
                        axpy(v, -s, {word[:pos - 1] + (x,) + word[pos:]: 1})
                    if v:
                        out.append(v)
    return out


def _omega_raw(model, key, n):
    from .cotensor import omega
    return omega(model.basis_element(key, n))


__all__ = [
    "PairingEngine", "engine_for", "GramMatrix", "gram_matrix", "gram_matrix_T_vs_Cot",
    "relations", "format_combination", "format_key", "HilbertSeries", "hilbert",
    "verify_induced_pairing", "verify_radicals", "self_dual_check", "tensor_cot_check",
    "nondegeneracy_report", "phi1_nondegeneracy", "UnvalidatedPairingError", "default_reduced",
]
