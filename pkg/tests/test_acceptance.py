"""Acceptance criteria 1-10. Each test records one summary line (see conftest)."""

import subprocess
import sys
import time
from fractions import Fraction

from conftest import ACCEPTANCE, diagonal_instance, spec_path
from oracles import gram_entry, naive_rank, pbw_count, q_factorial, symmetrizer_rank
from qsym import cotensor, couple, hopf, linalg, pairing, tensor
from qsym.cotensor import wedge_fact
from qsym.couple import (DiagonalData, build_diagonal_couple, build_self_dual_diagonal_pairing,
                         regular_couple, validate_couple_pairing, validate_hopf_bimodule)
from qsym.hopf import build_group_algebra, cyclic_table, validate_hopf
from qsym.linalg import Field, Subspace
from qsym.pairing import (gram_matrix, hilbert, relations, tensor_cot_check, verify_induced_pairing,
                          verify_radicals)
from qsym.tensor import (FreeModel, QuotientModel, check_antipode, check_coalgebra,
                         coproduct_component, free_to_quotient, model_for, tensor_antipode,
                         tensor_component)

INSTANCES = ["q1", "f5", "a2", "qm1"]


class Criterion:
    def __init__(self, n):
        self.n = n
        self.failures = []
        self.notes = []

    def expect(self, ok, what):
        if not ok:
            self.failures.append(what)
        return ok

    def __enter__(self):
        return self

    def __exit__(self, et, ev, tb):
        if et is not None:
            self.failures.append(f"error: {et.__name__}: {ev}")
        detail = "; ".join(self.failures) if self.failures else "; ".join(self.notes)
        ACCEPTANCE[self.n] = (not self.failures, detail)
        return False


def frac(x, p):
    return int(x) if p else Fraction(int(x.numerator), int(x.denominator))


def test_criterion_1_rank1_q1():
    with Criterion(1) as c:
        t = time.perf_counter()
        cp, p, q, _ = diagonal_instance("q1")
        hs = hilbert(cp, p, 6)
        grams = [gram_matrix(p, n).matrix[0, 0] for n in range(7)]
        dt = time.perf_counter() - t
        c.expect(hs.omega == [1] * 7 and hs.gram == [1] * 7, f"dims {hs.omega}/{hs.gram}")
        oracle = [gram_entry(q, (0,) * n, (0,) * n) for n in range(7)]
        c.expect([frac(g, None) for g in grams] == oracle, f"Gram {grams} vs shuffle oracle {oracle}")
        c.expect(oracle[3] == 6 and oracle[4] == 24, "oracle n! values")
        c.expect(dt < 1.0, f"runtime {dt:.3f}s >= 1s")
        c.notes.append(f"dims [1]*7, Gram_n = n! (6, 24 at n=3,4), {dt:.3f}s < 1s")
    assert not c.failures, c.failures


def test_criterion_2_rank1_f5():
    with Criterion(2) as c:
        t = time.perf_counter()
        cp, p, q, pr = diagonal_instance("f5")
        hs = hilbert(cp, p, 5)
        rels = [relations(cp, n) for n in range(5)]
        grams = [gram_matrix(p, n).matrix[0, 0] for n in range(6)]
        dt = time.perf_counter() - t
        c.expect(hs.omega == [1, 1, 1, 1, 0, 0] and hs.gram == hs.omega, f"dims {hs.omega}/{hs.gram}")
        e = cp.hopf.identity
        c.expect([len(r) for r in rels] == [0, 0, 0, 0, 1] and list(rels[4][0]) == [(e, (0,) * 4)],
                 f"relations {rels}")
        oracle = [gram_entry(q, (0,) * n, (0,) * n, pr) for n in range(6)]
        c.expect([int(g) for g in grams] == oracle, f"Gram {grams} vs shuffle oracle {oracle}")
        literal = [q_factorial(2, n, 5) for n in range(6)]
        c.expect([int(g) for g in grams] == literal,
                 f"Gram_n {[int(g) for g in grams]} != [n]_q! mod 5 {literal} (ledgered)")
        c.expect(sum(pow(2, j, 5) for j in range(4)) % 5 == 0, "[4]_q != 0 mod 5")
        c.expect(dt < 1.0, f"runtime {dt:.3f}s >= 1s")
        c.notes.append(f"dims [1,1,1,1,0,0], relation v^4, Gram_n = [n]_q!, {dt:.3f}s < 1s")
    assert not c.failures, c.failures


def test_criterion_3_a2():
    with Criterion(3) as c:
        t = time.perf_counter()
        cp, p, q, _ = diagonal_instance("a2")
        hs = hilbert(cp, p, 4)
        rels = relations(cp, 3)
        S3 = cotensor.symmetrizer(cp, 3, reduced=True)
        dt = time.perf_counter() - t
        c.expect(hs.omega == [1, 2, 4, 6, 9] and hs.gram == hs.omega, f"dims {hs.omega}/{hs.gram}")
        c.expect(len(rels) == 2, f"{len(rels)} relations at degree 3")
        c.expect((S3.rank, S3.component.dim) == (6, 8), f"rank {S3.rank} of {S3.component.dim}")
        oracle = [symmetrizer_rank(q, n) for n in range(5)]
        c.expect(hs.omega == oracle, f"oracle ranks {oracle}")
        c.expect(hs.omega == pbw_count([1, 1, 2], 4), "PBW count")
        c.expect(dt < 5.0, f"runtime {dt:.3f}s >= 5s")
        c.notes.append(f"dims [1,2,4,6,9] = oracle = PBW, 2 Serre relations, rank 6 of 8, {dt:.3f}s < 5s")
    assert not c.failures, c.failures


def test_criterion_4_radicals_are_kernels():
    with Criterion(4) as c:
        for name in INSTANCES:
            _, p, _, _ = diagonal_instance(name)
            rep = verify_radicals(p, 5)
            c.expect(rep.ok, f"{name}: " + ", ".join(f.name for f in rep.failures()))
            c.expect(sum(1 for ch in rep.checks if "radical = ker Omega" in ch.name) == 12,
                     f"{name}: missing degrees")
        c.notes.append("radicals = ker Omega (RREF equality) both sides, n <= 5, " + ", ".join(INSTANCES))
    assert not c.failures, c.failures


def test_criterion_5_induced_pairing():
    with Criterion(5) as c:
        for name in INSTANCES:
            _, p, _, _ = diagonal_instance(name)
            rep = verify_induced_pairing(p, 4, samples=0)
            wd = [ch for ch in rep.checks if "vanishes" in ch.name]
            fr = [ch for ch in rep.checks if "induced" in ch.name]
            c.expect(len(wd) == 10 and all(ch.passed for ch in wd), f"{name}: well-definedness")
            c.expect(len(fr) == 5 and all(ch.passed for ch in fr), f"{name}: full rank {[ch.detail for ch in fr]}")
        c.notes.append("Gram vanishes on ker Omega both sides; S x S rank = dim S_n, n <= 4")
    assert not c.failures, c.failures


def test_criterion_6_hopf_pairing_identities(monkeypatch):
    with Criterion(6) as c:
        counts = {}
        orig = pairing.Recorder.check

        def counting(self, name, ok, witness):
            counts[name] = counts.get(name, 0) + 1
            return orig(self, name, ok, witness)

        monkeypatch.setattr(pairing.Recorder, "check", counting)
        for name in INSTANCES:
            counts.clear()
            _, p, _, _ = diagonal_instance(name)
            rep = verify_induced_pairing(p, 4, samples=100, seed=0)
            ids = [ch for ch in rep.checks if ch.name.startswith("phi(")]
            c.expect(len(ids) == 5 and all(ch.passed for ch in ids), f"{name}: {[str(ch) for ch in ids]}")
            c.expect(all(counts.get(ch.name, 0) >= 100 for ch in ids), f"{name}: samples {counts}")
            c.expect("phi(S(h), b) = phi(h, S(b))" in {ch.name for ch in ids}, "antipode identity")
        c.notes.append("5 identities incl. antipode on 100 sampled triples per instance, degrees <= 4")
    assert not c.failures, c.failures


def test_criterion_7_wedge():
    with Criterion(7) as c:
        cases = {"regular Z/2": regular_couple(build_group_algebra(Field(), table=cyclic_table(2)))}
        for name in ["q1", "f5", "qm1", "generic", "a2"]:
            cases[name] = diagonal_instance(name)[0]
        for name, cp in cases.items():
            rows = wedge_fact(cp, 4)
            c.expect(all(eq and d == e for _, d, e, eq in rows), f"{name}: {rows}")
        c.notes.append("wedge(H,H) = H + M (dims and subspaces), D = 4: " + ", ".join(cases))
    assert not c.failures, c.failures


def test_criterion_8_tensor_cot():
    with Criterion(8) as c:
        for name in ["q1", "f5", "qm1", "generic", "a2"]:
            _, p, _, _ = diagonal_instance(name)
            rep = tensor_cot_check(p, 4)
            nd = [ch for ch in rep.checks if "left non-degenerate" in ch.name]
            c.expect(len(nd) == 5 and all(ch.passed for ch in nd), f"{name}: {[ch.detail for ch in nd]}")
            c.expect(rep.ok, f"{name}: " + ", ".join(f.name for f in rep.failures()))
        c.notes.append("T x Cot rank = dim Cot_n for n <= 4 on all test pairings")
    assert not c.failures, c.failures


def _finite_diagonal(q, n, F):
    return build_diagonal_couple(DiagonalData.standard([[q]], F, (n,)))


def _structural(c):
    QQ, F5 = Field(), Field(5)
    couples = {
        "qm1": _finite_diagonal(-1, 2, QQ), "f5": _finite_diagonal(2, 4, F5),
        "regular Z/2": regular_couple(build_group_algebra(QQ, table=cyclic_table(2))),
        "generic": diagonal_instance("generic")[0], "a2": diagonal_instance("a2")[0],
    }
    for name, cp in couples.items():
        m = model_for(cp)
        els = [m.basis_element(k, d) for d in range(5) for k in m.basis(d, reduced=not cp.hopf.finite)]
        c.expect(check_coalgebra(m, els).ok, f"{name}: coalgebra laws")
        c.expect(check_antipode(m, [x for x in els if x.degree <= 3]).ok, f"{name}: antipode identity")
    for name in ("qm1", "f5"):
        cp = couples[name]
        fm, qm = FreeModel(cp), QuotientModel(cp)
        for d in range(4):
            comp = tensor_component(cp, d, qm)
            imgs = [free_to_quotient(fm.basis_element(k, d), qm) for k in fm.basis(d)]
            span = Subspace.span(comp.dim, [comp.vector(y) for y in imgs], cp.field)
            c.expect(span.dim == comp.dim == len(imgs), f"{name}: model bases differ in degree {d}")
            for x in (fm.basis_element(k, d) for k in fm.basis(d)):
                c.expect(free_to_quotient(tensor_antipode(x), qm) == tensor_antipode(free_to_quotient(x, qm)),
                         f"{name}: antipodes differ")
                for y in (fm.basis_element(k, e) for e in range(4 - d) for k in fm.basis(e)):
                    c.expect(free_to_quotient(x * y, qm) == free_to_quotient(x, qm) * free_to_quotient(y, qm),
                             f"{name}: products differ")
                for i in range(d + 1):
                    lhs = {}
                    for (a, b), s in coproduct_component(x, (i, d - i)).items():
                        A = free_to_quotient(fm.basis_element(a, i), qm)
                        B = free_to_quotient(fm.basis_element(b, d - i), qm)
                        for u, t in A.coeffs.items():
                            for v, w in B.coeffs.items():
                                linalg.axpy(lhs, s * t * w, {(u, v): 1})
                    c.expect(lhs == coproduct_component(free_to_quotient(x, qm), (i, d - i)),
                             f"{name}: coproducts differ")
    # constructor/validator round trips
    QQ7 = Field(7)
    c.expect(all(validate_hopf(build_group_algebra(Field(pr), table=cyclic_table(n))).ok
                 for n in range(1, 7) for pr in (None, 7)), "group algebras")
    for name, cp in couples.items():
        c.expect(validate_hopf_bimodule(cp, 1).ok, f"{name}: bimodule validator")
    for name in ["q1", "f5", "qm1", "generic", "a2"]:
        c.expect(validate_couple_pairing(diagonal_instance(name)[1], 1).ok, f"{name}: pairing validator")
    x = next(a for a in range(1, 7) if QQ7.order(a) == 6)
    _, _, p6 = build_self_dual_diagonal_pairing(DiagonalData.standard([[x]], QQ7, (6,)))
    c.expect(validate_couple_pairing(p6).ok, "Z/6 over F_7 pairing validator")


def test_criterion_9_structural(monkeypatch):
    with Criterion(9) as c:
        calls = []
        real_kernel, real_rank = linalg.kernel, linalg.rank

        def recording_kernel(m):
            k = real_kernel(m)
            calls.append((m, real_rank(m), k))
            return k

        def recording_rank(m):
            r = real_rank(m)
            calls.append((m, r, real_kernel(m)))
            return r

        for mod in (linalg, hopf, couple, tensor, cotensor, pairing):
            if getattr(mod, "kernel", None) is real_kernel:
                monkeypatch.setattr(mod, "kernel", recording_kernel)
            if getattr(mod, "rank", None) is real_rank:
                monkeypatch.setattr(mod, "rank", recording_rank)
        _structural(c)
        # the elimination-heavy paths: Hilbert, radicals, wedge
        for name in ["qm1", "f5", "a2"]:
            cp, p, _, _ = diagonal_instance(name)
            hilbert(cp, p, 3)
            verify_radicals(p, 3)
            wedge_fact(cp, 3)
        bad = 0
        for m, r, k in calls:
            if r + k.dim != m.cols or any(m.apply(v) for v in k.basis):
                bad += 1
            elif m.rows * m.cols <= 400 and m.field.prime is not None:
                rows = [[int(x) for x in r] for r in m.to_lists()]
                if naive_rank(rows, m.field.prime) + k.dim != m.cols:
                    bad += 1
        c.expect(calls and not bad, f"rank-nullity failed on {bad} of {len(calls)} eliminations")
        c.notes.append(f"coalgebra/antipode/model agreement/validator round trips; rank-nullity on {len(calls)} eliminations")
    assert not c.failures, c.failures


def test_criterion_10_determinism(tmp_path):
    with Criterion(10) as c:
        outs = []
        for i in range(2):
            path = tmp_path / f"run{i}.json"
            res = subprocess.run([sys.executable, "-m", "qsym.cli", "check", spec_path("a2_q2.json"),
                                  "--out", str(path)], capture_output=True, cwd=tmp_path)
            c.expect(res.returncode == 0, f"run {i} exit {res.returncode}: {res.stderr[-300:]!r}")
            outs.append(path.read_bytes() if path.exists() else b"")
        c.expect(outs[0] == outs[1] and outs[0], "reports differ")
        c.notes.append(f"two `qsym check` runs on the A2 spec: byte-identical ({len(outs[0])} bytes)")
    assert not c.failures, c.failures
