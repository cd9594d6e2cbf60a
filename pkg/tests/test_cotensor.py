import itertools

import pytest

from conftest import diagonal_instance
from qsym.cotensor import (ALL, ZERO, CotensorComponent, GradedSubspace, NotInComponentError,
                           cotensor_comultiply, omega, symmetrizer, wedge, wedge_fact)
from qsym.couple import DiagonalData, build_diagonal_couple, regular_couple
from qsym.hopf import build_group_algebra, cyclic_table
from qsym.linalg import Field, Subspace, axpy
from qsym.tensor import ResourceLimitError, model_for, tensor_multiply

QQ, F5 = Field(), Field(5)


def z2_diagonal():
    return build_diagonal_couple(DiagonalData.standard([[-1]], QQ, (2,)))


def regular(n):
    return regular_couple(build_group_algebra(QQ, table=cyclic_table(n)))


def test_component_dimensions():
    c = regular(2)
    assert CotensorComponent(c, 0).dim == 2
    assert CotensorComponent(c, 1).dim == 2
    assert CotensorComponent(c, 2).dim == 2
    d = z2_diagonal()
    assert [CotensorComponent(d, n).dim for n in range(4)] == [2, 2, 2, 2]
    f5 = build_diagonal_couple(DiagonalData.standard([[2]], F5, (4,)))
    assert CotensorComponent(f5, 3).dim == 4


def test_kernel_and_chain_methods_agree():
    d = z2_diagonal()
    for n in range(1, 4):
        k = CotensorComponent(d, n, method="kernel")
        ch = CotensorComponent(d, n, method="chain")
        assert k.dim == ch.dim
        for b in ch.basis:
            assert k.contains(b)


def test_component_errors():
    with pytest.raises(ValueError):
        CotensorComponent(z2_diagonal(), -1)
    with pytest.raises(ResourceLimitError):
        CotensorComponent(regular(3), 6, cap=100)
    c = regular(2)
    comp = CotensorComponent(c, 2)
    with pytest.raises(NotInComponentError):
        comp.coordinates({(0, 1): QQ.one})
    with pytest.raises(NotInComponentError):
        cotensor_comultiply({(0, 1): QQ.one}, 2, c, comp)


def test_degree1_comultiply_is_coactions():
    c = z2_diagonal()
    M = c.bimodule
    for m in M.basis():
        blocks = cotensor_comultiply({(m,): QQ.one}, 1, c)
        assert blocks[(0, 1)] == {(h, (x,)): s for (h, x), s in M.lcoact(m).items()}
        assert blocks[(1, 0)] == {((x,), h): s for (x, h), s in M.rcoact(m).items()}


@pytest.mark.parametrize("make", [z2_diagonal, lambda: regular(2), lambda: regular(3)])
def test_counit_law(make):
    c = make()
    H = c.hopf
    for n in range(1, 4):
        for z in CotensorComponent(c, n).basis:
            blocks = cotensor_comultiply(z, n, c)
            l, r = {}, {}
            for (h, w), s in blocks[(0, n)].items():
                axpy(l, s * H.counit(h), {w: 1})
            for (w, h), s in blocks[(n, 0)].items():
                axpy(r, s * H.counit(h), {w: 1})
            assert l == z and r == z


def delta(c, z, n):
    """All blocks of the comultiplication as {(i, left, right): coef}."""
    out = {}
    for (i, _), blk in cotensor_comultiply(z, n, c).items():
        for (u, v), s in blk.items():
            axpy(out, s, {(i, u, v): 1})
    return out


@pytest.mark.parametrize("make", [z2_diagonal, lambda: regular(2)])
def test_coassociativity(make):
    c = make()
    for n in (1, 2):
        for z in CotensorComponent(c, n).basis:
            left, right = {}, {}
            for (i, u, v), s in delta(c, z, n).items():
                for (a, u1, u2), t in delta(c, {u: QQ.one}, i).items():
                    axpy(left, s * t, {(a, u1, u2, v): 1})
                for (b, v1, v2), t in delta(c, {v: QQ.one}, n - i).items():
                    axpy(right, s * t, {(i, u, v1, v2): 1})
            # keys (a, u1, u2, v) and (i, u, v1, v2) both list the three legs in order
            assert {k[1:]: v for k, v in left.items()} == {k[1:]: v for k, v in right.items()}


def test_omega_degree1_is_identity():
    c = z2_diagonal()
    S = symmetrizer(c, 1)
    assert S.rank == 2
    for key, im in zip(S.component.keys, S.images):
        g, (i,) = key
        assert im == {((g, i),): 1}


def test_omega_v_squared_vanishes_at_q_minus1():
    c = z2_diagonal()
    m = model_for(c)
    assert omega(m.basis_element(((0,), (0, 0)), 2)) == {}
    assert symmetrizer(c, 2, reduced=True).rank == 0


def test_omega_rank_one_at_q1():
    c, _, _, _ = diagonal_instance("q1")
    assert [symmetrizer(c, n).rank for n in range(7)] == [1] * 7


@pytest.mark.parametrize("name", ["q1", "f5", "qm1", "generic", "a2"])
def test_omega_image_in_cotensor(name):
    c = diagonal_instance(name)[0]
    for n in range(1, 6 if name != "a2" else 5):
        S = symmetrizer(c, n, reduced=True)
        comp = CotensorComponent(c, n, method="chain",
                                 window=c.hopf.elements(n + 1) if not c.hopf.finite else None)
        for im in S.images:
            assert comp.contains(im)


@pytest.mark.parametrize("make", [lambda: regular(2), lambda: regular(3), z2_diagonal])
def test_omega_image_in_cotensor_finite(make):
    c = make()
    for n in range(1, 5):
        S = symmetrizer(c, n)
        comp = CotensorComponent(c, n, method="kernel")
        assert all(comp.contains(im) for im in S.images)


@pytest.mark.parametrize("name", ["qm1", "f5", "a2"])
def test_kernel_of_omega_is_an_ideal(name):
    c = diagonal_instance(name)[0]
    m = model_for(c)
    low = [m.basis_element(k, d) for d in (0, 1) for k in m.basis(d, reduced=True)]
    if not c.hopf.finite:
        e = c.hopf.identity
        low.append(m.basis_element((tuple(1 if i == 0 else 0 for i in range(len(e))), ()), 0))
    for b in (2, 3, 4):
        S = symmetrizer(c, b, reduced=True)
        for v in S.kernel().basis:
            x = m.element(b, {S.component.keys[j]: s for j, s in v.items()})
            assert omega(x) == {}
            for a, z in itertools.product(low, repeat=2):
                assert omega(tensor_multiply(tensor_multiply(a, x), z)) == {}


def test_wedge_trivial_cases():
    c = regular(2)
    zero, comps = wedge(c, GradedSubspace.uniform(3, ZERO), GradedSubspace.uniform(3, ZERO), 3)
    assert all(zero.subspace(n, comps[n]).dim == 0 for n in range(4))
    everything, comps = wedge(c, GradedSubspace.uniform(3, ALL), GradedSubspace.uniform(3, ALL), 3)
    assert all(everything.subspace(n, comps[n]) == Subspace.full(comps[n].dim) for n in range(4))


@pytest.mark.parametrize("make", [lambda: regular(2), z2_diagonal])
def test_wedge_with_explicit_subspaces(make):
    c = make()
    D = 3
    comps = {n: CotensorComponent(c, n) for n in range(D + 1)}
    V = GradedSubspace({n: (Subspace.full(comps[n].dim) if n == 0 else ZERO) for n in range(D + 1)})
    got, comps = wedge(c, V, V, D)
    want = GradedSubspace.degrees01(D)
    assert got.same_as(want, comps)


@pytest.mark.parametrize("make", [lambda: regular(2), z2_diagonal,
                                  lambda: diagonal_instance("q1")[0], lambda: diagonal_instance("f5")[0],
                                  lambda: diagonal_instance("generic")[0], lambda: diagonal_instance("a2")[0]])
def test_wedge_of_h_with_h(make):
    rows = wedge_fact(make(), 4)
    assert [r[0] for r in rows] == list(range(5))
    assert all(equal and dim == expected for _, dim, expected, equal in rows)
