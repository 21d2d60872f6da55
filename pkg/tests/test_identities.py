from fractions import Fraction

import pytest

from filiform.catalog import build, build_l, build_q, build_r, build_w, supported_dims
from filiform.core import StructureTable, Vector, rank, zero_table
from filiform.identities import (
    center_dim,
    check_antisymmetry,
    check_jacobi,
    check_leibniz,
    derived_dims,
    is_filiform,
    left_annihilator_dim,
    lower_central_dims,
    lower_central_series,
    right_annihilator_dim,
    squares_ideal,
)
from filiform.leibniz import FamilyParams, build_eta, build_lambda, build_mu
from filiform.sampling import SplitMix64, small_rational

CATALOG = [(tag, n) for tag in "LQRW" for n in supported_dims(tag, 12)]


def lam(*values):
    return build_lambda(FamilyParams("lambda", values or (0,) * 9)).table


def dense_leibniz_violations(table):
    """Three nested loops over plain lists; shares nothing with check_leibniz."""
    n = table.dim
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), vec in table.nonzero().items():
        for k, v in vec.items():
            c[i - 1][j - 1][k - 1] = Fraction(v)

    def br(u, v):
        out = [Fraction(0)] * n
        for a in range(n):
            if u[a]:
                for b in range(n):
                    if v[b]:
                        for k in range(n):
                            out[k] += u[a] * v[b] * c[a][b][k]
        return out

    def e(i):
        return [Fraction(int(t == i)) for t in range(n)]

    bad = set()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = br(br(e(i), e(j)), e(k))
                rhs1 = br(br(e(i), e(k)), e(j))
                rhs2 = br(e(i), br(e(j), e(k)))
                if any(l - r1 - r2 for l, r1, r2 in zip(lhs, rhs1, rhs2)):
                    bad.add((i + 1, j + 1, k + 1))
    return bad


def random_table(rng, n):
    products = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if rng.next() % 3 == 0:
                products[(i, j)] = {k: small_rational(rng) for k in range(1, n + 1) if rng.next() % 2}
    return StructureTable(n, products)


def test_antisymmetry_examples():
    assert check_antisymmetry(build_q(6)).ok
    assert check_antisymmetry(zero_table(5)).ok
    report = check_antisymmetry(lam())
    # [x1,e2] = x2 while [e2,x1] = 0; x1 is index 7
    hit = [v for v in report.violations if (v.i, v.j) == (2, 7)]
    assert hit and hit[0].residual == Vector.basis(12, 8)


def test_antisymmetry_counts_pairs():
    assert check_antisymmetry(build_q(6)).checked == 21


def test_jacobi_examples():
    assert check_jacobi(build_w(9)).ok
    assert check_jacobi(build_w(9)).checked == 729
    assert check_jacobi(build_r(7)).ok


def test_two_dimensional_nonabelian_is_lie():
    t = StructureTable(2, {(1, 2): {1: 1}, (2, 1): {1: -1}})
    assert check_jacobi(t).ok


def test_jacobi_violation_located():
    # [e1,e2]=e1, [e1,e3]=e2: cyclic sum on (1,2,3) is [e1,e3] = e2
    t = StructureTable(3, {(1, 2): {1: 1}, (2, 1): {1: -1}, (1, 3): {2: 1}, (3, 1): {2: -1}})
    report = check_jacobi(t)
    assert (1, 2, 3) in {(v.i, v.j, v.k) for v in report.violations}
    v = next(v for v in report.violations if (v.i, v.j, v.k) == (1, 2, 3))
    assert v.residual == Vector.basis(3, 2)


@pytest.mark.parametrize("tag,n", CATALOG)
def test_catalog_is_lie_hence_leibniz(tag, n):
    t = build(tag, n)
    assert check_antisymmetry(t).ok
    assert check_jacobi(t).ok
    assert check_leibniz(t).ok


def test_leibniz_zero_parameter_families():
    eta = build_eta(FamilyParams.zero("eta")).table
    report = check_leibniz(eta)
    assert report.ok and report.checked == 14 ** 3
    assert check_leibniz(build_mu(FamilyParams.zero("mu")).table).ok


def test_leibniz_detects_non_leibniz():
    # antisymmetric, so Leibniz fails exactly where Jacobi does
    t = StructureTable(3, {(1, 2): {1: 1}, (2, 1): {1: -1}, (1, 3): {2: 1}, (3, 1): {2: -1}})
    report = check_leibniz(t)
    assert not report.ok
    assert {(v.i, v.j, v.k) for v in report.violations} == dense_leibniz_violations(t)


@pytest.mark.parametrize("seed", range(5))
def test_leibniz_matches_dense_oracle(seed):
    rng = SplitMix64(seed)
    n = 2 + rng.next() % 5
    t = random_table(rng, n)
    got = {(v.i, v.j, v.k) for v in check_leibniz(t).violations}
    assert got == dense_leibniz_violations(t)


def test_parallel_matches_serial():
    t = lam(1, 2, 3, 0, 1, 2, 0, 1, 1)
    t = StructureTable(t.dim, {**t.nonzero(), (7, 7): {12: 1}}, t.labels)
    serial = check_leibniz(t)
    assert not serial.ok
    assert check_leibniz(t, workers=3).violations == serial.violations


def test_report_json_shape():
    t = StructureTable(2, {(1, 2): {1: Fraction(1, 2)}})
    data = check_leibniz(t).to_json()
    assert data["law"] == "leibniz" and data["checked"] == 8
    assert all(set(v) >= {"i", "j", "k", "residual"} for v in data["violations"])


def test_lower_central_examples():
    assert lower_central_dims(build_l(5)) == [5, 3, 2, 1, 0]
    assert lower_central_dims(zero_table(4)) == [4, 0]
    assert lower_central_dims(build_q(6)) == [6, 4, 3, 2, 1, 0]


@pytest.mark.parametrize("tag,n", CATALOG)
def test_filiform_signature(tag, n):
    assert lower_central_dims(build(tag, n)) == [n] + list(range(n - 2, -1, -1))


def test_is_filiform_examples():
    assert is_filiform(build_r(7))
    assert not is_filiform(zero_table(4))
    assert is_filiform(build_w(9))


def test_derived_series():
    # W_5: [L,L] = span{e3,e4,e5}, whose square is [e3,e4]... = 0 since 3+4 > 5
    assert derived_dims(build_w(5)) == [5, 3, 0]
    assert derived_dims(zero_table(3)) == [3, 0]


def test_annihilators():
    t = lam()
    # center of a filiform Lie algebra is spanned by the last basis vector
    assert center_dim(build_w(7)) == 1
    assert center_dim(zero_table(3)) == 3
    # every x is killed on the right: right annihilator contains the x-span
    assert right_annihilator_dim(t) >= 6
    assert left_annihilator_dim(t) <= right_annihilator_dim(t) + 6


def test_profile_of_mu_zero():
    p = lower_central_series(build_mu(FamilyParams.zero("mu")).table)
    assert p.lower_central == (10, 7, 4, 2, 1, 0)
    assert p.derived == (10, 7, 1, 0)
    assert (p.center_dim, p.left_annihilator_dim, p.right_annihilator_dim, p.squares_ideal_dim) == (1, 2, 5, 4)


@pytest.mark.parametrize("tag,n", [("Q", 6), ("W", 9), ("R", 7), ("L", 5)])
def test_squares_ideal_of_lie_algebra_is_zero(tag, n):
    assert squares_ideal(build(tag, n)) == []


def test_squares_ideal_lambda_zero():
    basis = squares_ideal(lam())
    # x1 is never a product, x2..x6 are reached from [x1+e2, x1+e2] = x2
    assert len(basis) == 5
    assert rank([b.coords for b in basis] + [Vector.basis(12, 7).coords]) == 6
    for k in range(8, 13):
        assert rank([b.coords for b in basis] + [Vector.basis(12, k).coords]) == 5


def test_squares_ideal_contains_x6_when_a1_set():
    basis = squares_ideal(lam(1, 0, 0, 0, 0, 0, 0, 0, 0))
    x6 = Vector.basis(12, 12)
    assert rank([b.coords for b in basis] + [x6.coords]) == len(basis)


def test_squares_ideal_is_two_sided_ideal():
    t = lam(1, 1, 0, 0, 1, 0, 1, 0, 1)
    basis = squares_ideal(t)
    r = len(basis)
    for b in basis:
        for k in range(1, 13):
            e = Vector.basis(12, k)
            for w in (t.bracket_sparse(b.sparse(), e.sparse()), t.bracket_sparse(e.sparse(), b.sparse())):
                assert rank([v.coords for v in basis] + [Vector.from_sparse(12, w).coords]) == r
