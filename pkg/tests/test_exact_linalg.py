import random
from fractions import Fraction
from itertools import product

import pytest

from flattori.exact_linalg import (
    IntMatrix,
    RatMatrix,
    SkewRatForm,
    det_mod,
    inverse_mod,
    lattice_kernel_mod,
    lift_unimodular_mod,
    smith_normal_form,
    symplectic_normal_form,
    unimodular_sample,
    xgcd,
)


def random_int_matrix(rng, rows, cols, bound=9):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)]
                      for _ in range(rows)])


def random_skew(rng, n, bound=9):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            m[i][j] = v
            m[j][i] = -v
    return IntMatrix(m)


def check_smith(M):
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(U.det()) == 1
    assert abs(V.det()) == 1
    diag = [D[i][i] for i in range(min(D.rows, D.cols))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    return diag


def test_xgcd():
    for a, b in [(0, 0), (4, 6), (-4, 6), (12, 0), (7, 13), (-9, -24)]:
        g, x, y = xgcd(a, b)
        assert g == x * a + y * b
        assert g >= 0


def test_smith_already_diagonal():
    U, D, V = smith_normal_form(IntMatrix([[6]]))
    assert D == IntMatrix([[6]])
    assert U == IntMatrix([[1]]) and V == IntMatrix([[1]])


def test_smith_zero_1x1():
    _, D, _ = smith_normal_form(IntMatrix([[0]]))
    assert D == IntMatrix([[0]])


def test_smith_2x2_hand_oracle():
    # hand row-reduction: gcd of entries 2, |det| = 8 -> diag(2, 4)
    M = IntMatrix([[2, 4], [6, 8]])
    diag = check_smith(M)
    assert diag == [2, 4]


def test_smith_random_certificates():
    rng = random.Random(7)
    for _ in range(150):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        check_smith(random_int_matrix(rng, r, c))


def test_smith_rectangular_and_zero():
    check_smith(IntMatrix.zero(3, 4))
    check_smith(IntMatrix([[0, 0, 5]]))
    check_smith(IntMatrix([[2], [4], [6]]))


def test_symplectic_2x2():
    nf = symplectic_normal_form(IntMatrix([[0, 6], [-6, 0]]))
    assert nf.divisors == (6,)
    assert nf.T == IntMatrix.identity(2)


def test_symplectic_zero():
    nf = symplectic_normal_form(IntMatrix.zero(3, 3))
    assert nf.divisors == ()
    assert nf.rank2k == 0


def test_symplectic_rejects_non_skew():
    with pytest.raises(ValueError):
        symplectic_normal_form(IntMatrix([[0, 1], [1, 0]]))


def test_symplectic_block_2_3_divisors():
    M = IntMatrix([
        [0, 2, 0, 0],
        [-2, 0, 0, 0],
        [0, 0, 0, 3],
        [0, 0, -3, 0],
    ])
    nf = symplectic_normal_form(M)
    # gcd-chain invariants: Smith diagonal of M must be (1, 1, 6, 6)
    assert nf.divisors == (1, 6)
    diag = check_smith(M)
    assert diag == [1, 1, 6, 6]


def test_symplectic_divisors_match_smith_pattern():
    rng = random.Random(21)
    for _ in range(120):
        n = rng.randint(1, 6)
        M = random_skew(rng, n)
        nf = symplectic_normal_form(M)
        diag = [d for d in check_smith(M) if d != 0]
        expect = []
        for e in nf.divisors:
            expect += [e, e]
        assert diag == expect


def test_symplectic_divisors_congruence_invariant():
    rng = random.Random(5)
    for trial in range(200):
        n = rng.randint(2, 5)
        M = random_skew(rng, n, bound=6)
        T = unimodular_sample(n, seed=1000 + trial, word_length=12)
        M2 = T @ M @ T.transpose()
        assert symplectic_normal_form(M2).divisors == symplectic_normal_form(M).divisors


def brute_force_kernel_count(M, ell):
    n = M.rows
    count = 0
    for h in product(range(ell), repeat=n):
        if all(sum(M[i][j] * h[j] for j in range(n)) % ell == 0 for i in range(n)):
            count += 1
    return count


def test_lattice_kernel_examples():
    M = IntMatrix([[0, 1], [-1, 0]])
    basis, index = lattice_kernel_mod(M, 2)
    assert index == 4
    # H = 2Z^2: every basis vector even, and e.g. (2,0) in the span
    for b in basis:
        assert all(b[i][0] % 2 == 0 for i in range(2))

    _, index = lattice_kernel_mod(IntMatrix.zero(3, 3), 5)
    assert index == 1

    _, index = lattice_kernel_mod(M, 1)
    assert index == 1


def test_lattice_kernel_errors():
    with pytest.raises(ValueError):
        lattice_kernel_mod(IntMatrix.identity(2), 0)


def test_lattice_kernel_vs_brute_force():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 3)
        ell = rng.randint(1, 6)
        M = random_int_matrix(rng, n, n, bound=6)
        basis, index = lattice_kernel_mod(M, ell)
        count = brute_force_kernel_count(M, ell)
        assert index == ell ** n // count
        # basis vectors really lie in the kernel
        for b in basis:
            col = M @ b
            assert all(col[i][0] % ell == 0 for i in range(n))
        # and they span a sublattice of exactly that index
        B = IntMatrix([[basis[j][i][0] for j in range(n)] for i in range(n)])
        assert abs(B.det()) == index


def test_unimodular_sample():
    assert unimodular_sample(2, seed=99, word_length=0) == IntMatrix.identity(2)
    m = unimodular_sample(2, seed=1, word_length=1)
    assert abs(m.det()) == 1
    for seed in range(100):
        n = 1 + seed % 4
        m = unimodular_sample(n, seed=seed, word_length=10)
        assert abs(m.det()) == 1
    # deterministic per seed
    assert unimodular_sample(3, 42, 8) == unimodular_sample(3, 42, 8)


def test_rat_matrix_canonical():
    m = RatMatrix([[Fraction(2, 4), Fraction(-3, -9)], [0, 1]])
    assert m[0][0] == Fraction(1, 2)
    assert m[0][1] == Fraction(1, 3)
    assert m[0][1].denominator > 0


def test_rat_inverse():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 4)
        T = unimodular_sample(n, seed=rng.randint(0, 10 ** 6), word_length=10)
        inv = T.inverse_unimodular()
        assert T @ inv == IntMatrix.identity(n)


def test_skew_rat_form():
    theta = SkewRatForm([[0, Fraction(1, 3)], [Fraction(-1, 3), 0]])
    assert theta.common_denominator() == 3
    assert theta.scaled_int(3) == IntMatrix([[0, 1], [-1, 0]])
    with pytest.raises(ValueError):
        SkewRatForm([[0, 1], [1, 0]])
    # frac representative stays skew with above-diagonal entries in [0,1)
    t2 = SkewRatForm([[0, Fraction(7, 3)], [Fraction(-7, 3), 0]]).frac()
    assert t2.mat[0][1] == Fraction(1, 3)
    assert t2.mat[1][0] == Fraction(-1, 3)


def test_lift_unimodular_mod():
    rng = random.Random(17)
    for trial in range(200):
        n = rng.randint(1, 4)
        ell = rng.randint(1, 12)
        T0 = unimodular_sample(n, seed=5000 + trial, word_length=14)
        g = T0.mod(ell)
        T = lift_unimodular_mod(g, ell)
        assert (T - T0).mod(ell) == IntMatrix.zero(n).mod(ell)
        assert abs(T.det()) == 1
        if ell > 2:
            assert T.det() % ell == det_mod(g, ell)


def test_lift_rejects_non_unit_det():
    with pytest.raises(ValueError):
        lift_unimodular_mod(IntMatrix([[2, 0], [0, 1]]), 4)


def test_inverse_mod():
    rng = random.Random(23)
    for trial in range(60):
        n = rng.randint(1, 4)
        ell = rng.randint(2, 12)
        T = unimodular_sample(n, seed=7000 + trial, word_length=10)
        g = T.mod(ell)
        ginv = inverse_mod(g, ell)
        assert (g @ ginv).mod(ell) == IntMatrix.identity(n).mod(ell)
