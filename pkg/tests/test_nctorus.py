import random
from fractions import Fraction

import oracles
from flattori.cohomology import pullback
from flattori.exact_linalg import IntMatrix, SkewRatForm, unimodular_sample
from flattori.nctorus import (
    IsoStatus,
    NCTorusParams,
    bundle_of,
    c1_of_E_theta,
    iso_decide,
    iso_via_bundles,
    normal_form,
    q_theta,
)


def skew2(x):
    return SkewRatForm([[0, Fraction(x)], [-Fraction(x), 0]])


def skew_blocks(*vals):
    k = len(vals)
    n = 2 * k
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(vals):
        m[2 * i][2 * i + 1] = Fraction(v)
        m[2 * i + 1][2 * i] = -Fraction(v)
    return SkewRatForm(m)


def params(theta, m=1):
    return NCTorusParams(theta.n, theta, m)


def rand_int_skew(rng, n, bound=3):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            m[i][j] = v
            m[j][i] = -v
    return IntMatrix(m)


def test_q_theta_examples():
    assert q_theta(skew2(Fraction(3, 7))) == 7
    assert q_theta(skew2(0)) == 1
    assert q_theta(skew_blocks(Fraction(1, 2), Fraction(1, 3))) == 6


def test_q_theta_brute_force_index():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(1, 3)
        theta = oracles.random_skew_rat(rng, n, max_den=5, max_num=4)
        q = q_theta(theta)
        assert q * q == oracles.brute_force_lattice_index(theta)


def test_q_theta_congruence_and_shift_invariant():
    rng = random.Random(37)
    for trial in range(150):
        n = rng.randint(1, 4)
        theta = oracles.random_skew_rat(rng, n, max_den=8, max_num=5)
        T = unimodular_sample(n, seed=trial, word_length=10)
        congruent = theta.congruence(T)
        shifted = theta.add_int(rand_int_skew(rng, n))
        assert q_theta(congruent) == q_theta(theta)
        assert q_theta(shifted) == q_theta(theta)
        # block denominators (the divisor-chain invariants) survive both moves
        qs = [b.denominator for b in normal_form(theta).blocks if b.denominator > 1]
        assert [b.denominator for b in normal_form(congruent).blocks
                if b.denominator > 1] == qs
        assert [b.denominator for b in normal_form(shifted).blocks
                if b.denominator > 1] == qs


def test_normal_form_zero():
    nf = normal_form(SkewRatForm([[0] * 3 for _ in range(3)]))
    assert nf.blocks == ()
    assert nf.free_rank == 3


def test_normal_form_already_normal():
    nf = normal_form(skew2(Fraction(5, 3)))
    assert nf.blocks == (Fraction(5, 3),)
    assert nf.T == IntMatrix.identity(2)


def test_normal_form_shuffled_blocks():
    rng = random.Random(41)
    base = skew_blocks(Fraction(1, 2), Fraction(1, 3))
    for trial in range(20):
        T0 = unimodular_sample(4, seed=900 + trial, word_length=12)
        shuffled = base.congruence(T0)
        nf = normal_form(shuffled)  # certificate verified inside
        qs = [b.denominator for b in nf.blocks]
        prod = 1
        for q in qs:
            prod *= q
        assert prod == 6
        assert all(qs[i + 1] % qs[i] == 0 for i in range(len(qs) - 1))


def test_c1_examples():
    assert c1_of_E_theta(skew2(0)).is_zero()
    c = c1_of_E_theta(skew2(Fraction(2, 5)))
    assert c.mat[0][1] == 2
    rng = random.Random(43)
    for trial in range(30):
        n = rng.randint(1, 4)
        theta = oracles.random_skew_rat(rng, n, max_den=6, max_num=4)
        T = unimodular_sample(n, seed=3000 + trial, word_length=8)
        lhs = c1_of_E_theta(theta.congruence(T))
        rhs = pullback(c1_of_E_theta(theta), T.transpose())
        assert lhs == rhs


def test_bundle_of():
    vec, mat, rep = bundle_of(skew2(0))
    assert vec.rank == 1 and vec.c1.is_zero()
    assert mat.beta.is_zero()
    assert rep.dim == 1

    vec, mat, rep = bundle_of(skew2(Fraction(1, 3)))
    assert vec.rank == 3
    assert vec.c1.mat[0][1] == 1
    assert rep.dim == 3

    rng = random.Random(47)
    for _ in range(10):
        n = rng.randint(1, 3)
        theta = oracles.random_skew_rat(rng, n, max_den=4, max_num=3)
        vec, _, rep = bundle_of(theta)
        assert rep.dim == vec.rank


def test_iso_third_and_two_thirds():
    d = iso_decide(params(skew2(Fraction(1, 3))), params(skew2(Fraction(2, 3))))
    assert d.status is IsoStatus.ISO
    # certificate holds literally
    diff = skew2(Fraction(2, 3)).mat - skew2(Fraction(1, 3)).congruence(d.T).mat
    assert diff.is_integral()
    assert abs(d.T.det()) == 1


def test_iso_fifth_negative():
    d = iso_decide(params(skew2(Fraction(1, 5))), params(skew2(Fraction(2, 5))))
    assert d.status is IsoStatus.NOT_ISO


def test_iso_integer_shift():
    theta = skew2(Fraction(1, 3))
    shifted = theta.add_int(IntMatrix([[0, 4], [-4, 0]]))
    d = iso_decide(params(theta), params(shifted))
    assert d.status is IsoStatus.ISO


def test_iso_rejects_n_m_mismatch():
    t2 = skew2(Fraction(1, 3))
    t3 = SkewRatForm([[0, Fraction(1, 3), 0], [Fraction(-1, 3), 0, 0], [0, 0, 0]])
    assert iso_decide(params(t2), params(t3)).status is IsoStatus.NOT_ISO
    assert iso_decide(params(t2, m=1), params(t2, m=2)).status is IsoStatus.NOT_ISO


def test_iso_n2_analytic_rule():
    rng = random.Random(53)
    for _ in range(100):
        a = Fraction(rng.randint(-8, 8), rng.randint(1, 6))
        b = Fraction(rng.randint(-8, 8), rng.randint(1, 6))
        expect = (a - b) % 1 == 0 or (a + b) % 1 == 0
        got = iso_decide(params(skew2(a)), params(skew2(b)))
        assert (got.status is IsoStatus.ISO) == expect


def test_iso_perturbation_invariance():
    rng = random.Random(59)
    base_pairs = [
        (skew2(Fraction(1, 3)), skew2(Fraction(2, 3))),
        (skew2(Fraction(1, 5)), skew2(Fraction(2, 5))),
        (skew_blocks(Fraction(1, 2), Fraction(1, 3)), skew_blocks(Fraction(1, 6), 0)),
    ]
    for t1, t2 in base_pairs:
        want = iso_decide(params(t1), params(t2)).status
        for trial in range(25):
            n = t1.n
            T = unimodular_sample(n, seed=7700 + trial, word_length=10)
            t1p = t1.congruence(T).add_int(rand_int_skew(rng, n))
            got = iso_decide(params(t1p), params(t2)).status
            assert got is want


def test_iso_equivalence_relation_with_certificates():
    rng = random.Random(61)
    corpus = [oracles.random_skew_rat(rng, 2, max_den=4, max_num=4) for _ in range(20)]
    corpus += [oracles.random_skew_rat(rng, 3, max_den=3, max_num=3) for _ in range(10)]
    for theta in corpus:
        d = iso_decide(params(theta), params(theta))
        assert d.status is IsoStatus.ISO
    for i in range(0, len(corpus) - 1, 2):
        a, b = corpus[i], corpus[i + 1]
        if a.n != b.n:
            continue
        dab = iso_decide(params(a), params(b))
        dba = iso_decide(params(b), params(a))
        assert (dab.status is IsoStatus.ISO) == (dba.status is IsoStatus.ISO)
        if dab.status is IsoStatus.ISO:
            # symmetry via certificate inversion
            Tinv = dab.T.inverse_unimodular()
            assert (a.mat - b.congruence(Tinv).mat).is_integral()
    # transitivity via certificate composition
    t1 = skew2(Fraction(1, 3))
    t2 = t1.congruence(unimodular_sample(2, 5, 9)).add_int(rand_int_skew(rng, 2))
    t3 = t2.congruence(unimodular_sample(2, 6, 9)).add_int(rand_int_skew(rng, 2))
    d12 = iso_decide(params(t1), params(t2))
    d23 = iso_decide(params(t2), params(t3))
    assert d12.status is IsoStatus.ISO and d23.status is IsoStatus.ISO
    T13 = d23.T @ d12.T
    assert (t3.mat - t1.congruence(T13).mat).is_integral()


def test_iso_matches_exhaustive_oracle_small():
    rng = random.Random(67)
    cases = []
    for n, ell, count in [(2, 2, 2), (2, 3, 3), (2, 4, 4), (3, 2, 6), (3, 3, 6)]:
        forms = []
        for _ in range(count):
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    v = rng.randrange(ell)
                    m[i][j] = Fraction(v, ell)
                    m[j][i] = -m[i][j]
            forms.append(SkewRatForm(m))
        cases.append((n, ell, forms))
    for n, ell, forms in cases:
        units = oracles.all_unit_matrices(n, ell)
        states = [oracles.theta_bar_state(t, ell) for t in forms]
        orbits = [oracles.orbit_of(s, units, ell) for s in states]
        for i in range(len(forms)):
            for j in range(len(forms)):
                expect = oracles.state_key(states[j]) in orbits[i]
                got = iso_decide(params(forms[i]), params(forms[j]))
                assert (got.status is IsoStatus.ISO) == expect


def test_iso_matches_oracle_mixed_denominators():
    # entries with different denominators in one form; the walk modulus is
    # their lcm and must agree with the dense enumeration at that modulus
    rng = random.Random(73)
    for n, ell in [(2, 6), (3, 4), (3, 6)]:
        units = oracles.all_unit_matrices(n, ell)
        forms = []
        for _ in range(5):
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    den = rng.choice([d for d in (1, 2, 3, 4, 6) if ell % d == 0])
                    m[i][j] = Fraction(rng.randrange(den), den)
                    m[j][i] = -m[i][j]
            forms.append(SkewRatForm(m))
        states = [oracles.theta_bar_state(t, ell) for t in forms]
        orbits = [oracles.orbit_of(s, units, ell) for s in states]
        for i in range(len(forms)):
            for j in range(len(forms)):
                expect = oracles.state_key(states[j]) in orbits[i]
                got = iso_decide(params(forms[i]), params(forms[j]))
                assert (got.status is IsoStatus.ISO) == expect
                if got.status is IsoStatus.ISO:
                    diff = forms[j].mat - forms[i].congruence(got.T).mat
                    assert diff.is_integral()


def test_iso_via_bundles_agrees():
    pairs = [
        (skew2(Fraction(1, 3)), skew2(Fraction(2, 3))),
        (skew2(Fraction(1, 5)), skew2(Fraction(2, 5))),
        (skew2(Fraction(1, 4)), skew2(Fraction(3, 4))),
        (skew_blocks(Fraction(1, 2), Fraction(1, 3)), skew_blocks(Fraction(1, 6), 0)),
        (skew_blocks(Fraction(1, 2), Fraction(1, 2)), skew_blocks(Fraction(1, 2), Fraction(3, 2))),
    ]
    for t1, t2 in pairs:
        want = iso_decide(params(t1), params(t2)).status
        for m in (1, 2, 5):
            assert iso_via_bundles(t1, t2, m).status is want


def test_frac_representative_independence():
    # reduction to [0,1) commutes with the decision: shifted inputs give the
    # same answers as their frac representatives
    rng = random.Random(71)
    for trial in range(30):
        n = rng.randint(2, 3)
        theta = oracles.random_skew_rat(rng, n, max_den=4, max_num=8)
        other = oracles.random_skew_rat(rng, n, max_den=4, max_num=8)
        d1 = iso_decide(params(theta), params(other)).status
        d2 = iso_decide(params(theta.frac()), params(other.frac())).status
        assert d1 is d2


def test_undecided_at_cap():
    # disjoint orbits: with a tiny cap the walk must give up, not guess
    t1 = skew2(Fraction(1, 5))
    t2 = skew2(Fraction(2, 5))
    d = iso_decide(params(t1), params(t2), cap=1)
    assert d.status is IsoStatus.UNDECIDED
    assert d.T is None


def test_q_theta_equal_pre_in_iso_via_bundles():
    assert iso_via_bundles(skew2(Fraction(1, 3)), skew2(Fraction(1, 5))).status \
        is IsoStatus.NOT_ISO
