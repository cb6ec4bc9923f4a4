"""Exact ranks, finite-complex dimensions, and stabilized dimensions."""

import random
from fractions import Fraction

import pytest

from dworkcohom import (ComplexDims, Polynomial, QQ, QQ_T, SparseMatrix,
                        StabilizationPolicy, StrandSpec, assemble_truncated_complex,
                        cohomology_dims, complex_dims, default_policy, exact_rank,
                        full_complex_spec, rank_mod_p, stabilized_cohomology)
from dworkcohom.exceptions import NilpotenceError
from dworkcohom.poly import monomial_basis

from _helpers import (PRIMES_62, dense_rank_fractions, fermat,
                      sparse_to_dense, var)


def random_sparse(rng, nrows, ncols, fill=0.12, fractions=True):
    entries = {}
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < fill:
                num = rng.randint(-9, 9)
                den = rng.randint(1, 4) if fractions else 1
                if num:
                    entries[(r, c)] = Fraction(num, den)
    return SparseMatrix(nrows, ncols, entries)


def test_rank_trivial_cases():
    eye = SparseMatrix(3, 3, {(i, i): Fraction(1) for i in range(3)})
    assert exact_rank(eye) == 3
    prop = SparseMatrix.from_triplets(2, 2, [(0, 0, Fraction(1)), (0, 1, Fraction(2)),
                                             (1, 0, Fraction(2)), (1, 1, Fraction(4))])
    assert exact_rank(prop) == 1
    assert exact_rank(SparseMatrix(4, 5, {})) == 0


def test_rank_against_dense_oracle():
    rng = random.Random(11)
    for _ in range(25):
        m = random_sparse(rng, rng.randint(1, 12), rng.randint(1, 12))
        assert exact_rank(m) == dense_rank_fractions(sparse_to_dense(m))


def test_rank_permutation_invariant():
    rng = random.Random(5)
    m = random_sparse(rng, 15, 20)
    base = exact_rank(m)
    for _ in range(5):
        rows = list(range(15))
        cols = list(range(20))
        rng.shuffle(rows)
        rng.shuffle(cols)
        shuffled = SparseMatrix(15, 20, {(rows[r], cols[c]): v
                                         for (r, c), v in m.entries.items()})
        assert exact_rank(shuffled) == base


def test_rank_modular_oracle_40x60():
    # the exact rank agrees with the best of three 62-bit modular ranks
    rng = random.Random(40)
    m = random_sparse(rng, 40, 60)
    exact = exact_rank(m)
    primes = rng.sample(PRIMES_62, 3)
    mod_ranks = [rank_mod_p(m, p) for p in primes]
    assert all(r <= exact for r in mod_ranks)
    assert max(mod_ranks) == exact


def test_modular_consistency_many_matrices():
    rng = random.Random(50)
    for _ in range(50):
        m = random_sparse(rng, rng.randint(2, 14), rng.randint(2, 14))
        exact = exact_rank(m)
        primes = rng.sample(PRIMES_62, 3)
        ranks = [rank_mod_p(m, p) for p in primes]
        assert all(r <= exact for r in ranks)
        assert max(ranks) == exact


def test_rank_over_function_field():
    t = QQ_T.gen
    m = SparseMatrix(2, 2, {(0, 0): t, (0, 1): QQ_T.one,
                            (1, 0): t * t, (1, 1): t})
    assert exact_rank(m) == 1
    m2 = SparseMatrix(2, 2, {(0, 0): t, (0, 1): QQ_T.one,
                             (1, 0): t * t, (1, 1): 1 + t})
    assert exact_rank(m2) == 2


def test_matrix_validation():
    with pytest.raises(ValueError):
        SparseMatrix.from_triplets(2, 2, [(0, 0, 1), (0, 0, 2)])
    with pytest.raises(IndexError):
        SparseMatrix(2, 2, {(2, 0): 1})


# ---- finite-complex dimensions ----------------------------------------


def test_zero_differentials():
    dims = complex_dims([3, 4, 2],
                        [SparseMatrix(4, 3, {}), SparseMatrix(2, 4, {})])
    assert dims.coh_dims == {0: 3, 1: 4, 2: 2}
    assert dims.euler_spaces() == dims.euler_cohomology()


def koszul_multiplication_complex(upto):
    """Koszul complex of (x0, x1) acting by multiplication on C[x0, x1].

    Built as a direct sum of whole graded pieces
        C[x]_w -> (C[x]_{w+1})^2 -> C[x]_{w+2},   w = -2 .. upto,
    with d0(p) = (x0 p, x1 p) and d1(p, q) = x1 p - x0 q, so this is an
    honest finite complex (brute-force oracle for the concentration of
    Koszul cohomology of a regular sequence).
    """
    spaces = [0, 0, 0]
    cols0, cols1 = [], []
    row1, row2 = {}, {}
    for w in range(-2, upto + 1):
        b0 = monomial_basis(2, w) if w >= 0 else []
        b1 = monomial_basis(2, w + 1) if w + 1 >= 0 else []
        b2 = monomial_basis(2, w + 2) if w + 2 >= 0 else []
        for s in (0, 1):
            for nu in b1:
                row1.setdefault((w, s, nu), len(row1))
        for nu in b2:
            row2.setdefault((w, nu), len(row2))
        for nu in b0:
            cols0.append({row1[(w, 0, (nu[0] + 1, nu[1]))]: Fraction(1),
                          row1[(w, 1, (nu[0], nu[1] + 1))]: Fraction(1)})
        for s in (0, 1):
            for nu in b1:
                target = (nu[0], nu[1] + 1) if s == 0 else (nu[0] + 1, nu[1])
                cols1.append({row2[(w, target)]: Fraction(1 if s == 0 else -1)})
        spaces[0] += len(b0)
        spaces[1] += 2 * len(b1)
        spaces[2] += len(b2)
    m0 = SparseMatrix.from_columns(spaces[1], cols0)
    m1 = SparseMatrix.from_columns(spaces[2], cols1)
    return spaces, [m0, m1]


def test_koszul_multiplication_concentrated():
    spaces, mats = koszul_multiplication_complex(6)
    dims = complex_dims(spaces, mats)
    assert dims.coh(0) == 0 and dims.coh(1) == 0
    assert dims.coh(2) == 1
    assert dims.euler_spaces() == dims.euler_cohomology()


def test_truncated_de_rham_one_variable():
    z = Polynomial.zero(QQ, 1)
    c = assemble_truncated_complex(z, full_complex_spec(1), 6)
    dims = cohomology_dims(c)
    assert dims.coh(0) == 1 and dims.coh(1) == 0


def test_nilpotence_violation_detected():
    bad = [SparseMatrix(1, 1, {(0, 0): Fraction(1)}),
           SparseMatrix(1, 1, {(0, 0): Fraction(1)})]
    with pytest.raises(NilpotenceError):
        complex_dims([1, 1, 1], bad)


def test_complex_dims_invariants():
    with pytest.raises(ValueError):
        ComplexDims(((0, 2, 1, 0),))  # coh != space - out - in


def test_euler_identity_on_assembled_complexes():
    for f, spec, bound in [
            (fermat(3, 3), StrandSpec(3, 3, 0), 9),
            (fermat(3, 3), full_complex_spec(3), 7),
            (var(3, 0) * var(3, 1) * var(3, 2), StrandSpec(3, 3, 2), 8),
            (fermat(2, 2), StrandSpec(2, 2, 1), 6)]:
        dims = cohomology_dims(assemble_truncated_complex(f, spec, bound))
        assert dims.euler_spaces() == dims.euler_cohomology()


# ---- stabilized (windowed) dimensions ----------------------------------


def test_policy_validation():
    with pytest.raises(ValueError):
        StabilizationPolicy(-1, 1, 5)
    with pytest.raises(ValueError):
        StabilizationPolicy(2, 0, 5)
    with pytest.raises(ValueError):
        StabilizationPolicy(5, 1, 4)
    pol = default_policy(fermat(4, 4), StrandSpec(4, 4, 0))
    assert (pol.initial_bound, pol.step) == (4 * 2 + 4 + 8, 4)


def test_square_one_variable_strands():
    # mu = 1 class of x^2 lives on strand 1; strand 0 is empty
    f = var(1, 0) ** 2
    full = stabilized_cohomology(f, full_complex_spec(1))
    assert full.dims == {0: 0, 1: 1} and full.stabilized
    assert stabilized_cohomology(f, StrandSpec(1, 2, 0)).dims == {0: 0, 1: 0}
    assert stabilized_cohomology(f, StrandSpec(1, 2, 1)).dims == {0: 0, 1: 1}


def test_windowed_dims_match_independent_formula():
    # independent oracle: dense ranks of the untruncated differential on
    # degree <= N sources, minus the witnessed image, per the definition
    from dworkcohom.forms import strand_basis, twisted_column
    f = var(1, 0) ** 2
    spec = full_complex_spec(1)
    n_bound = 4
    basis0 = strand_basis(spec, 0, n_bound)
    rows = {}
    cols = []
    for nu, I in basis0:
        col = {}
        for key, c in twisted_column(f, nu, I).items():
            col[rows.setdefault(key, len(rows))] = c
        cols.append(col)
    dense = [[Fraction(col.get(r, 0)) for col in cols] for r in range(len(rows))]
    rank_full = dense_rank_fractions(dense)
    band = [[Fraction(col.get(r, 0)) for col in cols]
            for key, r in rows.items() if spec.form_degree(*key) > n_bound]
    rank_band = dense_rank_fractions(band)
    kernel0 = len(basis0) - rank_full
    dim1 = len(strand_basis(spec, 1, n_bound))
    h1 = dim1 - (rank_full - rank_band)
    h0 = kernel0
    assert (h0, h1) == (0, 1)


def test_milnor_numbers_by_truncation():
    assert stabilized_cohomology(var(2, 0) * var(2, 1),
                                 full_complex_spec(2)).dims[2] == 1
    rep = stabilized_cohomology(fermat(3, 3), full_complex_spec(3))
    assert rep.dims == {0: 0, 1: 0, 2: 0, 3: 8}
    assert rep.certificate.agreed and len(rep.certificate.bounds) == 3


def test_unstabilized_is_reported():
    f = fermat(3, 3)
    rep = stabilized_cohomology(f, StrandSpec(3, 3, 0),
                                StabilizationPolicy(2, 3, 5))
    assert not rep.stabilized
    assert rep.certificate.bounds == ()
    assert len(rep.certificate.history) == 2


def test_weighted_cusp_milnor():
    # x^2 + y^3: quasi-homogeneous for weights (3, 2), Milnor number 2
    f = var(2, 0) ** 2 + var(2, 1) ** 3
    spec = full_complex_spec(2, weights=(3, 2))
    rep = stabilized_cohomology(f, spec)
    assert rep.dims == {0: 0, 1: 0, 2: 2}
    assert rep.stabilized
