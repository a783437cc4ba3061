# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import numpy as np
import pytest
import scipy.sparse as sp

from dgife.exception import MaxIterations, SingularMatrix
from dgife.numerics.sparse import (bandwidth, compress, min_generalized_eig, rcm_permutation,
                                   solve_direct, solve_iterative)


def _laplacian(n):
    return sp.diags([-np.ones(n - 1), 2.0 * np.ones(n), -np.ones(n - 1)], [-1, 0, 1], format='csr')


@pytest.mark.parametrize('ordering', ['colamd', 'rcm'])
def test_direct_two_by_two(ordering):
    matrix = sp.csr_matrix(np.array([[4.0, 1.0], [1.0, 3.0]]))
    x = solve_direct(matrix, np.array([1.0, 2.0]), ordering=ordering)
    np.testing.assert_allclose(x, [1.0 / 11.0, 7.0 / 11.0], rtol=1e-14)


def test_direct_identity():
    rhs = np.arange(5, dtype=float)
    np.testing.assert_array_equal(solve_direct(sp.identity(5, format='csr'), rhs), rhs)
    with pytest.raises(ValueError):
        solve_direct(sp.identity(5, format='csr'), rhs, ordering='amd')


def test_direct_orderings_agree():
    matrix = _laplacian(200) + sp.diags(np.linspace(0.0, 1.0, 200))
    rhs = np.sin(np.arange(200.0))
    np.testing.assert_allclose(solve_direct(matrix, rhs, ordering='rcm'),
                               solve_direct(matrix, rhs), rtol=1e-10)


def test_singular_matrix():
    with pytest.raises(SingularMatrix):
        solve_direct(sp.csr_matrix(np.array([[1.0, 1.0], [1.0, 1.0]])), np.ones(2))
    with pytest.raises(SingularMatrix) as error:
        solve_direct(sp.csr_matrix(np.array([[1.0, 0.0], [0.0, 0.0]])), np.ones(2))
    assert error.value.pivot == 1


@pytest.mark.parametrize('preconditioner', ['ilu', 'jacobi'])
def test_iterative_matches_direct(preconditioner):
    matrix = _laplacian(60)
    rhs = np.ones(60)
    x = solve_iterative(matrix, rhs, tol=1e-12, max_iter=600, restart=60, preconditioner=preconditioner)
    np.testing.assert_allclose(x, solve_direct(matrix, rhs), rtol=1e-8)
    np.testing.assert_array_equal(solve_iterative(matrix, np.zeros(60)), np.zeros(60))


def test_iterative_max_iterations():
    with pytest.raises(MaxIterations):
        solve_iterative(_laplacian(50), np.ones(50), tol=1e-14, max_iter=2, restart=1,
                        preconditioner='jacobi')
    with pytest.raises(ValueError):
        solve_iterative(_laplacian(5), np.ones(5), preconditioner='amg')


def test_compress_and_bandwidth():
    matrix = sp.coo_matrix((np.array([1.0, 2.0, 0.0, 3.0]),
                            (np.array([0, 0, 1, 2]), np.array([1, 1, 0, 0]))), shape=(3, 3))
    csr = compress(matrix)
    assert csr.nnz == 2
    assert csr[0, 1] == 3.0
    assert bandwidth(csr) == 2
    assert bandwidth(sp.csr_matrix((3, 3))) == 0


def test_rcm_is_a_permutation():
    matrix = _laplacian(30)
    shuffle = np.random.default_rng(2).permutation(30)
    shuffled = matrix[shuffle][:, shuffle]
    perm = rcm_permutation(shuffled)
    assert sorted(perm.tolist()) == list(range(30))
    assert bandwidth(shuffled[perm][:, perm]) == 1


def test_generalized_eigenvalue():
    rng = np.random.default_rng(4)
    factor = rng.random((20, 20))
    gram = sp.csr_matrix(factor @ factor.T + 20.0 * np.eye(20))
    value, vector = min_generalized_eig(gram, gram)
    assert value == pytest.approx(1.0, rel=1e-10)
    assert vector.shape == (20,)
    value, _ = min_generalized_eig(2.0 * gram, gram)
    assert value == pytest.approx(2.0, rel=1e-10)
    value, _ = min_generalized_eig(_laplacian(20), sp.identity(20, format='csr'))
    assert value == pytest.approx(2.0 - 2.0 * np.cos(np.pi / 21.0), rel=1e-10)
