# -*- coding: utf-8 -*-
# Copyright 2024 Halltic eSolutions S.L.
# License AGPL-3.0 or later (http://www.gnu.org/licenses/agpl).

import logging
import math

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import reverse_cuthill_mckee
from scipy.sparse.linalg import (ArpackNoConvergence, LinearOperator, eigsh,
                                 gmres, spilu, splu)

from ..exception import Breakdown, MaxIterations, NotConverged, SingularMatrix

_logger = logging.getLogger(__name__)

ORDERINGS = ('colamd', 'rcm')
PRECONDITIONERS = ('ilu', 'jacobi')
DIRECT_TOLERANCE = 1e-10
EIGEN_TOLERANCE = 1e-8
# Generalized eigen problems up to this size are solved densely
DENSE_EIGEN_LIMIT = 3000
ILU_DROP_TOL = 1e-6
ILU_FILL_FACTOR = 20


def compress(matrix):
    """ CSR copy with summed duplicates, sorted indices and no explicit zeros """
    csr = sp.csr_matrix(matrix, dtype=float)
    csr.sum_duplicates()
    csr.eliminate_zeros()
    csr.sort_indices()
    return csr


def bandwidth(matrix):
    coo = sp.coo_matrix(matrix)
    if not coo.nnz:
        return 0
    return int(np.max(np.abs(coo.row - coo.col)))


def rcm_permutation(matrix):
    """ Reverse Cuthill-McKee ordering of the symmetrized sparsity pattern """
    pattern = compress(matrix)
    pattern = (abs(pattern) + abs(pattern).T).tocsr()
    return reverse_cuthill_mckee(pattern, symmetric_mode=True)


def _relative_residual(matrix, x, rhs):
    residual = rhs - matrix @ x
    scale = np.max(np.abs(rhs)) if rhs.size else 0.0
    if scale == 0.0:
        scale = 1.0
    return residual, float(np.max(np.abs(residual))) / scale if residual.size else 0.0


def solve_direct(matrix, rhs, ordering='colamd', tol=DIRECT_TOLERANCE):
    """ Sparse LU solve with partial pivoting

    :param ordering: ``colamd`` lets SuperLU pick the column ordering,
                     ``rcm`` permutes the system with reverse Cuthill-McKee
                     and factors it in natural order
    """
    if ordering not in ORDERINGS:
        raise ValueError('Unknown ordering %s' % ordering)
    matrix = compress(matrix)
    rhs = np.asarray(rhs, dtype=float)
    row_counts = np.diff(matrix.indptr)
    empty = np.flatnonzero(row_counts == 0)
    if empty.size:
        raise SingularMatrix(pivot=int(empty[0]), detail='empty row')
    try:
        if ordering == 'rcm':
            perm = rcm_permutation(matrix)
            permuted = matrix[perm][:, perm].tocsc()
            _logger.debug('RCM bandwidth %d -> %d', bandwidth(matrix), bandwidth(permuted))
            lu = splu(permuted, permc_spec='NATURAL')

            def solve(vector):
                x = np.empty_like(vector)
                x[perm] = lu.solve(vector[perm])
                return x
        else:
            lu = splu(matrix.tocsc(), permc_spec='COLAMD')
            solve = lu.solve
    except RuntimeError as err:
        raise SingularMatrix(detail=str(err))
    x = solve(rhs)
    residual, relative = _relative_residual(matrix, x, rhs)
    if relative > tol:
        x = x + solve(residual)
        residual, relative = _relative_residual(matrix, x, rhs)
        if relative > tol:
            _logger.warning('Direct solve residual %.3e above %.1e', relative, tol)
    return x


def _jacobi(matrix):
    diagonal = matrix.diagonal()
    diagonal = np.where(diagonal == 0.0, 1.0, diagonal)
    return LinearOperator(matrix.shape, matvec=lambda v: v / diagonal, dtype=float)


def _incomplete_lu(matrix):
    try:
        factor = spilu(matrix.tocsc(), drop_tol=ILU_DROP_TOL, fill_factor=ILU_FILL_FACTOR)
    except RuntimeError as err:
        _logger.warning('Incomplete LU failed (%s), using the Jacobi preconditioner', err)
        return _jacobi(matrix)
    return LinearOperator(matrix.shape, matvec=factor.solve, dtype=float)


def solve_iterative(matrix, rhs, tol=1e-10, max_iter=2000, restart=100, preconditioner='ilu'):
    """ Restarted GMRES

    :param max_iter: maximum number of inner iterations over all cycles
    :param preconditioner: ``ilu`` (threshold incomplete LU) or ``jacobi``
                           (diagonal scaling)
    """
    if preconditioner not in PRECONDITIONERS:
        raise ValueError('Unknown preconditioner %s' % preconditioner)
    matrix = compress(matrix)
    rhs = np.asarray(rhs, dtype=float)
    if not np.any(rhs):
        return np.zeros_like(rhs)
    if preconditioner == 'ilu':
        operator = _incomplete_lu(matrix)
    else:
        operator = _jacobi(matrix)
    restart = max(1, min(restart, matrix.shape[0]))
    iterations = []
    x, info = gmres(matrix, rhs, rtol=tol, atol=0.0, restart=restart,
                    maxiter=max(1, int(math.ceil(max_iter / float(restart)))),
                    M=operator, callback=iterations.append, callback_type='pr_norm')
    if info < 0:
        raise Breakdown('GMRES breakdown (info = %d)' % info)
    if info > 0:
        relative = float(np.linalg.norm(rhs - matrix @ x) / np.linalg.norm(rhs))
        raise MaxIterations(relative, len(iterations))
    _logger.debug('GMRES converged in %d iterations', len(iterations))
    return x


def min_generalized_eig(a_sym, gram, tol=EIGEN_TOLERANCE):
    """ Smallest eigenpair of ``a_sym v = lambda gram v``

    Small problems are solved densely, larger ones by shift-invert
    Lanczos around zero.

    :return: ``(lambda_min, vector)``
    """
    n = a_sym.shape[0]
    if n <= DENSE_EIGEN_LIMIT:
        a_dense = a_sym.toarray() if sp.issparse(a_sym) else np.asarray(a_sym, dtype=float)
        g_dense = gram.toarray() if sp.issparse(gram) else np.asarray(gram, dtype=float)
        try:
            values, vectors = scipy.linalg.eigh(a_dense, g_dense)
        except np.linalg.LinAlgError as err:
            raise NotConverged('Dense generalized eigen solve failed: %s' % err)
        value, vector = float(values[0]), vectors[:, 0]
    else:
        try:
            values, vectors = eigsh(sp.csc_matrix(a_sym), k=1, M=sp.csc_matrix(gram),
                                    sigma=0.0, which='LM', tol=tol * 1e-2)
        except ArpackNoConvergence as err:
            raise NotConverged('Shift-invert Lanczos did not converge: %s' % err)
        value, vector = float(values[0]), vectors[:, 0]
    a_v = a_sym @ vector
    g_v = gram @ vector
    scale = np.linalg.norm(a_v) + abs(value) * np.linalg.norm(g_v)
    residual = np.linalg.norm(a_v - value * g_v) / scale if scale else 0.0
    if residual > tol:
        raise NotConverged('Eigen residual %.3e above %.1e' % (residual, tol))
    return value, vector
