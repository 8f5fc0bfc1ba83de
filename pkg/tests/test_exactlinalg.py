"""Exact linear algebra over Q: subspaces, matrices, span solving."""

import random
from fractions import Fraction

import pytest

from brieskornlab.exactlinalg import (ExactMatrix, QuotientMapError, SpanSolver,
                                      Subspace, image_dim_through_quotient,
                                      rank_of_vectors, reduce_mod)


def test_subspace_dims_and_membership():
    s = Subspace.from_vectors([{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 1, 2: -1}], 3)
    assert s.dim == 2  # third vector = first minus second
    assert s.contains({0: 2, 1: 5, 2: 1})  # 2*(first) + (second)
    assert not s.contains({2: 1})
    assert Subspace.zero(4).dim == 0
    assert Subspace.from_vectors([], 3).dim == 0


def test_reduce_is_linear_and_idempotent():
    rng = random.Random(11)
    s = Subspace.from_vectors(
        [{i: rng.randint(-3, 3) for i in range(6)} for _ in range(3)], 6)
    for _ in range(25):
        u = {i: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for i in range(6)}
        v = {i: rng.randint(-4, 4) for i in range(6)}
        ru, rv = s.reduce(u), s.reduce(v)
        w = {i: u.get(i, 0) + v.get(i, 0) for i in range(6)}
        rw = s.reduce(w)
        summed = {i: ru.get(i, 0) + rv.get(i, 0) for i in set(ru) | set(rv)}
        summed = {i: c for i, c in summed.items() if c}
        assert rw == summed
        assert s.reduce(ru) == ru
        assert s.contains({i: u.get(i, 0) - ru.get(i, 0) for i in range(6)})


def test_subspace_semantic_equality():
    """Equality must not depend on which generators presented the space."""
    s = Subspace.from_vectors([{0: 1, 1: 1}, {2: 1}], 3)
    t = Subspace.from_vectors([{0: 1, 1: 1, 2: 1}, {2: 2}], 3)
    assert s == t
    assert hash(s) == hash(t)
    assert s != Subspace.from_vectors([{0: 1}, {2: 1}], 3)
    assert s != Subspace.from_vectors([{0: 1, 1: 1}], 3)


def test_rank_of_vectors():
    assert rank_of_vectors([{0: 1}, {0: 2}, {}], 2) == 1
    assert rank_of_vectors([], 5) == 0
    assert rank_of_vectors([{i: 1} for i in range(4)], 4) == 4


def test_matrix_rank_and_kernel():
    m = ExactMatrix.from_rows([{0: 1, 1: 2, 2: 3}, {0: 2, 1: 4, 2: 6},
                               {1: 1, 2: 1}], 3)
    assert m.rank() == 2
    ker = m.kernel_basis()
    assert ker.dim == 1
    for b in ker.basis():
        assert all(c == 0 for c in m.matvec(b).values())


def test_matrix_rational_entries():
    m = ExactMatrix.from_rows([{0: Fraction(1, 2), 1: Fraction(1, 3)},
                               {0: 3, 1: 2}], 2)
    assert m.rank() == 1  # second row = 6 * first
    assert m.transpose().rank() == 1


def test_rank_transpose_invariance():
    rng = random.Random(23)
    for _ in range(30):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [{c: rng.randint(-2, 2) for c in range(nc) if rng.random() < 0.6}
                for _ in range(nr)]
        m = ExactMatrix.from_rows(rows, nc)
        assert m.rank() == m.transpose().rank()
        assert m.kernel_basis().dim == nc - m.rank()


def test_reduce_mod():
    s = Subspace.from_vectors([{0: 1, 1: 1}], 2)
    r = reduce_mod({0: 3, 1: 1}, s)
    assert s.contains({0: 3 - r.get(0, 0), 1: 1 - r.get(1, 0)})


def test_span_solver_expresses_exact_combinations():
    rng = random.Random(5)
    solver = SpanSolver(5)
    basis = []
    while len(basis) < 3:
        v = {i: rng.randint(-3, 3) for i in range(5)}
        if solver.add(v, len(basis)):
            basis.append(v)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in basis]
        target = {}
        for c, v in zip(coeffs, basis):
            for i, val in v.items():
                target[i] = target.get(i, 0) + c * val
        combo = solver.express(target)
        assert combo is not None
        want = {j: c for j, c in enumerate(coeffs) if c != 0}
        assert combo == want
    assert solver.express({4: 1, 0: 17, 2: -5}) is None or solver.dim == 5


def test_span_solver_rejects_dependent_vectors():
    solver = SpanSolver(3)
    assert solver.add({0: 1, 1: 1}, "a")
    assert not solver.add({0: 2, 1: 2}, "b")
    assert solver.dim == 1


def test_image_dim_through_quotient():
    """Projection (x, y) -> x descends from Q^2/<e1> with full rank 1."""
    m = ExactMatrix.from_rows([{0: 1}], 2)
    rel_src = Subspace.from_vectors([{1: 1}], 2)
    assert image_dim_through_quotient(m, rel_src, Subspace.zero(1)) == 1

    # identity does not descend to Q^2/<e0> -> Q^2
    ident = ExactMatrix.from_rows([{0: 1}, {1: 1}], 2).transpose()
    with pytest.raises(QuotientMapError):
        image_dim_through_quotient(ident, Subspace.from_vectors([{0: 1}], 2),
                                   Subspace.zero(2))
