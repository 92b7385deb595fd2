# tests/test_linalg.py

import pytest
from pathlib import Path
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.errors import DimensionMismatchError, ValidationError
from core.linalg import MAX_PRIME, AffineSystem, PrimeField, block_matrix, is_prime, solve_affine


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    p = draw(st.sampled_from([2, 3, 5]))
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return PrimeField(p), np.array(entries, dtype=np.int64).reshape(rows, cols)


# --- Evaluation for the prime field ---

def test_primes_are_validated():
    """
    Assesses that only primes are accepted as field characteristics.
    """
    assert [n for n in range(12) if is_prime(n)] == [2, 3, 5, 7, 11]
    with pytest.raises(ValidationError):
        PrimeField(4)
    assert PrimeField(3) == PrimeField(3), "fields compare by their prime"
    assert PrimeField(3).inv(2) == 2, "2 * 2 = 1 mod 3"


def test_primes_too_large_for_exact_arithmetic_are_refused():
    """
    Assesses the prime bound, and that products stay exact just below it.
    """
    with pytest.raises(ValidationError):
        PrimeField(4294967311)
    with pytest.raises(ValidationError):
        PrimeField(MAX_PRIME + 7)

    p = 1048573  # largest prime below 2**20
    assert p < MAX_PRIME and is_prime(p)
    f = PrimeField(p)
    m = f.matrix([[p - 1, p - 1], [p - 1, p - 1]])
    assert f.mul(m, m).tolist() == [[2, 2], [2, 2]], "(-1)(-1) + (-1)(-1) = 2"
    r, pivots = f.rref(f.matrix([[p - 1, p - 2], [p - 2, p - 1]]))
    assert pivots == [0, 1] and f.equal(r, f.eye(2)), "det = 1 - 4 = -3 is nonzero mod p"


def test_multiplication_rejects_bad_shapes():
    """
    Assesses that mismatched matrix products raise a DimensionMismatchError.
    """
    f = PrimeField(2)
    with pytest.raises(DimensionMismatchError):
        f.mul(f.zeros(2, 3), f.zeros(2, 3))
    with pytest.raises(DimensionMismatchError):
        block_matrix(f, [[f.zeros(1, 1), f.zeros(2, 1)]])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(data):
    """
    Assesses rank + nullity = number of columns, and that every kernel vector is killed.
    """
    f, m = data
    basis, free = f.kernel(m)
    assert f.rank(m) + len(free) == m.shape[1], "rank-nullity should hold"
    assert f.is_zero(f.mul(m, basis)), "kernel basis vectors must map to zero"
    for j, c in enumerate(free):
        assert basis[c, j] == 1, "basis vector j is 1 at its free column"


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 3))
def test_solve_finds_a_solution_when_one_exists(data, width):
    """
    Assesses solver soundness: for b = a x0 the returned x satisfies a x = b.
    """
    f, a = data
    x0 = np.arange(a.shape[1] * width, dtype=np.int64).reshape(a.shape[1], width) % f.p
    b = f.mul(a, x0) if a.shape[1] else f.zeros(a.shape[0], width)
    x = f.solve(a, b)
    assert x is not None, "a consistent system must be solvable"
    assert f.equal(f.mul(a, x) if a.shape[1] else f.zeros(a.shape[0], width), b)


def test_solve_reports_inconsistency():
    """
    Assesses that an inconsistent system returns None rather than raising.
    """
    f = PrimeField(3)
    a = f.matrix([[1, 0], [1, 0]])
    b = f.matrix([[1], [2]])
    assert f.solve(a, b) is None


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_cokernel_projection_and_section(data):
    """
    Assesses P m = 0, P S = 1 and dim coker = rows - rank.
    """
    f, m = data
    proj, section = f.cokernel(m)
    assert proj.shape[0] == m.shape[0] - f.rank(m), "cokernel has the complementary dimension"
    if m.shape[1]:
        assert f.is_zero(f.mul(proj, m)), "the image dies in the cokernel"
    assert f.equal(f.mul(proj, section), f.eye(proj.shape[0])), "section splits the projection"


def test_inverse_roundtrip():
    """
    Assesses inverse and the refusal to invert a singular matrix.
    """
    f = PrimeField(5)
    m = f.matrix([[1, 2], [3, 4]])
    assert f.equal(f.mul(m, f.inverse(m)), f.eye(2))
    with pytest.raises(ValidationError):
        f.inverse(f.matrix([[1, 2], [2, 4]]))


# --- Evaluation for affine systems ---

def test_affine_system_solution_satisfies_every_equation():
    """
    Assesses that AffineSystem returns a verified assignment of A H B = C.
    """
    f = PrimeField(3)
    a = f.matrix([[1, 1], [0, 1]])
    b = f.matrix([[2, 0, 1]])
    c = f.matrix([[1, 0, 2], [2, 0, 1]])
    values = solve_affine(f, [(2, 1)], [([(a, 0, b)], c)])
    assert values is not None
    assert f.equal(f.mul(a, values[0], b), c)


def test_affine_system_enumerates_every_solution():
    """
    Assesses enumeration: a 2x2 unknown over F_2 with one linear constraint has 8 solutions.
    """
    f = PrimeField(2)
    system = AffineSystem(f)
    h = system.add_unknown(2, 2)
    system.add_equation([(f.matrix([[1, 1]]), h, f.matrix([[1], [0]]))], f.matrix([[1]]))
    solutions = list(system.enumerate_solutions())
    assert len(solutions) == 8, "16 matrices, half satisfy one independent equation"
    assert all(system.evaluate(s) for s in solutions)
    assert len({s[0].tobytes() for s in solutions}) == 8, "solutions are distinct"


def test_affine_system_without_solution():
    """
    Assesses that contradictory equations give None, and tie() identifies unknowns.
    """
    f = PrimeField(2)
    system = AffineSystem(f)
    x = system.add_unknown(1, 1)
    y = system.add_unknown(1, 1)
    system.tie(x, y)
    system.fix(x, f.matrix([[1]]))
    system.fix(y, f.matrix([[0]]))
    assert system.solve() is None


def test_affine_system_rejects_misfit_terms():
    """
    Assesses that a term whose shapes do not fit raises DimensionMismatchError.
    """
    f = PrimeField(2)
    system = AffineSystem(f)
    h = system.add_unknown(2, 2)
    with pytest.raises(DimensionMismatchError):
        system.add_equation([(f.eye(3), h, f.eye(2))], f.zeros(3, 2))
