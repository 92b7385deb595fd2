# core/linalg.py

"""
Exact linear algebra over a prime field F_p.

Matrices are ``numpy`` int64 arrays whose entries are kept reduced into
``[0, p)``. Row reduction always picks the first nonzero entry of the leftmost
available column, so every derived basis (kernels, cokernels, solutions) is
reproducible bit for bit.
"""
import logging
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import DimensionMismatchError, StabilizerError, ValidationError

logger = logging.getLogger(__name__)

Matrix = np.ndarray

# entries stay below p, so a product of n x n matrices sums n terms below p**2;
# int64 holds that exactly for n up to 2**23
MAX_PRIME = 2 ** 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    """Arithmetic and row reduction modulo a prime ``p``."""

    def __init__(self, p: int = 2):
        if int(p) >= MAX_PRIME:
            raise ValidationError(f"primes must be below {MAX_PRIME} for exact int64 arithmetic, got {p}")
        if not is_prime(int(p)):
            raise ValidationError(f"{p} is not a prime")
        self.p = int(p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    # --- construction ---

    def matrix(self, data, shape: Optional[Tuple[int, int]] = None) -> Matrix:
        m = np.array(data, dtype=np.int64)
        if shape is not None:
            m = m.reshape(shape)
        if m.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-d matrix, got shape {m.shape}")
        return m % self.p

    def zeros(self, rows: int, cols: int) -> Matrix:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> Matrix:
        return np.eye(n, dtype=np.int64)

    def scalar(self, value: int) -> int:
        return int(value) % self.p

    def inv(self, value: int) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("zero has no inverse in a field")
        return pow(value, self.p - 2, self.p)

    def neg(self, m: Matrix) -> Matrix:
        return (-m) % self.p

    def mul(self, *ms: Matrix) -> Matrix:
        out = ms[0]
        for m in ms[1:]:
            if out.shape[1] != m.shape[0]:
                raise DimensionMismatchError(f"cannot multiply {out.shape} by {m.shape}")
            out = (out @ m) % self.p
        return out

    def add(self, *ms: Matrix) -> Matrix:
        out = ms[0]
        for m in ms[1:]:
            if out.shape != m.shape:
                raise DimensionMismatchError(f"cannot add {out.shape} and {m.shape}")
            out = (out + m) % self.p
        return out

    def sub(self, a: Matrix, b: Matrix) -> Matrix:
        if a.shape != b.shape:
            raise DimensionMismatchError(f"cannot subtract {b.shape} from {a.shape}")
        return (a - b) % self.p

    def kron(self, a: Matrix, b: Matrix) -> Matrix:
        return np.kron(a, b) % self.p

    def equal(self, a: Matrix, b: Matrix) -> bool:
        return a.shape == b.shape and bool(np.array_equal(a % self.p, b % self.p))

    def is_zero(self, m: Matrix) -> bool:
        return not np.any(m % self.p)

    # --- row reduction ---

    def rref(self, m: Matrix) -> Tuple[Matrix, List[int]]:
        """Reduced row echelon form and the pivot columns."""
        r = np.array(m, dtype=np.int64) % self.p
        rows, cols = r.shape
        pivots: List[int] = []
        row = 0
        for col in range(cols):
            if row >= rows:
                break
            nonzero = np.nonzero(r[row:, col])[0]
            if nonzero.size == 0:
                continue
            pick = row + int(nonzero[0])
            if pick != row:
                r[[row, pick]] = r[[pick, row]]
            r[row] = (r[row] * self.inv(r[row, col])) % self.p
            factors = r[:, col].copy()
            factors[row] = 0
            if np.any(factors):
                r = (r - np.outer(factors, r[row])) % self.p
            pivots.append(col)
            row += 1
        return r, pivots

    def rank(self, m: Matrix) -> int:
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel(self, m: Matrix) -> Tuple[Matrix, List[int]]:
        """
        Kernel basis as the columns of a matrix, plus the free columns.

        Basis vector j is 1 at ``free[j]`` and 0 at every other free column, so
        the coordinates of any kernel vector are its entries at ``free``.
        """
        rows, cols = m.shape
        r, pivots = self.rref(m) if rows else (self.zeros(0, cols), [])
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        basis = self.zeros(cols, len(free))
        for j, f in enumerate(free):
            basis[f, j] = 1
            for i, c in enumerate(pivots):
                basis[c, j] = (-r[i, f]) % self.p
        return basis, free

    def kernel_basis(self, m: Matrix) -> List[np.ndarray]:
        """Basis of {v : m v = 0} as a list of column vectors."""
        basis, _ = self.kernel(m)
        return [basis[:, j].copy() for j in range(basis.shape[1])]

    def image_basis(self, m: Matrix) -> Matrix:
        """Independent columns of ``m`` spanning its image (pivot columns)."""
        if m.size == 0:
            return self.zeros(m.shape[0], 0)
        _, pivots = self.rref(m)
        return m[:, pivots] % self.p

    def cokernel(self, m: Matrix) -> Tuple[Matrix, Matrix]:
        """
        Projection ``P`` onto F^r / im(m) and its section ``S`` with ``P S = 1``.

        The quotient basis is the classes of the standard vectors that are not
        pivots of the reduced row space of ``m^T``.
        """
        rows = m.shape[0]
        if m.shape[1] == 0:
            return self.eye(rows), self.eye(rows)
        r, pivots = self.rref(m.T)
        pivot_set = set(pivots)
        free = [c for c in range(rows) if c not in pivot_set]
        proj = self.zeros(len(free), rows)
        for j, f in enumerate(free):
            proj[j, f] = 1
        for i, c in enumerate(pivots):
            proj[:, c] = (-r[i, free]) % self.p
        section = self.eye(rows)[:, free]
        return proj, section

    def solve(self, a: Matrix, b: Matrix) -> Optional[Matrix]:
        """Some X with a X = b, or None."""
        if a.shape[0] != b.shape[0]:
            raise DimensionMismatchError(f"solve: {a.shape} against right-hand side {b.shape}")
        rows, cols = a.shape
        if rows == 0:
            return self.zeros(cols, b.shape[1])
        r, pivots = self.rref(np.hstack([a % self.p, b % self.p]))
        x = self.zeros(cols, b.shape[1])
        for i, c in enumerate(pivots):
            if c >= cols:
                return None
            x[c] = r[i, cols:]
        return x

    def is_invertible(self, m: Matrix) -> bool:
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def inverse(self, m: Matrix) -> Matrix:
        if not self.is_invertible(m):
            raise ValidationError(f"matrix of shape {m.shape} is not invertible")
        return self.solve(m, self.eye(m.shape[0]))

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> Matrix:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)


def block_matrix(field: PrimeField, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assembles a block matrix, checking that rows and columns line up."""
    if not blocks:
        return field.zeros(0, 0)
    try:
        return np.block([[np.asarray(b, dtype=np.int64) for b in row] for row in blocks]) % field.p
    except ValueError as e:
        raise DimensionMismatchError(f"block shapes do not line up: {e}") from e


def direct_sum_matrix(field: PrimeField, ms: Iterable[Matrix]) -> Matrix:
    ms = list(ms)
    rows = sum(m.shape[0] for m in ms)
    cols = sum(m.shape[1] for m in ms)
    out = field.zeros(rows, cols)
    r = c = 0
    for m in ms:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


class AffineSystem:
    """
    A linear system in unknown matrices H_0, H_1, ...

    Each equation reads sum_t A_t H_{i_t} B_t = C. Reusing an unknown index in
    several equations identifies the shared entries. Vectorization uses
    vec(A H B) = (B^T kron A) vec(H) with column-major ``vec``.
    """

    def __init__(self, field: PrimeField):
        self.field = field
        self.shapes: List[Tuple[int, int]] = []
        self.offsets: List[int] = []
        self.size = 0
        self._rows: List[Matrix] = []
        self._rhs: List[np.ndarray] = []
        self._equations: List[Tuple[List[Tuple[Matrix, int, Matrix]], Matrix]] = []

    def add_unknown(self, rows: int, cols: int) -> int:
        self.shapes.append((rows, cols))
        self.offsets.append(self.size)
        self.size += rows * cols
        return len(self.shapes) - 1

    def add_equation(self, terms: Sequence[Tuple[Matrix, int, Matrix]], rhs: Matrix) -> None:
        f = self.field
        rhs = np.asarray(rhs, dtype=np.int64) % f.p
        pending = []
        for a, idx, b in terms:
            if idx >= len(self.shapes):
                raise DimensionMismatchError(f"unknown #{idx} was never declared")
            hr, hc = self.shapes[idx]
            if a.shape[1] != hr or b.shape[0] != hc:
                raise DimensionMismatchError(
                    f"term {a.shape} * H#{idx}{(hr, hc)} * {b.shape} does not fit")
            if a.shape[0] != rhs.shape[0] or b.shape[1] != rhs.shape[1]:
                raise DimensionMismatchError(
                    f"term output {(a.shape[0], b.shape[1])} against right-hand side {rhs.shape}")
            pending.append((a, idx, b))
        if rhs.size == 0:
            return
        row = f.zeros(rhs.size, self.size)
        for a, idx, b in pending:
            hr, hc = self.shapes[idx]
            off = self.offsets[idx]
            row[:, off:off + hr * hc] = (row[:, off:off + hr * hc] + f.kron(b.T, a)) % f.p
        self._rows.append(row)
        self._rhs.append(rhs.flatten(order="F"))
        self._equations.append((pending, rhs))

    def fix(self, idx: int, value: Matrix) -> None:
        """Constrains H_idx to equal ``value``."""
        rows, cols = self.shapes[idx]
        self.add_equation([(self.field.eye(rows), idx, self.field.eye(cols))], value)

    def tie(self, i: int, j: int) -> None:
        """Constrains H_i = H_j."""
        if self.shapes[i] != self.shapes[j]:
            raise DimensionMismatchError(f"cannot identify unknowns of shapes {self.shapes[i]} and {self.shapes[j]}")
        rows, cols = self.shapes[i]
        f = self.field
        self.add_equation([(f.eye(rows), i, f.eye(cols)), (f.neg(f.eye(rows)), j, f.eye(cols))], f.zeros(rows, cols))

    def _stacked(self) -> Tuple[Matrix, np.ndarray]:
        f = self.field
        if not self._rows:
            return f.zeros(0, self.size), np.zeros(0, dtype=np.int64)
        # rows added before later unknowns were declared are padded on the right
        padded = [np.hstack([r, f.zeros(r.shape[0], self.size - r.shape[1])]) for r in self._rows]
        return np.vstack(padded), np.concatenate(self._rhs)

    def unpack(self, vec: np.ndarray) -> List[Matrix]:
        out = []
        for (rows, cols), off in zip(self.shapes, self.offsets):
            out.append(np.asarray(vec[off:off + rows * cols]).reshape((rows, cols), order="F") % self.field.p)
        return out

    def evaluate(self, values: Sequence[Matrix]) -> bool:
        f = self.field
        for terms, rhs in self._equations:
            total = f.zeros(*rhs.shape)
            for a, idx, b in terms:
                total = f.add(total, f.mul(a, values[idx], b))
            if not f.equal(total, rhs):
                return False
        return True

    def solution_space(self) -> Optional[Tuple[np.ndarray, Matrix]]:
        """A particular solution vector and a kernel basis, or None."""
        f = self.field
        m, c = self._stacked()
        x = f.solve(m, c.reshape(-1, 1))
        if x is None:
            return None
        basis, _ = f.kernel(m)
        return x[:, 0], basis

    def solve(self) -> Optional[List[Matrix]]:
        space = self.solution_space()
        if space is None:
            logger.debug("affine system with %d unknowns has no solution", self.size)
            return None
        values = self.unpack(space[0])
        if not self.evaluate(values):
            raise StabilizerError("affine solver produced an assignment that fails re-evaluation")
        return values

    def enumerate_solutions(self, limit: Optional[int] = None) -> Iterator[List[Matrix]]:
        """Every solution, in a fixed order; ``limit`` caps the count."""
        space = self.solution_space()
        if space is None:
            return
        x0, basis = space
        f = self.field
        count = 0
        for coeffs in product(range(f.p), repeat=basis.shape[1]):
            vec = (x0 + basis @ np.array(coeffs, dtype=np.int64)) % f.p if coeffs else x0
            yield self.unpack(vec)
            count += 1
            if limit is not None and count >= limit:
                return

    def random_solution(self, rng: np.random.Generator) -> Optional[List[Matrix]]:
        space = self.solution_space()
        if space is None:
            return None
        x0, basis = space
        coeffs = rng.integers(0, self.field.p, size=basis.shape[1], dtype=np.int64)
        return self.unpack((x0 + basis @ coeffs) % self.field.p)


def solve_affine(field: PrimeField, unknown_shapes: Sequence[Tuple[int, int]],
                 equations: Sequence[Tuple[Sequence[Tuple[Matrix, int, Matrix]], Matrix]]) -> Optional[List[Matrix]]:
    """One-shot wrapper: declare unknowns, add equations, solve."""
    system = AffineSystem(field)
    for rows, cols in unknown_shapes:
        system.add_unknown(rows, cols)
    for terms, rhs in equations:
        system.add_equation(terms, rhs)
    return system.solve()
