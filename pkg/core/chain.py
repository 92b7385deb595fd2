# core/chain.py

"""
Bounded, finite-type, non-negatively graded chain complexes over F_p.

Basis conventions:
  - ``d(n)`` is the matrix of d_n: X_n -> X_{n-1}, shape (dim n-1, dim n).
  - (A tensor B)_n is ordered by the degree p of the A-factor, then the A
    index, then the B index. d(x tensor y) = dx tensor y + (-1)^|x| x tensor dy.
  - Hom(K, X)_n is ordered by the K-degree m, each block a (X_{m+n} x K_m)
    matrix flattened row-major. D(phi) = d phi - (-1)^n phi d, and degree 0 is
    truncated to the cycles (coordinates = entries at the free columns).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import DimensionMismatchError, PrimeMismatchError, ValidationError
from core.linalg import AffineSystem, Matrix, PrimeField, direct_sum_matrix

logger = logging.getLogger(__name__)

Tree = Union[int, tuple]


def as_field(field: Union[PrimeField, int]) -> PrimeField:
    return field if isinstance(field, PrimeField) else PrimeField(field)


def _frozen(m: Matrix) -> Matrix:
    m = np.array(m, dtype=np.int64)
    m.setflags(write=False)
    return m


class ChainComplex:
    """A chain complex with differential matrices d_1..d_top."""

    def __init__(self, field: Union[PrimeField, int], dims: Sequence[int],
                 diffs: Optional[Sequence[Matrix]] = None, validate: bool = True):
        self.field = as_field(field)
        dims = [int(n) for n in dims]
        if any(n < 0 for n in dims):
            raise ValidationError(f"negative dimension in {dims}")
        diffs = list(diffs) if diffs is not None else [
            np.zeros((dims[n - 1], dims[n]), dtype=np.int64) for n in range(1, len(dims))]
        if len(diffs) < len(dims) - 1:
            raise DimensionMismatchError(f"{len(dims)} degrees need {len(dims) - 1} differentials, got {len(diffs)}")
        while dims and dims[-1] == 0:
            dims.pop()
        self.dims: Tuple[int, ...] = tuple(dims)
        self.top = len(dims) - 1
        self._diffs: List[Matrix] = []
        for n in range(1, len(dims)):
            m = np.asarray(diffs[n - 1], dtype=np.int64)
            if m.size == 0:
                m = m.reshape(dims[n - 1], dims[n])
            if m.shape != (dims[n - 1], dims[n]):
                raise DimensionMismatchError(
                    f"d_{n} should have shape {(dims[n - 1], dims[n])}, got {m.shape} (at degree {n})")
            self._diffs.append(_frozen(m % self.field.p))
        if validate:
            f = self.field
            for n in range(2, len(dims)):
                if not f.is_zero(f.mul(self._diffs[n - 2], self._diffs[n - 1])):
                    raise ValidationError("d o d is not zero", degree=n)
        self._key = (self.field.p, self.dims, tuple(d.tobytes() for d in self._diffs))

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.top else 0

    def d(self, n: int) -> Matrix:
        if 1 <= n <= self.top:
            return self._diffs[n - 1]
        return np.zeros((self.dim(n - 1), self.dim(n)), dtype=np.int64)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.top < 0

    def degrees(self) -> range:
        return range(0, self.top + 1)

    def homology(self, n: int) -> int:
        if n < 0 or n > self.top:
            return 0
        f = self.field
        return self.dim(n) - f.rank(self.d(n)) - f.rank(self.d(n + 1))

    def homology_dims(self) -> List[int]:
        return [self.homology(n) for n in self.degrees()]

    def is_acyclic(self) -> bool:
        return all(h == 0 for h in self.homology_dims())

    def cycles(self, n: int) -> Matrix:
        return self.field.kernel(self.d(n))[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainComplex) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"ChainComplex(p={self.field.p}, dims={list(self.dims)})"


def _check_same_field(*objs) -> PrimeField:
    field = objs[0].field
    for o in objs[1:]:
        if o.field != field:
            raise PrimeMismatchError(f"cannot combine objects over F_{field.p} and F_{o.field.p}")
    return field


class GradedMap:
    """Degreewise linear maps between two complexes, no chain condition."""

    def __init__(self, source: ChainComplex, target: ChainComplex, mats: Sequence[Matrix]):
        self.field = _check_same_field(source, target)
        self.source = source
        self.target = target
        self._mats: List[Matrix] = []
        for n in range(source.top + 1):
            shape = (target.dim(n), source.dim(n))
            m = np.asarray(mats[n], dtype=np.int64) if n < len(mats) else np.zeros(shape, dtype=np.int64)
            if m.size == 0:
                m = m.reshape(shape)
            if m.shape != shape:
                raise DimensionMismatchError(f"map component should have shape {shape}, got {m.shape} (at degree {n})")
            self._mats.append(_frozen(m % self.field.p))
        for n in range(source.top + 1, len(mats)):
            if np.asarray(mats[n]).size and np.any(np.asarray(mats[n]) % self.field.p):
                raise DimensionMismatchError(f"nonzero map component beyond the source (at degree {n})")

    def mat(self, n: int) -> Matrix:
        if 0 <= n <= self.source.top:
            return self._mats[n]
        return np.zeros((self.target.dim(n), self.source.dim(n)), dtype=np.int64)

    @property
    def mats(self) -> List[Matrix]:
        return list(self._mats)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other."""
        if other.target != self.source:
            raise DimensionMismatchError(f"cannot compose {self!r} after {other!r}")
        f = self.field
        mats = [f.mul(self.mat(n), other.mat(n)) for n in other.source.degrees()]
        if isinstance(self, ChainMap) and isinstance(other, ChainMap):
            return ChainMap(other.source, self.target, mats, validate=False)
        return GradedMap(other.source, self.target, mats)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        return self.compose(other)

    def _combine(self, other: "GradedMap", sign: int) -> "GradedMap":
        if other.source != self.source or other.target != self.target:
            raise DimensionMismatchError("maps must share source and target")
        f = self.field
        mats = [(self.mat(n) + sign * other.mat(n)) % f.p for n in self.source.degrees()]
        if isinstance(self, ChainMap) and isinstance(other, ChainMap):
            return ChainMap(self.source, self.target, mats, validate=False)
        return GradedMap(self.source, self.target, mats)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c: int) -> "GradedMap":
        mats = [(c * m) % self.field.p for m in self._mats]
        if isinstance(self, ChainMap):
            return ChainMap(self.source, self.target, mats, validate=False)
        return GradedMap(self.source, self.target, mats)

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(not np.any(m) for m in self._mats)

    def is_injective(self) -> bool:
        f = self.field
        return all(f.rank(self.mat(n)) == self.source.dim(n) for n in self.source.degrees())

    def is_surjective(self, min_degree: int = 0) -> bool:
        f = self.field
        return all(f.rank(self.mat(n)) == self.target.dim(n)
                   for n in range(min_degree, self.target.top + 1))

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedMap) and self.source == other.source
                and self.target == other.target
                and all(np.array_equal(a, b) for a, b in zip(self._mats, other._mats)))

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(m.tobytes() for m in self._mats)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.source.dims)} -> {list(self.target.dims)})"


class ChainMap(GradedMap):
    """A degree-zero map commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex, mats: Sequence[Matrix], validate: bool = True):
        super().__init__(source, target, mats)
        if validate:
            f = self.field
            for n in range(1, source.top + 1):
                lhs = f.mul(self.mat(n - 1), source.d(n))
                rhs = f.mul(target.d(n), self.mat(n))
                if not f.equal(lhs, rhs):
                    raise ValidationError("map does not commute with the differential", degree=n)

    @classmethod
    def identity(cls, x: ChainComplex) -> "ChainMap":
        return cls(x, x, [x.field.eye(x.dim(n)) for n in x.degrees()], validate=False)

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, [], validate=False)

    def inverse(self) -> "ChainMap":
        if not self.is_iso():
            raise ValidationError("map is not an isomorphism")
        f = self.field
        return ChainMap(self.target, self.source, [f.inverse(self.mat(n)) for n in self.target.degrees()],
                        validate=False)

    def is_quasi_iso(self) -> bool:
        return is_quasi_iso(self)


class ChainHomotopy:
    """h_n: A_n -> X_{n+1} with d h + h d = to_map - from_map."""

    def __init__(self, from_map: ChainMap, to_map: ChainMap, comps: Sequence[Matrix], validate: bool = True):
        if from_map.source != to_map.source or from_map.target != to_map.target:
            raise DimensionMismatchError("homotopy endpoints must share source and target")
        self.from_map = from_map
        self.to_map = to_map
        self.field = from_map.field
        a, x = from_map.source, from_map.target
        self._comps: List[Matrix] = []
        for n in a.degrees():
            shape = (x.dim(n + 1), a.dim(n))
            m = np.asarray(comps[n], dtype=np.int64) if n < len(comps) else np.zeros(shape, dtype=np.int64)
            if m.size == 0:
                m = m.reshape(shape)
            if m.shape != shape:
                raise DimensionMismatchError(f"homotopy component should have shape {shape}, got {m.shape} (at degree {n})")
            self._comps.append(_frozen(m % self.field.p))
        if validate:
            f = self.field
            for n in a.degrees():
                lhs = f.add(f.mul(x.d(n + 1), self.comp(n)), f.mul(self.comp(n - 1), a.d(n)))
                rhs = f.sub(to_map.mat(n), from_map.mat(n))
                if not f.equal(lhs, rhs):
                    raise ValidationError("homotopy identity fails", degree=n)

    @property
    def source(self) -> ChainComplex:
        return self.from_map.source

    @property
    def target(self) -> ChainComplex:
        return self.from_map.target

    def comp(self, n: int) -> Matrix:
        if 0 <= n <= self.source.top:
            return self._comps[n]
        return np.zeros((self.target.dim(n + 1), self.source.dim(n)), dtype=np.int64)

    @property
    def comps(self) -> List[Matrix]:
        return list(self._comps)


# --- Standard complexes ---

def unit(field: Union[PrimeField, int]) -> ChainComplex:
    """S: one generator in degree 0."""
    return ChainComplex(field, [1])


def line(field: Union[PrimeField, int], degree: int = 1) -> ChainComplex:
    """F_p concentrated in one degree; the default K."""
    return ChainComplex(field, [0] * degree + [1])


def zero_complex(field: Union[PrimeField, int]) -> ChainComplex:
    return ChainComplex(field, [])


def sphere(field: Union[PrimeField, int], m: int) -> ChainComplex:
    return line(field, m)


def disk(field: Union[PrimeField, int], m: int) -> ChainComplex:
    """D^m: F_p in degrees m and m-1 joined by the identity."""
    if m < 1:
        raise ValidationError("disks start at D^1")
    dims = [0] * (m - 1) + [1, 1]
    diffs = [np.zeros((dims[n - 1], dims[n]), dtype=np.int64) for n in range(1, m)] + [np.ones((1, 1), dtype=np.int64)]
    return ChainComplex(field, dims, diffs)


def line_degree(k: ChainComplex) -> Optional[int]:
    """Degree of K if K is one-dimensional, else None."""
    if k.total_dim != 1:
        return None
    return k.top


def direct_sum(*cs: ChainComplex) -> ChainComplex:
    field = _check_same_field(*cs)
    top = max((c.top for c in cs), default=-1)
    dims = [sum(c.dim(n) for c in cs) for n in range(top + 1)]
    diffs = [direct_sum_matrix(field, [c.d(n) for c in cs]) for n in range(1, top + 1)]
    return ChainComplex(field, dims, diffs, validate=False)


def direct_sum_inclusions(*cs: ChainComplex) -> List[ChainMap]:
    total = direct_sum(*cs)
    out = []
    for idx, c in enumerate(cs):
        mats = []
        for n in c.degrees():
            m = np.zeros((total.dim(n), c.dim(n)), dtype=np.int64)
            off = sum(cs[j].dim(n) for j in range(idx))
            m[off:off + c.dim(n)] = np.eye(c.dim(n), dtype=np.int64)
            mats.append(m)
        out.append(ChainMap(c, total, mats, validate=False))
    return out


def direct_sum_maps(*maps: GradedMap) -> ChainMap:
    field = _check_same_field(*[m.source for m in maps])
    src = direct_sum(*[m.source for m in maps])
    tgt = direct_sum(*[m.target for m in maps])
    mats = [direct_sum_matrix(field, [m.mat(n) for m in maps]) for n in src.degrees()]
    return ChainMap(src, tgt, mats, validate=False)


# --- Tensor products ---

class TensorLayout:
    """Block offsets of (A tensor B)_n indexed by the A-degree p."""

    def __init__(self, a: ChainComplex, b: ChainComplex):
        self.a, self.b = a, b
        self.top = a.top + b.top if a.top >= 0 and b.top >= 0 else -1
        self._offsets: Dict[int, Dict[int, int]] = {}
        self.dims: List[int] = []
        for n in range(self.top + 1):
            offs, total = {}, 0
            for p in range(0, n + 1):
                offs[p] = total
                total += a.dim(p) * b.dim(n - p)
            self._offsets[n] = offs
            self.dims.append(total)

    def offset(self, n: int, p: int) -> int:
        return self._offsets[n][p]


@lru_cache(maxsize=4096)
def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    field = _check_same_field(a, b)
    lay = TensorLayout(a, b)
    diffs = []
    for n in range(1, lay.top + 1):
        m = np.zeros((lay.dims[n - 1], lay.dims[n]), dtype=np.int64)
        for p in range(0, n + 1):
            q = n - p
            if a.dim(p) == 0 or b.dim(q) == 0:
                continue
            col = lay.offset(n, p)
            width = a.dim(p) * b.dim(q)
            if p >= 1 and a.dim(p - 1):
                row = lay.offset(n - 1, p - 1)
                m[row:row + a.dim(p - 1) * b.dim(q), col:col + width] += np.kron(a.d(p), np.eye(b.dim(q), dtype=np.int64))
            if q >= 1 and b.dim(q - 1):
                row = lay.offset(n - 1, p)
                sign = -1 if p % 2 else 1
                m[row:row + a.dim(p) * b.dim(q - 1), col:col + width] += sign * np.kron(np.eye(a.dim(p), dtype=np.int64), b.d(q))
        diffs.append(m % field.p)
    return ChainComplex(field, lay.dims, diffs, validate=False)


def tensor_power(x: ChainComplex, n: int) -> ChainComplex:
    """Left-nested x^(tensor n); n = 0 gives the unit."""
    out = unit(x.field)
    for _ in range(n):
        out = tensor(out, x)
    return out


def tensor_maps(f: GradedMap, g: GradedMap) -> ChainMap:
    """f tensor g, blockwise Kronecker products (degree-zero maps carry no sign)."""
    field = _check_same_field(f.source, g.source)
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    ls, lt = TensorLayout(f.source, g.source), TensorLayout(f.target, g.target)
    mats = []
    for n in src.degrees():
        m = np.zeros((tgt.dim(n), src.dim(n)), dtype=np.int64)
        for p in range(0, n + 1):
            q = n - p
            if f.source.dim(p) * g.source.dim(q) == 0 or f.target.dim(p) * g.target.dim(q) == 0:
                continue
            r, c = lt.offset(n, p), ls.offset(n, p)
            blk = np.kron(f.mat(p), g.mat(q))
            m[r:r + blk.shape[0], c:c + blk.shape[1]] = blk
        mats.append(m % field.p)
    return ChainMap(src, tgt, mats, validate=False)


def _leaves(tree: Tree) -> List[int]:
    if isinstance(tree, int):
        return [tree]
    out: List[int] = []
    for sub in tree:
        out.extend(_leaves(sub))
    return out


def _tree_basis(leaves: Sequence[ChainComplex], tree: Tree):
    """The tensor complex of a tree and its basis as tuples of (leaf, degree, index)."""
    if isinstance(tree, int):
        c = leaves[tree]
        return c, {n: [((tree, n, i),) for i in range(c.dim(n))] for n in c.degrees()}
    if len(tree) == 0:
        return unit(leaves[0].field if leaves else PrimeField(2)), {0: [()]}
    cplx, basis = _tree_basis(leaves, tree[0])
    for sub in tree[1:]:
        c2, b2 = _tree_basis(leaves, sub)
        combined = tensor(cplx, c2)
        new_basis = {}
        for n in combined.degrees():
            items = []
            for p in range(0, n + 1):
                for x in basis.get(p, []):
                    for y in b2.get(n - p, []):
                        items.append(x + y)
            new_basis[n] = items
        cplx, basis = combined, new_basis
    return cplx, basis


def tree_tensor(leaves: Sequence[ChainComplex], tree: Tree) -> ChainComplex:
    return _tree_basis(leaves, tree)[0]


def rearrange(leaves: Sequence[ChainComplex], src_tree: Tree, dst_tree: Tree) -> ChainMap:
    """
    The signed reindexing isomorphism between two bracketings and orderings of
    the same tensor factors. Trees are leaf indices or nested tuples; tuples
    with more than two entries bracket to the left.
    """
    order_src, order_dst = _leaves(src_tree), _leaves(dst_tree)
    if sorted(order_src) != sorted(order_dst):
        raise DimensionMismatchError(f"trees {src_tree} and {dst_tree} do not use the same leaves")
    field = leaves[0].field
    src, sb = _tree_basis(leaves, src_tree)
    dst, db = _tree_basis(leaves, dst_tree)
    pos = {leaf: i for i, leaf in enumerate(order_dst)}
    mats = []
    for n in src.degrees():
        index = {elem: i for i, elem in enumerate(db.get(n, []))}
        m = np.zeros((dst.dim(n), src.dim(n)), dtype=np.int64)
        for j, elem in enumerate(sb.get(n, [])):
            sign = 1
            for u in range(len(elem)):
                for v in range(u + 1, len(elem)):
                    if pos[elem[u][0]] > pos[elem[v][0]] and (elem[u][1] * elem[v][1]) % 2:
                        sign = -sign
            target = tuple(sorted(elem, key=lambda t: pos[t[0]]))
            m[index[target], j] = sign % field.p
        mats.append(m)
    return ChainMap(src, dst, mats, validate=False)


def twist(a: ChainComplex, b: ChainComplex) -> ChainMap:
    """x tensor y -> (-1)^{|x||y|} y tensor x."""
    return rearrange([a, b], (0, 1), (1, 0))


def associator(a: ChainComplex, b: ChainComplex, c: ChainComplex) -> ChainMap:
    """(a tensor b) tensor c -> a tensor (b tensor c)."""
    return rearrange([a, b, c], ((0, 1), 2), (0, (1, 2)))


# --- Homology ---

def homology(x: ChainComplex, k: int) -> int:
    return x.homology(k)


def induced_rank(f: ChainMap, n: int) -> int:
    """Rank of H_n(f)."""
    field = f.field
    z = f.source.cycles(n)
    bt = f.target.d(n + 1)
    if z.shape[1] == 0:
        return 0
    fz = field.mul(f.mat(n), z)
    return field.rank(np.hstack([fz, bt])) - field.rank(bt)


def induces_iso_in_degree(f: ChainMap, n: int) -> bool:
    hs, ht = f.source.homology(n), f.target.homology(n)
    return hs == ht and induced_rank(f, n) == hs


def is_quasi_iso(f: ChainMap) -> bool:
    top = max(f.source.top, f.target.top)
    return all(induces_iso_in_degree(f, n) for n in range(0, top + 1))


@dataclass(frozen=True)
class MapClass:
    cofibration: bool
    fibration: bool
    weak_equivalence: bool


def classify_map(f: ChainMap) -> MapClass:
    """Projective model structure over a field."""
    return MapClass(
        cofibration=f.is_injective(),
        fibration=f.is_surjective(min_degree=1),
        weak_equivalence=is_quasi_iso(f),
    )


# --- Internal hom and the loop functor U ---

class HomComplex:
    """The good truncation of Hom(k, x) with its block layout."""

    def __init__(self, k: ChainComplex, x: ChainComplex):
        field = _check_same_field(k, x)
        self.k, self.x, self.field = k, x, field
        low = -k.top if k.top >= 0 else 0
        self.high = x.top
        self._offsets: Dict[int, Dict[int, int]] = {}
        self._full_dims: Dict[int, int] = {}
        for n in range(low - 1, max(self.high, 0) + 2):
            offs, total = {}, 0
            for m in k.degrees():
                offs[m] = total
                total += x.dim(m + n) * k.dim(m)
            self._offsets[n] = offs
            self._full_dims[n] = total
        self.zero_basis, self.zero_free = field.kernel(self.full_d(0))
        dims = [len(self.zero_free)] + [self.full_dim(n) for n in range(1, self.high + 1)]
        diffs = []
        for n in range(1, self.high + 1):
            m = self.full_d(n)
            diffs.append(m[self.zero_free, :] if n == 1 else m)
        self.complex = ChainComplex(field, dims, diffs, validate=False)

    def full_dim(self, n: int) -> int:
        return self._full_dims.get(n, 0)

    def offset(self, n: int, m: int) -> int:
        return self._offsets[n][m]

    def full_d(self, n: int) -> Matrix:
        """D_n: Hom_n -> Hom_{n-1} before truncation."""
        k, x = self.k, self.x
        out = np.zeros((self.full_dim(n - 1), self.full_dim(n)), dtype=np.int64)
        sign = -1 if n % 2 else 1
        for m in k.degrees():
            km, xm = k.dim(m), x.dim(m + n)
            if km * xm == 0:
                continue
            col = self.offset(n, m)
            width = xm * km
            if x.dim(m + n - 1):
                row = self.offset(n - 1, m)
                out[row:row + x.dim(m + n - 1) * km, col:col + width] += np.kron(
                    x.d(m + n), np.eye(km, dtype=np.int64))
            if k.dim(m + 1):
                # phi o d_k lives in the block of K-degree m + 1
                row = self.offset(n - 1, m + 1)
                out[row:row + xm * k.dim(m + 1), col:col + width] += -sign * np.kron(
                    np.eye(xm, dtype=np.int64), k.d(m + 1).T)
        return out % self.field.p


@lru_cache(maxsize=4096)
def hom_complex(k: ChainComplex, x: ChainComplex) -> HomComplex:
    return HomComplex(k, x)


def loops_U(x: ChainComplex, k: ChainComplex) -> ChainComplex:
    """U(x): the truncated Hom(k, x), right adjoint of (- tensor k)."""
    return hom_complex(k, x).complex


def hom_map(k_map: GradedMap, x_map: GradedMap) -> ChainMap:
    """Hom(k, x) -> Hom(k', x'), phi -> x_map o phi o k_map, for k_map: k' -> k."""
    field = x_map.field
    hs = hom_complex(k_map.target, x_map.source)
    ht = hom_complex(k_map.source, x_map.target)
    mats = []
    for n in hs.complex.degrees():
        m = np.zeros((ht.full_dim(n), hs.full_dim(n)), dtype=np.int64)
        for q in k_map.source.degrees():
            if k_map.target.dim(q) == 0:
                continue
            if x_map.source.dim(q + n) == 0 or x_map.target.dim(q + n) == 0:
                continue
            blk = np.kron(x_map.mat(q + n), k_map.mat(q).T)
            r, c = ht.offset(n, q), hs.offset(n, q)
            m[r:r + blk.shape[0], c:c + blk.shape[1]] = blk
        m %= field.p
        if n == 0:
            m = field.mul(m, hs.zero_basis)[ht.zero_free, :]
        mats.append(m)
    return ChainMap(hs.complex, ht.complex, mats, validate=False)


def loops_U_map(f: GradedMap, k: ChainComplex) -> ChainMap:
    return hom_map(ChainMap.identity(k), f)


def adjoint_across_GU(f: GradedMap, a: ChainComplex, k: ChainComplex) -> ChainMap:
    """f: a tensor k -> x  becomes  a -> U(x), a -> (kappa -> f(a tensor kappa))."""
    if f.source != tensor(a, k):
        raise DimensionMismatchError(f"map source {list(f.source.dims)} is not a tensor k")
    field = f.field
    x = f.target
    hc = hom_complex(k, x)
    lay = TensorLayout(a, k)
    mats = []
    for p in a.degrees():
        m = np.zeros((hc.full_dim(p), a.dim(p)), dtype=np.int64)
        for q in k.degrees():
            n = p + q
            kq, xn, ap = k.dim(q), x.dim(n), a.dim(p)
            if kq * xn * ap == 0:
                continue
            off = lay.offset(n, p)
            sub = f.mat(n)[:, off:off + ap * kq].reshape(xn, ap, kq).transpose(1, 0, 2).reshape(ap, xn * kq)
            r = hc.offset(p, q)
            m[r:r + xn * kq, :] = sub.T
        if p == 0:
            m = m[hc.zero_free, :]
        mats.append(m % field.p)
    return ChainMap(a, hc.complex, mats)


def adjoint_inverse(g: GradedMap, x: ChainComplex, k: ChainComplex) -> ChainMap:
    """g: a -> U(x)  becomes  a tensor k -> x."""
    hc = hom_complex(k, x)
    if g.target != hc.complex:
        raise DimensionMismatchError(f"map target {list(g.target.dims)} is not U(x)")
    field = g.field
    a = g.source
    src = tensor(a, k)
    lay = TensorLayout(a, k)
    mats = [np.zeros((x.dim(n), src.dim(n)), dtype=np.int64) for n in src.degrees()]
    for p in a.degrees():
        full = g.mat(p) if p > 0 else field.mul(hc.zero_basis, g.mat(0))
        for q in k.degrees():
            n = p + q
            kq, xn, ap = k.dim(q), x.dim(n), a.dim(p)
            if kq * xn * ap == 0:
                continue
            r = hc.offset(p, q)
            blk = full[r:r + xn * kq, :]
            off = lay.offset(n, p)
            mats[n][:, off:off + ap * kq] = blk.T.reshape(ap, xn, kq).transpose(1, 0, 2).reshape(xn, ap * kq)
    return ChainMap(src, x, [m % field.p for m in mats])


def unit_GU(a: ChainComplex, k: ChainComplex) -> ChainMap:
    """eta: a -> U(a tensor k)."""
    return adjoint_across_GU(ChainMap.identity(tensor(a, k)), a, k)


def counit_GU(x: ChainComplex, k: ChainComplex) -> ChainMap:
    """epsilon: U(x) tensor k -> x."""
    return adjoint_inverse(ChainMap.identity(loops_U(x, k)), x, k)


# --- Limits and colimits ---

def direct_sum_projections(*cs: ChainComplex) -> List[ChainMap]:
    return [ChainMap(inc.target, inc.source, [m.T for m in inc.mats] +
                     [np.zeros((0, inc.target.dim(n)), dtype=np.int64)
                      for n in range(inc.source.top + 1, inc.target.top + 1)], validate=False)
            for inc in direct_sum_inclusions(*cs)]


def _columns(maps: Sequence[GradedMap], n: int) -> Matrix:
    """[m_1 m_2 ...] in degree n, out of a direct sum of the sources."""
    return np.hstack([m.mat(n) for m in maps])


@dataclass(frozen=True)
class Pushout:
    complex: ChainComplex
    left: ChainMap
    right: ChainMap
    f: ChainMap
    g: ChainMap
    sections: Tuple[Matrix, ...]


def pushout(f: ChainMap, g: ChainMap) -> Pushout:
    """b <- a -> c glued along a; degreewise the cokernel of (f, -g)."""
    if f.source != g.source:
        raise DimensionMismatchError("pushout needs maps with a common source")
    field = f.field
    b, c = f.target, g.target
    top = max(b.top, c.top)
    projs, secs, dims = [], [], []
    for n in range(top + 1):
        rel = np.vstack([f.mat(n), field.neg(g.mat(n))])
        p_n, s_n = field.cokernel(rel)
        projs.append(p_n)
        secs.append(s_n)
        dims.append(p_n.shape[0])
    diffs = []
    for n in range(1, top + 1):
        big = direct_sum_matrix(field, [b.d(n), c.d(n)])
        diffs.append(field.mul(projs[n - 1], big, secs[n]))
    cplx = ChainComplex(field, dims, diffs, validate=False)
    left = ChainMap(b, cplx, [projs[n][:, :b.dim(n)] for n in b.degrees()], validate=False)
    right = ChainMap(c, cplx, [projs[n][:, b.dim(n):] for n in c.degrees()], validate=False)
    return Pushout(cplx, left, right, f, g, tuple(secs[:cplx.top + 1]))


def induced_from_pushout(po: Pushout, u: ChainMap, v: ChainMap) -> ChainMap:
    """The map out of a pushout determined by u on b and v on c."""
    if u.compose(po.f) != v.compose(po.g):
        raise ValidationError("maps do not agree on the common source")
    field = u.field
    mats = [field.mul(np.hstack([u.mat(n), v.mat(n)]), po.sections[n]) for n in po.complex.degrees()]
    return ChainMap(po.complex, u.target, mats)


@dataclass(frozen=True)
class Subcomplex:
    """A kernel subcomplex; coordinates of a vector are its entries at ``free``."""
    complex: ChainComplex
    inclusion: ChainMap
    free: Tuple[Tuple[int, ...], ...]

    def restrict(self, u: GradedMap) -> ChainMap:
        """Corestricts u: w -> ambient to the subcomplex."""
        mats = [u.mat(n)[list(self.free[n]), :] if n < len(self.free) else
                np.zeros((0, u.source.dim(n)), dtype=np.int64) for n in u.source.degrees()]
        out = ChainMap(u.source, self.complex, mats, validate=False)
        if self.inclusion.compose(out) != u:
            raise ValidationError("map does not land in the subcomplex")
        return out


def kernel_subcomplex(x: ChainComplex, maps: Sequence[GradedMap]) -> Subcomplex:
    """The common kernel of chain maps out of x."""
    field = x.field
    bases, frees = [], []
    for n in x.degrees():
        rows = [m.mat(n) for m in maps if m.target.dim(n)]
        stacked = np.vstack(rows) if rows else np.zeros((0, x.dim(n)), dtype=np.int64)
        z, free = field.kernel(stacked)
        bases.append(z)
        frees.append(tuple(free))
    dims = [len(fr) for fr in frees]
    diffs = [field.mul(x.d(n), bases[n])[list(frees[n - 1]), :] for n in range(1, len(dims))]
    cplx = ChainComplex(field, dims, diffs, validate=False)
    incl = ChainMap(cplx, x, bases[:cplx.top + 1], validate=False)
    return Subcomplex(cplx, incl, tuple(frees))


@dataclass(frozen=True)
class Pullback:
    complex: ChainComplex
    left: ChainMap
    right: ChainMap
    sub: Subcomplex


def pullback(f: ChainMap, g: ChainMap) -> Pullback:
    """b -> y <- c; degreewise the kernel of (f, -g)."""
    if f.target != g.target:
        raise DimensionMismatchError("pullback needs maps with a common target")
    field = f.field
    b, c = f.source, g.source
    s = direct_sum(b, c)
    diff = GradedMap(s, f.target, [np.hstack([f.mat(n), field.neg(g.mat(n))]) for n in s.degrees()])
    sub = kernel_subcomplex(s, [diff])
    pb, pc = direct_sum_projections(b, c)
    return Pullback(sub.complex, pb.compose(sub.inclusion), pc.compose(sub.inclusion), sub)


def induced_to_pullback(pb: Pullback, u: ChainMap, v: ChainMap) -> ChainMap:
    s = pb.sub.inclusion.target
    mats = [np.vstack([u.mat(n), v.mat(n)]) for n in u.source.degrees()]
    return pb.sub.restrict(ChainMap(u.source, s, mats, validate=False))


def coequalizer(f: ChainMap, g: ChainMap) -> Tuple[ChainComplex, ChainMap]:
    """Degreewise cokernel of f - g, with the projection."""
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatchError("coequalizer needs parallel maps")
    field = f.field
    b = f.target
    projs, secs = [], []
    for n in b.degrees():
        p_n, s_n = field.cokernel(field.sub(f.mat(n), g.mat(n)))
        projs.append(p_n)
        secs.append(s_n)
    diffs = [field.mul(projs[n - 1], b.d(n), secs[n]) for n in range(1, b.top + 1)]
    cplx = ChainComplex(field, [p.shape[0] for p in projs], diffs, validate=False)
    return cplx, ChainMap(b, cplx, projs, validate=False)


def factor_through_surjection(phis: Sequence[GradedMap], psis: Sequence[GradedMap]) -> ChainMap:
    """
    The map h: Q -> Y with h o phi_i = psi_i, where the phi_i: A_i -> Q are
    jointly surjective. Raises if the psi_i do not descend.
    """
    q = phis[0].target
    y = psis[0].target
    field = q.field
    mats = []
    for n in q.degrees():
        big_phi = _columns(phis, n)
        big_psi = _columns(psis, n)
        right_inv = field.solve(big_phi, field.eye(q.dim(n)))
        if right_inv is None:
            raise ValidationError("maps are not jointly surjective", degree=n)
        h = field.mul(big_psi, right_inv)
        if not field.equal(field.mul(h, big_phi), big_psi):
            raise ValidationError("maps do not descend to the quotient", degree=n)
        mats.append(h)
    return ChainMap(q, y, mats)


# --- Lifting, homotopies and spaces of maps ---

def has_lift(i: ChainMap, p: ChainMap, f: ChainMap, g: ChainMap) -> Optional[ChainMap]:
    """A diagonal h: b -> x with h i = f and p h = g, or None."""
    if p.compose(f) != g.compose(i):
        raise ValidationError("lifting square does not commute")
    field = i.field
    a, b, x = i.source, i.target, p.source
    system = AffineSystem(field)
    # degrees of a above b still constrain h i = f
    top = max(a.top, b.top)
    idx = [system.add_unknown(x.dim(n), b.dim(n)) for n in range(top + 1)]
    for n in range(top + 1):
        system.add_equation([(field.eye(x.dim(n)), idx[n], i.mat(n))], f.mat(n))
        system.add_equation([(p.mat(n), idx[n], field.eye(b.dim(n)))], g.mat(n))
        if 1 <= n <= b.top:
            system.add_equation([(field.eye(x.dim(n - 1)), idx[n - 1], b.d(n)),
                                 (field.neg(x.d(n)), idx[n], field.eye(b.dim(n)))],
                                field.zeros(x.dim(n - 1), b.dim(n)))
    values = system.solve()
    if values is None:
        return None
    return ChainMap(b, x, values[:b.top + 1])


def find_homotopy(f: ChainMap, g: ChainMap) -> Optional[ChainHomotopy]:
    """A chain homotopy from f to g, or None."""
    if f.source != g.source or f.target != g.target:
        raise DimensionMismatchError("homotopy endpoints must be parallel")
    field = f.field
    a, x = f.source, f.target
    system = AffineSystem(field)
    idx = [system.add_unknown(x.dim(n + 1), a.dim(n)) for n in a.degrees()]
    for n in a.degrees():
        terms = [(x.d(n + 1), idx[n], field.eye(a.dim(n)))]
        if n >= 1:
            terms.append((field.eye(x.dim(n)), idx[n - 1], a.d(n)))
        system.add_equation(terms, field.sub(g.mat(n), f.mat(n)))
    values = system.solve()
    if values is None:
        return None
    return ChainHomotopy(f, g, values)


def are_homotopic(f: ChainMap, g: ChainMap) -> bool:
    return find_homotopy(f, g) is not None


def _map_system(a: ChainComplex, b: ChainComplex) -> AffineSystem:
    field = a.field
    system = AffineSystem(field)
    idx = [system.add_unknown(b.dim(n), a.dim(n)) for n in a.degrees()]
    for n in range(1, a.top + 1):
        system.add_equation([(field.eye(b.dim(n - 1)), idx[n - 1], a.d(n)),
                             (field.neg(b.d(n)), idx[n], field.eye(a.dim(n)))],
                            field.zeros(b.dim(n - 1), a.dim(n)))
    return system


def chain_map_space(a: ChainComplex, b: ChainComplex) -> List[ChainMap]:
    """A basis of the space of chain maps a -> b."""
    _check_same_field(a, b)
    system = _map_system(a, b)
    _, basis = system.solution_space()
    return [ChainMap(a, b, system.unpack(basis[:, j]), validate=False) for j in range(basis.shape[1])]


def enumerate_chain_maps(a: ChainComplex, b: ChainComplex, limit: Optional[int] = None) -> List[ChainMap]:
    system = _map_system(a, b)
    return [ChainMap(a, b, vals, validate=False) for vals in system.enumerate_solutions(limit)]


def random_chain_map(a: ChainComplex, b: ChainComplex, rng: np.random.Generator) -> ChainMap:
    system = _map_system(a, b)
    return ChainMap(a, b, system.random_solution(rng))


def homotopy_classes(a: ChainComplex, x: ChainComplex) -> int:
    """dim of chain maps a -> x modulo null-homotopic ones, i.e. H_0 Hom(a, x)."""
    return hom_complex(a, x).complex.homology(0)
