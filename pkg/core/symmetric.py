# core/symmetric.py

"""
Symmetric spectra over a line K = F_p[d].

A symmetric spectrum stores Sigma_n-representations X_0..X_N and structure
maps X_n tensor K -> X_{n+1} for n < N. Past N it is the spectrum generated by
the stored levels: for L > N, X_L is the cokernel of alpha - beta on

    V_L = sum_{n <= N} Ind(X_n tensor K^(L-n))

with relations indexed by X_n tensor K tensor K^(L-n-1), n < N. alpha applies
sigma_n to the first K, beta merges it into K^(L-n). Because K is a line,
X tensor K^j is X shifted up by jd, and Sigma_j acts on K^j through the sign
character raised to the d-th power.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core import chain
from core import permutations as perms
from core.chain import ChainComplex, ChainMap, GradedMap, tensor, tensor_maps, tensor_power
from core.errors import DimensionMismatchError, NaturalityError, ValidationError
from core.linalg import AffineSystem
from core.permutations import Perm
from core.spectra import AdjunctionReport, LevelFunctor, require_line

logger = logging.getLogger(__name__)

YoungAction = Callable[[Tuple[Perm, ...]], ChainMap]


def k_sign(d: int, perm: Perm) -> int:
    """The scalar by which perm acts on K^(tensor j) for K = F_p[d]."""
    return perms.sign(perm) if d % 2 else 1


class SymRep:
    """A chain complex with a Sigma_n action, given on s_0..s_{n-2}."""

    def __init__(self, n: int, space: ChainComplex, gens: Optional[Sequence[ChainMap]] = None,
                 validate: bool = True):
        self.n = n
        self.space = space
        self.field = space.field
        if gens is None:
            gens = [ChainMap.identity(space)] * max(n - 1, 0)
        gens = list(gens)
        if len(gens) != max(n - 1, 0):
            raise DimensionMismatchError(f"Sigma_{n} needs {max(n - 1, 0)} generators, got {len(gens)}")
        for i, g in enumerate(gens):
            if g.source != space or g.target != space:
                raise DimensionMismatchError(f"generator s_{i} is not an endomorphism of the space")
        self.gens = gens
        self._acts: Dict[Perm, ChainMap] = {}
        if validate:
            self.check()

    def check(self) -> None:
        """Involutions, the braid relation and far commutation."""
        ident = ChainMap.identity(self.space)
        gens = self.gens
        for i, g in enumerate(gens):
            if g.compose(g) != ident:
                raise ValidationError(f"s_{i} is not an involution", level=self.n)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                a, b = gens[i], gens[j]
                if j == i + 1:
                    if a.compose(b).compose(a) != b.compose(a).compose(b):
                        raise ValidationError(f"braid relation fails for s_{i}, s_{j}", level=self.n)
                elif a.compose(b) != b.compose(a):
                    raise ValidationError(f"s_{i} and s_{j} do not commute", level=self.n)

    @classmethod
    def trivial(cls, n: int, space: ChainComplex) -> "SymRep":
        return cls(n, space, validate=False)

    @classmethod
    def zero(cls, n: int, field) -> "SymRep":
        return cls(n, chain.zero_complex(field), validate=False)

    def act(self, perm: Perm) -> ChainMap:
        if len(perm) != self.n:
            raise DimensionMismatchError(f"permutation of {len(perm)} letters acting on a Sigma_{self.n} rep")
        if perm not in self._acts:
            out = ChainMap.identity(self.space)
            for i in perms.reduced_word(perm):
                out = out.compose(self.gens[i])
            self._acts[perm] = out
        return self._acts[perm]

    def is_equivariant(self, f: GradedMap, other: "SymRep") -> bool:
        """f: self -> other commutes with every generator."""
        return all(f.compose(a) == b.compose(f) for a, b in zip(self.gens, other.gens))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymRep) and self.n == other.n and self.space == other.space
                and self.gens == other.gens)

    def __hash__(self) -> int:
        return hash((self.n, self.space))

    def __repr__(self) -> str:
        return f"SymRep(Sigma_{self.n}, dims={list(self.space.dims)})"


class Induced:
    """
    Ind from a Young subgroup to Sigma_n: one copy of ``base`` per
    multi-shuffle, with g.[gamma, v] = [gamma', h.v] where g gamma = gamma' h.
    """

    def __init__(self, sizes: Sequence[int], base: ChainComplex, act: Optional[YoungAction] = None):
        self.sizes = tuple(sizes)
        self.n = sum(self.sizes)
        self.base = base
        self._act = act
        self._act_cache: Dict[Tuple[Perm, ...], ChainMap] = {}
        self.cosets = perms.shuffles(self.sizes)
        self.index = {g: i for i, g in enumerate(self.cosets)}
        self.space = chain.direct_sum(*([base] * len(self.cosets)))
        self._actions: Dict[Perm, ChainMap] = {}
        self._rep: Optional[SymRep] = None

    def act(self, h: Tuple[Perm, ...]) -> ChainMap:
        if self._act is None:
            return ChainMap.identity(self.base)
        if h not in self._act_cache:
            self._act_cache[h] = self._act(h)
        return self._act_cache[h]

    def action(self, g: Perm) -> ChainMap:
        if g not in self._actions:
            field = self.base.field
            mats = []
            for m in self.space.degrees():
                b = self.base.dim(m)
                out = np.zeros((self.space.dim(m), self.space.dim(m)), dtype=np.int64)
                if b:
                    for j, gamma in enumerate(self.cosets):
                        new, h = perms.coset_decompose(g, gamma, self.sizes)
                        i = self.index[new]
                        out[i * b:(i + 1) * b, j * b:(j + 1) * b] = self.act(h).mat(m)
                mats.append(out % field.p)
            self._actions[g] = ChainMap(self.space, self.space, mats, validate=False)
        return self._actions[g]

    @property
    def rep(self) -> SymRep:
        if self._rep is None:
            gens = [self.action(perms.adjacent(i, self.n)) for i in range(self.n - 1)]
            self._rep = SymRep(self.n, self.space, gens, validate=False)
        return self._rep

    def embed(self, gamma: Perm) -> ChainMap:
        """v -> [gamma, v]."""
        j = self.index[gamma]
        mats = []
        for m in self.base.degrees():
            b = self.base.dim(m)
            out = np.zeros((self.space.dim(m), b), dtype=np.int64)
            out[j * b:(j + 1) * b, :] = np.eye(b, dtype=np.int64)
            mats.append(out)
        return ChainMap(self.base, self.space, mats, validate=False)

    def suspended(self, k: ChainComplex) -> "Induced":
        """The same induction with base tensor K; its space is space tensor K."""
        act = self._act
        ident_k = ChainMap.identity(k)
        return Induced(self.sizes, tensor(self.base, k),
                       None if act is None else (lambda h: tensor_maps(self.act(h), ident_k)))


class InducedSum:
    """A direct sum of induced representations, laid out part by part."""

    def __init__(self, field, parts: Sequence[Induced]):
        self.field = chain.as_field(field)
        self.parts = list(parts)
        if self.parts:
            self.space = chain.direct_sum(*[p.space for p in self.parts])
        else:
            self.space = chain.zero_complex(self.field)

    def offset(self, m: int, part: int, coset: int) -> int:
        return (sum(self.parts[i].space.dim(m) for i in range(part))
                + coset * self.parts[part].base.dim(m))

    def action(self, g: Perm) -> ChainMap:
        if not self.parts:
            return ChainMap.identity(self.space)
        return chain.direct_sum_maps(*[p.action(g) for p in self.parts])

    def embed(self, part: int, gamma: Perm) -> ChainMap:
        p = self.parts[part]
        mats = []
        for m in p.base.degrees():
            b = p.base.dim(m)
            out = np.zeros((self.space.dim(m), b), dtype=np.int64)
            r = self.offset(m, part, p.index[gamma])
            out[r:r + b, :] = np.eye(b, dtype=np.int64)
            mats.append(out)
        return ChainMap(p.base, self.space, mats, validate=False)

    def suspended(self, k: ChainComplex) -> "InducedSum":
        return InducedSum(self.field, [p.suspended(k) for p in self.parts])

    def _blocks(self):
        for i, part in enumerate(self.parts):
            for j, gamma in enumerate(part.cosets):
                yield i, j, gamma

    def map_to(self, target: "InducedSum",
               rule: Callable[[int, Perm], Sequence[Tuple[int, Perm, GradedMap]]]) -> GradedMap:
        """Assembles a map whose block at [gamma, -] of part i lands in the listed target blocks."""
        entries = {(i, j): rule(i, gamma) for i, j, gamma in self._blocks()}
        mats = []
        for m in self.space.degrees():
            out = np.zeros((target.space.dim(m), self.space.dim(m)), dtype=np.int64)
            for (i, j), items in entries.items():
                b = self.parts[i].base.dim(m)
                if b == 0:
                    continue
                c = self.offset(m, i, j)
                for ti, tgamma, blk in items:
                    mat = blk.mat(m)
                    if mat.shape[0] == 0:
                        continue
                    r = target.offset(m, ti, target.parts[ti].index[tgamma])
                    out[r:r + mat.shape[0], c:c + b] += mat
            mats.append(out % self.field.p)
        return GradedMap(self.space, target.space, mats)

    def map_out(self, target: ChainComplex, rule: Callable[[int, Perm], GradedMap]) -> GradedMap:
        """Assembles a map into a plain complex from one map per block."""
        entries = {(i, j): rule(i, gamma) for i, j, gamma in self._blocks()}
        mats = []
        for m in self.space.degrees():
            out = np.zeros((target.dim(m), self.space.dim(m)), dtype=np.int64)
            for (i, j), blk in entries.items():
                b = self.parts[i].base.dim(m)
                if b == 0 or target.dim(m) == 0:
                    continue
                c = self.offset(m, i, j)
                out[:, c:c + b] = blk.mat(m)
            mats.append(out % self.field.p)
        return GradedMap(self.space, target, mats)


@dataclass
class Quotient:
    """V / image(rel) with projection P and a section S (P S = 1)."""
    sum: InducedSum
    complex: ChainComplex
    proj: ChainMap
    section: GradedMap
    rep: SymRep


def quotient(v: InducedSum, rel: GradedMap, n: int) -> Quotient:
    """Cokernel of rel: R -> V, with the Sigma_n action descended from V."""
    field = v.field
    projs, secs = [], []
    for m in v.space.degrees():
        p_m, s_m = field.cokernel(rel.mat(m))
        projs.append(p_m)
        secs.append(s_m)
    diffs = [field.mul(projs[m - 1], v.space.d(m), secs[m]) for m in range(1, v.space.top + 1)]
    cplx = ChainComplex(field, [p.shape[0] for p in projs], diffs, validate=False)
    proj = ChainMap(v.space, cplx, projs, validate=False)
    section = GradedMap(cplx, v.space, secs[:cplx.top + 1])
    gens = []
    for i in range(n - 1):
        g = v.action(perms.adjacent(i, n))
        gens.append(ChainMap(cplx, cplx, [field.mul(proj.mat(m), g.mat(m), section.mat(m))
                                          for m in cplx.degrees()], validate=False))
    return Quotient(v, cplx, proj, section, SymRep(n, cplx, gens, validate=False))


def _power(k: ChainComplex, j: int) -> ChainComplex:
    return tensor_power(k, j)


class SymmetricSpectrum:
    """Stored Sigma_n-representations and structure maps, generated past the tail."""

    def __init__(self, levels: Sequence[SymRep], sigmas: Sequence[ChainMap],
                 k: Optional[ChainComplex] = None, validate: bool = True):
        if not levels:
            raise ValidationError("a symmetric spectrum needs at least level 0")
        self.field = levels[0].field
        self.k = k if k is not None else chain.line(self.field)
        self.d = require_line(self.k)
        self.tail_index = len(levels) - 1
        if len(sigmas) != self.tail_index:
            raise DimensionMismatchError(
                f"tail index {self.tail_index} needs {self.tail_index} structure maps, got {len(sigmas)}")
        for n, rep in enumerate(levels):
            if rep.n != n:
                raise DimensionMismatchError(f"level {n} carries a Sigma_{rep.n} action")
        self._levels: Dict[int, SymRep] = dict(enumerate(levels))
        self._sigmas: Dict[int, ChainMap] = {}
        for n, s in enumerate(sigmas):
            if s.source != tensor(levels[n].space, self.k) or s.target != levels[n + 1].space:
                raise DimensionMismatchError(f"structure map does not go X_{n} tensor K -> X_{n + 1} (at level {n})")
            self._sigmas[n] = s
        self._extensions: Dict[int, Quotient] = {}
        if validate:
            self.check()
        logger.debug("SymmetricSpectrum built: tail %d, dims %s",
                      self.tail_index, [list(r.space.dims) for r in levels])

    def check(self) -> None:
        """Equivariance of sigma_n and the swap condition on two structure maps."""
        ident_k = ChainMap.identity(self.k)
        eps = -1 if self.d % 2 else 1
        for n in range(self.tail_index):
            s = self._sigmas[n]
            lo, hi = self._levels[n], self._levels[n + 1]
            for i in range(n - 1):
                if s.compose(tensor_maps(lo.gens[i], ident_k)) != hi.gens[i].compose(s):
                    raise ValidationError(f"sigma is not Sigma_{n}-equivariant for s_{i}", level=n)
        for n in range(self.tail_index - 1):
            twice = self.iterated_sigma(n, 2)
            if self._levels[n + 2].gens[n].compose(twice) != twice.scale(eps):
                raise ValidationError("swapping the two suspension coordinates does not act by the twist", level=n)

    # --- levels ---

    def extension(self, L: int) -> Quotient:
        """The generated level L > N as a quotient of V_L."""
        if L <= self.tail_index:
            raise ValidationError(f"level {L} is stored, not generated")
        if L not in self._extensions:
            self._extensions[L] = self._build_extension(L)
        return self._extensions[L]

    def _v_part(self, n: int, L: int) -> Induced:
        rep = self._levels[n]
        j = L - n
        ident = ChainMap.identity(_power(self.k, j))
        d = self.d
        return Induced((n, j), tensor(rep.space, _power(self.k, j)),
                       lambda h: tensor_maps(rep.act(h[0]), ident).scale(k_sign(d, h[1])))

    def _r_part(self, n: int, L: int) -> Induced:
        rep = self._levels[n]
        m = L - n - 1
        ident_k, ident_m = ChainMap.identity(self.k), ChainMap.identity(_power(self.k, m))
        d = self.d
        return Induced((n, 1, m), tensor(tensor(rep.space, self.k), _power(self.k, m)),
                       lambda h: tensor_maps(tensor_maps(rep.act(h[0]), ident_k), ident_m).scale(k_sign(d, h[2])))

    def _build_extension(self, L: int) -> Quotient:
        N, k = self.tail_index, self.k
        v = InducedSum(self.field, [self._v_part(n, L) for n in range(N + 1)])
        r = InducedSum(self.field, [self._r_part(n, L) for n in range(N)])

        def relation(n: int, gamma: Perm):
            m = L - n - 1
            up, h_up = perms.coset_decompose(perms.identity(L), gamma, (n + 1, m))
            alpha = v.parts[n + 1].act(h_up).compose(
                tensor_maps(self._sigmas[n], ChainMap.identity(_power(k, m))))
            same, h_same = perms.coset_decompose(perms.identity(L), gamma, (n, m + 1))
            beta = v.parts[n].act(h_same).scale(-1)
            return [(n + 1, up, alpha), (n, same, beta)]

        rel = r.map_to(v, relation)
        q = quotient(v, rel, L)
        logger.debug("generated level %d: V dims %s, quotient dims %s", L, list(v.space.dims), list(q.complex.dims))
        return q

    def level(self, n: int) -> SymRep:
        if n < 0:
            return SymRep.zero(0, self.field)
        if n in self._levels:
            return self._levels[n]
        return self.extension(n).rep

    def sigma(self, n: int) -> ChainMap:
        if n not in self._sigmas:
            self._sigmas[n] = self._build_sigma(n)
        return self._sigmas[n]

    def _build_sigma(self, L: int) -> ChainMap:
        k = self.k
        nxt = self.extension(L + 1)
        src = tensor(self.level(L).space, k)
        if L == self.tail_index:
            emb = nxt.sum.embed(L, perms.identity(L + 1))
            mats = [nxt.proj.mat(m) @ emb.mat(m) for m in src.degrees()]
            return ChainMap(src, nxt.complex, [x % self.field.p for x in mats])
        cur = self.extension(L)
        shifted = cur.sum.suspended(k)
        append = shifted.map_to(nxt.sum, lambda n, gamma: [
            (n, perms.product(gamma, (0,)), ChainMap.identity(shifted.parts[n].base))])
        sec = tensor_maps(cur.section, ChainMap.identity(k))
        f = self.field
        mats = [f.mul(nxt.proj.mat(m), append.mat(m), sec.mat(m)) for m in src.degrees()]
        return ChainMap(src, nxt.complex, mats)

    def iterated_sigma(self, n: int, j: int) -> ChainMap:
        """X_n tensor K^j (left nested) -> X_{n+j}."""
        out = ChainMap.identity(self.level(n).space)
        ident_k = ChainMap.identity(self.k)
        for i in range(j):
            out = self.sigma(n + i).compose(tensor_maps(out, ident_k))
        return out

    @property
    def levels(self) -> List[SymRep]:
        return [self.level(n) for n in range(self.tail_index + 1)]

    def dims(self, upto: int) -> List[List[int]]:
        return [list(self.level(n).space.dims) for n in range(upto + 1)]

    def same_as(self, other: "SymmetricSpectrum", upto: Optional[int] = None) -> bool:
        if upto is None:
            upto = max(self.tail_index, other.tail_index)
        return (self.k == other.k and all(self.level(n) == other.level(n) for n in range(upto + 1))
                and all(self.sigma(n) == other.sigma(n) for n in range(upto)))

    def __repr__(self) -> str:
        return f"SymmetricSpectrum(p={self.field.p}, tail={self.tail_index}, dims={self.dims(self.tail_index)})"


class SymmetricSpectrumMap:
    """
    Equivariant levelwise chain maps commuting with the structure maps.

    Components are required through the source tail; later ones may be given
    up to the larger tail and are otherwise extended over the generated levels.
    """

    def __init__(self, source: SymmetricSpectrum, target: SymmetricSpectrum, comps: Sequence[ChainMap],
                 validate: bool = True):
        if source.k != target.k:
            raise DimensionMismatchError("spectra use different K")
        self.source, self.target = source, target
        self.field = source.field
        self.stored = max(source.tail_index, target.tail_index)
        if len(comps) < source.tail_index + 1:
            raise DimensionMismatchError(f"need components through level {source.tail_index}, got {len(comps)}")
        self._comps: Dict[int, ChainMap] = {}
        for n, c in enumerate(comps):
            if c.source != source.level(n).space or c.target != target.level(n).space:
                raise DimensionMismatchError(f"component does not go X_{n} -> Y_{n} (at level {n})")
            self._comps[n] = c
        if validate:
            self.check()

    def check(self, upto: Optional[int] = None) -> None:
        top = self.stored + 1 if upto is None else upto
        ident_k = ChainMap.identity(self.source.k)
        for n in range(top + 1):
            if not self.source.level(n).is_equivariant(self.comp(n), self.target.level(n)):
                raise ValidationError("component is not equivariant", level=n)
        for n in range(top):
            lhs = self.comp(n + 1).compose(self.source.sigma(n))
            rhs = self.target.sigma(n).compose(tensor_maps(self.comp(n), ident_k))
            if lhs != rhs:
                raise ValidationError("structure square does not commute", level=n)

    def comp(self, n: int) -> ChainMap:
        if n not in self._comps:
            self._comps[n] = self._extend(n)
        return self._comps[n]

    def _extend(self, L: int) -> ChainMap:
        """f_L on a generated level: [gamma, x tensor k] -> gamma.sigma^(L-n)(f_n x tensor k)."""
        src, tgt = self.source, self.target
        ext = src.extension(L)
        y_rep = tgt.level(L)

        def block(n: int, gamma: Perm) -> GradedMap:
            j = L - n
            moved = tensor_maps(self.comp(n), ChainMap.identity(_power(src.k, j)))
            # Y_n tensor K^j equals the left-nested Y_n tensor K tensor .. tensor K
            return y_rep.act(gamma).compose(tgt.iterated_sigma(n, j)).compose(moved)

        phi = ext.sum.map_out(y_rep.space, block)
        f = self.field
        return ChainMap(ext.complex, y_rep.space,
                        [f.mul(phi.mat(m), ext.section.mat(m)) for m in ext.complex.degrees()])

    @property
    def comps(self) -> List[ChainMap]:
        return [self.comp(n) for n in range(self.stored + 1)]

    @classmethod
    def identity(cls, x: SymmetricSpectrum) -> "SymmetricSpectrumMap":
        return cls(x, x, [ChainMap.identity(x.level(n).space) for n in range(x.tail_index + 1)], validate=False)

    @classmethod
    def zero(cls, x: SymmetricSpectrum, y: SymmetricSpectrum) -> "SymmetricSpectrumMap":
        return cls(x, y, [ChainMap.zero(x.level(n).space, y.level(n).space) for n in range(x.tail_index + 1)],
                   validate=False)

    def compose(self, other: "SymmetricSpectrumMap") -> "SymmetricSpectrumMap":
        """self o other."""
        top = max(other.stored, self.stored)
        return SymmetricSpectrumMap(other.source, self.target,
                                    [self.comp(n).compose(other.comp(n)) for n in range(top + 1)],
                                    validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricSpectrumMap):
            return False
        top = max(self.stored, other.stored) + 1
        return all(self.comp(n) == other.comp(n) for n in range(top + 1))

    def __hash__(self) -> int:
        return hash(tuple(self.comps))

    def is_level_iso(self, upto: Optional[int] = None) -> bool:
        top = self.stored + 1 if upto is None else upto
        return all(self.comp(n).is_iso() for n in range(top + 1))

    def is_level_equivalence(self, upto: Optional[int] = None) -> bool:
        top = self.stored + 1 if upto is None else upto
        return all(chain.is_quasi_iso(self.comp(n)) for n in range(top + 1))

    def is_level_injective(self, upto: Optional[int] = None) -> bool:
        top = self.stored + 1 if upto is None else upto
        return all(self.comp(n).is_injective() for n in range(top + 1))

    def __repr__(self) -> str:
        return f"SymmetricSpectrumMap(levels 0..{self.stored}: {self.source!r} -> {self.target!r})"


# --- Free, cofree and Sym(K) ---

def zero_sym(field, k: Optional[ChainComplex] = None) -> SymmetricSpectrum:
    return SymmetricSpectrum([SymRep.zero(0, field)], [], k=k)


def regular_rep(n: int, a: ChainComplex) -> Induced:
    """Sigma_n x a: one copy of a per permutation, g.[pi, x] = [g pi, x]."""
    return Induced((1,) * n, a)


def free_sym(n: int, a: ChainComplex, k: Optional[ChainComplex] = None) -> SymmetricSpectrum:
    """F_n a: Sigma_n x a at level n, generated above."""
    if n < 0:
        raise ValidationError("free spectra start at level 0")
    k = k if k is not None else chain.line(a.field)
    levels = [SymRep.zero(m, a.field) for m in range(n)] + [regular_rep(n, a).rep]
    sigmas = [ChainMap.zero(tensor(levels[m].space, k), levels[m + 1].space) for m in range(n)]
    return SymmetricSpectrum(levels, sigmas, k=k)


@lru_cache(maxsize=64)
def sym_K(k: ChainComplex) -> SymmetricSpectrum:
    """Sym(K) = F_0 S: K^(tensor n) at level n."""
    return free_sym(0, chain.unit(k.field), k)


def sym_K_rep(n: int, k: ChainComplex) -> SymRep:
    """K^(tensor n) with Sigma_n permuting the factors; any K, Koszul signs included."""
    leaves = [chain.unit(k.field)] + [k] * n
    src = tuple(range(n + 1))
    gens = []
    for i in range(n - 1):
        dst = list(src)
        dst[i + 1], dst[i + 2] = dst[i + 2], dst[i + 1]
        gens.append(chain.rearrange(leaves, src, tuple(dst)))
    return SymRep(n, chain.tree_tensor(leaves, src), gens)


@lru_cache(maxsize=64)
def sym_bar(k: ChainComplex) -> SymmetricSpectrum:
    """Sym(K) without level 0; generated by levels 1 and 2."""
    field = k.field
    levels = [SymRep.zero(0, field), sym_K_rep(1, k), sym_K_rep(2, k)]
    sigmas = [ChainMap.zero(tensor(levels[0].space, k), levels[1].space),
              ChainMap(tensor(levels[1].space, k), levels[2].space,
                       [field.eye(levels[2].space.dim(m)) for m in levels[2].space.degrees()])]
    return SymmetricSpectrum(levels, sigmas, k=k)


def eval_sym(n: int, x: SymmetricSpectrum) -> SymRep:
    """Ev_n."""
    return x.level(n)


def _cofree_level(rep: SymRep, k: ChainComplex, m: int) -> Tuple[ChainComplex, chain.Subcomplex]:
    """Hom(K^(n-m), a) and its Sigma_(n-m)-fixed subcomplex."""
    j = rep.n - m
    eps = -1 if require_line(k) % 2 else 1
    kj = _power(k, j)
    hom = chain.loops_U(rep.space, kj)
    moves = [chain.hom_map(ChainMap.identity(kj).scale(eps), rep.gens[m + i]) - ChainMap.identity(hom)
             for i in range(j - 1)]
    return hom, chain.kernel_subcomplex(hom, moves)


def cofree_sym(n: int, a: Union[SymRep, ChainComplex], k: Optional[ChainComplex] = None) -> SymmetricSpectrum:
    """
    R_n a: at level m <= n the Sigma_(n-m)-fixed points of Hom(K^(n-m), a),
    zero above n. The structure maps evaluate the new K in the first slot.
    """
    rep = a if isinstance(a, SymRep) else SymRep.trivial(n, a)
    if rep.n != n:
        raise DimensionMismatchError(f"R_{n} needs a Sigma_{n} representation, got Sigma_{rep.n}")
    field = rep.field
    k = k if k is not None else chain.line(field)
    ident_k = ChainMap.identity(k)
    subs, homs, levels = [], [], []
    for m in range(n + 1):
        hom, sub = _cofree_level(rep, k, m)
        subs.append(sub)
        homs.append(hom)
        kj = _power(k, n - m)
        gens = [sub.restrict(chain.hom_map(ChainMap.identity(kj), rep.gens[i]).compose(sub.inclusion))
                for i in range(m - 1)]
        levels.append(SymRep(m, sub.complex, gens, validate=False))
    levels.append(SymRep.zero(n + 1, field))
    sigmas = []
    for m in range(n):
        j = n - m
        ev = chain.counit_GU(rep.space, _power(k, j))
        full = chain.adjoint_across_GU(ev, tensor(homs[m], k), _power(k, j - 1))
        sigmas.append(subs[m + 1].restrict(full.compose(tensor_maps(subs[m].inclusion, ident_k))))
    sigmas.append(ChainMap.zero(tensor(levels[n].space, k), levels[n + 1].space))
    return SymmetricSpectrum(levels, sigmas, k=k)


def cofree_sym_extension(n: int, psi: ChainMap, x: SymmetricSpectrum, rep: Optional[SymRep] = None
                         ) -> SymmetricSpectrumMap:
    """
    The map X -> R_n a adjoint to an equivariant psi: X_n -> a. Level m sends
    x to kappa -> psi(sigma^(n-m)(x tensor kappa)); levels above n are zero.
    """
    rep = rep if rep is not None else SymRep.trivial(n, psi.target)
    if psi.source != x.level(n).space or psi.target != rep.space:
        raise DimensionMismatchError(f"psi does not go X_{n} -> a")
    if not x.level(n).is_equivariant(psi, rep):
        raise ValidationError(f"psi is not Sigma_{n}-equivariant", level=n)
    tgt = cofree_sym(n, rep, x.k)
    comps = []
    for m in range(n + 1):
        kj = _power(x.k, n - m)
        _, sub = _cofree_level(rep, x.k, m)
        g = psi.compose(x.iterated_sigma(m, n - m))
        xm = x.level(m).space
        # X_m tensor K^j equals the left-nested X_m tensor K tensor .. tensor K
        g = ChainMap(tensor(xm, kj), rep.space, g.mats, validate=False)
        comps.append(sub.restrict(chain.adjoint_across_GU(g, xm, kj)))
    for m in range(n + 1, max(n + 1, x.tail_index) + 1):
        comps.append(ChainMap.zero(x.level(m).space, tgt.level(m).space))
    return SymmetricSpectrumMap(x, tgt, comps)


def free_sym_map(n: int, phi: ChainMap, z: SymmetricSpectrum) -> SymmetricSpectrumMap:
    """The map F_n c -> Z adjoint to phi: c -> Z_n, [pi, x] -> pi.phi(x)."""
    c = phi.source
    src = free_sym(n, c, z.k)
    if phi.target != z.level(n).space:
        raise DimensionMismatchError(f"phi does not land in level {n}")
    reg = InducedSum(c.field, [regular_rep(n, c)])
    zn = z.level(n)
    first = reg.map_out(zn.space, lambda _, pi: zn.act(pi).compose(phi))
    comps = [ChainMap.zero(src.level(m).space, z.level(m).space) for m in range(n)]
    comps.append(ChainMap(src.level(n).space, zn.space, first.mats))
    return SymmetricSpectrumMap(src, z, comps)


def sym_map_s_n(n: int, a: ChainComplex, k: Optional[ChainComplex] = None) -> SymmetricSpectrumMap:
    """s_n^A: F_{n+1}(A tensor K) -> F_n A, adjoint to A tensor K -> (F_n A)_{n+1}, x tensor k -> sigma([1, x] tensor k)."""
    k = k if k is not None else chain.line(a.field)
    z = free_sym(n, a, k)
    corner = regular_rep(n, a).embed(perms.identity(n))
    phi = z.sigma(n).compose(tensor_maps(corner, ChainMap.identity(k)))
    return free_sym_map(n + 1, phi, z)


def normalize_tail(x: SymmetricSpectrum) -> SymmetricSpectrum:
    """The same spectrum with the smallest tail index that still generates it."""
    for t in range(x.tail_index):
        shorter = SymmetricSpectrum(x.levels[:t + 1], [x.sigma(n) for n in range(t)], k=x.k, validate=False)
        comparison = SymmetricSpectrumMap(shorter, x, [ChainMap.identity(x.level(n).space) for n in range(t + 1)],
                                          validate=False)
        if all(comparison.comp(n).is_iso() for n in range(t + 1, x.tail_index + 1)):
            logger.info("tail index lowered from %d to %d", x.tail_index, t)
            return shorter
    return x


# --- Symmetric sequences ---

def tensor_sym_seq(xs: Sequence[SymRep], ys: Sequence[SymRep]) -> List[SymRep]:
    """(X tensor Y)_n = sum_{p+q=n} Sigma_n x_(Sigma_p x Sigma_q) X_p tensor Y_q."""
    field = (xs or ys)[0].field
    out = []
    for n in range(len(xs) + len(ys) - 1):
        parts = []
        for p in range(max(0, n - len(ys) + 1), min(n, len(xs) - 1) + 1):
            xr, yr = xs[p], ys[n - p]
            parts.append(Induced((p, n - p), tensor(xr.space, yr.space),
                                 lambda h, xr=xr, yr=yr: tensor_maps(xr.act(h[0]), yr.act(h[1]))))
        total = InducedSum(field, parts)
        gens = [total.action(perms.adjacent(i, n)) for i in range(n - 1)]
        out.append(SymRep(n, total.space, gens, validate=False))
    return out


# --- Smash product ---

def _lambda_map(y: SymmetricSpectrum, q: int) -> ChainMap:
    """K tensor Y_q -> Y_{q+1}: sigma after the twist, then the new coordinate moved to the front."""
    yq = y.level(q).space
    return (y.level(q + 1).act(perms.cycle_last_to_front(q + 1))
            .compose(y.sigma(q)).compose(chain.twist(y.k, yq)))


@lru_cache(maxsize=256)
def smash_level(x: SymmetricSpectrum, y: SymmetricSpectrum, L: int) -> Quotient:
    """(X smash Y)_L as the coequalizer of the two K-actions on X_p tensor K tensor Y_q."""
    if x.k != y.k:
        raise DimensionMismatchError("spectra use different K")
    k = x.k
    ident_k = ChainMap.identity(k)
    v_parts = []
    for p in range(L + 1):
        xr, yr = x.level(p), y.level(L - p)
        v_parts.append(Induced((p, L - p), tensor(xr.space, yr.space),
                               lambda h, xr=xr, yr=yr: tensor_maps(xr.act(h[0]), yr.act(h[1]))))
    v = InducedSum(x.field, v_parts)
    r_parts = []
    for p in range(L):
        xr, yr = x.level(p), y.level(L - 1 - p)
        r_parts.append(Induced((p, 1, L - 1 - p), tensor(tensor(xr.space, k), yr.space),
                               lambda h, xr=xr, yr=yr: tensor_maps(tensor_maps(xr.act(h[0]), ident_k),
                                                                   yr.act(h[2]))))
    r = InducedSum(x.field, r_parts)

    def relation(p: int, gamma: Perm):
        q = L - 1 - p
        xs, yq = x.level(p).space, y.level(q).space
        up, h_up = perms.coset_decompose(perms.identity(L), gamma, (p + 1, q))
        alpha = v.parts[p + 1].act(h_up).compose(tensor_maps(x.sigma(p), ChainMap.identity(yq)))
        right, h_right = perms.coset_decompose(perms.identity(L), gamma, (p, q + 1))
        beta = (v.parts[p].act(h_right)
                .compose(tensor_maps(ChainMap.identity(xs), _lambda_map(y, q)))
                .compose(chain.associator(xs, k, yq)))
        return [(p + 1, up, alpha), (p, right, -beta)]

    return quotient(v, r.map_to(v, relation), L)


def smash_sigma(x: SymmetricSpectrum, y: SymmetricSpectrum, L: int) -> ChainMap:
    """Structure map of the smash product, from 1 tensor sigma_Y on [gamma x 1, -]."""
    k = x.k
    cur, nxt = smash_level(x, y, L), smash_level(x, y, L + 1)
    shifted = cur.sum.suspended(k)

    def block(p: int, gamma: Perm):
        xs, yq = x.level(p).space, y.level(L - p).space
        step = tensor_maps(ChainMap.identity(xs), y.sigma(L - p)).compose(chain.associator(xs, yq, k))
        return [(p, perms.product(gamma, (0,)), step)]

    phi = shifted.map_to(nxt.sum, block)
    sec = tensor_maps(cur.section, ChainMap.identity(k))
    f = x.field
    src = tensor(cur.complex, k)
    return ChainMap(src, nxt.complex, [f.mul(nxt.proj.mat(m), phi.mat(m), sec.mat(m)) for m in src.degrees()])


@lru_cache(maxsize=64)
def smash(x: SymmetricSpectrum, y: SymmetricSpectrum) -> SymmetricSpectrum:
    """X smash Y, computed through level N_X + N_Y and stored up to its smallest generating level."""
    top = x.tail_index + y.tail_index
    levels = [smash_level(x, y, L).rep for L in range(top + 1)]
    sigmas = [smash_sigma(x, y, L) for L in range(top)]
    return normalize_tail(SymmetricSpectrum(levels, sigmas, k=x.k))


def smash_map_level(f: SymmetricSpectrumMap, g: SymmetricSpectrumMap, L: int) -> ChainMap:
    qs = smash_level(f.source, g.source, L)
    qt = smash_level(f.target, g.target, L)
    phi = qs.sum.map_to(qt.sum, lambda p, gamma: [(p, gamma, tensor_maps(f.comp(p), g.comp(L - p)))])
    fld = f.field
    return ChainMap(qs.complex, qt.complex,
                    [fld.mul(qt.proj.mat(m), phi.mat(m), qs.section.mat(m)) for m in qs.complex.degrees()])


def _descend(q: Quotient, target: ChainComplex, rule: Callable[[int, Perm], GradedMap]) -> ChainMap:
    phi = q.sum.map_out(target, rule)
    f = target.field
    return ChainMap(q.complex, target, [f.mul(phi.mat(m), q.section.mat(m)) for m in q.complex.degrees()])


def smash_right_unit(x: SymmetricSpectrum) -> SymmetricSpectrumMap:
    """X smash Sym(K) -> X, [gamma, x tensor k] -> gamma.sigma^(q)(x tensor k)."""
    unit_spectrum = sym_K(x.k)
    z = smash(x, unit_spectrum)
    comps = []
    for L in range(z.tail_index + 1):
        xl = x.level(L)
        comps.append(_descend(smash_level(x, unit_spectrum, L), xl.space,
                              lambda p, gamma, xl=xl, L=L: xl.act(gamma).compose(x.iterated_sigma(p, L - p))))
    return SymmetricSpectrumMap(z, x, comps)


def smash_left_unit(x: SymmetricSpectrum) -> SymmetricSpectrumMap:
    """Sym(K) smash X -> X, k tensor x -> sigma^(p)(x tensor k) with the K coordinates moved to the front."""
    unit_spectrum = sym_K(x.k)
    z = smash(unit_spectrum, x)
    comps = []
    for L in range(z.tail_index + 1):
        xl = x.level(L)

        def block(p: int, gamma: Perm, xl=xl, L=L) -> GradedMap:
            q = L - p
            return (xl.act(perms.compose(gamma, perms.block_swap(q, p)))
                    .compose(x.iterated_sigma(q, p))
                    .compose(chain.twist(unit_spectrum.level(p).space, x.level(q).space)))

        comps.append(_descend(smash_level(unit_spectrum, x, L), xl.space, block))
    return SymmetricSpectrumMap(z, x, comps)


def smash_free_comparison(n: int, a: ChainComplex, m: int, b: ChainComplex,
                          k: Optional[ChainComplex] = None) -> SymmetricSpectrumMap:
    """F_{n+m}(a tensor b) -> F_n a smash F_m b, adjoint to a tensor b -> [1, [1, a] tensor [1, b]]."""
    k = k if k is not None else chain.line(a.field)
    fa, fb = free_sym(n, a, k), free_sym(m, b, k)
    z = smash(fa, fb)
    q = smash_level(fa, fb, n + m)
    inner = tensor_maps(regular_rep(n, a).embed(perms.identity(n)), regular_rep(m, b).embed(perms.identity(m)))
    phi = q.proj.compose(q.sum.embed(n, perms.identity(n + m))).compose(inner)
    return free_sym_map(n + m, phi, z)


# --- Latching objects and cofibrations ---

@dataclass
class Latching:
    """L_n X with its canonical map to X_n."""
    level: int
    quotient: Quotient
    map: ChainMap

    @property
    def complex(self) -> ChainComplex:
        return self.quotient.complex


def latching(n: int, x: SymmetricSpectrum) -> Latching:
    """L_n X = (X smash Sym-bar(K))_n."""
    bar = sym_bar(x.k)
    q = smash_level(x, bar, n)
    xn = x.level(n)

    def block(p: int, gamma: Perm) -> GradedMap:
        base = q.sum.parts[p].base
        if n - p == 0:
            return ChainMap.zero(base, xn.space)
        return xn.act(gamma).compose(x.iterated_sigma(p, n - p))

    return Latching(n, q, _descend(q, xn.space, block))


def latching_map(f: SymmetricSpectrumMap, n: int) -> ChainMap:
    return smash_map_level(f, SymmetricSpectrumMap.identity(sym_bar(f.source.k)), n)


def sym_corner_maps(f: SymmetricSpectrumMap, upto: Optional[int] = None) -> List[ChainMap]:
    """X_0 -> Y_0, then X_n + over L_n X of L_n Y -> Y_n."""
    top = f.stored + 1 if upto is None else upto
    out = [f.comp(0)]
    for n in range(1, top + 1):
        lx, ly = latching(n, f.source), latching(n, f.target)
        po = chain.pushout(lx.map, latching_map(f, n))
        out.append(chain.induced_from_pushout(po, f.comp(n), ly.map))
    return out


def is_sym_cofibration(f: SymmetricSpectrumMap, upto: Optional[int] = None) -> bool:
    for n, corner in enumerate(sym_corner_maps(f, upto)):
        if not corner.is_injective():
            logger.debug("latching corner map at level %d is not injective", n)
            return False
    return True


# --- Shifts ---

def shift_s_sym(x: SymmetricSpectrum) -> SymmetricSpectrum:
    """(sX)_n = X_{n+1} with Sigma_n acting on the last n coordinates."""
    levels = []
    for n in range(x.tail_index + 1):
        rep = x.level(n + 1)
        levels.append(SymRep(n, rep.space, rep.gens[1:], validate=False))
    return SymmetricSpectrum(levels, [x.sigma(n + 1) for n in range(x.tail_index)], k=x.k)


def _t_part(x: SymmetricSpectrum, n: int) -> Induced:
    rep = x.level(n - 1)
    return Induced((1, n - 1), rep.space, lambda h: rep.act(h[1]))


def shift_t_sym(x: SymmetricSpectrum) -> SymmetricSpectrum:
    """(tX)_0 = 0 and (tX)_n = Sigma_n x_(1 x Sigma_{n-1}) X_{n-1}."""
    field, k = x.field, x.k
    parts = {n: _t_part(x, n) for n in range(1, x.tail_index + 2)}
    levels = [SymRep.zero(0, field)] + [parts[n].rep for n in range(1, x.tail_index + 2)]
    sigmas = [ChainMap.zero(tensor(levels[0].space, k), levels[1].space)]
    for n in range(1, x.tail_index + 1):
        shifted = InducedSum(field, [parts[n]]).suspended(k)
        step = shifted.map_to(InducedSum(field, [parts[n + 1]]),
                              lambda _, gamma, n=n: [(0, perms.product(gamma, (0,)), x.sigma(n - 1))])
        sigmas.append(ChainMap(tensor(levels[n].space, k), levels[n + 1].space, step.mats))
    return SymmetricSpectrum(levels, sigmas, k=k)


def shift_s_sym_map(f: SymmetricSpectrumMap) -> SymmetricSpectrumMap:
    src, tgt = shift_s_sym(f.source), shift_s_sym(f.target)
    return SymmetricSpectrumMap(src, tgt, [f.comp(n + 1) for n in range(max(src.tail_index, tgt.tail_index) + 1)])


def shift_t_sym_map(f: SymmetricSpectrumMap) -> SymmetricSpectrumMap:
    """[gamma, x] -> [gamma, f_{n-1} x]."""
    src, tgt = shift_t_sym(f.source), shift_t_sym(f.target)
    comps = [ChainMap.zero(src.level(0).space, tgt.level(0).space)]
    for n in range(1, max(src.tail_index, tgt.tail_index) + 1):
        a = InducedSum(f.field, [_t_part(f.source, n)])
        b = InducedSum(f.field, [_t_part(f.target, n)])
        step = a.map_to(b, lambda _, gamma, n=n: [(0, gamma, f.comp(n - 1))])
        comps.append(ChainMap(src.level(n).space, tgt.level(n).space, step.mats))
    return SymmetricSpectrumMap(src, tgt, comps)


def shift_unit_sym(x: SymmetricSpectrum) -> SymmetricSpectrumMap:
    """X -> s t X, x -> [1, x]."""
    stx = shift_s_sym(shift_t_sym(x))
    comps = [_t_part(x, n + 1).embed(perms.identity(n + 1)) for n in range(stx.tail_index + 1)]
    return SymmetricSpectrumMap(x, stx, [ChainMap(x.level(n).space, stx.level(n).space, c.mats)
                                         for n, c in enumerate(comps)])


def shift_counit_sym(y: SymmetricSpectrum) -> SymmetricSpectrumMap:
    """t s Y -> Y, [gamma, y] -> gamma.y."""
    sy = shift_s_sym(y)
    tsy = shift_t_sym(sy)
    comps = [ChainMap.zero(tsy.level(0).space, y.level(0).space)]
    for n in range(1, max(tsy.tail_index, y.tail_index) + 1):
        yn = y.level(n)
        step = InducedSum(y.field, [_t_part(sy, n)]).map_out(yn.space, lambda _, gamma, yn=yn: yn.act(gamma))
        comps.append(ChainMap(tsy.level(n).space, yn.space, step.mats))
    return SymmetricSpectrumMap(tsy, y, comps)


def check_sym_shift(x: SymmetricSpectrum, y: SymmetricSpectrum, report: AdjunctionReport) -> None:
    """Triangle identities of t -| s."""
    report.checked += 1
    tx = shift_t_sym(x)
    left = shift_counit_sym(tx).compose(shift_t_sym_map(shift_unit_sym(x)))
    if left != SymmetricSpectrumMap.identity(tx):
        report.failures.append("t-s: counit o t(unit) is not the identity")
    sy = shift_s_sym(y)
    right = shift_s_sym_map(shift_counit_sym(y)).compose(shift_unit_sym(sy))
    if right != SymmetricSpectrumMap.identity(sy):
        report.failures.append("t-s: s(counit) o unit is not the identity")


def check_sym_free_eval(n: int, a: ChainComplex, x: SymmetricSpectrum, report: AdjunctionReport,
                        phi: Optional[ChainMap] = None) -> None:
    """F_n -| Ev_n: extending phi and restricting along [1, -] gives phi back."""
    report.checked += 1
    corner = regular_rep(n, a).embed(perms.identity(n))
    fa = free_sym(n, a, x.k)
    ident = free_sym_map(n, ChainMap(a, fa.level(n).space, corner.mats), fa)
    if ident != SymmetricSpectrumMap.identity(fa):
        report.failures.append(f"F{n}-Ev{n}: counit o F(unit) is not the identity on F_{n} a")
    if phi is not None:
        ext = free_sym_map(n, phi, x)
        if ext.comp(n).compose(ChainMap(a, fa.level(n).space, corner.mats)) != phi:
            report.failures.append(f"F{n}-Ev{n}: restricting the extension does not give phi")


# --- Omega spectra and levelwise functors ---

def check_sym_eval_cofree(n: int, a: Union[SymRep, ChainComplex], x: SymmetricSpectrum, report: AdjunctionReport,
                          g: Optional[SymmetricSpectrumMap] = None) -> None:
    """Ev_n -| R_n, and a map g: X -> R_n a is the extension of its level n."""
    report.checked += 1
    rep = a if isinstance(a, SymRep) else SymRep.trivial(n, a)
    ra = cofree_sym(n, rep, x.k)
    counit = ChainMap(ra.level(n).space, rep.space, [x.field.eye(rep.space.dim(m)) for m in rep.space.degrees()])
    xn = x.level(n)
    try:
        unit_x = cofree_sym_extension(n, ChainMap.identity(xn.space), x, xn)
        if not all(np.array_equal(m, x.field.eye(xn.space.dim(i))) for i, m in enumerate(unit_x.comp(n).mats)):
            report.failures.append(f"Ev{n}-R{n}: counit o Ev(unit) is not the identity on X_{n}")
        if cofree_sym_extension(n, counit, ra, rep) != SymmetricSpectrumMap.identity(ra):
            report.failures.append(f"Ev{n}-R{n}: R(counit) o unit is not the identity on R_{n} a")
        if g is not None:
            psi = counit.compose(g.comp(n))
            if cofree_sym_extension(n, psi, x, rep) != g:
                report.failures.append(f"Ev{n}-R{n}: extension of Ev(g) differs from g")
    except (ValidationError, DimensionMismatchError) as e:
        report.failures.append(f"Ev{n}-R{n}: {e}")


def is_omega_spectrum(x: SymmetricSpectrum, max_level: int = 3) -> bool:
    """Adjoint structure maps X_n -> U X_{n+1} are quasi-isomorphisms."""
    for n in range(max(max_level, x.tail_index) + 1):
        adj = chain.adjoint_across_GU(x.sigma(n), x.level(n).space, x.k)
        if not chain.is_quasi_iso(adj):
            logger.debug("adjoint structure map at level %d is not a quasi-isomorphism", n)
            return False
    return True


class TensorWith(LevelFunctor):
    """- tensor M, with tau swapping M past K."""
    name = "tensor-M"

    def __init__(self, k: ChainComplex, m: ChainComplex):
        super().__init__(k)
        self.m = m

    def apply(self, x):
        return tensor(x, self.m)

    def apply_map(self, f):
        return tensor_maps(f, ChainMap.identity(self.m))

    def tau(self, x):
        return chain.rearrange([x, self.m, self.k], ((0, 1), 2), ((0, 2), 1))


def apply_functor_levelwise(functor: LevelFunctor, x: SymmetricSpectrum, upto: Optional[int] = None,
                            check_naturality: bool = True) -> SymmetricSpectrum:
    """Levelwise F with actions F(g) and structure maps F(sigma_n) o tau."""
    if functor.tail_shift:
        raise ValidationError(f"{functor.name} does not preserve generated spectra")
    top = x.tail_index if upto is None else max(upto, x.tail_index)
    ident_k = ChainMap.identity(x.k)
    if check_naturality:
        for n in range(top + 1):
            for g in [x.sigma(n)] + list(x.level(n).gens):
                lhs = functor.apply_map(tensor_maps(g, ident_k)).compose(functor.tau(g.source))
                rhs = functor.tau(g.target).compose(tensor_maps(functor.apply_map(g), ident_k))
                if lhs != rhs:
                    raise NaturalityError(f"{functor.name}: tau is not natural at level {n}")
    levels = []
    for n in range(top + 1):
        rep = x.level(n)
        levels.append(SymRep(n, functor.apply(rep.space), [functor.apply_map(g) for g in rep.gens], validate=False))
    sigmas = [functor.apply_map(x.sigma(n)).compose(functor.tau(x.level(n).space)) for n in range(top)]
    return SymmetricSpectrum(levels, sigmas, k=x.k)


def tensor_complex_sym(x: SymmetricSpectrum, c: ChainComplex, upto: Optional[int] = None) -> SymmetricSpectrum:
    """X tensor c, levelwise."""
    return apply_functor_levelwise(TensorWith(x.k, c), x, upto=upto, check_naturality=False)


def tensor_sym_map(f: SymmetricSpectrumMap, g: ChainMap, upto: Optional[int] = None) -> SymmetricSpectrumMap:
    top = max(f.stored, upto or 0)
    src = tensor_complex_sym(f.source, g.source, top)
    tgt = tensor_complex_sym(f.target, g.target, top)
    return SymmetricSpectrumMap(src, tgt, [tensor_maps(f.comp(n), g) for n in range(top + 1)])


# --- Pushouts and pushout products ---

def pushout_product(f: ChainMap, g: ChainMap) -> ChainMap:
    """b tensor c + over a tensor c of a tensor d -> b tensor d."""
    ident = ChainMap.identity
    po = chain.pushout(tensor_maps(f, ident(g.source)), tensor_maps(ident(f.source), g))
    return chain.induced_from_pushout(po, tensor_maps(ident(f.target), g), tensor_maps(f, ident(g.target)))


@dataclass
class SymPushout:
    spectrum: SymmetricSpectrum
    left: SymmetricSpectrumMap
    right: SymmetricSpectrumMap
    squares: List[chain.Pushout]


def sym_pushout(f: SymmetricSpectrumMap, g: SymmetricSpectrumMap) -> SymPushout:
    """Levelwise pushout of B <- A -> C with the induced actions and structure maps."""
    b, c = f.target, g.target
    top = max(f.source.tail_index, b.tail_index, c.tail_index)
    ident_k = ChainMap.identity(b.k)
    pos = [chain.pushout(f.comp(n), g.comp(n)) for n in range(top + 1)]
    levels = []
    for n, po in enumerate(pos):
        gens = [chain.induced_from_pushout(po, po.left.compose(gb), po.right.compose(gc))
                for gb, gc in zip(b.level(n).gens, c.level(n).gens)]
        levels.append(SymRep(n, po.complex, gens, validate=False))
    sigmas = []
    for n in range(top):
        sigmas.append(chain.factor_through_surjection(
            [tensor_maps(pos[n].left, ident_k), tensor_maps(pos[n].right, ident_k)],
            [pos[n + 1].left.compose(b.sigma(n)), pos[n + 1].right.compose(c.sigma(n))]))
    p = SymmetricSpectrum(levels, sigmas, k=b.k)
    left = SymmetricSpectrumMap(b, p, [po.left for po in pos])
    right = SymmetricSpectrumMap(c, p, [po.right for po in pos])
    return SymPushout(p, left, right, pos)


def pushout_product_sym(f: SymmetricSpectrumMap, g: ChainMap) -> SymmetricSpectrumMap:
    """The corner map of f box g for a map of symmetric spectra and a chain map."""
    top = f.stored
    ident_a, ident_b = ChainMap.identity(g.source), ChainMap.identity(g.target)
    ident_x = SymmetricSpectrumMap.identity(f.source)
    ident_y = SymmetricSpectrumMap.identity(f.target)
    po = sym_pushout(tensor_sym_map(f, ident_a, top), tensor_sym_map(ident_x, g, top))
    yg = tensor_sym_map(ident_y, g, top)
    fb = tensor_sym_map(f, ident_b, top)
    comps = [chain.induced_from_pushout(po.squares[n], yg.comp(n), fb.comp(n))
             for n in range(po.spectrum.tail_index + 1)]
    return SymmetricSpectrumMap(po.spectrum, yg.target, comps)


# --- Naive homotopy groups ---

@dataclass(frozen=True)
class NaiveReading:
    """H_{k+nd}(X_n) at a stage n and the next one; stable when sigma induces an iso there."""
    k: int
    stage: int
    value: int
    next_value: int
    stable: bool


def naive_stable_pi(x: SymmetricSpectrum, k: int, stage: Optional[int] = None) -> NaiveReading:
    """colim_n H_{k+nd}(X_n), read at one stage. A diagnostic: it is not a stable invariant."""
    d = x.d
    stage = x.tail_index + abs(k) + 1 if stage is None else stage
    deg = k + stage * d
    value = x.level(stage).space.homology(deg)
    nxt = x.level(stage + 1).space.homology(deg + d)
    stable = chain.induces_iso_in_degree(x.sigma(stage), deg + d)
    return NaiveReading(k, stage, value, nxt, stable)


# --- Lifting and spaces of maps ---

def _sym_map_system(a: SymmetricSpectrum, x: SymmetricSpectrum, top: int):
    d = a.d
    field = a.field
    system = AffineSystem(field)
    idx: Dict[Tuple[int, int], int] = {}
    for n in range(top + 1):
        for m in a.level(n).space.degrees():
            idx[n, m] = system.add_unknown(x.level(n).space.dim(m), a.level(n).space.dim(m))
    for n in range(top + 1):
        ar, xr = a.level(n), x.level(n)
        an, xn = ar.space, xr.space
        for m in range(1, an.top + 1):
            system.add_equation([(field.eye(xn.dim(m - 1)), idx[n, m - 1], an.d(m)),
                                 (field.neg(xn.d(m)), idx[n, m], field.eye(an.dim(m)))],
                                field.zeros(xn.dim(m - 1), an.dim(m)))
        for ga, gx in zip(ar.gens, xr.gens):
            for m in an.degrees():
                system.add_equation([(field.eye(xn.dim(m)), idx[n, m], ga.mat(m)),
                                     (field.neg(gx.mat(m)), idx[n, m], field.eye(an.dim(m)))],
                                    field.zeros(xn.dim(m), an.dim(m)))
        if n < top:
            a1, x1 = a.level(n + 1).space, x.level(n + 1).space
            for m in a1.degrees():
                terms = [(field.eye(x1.dim(m)), idx[n + 1, m], a.sigma(n).mat(m))]
                if (n, m - d) in idx:
                    terms.append((field.neg(x.sigma(n).mat(m)), idx[n, m - d], field.eye(an.dim(m - d))))
                system.add_equation(terms, field.zeros(x1.dim(m), an.dim(m - d)))
    return system, idx


def _unpack(a: SymmetricSpectrum, x: SymmetricSpectrum, idx, values, top: int,
            validate: bool = True) -> SymmetricSpectrumMap:
    comps = [ChainMap(a.level(n).space, x.level(n).space,
                      [values[idx[n, m]] for m in a.level(n).space.degrees()], validate=validate)
             for n in range(top + 1)]
    return SymmetricSpectrumMap(a, x, comps, validate=validate)


def enumerate_sym_maps(a: SymmetricSpectrum, x: SymmetricSpectrum,
                       limit: Optional[int] = None) -> List[SymmetricSpectrumMap]:
    top = max(a.tail_index, x.tail_index)
    system, idx = _sym_map_system(a, x, top)
    return [_unpack(a, x, idx, values, top, validate=False) for values in system.enumerate_solutions(limit)]


def random_sym_map(a: SymmetricSpectrum, x: SymmetricSpectrum, rng: np.random.Generator) -> SymmetricSpectrumMap:
    top = max(a.tail_index, x.tail_index)
    system, idx = _sym_map_system(a, x, top)
    return _unpack(a, x, idx, system.random_solution(rng), top)


def has_sym_lift(i: SymmetricSpectrumMap, p: SymmetricSpectrumMap, u: SymmetricSpectrumMap,
                 v: SymmetricSpectrumMap) -> Optional[SymmetricSpectrumMap]:
    """An equivariant diagonal h: B -> X with h i = u and p h = v, or None."""
    a, b, x, y = i.source, i.target, p.source, p.target
    if p.compose(u) != v.compose(i):
        raise ValidationError("lifting square does not commute")
    top = max(a.tail_index, b.tail_index, x.tail_index, y.tail_index)
    field = a.field
    system, idx = _sym_map_system(b, x, top)
    for n in range(top + 1):
        bn, xn = b.level(n).space, x.level(n).space
        # h i vanishes in degrees of A above B
        if any(not field.is_zero(u.comp(n).mat(m)) for m in range(bn.top + 1, a.level(n).space.top + 1)):
            return None
        for m in bn.degrees():
            system.add_equation([(field.eye(xn.dim(m)), idx[n, m], i.comp(n).mat(m))], u.comp(n).mat(m))
            system.add_equation([(p.comp(n).mat(m), idx[n, m], field.eye(bn.dim(m)))], v.comp(n).mat(m))
    values = system.solve()
    if values is None:
        return None
    return _unpack(b, x, idx, values, top)


def sym_llp_oracle_targets(field, k: Optional[ChainComplex] = None, max_disk: int = 3) -> List[SymmetricSpectrum]:
    """X with X -> 0 a level trivial fibration: F_n(D^j) and R_n(D^j)."""
    out = []
    for n in (0, 1):
        for j in range(1, max_disk + 1):
            out.append(free_sym(n, chain.disk(field, j), k))
            out.append(cofree_sym(n, chain.disk(field, j), k))
    return out


def has_sym_llp_against_oracle(f: SymmetricSpectrumMap, targets: Sequence[SymmetricSpectrum],
                               limit: int = 4096) -> bool:
    for x in targets:
        zero = zero_sym(x.field, x.k)
        to_zero = SymmetricSpectrumMap.zero(x, zero)
        for u in enumerate_sym_maps(f.source, x, limit):
            if has_sym_lift(f, to_zero, u, SymmetricSpectrumMap.zero(f.target, zero)) is None:
                return False
    return True
