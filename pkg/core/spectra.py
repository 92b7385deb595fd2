# core/spectra.py

"""
Spectra X_0, X_1, ... with structure maps X_n tensor K -> X_{n+1}.

A spectrum stores levels up to its tail index N. Beyond the tail,
X_{n+1} = X_n tensor K (left nested) and the structure map is a fixed nonzero
scalar c times the identity; c = 1 except after twisted tensoring. Maps store
components up to the larger tail index M and continue by
f_{n+1} = (c_target / c_source) * (f_n tensor K).

The stable theory (R, R-infinity, stable homotopy groups, stable
equivalences and fibrations) needs K to be a line F_p[d].
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core import chain
from core.chain import ChainComplex, ChainMap, tensor, tensor_maps
from core.errors import (DimensionMismatchError, NaturalityError, NotALineError,
                         UnstableColimitError, ValidationError)
from core.linalg import AffineSystem

logger = logging.getLogger(__name__)


def require_line(k: ChainComplex) -> int:
    d = chain.line_degree(k)
    if d is None:
        raise NotALineError(f"K with dims {list(k.dims)} is not one-dimensional")
    return d


def scalar_of(m: ChainMap) -> Optional[int]:
    """c if m = c * identity with c nonzero, else None."""
    if m.source != m.target:
        return None
    if m.source.is_zero():
        return 1
    c = None
    for n in m.source.degrees():
        if m.source.dim(n):
            c = int(m.mat(n)[0, 0])
            break
    if not c:
        return None
    return c if m == ChainMap.identity(m.source).scale(c) else None


class Spectrum:
    """A spectrum with finitely many stored levels and a suspension tail."""

    def __init__(self, levels: Sequence[ChainComplex], sigmas: Sequence[ChainMap],
                 k: Optional[ChainComplex] = None, tail_index: Optional[int] = None,
                 tail_scalar: int = 1):
        if not levels:
            raise ValidationError("a spectrum needs at least level 0")
        self.field = levels[0].field
        self.k = k if k is not None else chain.line(self.field)
        if tail_index is None:
            tail_index = len(levels) - 1
        if tail_index != len(levels) - 1:
            raise DimensionMismatchError(f"tail index {tail_index} needs {tail_index + 1} levels, got {len(levels)}")
        if len(sigmas) != tail_index:
            raise DimensionMismatchError(f"tail index {tail_index} needs {tail_index} structure maps, got {len(sigmas)}")
        self.tail_index = tail_index
        self.tail_scalar = int(tail_scalar) % self.field.p
        if self.tail_scalar == 0:
            raise ValidationError("tail scalar must be invertible")
        self._levels: Dict[int, ChainComplex] = dict(enumerate(levels))
        self._sigmas: Dict[int, ChainMap] = {}
        for n, s in enumerate(sigmas):
            if s.source != tensor(levels[n], self.k) or s.target != levels[n + 1]:
                raise DimensionMismatchError(f"structure map does not go X_{n} tensor K -> X_{n + 1} (at level {n})")
            self._sigmas[n] = s
        logger.debug("Spectrum built: tail %d, dims %s", tail_index, [list(c.dims) for c in levels])

    def level(self, n: int) -> ChainComplex:
        if n < 0:
            return chain.zero_complex(self.field)
        if n not in self._levels:
            self._levels[n] = tensor(self.level(n - 1), self.k)
        return self._levels[n]

    def sigma(self, n: int) -> ChainMap:
        if n not in self._sigmas:
            self._sigmas[n] = ChainMap.identity(tensor(self.level(n), self.k)).scale(self.tail_scalar)
        return self._sigmas[n]

    @property
    def levels(self) -> List[ChainComplex]:
        return [self.level(n) for n in range(self.tail_index + 1)]

    @property
    def sigmas(self) -> List[ChainMap]:
        return [self.sigma(n) for n in range(self.tail_index)]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.levels)

    def same_as(self, other: "Spectrum", upto: Optional[int] = None) -> bool:
        """Levels and structure maps agree through level ``upto``."""
        if upto is None:
            upto = max(self.tail_index, other.tail_index) + 1
        return (self.k == other.k
                and all(self.level(n) == other.level(n) for n in range(upto + 1))
                and all(self.sigma(n) == other.sigma(n) for n in range(upto)))

    def __repr__(self) -> str:
        return (f"Spectrum(p={self.field.p}, tail={self.tail_index}, c={self.tail_scalar}, "
                f"dims={[list(c.dims) for c in self.levels]})")


class SpectrumMap:
    """Levelwise chain maps commuting with the structure maps."""

    def __init__(self, source: Spectrum, target: Spectrum, comps: Sequence[ChainMap], validate: bool = True):
        if source.k != target.k:
            raise DimensionMismatchError("spectra use different K")
        self.source, self.target = source, target
        self.field = source.field
        self.stored = max(source.tail_index, target.tail_index)
        if len(comps) < self.stored + 1:
            raise DimensionMismatchError(f"need components through level {self.stored}, got {len(comps)}")
        self._ratio = (target.tail_scalar * self.field.inv(source.tail_scalar)) % self.field.p
        self._comps: Dict[int, ChainMap] = {}
        for n in range(self.stored + 1):
            c = comps[n]
            if c.source != source.level(n) or c.target != target.level(n):
                raise DimensionMismatchError(f"component does not go X_{n} -> Y_{n} (at level {n})")
            self._comps[n] = c
        for n in range(self.stored + 1, len(comps)):
            if comps[n] != self.comp(n):
                raise ValidationError("component beyond the tails breaks the tail rule", level=n)
        if validate:
            for n in range(self.stored):
                lhs = self.comp(n + 1).compose(source.sigma(n))
                rhs = target.sigma(n).compose(tensor_maps(self.comp(n), ChainMap.identity(source.k)))
                if lhs != rhs:
                    raise ValidationError("structure square does not commute", level=n)

    def comp(self, n: int) -> ChainMap:
        if n < 0:
            return ChainMap.zero(self.source.level(n), self.target.level(n))
        if n not in self._comps:
            prev = self.comp(n - 1)
            self._comps[n] = tensor_maps(prev, ChainMap.identity(self.source.k)).scale(self._ratio)
        return self._comps[n]

    @property
    def comps(self) -> List[ChainMap]:
        return [self.comp(n) for n in range(self.stored + 1)]

    @classmethod
    def identity(cls, x: Spectrum) -> "SpectrumMap":
        return cls(x, x, [ChainMap.identity(x.level(n)) for n in range(x.tail_index + 1)], validate=False)

    @classmethod
    def zero(cls, x: Spectrum, y: Spectrum) -> "SpectrumMap":
        top = max(x.tail_index, y.tail_index)
        return cls(x, y, [ChainMap.zero(x.level(n), y.level(n)) for n in range(top + 1)], validate=False)

    def compose(self, other: "SpectrumMap") -> "SpectrumMap":
        """self o other."""
        top = max(other.source.tail_index, other.target.tail_index, self.target.tail_index)
        return SpectrumMap(other.source, self.target,
                           [self.comp(n).compose(other.comp(n)) for n in range(top + 1)], validate=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectrumMap):
            return False
        top = max(self.stored, other.stored) + 1
        return all(self.comp(n) == other.comp(n) for n in range(top + 1))

    def __hash__(self) -> int:
        return hash(tuple(self.comps))

    def is_level_equivalence(self) -> bool:
        return all(chain.is_quasi_iso(self.comp(n)) for n in range(self.stored + 1))

    def is_level_iso(self) -> bool:
        return all(self.comp(n).is_iso() for n in range(self.stored + 1))

    def is_level_cofibration(self) -> bool:
        return all(self.comp(n).is_injective() for n in range(self.stored + 1))

    def is_level_fibration(self, upto: Optional[int] = None) -> bool:
        top = max(self.stored + 1, upto or 0)
        return all(self.comp(n).is_surjective(min_degree=1) for n in range(top + 1))

    def __repr__(self) -> str:
        return f"SpectrumMap(levels 0..{self.stored}: {self.source!r} -> {self.target!r})"


@dataclass(frozen=True)
class LevelClass:
    level_cofibration: bool
    level_fibration: bool
    level_equivalence: bool


def classify_spectrum_map(f: SpectrumMap) -> LevelClass:
    return LevelClass(f.is_level_cofibration(), f.is_level_fibration(), f.is_level_equivalence())


# --- Basic spectra ---

def zero_spectrum(field, k: Optional[ChainComplex] = None) -> Spectrum:
    return Spectrum([chain.zero_complex(field)], [], k=k)


def free_spectrum(n: int, a: ChainComplex, k: Optional[ChainComplex] = None) -> Spectrum:
    """F_n a: zero below level n, a tensor K^(m-n) at level m."""
    if n < 0:
        raise ValidationError("free spectra start at level 0")
    k = k if k is not None else chain.line(a.field)
    zero = chain.zero_complex(a.field)
    levels = [zero] * n + [a]
    sigmas = [ChainMap.zero(tensor(levels[m], k), levels[m + 1]) for m in range(n)]
    return Spectrum(levels, sigmas, k=k)


def sphere_spectrum(field, k: Optional[ChainComplex] = None) -> Spectrum:
    return free_spectrum(0, chain.unit(field), k)


def evaluate(n: int, x: Spectrum) -> ChainComplex:
    """Ev_n."""
    return x.level(n)


def cofree(n: int, a: ChainComplex, k: Optional[ChainComplex] = None) -> Spectrum:
    """R_n a: U^(n-m) a at level m <= n, zero above, counits as structure maps."""
    k = k if k is not None else chain.line(a.field)
    levels = [a]
    for _ in range(n):
        levels.insert(0, chain.loops_U(levels[0], k))
    levels.append(chain.zero_complex(a.field))
    sigmas = [chain.counit_GU(levels[m + 1], k) for m in range(n)]
    sigmas.append(ChainMap.zero(tensor(a, k), levels[n + 1]))
    return Spectrum(levels, sigmas, k=k)


def direct_sum_spectra(x: Spectrum, y: Spectrum) -> Spectrum:
    require_line(x.k)
    if x.tail_scalar != y.tail_scalar:
        raise ValidationError("direct sums need equal tail scalars")
    top = max(x.tail_index, y.tail_index)
    levels = [chain.direct_sum(x.level(n), y.level(n)) for n in range(top + 1)]
    sigmas = []
    for n in range(top):
        src = tensor(levels[n], x.k)
        block = chain.direct_sum_maps(x.sigma(n), y.sigma(n))
        # (X + Y) tensor K is (X tensor K) + (Y tensor K) with the same basis order
        sigmas.append(ChainMap(src, levels[n + 1], block.mats))
    return Spectrum(levels, sigmas, k=x.k, tail_scalar=x.tail_scalar)


def iterated_sigma(x: Spectrum, n: int, j: int) -> ChainMap:
    """X_n tensor K^j (left nested) -> X_{n+j}."""
    out = ChainMap.identity(x.level(n))
    ident_k = ChainMap.identity(x.k)
    for i in range(j):
        out = x.sigma(n + i).compose(tensor_maps(out, ident_k))
    return out


def generating_complexes(field, max_degree: int = 3) -> List[ChainComplex]:
    """Spheres S^m and disks D^m: the default localizing set."""
    out = [chain.sphere(field, m) for m in range(max_degree + 1)]
    out += [chain.disk(field, m) for m in range(1, max_degree + 1)]
    return out


def map_s_n(n: int, a: ChainComplex, k: Optional[ChainComplex] = None) -> SpectrumMap:
    """s_n^A: F_{n+1}(A tensor K) -> F_n A, the identity from level n+1 on."""
    k = k if k is not None else chain.line(a.field)
    src = free_spectrum(n + 1, tensor(a, k), k)
    tgt = free_spectrum(n, a, k)
    comps = [ChainMap.zero(src.level(m), tgt.level(m)) for m in range(n + 1)]
    comps.append(ChainMap.identity(tgt.level(n + 1)))
    return SpectrumMap(src, tgt, comps)


def free_map(n: int, f: ChainMap, k: Optional[ChainComplex] = None) -> SpectrumMap:
    """F_n f."""
    k = k if k is not None else chain.line(f.field)
    src, tgt = free_spectrum(n, f.source, k), free_spectrum(n, f.target, k)
    comps = [ChainMap.zero(src.level(m), tgt.level(m)) for m in range(n)] + [f]
    return SpectrumMap(src, tgt, comps)


# --- Prolongation of level functors ---

class LevelFunctor(ABC):
    """An endofunctor F of chain complexes with tau: F(X) tensor K -> F(X tensor K)."""

    name = "functor"
    tail_shift = 0

    def __init__(self, k: ChainComplex):
        self.k = k

    @abstractmethod
    def apply(self, x: ChainComplex) -> ChainComplex:
        ...

    @abstractmethod
    def apply_map(self, f: ChainMap) -> ChainMap:
        ...

    @abstractmethod
    def tau(self, x: ChainComplex) -> ChainMap:
        ...


class IdentityFunctor(LevelFunctor):
    name = "identity"

    def apply(self, x):
        return x

    def apply_map(self, f):
        return f

    def tau(self, x):
        return ChainMap.identity(tensor(x, self.k))


class TensorK(LevelFunctor):
    """- tensor K with tau the identity."""
    name = "tensor-K"

    def apply(self, x):
        return tensor(x, self.k)

    def apply_map(self, f):
        return tensor_maps(f, ChainMap.identity(self.k))

    def tau(self, x):
        return ChainMap.identity(tensor(tensor(x, self.k), self.k))


class TwistedTensorK(TensorK):
    """- tensor K with tau swapping the two copies of K."""
    name = "tensor-K-twisted"

    def tau(self, x):
        return chain.rearrange([x, self.k, self.k], ((0, 1), 2), ((0, 2), 1))


class LoopsU(LevelFunctor):
    """U = Hom(K, -) with tau = eta o epsilon."""
    name = "loops-U"
    tail_shift = 1

    def apply(self, x):
        return chain.loops_U(x, self.k)

    def apply_map(self, f):
        return chain.loops_U_map(f, self.k)

    def tau(self, x):
        return chain.unit_GU(x, self.k).compose(chain.counit_GU(x, self.k))


def prolong_functor(functor: LevelFunctor, x: Spectrum, check_naturality: bool = True) -> Spectrum:
    """Levelwise F with structure maps F(sigma_n) o tau_{X_n}."""
    k = x.k
    ident_k = ChainMap.identity(k)
    last = x.tail_index + functor.tail_shift
    if check_naturality:
        for n in range(last + 1):
            s = x.sigma(n)
            lhs = functor.apply_map(tensor_maps(s, ident_k)).compose(functor.tau(s.source))
            rhs = functor.tau(s.target).compose(tensor_maps(functor.apply_map(s), ident_k))
            if lhs != rhs:
                raise NaturalityError(f"{functor.name}: tau is not natural on the structure map at level {n}")
    levels = [functor.apply(x.level(n)) for n in range(last + 2)]
    sigmas = [functor.apply_map(x.sigma(n)).compose(functor.tau(x.level(n))) for n in range(last + 1)]
    if levels[last + 1] != tensor(levels[last], k):
        raise ValidationError(f"{functor.name} does not preserve the suspension tail", level=last + 1)
    c = scalar_of(sigmas[last])
    if c is None:
        raise ValidationError(f"{functor.name} does not send the tail to a scalar structure map", level=last)
    return Spectrum(levels[:last + 1], sigmas[:last], k=k, tail_scalar=c)


def prolong_map(functor: LevelFunctor, f: SpectrumMap) -> SpectrumMap:
    src = prolong_functor(functor, f.source, check_naturality=False)
    tgt = prolong_functor(functor, f.target, check_naturality=False)
    top = max(src.tail_index, tgt.tail_index)
    return SpectrumMap(src, tgt, [functor.apply_map(f.comp(n)) for n in range(top + 1)])


def prolong_G_no_twist(x: Spectrum) -> Spectrum:
    """X tensor-bar K: levels X_n tensor K, structure maps sigma_n tensor K."""
    return prolong_functor(TensorK(x.k), x)


def tensor_K_twist(x: Spectrum) -> Spectrum:
    """X tensor K: structure maps (sigma_n tensor K) o (X_n tensor twist(K, K))."""
    return prolong_functor(TwistedTensorK(x.k), x)


def prolong_U(x: Spectrum) -> Spectrum:
    require_line(x.k)
    return prolong_functor(LoopsU(x.k), x)


def twist_comparison_map(x: Spectrum) -> SpectrumMap:
    """The isomorphism X tensor K -> X tensor-bar K, (-1)^(d n) at level n."""
    d = require_line(x.k)
    src, tgt = tensor_K_twist(x), prolong_G_no_twist(x)
    top = max(src.tail_index, tgt.tail_index)
    comps = [ChainMap.identity(src.level(n)).scale(-1 if (d * n) % 2 else 1) for n in range(top + 1)]
    return SpectrumMap(src, tgt, comps)


# --- Shifts ---

def shift_s(x: Spectrum) -> Spectrum:
    """(sX)_n = X_{n+1}."""
    top = max(x.tail_index - 1, 0)
    return Spectrum([x.level(n + 1) for n in range(top + 1)], [x.sigma(n + 1) for n in range(top)],
                    k=x.k, tail_scalar=x.tail_scalar)


def shift_t(x: Spectrum) -> Spectrum:
    """(tX)_0 = 0, (tX)_n = X_{n-1}."""
    zero = chain.zero_complex(x.field)
    levels = [zero] + [x.level(n) for n in range(x.tail_index + 1)]
    sigmas = [ChainMap.zero(tensor(zero, x.k), x.level(0))] + [x.sigma(n) for n in range(x.tail_index)]
    return Spectrum(levels, sigmas, k=x.k, tail_scalar=x.tail_scalar)


def shift_s_map(f: SpectrumMap) -> SpectrumMap:
    src, tgt = shift_s(f.source), shift_s(f.target)
    top = max(src.tail_index, tgt.tail_index)
    return SpectrumMap(src, tgt, [f.comp(n + 1) for n in range(top + 1)])


def shift_t_map(f: SpectrumMap) -> SpectrumMap:
    src, tgt = shift_t(f.source), shift_t(f.target)
    top = max(src.tail_index, tgt.tail_index)
    comps = [ChainMap.zero(src.level(0), tgt.level(0))] + [f.comp(n - 1) for n in range(1, top + 1)]
    return SpectrumMap(src, tgt, comps)


# --- R and R-infinity ---

def R(x: Spectrum) -> Spectrum:
    """R = sU."""
    return shift_s(prolong_U(x))


def R_map(f: SpectrumMap) -> SpectrumMap:
    return shift_s_map(prolong_map(LoopsU(f.source.k), f))


def R_once(x: Spectrum) -> Tuple[Spectrum, SpectrumMap]:
    """RX and iota_X: X -> RX, levelwise the adjoint of the structure map."""
    rx = R(x)
    top = max(x.tail_index, rx.tail_index)
    comps = [chain.adjoint_across_GU(x.sigma(n), x.level(n), x.k) for n in range(top + 1)]
    return rx, SpectrumMap(x, rx, comps)


@dataclass
class Stabilization:
    """R^m X for a stage m past the tail, with j_X: X -> R^m X."""
    spectrum: Spectrum
    j: SpectrumMap
    stage: int


def r_infinity(x: Spectrum, stage: Optional[int] = None) -> Stabilization:
    """
    R-infinity X, computed as R^m X for m = tail index (or ``stage``).

    Raises UnstableColimitError unless iota at stage m is a levelwise
    isomorphism, i.e. the tower has stopped changing.
    """
    require_line(x.k)
    stage = x.tail_index if stage is None else stage
    if stage < x.tail_index:
        raise ValidationError(f"stage {stage} is below the tail index {x.tail_index}")
    current = x
    j = SpectrumMap.identity(x)
    for _ in range(stage):
        current, iota = R_once(current)
        j = iota.compose(j)
    _require_settled(current, stage)
    logger.info("R-infinity stabilized at stage %d", stage)
    return Stabilization(current, j, stage)


def _require_settled(current: Spectrum, stage: int) -> None:
    """iota on R^m X must be a levelwise isomorphism."""
    _, iota = R_once(current)
    for n in range(current.tail_index + 1):
        if not iota.comp(n).is_iso():
            raise UnstableColimitError("R-infinity tower still changes", stage,
                                       {"level": n, "dims": list(current.level(n).dims)})


def r_infinity_map(f: SpectrumMap, stage: Optional[int] = None) -> SpectrumMap:
    require_line(f.source.k)
    stage = f.stored if stage is None else stage
    out = f
    for _ in range(stage):
        out = R_map(out)
    _require_settled(out.source, stage)
    _require_settled(out.target, stage)
    return out


@dataclass
class ProbeValue:
    level: int
    degree: int
    complex: ChainComplex
    fragment: ChainComplex
    j: ChainMap
    stage: int


def truncate_above(x: ChainComplex, k: int) -> ChainComplex:
    """Degrees <= k of x (a quotient complex)."""
    return ChainComplex(x.field, list(x.dims[:k + 1]), [x.d(n) for n in range(1, min(x.top, k) + 1)], validate=False)


def r_infinity_at(x: Spectrum, level: int, degree: int) -> ProbeValue:
    st = r_infinity(x)
    cplx = st.spectrum.level(level)
    return ProbeValue(level, degree, cplx, truncate_above(cplx, degree), st.j.comp(level), st.stage)


def is_U_spectrum(x: Spectrum, max_level: int = 4) -> bool:
    """Adjoint structure maps X_n -> U X_{n+1} are quasi-isomorphisms."""
    top = max(max_level, x.tail_index)
    for n in range(top + 1):
        adj = chain.adjoint_across_GU(x.sigma(n), x.level(n), x.k)
        if not chain.is_quasi_iso(adj):
            logger.debug("adjoint structure map at level %d is not a quasi-isomorphism", n)
            return False
    return True


# --- Stable homotopy ---

def stable_pi_with_stage(x: Spectrum, k: int) -> Tuple[int, int]:
    """colim_n H_{k+nd}(X_n) and the stage it was read at."""
    d = require_line(x.k)
    if d == 0 and k < 0:
        return 0, x.tail_index
    stage = x.tail_index + abs(k) + 1
    deg = k + stage * d
    value = x.level(stage).homology(deg)
    if not chain.induces_iso_in_degree(x.sigma(stage), deg + d):
        raise UnstableColimitError("stable homotopy colimit still changes", stage,
                                   {"k": k, "value": value, "next": x.level(stage + 1).homology(deg + d)})
    return value, stage


def stable_pi(x: Spectrum, k: int) -> int:
    return stable_pi_with_stage(x, k)[0]


def stable_pi_table(x: Spectrum, ks: Iterable[int]) -> List[Tuple[int, int, int]]:
    return [(k, *stable_pi_with_stage(x, k)) for k in ks]


def stable_classes(a: ChainComplex, x: Spectrum, k: int) -> int:
    """
    dim of stable classes from a in degree k into x:
    colim_n ho(a tensor K^(k+n), X_n) along phi -> sigma_n o (phi tensor K).
    """
    d = require_line(x.k)
    if d == 0:
        raise NotALineError("stable classes need K in positive degree")
    stage = x.tail_index + abs(k) + 1
    src = chain.tensor(a, chain.tensor_power(x.k, k + stage))
    value = chain.homotopy_classes(src, x.level(stage))
    nxt = chain.homotopy_classes(chain.tensor(src, x.k), x.level(stage + 1))
    if value != nxt:
        raise UnstableColimitError("stable classes still change", stage, {"k": k, "value": value, "next": nxt})
    return value


@dataclass(frozen=True)
class ProbeGrid:
    max_level: int = 4
    max_degree: int = 5

    def points(self) -> List[Tuple[int, int]]:
        return [(n, k) for n in range(self.max_level + 1) for k in range(self.max_degree + 1)]

    def covering(self, *spectra: Spectrum) -> "ProbeGrid":
        """A grid at least this large that also reaches past every tail and top degree."""
        top_level = max([s.tail_index for s in spectra] + [0]) + 1
        top_degree = max([s.level(n).top for s in spectra for n in range(top_level + 1)] + [0]) + 1
        return ProbeGrid(max(self.max_level, top_level), max(self.max_degree, top_degree))


def is_stable_equivalence(f: SpectrumMap, grid: Optional[ProbeGrid] = None) -> bool:
    """R-infinity f is a quasi-isomorphism at every probe of the (covering) grid."""
    grid = (grid or ProbeGrid()).covering(f.source, f.target)
    rf = r_infinity_map(f)
    for n in range(grid.max_level + 1):
        comp = rf.comp(n)
        top = max(grid.max_degree, comp.source.top, comp.target.top)
        for deg in range(top + 1):
            if not chain.induces_iso_in_degree(comp, deg):
                logger.debug("R-infinity f fails at level %d degree %d", n, deg)
                return False
    return True


def corner_maps(f: SpectrumMap, upto: Optional[int] = None) -> List[ChainMap]:
    """A_0 -> B_0, then A_n + over A_{n-1} tensor K of B_{n-1} tensor K -> B_n."""
    a, b = f.source, f.target
    top = f.stored + 1 if upto is None else upto
    ident_k = ChainMap.identity(a.k)
    out = [f.comp(0)]
    for n in range(1, top + 1):
        po = chain.pushout(a.sigma(n - 1), tensor_maps(f.comp(n - 1), ident_k))
        out.append(chain.induced_from_pushout(po, f.comp(n), b.sigma(n - 1)))
    return out


def is_projective_cofibration(f: SpectrumMap) -> bool:
    return all(c.is_injective() for c in corner_maps(f))


def is_stable_fibration(f: SpectrumMap, grid: Optional[ProbeGrid] = None) -> bool:
    """
    Level fibration, and X_n -> Y_n x_{R-inf Y_n} R-inf X_n is a
    quasi-isomorphism on the covering grid.
    """
    grid = (grid or ProbeGrid()).covering(f.source, f.target)
    if not f.is_level_fibration(upto=grid.max_level):
        return False
    stage = f.stored
    rx = r_infinity(f.source, stage=stage)
    ry = r_infinity(f.target, stage=stage)
    rf = r_infinity_map(f, stage=stage)
    for n in range(grid.max_level + 1):
        pb = chain.pullback(ry.j.comp(n), rf.comp(n))
        gap = chain.induced_to_pullback(pb, f.comp(n), rx.j.comp(n))
        if not chain.is_quasi_iso(gap):
            logger.debug("homotopy pullback fails at level %d", n)
            return False
    return True


@dataclass
class SpectrumPullback:
    spectrum: Spectrum
    left: SpectrumMap
    right: SpectrumMap


def spectrum_pullback(f: SpectrumMap, g: SpectrumMap) -> SpectrumPullback:
    """Levelwise pullback of X -> Y <- Z."""
    x, y, z = f.source, f.target, g.source
    if g.target is not y and not g.target.same_as(y):
        raise DimensionMismatchError("pullback needs maps with a common target")
    if any(s.tail_scalar != 1 for s in (x, y, z)):
        raise ValidationError("spectrum pullbacks need identity tails")
    top = max(x.tail_index, y.tail_index, z.tail_index)
    ident_k = ChainMap.identity(x.k)
    pbs = [chain.pullback(f.comp(n), g.comp(n)) for n in range(top + 2)]
    levels = [pb.complex for pb in pbs]
    sigmas = []
    for n in range(top + 1):
        u = x.sigma(n).compose(tensor_maps(pbs[n].left, ident_k))
        v = z.sigma(n).compose(tensor_maps(pbs[n].right, ident_k))
        sigmas.append(chain.induced_to_pullback(pbs[n + 1], u, v))
    if levels[top + 1] != tensor(levels[top], x.k) or scalar_of(sigmas[top]) != 1:
        raise ValidationError("pullback does not keep the suspension tail", level=top + 1)
    p = Spectrum(levels[:top + 1], sigmas[:top], k=x.k)
    left = SpectrumMap(p, x, [pbs[n].left for n in range(top + 1)])
    right = SpectrumMap(p, z, [pbs[n].right for n in range(top + 1)])
    return SpectrumPullback(p, left, right)


def has_spectrum_lift(i: SpectrumMap, p: SpectrumMap, u: SpectrumMap, v: SpectrumMap) -> Optional[SpectrumMap]:
    """A diagonal h: B -> X with h i = u and p h = v, or None."""
    a, b, x, y = i.source, i.target, p.source, p.target
    d = require_line(a.k)
    if p.compose(u) != v.compose(i):
        raise ValidationError("lifting square does not commute")
    top = max(a.tail_index, b.tail_index, x.tail_index, y.tail_index)
    field = a.field
    system = AffineSystem(field)
    idx: Dict[Tuple[int, int], int] = {}
    for n in range(top + 1):
        # degrees of A above B still constrain h i = u
        for m in range(max(a.level(n).top, b.level(n).top) + 1):
            idx[n, m] = system.add_unknown(x.level(n).dim(m), b.level(n).dim(m))

    def unknown(n, m):
        return idx.get((n, m))

    for n in range(top + 1):
        bn, xn = b.level(n), x.level(n)
        for m in range(max(a.level(n).top, bn.top) + 1):
            h = unknown(n, m)
            eye_x, eye_b = field.eye(xn.dim(m)), field.eye(bn.dim(m))
            system.add_equation([(eye_x, h, i.comp(n).mat(m))], u.comp(n).mat(m))
            system.add_equation([(p.comp(n).mat(m), h, eye_b)], v.comp(n).mat(m))
            if 1 <= m <= bn.top:
                system.add_equation([(field.eye(xn.dim(m - 1)), unknown(n, m - 1), bn.d(m)),
                                     (field.neg(xn.d(m)), h, eye_b)],
                                    field.zeros(xn.dim(m - 1), bn.dim(m)))
        if n < top:
            b1, x1 = b.level(n + 1), x.level(n + 1)
            for m in b1.degrees():
                terms = [(field.eye(x1.dim(m)), unknown(n + 1, m), b.sigma(n).mat(m))]
                if unknown(n, m - d) is not None:
                    terms.append((field.neg(x.sigma(n).mat(m)), unknown(n, m - d), field.eye(bn.dim(m - d))))
                system.add_equation(terms, field.zeros(x1.dim(m), bn.dim(m - d)))
    values = system.solve()
    if values is None:
        return None
    comps = []
    for n in range(top + 1):
        bn = b.level(n)
        comps.append(ChainMap(bn, x.level(n), [values[idx[n, m]] for m in bn.degrees()]))
    return SpectrumMap(b, x, comps)


def spectrum_map_space(a: Spectrum, x: Spectrum) -> Tuple[AffineSystem, Dict[Tuple[int, int], int], int]:
    """The affine system whose solutions are the spectrum maps a -> x."""
    d = require_line(a.k)
    field = a.field
    top = max(a.tail_index, x.tail_index)
    system = AffineSystem(field)
    idx: Dict[Tuple[int, int], int] = {}
    for n in range(top + 1):
        for m in a.level(n).degrees():
            idx[n, m] = system.add_unknown(x.level(n).dim(m), a.level(n).dim(m))
    for n in range(top + 1):
        an, xn = a.level(n), x.level(n)
        for m in range(1, an.top + 1):
            system.add_equation([(field.eye(xn.dim(m - 1)), idx[n, m - 1], an.d(m)),
                                 (field.neg(xn.d(m)), idx[n, m], field.eye(an.dim(m)))],
                                field.zeros(xn.dim(m - 1), an.dim(m)))
        if n < top:
            a1, x1 = a.level(n + 1), x.level(n + 1)
            for m in a1.degrees():
                terms = [(field.eye(x1.dim(m)), idx[n + 1, m], a.sigma(n).mat(m))]
                if (n, m - d) in idx:
                    terms.append((field.neg(x.sigma(n).mat(m)), idx[n, m - d], field.eye(an.dim(m - d))))
                system.add_equation(terms, field.zeros(x1.dim(m), an.dim(m - d)))
    return system, idx, top


def enumerate_spectrum_maps(a: Spectrum, x: Spectrum, limit: Optional[int] = None) -> List[SpectrumMap]:
    system, idx, top = spectrum_map_space(a, x)
    out = []
    for values in system.enumerate_solutions(limit):
        comps = [ChainMap(a.level(n), x.level(n), [values[idx[n, m]] for m in a.level(n).degrees()],
                          validate=False) for n in range(top + 1)]
        out.append(SpectrumMap(a, x, comps, validate=False))
    return out


def random_spectrum_map(a: Spectrum, x: Spectrum, rng: np.random.Generator) -> SpectrumMap:
    system, idx, top = spectrum_map_space(a, x)
    values = system.random_solution(rng)
    comps = [ChainMap(a.level(n), x.level(n), [values[idx[n, m]] for m in a.level(n).degrees()])
             for n in range(top + 1)]
    return SpectrumMap(a, x, comps)


def llp_oracle_targets(field, k: Optional[ChainComplex] = None, max_disk: int = 3) -> List[Spectrum]:
    """Spectra X with X -> 0 a level trivial fibration: F_n(D^j) and R_n(D^j)."""
    out = []
    for n in (0, 1):
        for j in range(1, max_disk + 1):
            out.append(free_spectrum(n, chain.disk(field, j), k))
            out.append(cofree(n, chain.disk(field, j), k))
    return out


def has_llp_against_oracle(f: SpectrumMap, targets: Sequence[Spectrum], limit: int = 4096) -> bool:
    """f lifts against every X -> 0 in ``targets``: each map A -> X extends along f."""
    for x in targets:
        zero = zero_spectrum(x.field, x.k)
        to_zero = SpectrumMap.zero(x, zero)
        for u in enumerate_spectrum_maps(f.source, x, limit):
            if has_spectrum_lift(f, to_zero, u, SpectrumMap.zero(f.target, zero)) is None:
                return False
    return True


# --- Adjunctions ---

def free_extension(n: int, phi: ChainMap, x: Spectrum) -> SpectrumMap:
    """The map F_n a -> X adjoint to phi: a -> X_n."""
    a = phi.source
    src = free_spectrum(n, a, x.k)
    top = max(n, x.tail_index)
    ident_k = ChainMap.identity(x.k)
    comps = [ChainMap.zero(src.level(m), x.level(m)) for m in range(n)]
    ext = phi
    for m in range(n, top + 1):
        comps.append(iterated_sigma(x, n, m - n).compose(ext))
        ext = tensor_maps(ext, ident_k)
    return SpectrumMap(src, x, comps)


def cofree_extension(n: int, psi: ChainMap, x: Spectrum) -> SpectrumMap:
    """The map X -> R_n a adjoint to psi: X_n -> a."""
    a = psi.target
    tgt = cofree(n, a, x.k)
    top = max(n + 1, x.tail_index)
    comps: List[ChainMap] = [None] * (top + 1)
    comps[n] = psi
    for m in range(n - 1, -1, -1):
        comps[m] = chain.adjoint_across_GU(comps[m + 1].compose(x.sigma(m)), x.level(m), x.k)
    for m in range(n + 1, top + 1):
        comps[m] = ChainMap.zero(x.level(m), tgt.level(m))
    return SpectrumMap(x, tgt, comps)


def cofree_map(n: int, g: ChainMap, k: ChainComplex) -> SpectrumMap:
    """R_n g: levelwise U^(n-m) g."""
    src, tgt = cofree(n, g.source, k), cofree(n, g.target, k)
    comps = [g]
    for _ in range(n):
        comps.insert(0, chain.loops_U_map(comps[0], k))
    comps.append(ChainMap.zero(src.level(n + 1), tgt.level(n + 1)))
    return SpectrumMap(src, tgt, comps)


def shift_adjunct(phi: SpectrumMap) -> SpectrumMap:
    """tX -> Y  gives  X -> sY; since s t X = X this is s(phi)."""
    return shift_s_map(phi)


def shift_adjunct_inverse(psi: SpectrumMap, y: Spectrum) -> SpectrumMap:
    """X -> sY  gives  tX -> Y."""
    x = psi.source
    if not shift_s(y).same_as(psi.target):
        raise DimensionMismatchError("map target is not sY")
    tx = shift_t(x)
    top = max(tx.tail_index, y.tail_index)
    comps = [ChainMap.zero(tx.level(0), y.level(0))] + [psi.comp(n - 1) for n in range(1, top + 1)]
    return SpectrumMap(tx, y, comps)


@dataclass
class AdjunctionReport:
    kind: str
    checked: int = 0
    failures: List[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_free_eval(n: int, a: ChainComplex, x: Spectrum, report: AdjunctionReport,
                    phi: Optional[ChainMap] = None) -> None:
    """F_n -| Ev_n. The unit a -> Ev_n F_n a is the identity of a."""
    report.checked += 1
    xn = x.level(n)
    counit_x = free_extension(n, ChainMap.identity(xn), x)
    if counit_x.comp(n) != ChainMap.identity(xn):
        report.failures.append(f"F{n}-Ev{n}: Ev(counit) o unit is not the identity on X_{n}")
    fa = free_spectrum(n, a, x.k)
    if free_extension(n, ChainMap.identity(a), fa) != SpectrumMap.identity(fa):
        report.failures.append(f"F{n}-Ev{n}: counit o F(unit) is not the identity on F_{n} a")
    if phi is not None:
        ext = free_extension(n, phi, x)
        if ext.comp(n) != phi:
            report.failures.append(f"F{n}-Ev{n}: Ev(extension) differs from phi")
        if free_extension(n, ext.comp(n), x) != ext:
            report.failures.append(f"F{n}-Ev{n}: extension of Ev(g) differs from g")


def check_eval_cofree(n: int, a: ChainComplex, x: Spectrum, report: AdjunctionReport,
                      psi: Optional[ChainMap] = None) -> None:
    """Ev_n -| R_n. The counit Ev_n R_n a -> a is the identity of a."""
    report.checked += 1
    unit_x = cofree_extension(n, ChainMap.identity(x.level(n)), x)
    if unit_x.comp(n) != ChainMap.identity(x.level(n)):
        report.failures.append(f"Ev{n}-R{n}: counit o Ev(unit) is not the identity on X_{n}")
    ra = cofree(n, a, x.k)
    if cofree_extension(n, ChainMap.identity(a), ra) != SpectrumMap.identity(ra):
        report.failures.append(f"Ev{n}-R{n}: R(counit) o unit is not the identity on R_{n} a")
    if psi is not None:
        ext = cofree_extension(n, psi, x)
        if ext.comp(n) != psi:
            report.failures.append(f"Ev{n}-R{n}: Ev(extension) differs from psi")
        if cofree_extension(n, ext.comp(n), x) != ext:
            report.failures.append(f"Ev{n}-R{n}: extension of Ev(g) differs from g")


def check_shift(x: Spectrum, y: Spectrum, report: AdjunctionReport, phi: Optional[SpectrumMap] = None) -> None:
    """t -| s. The unit X -> stX is the identity; the counit tsY -> Y is the identity from level 1."""
    report.checked += 1
    tx = shift_t(x)
    stx = shift_s(tx)
    unit = SpectrumMap(x, stx, [ChainMap.identity(x.level(n))
                                for n in range(max(x.tail_index, stx.tail_index) + 1)])
    if shift_adjunct_inverse(unit, tx) != SpectrumMap.identity(tx):
        report.failures.append("t-s: counit o t(unit) is not the identity")
    sy = shift_s(y)
    tsy = shift_t(sy)
    top = max(tsy.tail_index, y.tail_index)
    counit = SpectrumMap(tsy, y, [ChainMap.zero(tsy.level(0), y.level(0))] +
                         [ChainMap.identity(y.level(n)) for n in range(1, top + 1)])
    if shift_adjunct(counit) != SpectrumMap.identity(sy):
        report.failures.append("t-s: s(counit) o unit is not the identity")
    if phi is not None and shift_adjunct_inverse(shift_adjunct(phi), phi.target) != phi:
        report.failures.append("t-s: hom bijection does not round-trip")


ADJUNCTION_CHECKS = {
    "free-eval": check_free_eval,
    "eval-cofree": check_eval_cofree,
    "shift": check_shift,
}


def adjunction_check(kind: str, samples: Iterable[tuple]) -> AdjunctionReport:
    """
    Runs one adjunction's checks over samples: ``free-eval`` and
    ``eval-cofree`` take (n, a, x[, map]); ``shift`` takes (x, y[, phi]).
    """
    check = ADJUNCTION_CHECKS.get(kind)
    if check is None:
        raise ValidationError(f"unknown adjunction {kind!r}")
    report = AdjunctionReport(kind)
    arity = 2 if kind == "shift" else 3
    for sample in samples:
        check(*sample[:arity], report, *sample[arity:])
    return report
