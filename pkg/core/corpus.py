# core/corpus.py

"""
Builtin spectra and the seeded random generator used by the verification
suites, the CLI and the API.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from core import chain
from core.chain import ChainComplex, ChainMap, as_field, tensor
from core.errors import ValidationError
from core.linalg import PrimeField
from core.spectra import Spectrum, cofree, free_spectrum, sphere_spectrum
from core.rectify import standard_interval
from core.symmetric import SymmetricSpectrum, free_sym, sym_bar

logger = logging.getLogger(__name__)

FieldLike = Union[PrimeField, int]


def _cone(field: PrimeField) -> Spectrum:
    # S at level 0, D^2 at level 1; sigma_0 sends K onto the degree-1 generator
    s, d2, k = chain.unit(field), chain.disk(field, 2), chain.line(field)
    sigma = ChainMap(tensor(s, k), d2, [field.zeros(0, 0), field.eye(1)])
    return Spectrum([s, d2], [sigma], k=k)


def _truncated(field: PrimeField) -> Spectrum:
    s, k = chain.unit(field), chain.line(field)
    zero = chain.zero_complex(field)
    return Spectrum([s, zero], [ChainMap.zero(tensor(s, k), zero)], k=k)


@dataclass(frozen=True)
class Builtin:
    name: str
    description: str
    build: Callable[[PrimeField], Any]


BUILTINS: Dict[str, Builtin] = {b.name: b for b in [
    Builtin("sphere", "F_0 S, the sphere spectrum", sphere_spectrum),
    Builtin("F1S", "F_1 S, the first desuspension of the sphere", lambda f: free_spectrum(1, chain.unit(f))),
    Builtin("F2S", "F_2 S", lambda f: free_spectrum(2, chain.unit(f))),
    Builtin("F3S", "F_3 S", lambda f: free_spectrum(3, chain.unit(f))),
    Builtin("interval", "suspension spectrum of the standard interval",
            lambda f: free_spectrum(0, standard_interval(f).complex)),
    Builtin("disk", "suspension spectrum of D^2 (acyclic)", lambda f: free_spectrum(0, chain.disk(f, 2))),
    Builtin("twocell", "suspension spectrum of S + K with zero differential",
            lambda f: free_spectrum(0, chain.direct_sum(chain.unit(f), chain.line(f)))),
    Builtin("cone", "S at level 0 coned off by D^2 at level 1", _cone),
    Builtin("truncated", "S at level 0, zero above", _truncated),
    Builtin("cofree-disk", "R_1 D^2", lambda f: cofree(1, chain.disk(f, 2))),
]}


def builtin_spectrum(name: str, field: FieldLike = 2) -> Spectrum:
    builtin = BUILTINS.get(name)
    if builtin is None:
        raise ValidationError(f"unknown builtin spectrum {name!r}; choose from {', '.join(BUILTINS)}")
    return builtin.build(as_field(field))


def builtin_spectra(field: FieldLike = 2) -> List[Tuple[str, Spectrum]]:
    f = as_field(field)
    return [(name, b.build(f)) for name, b in BUILTINS.items()]


SYMMETRIC_BUILTINS: Dict[str, Builtin] = {b.name: b for b in [
    Builtin("sphere", "Sym(K) = F_0 S", lambda f: free_sym(0, chain.unit(f))),
    Builtin("F1S", "F_1 S, symmetric", lambda f: free_sym(1, chain.unit(f))),
    Builtin("F2S", "F_2 S, symmetric", lambda f: free_sym(2, chain.unit(f))),
    Builtin("F1K", "F_1 K, whose naive homotopy does not stabilize", lambda f: free_sym(1, chain.line(f))),
    Builtin("sym-bar", "Sym(K) with level 0 removed", lambda f: sym_bar(chain.line(f))),
    Builtin("disk", "F_0 D^2 (acyclic)", lambda f: free_sym(0, chain.disk(f, 2))),
]}


def builtin_symmetric_spectra(field: FieldLike = 2) -> List[Tuple[str, SymmetricSpectrum]]:
    f = as_field(field)
    return [(name, b.build(f)) for name, b in SYMMETRIC_BUILTINS.items()]


def builtin_symmetric(name: str, field: FieldLike = 2) -> SymmetricSpectrum:
    builtin = SYMMETRIC_BUILTINS.get(name)
    if builtin is None:
        raise ValidationError(f"unknown builtin symmetric spectrum {name!r}; "
                              f"choose from {', '.join(SYMMETRIC_BUILTINS)}")
    return builtin.build(as_field(field))


COMPLEX_BUILTINS: Dict[str, Builtin] = {b.name: b for b in [
    Builtin("S", "F_p in degree 0", chain.unit),
    Builtin("K", "F_p in degree 1", chain.line),
    Builtin("interval", "the standard unit interval", lambda f: standard_interval(f).complex),
    Builtin("D2", "the disk D^2 (acyclic)", lambda f: chain.disk(f, 2)),
    Builtin("zero", "the zero complex", chain.zero_complex),
]}


def builtin_complex(name: str, field: FieldLike = 2) -> ChainComplex:
    builtin = COMPLEX_BUILTINS.get(name)
    if builtin is None:
        raise ValidationError(f"unknown builtin complex {name!r}; choose from {', '.join(COMPLEX_BUILTINS)}")
    return builtin.build(as_field(field))


class RandomCorpus:
    """
    Seeded random complexes, chain maps and spectra.

    Complexes have at most ``max_degree + 1`` degrees and ``max_dim``
    generators per degree; spectra have tail index at most ``max_tail``.
    The same seed always produces the same sequence of objects.
    """

    def __init__(self, field: FieldLike = 2, seed: int = 1, max_degree: int = 4,
                 max_dim: int = 3, max_tail: int = 3):
        if max_degree < 0 or max_dim < 0 or max_tail < 0:
            raise ValidationError("corpus sizes must be non-negative")
        self.field = as_field(field)
        self.seed = seed
        self.max_degree = max_degree
        self.max_dim = max_dim
        self.max_tail = max_tail
        self.rng = np.random.default_rng(seed)

    def random_complex(self, max_degree: Optional[int] = None, max_dim: Optional[int] = None) -> ChainComplex:
        """Each d_n is chosen with columns in ker d_{n-1}, so d o d = 0 by construction."""
        f = self.field
        max_degree = self.max_degree if max_degree is None else max_degree
        max_dim = self.max_dim if max_dim is None else max_dim
        top = int(self.rng.integers(0, max_degree + 1))
        dims = [int(n) for n in self.rng.integers(0, max_dim + 1, size=top + 1)]
        diffs = []
        for n in range(1, top + 1):
            if n == 1:
                cycles = f.eye(dims[0])
            else:
                cycles, _ = f.kernel(diffs[-1])
            coeffs = f.random_matrix(self.rng, cycles.shape[1], dims[n])
            diffs.append(f.mul(cycles, coeffs))
        return ChainComplex(f, dims, diffs)

    def random_acyclic(self, max_disks: int = 3) -> ChainComplex:
        """A direct sum of disks D^m with 1 <= m <= max_degree."""
        top = max(self.max_degree, 1)
        count = int(self.rng.integers(1, max_disks + 1))
        disks = [chain.disk(self.field, int(self.rng.integers(1, top + 1))) for _ in range(count)]
        return chain.direct_sum(*disks)

    def random_chain_map(self, a: ChainComplex, b: ChainComplex) -> ChainMap:
        return chain.random_chain_map(a, b, self.rng)

    def random_spectrum(self, tail: Optional[int] = None, k: Optional[ChainComplex] = None) -> Spectrum:
        k = k if k is not None else chain.line(self.field)
        tail = int(self.rng.integers(0, self.max_tail + 1)) if tail is None else tail
        levels = [self.random_complex() for _ in range(tail + 1)]
        sigmas = [self.random_chain_map(tensor(levels[n], k), levels[n + 1]) for n in range(tail)]
        logger.debug("random spectrum: tail %d, dims %s", tail, [list(c.dims) for c in levels])
        return Spectrum(levels, sigmas, k=k)

    def spectra(self, count: int) -> List[Tuple[str, Spectrum]]:
        return [(f"random-{self.seed}-{i}", self.random_spectrum()) for i in range(count)]


def corpus(field: FieldLike = 2, seed: int = 1, random_count: int = 4, **sizes) -> List[Tuple[str, Spectrum]]:
    """The builtin spectra followed by ``random_count`` seeded random ones."""
    return builtin_spectra(field) + RandomCorpus(field, seed, **sizes).spectra(random_count)
