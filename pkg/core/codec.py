# core/codec.py

"""
JSON encodings of complexes, maps, spectra and symmetric spectra.

A ChainComplex is {"p", "dims", "diff"} with diff[n-1] the row-major matrix
of d_n. A ChainMap is {"source", "target", "mats"}. A spectrum is
{"levels", "sigmas", "tail_index"} with optional "k" and "tail_scalar"; a
spectrum map is {"source", "target", "comps"} with comps[n][m] the matrix
of f_n in degree m;
symmetric spectra list SymReps, which are complexes with "gens".
"""
import json
import logging
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as SchemaError

from core.chain import ChainComplex, ChainMap
from core.errors import CodecError, DimensionMismatchError
from core.spectra import Spectrum, SpectrumMap
from core.symmetric import SymmetricSpectrum, SymRep

logger = logging.getLogger(__name__)

Matrix = List[List[int]]


class ChainComplexModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: int
    dims: List[int]
    diff: List[Matrix] = Field(default_factory=list)


class ChainMapModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: ChainComplexModel
    target: ChainComplexModel
    mats: List[Matrix] = Field(default_factory=list)


class SpectrumModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    levels: List[ChainComplexModel]
    sigmas: List[ChainMapModel] = Field(default_factory=list)
    tail_index: int
    k: Optional[ChainComplexModel] = None
    tail_scalar: int = 1


class SpectrumMapModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: SpectrumModel
    target: SpectrumModel
    comps: List[List[Matrix]]


class SymRepModel(ChainComplexModel):
    gens: List[ChainMapModel] = Field(default_factory=list)


class SymmetricSpectrumModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    levels: List[SymRepModel]
    sigmas: List[ChainMapModel] = Field(default_factory=list)
    tail_index: int
    k: Optional[ChainComplexModel] = None


# --- Model <-> object ---

def _matrix(rows: Matrix, shape) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.size == 0:
        return m.reshape(shape)
    if m.shape != tuple(shape):
        raise DimensionMismatchError(f"matrix should have shape {tuple(shape)}, got {m.shape}")
    return m


def complex_from_model(model: ChainComplexModel) -> ChainComplex:
    dims = model.dims
    if len(model.diff) != max(len(dims) - 1, 0):
        raise DimensionMismatchError(f"{len(dims)} degrees need {max(len(dims) - 1, 0)} differentials, "
                                     f"got {len(model.diff)}")
    diffs = [_matrix(rows, (dims[n - 1], dims[n])) for n, rows in enumerate(model.diff, start=1)]
    return ChainComplex(model.p, dims, diffs)


def complex_to_model(x: ChainComplex) -> ChainComplexModel:
    return ChainComplexModel(p=x.field.p, dims=list(x.dims), diff=[x.d(n).tolist() for n in range(1, x.top + 1)])


def map_from_model(model: ChainMapModel) -> ChainMap:
    source, target = complex_from_model(model.source), complex_from_model(model.target)
    mats = [_matrix(rows, (target.dim(n), source.dim(n))) for n, rows in enumerate(model.mats)]
    return ChainMap(source, target, mats)


def map_to_model(f: ChainMap) -> ChainMapModel:
    return ChainMapModel(source=complex_to_model(f.source), target=complex_to_model(f.target),
                         mats=[m.tolist() for m in f.mats])


def spectrum_from_model(model: SpectrumModel) -> Spectrum:
    k = complex_from_model(model.k) if model.k is not None else None
    levels = [complex_from_model(c) for c in model.levels]
    sigmas = [map_from_model(s) for s in model.sigmas]
    return Spectrum(levels, sigmas, k=k, tail_index=model.tail_index, tail_scalar=model.tail_scalar)


def spectrum_to_model(x: Spectrum, include_k: bool = True) -> SpectrumModel:
    return SpectrumModel(levels=[complex_to_model(c) for c in x.levels],
                         sigmas=[map_to_model(s) for s in x.sigmas],
                         tail_index=x.tail_index,
                         k=complex_to_model(x.k) if include_k else None,
                         tail_scalar=x.tail_scalar)


def spectrum_map_from_model(model: SpectrumMapModel) -> SpectrumMap:
    source, target = spectrum_from_model(model.source), spectrum_from_model(model.target)
    comps = []
    for n, mats in enumerate(model.comps):
        a, b = source.level(n), target.level(n)
        comps.append(ChainMap(a, b, [_matrix(rows, (b.dim(m), a.dim(m))) for m, rows in enumerate(mats)]))
    return SpectrumMap(source, target, comps)


def spectrum_map_to_model(f: SpectrumMap) -> SpectrumMapModel:
    return SpectrumMapModel(source=spectrum_to_model(f.source), target=spectrum_to_model(f.target),
                            comps=[[m.tolist() for m in c.mats] for c in f.comps])


def sym_spectrum_from_model(model: SymmetricSpectrumModel) -> SymmetricSpectrum:
    if len(model.levels) != model.tail_index + 1:
        raise DimensionMismatchError(f"tail index {model.tail_index} needs {model.tail_index + 1} levels, "
                                     f"got {len(model.levels)}")
    k = complex_from_model(model.k) if model.k is not None else None
    levels = []
    for n, rep in enumerate(model.levels):
        space = complex_from_model(ChainComplexModel(p=rep.p, dims=rep.dims, diff=rep.diff))
        levels.append(SymRep(n, space, [map_from_model(g) for g in rep.gens]))
    sigmas = [map_from_model(s) for s in model.sigmas]
    return SymmetricSpectrum(levels, sigmas, k=k)


def sym_spectrum_to_model(x: SymmetricSpectrum) -> SymmetricSpectrumModel:
    levels = []
    for rep in x.levels:
        base = complex_to_model(rep.space)
        levels.append(SymRepModel(p=base.p, dims=base.dims, diff=base.diff,
                                  gens=[map_to_model(g) for g in rep.gens]))
    return SymmetricSpectrumModel(levels=levels, sigmas=[map_to_model(x.sigma(n)) for n in range(x.tail_index)],
                                  tail_index=x.tail_index, k=complex_to_model(x.k))


# --- JSON text ---

_KINDS = {
    "complex": (ChainComplexModel, complex_from_model, complex_to_model),
    "map": (ChainMapModel, map_from_model, map_to_model),
    "spectrum": (SpectrumModel, spectrum_from_model, spectrum_to_model),
    "spectrum-map": (SpectrumMapModel, spectrum_map_from_model, spectrum_map_to_model),
    "symmetric": (SymmetricSpectrumModel, sym_spectrum_from_model, sym_spectrum_to_model),
}


def load(kind: str, data: Union[str, bytes, Dict[str, Any]]):
    """Parses JSON text or an already decoded dict into a complex, map or spectrum."""
    if kind not in _KINDS:
        raise CodecError(f"unknown object kind {kind!r}")
    model_cls, build, _ = _KINDS[kind]
    try:
        if isinstance(data, (str, bytes)):
            model = model_cls.model_validate_json(data)
        else:
            model = model_cls.model_validate(data)
    except SchemaError as e:
        logger.warning("rejected %s input: %s", kind, e.errors()[:3])
        raise CodecError(f"input is not a valid {kind}: {e.error_count()} problem(s), "
                         f"first: {e.errors()[0]['msg']}") from e
    return build(model)


def dump(kind: str, obj) -> Dict[str, Any]:
    if kind not in _KINDS:
        raise CodecError(f"unknown object kind {kind!r}")
    return _KINDS[kind][2](obj).model_dump(exclude_none=True)


def dumps(kind: str, obj, indent: Optional[int] = None) -> str:
    return json.dumps(dump(kind, obj), indent=indent)
