# tests/test_codec.py

import json
import pytest
from pathlib import Path
import sys

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import chain, codec, spectra
from core.chain import ChainMap
from core.corpus import builtin_spectrum, builtin_symmetric
from core.errors import CodecError, DimensionMismatchError, ValidationError
from core.rectify import standard_interval


# --- Evaluation for decoding ---

def test_interval_decodes_from_json_text():
    """
    Assesses decoding of the interval from the documented JSON form.
    """
    text = '{"p": 2, "dims": [2, 1], "diff": [[[1], [1]]]}'
    x = codec.load("complex", text)
    assert x.homology_dims() == [1, 0]
    assert x == standard_interval(2).complex


def test_unknown_fields_and_kinds_are_codec_errors():
    """
    Assesses that schema problems surface as CodecError, not pydantic errors.
    """
    with pytest.raises(CodecError):
        codec.load("complex", '{"p": 2, "dims": [1], "extra": true}')
    with pytest.raises(CodecError):
        codec.load("complex", "not json")
    with pytest.raises(CodecError):
        codec.load("operad", {})
    with pytest.raises(CodecError):
        codec.dump("operad", chain.unit(2))


def test_invalid_objects_keep_their_engine_errors():
    """
    Assesses that well-formed JSON describing a bad complex raises the engine's own errors.
    """
    with pytest.raises(ValidationError):
        codec.load("complex", {"p": 2, "dims": [1, 1, 1], "diff": [[[1]], [[1]]]})
    with pytest.raises(DimensionMismatchError):
        codec.load("complex", {"p": 2, "dims": [1, 1], "diff": []})
    with pytest.raises(DimensionMismatchError):
        codec.load("complex", {"p": 2, "dims": [1, 1], "diff": [[[1, 0]]]})


# --- Evaluation for encoding ---

@pytest.mark.parametrize("name", ["sphere", "cone", "truncated", "cofree-disk"])
def test_spectrum_survives_encoding(name):
    x = builtin_spectrum(name, 3)
    back = codec.load("spectrum", codec.dumps("spectrum", x))
    assert back.same_as(x)
    assert back.tail_index == x.tail_index


def test_spectrum_map_survives_encoding():
    """
    Assesses the spectrum-map form {"source", "target", "comps"}.
    """
    f = spectra.map_s_n(1, chain.unit(2))
    data = codec.dump("spectrum-map", f)
    assert set(data) == {"source", "target", "comps"}
    assert codec.load("spectrum-map", json.dumps(data)) == f


def test_symmetric_spectrum_survives_encoding():
    x = builtin_symmetric("F1K", 3)
    back = codec.load("symmetric", codec.dump("symmetric", x))
    assert back.tail_index == x.tail_index
    assert all(back.level(n) == x.level(n) for n in range(3))


def test_chain_map_encoding_is_plain_json():
    g = ChainMap(chain.unit(3), chain.disk(3, 1), [[[1]]])
    data = codec.dump("map", g)
    assert data["mats"] == [[[1]]]
    assert json.loads(codec.dumps("map", g, indent=2)) == data
