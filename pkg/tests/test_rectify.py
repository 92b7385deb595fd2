# tests/test_rectify.py

import pytest
from pathlib import Path
import sys

from hypothesis import given, settings, strategies as st

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import chain, rectify, spectra
from core.chain import ChainMap
from core.corpus import RandomCorpus, builtin_spectrum
from core.errors import DimensionMismatchError

seeds = st.integers(min_value=0, max_value=10_000)
primes = st.sampled_from([2, 3])


# --- Evaluation for unit intervals ---

@pytest.mark.parametrize("p", [2, 3, 5])
def test_standard_interval_is_a_unit_interval(p):
    """
    Assesses the interval identities and that pi is a quasi-isomorphism.
    """
    interval = rectify.standard_interval(p)
    interval.check()
    assert interval.dims == (2, 1)
    assert chain.is_quasi_iso(interval.pi)


@pytest.mark.parametrize("p", [2, 3])
def test_amalgamated_interval(p):
    """
    Assesses that gluing two standard intervals end to end gives a unit interval of dims [3, 2].
    """
    interval = rectify.standard_interval(p)
    joined = rectify.amalgamate(interval, interval)
    joined.check()
    assert list(joined.complex.dims) == [3, 2]


# --- Evaluation for homotopies through the interval ---

@settings(max_examples=20, deadline=None)
@given(primes, seeds)
def test_chain_homotopies_and_interval_homotopies_correspond(p, seed):
    """
    Assesses that a chain homotopy survives the trip to a map a tensor I -> y and back.
    """
    rc = RandomCorpus(p, seed, max_degree=2, max_dim=2)
    a, y = rc.random_complex(), rc.random_acyclic()
    f, g = rc.random_chain_map(a, y), rc.random_chain_map(a, y)
    h = chain.find_homotopy(f, g)
    assert h is not None, "parallel maps into an acyclic complex are homotopic"
    big_h = rectify.homotopy_to_interval(h)
    start, end = rectify.endpoints(big_h, a, rectify.standard_interval(p))
    assert start == f and end == g, "the interval homotopy runs from f to g"
    back = rectify.interval_to_homotopy(big_h, a)
    assert [c.tolist() for c in back.comps] == [c.tolist() for c in h.comps]


def test_interval_to_homotopy_rejects_other_sources():
    p = 2
    a = chain.line(p)
    wrong = ChainMap.zero(a, a)
    with pytest.raises(DimensionMismatchError):
        rectify.interval_to_homotopy(wrong, a)


@settings(max_examples=15, deadline=None)
@given(primes, seeds)
def test_mapping_cylinder_square_commutes_strictly(p, seed):
    """
    Assesses that a homotopy-commutative square into an acyclic corner is strictified.
    """
    rc = RandomCorpus(p, seed, max_degree=2, max_dim=2)
    a, b, x = rc.random_complex(), rc.random_complex(), rc.random_complex()
    y = rc.random_acyclic()
    f, r = rc.random_chain_map(a, x), rc.random_chain_map(a, b)
    s, g = rc.random_chain_map(x, y), rc.random_chain_map(b, y)
    h = chain.find_homotopy(g.compose(r), s.compose(f))
    interval = rectify.standard_interval(p)
    sq = rectify.mapping_cylinder_square(f, r, s, g, rectify.homotopy_to_interval(h), interval)
    assert sq.q.compose(sq.r_prime) == r
    assert sq.g_prime.compose(sq.r_prime) == s.compose(f)
    assert chain.is_quasi_iso(sq.q)


# --- Evaluation for symmetry certificates and tensorings ---

@pytest.mark.parametrize("p", [2, 3])
def test_line_has_a_symmetry_certificate(p):
    """
    Assesses that the cyclic permutation of K^3 is the identity for a line in degree one.
    """
    cert = rectify.certify_symmetric(chain.line(p))
    assert cert is not None
    cert.check()
    assert cert.cyclic == ChainMap.identity(cert.cyclic.source)


def test_two_dimensional_k_has_no_certificate():
    """
    Assesses that a nontrivial permutation with zero differential is not homotopic to the identity.
    """
    k = chain.direct_sum(chain.unit(3), chain.unit(3))
    assert rectify.certify_symmetric(k) is None


@pytest.mark.parametrize("name", ["sphere", "F1S", "interval"])
def test_tensorings_are_linked_by_level_equivalences(name):
    """
    Assesses the zigzag between twisted and untwisted double tensoring, and its stable groups.
    """
    p = 3
    x = builtin_spectrum(name, p)
    cert = rectify.certify_symmetric(x.k)
    comp = rectify.compare_tensorings(x, cert)
    assert comp.to_no_twist.is_level_equivalence()
    assert comp.to_twist.is_level_equivalence()
    ks = range(-2, 3)
    assert [spectra.stable_pi(comp.spectrum, k) for k in ks] == [spectra.stable_pi(x, k - 2) for k in ks]


def test_compare_tensorings_needs_a_matching_certificate():
    x = builtin_spectrum("sphere", 2)
    cert = rectify.certify_symmetric(chain.line(2, 3))
    with pytest.raises(DimensionMismatchError):
        rectify.compare_tensorings(x, cert)


def test_rectification_needs_every_level():
    x = builtin_spectrum("F1S", 2)
    with pytest.raises(DimensionMismatchError):
        rectify.rectify_spectrum_map(x, x, [ChainMap.identity(x.level(0))], [])
