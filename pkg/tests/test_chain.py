# tests/test_chain.py

import pytest
from pathlib import Path
import sys

import numpy as np
from hypothesis import given, settings, strategies as st

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import chain
from core.chain import ChainComplex, ChainMap, tensor
from core.corpus import RandomCorpus
from core.errors import DimensionMismatchError, PrimeMismatchError, ValidationError
from core.rectify import standard_interval

seeds = st.integers(min_value=0, max_value=10_000)
primes = st.sampled_from([2, 3])


# --- Evaluation for complexes and their validation ---

def test_d_squared_nonzero_is_rejected_with_degree():
    """
    Assesses that d o d != 0 raises a ValidationError naming the degree.
    """
    with pytest.raises(ValidationError) as excinfo:
        ChainComplex(2, [1, 1, 1], [[[1]], [[1]]])
    assert excinfo.value.degree == 2, "the failing composite is d_1 d_2"
    assert "degree 2" in str(excinfo.value)


def test_malformed_differential_shape():
    """
    Assesses that a differential of the wrong shape raises DimensionMismatchError.
    """
    with pytest.raises(DimensionMismatchError):
        ChainComplex(2, [1, 2], [[[1]]])


def test_standard_complexes_homology():
    """
    Assesses the homology of S, K, D^2 and the interval.
    """
    assert chain.unit(2).homology_dims() == [1]
    assert chain.line(3).homology_dims() == [0, 1]
    assert chain.disk(2, 2).is_acyclic(), "disks are acyclic"
    assert standard_interval(2).complex.homology_dims() == [1, 0], "the interval is contractible to a point"
    assert chain.zero_complex(2).is_zero()
    assert chain.line(2).homology(7) == 0, "homology vanishes above the top degree"


def test_trailing_zero_degrees_are_dropped():
    """
    Assesses that trailing zero dimensions do not count towards the top degree.
    """
    x = ChainComplex(2, [1, 0, 0])
    assert x.top == 0
    assert x == chain.unit(2), "complexes compare by prime, dims and differentials"


def test_mixed_primes_are_rejected():
    """
    Assesses that combining complexes over different fields raises PrimeMismatchError.
    """
    with pytest.raises(PrimeMismatchError):
        tensor(chain.unit(2), chain.unit(3))


# --- Evaluation for chain maps ---

def test_chain_map_must_commute_with_differential():
    """
    Assesses that a non-chain map is rejected and identities compose to identities.
    """
    d1 = chain.disk(2, 1)
    with pytest.raises(ValidationError):
        ChainMap(d1, d1, [[[1]], [[0]]])
    ident = ChainMap.identity(d1)
    assert ident.compose(ident) == ident
    assert ident.is_iso()


@settings(max_examples=25, deadline=None)
@given(primes, seeds)
def test_random_chain_maps_are_chain_maps(p, seed):
    """
    Assesses that sampled chain maps validate and compose.
    """
    rc = RandomCorpus(p, seed)
    a, b = rc.random_complex(), rc.random_complex()
    f = rc.random_chain_map(a, b)
    ChainMap(a, b, f.mats)  # validates
    assert f.compose(ChainMap.identity(a)) == f


# --- Evaluation for tensor products ---

@settings(max_examples=25, deadline=None)
@given(primes, seeds)
def test_tensor_unit_law(p, seed):
    """
    Assesses S tensor X = X = X tensor S exactly.
    """
    x = RandomCorpus(p, seed).random_complex()
    s = chain.unit(p)
    assert tensor(s, x) == x
    assert tensor(x, s) == x


@settings(max_examples=25, deadline=None)
@given(primes, seeds)
def test_tensor_kunneth(p, seed):
    """
    Assesses that over a field the homology of A tensor B is the convolution of the homologies.
    """
    rc = RandomCorpus(p, seed, max_degree=3, max_dim=2)
    a, b = rc.random_complex(), rc.random_complex()
    t = tensor(a, b)
    for n in range(t.top + 1):
        expected = sum(a.homology(i) * b.homology(n - i) for i in range(n + 1))
        assert t.homology(n) == expected, f"Kunneth fails in degree {n}"


@settings(max_examples=25, deadline=None)
@given(primes, seeds)
def test_twist_is_an_involution(p, seed):
    """
    Assesses that the signed twist squares to the identity.
    """
    rc = RandomCorpus(p, seed, max_degree=3, max_dim=2)
    a, b = rc.random_complex(), rc.random_complex()
    back_and_forth = chain.twist(b, a).compose(chain.twist(a, b))
    assert back_and_forth == ChainMap.identity(tensor(a, b))


def test_twist_of_two_lines_carries_the_koszul_sign():
    """
    Assesses that swapping two copies of K (degree 1) is multiplication by -1.
    """
    k = chain.line(3)
    tw = chain.twist(k, k)
    assert tw.mat(2).tolist() == [[2]], "-1 mod 3"


def test_associator_is_an_isomorphism():
    """
    Assesses that the associator is an isomorphism of chain complexes.
    """
    k, i = chain.line(2), standard_interval(2).complex
    assoc = chain.associator(k, i, k)
    ChainMap(assoc.source, assoc.target, assoc.mats)  # validates
    assert assoc.is_iso()


# --- Evaluation for the loop functor and adjunction ---

@settings(max_examples=20, deadline=None)
@given(primes, seeds)
def test_adjoint_across_tensor_and_loops_round_trips(p, seed):
    """
    Assesses that f: A tensor K -> X and its adjoint A -> U X determine each other.
    """
    rc = RandomCorpus(p, seed, max_degree=3, max_dim=2)
    k = chain.line(p)
    a, x = rc.random_complex(), rc.random_complex()
    f = rc.random_chain_map(tensor(a, k), x)
    adj = chain.adjoint_across_GU(f, a, k)
    assert chain.adjoint_inverse(adj, x, k) == f


def test_loops_of_a_shifted_line():
    """
    Assesses U(K tensor K) = K for the degree-one line.
    """
    k = chain.line(2)
    assert chain.loops_U(tensor(k, k), k).dims == k.dims


# --- Evaluation for homotopies and lifting ---

def test_homotopies_detect_contractibility():
    """
    Assesses that the identity of a disk is null-homotopic but the identity of S is not.
    """
    d2 = chain.disk(3, 2)
    h = chain.find_homotopy(ChainMap.zero(d2, d2), ChainMap.identity(d2))
    assert h is not None, "disks are contractible"
    s = chain.unit(3)
    assert chain.find_homotopy(ChainMap.zero(s, s), ChainMap.identity(s)) is None


@settings(max_examples=20, deadline=None)
@given(primes, seeds)
def test_homotopy_classes_from_the_unit_are_zeroth_homology(p, seed):
    """
    Assesses that chain maps S -> X up to homotopy are counted by H_0(X).
    """
    x = RandomCorpus(p, seed).random_complex()
    assert chain.homotopy_classes(chain.unit(p), x) == x.homology(0)


def test_lifting_against_a_trivial_fibration():
    """
    Assesses has_lift for S -> D^1 against D^1 -> 0, and its failure for S -> 0.
    """
    field = 2
    s, d1, zero = chain.unit(field), chain.disk(field, 1), chain.zero_complex(field)
    incl = ChainMap(s, d1, [[[1]]])
    to_zero = ChainMap.zero(d1, zero)
    lift = chain.has_lift(incl, to_zero, incl, ChainMap.zero(d1, zero))
    assert lift is not None
    assert lift.compose(incl) == incl, "the lift extends f along i"
    collapse = ChainMap.zero(s, zero)
    assert chain.has_lift(collapse, to_zero, incl, ChainMap.zero(zero, zero)) is None


def test_pushout_of_zero_maps_is_a_direct_sum():
    """
    Assesses that gluing along the zero complex gives the direct sum.
    """
    zero = chain.zero_complex(3)
    b, c = chain.line(3), chain.disk(3, 2)
    po = chain.pushout(ChainMap.zero(zero, b), ChainMap.zero(zero, c))
    assert po.complex.dims == chain.direct_sum(b, c).dims


def test_pullback_along_identity():
    """
    Assesses that pulling back along an identity returns the other source.
    """
    x = chain.disk(2, 2)
    y = standard_interval(2).complex
    g = ChainMap.zero(x, y)
    pb = chain.pullback(ChainMap.identity(y), g)
    assert pb.complex.dims == x.dims
    assert pb.right.is_iso()
