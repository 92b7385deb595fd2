# tests/test_spectra.py

import pytest
from pathlib import Path
import sys

from hypothesis import given, settings, strategies as st

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import chain, spectra
from core.chain import ChainMap
from core.corpus import RandomCorpus, builtin_spectra, builtin_spectrum
from core.errors import DimensionMismatchError, NotALineError, UnstableColimitError, ValidationError
from core.spectra import SpectrumMap

seeds = st.integers(min_value=0, max_value=10_000)
primes = st.sampled_from([2, 3])


# --- Evaluation for spectra and spectrum maps ---

def test_spectrum_needs_matching_structure_maps():
    """
    Assesses that the number and shape of structure maps are validated.
    """
    s, k = chain.unit(2), chain.line(2)
    with pytest.raises(DimensionMismatchError):
        spectra.Spectrum([s, k], [], k=k)
    with pytest.raises(DimensionMismatchError):
        spectra.Spectrum([s, s], [ChainMap.zero(s, s)], k=k)


def test_levels_past_the_tail_are_suspensions():
    """
    Assesses X_{n+1} = X_n tensor K beyond the tail index, with identity structure maps.
    """
    x = builtin_spectrum("sphere", 3)
    assert x.tail_index == 0
    assert x.level(3).dims == chain.tensor_power(chain.line(3), 3).dims
    assert x.sigma(2).is_iso()
    assert x.level(-1).is_zero(), "negative levels are zero"


def test_map_beyond_the_tail_must_follow_the_tail_rule():
    """
    Assesses that an extra component contradicting f_n tensor K is rejected.
    """
    x = builtin_spectrum("sphere", 2)
    comps = [ChainMap.zero(x.level(0), x.level(0)), ChainMap.identity(x.level(1))]
    with pytest.raises(ValidationError):
        SpectrumMap(x, x, comps)


def test_structure_square_must_commute():
    """
    Assesses that a levelwise map which ignores the structure maps is rejected.
    """
    sphere, cone = builtin_spectrum("sphere", 2), builtin_spectrum("cone", 2)
    comps = [ChainMap.identity(sphere.level(0)), ChainMap.zero(sphere.level(1), cone.level(1))]
    with pytest.raises(ValidationError) as excinfo:
        SpectrumMap(sphere, cone, comps)
    assert excinfo.value.level == 0


# --- Evaluation for stable homotopy groups ---

@pytest.mark.parametrize("p", [2, 3, 5])
def test_sphere_has_one_stable_class_in_degree_zero(p):
    """
    Assesses pi_k of the sphere spectrum: F_p at k = 0, zero elsewhere.
    """
    x = builtin_spectrum("sphere", p)
    got = [spectra.stable_pi(x, k) for k in range(-5, 6)]
    assert got == [1 if k == 0 else 0 for k in range(-5, 6)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_free_desuspensions_shift_the_sphere(n):
    """
    Assesses that F_n S carries its class in degree -n.
    """
    x = builtin_spectrum(f"F{n}S", 2)
    assert spectra.stable_pi(x, -n) == 1
    assert spectra.stable_pi(x, 0) == 0


def test_cone_and_truncation_are_stably_trivial():
    """
    Assesses that killing S at level 1 kills every stable group.
    """
    for name in ("cone", "truncated", "disk"):
        x = builtin_spectrum(name, 2)
        assert all(spectra.stable_pi(x, k) == 0 for k in range(-3, 4)), f"{name} should be stably trivial"


def test_stable_pi_reports_its_stage():
    """
    Assesses that the reading stage lies past the tail.
    """
    x = builtin_spectrum("F2S", 3)
    value, stage = spectra.stable_pi_with_stage(x, -2)
    assert value == 1
    assert stage == x.tail_index + 2 + 1


def test_stable_pi_requires_a_line():
    """
    Assesses that a K with more than one generator is refused.
    """
    k = chain.direct_sum(chain.unit(2), chain.line(2))
    x = spectra.free_spectrum(0, chain.unit(2), k)
    with pytest.raises(NotALineError):
        spectra.stable_pi(x, 0)


@pytest.mark.parametrize("name", ["sphere", "F1S", "interval", "twocell", "cone", "cofree-disk"])
def test_shift_and_tensor_suspend(name):
    """
    Assesses pi_k(sX) = pi_{k-1}(X) and pi_k(X tensor K) = pi_{k-1}(X).
    """
    x = builtin_spectrum(name, 3)
    ks = range(-3, 4)
    base = [spectra.stable_pi(x, k - 1) for k in ks]
    assert [spectra.stable_pi(spectra.shift_s(x), k) for k in ks] == base
    assert [spectra.stable_pi(spectra.prolong_G_no_twist(x), k) for k in ks] == base


def test_direct_sum_adds_stable_groups():
    """
    Assesses additivity of pi_k.
    """
    x, y = builtin_spectrum("sphere", 2), builtin_spectrum("F1S", 2)
    z = spectra.direct_sum_spectra(x, y)
    for k in range(-2, 3):
        assert spectra.stable_pi(z, k) == spectra.stable_pi(x, k) + spectra.stable_pi(y, k)


# --- Evaluation for R-infinity and stable equivalences ---

@pytest.mark.parametrize("p", [2, 3])
def test_r_infinity_is_a_stable_replacement(p):
    """
    Assesses that R-infinity X is a U-spectrum and j_X a stable equivalence.
    """
    for name, x in builtin_spectra(p):
        st_ = spectra.r_infinity(x)
        assert spectra.is_U_spectrum(st_.spectrum), f"R-infinity {name} should be a U-spectrum"
        assert spectra.is_stable_equivalence(st_.j), f"j for {name} should be a stable equivalence"


def test_r_infinity_read_at_one_level():
    """
    Assesses reading R-infinity X at one level: the complex, its truncation and j there.
    """
    pv = spectra.r_infinity_at(builtin_spectrum("sphere", 2), 2, 1)
    assert pv.stage == 0, "the sphere is stable from its tail on"
    assert list(pv.complex.dims) == [0, 0, 1]
    assert pv.fragment.is_zero(), "degrees above the requested one are cut off"
    assert pv.j.is_iso()
    assert spectra.r_infinity_at(builtin_spectrum("sphere", 2), 2, 2).fragment == pv.complex

    cone = spectra.r_infinity_at(builtin_spectrum("cone", 2), 0, 2)
    assert cone.stage == 1
    assert all(cone.complex.homology(d) == 0 for d in range(3)), "R-infinity of the cone is acyclic"


def test_r_infinity_map_refuses_an_unsettled_stage():
    x = builtin_spectrum("cone", 2)
    with pytest.raises(UnstableColimitError):
        spectra.r_infinity_map(SpectrumMap.identity(x), stage=0)
    assert spectra.r_infinity_map(SpectrumMap.identity(x)).is_level_iso()


@pytest.mark.parametrize("name", ["sphere", "F1S"])
def test_stable_classes_agree_with_stable_pi(name):
    """
    Assesses that stable homotopy classes out of S count the stable groups.
    """
    x = builtin_spectrum(name, 3)
    for k in range(-2, 3):
        assert spectra.stable_classes(chain.unit(3), x, k) == spectra.stable_pi(x, k), f"k={k}"


def test_iota_is_natural():
    """
    Assesses iota_{RX} = R(iota_X) on the sphere and the cone.
    """
    for name in ("sphere", "cone"):
        x = builtin_spectrum(name, 2)
        rx, iota = spectra.R_once(x)
        _, iota_rx = spectra.R_once(rx)
        assert iota_rx == spectra.R_map(iota), f"iota should be natural on {name}"


@pytest.mark.parametrize("n", [0, 1, 2])
def test_desuspension_maps_are_stable_equivalences(n):
    """
    Assesses that s_n: F_{n+1}(A tensor K) -> F_n A is a stable but not a level equivalence.
    """
    s = chain.unit(2)
    f = spectra.map_s_n(n, s)
    assert spectra.is_stable_equivalence(f)
    assert not f.is_level_equivalence(), "level n of the source is zero"


def test_zero_map_out_of_the_sphere_is_not_a_stable_equivalence():
    x = builtin_spectrum("sphere", 2)
    assert not spectra.is_stable_equivalence(SpectrumMap.zero(x, x))


def test_twist_comparison_is_a_level_iso():
    """
    Assesses that the tensor-with-twist and untwisted prolongations agree up to level isomorphism.
    """
    x = builtin_spectrum("interval", 3)
    assert spectra.twist_comparison_map(x).is_level_iso()


# --- Evaluation for adjunctions ---

@settings(max_examples=15, deadline=None)
@given(primes, seeds)
def test_adjunctions_hold_on_random_samples(p, seed):
    """
    Assesses the free/evaluation, evaluation/cofree and shift adjunctions.
    """
    rc = RandomCorpus(p, seed, max_degree=2, max_dim=2, max_tail=2)
    n = seed % 3
    a, x = rc.random_complex(), rc.random_spectrum()
    b, y = rc.random_complex(), rc.random_spectrum()
    u, v = rc.random_spectrum(), rc.random_spectrum()
    free_eval = spectra.adjunction_check("free-eval", [(n, a, x, rc.random_chain_map(a, x.level(n)))])
    eval_cofree = spectra.adjunction_check("eval-cofree", [(n, b, y, rc.random_chain_map(y.level(n), b))])
    shift = spectra.adjunction_check("shift", [(u, v, spectra.random_spectrum_map(spectra.shift_t(u), v, rc.rng))])
    for report in (free_eval, eval_cofree, shift):
        assert report.passed, f"{report.kind}: {report.failures}"
        assert report.checked == 1


def test_unknown_adjunction_is_rejected():
    with pytest.raises(ValidationError):
        spectra.adjunction_check("loops-suspension", [])


# --- Evaluation for cofibrations, fibrations and pullbacks ---

def test_free_map_of_an_injection_is_a_cofibration():
    """
    Assesses that F_0(S -> D^1) has injective corner maps and lifts against the oracle.
    """
    p = 2
    incl = ChainMap(chain.unit(p), chain.disk(p, 1), [[[1]]])
    f = spectra.free_map(0, incl)
    assert spectra.is_projective_cofibration(f)
    assert spectra.has_llp_against_oracle(f, spectra.llp_oracle_targets(p))


def test_desuspension_map_is_not_a_cofibration():
    """
    Assesses that s_0 on S fails both the corner-map test and the lifting oracle.
    """
    p = 2
    f = spectra.map_s_n(0, chain.unit(p))
    assert not spectra.is_projective_cofibration(f)
    assert not spectra.has_llp_against_oracle(f, spectra.llp_oracle_targets(p))


def test_collapse_to_zero_is_not_a_cofibration():
    p = 2
    f = spectra.free_map(0, ChainMap.zero(chain.unit(p), chain.zero_complex(p)))
    assert not spectra.is_projective_cofibration(f)
    assert not spectra.has_llp_against_oracle(f, spectra.llp_oracle_targets(p))


def test_maps_to_zero_from_u_spectra_are_stable_fibrations():
    x = builtin_spectrum("sphere", 2)
    assert spectra.is_stable_fibration(SpectrumMap.zero(x, spectra.zero_spectrum(2)))
    assert spectra.is_stable_fibration(SpectrumMap.identity(x))


def test_pullback_along_an_identity():
    """
    Assesses that pulling back along id_Y returns the other leg's source.
    """
    x, y = builtin_spectrum("interval", 2), builtin_spectrum("sphere", 2)
    g = SpectrumMap.zero(x, y)
    pb = spectra.spectrum_pullback(SpectrumMap.identity(y), g)
    assert [c.dims for c in pb.spectrum.levels] == [c.dims for c in x.levels]
    assert pb.right.is_level_iso()
