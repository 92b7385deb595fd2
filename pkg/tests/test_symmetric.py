# tests/test_symmetric.py

import pytest
from pathlib import Path
import sys

import numpy as np

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import chain, permutations as perms
from core import symmetric as sym
from core.chain import ChainMap, tensor
from core.corpus import builtin_symmetric
from core.errors import DimensionMismatchError, ValidationError
from core.spectra import AdjunctionReport


def _free_of(n: int, g: ChainMap) -> sym.SymmetricSpectrumMap:
    z = sym.free_sym(n, g.target)
    corner = sym.regular_rep(n, g.target).embed(perms.identity(n))
    return sym.free_sym_map(n, ChainMap(g.target, z.level(n).space, corner.mats).compose(g), z)


# --- Evaluation for representations and symmetric spectra ---

def test_representation_generators_must_be_involutions():
    """
    Assesses that a non-involutive generator is rejected.
    """
    space = chain.direct_sum(chain.unit(3), chain.unit(3))
    shear = ChainMap(space, space, [[[1, 1], [0, 1]]])
    with pytest.raises(ValidationError):
        sym.SymRep(2, space, [shear])
    with pytest.raises(DimensionMismatchError):
        sym.SymRep(3, space, [shear])


def test_swap_condition_needs_the_koszul_sign():
    """
    Assesses that Sigma_2 acting trivially on K tensor K violates the swap condition over F_3.
    """
    k = chain.line(3)
    field = k.field
    levels = [sym.sym_K_rep(0, k), sym.sym_K_rep(1, k), sym.SymRep.trivial(2, sym.sym_K_rep(2, k).space)]
    sigmas = [ChainMap(tensor(levels[n].space, k), levels[n + 1].space,
                       [field.eye(levels[n + 1].space.dim(m)) for m in levels[n + 1].space.degrees()])
              for n in range(2)]
    with pytest.raises(ValidationError):
        sym.SymmetricSpectrum(levels, sigmas, k=k)
    levels[2] = sym.sym_K_rep(2, k)
    sym.SymmetricSpectrum(levels, sigmas, k=k)  # validates


def test_free_spectrum_levels_count_cosets():
    """
    Assesses that level m of F_1 S has one copy of K^(m-1) per coset of Sigma_(m-1) in Sigma_m.
    """
    x = sym.free_sym(1, chain.unit(2))
    assert x.level(0).space.is_zero()
    for m in range(1, 4):
        assert x.level(m).space.dim(m - 1) == m, f"level {m} should have {m} generators"


def test_sym_bar_has_no_level_zero():
    bar = sym.sym_bar(chain.line(2))
    assert bar.level(0).space.is_zero()
    assert bar.level(3).space.dims == sym.sym_K(chain.line(2)).level(3).space.dims


# --- Evaluation for smash products ---

@pytest.mark.parametrize("name", ["sphere", "F1S", "F1K"])
def test_smash_units(name):
    """
    Assesses that Sym(K) is a two-sided unit up to level isomorphism.
    """
    x = builtin_symmetric(name, 3)
    assert sym.smash_left_unit(x).is_level_iso()
    assert sym.smash_right_unit(x).is_level_iso()


@pytest.mark.parametrize("n,m", [(0, 0), (1, 0), (0, 1), (1, 1)])
def test_smash_of_free_spectra_is_free(n, m):
    """
    Assesses F_n A smash F_m B = F_{n+m}(A tensor B) via the comparison map.
    """
    s, k = chain.unit(2), chain.line(2)
    assert sym.smash_free_comparison(n, k, m, s).is_level_iso()


def test_smash_is_stored_up_to_its_generating_level():
    """
    Assesses that sym-bar smash sym-bar keeps tail 3, not N_X + N_Y = 4.
    """
    bar = sym.sym_bar(chain.line(2))
    z = sym.smash(bar, bar)
    assert z.tail_index == 3
    assert sym.normalize_tail(z) is z, "the stored tail is already minimal"
    assert z.level(4).space.dims == sym.smash_level(bar, bar, 4).complex.dims, "level 4 is generated from level 3"


def test_normalize_tail_keeps_a_minimal_tail():
    x = sym.free_sym(2, chain.unit(2))
    assert sym.normalize_tail(x).tail_index == 2


# --- Evaluation for shifts, adjunctions and omega spectra ---

def test_symmetric_adjunctions():
    """
    Assesses the free/evaluation and shift adjunctions on small free spectra.
    """
    s, k = chain.unit(3), chain.line(3)
    free_eval, shift = AdjunctionReport("symmetric free-eval"), AdjunctionReport("symmetric shift")
    x = sym.free_sym(1, k)
    phi = ChainMap(s, x.level(1).space, [])
    sym.check_sym_free_eval(1, s, x, free_eval, phi)
    sym.check_sym_shift(sym.free_sym(0, s), sym.free_sym(1, k), shift)
    assert free_eval.passed, free_eval.failures
    assert shift.passed, shift.failures


@pytest.mark.parametrize("n", [0, 1])
@pytest.mark.parametrize("name", ["sphere", "sym-bar", "F1S"])
def test_symmetric_eval_cofree_adjunction(name, n):
    """
    Assesses Ev_n -| R_n: the triangle identities, and that a random map into R_n a
    is recovered from its level n.
    """
    rng = np.random.default_rng(11)
    x = builtin_symmetric(name, 3)
    report = AdjunctionReport("symmetric eval-cofree")
    for a in (chain.unit(3), chain.line(3)):
        g = sym.random_sym_map(x, sym.cofree_sym(n, a), rng)
        sym.check_sym_eval_cofree(n, a, x, report, g)
    assert report.passed, report.failures
    assert report.checked == 2


def test_cofree_extension_needs_an_equivariant_map():
    """
    Assesses that a map out of the regular representation which ignores the swap is refused.
    """
    s = chain.unit(2)
    x = sym.free_sym(2, s)
    psi = ChainMap(x.level(2).space, s, [[[1, 0]]])
    with pytest.raises(ValidationError):
        sym.cofree_sym_extension(2, psi, x)


def test_shift_adjunction_on_generated_builtins():
    """
    Assesses the t -| s triangle identities on spectra generated above level 0.
    """
    report = AdjunctionReport("symmetric shift")
    bar, f1k = builtin_symmetric("sym-bar", 3), builtin_symmetric("F1K", 3)
    sym.check_sym_shift(bar, f1k, report)
    sym.check_sym_shift(f1k, bar, report)
    assert report.passed, report.failures


def test_omega_spectra():
    assert sym.is_omega_spectrum(builtin_symmetric("sphere", 2))
    assert not sym.is_omega_spectrum(builtin_symmetric("F1K", 2)), "level 0 is zero but U(X_1) is not"


# --- Evaluation for naive homotopy ---

def test_naive_reading_of_the_sphere_is_stable():
    x = builtin_symmetric("sphere", 3)
    readings = [sym.naive_stable_pi(x, k) for k in range(-2, 3)]
    assert all(r.stable for r in readings)
    assert [r.value for r in readings] == [0, 0, 1, 0, 0]


def test_naive_reading_of_F1K_does_not_stabilize():
    """
    Assesses that the naive colimit for F_1 K keeps growing in degree zero.
    """
    reading = sym.naive_stable_pi(builtin_symmetric("F1K", 2), 0)
    assert not reading.stable
    assert reading.next_value > reading.value


# --- Evaluation for cofibrations ---

def test_free_map_of_an_injection_is_a_cofibration():
    """
    Assesses agreement of the latching test and the lifting oracle on F_0(S -> D^1).
    """
    p = 2
    incl = ChainMap(chain.unit(p), chain.disk(p, 1), [[[1]]])
    f = _free_of(0, incl)
    assert sym.is_sym_cofibration(f)
    assert sym.has_sym_llp_against_oracle(f, sym.sym_llp_oracle_targets(p))


def test_collapse_is_not_a_cofibration():
    p = 2
    f = _free_of(1, ChainMap.zero(chain.unit(p), chain.zero_complex(p)))
    assert not sym.is_sym_cofibration(f)
    assert not sym.has_sym_llp_against_oracle(f, sym.sym_llp_oracle_targets(p))
