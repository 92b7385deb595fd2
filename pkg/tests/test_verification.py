# tests/test_verification.py

import pytest
from pathlib import Path
import sys

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import chain, corpus
from core.corpus import Builtin, RandomCorpus, builtin_spectrum
from core.errors import UnstableColimitError, ValidationError
from core.spectra import free_spectrum
from core.verification import CLAIMS, VerificationContext, resolve_suites, run_suites


def _small_context(**overrides) -> VerificationContext:
    knobs = dict(seed=1, primes=(2,), max_degree=2, max_dim=2, max_tail=2, random_count=1, samples=2)
    knobs.update(overrides)
    return VerificationContext(**knobs)


# --- Evaluation for the corpus ---

def test_random_corpus_is_deterministic():
    """
    Assesses that one seed always produces the same objects.
    """
    first, second = RandomCorpus(3, seed=11), RandomCorpus(3, seed=11)
    for _ in range(3):
        assert first.random_complex() == second.random_complex()
    assert first.random_spectrum().same_as(second.random_spectrum())


def test_corpus_contains_builtins_then_randoms():
    names = [name for name, _ in corpus.corpus(2, seed=4, random_count=2)]
    assert names[:len(corpus.BUILTINS)] == list(corpus.BUILTINS)
    assert names[-2:] == ["random-4-0", "random-4-1"]


def test_unknown_builtins_are_rejected():
    with pytest.raises(ValidationError):
        builtin_spectrum("moore", 2)
    with pytest.raises(ValidationError):
        corpus.builtin_symmetric("moore", 2)
    with pytest.raises(ValidationError):
        corpus.builtin_complex("moore", 2)
    with pytest.raises(ValidationError):
        RandomCorpus(2, max_dim=-1)


# --- Evaluation for suite selection ---

def test_suite_selection():
    """
    Assesses 'all', comma separated lists and unknown suite ids.
    """
    assert resolve_suites("all") == list(CLAIMS)
    assert len(CLAIMS) == 13
    assert resolve_suites("sphere-groups, adjunctions") == ["sphere-groups", "adjunctions"]
    with pytest.raises(ValidationError):
        resolve_suites("sphere-groups,not-a-suite")


# --- Evaluation for running suites ---

def test_sphere_suite_passes():
    report = run_suites("sphere-groups", _small_context())
    assert report.passed, report.render_table()
    assert report.counts() == {"total": 4, "passed": 4, "failed": 0}, "one sphere row and F1S, F2S, F3S"
    assert report.claims() == ["sphere-groups"]


def test_reports_are_reproducible():
    """
    Assesses that the same seed gives the same report, entry for entry.
    """
    first = run_suites("iota-naturality", _small_context(seed=3)).to_dict()
    second = run_suites("iota-naturality", _small_context(seed=3)).to_dict()
    assert first == second
    assert all("elapsed" not in e for e in first["entries"]), "timings are opt-in"


def test_broken_builtin_is_caught_with_a_replay(monkeypatch):
    """
    Assesses the negative control: a wrong 'sphere' makes the suite fail with a replay payload.
    """
    wrong = Builtin("sphere", "F_1 S posing as the sphere", lambda f: free_spectrum(1, chain.unit(f)))
    monkeypatch.setitem(corpus.BUILTINS, "sphere", wrong)
    report = run_suites("sphere-groups", _small_context(seed=9))
    assert not report.passed, "the suite should notice the wrong sphere"
    failure = report.failures[0]
    assert failure.instance.startswith("sphere")
    assert failure.replay["claim"] == "sphere-groups"
    assert failure.replay["seed"] == 9
    assert "spectrum" in failure.replay, "the offending spectrum is attached"
    assert "FAIL sphere-groups" in report.render_table()


def test_engine_errors_become_failures():
    ctx = _small_context()

    def unstable():
        raise UnstableColimitError("still changing", 3)

    entry = ctx.check("sphere-groups", "synthetic", unstable, lambda: {"note": "synthetic"})
    assert not entry.passed
    assert entry.detail.startswith("UnstableColimitError")
    assert entry.replay == {"claim": "sphere-groups", "seed": 1, "note": "synthetic"}


@pytest.mark.slow
def test_cheap_suites_pass_together():
    suites = "desuspension-maps,suspension-shift,unit-suspension,stabilization-agreement"
    report = run_suites(suites, _small_context(primes=(2, 3)))
    assert report.passed, report.render_table()
    assert set(report.claims()) == set(suites.split(","))


@pytest.mark.slow
def test_adjunction_suite_covers_the_symmetric_cofree_side():
    """
    Assesses that the adjunctions suite reports Ev_n -| R_n and the shift on generated builtins.
    """
    report = run_suites("adjunctions", _small_context(samples=2))
    assert report.passed, report.render_table()
    instances = [e.instance for e in report.entries]
    assert any(i.startswith("symmetric eval-cofree, 2 samples") for i in instances)
    assert any(i.startswith("symmetric shift, 8 samples") for i in instances), "two random pairs and six builtins"
