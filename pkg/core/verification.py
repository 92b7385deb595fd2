# core/verification.py

"""
Verification suites: each claim is checked exactly on seeded and builtin
instances and recorded as ReportEntry rows. Failing rows carry a replay
payload with the offending objects in their JSON encoding.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from core import chain, codec, rectify, spectra
from core import permutations as perms
from core import symmetric as sym
from core.chain import ChainComplex, ChainMap
from core.corpus import RandomCorpus, builtin_spectra, builtin_spectrum, builtin_symmetric_spectra
from core.errors import StabilizerError, ValidationError
from core.spectra import ProbeGrid, Spectrum, SpectrumMap

logger = logging.getLogger(__name__)

Outcome = Union[bool, Tuple[bool, str]]


@dataclass
class ReportEntry:
    claim: str
    statement: str
    instance: str
    passed: bool
    elapsed: float = 0.0
    detail: str = ""
    replay: Optional[Dict[str, Any]] = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        out = {"claim": self.claim, "statement": self.statement, "instance": self.instance,
               "verdict": self.verdict}
        if self.detail:
            out["detail"] = self.detail
        if self.replay is not None:
            out["replay"] = self.replay
        if timings:
            out["elapsed"] = round(self.elapsed, 4)
        return out


@dataclass
class VerificationReport:
    seed: int
    primes: Tuple[int, ...]
    entries: List[ReportEntry] = field(default_factory=list)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: e.claim)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> List[ReportEntry]:
        return [e for e in self.entries if not e.passed]

    def claims(self) -> List[str]:
        return sorted({e.claim for e in self.entries})

    def counts(self) -> Dict[str, int]:
        failed = len(self.failures)
        return {"total": len(self.entries), "passed": len(self.entries) - failed, "failed": failed}

    def render_table(self, timings: bool = False) -> str:
        rows = [(e.claim, e.instance, e.verdict) + ((f"{e.elapsed:.3f}s",) if timings else ())
                for e in self.entries]
        header = ("claim", "instance", "verdict") + (("elapsed",) if timings else ())
        widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
        lines = ["  ".join(str(c).ljust(w) for c, w in zip(header, widths)).rstrip(),
                 "  ".join("-" * w for w in widths)]
        lines += ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        for e in self.failures:
            lines.append(f"FAIL {e.claim} [{e.instance}]: {e.detail or e.statement}")
        c = self.counts()
        lines.append(f"{c['passed']}/{c['total']} checks passed across {len(self.claims())} claims")
        return "\n".join(lines)

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        return {"seed": self.seed, "primes": list(self.primes), "passed": self.passed,
                "counts": self.counts(), "entries": [e.to_dict(timings) for e in self.entries]}


@dataclass
class VerificationContext:
    """Seed, primes and size knobs shared by every suite, plus the collected entries."""
    seed: int = 1
    primes: Tuple[int, ...] = (2, 3)
    max_degree: int = 4
    max_dim: int = 3
    max_tail: int = 3
    random_count: int = 10
    samples: int = 50
    grid: ProbeGrid = field(default_factory=ProbeGrid)
    entries: List[ReportEntry] = field(default_factory=list)
    _corpora: Dict[int, List[Tuple[str, Spectrum]]] = field(default_factory=dict, repr=False)

    def random(self, p: int, stream: int = 0, **sizes) -> RandomCorpus:
        """An independent seeded generator per (prime, stream)."""
        knobs = {"max_degree": self.max_degree, "max_dim": self.max_dim, "max_tail": self.max_tail}
        knobs.update(sizes)
        return RandomCorpus(p, seed=self.seed * 1000 + stream, **knobs)

    def corpus(self, p: int) -> List[Tuple[str, Spectrum]]:
        if p not in self._corpora:
            rc = self.random(p, stream=0)
            randoms = [(f"random-{self.seed}-{i}", rc.random_spectrum()) for i in range(self.random_count)]
            self._corpora[p] = builtin_spectra(p) + randoms
        return self._corpora[p]

    def check(self, claim: str, instance: str, test: Callable[[], Outcome],
              replay: Optional[Callable[[], Dict[str, Any]]] = None) -> ReportEntry:
        start = time.perf_counter()
        try:
            outcome = test()
            passed, detail = (outcome, "") if isinstance(outcome, bool) else outcome
        except StabilizerError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        payload = None
        if not passed:
            logger.warning("claim %s failed on %s: %s", claim, instance, detail)
            payload = {"claim": claim, "seed": self.seed}
            if replay is not None:
                try:
                    payload.update(replay())
                except StabilizerError as e:
                    payload["error"] = str(e)
        entry = ReportEntry(claim, CLAIMS[claim].statement, instance, bool(passed), elapsed, detail, payload)
        self.entries.append(entry)
        return entry


def _expect(got, expected) -> Tuple[bool, str]:
    return got == expected, f"got {got}, expected {expected}"


def _spectrum_replay(**objs: Spectrum) -> Callable[[], Dict[str, Any]]:
    return lambda: {name: codec.dump("spectrum", x) for name, x in objs.items()}


def _complex_replay(**objs: ChainComplex) -> Callable[[], Dict[str, Any]]:
    return lambda: {name: codec.dump("complex", c) for name, c in objs.items()}


def _test_complexes(ctx: VerificationContext, p: int, stream: int, randoms: int = 1) -> List[Tuple[str, ChainComplex]]:
    """S, K, the standard interval and seeded random complexes."""
    rc = ctx.random(p, stream, max_degree=2, max_dim=2)
    out = [("S", chain.unit(p)), ("K", chain.line(p)), ("I", rectify.standard_interval(p).complex)]
    out += [(f"random-{ctx.seed}-{i}", rc.random_complex()) for i in range(randoms)]
    return out


# --- Stable homotopy of spheres ---

def check_sphere_groups(ctx: VerificationContext) -> None:
    for p in ctx.primes:
        x = builtin_spectrum("sphere", p)
        ctx.check("sphere-groups", f"sphere, p={p}, k=-5..5",
                  lambda x=x: _expect([spectra.stable_pi(x, k) for k in range(-5, 6)],
                                      [1 if k == 0 else 0 for k in range(-5, 6)]),
                  _spectrum_replay(spectrum=x))
        for n in (1, 2, 3):
            x = builtin_spectrum(f"F{n}S", p)
            ctx.check("sphere-groups", f"F{n}S, p={p}, k={-n}",
                      lambda x=x, n=n: _expect(spectra.stable_pi(x, -n), 1), _spectrum_replay(spectrum=x))


# --- R and R-infinity ---

def check_iota_naturality(ctx: VerificationContext) -> None:
    def test(x: Spectrum) -> bool:
        rx, iota = spectra.R_once(x)
        _, iota_rx = spectra.R_once(rx)
        return iota_rx == spectra.R_map(iota)

    for p in ctx.primes:
        for name, x in ctx.corpus(p):
            ctx.check("iota-naturality", f"{name}, p={p}", lambda x=x: test(x), _spectrum_replay(spectrum=x))


def check_stable_replacement(ctx: VerificationContext) -> None:
    def test(x: Spectrum) -> Outcome:
        st = spectra.r_infinity(x)
        if not spectra.is_U_spectrum(st.spectrum, ctx.grid.max_level):
            return False, "R-infinity X is not a U-spectrum"
        if not spectra.is_stable_equivalence(st.j, ctx.grid):
            return False, "j_X is not a stable equivalence"
        if not spectra.r_infinity(st.spectrum).j.is_level_equivalence():
            return False, "j of a U-spectrum is not a level equivalence"
        return True

    for p in ctx.primes:
        for name, x in ctx.corpus(p):
            ctx.check("stable-replacement", f"{name}, p={p}", lambda x=x: test(x), _spectrum_replay(spectrum=x))


def check_desuspension_maps(ctx: VerificationContext) -> None:
    for p in ctx.primes:
        for name, a in _test_complexes(ctx, p, stream=4):
            for n in range(4):
                ctx.check("desuspension-maps", f"s_{n} on {name}, p={p}",
                          lambda n=n, a=a: spectra.is_stable_equivalence(spectra.map_s_n(n, a), ctx.grid),
                          _complex_replay(a=a))


def check_suspension_shift(ctx: VerificationContext) -> None:
    ks = range(-4, 5)

    def test(x: Spectrum) -> Outcome:
        base = [spectra.stable_pi(x, k - 1) for k in ks]
        shifted = [spectra.stable_pi(spectra.shift_s(x), k) for k in ks]
        if shifted != base:
            return False, f"shift: got {shifted}, expected {base}"
        tensored = [spectra.stable_pi(spectra.prolong_G_no_twist(x), k) for k in ks]
        return _expect(tensored, base)

    for p in ctx.primes:
        for name, x in ctx.corpus(p):
            ctx.check("suspension-shift", f"{name}, p={p}, |k|<=4", lambda x=x: test(x), _spectrum_replay(spectrum=x))


# --- Adjunctions ---

def check_adjunctions(ctx: VerificationContext) -> None:
    for p in ctx.primes:
        rc = ctx.random(p, stream=6, max_degree=2, max_dim=2, max_tail=2)
        free_eval, eval_cofree, shift = [], [], []
        for i in range(ctx.samples):
            n = i % 3
            a, x = rc.random_complex(), rc.random_spectrum()
            free_eval.append((n, a, x, rc.random_chain_map(a, x.level(n))))
            b, y = rc.random_complex(), rc.random_spectrum()
            eval_cofree.append((n, b, y, rc.random_chain_map(y.level(n), b)))
            u, v = rc.random_spectrum(), rc.random_spectrum()
            shift.append((u, v, spectra.random_spectrum_map(spectra.shift_t(u), v, rc.rng)))
        for kind, samples in (("free-eval", free_eval), ("eval-cofree", eval_cofree), ("shift", shift)):
            report = spectra.adjunction_check(kind, samples)
            ctx.check("adjunctions", f"{kind}, {report.checked} samples, p={p}",
                      lambda report=report: (report.passed, "; ".join(report.failures[:3])),
                      lambda report=report: {"failures": report.failures})

        small = ctx.random(p, stream=7, max_degree=1, max_dim=1)
        sym_free = spectra.AdjunctionReport("symmetric free-eval")
        sym_cofree = spectra.AdjunctionReport("symmetric eval-cofree")
        sym_shift = spectra.AdjunctionReport("symmetric shift")
        generated = [x for _, x in builtin_symmetric_spectra(p)]
        for i in range(ctx.samples):
            n, m = i % 3, (i // 3) % 2
            a, b = small.random_complex(), small.random_complex()
            x = sym.free_sym(m, b)
            sym.check_sym_free_eval(n, a, x, sym_free, small.random_chain_map(a, x.level(n).space))
            y = generated[i % len(generated)] if i % 2 else x
            g = sym.random_sym_map(y, sym.cofree_sym(n % 2, a), small.rng)
            sym.check_sym_eval_cofree(n % 2, a, y, sym_cofree, g)
            sym.check_sym_shift(sym.free_sym(i % 2, a), sym.free_sym(m, b), sym_shift)
        for i, x in enumerate(generated):
            sym.check_sym_shift(x, generated[(i + 1) % len(generated)], sym_shift)
        for report in (sym_free, sym_cofree, sym_shift):
            ctx.check("adjunctions", f"{report.kind}, {report.checked} samples, p={p}",
                      lambda report=report: (report.passed, "; ".join(report.failures[:3])),
                      lambda report=report: {"failures": report.failures})


# --- Cofibrations against lifting ---

def _small_complexes(p: int) -> List[ChainComplex]:
    s, k = chain.unit(p), chain.line(p)
    return [chain.zero_complex(p), s, k, chain.line(p, 2), chain.disk(p, 1), chain.disk(p, 2),
            chain.direct_sum(s, s), chain.direct_sum(s, k), chain.direct_sum(chain.disk(p, 1), s)]


def _small_chain_maps(p: int, max_total: int = 3) -> List[ChainMap]:
    """Every chain map between small complexes whose total dimensions add up to at most ``max_total``."""
    cs = _small_complexes(p)
    return [g for a in cs for b in cs if a.total_dim + b.total_dim <= max_total
            for g in chain.enumerate_chain_maps(a, b)]


def _free_sym_of(n: int, g: ChainMap) -> sym.SymmetricSpectrumMap:
    z = sym.free_sym(n, g.target)
    corner = sym.regular_rep(n, g.target).embed(perms.identity(n))
    return sym.free_sym_map(n, ChainMap(g.target, z.level(n).space, corner.mats).compose(g), z)


def check_cofibration_lifting(ctx: VerificationContext) -> None:
    """
    Free maps, desuspension maps, identities and maps to zero over F_2: on
    these the level trivial fibrations X -> 0 with X built from disks
    already witness every failure of the corner maps.
    """
    p = 2
    targets = spectra.llp_oracle_targets(p)
    sym_targets = sym.sym_llp_oracle_targets(p)
    maps = []
    for i, g in enumerate(_small_chain_maps(p)):
        for n in (0, 1):
            maps.append((f"F{n}(map {i}: {list(g.source.dims)}->{list(g.target.dims)})", spectra.free_map(n, g)))
    for name, a in (("S", chain.unit(p)), ("K", chain.line(p)), ("D1", chain.disk(p, 1))):
        maps.append((f"s_0 on {name}", spectra.map_s_n(0, a)))
    for name in ("sphere", "twocell", "cone", "truncated"):
        x = builtin_spectrum(name, p)
        maps.append((f"identity of {name}", SpectrumMap.identity(x)))
        maps.append((f"{name} -> 0", SpectrumMap.zero(x, spectra.zero_spectrum(p))))

    def agree(f: SpectrumMap) -> Outcome:
        structural = spectra.is_projective_cofibration(f)
        lifting = spectra.has_llp_against_oracle(f, targets)
        return structural == lifting, f"corner maps say {structural}, lifting says {lifting}"

    for name, f in maps:
        ctx.check("cofibration-lifting", f"{name}, p={p}", lambda f=f: agree(f),
                  _spectrum_replay(source=f.source, target=f.target))

    def sym_agree(f: sym.SymmetricSpectrumMap) -> Outcome:
        structural = sym.is_sym_cofibration(f)
        lifting = sym.has_sym_llp_against_oracle(f, sym_targets)
        return structural == lifting, f"latching maps say {structural}, lifting says {lifting}"

    for i, g in enumerate(_small_chain_maps(p)):
        for n in (0, 1):
            ctx.check("cofibration-lifting",
                      f"symmetric F{n}(map {i}: {list(g.source.dims)}->{list(g.target.dims)}), p={p}",
                      lambda n=n, g=g: sym_agree(_free_sym_of(n, g)),
                      lambda g=g: {"map": codec.dump("map", g)})


# --- Smash products ---

def check_smash_monoidal(ctx: VerificationContext) -> None:
    for p in ctx.primes:
        s, k = chain.unit(p), chain.line(p)
        interval = rectify.standard_interval(p).complex
        xs = [("F0 S", sym.free_sym(0, s)), ("F1 S", sym.free_sym(1, s)), ("F0 K", sym.free_sym(0, k)),
              ("F1 I", sym.free_sym(1, interval))]
        for name, x in xs:
            ctx.check("smash-monoidal", f"left unit on {name}, p={p}",
                      lambda x=x: sym.smash_left_unit(x).is_level_iso())
            ctx.check("smash-monoidal", f"right unit on {name}, p={p}",
                      lambda x=x: sym.smash_right_unit(x).is_level_iso())
        pairs = [(("S", s), ("S", s)), (("K", k), ("S", s)), (("S", s), ("K", k))]
        for (an, a), (bn, b) in pairs:
            for n in range(3):
                for m in range(3):
                    ctx.check("smash-monoidal", f"F{n} {an} smash F{m} {bn}, p={p}",
                              lambda n=n, a=a, m=m, b=b: sym.smash_free_comparison(n, a, m, b).is_level_iso(),
                              _complex_replay(a=a, b=b))


# --- Intervals and rectification ---

def check_interval_toolkit(ctx: VerificationContext) -> None:
    for p in ctx.primes:
        interval = rectify.standard_interval(p)
        ctx.check("interval-toolkit", f"standard interval, p={p}", lambda interval=interval: interval.check() or True)

        def amalgam(interval=interval) -> Outcome:
            j = rectify.amalgamate(interval, interval)
            j.check()
            return _expect(list(j.complex.dims), [3, 2])

        ctx.check("interval-toolkit", f"amalgamated interval, p={p}", amalgam)

        rc = ctx.random(p, stream=9, max_degree=2, max_dim=2)
        for i in range(30):
            a, b, x = rc.random_complex(), rc.random_complex(), rc.random_complex()
            y = rc.random_acyclic()
            f, r = rc.random_chain_map(a, x), rc.random_chain_map(a, b)
            s, g = rc.random_chain_map(x, y), rc.random_chain_map(b, y)

            def square(a=a, f=f, r=r, s=s, g=g) -> Outcome:
                h = chain.find_homotopy(g.compose(r), s.compose(f))
                if h is None:
                    return False, "no homotopy into an acyclic target"
                H = rectify.homotopy_to_interval(h)
                back = rectify.interval_to_homotopy(H, a)
                if [c.tolist() for c in back.comps] != [c.tolist() for c in h.comps]:
                    return False, "interval form does not convert back to the chain homotopy"
                rectify.mapping_cylinder_square(f, r, s, g, H, interval)
                return True

            ctx.check("interval-toolkit", f"cylinder square {i}, p={p}", square,
                      lambda f=f, r=r, s=s, g=g: {n: codec.dump("map", m) for n, m in
                                                  (("f", f), ("r", r), ("s", s), ("g", g))})


def check_tensoring_comparison(ctx: VerificationContext) -> None:
    ks = range(-3, 4)
    for p in ctx.primes:
        k = chain.line(p)
        cert = rectify.certify_symmetric(k)

        def certified(cert=cert, k=k) -> Outcome:
            if cert is None:
                return False, "no symmetry certificate for K"
            cert.check()
            return _expect(cert.cyclic, ChainMap.identity(cert.cyclic.source))

        ctx.check("tensoring-comparison", f"certificate for K, p={p}", certified)
        if cert is None:
            continue

        def test(x: Spectrum, cert=cert) -> Outcome:
            comp = rectify.compare_tensorings(x, cert)
            if not (comp.to_no_twist.is_level_equivalence() and comp.to_twist.is_level_equivalence()):
                return False, "comparison maps are not level equivalences"
            twisted = [spectra.stable_pi(spectra.tensor_K_twist(x), kk) for kk in ks]
            plain = [spectra.stable_pi(spectra.prolong_G_no_twist(x), kk) for kk in ks]
            if twisted != plain:
                return False, f"twisted {twisted} against untwisted {plain}"
            return _expect([spectra.stable_pi(comp.spectrum, kk) for kk in ks],
                           [spectra.stable_pi(x, kk - 2) for kk in ks])

        for name, x in ctx.corpus(p):
            ctx.check("tensoring-comparison", f"{name}, p={p}", lambda x=x: test(x), _spectrum_replay(spectrum=x))


# --- Degenerate K and symmetric comparison ---

def check_unit_suspension(ctx: VerificationContext) -> None:
    ks = range(-3, 4)
    for p in ctx.primes:
        unit = chain.unit(p)
        for name, a in _test_complexes(ctx, p, stream=11, randoms=3) + [("D2", chain.disk(p, 2))]:
            ctx.check("unit-suspension", f"F0 {name} with K = S, p={p}",
                      lambda a=a: _expect([spectra.stable_pi(spectra.free_spectrum(0, a, unit), k) for k in ks],
                                          [a.homology(k) if k >= 0 else 0 for k in ks]),
                      _complex_replay(a=a))


def compare_stabilizations(a: ChainComplex, ks: Iterable[int], k: Optional[ChainComplex] = None
                           ) -> List[Tuple[int, int, sym.NaiveReading]]:
    """Per k: stable_pi of F_0 a, and the naive reading of the symmetric F_0 a."""
    k = k if k is not None else chain.line(a.field)
    bf, symmetric = spectra.free_spectrum(0, a, k), sym.free_sym(0, a, k)
    return [(kk, spectra.stable_pi(bf, kk), sym.naive_stable_pi(symmetric, kk)) for kk in ks]


def check_stabilization_agreement(ctx: VerificationContext) -> None:
    def test(a: ChainComplex) -> Outcome:
        for kk, bf, naive in compare_stabilizations(a, range(-3, 4)):
            if not naive.stable:
                return False, f"naive colimit still changes at k={kk}"
            if bf != naive.value:
                return False, f"k={kk}: {bf} against {naive.value}"
        return True

    for p in ctx.primes:
        for name, a in _test_complexes(ctx, p, stream=12):
            ctx.check("stabilization-agreement", f"F0 {name}, p={p}", lambda a=a: test(a), _complex_replay(a=a))


# --- Stable fibrations ---

def projection(x: Spectrum, y: Spectrum) -> SpectrumMap:
    """x + y -> x."""
    total = spectra.direct_sum_spectra(x, y)
    top = total.tail_index
    comps = [ChainMap(total.level(n), x.level(n),
                      chain.direct_sum_projections(x.level(n), y.level(n))[0].mats, validate=False)
             for n in range(top + 1)]
    return SpectrumMap(total, x, comps)


def check_stable_fibration(ctx: VerificationContext) -> None:
    for p in ctx.primes:
        for name, x in ctx.corpus(p):
            ctx.check("stable-fibration", f"identity of {name}, p={p}",
                      lambda x=x: spectra.is_stable_fibration(SpectrumMap.identity(x), ctx.grid),
                      _spectrum_replay(spectrum=x))

            def to_zero(x=x) -> bool:
                y = spectra.r_infinity(x).spectrum
                return spectra.is_stable_fibration(SpectrumMap.zero(y, spectra.zero_spectrum(p, y.k)), ctx.grid)

            ctx.check("stable-fibration", f"R-infinity {name} -> 0, p={p}", to_zero, _spectrum_replay(spectrum=x))

        rc = ctx.random(p, stream=13, max_degree=2, max_dim=2)
        for i in range(20):
            a = rc.random_complex()
            f = spectra.map_s_n(i % 2, a)
            g = projection(f.target, rc.random_spectrum())

            def pulled_back(f=f, g=g) -> Outcome:
                if not spectra.is_stable_equivalence(f, ctx.grid):
                    return False, "s_n is not a stable equivalence"
                if not g.is_level_fibration(upto=ctx.grid.max_level):
                    return False, "projection is not a level fibration"
                pb = spectra.spectrum_pullback(f, g)
                return spectra.is_stable_equivalence(pb.right, ctx.grid), "pullback is not a stable equivalence"

            ctx.check("stable-fibration", f"pullback {i}, p={p}", pulled_back,
                      _spectrum_replay(source=f.source, target=f.target, other=g.source))


# --- Registry ---

@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    run: Callable[[VerificationContext], None]


CLAIMS: Dict[str, Claim] = {c.id: c for c in [
    Claim("sphere-groups", "the sphere spectrum has stable homotopy F_p in degree 0 only, and F_n S in degree -n",
          check_sphere_groups),
    Claim("iota-naturality", "iota of RX coincides with R applied to iota of X", check_iota_naturality),
    Claim("stable-replacement",
          "R-infinity X is a U-spectrum, j_X is a stable equivalence, and j is a level equivalence on U-spectra",
          check_stable_replacement),
    Claim("desuspension-maps", "the maps F_{n+1}(A tensor K) -> F_n A are stable equivalences",
          check_desuspension_maps),
    Claim("suspension-shift", "stable homotopy of sX and of X tensor-bar K is that of X shifted down by one",
          check_suspension_shift),
    Claim("adjunctions", "free, evaluation, cofree and shift adjunctions satisfy the triangle identities",
          check_adjunctions),
    Claim("cofibration-lifting", "the corner-map cofibration tests agree with brute-force lifting",
          check_cofibration_lifting),
    Claim("smash-monoidal", "Sym(K) is a unit for the smash product and F_n A smash F_m B is F_{n+m}(A tensor B)",
          check_smash_monoidal),
    Claim("interval-toolkit", "unit intervals, amalgamation and mapping cylinder squares satisfy their identities",
          check_interval_toolkit),
    Claim("tensoring-comparison",
          "a symmetric K makes the twisted and untwisted tensorings level equivalent",
          check_tensoring_comparison),
    Claim("unit-suspension", "with K = S the stable homotopy of F_0 A is the homology of A",
          check_unit_suspension),
    Claim("stabilization-agreement",
          "stable homotopy of F_0 A agrees with the naive homotopy of its symmetric counterpart",
          check_stabilization_agreement),
    Claim("stable-fibration",
          "identities and maps from U-spectra to 0 are stable fibrations; stable equivalences pull back",
          check_stable_fibration),
]}


def resolve_suites(selection: Union[str, Sequence[str], None]) -> List[str]:
    if selection is None or selection == "all":
        return list(CLAIMS)
    names = [selection] if isinstance(selection, str) else list(selection)
    names = [n.strip() for part in names for n in part.split(",") if n.strip()]
    unknown = [n for n in names if n not in CLAIMS]
    if unknown:
        raise ValidationError(f"unknown suite(s) {', '.join(unknown)}; choose from {', '.join(CLAIMS)}")
    return names


def run_suites(selection: Union[str, Sequence[str], None] = "all",
               ctx: Optional[VerificationContext] = None) -> VerificationReport:
    ctx = ctx or VerificationContext()
    for name in resolve_suites(selection):
        logger.info("running suite %s (seed %d, primes %s)", name, ctx.seed, list(ctx.primes))
        start = time.perf_counter()
        CLAIMS[name].run(ctx)
        logger.info("suite %s finished in %.2fs", name, time.perf_counter() - start)
    report = VerificationReport(ctx.seed, tuple(ctx.primes), list(ctx.entries))
    logger.info("verification: %s", report.counts())
    return report
