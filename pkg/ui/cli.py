# ui/cli.py
import argparse
import json
import logging
from typing import Any, Dict, List, Optional, Sequence

# --- Core Module Imports ---
from core import codec, corpus, utils
from core.chain import as_field
from core.command_manager import CommandManager
from core.errors import CodecError, StabilizerError, UnstableColimitError
from core.rectify import certify_symmetric, compare_tensorings
from core.report_logger import ReportLogger
from core.settings import Settings
from core.spectra import (ProbeGrid, has_llp_against_oracle, is_projective_cofibration, is_U_spectrum,
                          llp_oracle_targets, stable_pi_table)
from core.symmetric import is_omega_spectrum, smash
from core.verification import CLAIMS, VerificationContext, compare_stabilizations, resolve_suites, run_suites

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILURE, EXIT_INPUT = 0, 1, 2


class InputFileError(StabilizerError):
    """A source argument is neither a builtin name nor a readable file."""


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    widths = [max(len(str(r[i])) for r in list(rows) + [header]) for i in range(len(header))]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(header, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(str(c).rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def _load(kind: str, source: str, prime: int):
    """A builtin of the right kind by name, otherwise a JSON file inside the workspace."""
    builtins = {"complex": corpus.COMPLEX_BUILTINS, "spectrum": corpus.BUILTINS,
                "symmetric": corpus.SYMMETRIC_BUILTINS}.get(kind, {})
    if source in builtins:
        logger.info("using builtin %s %s over F_%d", kind, source, prime)
        return builtins[source].build(as_field(prime))
    text = utils.read_text(source)
    if text is None:
        raise InputFileError(f"{source!r} is not a builtin {kind} or a readable file")
    return codec.load(kind, text)


def _emit(args: argparse.Namespace, data: Dict[str, Any]) -> None:
    if args.json_out:
        if utils.write_json(args.json_out, data):
            print(f"💾 JSON written to {args.json_out}")


def _k_range(args: argparse.Namespace) -> List[int]:
    if args.k_min > args.k_max:
        raise CodecError(f"empty k range {args.k_min}..{args.k_max}")
    return list(range(args.k_min, args.k_max + 1))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabilizer",
                                     description="Exact computations with spectra of chain complexes over F_p.")
    parser.add_argument("--prime", type=int, default=None, help="prime p of the ground field (default 2)")
    parser.add_argument("--seed", type=int, default=None, help="seed for random instances")
    parser.add_argument("--max-degree", type=int, default=None, help="top degree of random complexes")
    parser.add_argument("--json-out", default=None, metavar="PATH", help="also write the result as JSON")
    parser.add_argument("--env-file", default=None, help="a .env file with STABILIZER_* settings")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("homology", help="homology dimensions of a chain complex")
    p.add_argument("input", help="complex JSON file or builtin complex name")
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--top-degree", type=int, default=None)

    p = sub.add_parser("stable-pi", help="stable homotopy groups of a spectrum")
    p.add_argument("source", help="spectrum JSON file or builtin spectrum name")
    p.add_argument("--k-min", type=int, default=-3)
    p.add_argument("--k-max", type=int, default=3)

    p = sub.add_parser("smash", help="level dimensions of the smash product of two symmetric spectra")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--levels", type=int, default=3)

    p = sub.add_parser("check-omega", help="test the adjoint structure maps for quasi-isomorphisms")
    p.add_argument("source")
    p.add_argument("--symmetric", action="store_true", help="read a symmetric spectrum")

    p = sub.add_parser("check-cofib", help="test a spectrum map for being a cofibration")
    p.add_argument("mapfile", help="spectrum map JSON file")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute-force lifting")

    p = sub.add_parser("rectify", help="compare the twisted and untwisted double tensoring with K")
    p.add_argument("source")

    p = sub.add_parser("compare-stabilizations", help="stable homotopy of F_0 A in both spectrum flavors")
    p.add_argument("a", help="complex JSON file or builtin complex name")
    p.add_argument("b", help="complex JSON file or builtin complex name")
    p.add_argument("--k-min", type=int, default=-3)
    p.add_argument("--k-max", type=int, default=3)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suites", default="all", help="'all' or a comma separated list of suite ids")
    p.add_argument("--samples", type=int, default=50, help="seeded instances per adjunction")
    p.add_argument("--random-count", type=int, default=10, help="random spectra added to the corpus")
    p.add_argument("--timings", action="store_true", help="include per-check timings in the report")

    sub.add_parser("suites", help="list verification suite ids")
    sub.add_parser("builtins", help="list builtin complexes and spectra")
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Parses ``argv``, runs one subcommand and returns its exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_INPUT

    try:
        settings = Settings.load(args.env_file)
        settings.set("field", "prime", args.prime)
        settings.set("generator", "seed", args.seed)
        settings.set("generator", "max_degree", args.max_degree)
    except StabilizerError as e:
        print(f"❌ Configuration error: {e}")
        return EXIT_INPUT
    prime = settings.get("field", "prime")
    command_manager = CommandManager()

    # --- Command Handlers ---

    def handle_homology(args):
        x = _load("complex", args.input, prime)
        top = x.top + 1 if args.top_degree is None else args.top_degree
        degrees = list(range(args.min_degree, top + 1))
        values = [x.homology(n) for n in degrees]
        print(_table(("degree", "dim H"), list(zip(degrees, values))))
        print("H: " + ", ".join(str(v) for v in values))
        _emit(args, {"p": x.field.p, "degrees": degrees, "homology": values})
        return EXIT_OK

    def handle_stable_pi(args):
        x = _load("spectrum", args.source, prime)
        rows = stable_pi_table(x, _k_range(args))
        print(_table(("k", "stable pi", "stage"), rows))
        _emit(args, {"source": args.source, "p": x.field.p,
                     "rows": [{"k": k, "value": v, "stage": s} for k, v, s in rows]})
        return EXIT_OK

    def handle_smash(args):
        x, y = _load("symmetric", args.a, prime), _load("symmetric", args.b, prime)
        product = smash(x, y)
        rows = [(n, list(product.level(n).space.dims)) for n in range(args.levels + 1)]
        print(_table(("level", "dims"), rows))
        print(f"📊 generated in levels <= {product.tail_index}")
        _emit(args, {"a": args.a, "b": args.b, "tail_index": product.tail_index,
                     "levels": [{"level": n, "dims": d} for n, d in rows]})
        return EXIT_OK

    def handle_check_omega(args):
        max_level = settings.get("probe", "max_level")
        if args.symmetric:
            x = _load("symmetric", args.source, prime)
            verdict = is_omega_spectrum(x, max_level=max_level)
        else:
            x = _load("spectrum", args.source, prime)
            verdict = is_U_spectrum(x, max_level=max_level)
        print(f"{'✅' if verdict else '⚠️'} {args.source}: "
              f"{'an' if verdict else 'not an'} Omega-spectrum through level {max(max_level, x.tail_index)}")
        _emit(args, {"source": args.source, "symmetric": args.symmetric, "omega": verdict})
        return EXIT_OK

    def handle_check_cofib(args):
        text = utils.read_text(args.mapfile)
        if text is None:
            raise InputFileError(f"{args.mapfile!r} is not a readable file")
        f = codec.load("spectrum-map", text)
        verdict = is_projective_cofibration(f)
        print(f"📊 corner maps injective: {verdict}")
        data: Dict[str, Any] = {"cofibration": verdict}
        status = EXIT_OK
        if args.oracle:
            lifts = has_llp_against_oracle(f, llp_oracle_targets(f.source.field, f.source.k))
            print(f"🧪 lifts against every oracle target: {lifts}")
            data["oracle"] = lifts
            if verdict and not lifts:
                print("❌ a cofibration failed to lift against a level trivial fibration")
                status = EXIT_FAILURE
        _emit(args, data)
        return status

    def handle_rectify(args):
        x = _load("spectrum", args.source, prime)
        cert = certify_symmetric(x.k)
        if cert is None:
            print("❌ K is not symmetric: no homotopy from the cyclic permutation to the identity")
            return EXIT_FAILURE
        result = compare_tensorings(x, cert)
        top = result.spectrum.tail_index
        rows = [(n, list(result.spectrum.level(n).dims)) for n in range(top + 1)]
        print(_table(("level", "dims"), rows))
        to_plain = result.to_no_twist.is_level_equivalence()
        to_twist = result.to_twist.is_level_equivalence()
        print(f"📊 to untwisted: level equivalence = {to_plain}; to twisted: level equivalence = {to_twist}")
        _emit(args, {"source": args.source, "levels": [{"level": n, "dims": d} for n, d in rows],
                     "to_no_twist": to_plain, "to_twist": to_twist})
        return EXIT_OK if to_plain and to_twist else EXIT_FAILURE

    def handle_compare_stabilizations(args):
        ks = _k_range(args)
        rows, disagreements = [], 0
        for name in (args.a, args.b):
            a = _load("complex", name, prime)
            for k, bf, naive in compare_stabilizations(a, ks):
                agree = naive.stable and bf == naive.value
                disagreements += not agree
                flag = "" if agree else ("unstable" if not naive.stable else "DIFFERS")
                rows.append((name, k, bf, naive.value, naive.stage, flag))
        print(_table(("input", "k", "BF", "symmetric", "stage", ""), rows))
        if disagreements:
            print(f"⚠️ {disagreements} reading(s) disagree")
        _emit(args, {"rows": [{"input": r[0], "k": r[1], "bf": r[2], "symmetric": r[3], "stage": r[4],
                               "agree": not r[5]} for r in rows]})
        return EXIT_FAILURE if disagreements else EXIT_OK

    def handle_verify(args):
        suites = resolve_suites(args.suites)
        ctx = VerificationContext(
            seed=settings.get("generator", "seed"),
            primes=(args.prime,) if args.prime else (2, 3),
            max_degree=settings.get("generator", "max_degree"),
            max_dim=settings.get("generator", "max_dim"),
            max_tail=settings.get("generator", "max_tail"),
            random_count=args.random_count,
            samples=args.samples,
            grid=ProbeGrid(settings.get("probe", "max_level"), settings.get("probe", "max_degree")),
        )
        print(f"🧪 Running {len(suites)} suite(s) with seed {ctx.seed} over F_{', F_'.join(map(str, ctx.primes))}")
        report = run_suites(suites, ctx)
        print(report.render_table(timings=args.timings))
        ReportLogger(settings.get("verify", "report_log")).log_run(report, suites)
        for entry in report.failures:
            print(f"❌ replay {entry.claim}: {json.dumps(entry.replay)}")
        _emit(args, report.to_dict(timings=args.timings))
        if report.passed:
            print("✅ All checks passed.")
            return EXIT_OK
        return EXIT_FAILURE

    def handle_suites(args):
        print(_table(("suite", "claim"), [(c.id, c.statement) for c in CLAIMS.values()]))
        return EXIT_OK

    def handle_builtins(args):
        rows = []
        for kind, table in (("complex", corpus.COMPLEX_BUILTINS), ("spectrum", corpus.BUILTINS),
                            ("symmetric", corpus.SYMMETRIC_BUILTINS)):
            rows += [(kind, b.name, b.description) for b in table.values()]
        print(_table(("kind", "name", "description"), rows))
        return EXIT_OK

    # --- Register All Commands ---
    for name, handler, description in [
        ("homology", handle_homology, "Homology dimensions of a complex."),
        ("stable-pi", handle_stable_pi, "Stable homotopy groups with the stage used."),
        ("smash", handle_smash, "Smash product of symmetric spectra."),
        ("check-omega", handle_check_omega, "Omega-spectrum test."),
        ("check-cofib", handle_check_cofib, "Cofibration test, optionally against lifting."),
        ("rectify", handle_rectify, "Twisted against untwisted tensoring."),
        ("compare-stabilizations", handle_compare_stabilizations, "Both stable homotopy readings of F_0 A."),
        ("verify", handle_verify, "Run the verification suites."),
        ("suites", handle_suites, "List suites."),
        ("builtins", handle_builtins, "List builtins."),
    ]:
        command_manager.register(name, handler, description)

    try:
        status = command_manager.execute(args.command, args)
    except UnstableColimitError as e:
        logger.exception("unstable colimit")
        print(f"❌ {e}; details: {e.details}")
        return EXIT_FAILURE
    except (StabilizerError, PermissionError) as e:
        logger.exception("input error in %s", args.command)
        print(f"❌ {type(e).__name__}: {e}")
        return EXIT_INPUT
    return EXIT_INPUT if status is None else status
