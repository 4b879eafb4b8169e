"""Command-line front end.

Exit status: 0 on success, 1 when a check, search, classification or
verification fails, 2 on usage, parse or validation errors. Results go to
stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from src.config_errors import USAGE_ERROR_STATUS
from src.constructions import CAT_FIRST, CAT_SECOND, CLO, UNION_FIRST, UNION_SECOND, LiftSpec, concat, kleene, lift_form, union, unlift_form
from src.decompose import UnionKind, cat_decompose, clo_decompose, union_classify
from src.derivation import check_derivation
from src.errors import BudgetExceeded, GrammarAlgebraError, GrammarSyntaxError, GrammarValidationError
from src.grammar import Grammar
from src.harness.generator import GenParams
from src.harness.mutants import MUTANTS
from src.harness.reports import TheoremId, write_counterexample
from src.harness.suite import SuiteConfig, load_corpus, random_corpus, run_suite
from src.harness.theorems import CheckOptions
from src.search import GenerationOracle, SearchBounds, derive_search, enumerate_forms
from src.settings import CliConfig, load_config
from src.symbols import SententialForm, is_sentence, serialize_form, sort_forms
from src.text_format import parse_certificate, parse_form_text, parse_grammar, serialize_certificate, serialize_grammar

EXIT_OK = 0
EXIT_FAILED = 1

_UNLIFT_SPECS: dict[str, tuple[LiftSpec, ...]] = {
    "uni": (UNION_FIRST, UNION_SECOND),
    "cat": (CAT_FIRST, CAT_SECOND),
    "clo": (CLO,),
}


class UsageError(Exception):
    """Bad input that is not a grammar or certificate syntax error."""


def configure_logging(level_name: str) -> None:
    """Configure stdlib logging once, on stderr."""
    level = logging.getLevelName(level_name.upper())
    known_level = isinstance(level, int)

    logging.basicConfig(
        level=level if known_level else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )
    if not known_level:
        logging.warning(f"Unknown log level '{level_name}', falling back to INFO.")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise UsageError(f"cannot read {path}: {error.strerror or error}") from None


def _grammar(path: str) -> Grammar:
    try:
        return parse_grammar(_read(path))
    except (GrammarSyntaxError, GrammarValidationError) as error:
        raise UsageError(f"{path}: {error}") from None


def _form(text: str, option: str) -> SententialForm:
    try:
        return parse_form_text(text)
    except GrammarSyntaxError as error:
        raise UsageError(f"{option}: {error.reason}") from None


def _bounds(config: CliConfig) -> SearchBounds:
    return SearchBounds(config.max_steps, config.max_len, config.form_cap)


def _emit(text: str, output: str | None) -> None:
    if output:
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as error:
            raise UsageError(f"cannot write {output}: {error.strerror or error}") from None
        logging.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


# --- Subcommands --------------------------------------------------------------


def _cmd_construct(build: Callable[..., Grammar]) -> Callable[[argparse.Namespace, CliConfig], int]:
    def run(args: argparse.Namespace, config: CliConfig) -> int:
        grammar = build(*(_grammar(path) for path in args.grammars))
        _emit(serialize_grammar(grammar), config.output)
        return EXIT_OK

    return run


def _unlift(form: SententialForm, specs: tuple[LiftSpec, ...]) -> SententialForm | None:
    """Strip one level of tags symbol by symbol; None when a symbol carries none of them."""
    result: SententialForm = ()
    for symbol in form:
        for spec in specs:
            source = unlift_form(spec, (symbol,))
            if source is not None:
                result += source
                break
        else:
            return None
    return result


def _cmd_enum(args: argparse.Namespace, config: CliConfig) -> int:
    grammar = _grammar(args.grammar)
    forms = enumerate_forms(grammar, config.max_steps, config.max_len, config.form_cap)
    if args.sentences_only:
        forms = [(form, steps) for form, steps in forms if is_sentence(form)]
    if args.unlift:
        depths: dict[SententialForm, int] = {}
        for form, steps in forms:
            source = _unlift(form, _UNLIFT_SPECS[args.unlift])
            if source is not None:
                depths[source] = min(steps, depths.get(source, steps))
        forms = [(form, depths[form]) for form in sort_forms(depths)]
    sys.stdout.write("".join(f"{steps}\t{serialize_form(form)}\n" for form, steps in forms))
    return EXIT_OK


def _cmd_check(args: argparse.Namespace, config: CliConfig) -> int:
    grammar = _grammar(args.grammar)
    try:
        certificate = parse_certificate(_read(args.certificate))
    except GrammarSyntaxError as error:
        raise UsageError(f"{args.certificate}: {error}") from None
    result = check_derivation(grammar, certificate)
    if not result.accepted:
        print(f"rejected at step {result.failed_step}: {result.reason}", file=sys.stderr)
        return EXIT_FAILED
    print(serialize_form(result.final or ()))
    return EXIT_OK


def _cmd_search(args: argparse.Namespace, config: CliConfig) -> int:
    grammar = _grammar(args.grammar)
    source, target = _form(args.from_form, "--from"), _form(args.to_form, "--to")
    derivation = derive_search(grammar, source, target, config.max_steps, config.max_len, config.form_cap)
    if derivation is None:
        print(f"no derivation within {config.max_steps} steps and length {config.max_len}", file=sys.stderr)
        return EXIT_FAILED
    _emit(serialize_certificate(derivation), config.output)
    return EXIT_OK


def _cmd_classify_union(args: argparse.Namespace, config: CliConfig) -> int:
    first, second = (_grammar(path) for path in args.grammars)
    classification = union_classify(first, second, _form(args.form, "--form"))
    print(classification)
    return EXIT_FAILED if classification.kind is UnionKind.NOT_LIFTED else EXIT_OK


def _cmd_decompose_cat(args: argparse.Namespace, config: CliConfig) -> int:
    first, second = (_grammar(path) for path in args.grammars)
    decomposition = cat_decompose(first, second, _form(args.form, "--form"), _bounds(config))
    if decomposition is None:
        print("no decomposition within bounds", file=sys.stderr)
        return EXIT_FAILED
    print(f"first: {serialize_form(decomposition.first)}")
    print(f"second: {serialize_form(decomposition.second)}")
    print("# first witness")
    sys.stdout.write(serialize_certificate(decomposition.first_witness))
    print("# second witness")
    sys.stdout.write(serialize_certificate(decomposition.second_witness))
    return EXIT_OK


def _cmd_decompose_star(args: argparse.Namespace, config: CliConfig) -> int:
    grammar = _grammar(args.grammar)
    decomposition = clo_decompose(grammar, _form(args.form, "--form"), _bounds(config), GenerationOracle())
    if decomposition is None:
        print("no decomposition within bounds", file=sys.stderr)
        return EXIT_FAILED
    print(decomposition.kind.value)
    if decomposition.prefix is not None and decomposition.tail is not None:
        print(f"prefix: {serialize_form(decomposition.prefix)}")
        print(f"tail: {serialize_form(decomposition.tail)}")
        print(f"lifted tail: {serialize_form(lift_form(CLO, decomposition.tail))}")
        if decomposition.prefix_witness is not None and decomposition.tail_witness is not None:
            print("# prefix witness")
            sys.stdout.write(serialize_certificate(decomposition.prefix_witness))
            print("# tail witness")
            sys.stdout.write(serialize_certificate(decomposition.tail_witness))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, config: CliConfig) -> int:
    if args.corpus:
        directory = Path(args.corpus)
        if not directory.is_dir():
            raise UsageError(f"--corpus: {directory} is not a directory")
        try:
            corpus = load_corpus(directory)
        except (GrammarSyntaxError, GrammarValidationError) as error:
            raise UsageError(f"--corpus: {error}") from None
    else:
        corpus = random_corpus(args.random, GenParams(seed=config.seed))

    theorems = tuple(TheoremId(value) for value in args.theorem) if args.theorem else tuple(TheoremId)
    options = CheckOptions(config.clo_max_segments, config.clo_segment_pool, config.seed, args.mutant)
    summary = run_suite(SuiteConfig(corpus, _bounds(config), options, theorems, args.jobs))
    sys.stdout.write(summary.text())

    if args.counterexamples:
        for report in summary.failed:
            try:
                path = write_counterexample(report, Path(args.counterexamples))
            except OSError as error:
                raise UsageError(f"--counterexamples: {error.strerror or error}") from None
            logging.info(f"Counterexample written to {path}")
    if summary.inconclusive:
        logging.warning(f"{len(summary.inconclusive)} check(s) exhausted the form cap")
    return EXIT_OK if summary.ok and not summary.inconclusive else EXIT_FAILED


# --- Argument parsing ---------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-steps", type=int, help="derivation step bound (default: 8)")
    common.add_argument("--max-len", type=int, help="longest form kept during search (default: 12)")
    common.add_argument("--form-cap", type=int, help="explored-form budget (default: 1000000)")
    common.add_argument("--log-level", help="logging level (default: INFO)")

    parser = argparse.ArgumentParser(prog="cfg-algebra", description="Closure constructions on context-free grammars.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name, build, arity, help_text in (
        ("union", union, 2, "union of two grammars"),
        ("cat", concat, 2, "concatenation of two grammars"),
        ("star", kleene, 1, "Kleene closure of a grammar"),
    ):
        cmd = sub.add_parser(name, parents=[common], help=help_text)
        cmd.add_argument("grammars", nargs=arity, metavar="GRAMMAR")
        cmd.add_argument("-o", "--output", help="write the grammar here instead of stdout")
        cmd.set_defaults(handler=_cmd_construct(build))

    cmd = sub.add_parser("enum", parents=[common], help="enumerate derivable forms")
    cmd.add_argument("grammar")
    cmd.add_argument("--sentences-only", action="store_true", help="only forms without nonterminals")
    cmd.add_argument(
        "--unlift", choices=sorted(_UNLIFT_SPECS), help="print source forms of a union, cat or star grammar, dropping the rest"
    )
    cmd.set_defaults(handler=_cmd_enum)

    cmd = sub.add_parser("check", parents=[common], help="check a derivation certificate")
    cmd.add_argument("grammar")
    cmd.add_argument("certificate")
    cmd.set_defaults(handler=_cmd_check)

    cmd = sub.add_parser("search", parents=[common], help="search a derivation between two forms")
    cmd.add_argument("grammar")
    cmd.add_argument("--from", dest="from_form", required=True)
    cmd.add_argument("--to", dest="to_form", required=True)
    cmd.add_argument("-o", "--output", help="write the certificate here instead of stdout")
    cmd.set_defaults(handler=_cmd_search)

    cmd = sub.add_parser("classify-union", parents=[common], help="classify a form of union(A, B)")
    cmd.add_argument("grammars", nargs=2, metavar="GRAMMAR")
    cmd.add_argument("--form", required=True)
    cmd.set_defaults(handler=_cmd_classify_union)

    cmd = sub.add_parser("decompose-cat", parents=[common], help="split a form of cat(A, B)")
    cmd.add_argument("grammars", nargs=2, metavar="GRAMMAR")
    cmd.add_argument("--form", required=True)
    cmd.set_defaults(handler=_cmd_decompose_cat)

    cmd = sub.add_parser("decompose-star", parents=[common], help="split a form of star(A)")
    cmd.add_argument("grammar")
    cmd.add_argument("--form", required=True)
    cmd.set_defaults(handler=_cmd_decompose_star)

    cmd = sub.add_parser("verify", parents=[common], help="check every property over a corpus")
    source = cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--corpus", help="directory of *.cfg grammars")
    source.add_argument("--random", type=_positive, metavar="N", help="N seeded random grammars")
    cmd.add_argument("--seed", type=int, help="first random seed (default: 0)")
    cmd.add_argument("--theorem", action="append", choices=[theorem.value for theorem in TheoremId])
    cmd.add_argument("--mutant", choices=sorted(MUTANTS), help="replace a construction by a known-wrong one")
    cmd.add_argument("--clo-max-segments", type=int)
    cmd.add_argument("--clo-segment-pool", type=int, help="only combine the first N segments (default: all of them)")
    cmd.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    cmd.add_argument("--counterexamples", metavar="DIR", help="write failing cases here")
    cmd.set_defaults(handler=_cmd_verify)

    return parser


_CONFIG_FIELDS = ("max_steps", "max_len", "form_cap", "seed", "clo_max_segments", "clo_segment_pool", "log_level", "output")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    options = {name: getattr(args, name) for name in _CONFIG_FIELDS if getattr(args, name, None) is not None}
    inputs = [value for name in ("grammars", "grammar", "certificate") for value in _as_list(getattr(args, name, None))]
    config = load_config(subcommand=args.subcommand, inputs=inputs, **options)
    configure_logging(config.log_level)
    logging.debug(f"Running {config.subcommand} on {', '.join(config.inputs) or 'no input files'}")

    try:
        return args.handler(args, config)
    except UsageError as error:
        print(f"error: {error}", file=sys.stderr)
        return USAGE_ERROR_STATUS
    except BudgetExceeded as error:
        print(f"search budget exhausted: {error}", file=sys.stderr)
        return EXIT_FAILED
    except GrammarAlgebraError as error:
        print(f"error: {error}", file=sys.stderr)
        return USAGE_ERROR_STATUS


def _as_list(value: object) -> list[str]:
    if value is None:
        return []
    if isinstance(value, list):
        return [str(item) for item in value]
    return [str(value)]
