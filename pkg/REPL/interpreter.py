import argparse
import cmd
import glob
import json
import logging
import os
import shlex
import sys
from typing import IO, Optional, Sequence

import jsonschema

from ALGtools import ALGparser, exceptions
from ALGtools.algebras import AlgebraSpec
from ALGtools.claims import GROUPS, REGISTRY, cmd_group, cmd_norm_theorem, cmd_verify
from ALGtools.config import DEFAULT_BUDGET, DEFAULT_SAMPLES, SCHEMA_PATH, RunOptions
from ALGtools.report import EXIT_USAGE, Report, exit_code, write_reports
from ALGtools.rings import parse_ring
from REPL.pretty_print import ReportPrinter, SpecPrinter


logger = logging.getLogger(__name__)

# Errors that make a command unusable as given
USAGE_ERRORS = (FileNotFoundError, json.JSONDecodeError, jsonschema.exceptions.ValidationError,
                exceptions.InvalidAlgebra, exceptions.UnknownClaim, exceptions.RingParseError,
                exceptions.InfiniteRing, exceptions.CharTwo, ValueError)


class CayleyShell(cmd.Cmd):
    """
    Interactive shell around the verification commands. One algebra is
    loaded at a time; reports of the last command are kept in `reports`.
    """
    prompt = '>>> '
    file = None

    def __init__(self, echo=False, debug=False, schema_path: str = SCHEMA_PATH, options: RunOptions = None,
                 completekey: str = "tab", stdin: Optional[IO[str]] = None, stdout: Optional[IO[str]] = None) -> None:
        super().__init__(completekey, stdin, stdout)

        self.echo = echo
        self.debug = debug
        self.options = options or RunOptions()

        self.spec: Optional[AlgebraSpec] = None
        self.reports: list[Report] = []
        self.schema = ALGparser.load_schema(schema_path)

    def print(self, *args, **kwargs):
        print(*args, file=self.file, **kwargs)

    def emptyline(self) -> bool:
        # Prevent previous command being repeated
        pass

    def precmd(self, line: str) -> str:
        if self.echo:
            self.print(line.rstrip('\n'))
        return line

    def onecmd(self, line: str) -> bool:
        try:
            return super().onecmd(line)
        except (exceptions.CayleyException, ValueError) as e:
            if self.debug:
                raise
            self.print(f"Error: {e}")
            return False

    def require_spec(self) -> Optional[AlgebraSpec]:
        if self.spec is None:
            self.print("No algebra loaded; use 'load <file>' first")
        return self.spec

    def show_reports(self, reports: list[Report]) -> None:
        self.reports = reports
        ReportPrinter(self.file).run(reports)

    def do_load(self, arg):
        """load <file>: validate an algebra description file and make it current"""
        try:
            data = ALGparser.load_validate_json(arg.strip(), self.schema)
        except FileNotFoundError:
            self.print(f"File '{arg.strip()}' does not exist")
            return
        except json.JSONDecodeError as e:
            self.print(f"File is not valid JSON: {e}")
            return
        except jsonschema.exceptions.ValidationError as e:
            self.print("Error while validating file:")
            self.print(e.message)
            return

        self.print("Validation of file passed.")
        self.spec = ALGparser.AlgebraFile.from_json(data).to_spec()
        self.print(f"Loaded {self.spec}")

    def complete_load(self, text, line, begidx, endidx):
        path = text
        if os.path.isdir(text):
            path = os.path.join(path, '*')
        else:
            path += '*'

        return glob.glob(path)

    def do_show(self, arg):
        """show: print the current algebra"""
        if self.require_spec() is not None:
            SpecPrinter(self.file).run(self.spec)

    def do_claims(self, arg):
        """claims: list the registered claim ids"""
        for claim in REGISTRY:
            slow = ' (slow)' if claim.slow else ''
            self.print(f"{claim.id}{slow}: {claim.description}")

    def do_verify(self, arg):
        """verify <claim|all> [samples N]: run claims on the current algebra"""
        words = shlex.split(arg)
        if not words:
            self.print("Usage: verify <claim|all> [samples N]")
            return
        if self.require_spec() is None:
            return
        options = self.options
        if words[1:2] == ['samples']:
            options = RunOptions(mode='samples', samples=int(words[2]) if len(words) > 2 else DEFAULT_SAMPLES,
                                 budget=options.budget, seed=options.seed)
        self.show_reports(cmd_verify(words[0], self.spec, options))

    def do_norm_theorem(self, arg):
        """norm_theorem <ring>: compare isomorphism and isometry classes of quaternion algebras"""
        self.show_reports([cmd_norm_theorem(parse_ring(arg.strip()), self.options)])

    def do_group(self, arg):
        """group <O|SO|SL1|MU2|AUT>: enumerate a group of the current algebra"""
        which = arg.strip()
        if which not in GROUPS:
            self.print(f"Usage: group <{'|'.join(GROUPS)}>")
            return
        if self.require_spec() is not None:
            self.show_reports([cmd_group(which, self.spec, self.options)])

    def do_exit(self, arg):
        """exit: leave the shell"""
        self.print("Goodbye!")
        return True


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='cayley', description="Exact verification of composition-algebra claims")
    parser.add_argument('-v', '--verbose', action='store_true', help="Log search progress at DEBUG level")
    parser.add_argument('--schema', default=SCHEMA_PATH, help="Schema for algebra description files")
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', help="Run one claim or all claims on an algebra")
    verify.add_argument('--claim', required=True, help="Claim id, or 'all'")
    verify.add_argument('--algebra', required=True, help="Algebra description file")
    mode = verify.add_mutually_exclusive_group()
    mode.add_argument('--exhaustive', action='store_true', help="Scan every element, pair or triple")
    mode.add_argument('--samples', type=positive_int, help="Check N seeded random samples")
    verify.add_argument('--budget', type=positive_int, default=DEFAULT_BUDGET)
    verify.add_argument('--strict', action='store_true', help="Count skipped verdicts as failures")
    verify.add_argument('--slow', action='store_true', help="Include slow claims in 'all'")
    verify.add_argument('--seed', type=int, default=0)
    verify.add_argument('--json', dest='json_out', help="Write the reports as JSON to this file")

    norm = commands.add_parser('norm-theorem', help="Isomorphism vs isometry of quaternion norm forms")
    norm.add_argument('--ring', required=True, help="Ring spec such as F5, Z/9 or Q")
    norm.add_argument('--budget', type=positive_int, default=DEFAULT_BUDGET)
    norm.add_argument('--json', dest='json_out')

    group = commands.add_parser('group', help="Enumerate a group attached to an algebra")
    group.add_argument('--which', required=True, choices=GROUPS)
    group.add_argument('--algebra', required=True)
    group.add_argument('--budget', type=positive_int, default=DEFAULT_BUDGET)
    group.add_argument('--list', action='store_true', help="Include the elements in the report")
    group.add_argument('--json', dest='json_out')

    shell = commands.add_parser('shell', help="Interactive shell")
    shell.add_argument('--echo', action='store_true', help="Echo each entered line; useful when consuming file input")
    shell.add_argument('--debug', action='store_true', help="Re-raise errors instead of printing them")
    return parser


def run_command(args: argparse.Namespace) -> list[Report]:
    schema = ALGparser.load_schema(args.schema)
    if args.command == 'verify':
        mode = 'exhaustive' if args.exhaustive else 'samples' if args.samples else 'auto'
        options = RunOptions(mode=mode, samples=args.samples or DEFAULT_SAMPLES, budget=args.budget,
                             strict=args.strict, seed=args.seed, include_slow=args.slow)
        return cmd_verify(args.claim, ALGparser.load_algebra(args.algebra, schema), options)
    if args.command == 'norm-theorem':
        return [cmd_norm_theorem(parse_ring(args.ring), RunOptions(budget=args.budget))]
    return [cmd_group(args.which, ALGparser.load_algebra(args.algebra, schema), RunOptions(budget=args.budget),
                      list_elements=args.list)]


def main(argv: Sequence[str] = None) -> int:
    """
    Exit code 0 when every verdict is pass or skipped, 1 on any fail and
    2 on usage or parse errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    if args.command == 'shell':
        CayleyShell(echo=args.echo, debug=args.debug, schema_path=args.schema).cmdloop()
        return 0

    try:
        reports = run_command(args)
    except jsonschema.exceptions.ValidationError as e:
        print(f"Error while validating file: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except USAGE_ERRORS as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    ReportPrinter().run(reports)
    if args.json_out:
        write_reports(args.json_out, reports)
        logger.info("wrote %d reports to %s", len(reports), args.json_out)
    return exit_code(reports, strict=getattr(args, 'strict', False))


if __name__ == '__main__':
    sys.exit(main())
