"""Main entry point for the workbench command line.

Every command prints one JSON report on stdout and a one-line summary on
stderr. Exit codes: 0 affirmative, 1 well-formed negative answer
(invalid, inadmissible, not isomorphic), 2 error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Tuple

from . import __version__
from .admissibility import is_admissible
from .catalog import FamilyInstance
from .certify import CertifyConfig, certify
from .classifier import classify
from .codec import dumps, module_to_json, parse_module_file
from .config import ConfigManager
from .error_handler import (
    ModuleFormatError, ModuleValidationError, NotAdmissibleError, PhinModError, install_global_handler,
)
from .families import CATALOG
from .iso import are_isomorphic
from .logger import logger, set_console_level, setup_logging
from .module import HodgeType
from .valued_field import make_field

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

Outcome = Tuple[int, dict, str]


class Workbench:
    """Runs one command and produces (exit code, report, summary)."""

    def __init__(self, config_manager: Optional[ConfigManager] = None):
        self.config_manager = config_manager or ConfigManager()
        logger.debug(f"Config loaded from: {self.config_manager.get_config_path()}")

    def _field(self):
        defaults = self.config_manager.field_defaults()
        return make_field(defaults["prime"], defaults["ramification"])

    def validate(self, path: str) -> Outcome:
        try:
            module = parse_module_file(path)
        except ModuleValidationError as e:
            return EXIT_NEGATIVE, {"valid": False, "violations": e.violations}, f"{path}: invalid"
        return EXIT_OK, {"valid": True, "n_rank": module.n_rank}, f"{path}: valid"

    def admissible(self, path: str, witness: bool = False) -> Outcome:
        result = is_admissible(parse_module_file(path))
        doc = result.to_json()
        if not witness:
            doc.pop("witness", None)
        code = EXIT_OK if result.admissible else EXIT_NEGATIVE
        return code, doc, f"{path}: {result.describe()}"

    def classify(self, path: str) -> Outcome:
        module = parse_module_file(path)
        try:
            found = classify(module)
        except NotAdmissibleError as e:
            return EXIT_NEGATIVE, {"admissible": False, "reason": str(e)}, f"{path}: not admissible"
        doc = found.to_json()
        doc["admissible"] = True
        doc["reducibility"] = CATALOG.reducibility(found.instance).to_json()
        return EXIT_OK, doc, f"{path}: {found.instance}"

    def iso(self, path_a: str, path_b: str, witness: bool = False) -> Outcome:
        result = are_isomorphic(parse_module_file(path_a), parse_module_file(path_b))
        doc = result.to_json(with_witness=witness)
        if result.isomorphic:
            return EXIT_OK, doc, "isomorphic"
        return EXIT_NEGATIVE, doc, f"not isomorphic: {result.reason}"

    def enumerate(self, r: int, s: int, rank_n: Optional[int] = None) -> Outcome:
        hodge = HodgeType(r, s)
        found = CATALOG.enumerate_families(hodge, rank_n, self._field().ramification)
        doc = {"hodge": hodge.to_json(), "families": [f.to_json() for f in found]}
        if rank_n is not None:
            doc["n_rank"] = rank_n
        names = ", ".join(f.id.value for f in found) or "none"
        return EXIT_OK, doc, f"{len(found)} families: {names}"

    def instantiate(self, family: str, params: str, r: Optional[int] = None,
                    s: Optional[int] = None) -> Outcome:
        try:
            doc = json.loads(params)
        except json.JSONDecodeError as e:
            raise ModuleFormatError(e.msg, f"--params: column {e.colno}") from e
        if not isinstance(doc, dict):
            raise ModuleFormatError("parameters must be an object", "--params")
        doc = dict(doc, id=family)
        if "hodge" not in doc:
            if r is None or s is None:
                raise ModuleFormatError("give --r and --s or a hodge field", "--params")
            doc["hodge"] = {"r": r, "s": s}
        instance = FamilyInstance.from_json(doc, self._field())
        module = CATALOG.instantiate(instance)
        report = {
            "family": instance.to_json(),
            "module": module_to_json(module),
            "reducibility": CATALOG.reducibility(instance).to_json(),
        }
        return EXIT_OK, report, str(instance)

    def certify(self, r: int, s: int, samples: Optional[int] = None, seed: Optional[int] = None,
                workers: Optional[int] = None) -> Outcome:
        stored = self.config_manager.certify_defaults()
        field = self.config_manager.field_defaults()
        cfg = CertifyConfig(
            hodge=HodgeType(r, s),
            samples=stored["samples"] if samples is None else samples,
            seed=stored["seed"] if seed is None else seed,
            prime=field["prime"],
            ramification=field["ramification"],
            workers=stored["workers"] if workers is None else workers,
            oracle_samples=stored["oracle_samples"],
        )
        report = certify(cfg)
        code = EXIT_OK if report.passed else EXIT_ERROR
        return code, report.to_json(), report.summary()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phinmod",
        description="Admissibility, classification and isomorphism of 3-dimensional filtered (phi, N)-modules",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the module invariants")
    p.add_argument("file")

    p = sub.add_parser("admissible", help="decide weak admissibility")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="include the destabilizing family")

    p = sub.add_parser("classify", help="identify the catalog family")
    p.add_argument("file")

    p = sub.add_parser("iso", help="decide isomorphism of two modules")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--witness", action="store_true", help="include the intertwiner")

    p = sub.add_parser("enumerate", help="families with satisfiable constraints")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--rank-n", type=int, choices=(0, 1, 2), dest="rank_n")

    p = sub.add_parser("instantiate", help="representative module of a family instance")
    p.add_argument("--family", required=True, help="family id, e.g. Cris14 or R1_5")
    p.add_argument("--params", required=True, help='JSON object {"eigen_params": [...], "fil_params": [...]}')
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)

    p = sub.add_parser("certify", help="randomized self-check campaign")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    return parser


def run(args: argparse.Namespace, workbench: Optional[Workbench] = None) -> Outcome:
    """Dispatch a parsed command line.

    Args:
        args: Parsed arguments
        workbench: Workbench to use (a fresh one by default)

    Returns:
        (exit code, report, summary)
    """
    wb = workbench or Workbench()
    if args.command == "validate":
        return wb.validate(args.file)
    if args.command == "admissible":
        return wb.admissible(args.file, args.witness)
    if args.command == "classify":
        return wb.classify(args.file)
    if args.command == "iso":
        return wb.iso(args.file_a, args.file_b, args.witness)
    if args.command == "enumerate":
        return wb.enumerate(args.r, args.s, args.rank_n)
    if args.command == "instantiate":
        return wb.instantiate(args.family, args.params, args.r, args.s)
    return wb.certify(args.r, args.s, args.samples, args.seed, args.workers)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the exit code."""
    install_global_handler()
    setup_logging(logging.DEBUG)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    set_console_level(logging.INFO if args.verbose else logging.WARNING)

    command = {"command": args.command, "args": {k: v for k, v in vars(args).items()
                                                 if k not in ("command", "verbose")}}
    try:
        code, report, summary = run(args)
    except ModuleValidationError as e:
        code, report, summary = EXIT_ERROR, {"error": "validation", "violations": e.violations}, str(e)
    except ModuleFormatError as e:
        code, report, summary = EXIT_ERROR, {"error": "format", "message": str(e),
                                             "location": e.location}, str(e)
    except PhinModError as e:
        code, report, summary = EXIT_ERROR, {"error": type(e).__name__, "message": str(e)}, str(e)

    print(dumps(dict(report, **command)))
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
