"""
Main application module for the k-bonacci toolkit.
Owns configuration, the event dispatcher and the renderers, and runs one
command-line invocation per call to run().
"""
import argparse
import contextlib
import io
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from core.config_manager import ConfigManager
from core.errors import ConfigError, DomainError, KBonacciError
from core.event_system import Event, EventDispatcher, EventType
from core.numbers import format_rational, parse_rational
from entities.recurrence import Recurrence
from entities.relations import QuasiMethod
from entities.structure_function import SequenceKind, StructureFunction
from renderers import RENDERERS, Document
from solvers.audit import full_audit
from solvers.inhomogeneous import format_linear_form, inhomogeneous_table, solve_inhomogeneous, verify_inhomogeneous
from solvers.quasi_fibonacci import quasi_closed_form_report, quasi_ratio_track, quasi_recursive, verify_quasi
from solvers.recurrence_engine import (
    detect_minimal_recurrence, extend_recurrence, kbonacci_classical, kbonacci_q,
    ninebonacci_pq, ninebonacci_qlimit, pentanacci_pq, pq_bracket_recurrence, verify_recurrence,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

FAMILIES = ("classical", "q", "pentanacci", "ninebonacci", "ninebonacci-qlimit", "pq")

FINDINGS = (
    EventType.VERIFICATION_FAILED,
    EventType.INCONCLUSIVE_WINDOW,
    EventType.PARAMETER_COLLISION,
    EventType.SINGULAR_POINT,
    EventType.CLOSED_FORM_DISCREPANCY,
)


def configure_logging(debug: bool = False, level: str = "WARNING", log_file: Optional[str] = None,
                      stream: Optional[TextIO] = None) -> List[logging.Handler]:
    """
    Attach diagnostic handlers to the root logger; payloads never go through logging.

    Args:
        debug (bool): Force DEBUG level
        level (str): Level name used when debug is off
        log_file (str, optional): Additional log file
        stream (file, optional): Diagnostic stream, standard error by default

    Returns:
        list: The attached handlers, to be passed to release_logging()
    """
    log_level = logging.DEBUG if debug else getattr(logging, str(level).upper(), logging.WARNING)
    handlers: List[logging.Handler] = [logging.StreamHandler(stream or sys.stderr)]
    if log_file:
        try:
            handlers.append(logging.FileHandler(log_file, mode='w'))
        except OSError as e:
            raise ConfigError(f"cannot open log file {log_file}: {e}") from e

    formatter = logging.Formatter(LOG_FORMAT)
    root = logging.getLogger()
    for handler in handlers:
        handler.setFormatter(formatter)
        handler.setLevel(log_level)
        root.addHandler(handler)
    root.setLevel(log_level)
    return handlers


def release_logging(handlers: Sequence[logging.Handler], level: int = logging.WARNING):
    """Detach and close handlers attached by configure_logging(), then restore the root level."""
    root = logging.getLogger()
    root.setLevel(level)
    for handler in handlers:
        root.removeHandler(handler)
        handler.close()


class KBonacciApplication:
    """
    Command-line application.

    Attributes:
        event_dispatcher (EventDispatcher): Event dispatcher shared with the solvers
        config_manager (ConfigManager): Active configuration, set per run
        findings (list): Solver events seen during the last run
    """

    def __init__(self, environ: Optional[Dict[str, str]] = None, stderr: Optional[TextIO] = None):
        """
        Initialize the application.

        Args:
            environ (dict, optional): Environment used for overrides
            stderr (file, optional): Stream for diagnostics
        """
        self.environ = environ
        self.stderr = stderr if stderr is not None else sys.stderr
        self.event_dispatcher = EventDispatcher()
        self.config_manager: Optional[ConfigManager] = None
        self.findings: List[Event] = []

        for event_type in FINDINGS:
            self.event_dispatcher.register_listener(event_type, self._record_finding)

        self._handlers: Dict[str, Callable[[argparse.Namespace], Tuple[Document, int]]] = {
            "spectrum": self._cmd_spectrum,
            "detect": self._cmd_detect,
            "coefficients": self._cmd_coefficients,
            "verify": self._cmd_verify,
            "inhom": self._cmd_inhom,
            "quasi": self._cmd_quasi,
            "table": self._cmd_table,
            "audit": self._cmd_audit,
        }
        logger.debug("KBonacciApplication initialized")

    def _record_finding(self, event: Event):
        self.findings.append(event)
        logger.debug(f"Finding recorded: {event.event_type.name}")

    def build_parser(self) -> argparse.ArgumentParser:
        """
        Build the argument parser with one subparser per command.

        Returns:
            argparse.ArgumentParser: The parser
        """
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--config', type=str, help='Path to a JSON configuration file')
        common.add_argument('--debug', action='store_true', help='Enable debug logging')
        common.add_argument('--format', choices=sorted(RENDERERS), help='Output format')
        common.add_argument('--output', type=str, help='Write output to this file instead of stdout')

        oscillator = argparse.ArgumentParser(add_help=False)
        oscillator.add_argument('--bracket', choices=("classical", "q", "pq"), default="classical")
        oscillator.add_argument('--q', type=str, help='Deformation parameter q, "a" or "a/b"')
        oscillator.add_argument('--p', type=str, help='Deformation parameter p, "a" or "a/b"')
        oscillator.add_argument('--mu', type=str, nargs='*', default=[], help='mu_1 .. mu_r')
        oscillator.add_argument('--input', type=str, help='Structure function JSON file')

        relation = argparse.ArgumentParser(add_help=False)
        relation.add_argument('--family', choices=FAMILIES, help='Closed-form coefficient family')
        relation.add_argument('--k', type=int, help='Number of terms for classical and q families')
        relation.add_argument('--poly-order', type=int, help='Polynomial order K for the pq family')
        relation.add_argument('--coefficients', type=str, nargs='+', help='Explicit lambda_0 .. lambda_{k-1}')
        relation.add_argument('--extend', type=str, nargs='+', help='Multipliers of shifted copies')

        parser = argparse.ArgumentParser(prog="kbonacci",
                                         description='Exact k-bonacci toolkit for deformed oscillators')
        commands = parser.add_subparsers(dest="command", required=True)

        spectrum = commands.add_parser("spectrum", parents=[common, oscillator], help='Tabulate phi and E')
        spectrum.add_argument('--n-max', type=int)

        detect = commands.add_parser("detect", parents=[common, oscillator], help='Find the minimal recurrence')
        detect.add_argument('--max-order', type=int)
        detect.add_argument('--apply-to', choices=("phi", "energy"), default="phi")

        coefficients = commands.add_parser("coefficients", parents=[common, relation],
                                           help='Closed-form coefficients')
        coefficients.add_argument('--q', type=str)
        coefficients.add_argument('--p', type=str)

        verify = commands.add_parser("verify", parents=[common, oscillator, relation],
                                     help='Check a recurrence exactly')
        verify.add_argument('--apply-to', choices=("phi", "energy"),
                            help='Sequence to check; defaults to the relation applied_to, else phi')
        verify.add_argument('--window', type=int, nargs=2, metavar=("N_START", "N_END"))
        verify.add_argument('--relation-input', type=str, help='Recurrence JSON file')

        inhom = commands.add_parser("inhom", parents=[common, oscillator], help='Inhomogeneous relation')
        inhom.add_argument('--degree', type=int)

        quasi = commands.add_parser("quasi", parents=[common, oscillator], help='Quasi-Fibonacci track')
        quasi.add_argument('--method', choices=[method.value for method in QuasiMethod], default="recursive")
        quasi.add_argument('--c', type=str, help='Initial value lambda_0 of the recursive chain')
        quasi.add_argument('--n-start', type=int, default=1)
        quasi.add_argument('--n-max', type=int)
        quasi.add_argument('--compare-closed-form', action='store_true')

        table = commands.add_parser("table", parents=[common], help='Inhomogeneous coefficient table')
        table.add_argument('--r-max', type=int)

        audit = commands.add_parser("audit", parents=[common], help='Printed closed forms against oracles')
        audit.add_argument('--p', type=str, default="2")
        audit.add_argument('--q', type=str, default="3")
        audit.add_argument('--q-limit', type=str, default="2")
        audit.add_argument('--kappa', type=str, default="1/2")
        return parser

    def run(self, argv: Sequence[str]) -> Tuple[int, bytes]:
        """
        Run one command.

        Args:
            argv (list): Arguments without the program name

        Returns:
            tuple: (exit code, standard output bytes)
        """
        self.findings = []
        captured = io.StringIO()
        try:
            with contextlib.redirect_stdout(captured), contextlib.redirect_stderr(self.stderr):
                args = self.build_parser().parse_args(list(argv))
        except SystemExit as e:
            code = e.code if isinstance(e.code, int) else EXIT_USAGE
            return code, captured.getvalue().encode("utf-8")

        handlers: List[logging.Handler] = []
        root_level = logging.getLogger().level
        try:
            self.config_manager = ConfigManager(args.config, environ=self.environ)
            handlers = configure_logging(args.debug, self.config_manager.get("logging.level", "WARNING"),
                                         self.config_manager.get("logging.file"), self.stderr)
            self.event_dispatcher.dispatch_event(Event(EventType.CONFIG_CHANGED, self,
                                                       {'config': self.config_manager.config}))
            self.event_dispatcher.dispatch_event(Event(EventType.COMMAND_STARTED, self,
                                                       {'command': args.command}))

            document, code = self._handlers[args.command](args)
            format_name = args.format or self._default_format()
            payload = RENDERERS[format_name]().render(document).encode("utf-8")
            self.event_dispatcher.dispatch_event(Event(EventType.COMMAND_FINISHED, self,
                                                       {'command': args.command, 'exit_code': code,
                                                        'findings': len(self.findings)}))
            if args.output:
                self._write_output(args.output, payload)
                return code, b""
            return code, payload
        except KBonacciError as e:
            logger.debug(f"Command {args.command} failed: {e}", exc_info=True)
            print(f"kbonacci {args.command}: error: {e}", file=self.stderr)
            return EXIT_USAGE, b""
        finally:
            release_logging(handlers, root_level)

    @staticmethod
    def _write_output(path: str, payload: bytes):
        try:
            with open(path, "wb") as f:
                f.write(payload)
        except OSError as e:
            raise DomainError(f"cannot write {path}: {e}") from e
        logger.info(f"Output written to {path}")

    def _default_format(self) -> str:
        configured = self.config_manager.get("output.default_format", "json")
        return configured if configured in RENDERERS else "json"

    # Argument helpers

    @staticmethod
    def _read_json(path: str, entity_class, what: str):
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise DomainError(f"cannot read {what} from {path}: {e}") from e
        if not isinstance(data, dict):
            raise DomainError(f"{what} in {path} must be a JSON object")
        return entity_class.from_dict(data)

    def _structure_function(self, args: argparse.Namespace) -> StructureFunction:
        if getattr(args, "input", None):
            return self._read_json(args.input, StructureFunction, "structure function")

        data = {"bracket": args.bracket, "mu": list(args.mu)}
        if args.q is not None:
            data["q"] = args.q
        if args.p is not None:
            data["p"] = args.p
        return StructureFunction.from_dict(data)

    @staticmethod
    def _required(value, flag: str, family: str):
        if value is None:
            raise DomainError(f"--family {family} requires {flag}")
        return value

    def _relation(self, args: argparse.Namespace) -> Recurrence:
        if getattr(args, "relation_input", None):
            rec = self._read_json(args.relation_input, Recurrence, "recurrence")
        elif args.coefficients:
            rec = Recurrence.of([parse_rational(value) for value in args.coefficients])
        else:
            family = self._required(args.family, "--family or --coefficients", "selection")
            if family == "classical":
                rec = kbonacci_classical(self._required(args.k, "--k", family))
            elif family == "q":
                rec = kbonacci_q(self._required(args.k, "--k", family),
                                 parse_rational(self._required(args.q, "--q", family)))
            elif family == "pentanacci":
                rec = pentanacci_pq(parse_rational(self._required(args.p, "--p", family)),
                                    parse_rational(self._required(args.q, "--q", family)))
            elif family == "ninebonacci":
                rec = ninebonacci_pq(parse_rational(self._required(args.p, "--p", family)),
                                     parse_rational(self._required(args.q, "--q", family)))
            elif family == "ninebonacci-qlimit":
                rec = ninebonacci_qlimit(parse_rational(self._required(args.q, "--q", family)))
            else:
                rec = pq_bracket_recurrence(parse_rational(self._required(args.p, "--p", family)),
                                            parse_rational(self._required(args.q, "--q", family)),
                                            self._required(args.poly_order, "--poly-order", family))
        if args.extend:
            rec = extend_recurrence(rec, [parse_rational(value) for value in args.extend])
        return rec

    # Commands

    def _cmd_spectrum(self, args: argparse.Namespace) -> Tuple[Document, int]:
        sf = self._structure_function(args)
        n_max = args.n_max if args.n_max is not None else self.config_manager.get("spectrum.default_n_max")
        spectrum = sf.spectrum(n_max)
        data = {"structure_function": sf.to_dict()}
        data.update(spectrum.to_dict())
        return Document(data, ["n", "phi", "energy"], spectrum.to_rows()), EXIT_OK

    def _cmd_detect(self, args: argparse.Namespace) -> Tuple[Document, int]:
        sf = self._structure_function(args)
        cap = self.config_manager.max_order_cap
        max_order = args.max_order if args.max_order is not None else \
            self.config_manager.get("detection.default_max_order")
        if max_order > cap:
            logger.warning(f"--max-order {max_order} exceeds the cap {cap}, searching up to {cap}")
            max_order = cap
        kind = SequenceKind(args.apply_to)
        rec = detect_minimal_recurrence(sf, max_order, kind, self.event_dispatcher)
        if rec is None:
            data = {"order": None, "coefficients": None, "applied_to": kind.value}
        else:
            data = rec.to_dict()
        return Document(data), EXIT_OK

    def _cmd_coefficients(self, args: argparse.Namespace) -> Tuple[Document, int]:
        return Document(self._relation(args).to_dict()), EXIT_OK

    def _cmd_verify(self, args: argparse.Namespace) -> Tuple[Document, int]:
        sf = self._structure_function(args)
        rec = self._relation(args)
        if args.apply_to is not None:
            kind = SequenceKind(args.apply_to)
        else:
            kind = rec.applied_to or SequenceKind.PHI
        rec = rec.applied(kind)
        window = tuple(args.window) if args.window else None
        report = verify_recurrence(sf, rec, kind, window, self.event_dispatcher)
        data = {"recurrence": rec.to_dict()}
        data.update(report.to_dict())
        return Document(data), EXIT_OK if report.holds else EXIT_VERIFICATION_FAILED

    def _cmd_inhom(self, args: argparse.Namespace) -> Tuple[Document, int]:
        sf = self._structure_function(args)
        rel = solve_inhomogeneous(sf, args.degree)
        report = verify_inhomogeneous(sf, rel, dispatcher=self.event_dispatcher)
        data = rel.to_dict()
        data["verification"] = report.to_dict()
        return Document(data), EXIT_OK if report.holds else EXIT_VERIFICATION_FAILED

    def _cmd_quasi(self, args: argparse.Namespace) -> Tuple[Document, int]:
        sf = self._structure_function(args)
        n_max = args.n_max if args.n_max is not None else self.config_manager.get("quasi.default_n_max")
        c = parse_rational(args.c if args.c is not None else self.config_manager.get("quasi.default_c", "0"))

        if args.compare_closed_form:
            comparisons = quasi_closed_form_report(sf, c, n_max, self.event_dispatcher)
            rows = [[str(item.n), format_rational(item.recursive), format_rational(item.energy_form),
                     format_rational(item.phi_form) if item.phi_form is not None else ""]
                    for item in comparisons]
            return Document({"c": format_rational(c), "comparisons": [item.to_dict() for item in comparisons]},
                            ["n", "recursive", "energy_form", "phi_form"], rows), EXIT_OK

        if QuasiMethod(args.method) is QuasiMethod.RATIO:
            track = quasi_ratio_track(sf, args.n_start, n_max, self.event_dispatcher)
        else:
            track = quasi_recursive(sf, c, n_max)

        data = track.to_dict()
        code = EXIT_OK
        if track.points and not track.singular_points:
            report = verify_quasi(sf, track, dispatcher=self.event_dispatcher)
            data["verification"] = report.to_dict()
            code = EXIT_OK if report.holds else EXIT_VERIFICATION_FAILED
        return Document(data, ["n", "lambda", "rho"], track.to_rows()), code

    def _cmd_table(self, args: argparse.Namespace) -> Tuple[Document, int]:
        r_max = args.r_max if args.r_max is not None else self.config_manager.get("table.default_r_max")
        if r_max < 1:
            raise DomainError(f"--r-max must be >= 1, got {r_max}")
        rows = inhomogeneous_table(r_max)

        cells = [("k", "alpha~", "alpha~~", "alpha")]
        for row in rows:
            for i in range(row.k):
                cells.append((str(row.k) if i == 0 else "",
                              f"a~{i} = {format_linear_form(row.alpha_tilde[i])}",
                              f"a~~{i} = {format_linear_form(row.alpha_tilde_tilde[i])}",
                              f"a{i} = {format_linear_form(row.alpha[i])}"))
        widths = [max(len(cell[column]) for cell in cells) for column in range(4)]
        lines = [" | ".join(cell[column].ljust(widths[column]) for column in range(4)).rstrip()
                 for cell in cells]
        lines.append("lambda = 2, rho = -1 in every row")
        return Document({"rows": [row.to_dict() for row in rows]}, lines=lines), EXIT_OK

    def _cmd_audit(self, args: argparse.Namespace) -> Tuple[Document, int]:
        report = full_audit(parse_rational(args.p), parse_rational(args.q),
                            parse_rational(args.q_limit), parse_rational(args.kappa),
                            self.event_dispatcher)
        return Document(report.to_dict()), EXIT_OK
