"""
Print-vs-oracle audit of the published closed forms.

Each audit compares a printed expression with an independently computed
oracle and returns one Discrepancy per mismatch. Discrepancies are logged
and dispatched as CLOSED_FORM_DISCREPANCY events; they are never corrected.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence
import logging

from core.event_system import EventDispatcher, EventType, notify
from core.numbers import RationalLike, format_rational, parse_rational
from entities.recurrence import Recurrence
from entities.structure_function import SequenceKind, StructureFunction
from solvers.closed_forms import (
    INHOMOGENEOUS_TABLE, ninebonacci_pq_printed, ninebonacci_qlimit_printed,
    parse_linear_form, qlimit_multipliers_printed, six_term_pattern,
)
from solvers.inhomogeneous import format_linear_form, inhomogeneous_row
from solvers.quasi_fibonacci import quasi_closed_form_report
from solvers.recurrence_engine import (
    cofactor_multipliers, extend_recurrence, ninebonacci_pq, ninebonacci_qlimit,
    pentanacci_pq, verify_recurrence,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Discrepancy:
    """
    One printed value that disagrees with its oracle.

    Attributes:
        label (str): What was compared, e.g. "ninebonacci_pq(2,3).A2"
        printed (str): The printed value
        oracle (str): The independently computed value
        note (str): Short classification of the mismatch
    """
    label: str
    printed: str
    oracle: str
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"label": self.label, "printed": self.printed, "oracle": self.oracle, "note": self.note}


@dataclass
class AuditReport:
    """Collected discrepancies plus the list of audits that ran."""
    audits: List[str] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)

    def extend(self, name: str, found: Sequence[Discrepancy]):
        self.audits.append(name)
        self.discrepancies.extend(found)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "audits": list(self.audits),
            "discrepancy_count": len(self.discrepancies),
            "discrepancies": [item.to_dict() for item in self.discrepancies],
        }


def _report(found: List[Discrepancy], dispatcher: Optional[EventDispatcher]) -> List[Discrepancy]:
    for item in found:
        logger.warning(f"{item.label}: printed {item.printed}, oracle {item.oracle} ({item.note})")
        notify(dispatcher, EventType.CLOSED_FORM_DISCREPANCY, None, **item.to_dict())
    return found


def _compare_coefficients(label: str, printed: Recurrence, oracle: Recurrence,
                          note: str) -> List[Discrepancy]:
    return [
        Discrepancy(f"{label}.A{i}", format_rational(a), format_rational(b), note)
        for i, (a, b) in enumerate(zip(printed.coefficients, oracle.coefficients))
        if a != b
    ]


def audit_ninebonacci_pq(p: RationalLike, q: RationalLike,
                         dispatcher: Optional[EventDispatcher] = None) -> List[Discrepancy]:
    """Printed A_j(p,q) against the characteristic-polynomial generator."""
    p, q = parse_rational(p), parse_rational(q)
    label = f"ninebonacci_pq({format_rational(p)},{format_rational(q)})"
    found = _compare_coefficients(label, ninebonacci_pq_printed(p, q), ninebonacci_pq(p, q),
                                  "printed coefficient differs from generator")
    return _report(found, dispatcher)


def audit_ninebonacci_qlimit(q: RationalLike,
                             dispatcher: Optional[EventDispatcher] = None) -> List[Discrepancy]:
    """
    Printed A_j(q) against the p = 1 generator, plus a direct verification
    of the printed relation on a cubic q-oscillator.
    """
    q = parse_rational(q)
    label = f"ninebonacci_qlimit({format_rational(q)})"
    printed = ninebonacci_qlimit_printed(q)
    found = _compare_coefficients(label, printed, ninebonacci_qlimit(q),
                                  "printed coefficient differs from generator")

    sf = StructureFunction.q_deformed(q, 1, 1)
    report = verify_recurrence(sf, printed, SequenceKind.PHI)
    if not report.holds and report.first_failure is not None:
        n, residual = report.first_failure
        found.append(Discrepancy(f"{label}.relation", "holds", f"residual {format_rational(residual)} at n={n}",
                                 "printed relation fails on phi = [n] + [n]^2 + [n]^3"))
    return _report(found, dispatcher)


def audit_qlimit_multipliers(q: RationalLike,
                             dispatcher: Optional[EventDispatcher] = None) -> List[Discrepancy]:
    """Printed (t, x, y, z) against the exact cofactor of the five-term relation at p = 1."""
    q = parse_rational(q)
    base = pentanacci_pq(1, q)
    oracle = cofactor_multipliers(base, ninebonacci_qlimit(q))
    printed = qlimit_multipliers_printed(q)
    found = [
        Discrepancy(f"qlimit_multipliers({format_rational(q)}).{name}",
                    format_rational(a), format_rational(b), "printed multiplier differs from cofactor")
        for name, a, b in zip("txyz", printed, oracle)
        if a != b
    ]
    combined = extend_recurrence(base, printed)
    if combined != ninebonacci_qlimit_printed(q):
        found.append(Discrepancy(f"qlimit_multipliers({format_rational(q)}).combination",
                                 "reproduces printed A_j(q)", "does not",
                                 "printed multipliers do not yield the printed nine-term relation"))
    return _report(found, dispatcher)


def audit_six_term_pattern(p: RationalLike, q: RationalLike, kappa: RationalLike,
                  dispatcher: Optional[EventDispatcher] = None) -> List[Discrepancy]:
    """The printed six-term pattern against extend_recurrence with one multiplier."""
    p, q, kappa = parse_rational(p), parse_rational(q), parse_rational(kappa)
    base = pentanacci_pq(p, q)
    label = f"six_term({format_rational(p)},{format_rational(q)};kappa={format_rational(kappa)})"
    found = _compare_coefficients(label, six_term_pattern(base, kappa), extend_recurrence(base, [kappa]),
                                  "printed pattern differs from shifted-copy combination")
    return _report(found, dispatcher)


def audit_inhomogeneous_table(dispatcher: Optional[EventDispatcher] = None) -> List[Discrepancy]:
    """
    Printed table rows against the solver's linear forms.

    A printed entry that matches the solver at a different index than its
    subscript is reported as an index typo.
    """
    found = []
    for k, columns in INHOMOGENEOUS_TABLE.items():
        row = inhomogeneous_row(k)
        for column, entries in columns.items():
            solved = getattr(row, column)
            for index, text in entries:
                printed = parse_linear_form(text, k)
                label = f"table[k={k}].{column}[{index}]"
                if index < len(solved) and solved[index] == printed:
                    continue
                matches = [j for j, form in enumerate(solved) if form == printed]
                if matches:
                    found.append(Discrepancy(label, text, format_linear_form(solved[matches[0]]),
                                             f"index typo: value belongs to subscript {matches[0]}"))
                else:
                    oracle = format_linear_form(solved[index]) if index < len(solved) else "none"
                    found.append(Discrepancy(label, text, oracle, "printed value differs from solver"))
    return _report(found, dispatcher)


def audit_quasi_closed_form(sf: StructureFunction, c: RationalLike, n_max: int,
                            dispatcher: Optional[EventDispatcher] = None) -> List[Discrepancy]:
    """The phi-level closed form of lambda_n against the E-level chain."""
    found = [
        Discrepancy(f"quasi_phi_closed_form(n={item.n})",
                    format_rational(item.phi_form) if item.phi_form is not None else "undefined",
                    format_rational(item.recursive),
                    "initial value c is inert at phi level since phi(0) = 0")
        for item in quasi_closed_form_report(sf, c, n_max)
        if not item.phi_agrees
    ]
    return _report(found, dispatcher)


def full_audit(p: RationalLike = 2, q: RationalLike = 3, q_limit: RationalLike = 2,
               kappa: RationalLike = Fraction(1, 2),
               dispatcher: Optional[EventDispatcher] = None) -> AuditReport:
    """
    Run every audit at the given parameters.

    Args:
        p (Fraction): p for the two-parameter forms
        q (Fraction): q for the two-parameter forms
        q_limit (Fraction): q for the p = 1 forms
        kappa (Fraction): Multiplier for the six-term pattern
        dispatcher (EventDispatcher, optional): Receives CLOSED_FORM_DISCREPANCY

    Returns:
        AuditReport: All discrepancies
    """
    report = AuditReport()
    report.extend("ninebonacci_pq", audit_ninebonacci_pq(p, q, dispatcher))
    report.extend("ninebonacci_qlimit", audit_ninebonacci_qlimit(q_limit, dispatcher))
    report.extend("qlimit_multipliers", audit_qlimit_multipliers(q_limit, dispatcher))
    report.extend("six_term_pattern", audit_six_term_pattern(p, q, kappa, dispatcher))
    report.extend("inhomogeneous_table", audit_inhomogeneous_table(dispatcher))
    report.extend("quasi_closed_form",
                  audit_quasi_closed_form(StructureFunction.classical(1), Fraction(1), 5, dispatcher))
    logger.info(f"Audit finished with {len(report.discrepancies)} discrepancies")
    return report
