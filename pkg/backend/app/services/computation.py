"""
Driver shared by the command line and the HTTP routes: load inputs, run the
core computation and turn its result into JSON-ready dictionaries.
"""
import logging
import time
from typing import Any, Dict, Optional, Sequence, Union

from ..exceptions import ConfigurationError
from ..utils.helpers import parse_word
from ..utils.lattice import LatticeValue
from .automaton import language_degree
from .automaton_file import Source, load_automaton, load_relation
from .simbisim import (
    ComputationOutcome,
    ConditionReport,
    OutcomeStatus,
    SimulationType,
    check_conditions,
    greatest_crisp_simulation,
    greatest_simulation,
)

logger = logging.getLogger(__name__)

EXIT_CODES = {
    OutcomeStatus.GREATEST: 0,
    OutcomeStatus.NO_SIMULATION: 1,
    OutcomeStatus.CAP_REACHED: 2,
}
USAGE_EXIT_CODE = 64


def exit_code(outcome: ComputationOutcome) -> int:
    return EXIT_CODES[outcome.status]


def parse_type(value: Union[str, SimulationType]) -> SimulationType:
    try:
        return SimulationType(value)
    except ValueError:
        choices = ', '.join(t.value for t in SimulationType)
        raise ConfigurationError(f"Unknown simulation type {value!r} (expected one of {choices})") from None


def outcome_to_dict(outcome: ComputationOutcome, include_trace: bool = False) -> Dict[str, Any]:
    """The result document of a computation."""
    data = {
        'status': outcome.status.value,
        'type': outcome.sim_type.value,
        'iterations': outcome.iterations,
        'relation': outcome.relation.tolist(),
        'condition_w1': outcome.condition_w1_holds,
        'warnings': list(outcome.warnings),
        'crisp': outcome.crisp,
        'termination_guaranteed': outcome.termination_guaranteed,
    }
    if include_trace:
        data['trace'] = [iterate.tolist() for iterate in outcome.trace]
    return data


def report_to_dict(report: ConditionReport) -> Dict[str, Any]:
    w = report.sim_type.value
    return {
        'type': w,
        'holds': report.holds,
        'conditions': {f'{w}-1': report.w1, f'{w}-2': report.w2, f'{w}-3': report.w3},
        'post_fixed_point': report.post_fixed_point,
        'below_psi': report.below_psi,
        'forms_agree': report.forms_agree,
        'nonempty': report.nonempty,
    }


def run_compute(a_source: Source, b_source: Source, sim_type: Union[str, SimulationType], crisp: bool = False,
                cap: Optional[int] = None, tolerance: Optional[float] = None,
                trace: bool = False) -> ComputationOutcome:
    w = parse_type(sim_type)
    a = load_automaton(a_source, tolerance=tolerance)
    b = load_automaton(b_source, tolerance=tolerance)

    start_time = time.time()
    if crisp:
        outcome = greatest_crisp_simulation(w, a, b, trace=trace)
    else:
        outcome = greatest_simulation(w, a, b, cap=cap, trace=trace)
    logger.info(f"compute {w.value}{' (crisp)' if crisp else ''}: {outcome.status.value} "
                f"after {outcome.iterations} iterations in {time.time() - start_time:.3f}s")
    return outcome


def run_check(a_source: Source, b_source: Source, relation_source: Source, sim_type: Union[str, SimulationType],
              tolerance: Optional[float] = None) -> ConditionReport:
    w = parse_type(sim_type)
    a = load_automaton(a_source, tolerance=tolerance)
    b = load_automaton(b_source, tolerance=tolerance)
    phi = load_relation(relation_source, a.lattice)
    return check_conditions(w, a, b, phi)


def run_degree(a_source: Source, word: Union[str, Sequence[str], None]) -> LatticeValue:
    a = load_automaton(a_source)
    return language_degree(a, parse_word(word))
