"""
Greatest simulations and bisimulations between fuzzy automata.

For each of the six types w the greatest relation satisfying (w-2) and (w-3)
is the greatest post-fixed point of an isotone operator φ^w below an initial
relation ψ^w. It is found by the descending sequence

    φ_1 = ψ^w,    φ_{k+1} = φ_k ∧ φ^w(φ_k),

and a simulation of type w exists iff the limit satisfies (w-1). The crisp
variant iterates (φ^w)^c from the crisp part of ψ^w and always terminates.
"""
import itertools
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..config import Config
from ..exceptions import (
    AlphabetMismatchError,
    ConfigurationError,
    LatticeMismatchError,
    NonCrispError,
    OracleSizeError,
    ShapeError,
)
from ..utils.fuzrel import (
    FuzzyMatrix,
    arrow_bi,
    arrow_left,
    arrow_right,
    compose,
    converse,
    crisp_part,
    equal_rel,
    is_crisp,
    join_all,
    left_residual,
    leq_rel,
    meet_all,
    pointwise_meet,
    right_residual,
)
from ..utils.thread_pool import map_in_parallel
from .automaton import FuzzyAutomaton

logger = logging.getLogger(__name__)


class SimulationType(str, Enum):
    FS = "fs"
    BS = "bs"
    FB = "fb"
    BB = "bb"
    FBB = "fbb"
    BFB = "bfb"

    @property
    def is_bisimulation(self) -> bool:
        return self not in (SimulationType.FS, SimulationType.BS)

    @property
    def is_homotypic(self) -> bool:
        return self in (SimulationType.FB, SimulationType.BB)

    @property
    def is_heterotypic(self) -> bool:
        return self in (SimulationType.FBB, SimulationType.BFB)

    @property
    def dual(self) -> 'SimulationType':
        """The type that a relation of this type has between the reverse automata."""
        return _DUALS[self]

    @property
    def label(self) -> str:
        return _LABELS[self]


_DUALS = {
    SimulationType.FS: SimulationType.BS,
    SimulationType.BS: SimulationType.FS,
    SimulationType.FB: SimulationType.BB,
    SimulationType.BB: SimulationType.FB,
    SimulationType.FBB: SimulationType.BFB,
    SimulationType.BFB: SimulationType.FBB,
}

_LABELS = {
    SimulationType.FS: "forward simulation",
    SimulationType.BS: "backward simulation",
    SimulationType.FB: "forward bisimulation",
    SimulationType.BB: "backward bisimulation",
    SimulationType.FBB: "forward-backward bisimulation",
    SimulationType.BFB: "backward-forward bisimulation",
}

# Each type is a pair (type of φ, type of φ⁻¹ between B and A); None for the plain simulations
_COMPONENTS = {
    SimulationType.FS: (SimulationType.FS, None),
    SimulationType.BS: (SimulationType.BS, None),
    SimulationType.FB: (SimulationType.FS, SimulationType.FS),
    SimulationType.BB: (SimulationType.BS, SimulationType.BS),
    SimulationType.FBB: (SimulationType.FS, SimulationType.BS),
    SimulationType.BFB: (SimulationType.BS, SimulationType.FS),
}


class OutcomeStatus(str, Enum):
    GREATEST = "greatest"
    NO_SIMULATION = "none"
    CAP_REACHED = "cap_reached"


@dataclass(frozen=True)
class ComputationOutcome:
    """
    Result of a greatest-simulation computation.

    `relation` is the greatest relation for GREATEST, the greatest solution of
    (w-2) and (w-3) for NO_SIMULATION, and the last iterate for CAP_REACHED.
    """
    status: OutcomeStatus
    sim_type: SimulationType
    relation: FuzzyMatrix
    iterations: int
    condition_w1_holds: bool
    crisp: bool = False
    termination_guaranteed: Optional[bool] = None
    warnings: Tuple[str, ...] = ()
    trace: Tuple[FuzzyMatrix, ...] = field(default=(), repr=False)

    @property
    def exists(self) -> bool:
        return self.status is OutcomeStatus.GREATEST


@dataclass(frozen=True)
class ConditionReport:
    """Truth values of (w-1), (w-2), (w-3) and of the equivalent post-fixed-point form."""
    sim_type: SimulationType
    w1: bool
    w2: bool
    w3: bool
    post_fixed_point: Optional[bool] = None
    below_psi: Optional[bool] = None
    nonempty: bool = True

    @property
    def holds(self) -> bool:
        return self.w1 and self.w2 and self.w3

    @property
    def forms_agree(self) -> Optional[bool]:
        if self.post_fixed_point is None:
            return None
        return (self.w2 and self.w3) == (self.post_fixed_point and self.below_psi)


def _check_pair(a: FuzzyAutomaton, b: FuzzyAutomaton) -> None:
    if a.lattice != b.lattice:
        raise LatticeMismatchError(f"Automata are over different lattices: {a.lattice.name} and {b.lattice.name}")
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatchError(f"Automata are over different alphabets: {list(a.alphabet)} and {list(b.alphabet)}")


def _check_relation(a: FuzzyAutomaton, b: FuzzyAutomaton, phi: FuzzyMatrix, name: str = 'relation') -> None:
    if phi.shape != (a.size, b.size):
        raise ShapeError(f"{name} must be {a.size}x{b.size}, got {phi.rows}x{phi.cols}")
    if phi.lattice != a.lattice:
        raise LatticeMismatchError(f"{name} is over {phi.lattice.name}, the automata over {a.lattice.name}")


# ----------------------------------------------------------------------
# initial relations ψ^w

def psi_init(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton) -> FuzzyMatrix:
    """The relation ψ^w; φ satisfies (w-3) iff φ ≤ ψ^w."""
    w = SimulationType(w)
    _check_pair(a, b)
    if w is SimulationType.FS:
        return arrow_right(a.tau, b.tau)
    if w is SimulationType.BS:
        return arrow_right(a.sigma, b.sigma)
    if w is SimulationType.FB:
        return arrow_bi(a.tau, b.tau)
    if w is SimulationType.BB:
        return arrow_bi(a.sigma, b.sigma)
    if w is SimulationType.FBB:
        return pointwise_meet(arrow_right(a.tau, b.tau), arrow_left(a.sigma, b.sigma))
    return pointwise_meet(arrow_right(a.sigma, b.sigma), arrow_left(a.tau, b.tau))


# ----------------------------------------------------------------------
# operators φ^w

def _meet_over_letters(a: FuzzyAutomaton, b: FuzzyAutomaton, per_letter: Callable[[str], FuzzyMatrix],
                       workers: Optional[int]) -> FuzzyMatrix:
    workers = Config.MAX_WORKERS if workers is None else workers
    results = map_in_parallel(list(a.alphabet), per_letter, max_workers=workers, label='letter')
    return meet_all(results, a.lattice, a.size, b.size)


def _phi_fs(a: FuzzyAutomaton, b: FuzzyAutomaton, alpha: FuzzyMatrix, workers: Optional[int] = None) -> FuzzyMatrix:
    # ⋀_x [(δ_x^B ∘ α⁻¹) \ δ_x^A]⁻¹
    alpha_inv = converse(alpha)

    def per_letter(letter):
        return converse(left_residual(compose(b.transition(letter), alpha_inv), a.transition(letter)))

    return _meet_over_letters(a, b, per_letter, workers)


def _phi_bs(a: FuzzyAutomaton, b: FuzzyAutomaton, alpha: FuzzyMatrix, workers: Optional[int] = None) -> FuzzyMatrix:
    # ⋀_x (α ∘ δ_x^B) / δ_x^A
    def per_letter(letter):
        return right_residual(compose(alpha, b.transition(letter)), a.transition(letter))

    return _meet_over_letters(a, b, per_letter, workers)


_BASE_OPERATORS = {
    SimulationType.FS: _phi_fs,
    SimulationType.BS: _phi_bs,
}


def phi_step(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton, alpha: FuzzyMatrix,
             workers: Optional[int] = None) -> FuzzyMatrix:
    """
    Apply the isotone operator φ^w to a relation α between A and B.

    The bisimulation operators are meets of the two simulation operators:
    φ^{fb}(α) = φ^{fs}(α) ∧ [φ^{fs}(α⁻¹)]⁻¹ and so on, the inner operator
    taken between B and A.
    """
    w = SimulationType(w)
    _check_pair(a, b)
    _check_relation(a, b, alpha, 'alpha')
    forward, backward = _COMPONENTS[w]
    result = _BASE_OPERATORS[forward](a, b, alpha, workers)
    if backward is not None:
        result = pointwise_meet(result, converse(_BASE_OPERATORS[backward](b, a, converse(alpha), workers)))
    return result


def _crisp_fs(a: FuzzyAutomaton, b: FuzzyAutomaton, rho: FuzzyMatrix) -> FuzzyMatrix:
    # (a, b) kept iff δ_x^A(a, a') ≤ (δ_x^B ∘ ρ⁻¹)(b, a') for all x, a'
    lattice = a.lattice
    keep = np.ones((a.size, b.size), dtype=bool)
    rho_inv = converse(rho)
    for letter in a.alphabet:
        reach = compose(b.transition(letter), rho_inv).entries  # (b, a')
        moves = a.transition(letter).entries  # (a, a')
        keep &= np.all(moves[:, None, :] <= reach[None, :, :], axis=2)
    return FuzzyMatrix._trusted(lattice, np.where(keep, lattice.top, lattice.bottom))


def _crisp_bs(a: FuzzyAutomaton, b: FuzzyAutomaton, rho: FuzzyMatrix) -> FuzzyMatrix:
    # (a, b) kept iff δ_x^A(a', a) ≤ (ρ ∘ δ_x^B)(a', b) for all x, a'
    lattice = a.lattice
    keep = np.ones((a.size, b.size), dtype=bool)
    for letter in a.alphabet:
        reach = compose(rho, b.transition(letter)).entries  # (a', b)
        moves = a.transition(letter).entries  # (a', a)
        keep &= np.all(moves[:, :, None] <= reach[:, None, :], axis=0)
    return FuzzyMatrix._trusted(lattice, np.where(keep, lattice.top, lattice.bottom))


_CRISP_OPERATORS = {
    SimulationType.FS: _crisp_fs,
    SimulationType.BS: _crisp_bs,
}


def phi_crisp_step(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton, rho: FuzzyMatrix) -> FuzzyMatrix:
    """(φ^w)^c(ρ) = crisp part of φ^w(ρ), for a crisp relation ρ."""
    w = SimulationType(w)
    _check_pair(a, b)
    _check_relation(a, b, rho, 'rho')
    if not is_crisp(rho):
        raise NonCrispError("phi_crisp_step needs a crisp relation (entries 0 and 1 only)")
    forward, backward = _COMPONENTS[w]
    result = _CRISP_OPERATORS[forward](a, b, rho)
    if backward is not None:
        result = pointwise_meet(result, converse(_CRISP_OPERATORS[backward](b, a, converse(rho))))
    return result


# ----------------------------------------------------------------------
# conditions

def _fs_conditions(a: FuzzyAutomaton, b: FuzzyAutomaton, phi: FuzzyMatrix) -> Tuple[bool, bool, bool]:
    phi_inv = converse(phi)
    initial = leq_rel(a.sigma, compose(b.sigma, phi_inv))
    transitions = all(
        leq_rel(compose(phi_inv, a.transition(x)), compose(b.transition(x), phi_inv))
        for x in a.alphabet
    )
    terminal = leq_rel(compose(phi_inv, a.tau), b.tau)
    return initial, transitions, terminal


def _bs_conditions(a: FuzzyAutomaton, b: FuzzyAutomaton, phi: FuzzyMatrix) -> Tuple[bool, bool, bool]:
    terminal = leq_rel(a.tau, compose(phi, b.tau))
    transitions = all(
        leq_rel(compose(a.transition(x), phi), compose(phi, b.transition(x)))
        for x in a.alphabet
    )
    initial = leq_rel(compose(a.sigma, phi), b.sigma)
    return terminal, transitions, initial


_BASE_CONDITIONS = {
    SimulationType.FS: _fs_conditions,
    SimulationType.BS: _bs_conditions,
}


def literal_conditions(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton,
                       phi: FuzzyMatrix) -> Tuple[bool, bool, bool]:
    """(w-1), (w-2), (w-3) evaluated as relation inequalities."""
    w = SimulationType(w)
    forward, backward = _COMPONENTS[w]
    first = _BASE_CONDITIONS[forward](a, b, phi)
    if backward is None:
        return first
    second = _BASE_CONDITIONS[backward](b, a, converse(phi))
    return tuple(x and y for x, y in zip(first, second))


def check_conditions(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton, phi: FuzzyMatrix,
                     equivalent_form: bool = True) -> ConditionReport:
    """
    Evaluate the defining conditions of a type-w relation between A and B.

    Args:
        equivalent_form: also evaluate φ ≤ φ^w(φ) and φ ≤ ψ^w, which hold
            together exactly when (w-2) and (w-3) hold

    Returns:
        ConditionReport
    """
    w = SimulationType(w)
    _check_pair(a, b)
    _check_relation(a, b, phi)
    w1, w2, w3 = literal_conditions(w, a, b, phi)
    nonempty = bool(np.any(phi.entries != phi.lattice.bottom))
    if not equivalent_form:
        return ConditionReport(sim_type=w, w1=w1, w2=w2, w3=w3, nonempty=nonempty)

    report = ConditionReport(
        sim_type=w,
        w1=w1,
        w2=w2,
        w3=w3,
        post_fixed_point=leq_rel(phi, phi_step(w, a, b, phi)),
        below_psi=leq_rel(phi, psi_init(w, a, b)),
        nonempty=nonempty,
    )
    if not report.forms_agree:
        logger.warning(f"{w.value}: literal conditions and post-fixed-point form disagree for {phi.tolist()}")
    return report


# ----------------------------------------------------------------------
# the iterations

def _probe_termination(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton, psi: FuzzyMatrix) -> bool:
    seed = [psi.values()]
    for automaton in (a, b):
        seed.extend(matrix.values() for matrix in automaton.delta.values())
    seed = np.concatenate(seed)
    # never below the number of distinct seed values
    closure = a.lattice.subalgebra_closure(seed.tolist(), cap=max(Config.PROBE_CAP, np.unique(seed).size + 2))
    logger.debug(f"{w.value}: termination probe generated {len(closure)} values (cap exceeded: {closure.cap_exceeded})")
    return closure.is_finite


def _finish(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton, relation: FuzzyMatrix, iterations: int,
            stabilized: bool, crisp: bool, termination_guaranteed: Optional[bool],
            trace: List[FuzzyMatrix]) -> ComputationOutcome:
    w1, _, _ = literal_conditions(w, a, b, relation)
    warnings = []

    if not stabilized:
        status = OutcomeStatus.CAP_REACHED
        # every implemented instance satisfies the infinite distributivity laws
        warnings.append(
            f"iteration cap reached after {iterations} iterations; {a.lattice.name} satisfies the infinite "
            "distributivity conditions, so the infimum of the iterates is the greatest relation satisfying "
            f"({w.value}-2) and ({w.value}-3), but it was not reached"
        )
        if termination_guaranteed:
            warnings.append("the generated subalgebra is finite, yet the sequence did not stabilize before the cap")
            logger.warning(f"{w.value}: cap reached although the termination probe predicted stabilization")
    elif w1:
        status = OutcomeStatus.GREATEST
        if not np.any(relation.entries != relation.lattice.bottom):
            warnings.append("the greatest relation is empty (all initial or terminal degrees are 0)")
            logger.warning(f"{w.value}: accepting an empty relation")
    else:
        status = OutcomeStatus.NO_SIMULATION

    return ComputationOutcome(
        status=status,
        sim_type=w,
        relation=relation,
        iterations=iterations,
        condition_w1_holds=w1,
        crisp=crisp,
        termination_guaranteed=termination_guaranteed,
        warnings=tuple(warnings),
        trace=tuple(trace),
    )


def greatest_simulation(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton, cap: Optional[int] = None,
                        trace: bool = False, workers: Optional[int] = None) -> ComputationOutcome:
    """
    Compute the greatest type-w simulation/bisimulation from A to B.

    Args:
        w: simulation type
        a, b: automata over the same lattice and alphabet
        cap: highest iterate index to reach before giving up (default Config.ITERATION_CAP)
        trace: keep every iterate in the outcome
        workers: threads for the per-letter residuals (default Config.MAX_WORKERS)

    Returns:
        ComputationOutcome with status GREATEST, NO_SIMULATION or CAP_REACHED
    """
    w = SimulationType(w)
    _check_pair(a, b)
    cap = Config.ITERATION_CAP if cap is None else cap
    if cap < 1:
        raise ConfigurationError(f"Iteration cap must be at least 1, got {cap}")

    start_time = time.time()
    psi = psi_init(w, a, b)
    guaranteed = _probe_termination(w, a, b, psi)
    logger.info(f"{w.value}: iterating on {a.size}x{b.size} relations over {a.lattice.name} (cap {cap})")

    current = psi
    history = [current] if trace else []
    k = 1
    while True:
        following = pointwise_meet(current, phi_step(w, a, b, current, workers=workers))
        if equal_rel(following, current):
            logger.info(f"{w.value}: stabilized at iterate {k} in {time.time() - start_time:.3f}s")
            return _finish(w, a, b, current, k, True, False, guaranteed, history)
        if k >= cap:
            logger.info(f"{w.value}: cap {cap} reached in {time.time() - start_time:.3f}s")
            return _finish(w, a, b, current, k, False, False, guaranteed, history)
        current = following
        k += 1
        if trace:
            history.append(current)
        logger.debug(f"{w.value}: iterate {k} = {current.tolist()}")


def greatest_crisp_simulation(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton,
                              trace: bool = False) -> ComputationOutcome:
    """
    Compute the greatest crisp type-w simulation/bisimulation from A to B.

    Every step removes at least one pair or stabilizes, so at most |A|·|B| + 1
    iterates are produced whatever the lattice.
    """
    w = SimulationType(w)
    _check_pair(a, b)

    current = crisp_part(psi_init(w, a, b))
    history = [current] if trace else []
    k = 1
    while True:
        following = pointwise_meet(current, phi_crisp_step(w, a, b, current))
        if np.array_equal(following.entries, current.entries):
            logger.info(f"{w.value}: crisp iteration stabilized at iterate {k}")
            return _finish(w, a, b, current, k, True, True, True, history)
        current = following
        k += 1
        if trace:
            history.append(current)


def brute_force_oracle(w: SimulationType, a: FuzzyAutomaton, b: FuzzyAutomaton,
                       max_pairs: Optional[int] = None) -> ComputationOutcome:
    """
    Greatest crisp type-w relation by exhaustive enumeration.

    Joins every crisp relation that satisfies (w-2) and (w-3), then decides
    existence by (w-1) on the join. Only meant for small automata.
    """
    w = SimulationType(w)
    _check_pair(a, b)
    max_pairs = Config.ORACLE_MAX_PAIRS if max_pairs is None else max_pairs
    pairs = a.size * b.size
    if pairs > max_pairs:
        raise OracleSizeError(f"Enumerating 2^{pairs} relations exceeds the guard of 2^{max_pairs}")

    lattice = a.lattice
    start_time = time.time()
    solutions = []
    for bits in itertools.product((lattice.bottom, lattice.top), repeat=pairs):
        candidate = FuzzyMatrix._trusted(lattice, np.asarray(bits, dtype=lattice.dtype).reshape(a.size, b.size))
        _, w2, w3 = literal_conditions(w, a, b, candidate)
        if w2 and w3:
            solutions.append(candidate)

    greatest = join_all(solutions, lattice, a.size, b.size)
    _, w2, w3 = literal_conditions(w, a, b, greatest)
    assert w2 and w3, "join of solutions must be a solution"
    logger.info(f"{w.value}: oracle checked {2 ** pairs} relations in {time.time() - start_time:.3f}s")
    return _finish(w, a, b, greatest, 2 ** pairs, True, True, True, [])
