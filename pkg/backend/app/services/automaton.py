"""
Fuzzy automata A = (A, δ, σ, τ) over a residuated lattice.

Nondeterministic automata are fuzzy automata over the Boolean lattice; no
separate type exists for them.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Mapping, Sequence, Tuple

from ..exceptions import AutomatonValidationError, UnknownLetterError
from ..utils.fuzrel import FuzzyMatrix, compose, converse
from ..utils.lattice import LatticeValue, ResiduatedLattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FuzzyAutomaton:
    """
    A finite fuzzy automaton.

    Args:
        lattice: structure of truth values
        states: state names, |A| >= 1
        alphabet: input letters
        delta: letter -> |A|×|A| transition matrix
        sigma: 1×|A| fuzzy set of initial states
        tau: |A|×1 fuzzy set of terminal states
    """
    lattice: ResiduatedLattice
    states: Tuple[str, ...]
    alphabet: Tuple[str, ...]
    delta: Mapping[str, FuzzyMatrix] = field(repr=False)
    sigma: FuzzyMatrix = field(repr=False)
    tau: FuzzyMatrix = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'states', tuple(self.states))
        object.__setattr__(self, 'alphabet', tuple(self.alphabet))
        object.__setattr__(self, 'delta', dict(self.delta))

    @classmethod
    def from_lists(cls, lattice: ResiduatedLattice, states: Sequence[str], delta: Mapping[str, Sequence[Sequence]],
                   sigma: Sequence, tau: Sequence) -> 'FuzzyAutomaton':
        """Build from nested lists, the alphabet being the keys of `delta` in order."""
        return cls(
            lattice=lattice,
            states=tuple(states),
            alphabet=tuple(delta),
            delta={letter: FuzzyMatrix.from_rows(lattice, rows) for letter, rows in delta.items()},
            sigma=FuzzyMatrix.row_vector(lattice, sigma),
            tau=FuzzyMatrix.column_vector(lattice, tau),
        )

    @property
    def size(self) -> int:
        return len(self.states)

    def transition(self, letter: str) -> FuzzyMatrix:
        try:
            return self.delta[letter]
        except KeyError:
            raise UnknownLetterError(f"Letter {letter!r} is not in the alphabet {list(self.alphabet)}") from None


def validate(a: FuzzyAutomaton) -> List[str]:
    """
    Check the structural invariants of an automaton.

    Returns:
        list: every violation found; empty when the automaton is valid
    """
    diagnostics = []
    size = len(a.states)

    if size < 1:
        diagnostics.append("automaton has no states")
    if len(set(a.states)) != size:
        duplicates = sorted({s for s in a.states if a.states.count(s) > 1})
        diagnostics.append(f"state names are not unique: {', '.join(duplicates)}")
    if len(set(a.alphabet)) != len(a.alphabet):
        diagnostics.append("alphabet letters are not unique")

    for letter in a.alphabet:
        matrix = a.delta.get(letter)
        if matrix is None:
            diagnostics.append(f"letter {letter} has no transition matrix")
            continue
        if matrix.shape != (size, size):
            diagnostics.append(f"transition matrix of {letter} is {matrix.rows}x{matrix.cols}, expected {size}x{size}")
        if matrix.lattice != a.lattice:
            diagnostics.append(f"transition matrix of {letter} is over {matrix.lattice.name}, expected {a.lattice.name}")
    for letter in a.delta:
        if letter not in a.alphabet:
            diagnostics.append(f"transition matrix given for {letter}, which is not in the alphabet")

    if a.sigma.shape != (1, size):
        diagnostics.append(f"initial vector is {a.sigma.rows}x{a.sigma.cols}, expected 1x{size}")
    if a.sigma.lattice != a.lattice:
        diagnostics.append(f"initial vector is over {a.sigma.lattice.name}, expected {a.lattice.name}")
    if a.tau.shape != (size, 1):
        diagnostics.append(f"final vector is {a.tau.rows}x{a.tau.cols}, expected {size}x1")
    if a.tau.lattice != a.lattice:
        diagnostics.append(f"final vector is over {a.tau.lattice.name}, expected {a.lattice.name}")

    return diagnostics


def ensure_valid(a: FuzzyAutomaton, source: str = None) -> FuzzyAutomaton:
    diagnostics = validate(a)
    if diagnostics:
        raise AutomatonValidationError(diagnostics, source=source)
    return a


def reverse(a: FuzzyAutomaton) -> FuzzyAutomaton:
    """Transpose every transition matrix and swap the initial and terminal sets."""
    return FuzzyAutomaton(
        lattice=a.lattice,
        states=a.states,
        alphabet=a.alphabet,
        delta={letter: converse(matrix) for letter, matrix in a.delta.items()},
        sigma=converse(a.tau),
        tau=converse(a.sigma),
    )


def delta_word(a: FuzzyAutomaton, word: Sequence[str]) -> FuzzyMatrix:
    """δ_u: the crisp identity for the empty word, δ_u ∘ δ_x for ux."""
    result = FuzzyMatrix.identity(a.lattice, a.size)
    for letter in word:
        result = compose(result, a.transition(letter))
    return result


def language_degree(a: FuzzyAutomaton, word: Sequence[str]) -> LatticeValue:
    """Degree to which the automaton accepts `word`: σ ∘ δ_u ∘ τ."""
    return compose(compose(a.sigma, delta_word(a, word)), a.tau).scalar()
