"""
Complete residuated lattices on which fuzzy relations take their values.

Five linearly ordered instances are provided: the Boolean, Gödel, Łukasiewicz
and product structures on [0, 1] (stored as float64) and the finite
Łukasiewicz chain {a_0, ..., a_n} (stored as integer indices). Every operation
accepts scalars or numpy arrays and broadcasts like numpy does.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, Optional, Tuple, Union

import numpy as np

from ..config import Config
from ..exceptions import ConfigurationError, LatticeValueError

logger = logging.getLogger(__name__)

LatticeValue = Union[float, int]

DEFAULT_TOLERANCE = 1e-12

# Upper bound on frontier x elements pairs evaluated at once by the closure
_CLOSURE_CHUNK = 1_000_000

# x → y is 1 exactly when x ≤ y, also after rounding
_BELOW_ONE = np.nextafter(1.0, 0.0)


class LatticeKind(str, Enum):
    BOOLEAN = "boolean"
    GODEL = "godel"
    LUKASIEWICZ = "lukasiewicz"
    PRODUCT = "product"
    CHAIN = "chain"


# Operations of these instances only ever return operands, 0 or 1 (or chain indices)
EXACT_KINDS = frozenset({LatticeKind.BOOLEAN, LatticeKind.GODEL, LatticeKind.CHAIN})


@dataclass(frozen=True)
class SubalgebraClosure:
    """Result of closing a seed set under the lattice operations.

    When `cap_exceeded` is set, `elements` holds what was generated before the
    cap was hit, not the closure.
    """
    elements: Tuple[LatticeValue, ...]
    cap_exceeded: bool

    @property
    def is_finite(self) -> bool:
        return not self.cap_exceeded

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class ResiduatedLattice:
    """A complete residuated lattice (L, ∧, ∨, ⊗, →, 0, 1).

    Args:
        kind: which structure
        n: number of steps of a finite chain (chain only); the chain has n + 1 elements
        tolerance: equality slack used when comparing relations; defaults to
            1e-12 for the Łukasiewicz and product structures and 0 otherwise
    """
    kind: LatticeKind
    n: Optional[int] = None
    tolerance: Optional[float] = None

    def __post_init__(self):
        try:
            kind = LatticeKind(self.kind)
        except ValueError:
            raise ConfigurationError(f"Unknown lattice type: {self.kind!r}") from None
        object.__setattr__(self, 'kind', kind)

        if kind is LatticeKind.CHAIN:
            if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
                raise ConfigurationError(f"A chain needs an integer n >= 1, got {self.n!r}")
            object.__setattr__(self, 'n', int(self.n))
        elif self.n is not None:
            raise ConfigurationError(f"Only the chain lattice takes n (got n={self.n} for {kind.value})")

        tolerance = self.tolerance
        if tolerance is None:
            tolerance = 0.0 if kind in EXACT_KINDS else DEFAULT_TOLERANCE
        elif not math.isfinite(tolerance) or tolerance < 0:
            raise ConfigurationError(f"Tolerance must be a finite number >= 0, got {tolerance!r}")
        elif tolerance > 0 and kind in (LatticeKind.BOOLEAN, LatticeKind.CHAIN):
            raise ConfigurationError(f"A tolerance is not allowed for the {kind.value} lattice")
        object.__setattr__(self, 'tolerance', float(tolerance))

    # ------------------------------------------------------------------
    # construction and serialization

    @classmethod
    def boolean(cls) -> 'ResiduatedLattice':
        return cls(LatticeKind.BOOLEAN)

    @classmethod
    def godel(cls, tolerance: Optional[float] = None) -> 'ResiduatedLattice':
        return cls(LatticeKind.GODEL, tolerance=tolerance)

    @classmethod
    def lukasiewicz(cls, tolerance: Optional[float] = None) -> 'ResiduatedLattice':
        return cls(LatticeKind.LUKASIEWICZ, tolerance=tolerance)

    @classmethod
    def product(cls, tolerance: Optional[float] = None) -> 'ResiduatedLattice':
        return cls(LatticeKind.PRODUCT, tolerance=tolerance)

    @classmethod
    def chain(cls, n: int) -> 'ResiduatedLattice':
        return cls(LatticeKind.CHAIN, n=n)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], tolerance: Optional[float] = None) -> 'ResiduatedLattice':
        """Build from the `{"type": ..., "n": ...}` object of an automaton file."""
        return cls(data.get('type'), n=data.get('n'), tolerance=tolerance)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'type': self.kind.value}
        if self.kind is LatticeKind.CHAIN:
            data['n'] = self.n
        return data

    @property
    def name(self) -> str:
        if self.kind is LatticeKind.CHAIN:
            return f"chain({self.n})"
        return self.kind.value

    @property
    def is_exact(self) -> bool:
        return self.kind in EXACT_KINDS

    @property
    def top(self) -> LatticeValue:
        return self.n if self.kind is LatticeKind.CHAIN else 1.0

    @property
    def bottom(self) -> LatticeValue:
        return 0 if self.kind is LatticeKind.CHAIN else 0.0

    @property
    def dtype(self):
        return np.int64 if self.kind is LatticeKind.CHAIN else np.float64

    # ------------------------------------------------------------------
    # membership

    def asarray(self, values: Any) -> np.ndarray:
        """Convert to an array of this lattice's dtype, rejecting non-members."""
        raw = np.asarray(values)
        if raw.dtype == object or raw.dtype.kind not in 'biuf':
            raise LatticeValueError(f"{self.name}: values must be numbers")

        if self.kind is LatticeKind.CHAIN:
            if raw.dtype.kind == 'f':
                if not np.all(np.isfinite(raw)) or np.any(raw != np.round(raw)):
                    raise LatticeValueError(f"{self.name}: chain values are integer indices 0..{self.n}")
            arr = raw.astype(np.int64)
            if np.any((arr < 0) | (arr > self.n)):
                raise LatticeValueError(f"{self.name}: chain index out of range 0..{self.n}")
            return arr

        arr = raw.astype(np.float64)
        if not np.all(np.isfinite(arr)) or np.any((arr < 0.0) | (arr > 1.0)):
            raise LatticeValueError(f"{self.name}: values must lie in [0, 1]")
        if self.kind is LatticeKind.BOOLEAN and np.any((arr != 0.0) & (arr != 1.0)):
            raise LatticeValueError("boolean: only 0 and 1 are allowed")
        return arr

    def contains(self, values: Any) -> bool:
        try:
            self.asarray(values)
        except LatticeValueError:
            return False
        return True

    # ------------------------------------------------------------------
    # operations

    def _operands(self, x, y, check: bool):
        if check:
            return self.asarray(x), self.asarray(y)
        return np.asarray(x), np.asarray(y)

    @staticmethod
    def _result(value):
        value = np.asarray(value)
        return value.item() if value.ndim == 0 else value

    def meet(self, x, y, check: bool = True):
        x, y = self._operands(x, y, check)
        return self._result(np.minimum(x, y))

    def join(self, x, y, check: bool = True):
        x, y = self._operands(x, y, check)
        return self._result(np.maximum(x, y))

    def leq(self, x, y, check: bool = True):
        """Lattice order; real-valued instances allow `tolerance` of slack."""
        x, y = self._operands(x, y, check)
        if self.tolerance:
            return self._result(x <= y + self.tolerance)
        return self._result(x <= y)

    def equal(self, x, y, check: bool = True):
        x, y = self._operands(x, y, check)
        if self.tolerance:
            return self._result(np.abs(x - y) <= self.tolerance)
        return self._result(x == y)

    def meet_join_leq(self, x, y) -> Tuple[LatticeValue, LatticeValue, bool]:
        return self.meet(x, y), self.join(x, y), bool(self.leq(x, y))

    def otimes(self, x, y, check: bool = True):
        x, y = self._operands(x, y, check)
        kind = self.kind
        if kind in (LatticeKind.BOOLEAN, LatticeKind.GODEL):
            value = np.minimum(x, y)
        elif kind is LatticeKind.LUKASIEWICZ:
            value = np.clip(x - (1.0 - y), 0.0, 1.0)
        elif kind is LatticeKind.PRODUCT:
            value = np.clip(x * y, 0.0, 1.0)
        else:
            value = np.maximum(x + y - self.n, 0)
        return self._result(value)

    def residuum(self, x, y, check: bool = True):
        """x → y, the adjoint of ⊗: x ⊗ z ≤ y iff z ≤ x → y."""
        x, y = self._operands(x, y, check)
        below = x <= y
        kind = self.kind
        if kind in (LatticeKind.BOOLEAN, LatticeKind.GODEL):
            other = y
        elif kind is LatticeKind.LUKASIEWICZ:
            other = np.clip((1.0 - x) + y, 0.0, _BELOW_ONE)
        elif kind is LatticeKind.PRODUCT:
            # only evaluated where x > y >= 0
            shape = np.broadcast_shapes(x.shape, y.shape)
            other = np.divide(y, x, out=np.ones(shape), where=~below)
            other = np.clip(other, 0.0, _BELOW_ONE)
        else:
            other = np.minimum(self.n - x + y, self.n)
        return self._result(np.where(below, self.top, other))

    def biresiduum(self, x, y, check: bool = True):
        x, y = self._operands(x, y, check)
        forward = self.residuum(x, y, check=False)
        backward = self.residuum(y, x, check=False)
        return self._result(np.minimum(forward, backward))

    def is_top(self, x):
        """Exact test for the top element (used for crisp parts)."""
        return self._result(np.asarray(x) == self.top)

    def meet_reduce(self, values: np.ndarray, axis=None):
        """Meet over an axis; the meet of nothing is the top element."""
        return np.min(values, axis=axis, initial=self.top)

    def join_reduce(self, values: np.ndarray, axis=None):
        """Join over an axis; the join of nothing is the bottom element."""
        return np.max(values, axis=axis, initial=self.bottom)

    # ------------------------------------------------------------------
    # finitely generated subalgebras

    def _canonical(self, values: np.ndarray) -> np.ndarray:
        if self.kind is not LatticeKind.LUKASIEWICZ or not self.tolerance:
            return values
        digits = max(0, int(round(-math.log10(self.tolerance))))
        return np.round(values, digits)

    def subalgebra_closure(self, seed: Iterable[LatticeValue], cap: Optional[int] = None) -> SubalgebraClosure:
        """
        Close `seed` ∪ {0, 1} under ∧, ∨, ⊗ and →.

        Args:
            seed: generating values
            cap: give up once more than `cap` elements have been generated
                (defaults to Config.CLOSURE_CAP)

        Returns:
            SubalgebraClosure; `cap_exceeded` is a normal outcome, not an error
        """
        cap = Config.CLOSURE_CAP if cap is None else cap
        seed_values = self.asarray(list(seed)).ravel()
        distinct = np.unique(seed_values).size
        if cap < max(1, distinct):
            raise ConfigurationError(f"Closure cap {cap} is smaller than the seed ({distinct} distinct values)")

        generators = np.concatenate([seed_values, np.asarray([self.bottom, self.top], dtype=self.dtype)])
        elements = np.unique(self._canonical(generators))
        if elements.size > cap:
            return SubalgebraClosure(tuple(elements.tolist()), True)

        frontier = elements
        while frontier.size:
            fresh = np.empty(0, dtype=self.dtype)
            rows = max(1, _CLOSURE_CHUNK // elements.size)
            for start in range(0, frontier.size, rows):
                x = frontier[start:start + rows, None]
                y = elements[None, :]
                # meets and joins on a chain return one of the operands
                produced = np.concatenate([
                    np.ravel(self.otimes(x, y, check=False)),
                    np.ravel(self.residuum(x, y, check=False)),
                    np.ravel(self.residuum(y, x, check=False)),
                ])
                candidates = np.unique(self._canonical(produced))
                fresh = np.union1d(fresh, np.setdiff1d(candidates, elements, assume_unique=True))
                if elements.size + fresh.size > cap:
                    logger.debug(f"{self.name}: closure exceeded cap {cap}")
                    return SubalgebraClosure(tuple(np.union1d(elements, fresh).tolist()), True)
            elements = np.union1d(elements, fresh)
            frontier = fresh

        return SubalgebraClosure(tuple(elements.tolist()), False)
