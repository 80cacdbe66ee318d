"""
Fuzzy sets and fuzzy relations as dense matrices over a residuated lattice.

A fuzzy relation between A and B is an |A|×|B| matrix; a fuzzy subset of A
is a 1×|A| (row) or |A|×1 (column) matrix, so that f∘φ, φ∘g and f∘g are all
plain compositions.
"""
import logging
from dataclasses import dataclass
from typing import Any, Iterable, List, Sequence, Tuple

import numpy as np

from ..exceptions import LatticeMismatchError, ShapeError
from .lattice import LatticeValue, ResiduatedLattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FuzzyMatrix:
    """An immutable rows×cols matrix of lattice values."""
    lattice: ResiduatedLattice
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.lattice.asarray(self.entries), copy=True)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise ShapeError(f"A fuzzy matrix needs positive rows and columns, got shape {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @classmethod
    def _trusted(cls, lattice: ResiduatedLattice, entries: np.ndarray) -> 'FuzzyMatrix':
        # results of lattice operations are members by construction
        matrix = object.__new__(cls)
        entries = np.ascontiguousarray(entries, dtype=lattice.dtype)
        entries.setflags(write=False)
        object.__setattr__(matrix, 'lattice', lattice)
        object.__setattr__(matrix, 'entries', entries)
        return matrix

    @classmethod
    def from_rows(cls, lattice: ResiduatedLattice, rows: Sequence[Sequence[Any]]) -> 'FuzzyMatrix':
        return cls(lattice, np.asarray(rows))

    @classmethod
    def row_vector(cls, lattice: ResiduatedLattice, values: Sequence[Any]) -> 'FuzzyMatrix':
        return cls(lattice, np.asarray(values).reshape(1, -1))

    @classmethod
    def column_vector(cls, lattice: ResiduatedLattice, values: Sequence[Any]) -> 'FuzzyMatrix':
        return cls(lattice, np.asarray(values).reshape(-1, 1))

    @classmethod
    def ones(cls, lattice: ResiduatedLattice, rows: int, cols: int) -> 'FuzzyMatrix':
        return cls(lattice, np.full((rows, cols), lattice.top, dtype=lattice.dtype))

    @classmethod
    def zeros(cls, lattice: ResiduatedLattice, rows: int, cols: int) -> 'FuzzyMatrix':
        return cls(lattice, np.full((rows, cols), lattice.bottom, dtype=lattice.dtype))

    @classmethod
    def identity(cls, lattice: ResiduatedLattice, size: int) -> 'FuzzyMatrix':
        """The crisp equality relation on a set of `size` elements."""
        return cls(lattice, np.eye(size, dtype=lattice.dtype) * lattice.top)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def is_vector(self) -> bool:
        return self.rows == 1 or self.cols == 1

    def __getitem__(self, index) -> LatticeValue:
        return self.entries[index].item()

    def tolist(self) -> List[List[LatticeValue]]:
        return self.entries.tolist()

    def values(self) -> np.ndarray:
        """Entries flattened, for use as a seed of a subalgebra closure."""
        return self.entries.ravel()

    def scalar(self) -> LatticeValue:
        """The single entry of a 1×1 matrix."""
        if self.shape != (1, 1):
            raise ShapeError(f"Expected a 1x1 matrix, got {self.rows}x{self.cols}")
        return self.entries[0, 0].item()

    def __repr__(self) -> str:
        return f"FuzzyMatrix({self.lattice.name}, {self.tolist()})"


def _same_lattice(*matrices: FuzzyMatrix) -> ResiduatedLattice:
    lattice = matrices[0].lattice
    for matrix in matrices[1:]:
        if matrix.lattice != lattice:
            raise LatticeMismatchError(f"Operands live in different lattices: {lattice.name} and {matrix.lattice.name}")
    return lattice


def _same_shape(a: FuzzyMatrix, b: FuzzyMatrix) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"Shape mismatch: {a.rows}x{a.cols} and {b.rows}x{b.cols}")


def _vector(m: FuzzyMatrix, name: str) -> np.ndarray:
    if not m.is_vector:
        raise ShapeError(f"{name} must be a fuzzy set (1xn or nx1), got {m.rows}x{m.cols}")
    return m.entries.ravel()


def compose(lhs: FuzzyMatrix, rhs: FuzzyMatrix) -> FuzzyMatrix:
    """(lhs ∘ rhs)(a, c) = ⋁_b lhs(a, b) ⊗ rhs(b, c)."""
    lattice = _same_lattice(lhs, rhs)
    if lhs.cols != rhs.rows:
        raise ShapeError(f"Cannot compose {lhs.rows}x{lhs.cols} with {rhs.rows}x{rhs.cols}")
    products = lattice.otimes(lhs.entries[:, :, None], rhs.entries[None, :, :], check=False)
    return FuzzyMatrix._trusted(lattice, lattice.join_reduce(products, axis=1))


def converse(m: FuzzyMatrix) -> FuzzyMatrix:
    return FuzzyMatrix._trusted(m.lattice, m.entries.T)


def pointwise_meet(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    lattice = _same_lattice(a, b)
    _same_shape(a, b)
    return FuzzyMatrix._trusted(lattice, np.minimum(a.entries, b.entries))


def pointwise_join(a: FuzzyMatrix, b: FuzzyMatrix) -> FuzzyMatrix:
    lattice = _same_lattice(a, b)
    _same_shape(a, b)
    return FuzzyMatrix._trusted(lattice, np.maximum(a.entries, b.entries))


def leq_rel(a: FuzzyMatrix, b: FuzzyMatrix) -> bool:
    """Entrywise a ≤ b (within the lattice tolerance)."""
    lattice = _same_lattice(a, b)
    _same_shape(a, b)
    return bool(np.all(lattice.leq(a.entries, b.entries, check=False)))


def equal_rel(a: FuzzyMatrix, b: FuzzyMatrix) -> bool:
    lattice = _same_lattice(a, b)
    _same_shape(a, b)
    return bool(np.all(lattice.equal(a.entries, b.entries, check=False)))


def meet_all(matrices: Iterable[FuzzyMatrix], lattice: ResiduatedLattice, rows: int, cols: int) -> FuzzyMatrix:
    """Meet of a finite family; the empty meet is the all-ones matrix."""
    result = FuzzyMatrix.ones(lattice, rows, cols)
    for matrix in matrices:
        result = pointwise_meet(result, matrix)
    return result


def join_all(matrices: Iterable[FuzzyMatrix], lattice: ResiduatedLattice, rows: int, cols: int) -> FuzzyMatrix:
    """Join of a finite family; the empty join is the all-zeros matrix."""
    result = FuzzyMatrix.zeros(lattice, rows, cols)
    for matrix in matrices:
        result = pointwise_join(result, matrix)
    return result


def arrow_right(eta: FuzzyMatrix, xi: FuzzyMatrix) -> FuzzyMatrix:
    """(η → ξ)(a, b) = η(a) → ξ(b)."""
    lattice = _same_lattice(eta, xi)
    left, right = _vector(eta, 'eta'), _vector(xi, 'xi')
    return FuzzyMatrix._trusted(lattice, lattice.residuum(left[:, None], right[None, :], check=False))


def arrow_left(eta: FuzzyMatrix, xi: FuzzyMatrix) -> FuzzyMatrix:
    """(η ← ξ)(a, b) = ξ(b) → η(a), i.e. the converse of ξ → η."""
    lattice = _same_lattice(eta, xi)
    left, right = _vector(eta, 'eta'), _vector(xi, 'xi')
    return FuzzyMatrix._trusted(lattice, lattice.residuum(right[None, :], left[:, None], check=False))


def arrow_bi(eta: FuzzyMatrix, xi: FuzzyMatrix) -> FuzzyMatrix:
    """(η ↔ ξ)(a, b) = η(a) ↔ ξ(b)."""
    lattice = _same_lattice(eta, xi)
    left, right = _vector(eta, 'eta'), _vector(xi, 'xi')
    return FuzzyMatrix._trusted(lattice, lattice.biresiduum(left[:, None], right[None, :], check=False))


def right_residual(phi: FuzzyMatrix, alpha: FuzzyMatrix) -> FuzzyMatrix:
    """
    φ/α, the greatest χ with α ∘ χ ≤ φ.

    (φ/α)(a, b) = ⋀_{a'} α(a', a) → φ(a', b) for φ: |A|×|B| and α: |A|×|A|.
    """
    lattice = _same_lattice(phi, alpha)
    if alpha.rows != alpha.cols or alpha.rows != phi.rows:
        raise ShapeError(f"Right residual needs alpha {phi.rows}x{phi.rows}, got {alpha.rows}x{alpha.cols}")
    # axes: (a', a, b)
    implications = lattice.residuum(alpha.entries[:, :, None], phi.entries[:, None, :], check=False)
    return FuzzyMatrix._trusted(lattice, lattice.meet_reduce(implications, axis=0))


def left_residual(phi: FuzzyMatrix, beta: FuzzyMatrix) -> FuzzyMatrix:
    """
    φ\\β, the greatest χ with χ ∘ β ≤ φ.

    (φ\\β)(a, b) = ⋀_{b'} β(b, b') → φ(a, b') for φ: |A|×|B| and β: |B|×|B|.
    """
    lattice = _same_lattice(phi, beta)
    if beta.rows != beta.cols or beta.rows != phi.cols:
        raise ShapeError(f"Left residual needs beta {phi.cols}x{phi.cols}, got {beta.rows}x{beta.cols}")
    # axes: (a, b, b')
    implications = lattice.residuum(beta.entries[None, :, :], phi.entries[:, None, :], check=False)
    return FuzzyMatrix._trusted(lattice, lattice.meet_reduce(implications, axis=2))


def crisp_part(phi: FuzzyMatrix) -> FuzzyMatrix:
    """The crisp relation of the pairs where φ is exactly 1."""
    lattice = phi.lattice
    kernel = np.where(phi.entries == lattice.top, lattice.top, lattice.bottom)
    return FuzzyMatrix._trusted(lattice, kernel)


def is_crisp(phi: FuzzyMatrix) -> bool:
    lattice = phi.lattice
    return bool(np.all((phi.entries == lattice.top) | (phi.entries == lattice.bottom)))
