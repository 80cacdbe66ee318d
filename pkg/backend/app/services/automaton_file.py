"""
Reading and writing automata and relations as JSON documents.

An automaton file looks like

    {"lattice": {"type": "godel"},
     "states": ["a1", "a2"], "alphabet": ["x"],
     "initial": [1, 0], "final": [0, 1],
     "transitions": {"x": [[1, 0.5], [0, 1]]}}

and a relation file is either a bare array of rows or {"relation": rows}.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, StrictFloat, StrictInt, ValidationError

from ..exceptions import AutomatonFileError, AutomatonValidationError
from ..utils.fuzrel import FuzzyMatrix
from ..utils.lattice import LatticeKind, ResiduatedLattice
from .automaton import FuzzyAutomaton, ensure_valid

logger = logging.getLogger(__name__)

Number = Union[StrictInt, StrictFloat]
Source = Union[str, Path, Mapping[str, Any], List[Any]]


class LatticeModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    type: LatticeKind
    n: Optional[StrictInt] = None


class AutomatonFileModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    lattice: LatticeModel
    states: List[str]
    alphabet: List[str]
    initial: List[Number]
    final: List[Number]
    transitions: Dict[str, List[List[Number]]]


class RelationFileModel(BaseModel):
    model_config = ConfigDict(extra='forbid')

    relation: List[List[Number]]


def _describe(error: ValidationError) -> List[str]:
    return [
        f"{'.'.join(str(part) for part in item['loc']) or 'document'}: {item['msg']}"
        for item in error.errors()
    ]


def read_json(source: Source) -> Any:
    """Return `source` itself if it is already parsed, else the JSON content of the file."""
    if isinstance(source, (Mapping, list)):
        return source
    path = Path(source)
    try:
        return json.loads(path.read_text(encoding='utf-8'))
    except OSError as e:
        raise AutomatonFileError(f"{path}: cannot read file ({e.strerror or e})") from e
    except json.JSONDecodeError as e:
        raise AutomatonFileError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e


def _source_name(source: Source) -> str:
    return '<data>' if isinstance(source, (Mapping, list)) else str(source)


def _check_matrix(rows: List[List[Any]], size: int, name: str, lattice: ResiduatedLattice,
                  diagnostics: List[str]) -> None:
    if len(rows) != size or any(len(row) != size for row in rows):
        widths = sorted({len(row) for row in rows})
        diagnostics.append(f"{name} has {len(rows)} rows of length {widths}, expected {size}x{size}")
    elif not lattice.contains(rows):
        diagnostics.append(f"{name} has values outside {lattice.name}")


def load_automaton(source: Source, tolerance: Optional[float] = None) -> FuzzyAutomaton:
    """
    Parse and validate an automaton.

    Args:
        source: path of a JSON file, or the already parsed document
        tolerance: overrides the lattice's default tolerance

    Returns:
        FuzzyAutomaton

    Raises:
        AutomatonFileError: unreadable file, invalid JSON or wrong document structure
        AutomatonValidationError: every shape and value problem found
    """
    name = _source_name(source)
    try:
        model = AutomatonFileModel.model_validate(read_json(source))
    except ValidationError as e:
        raise AutomatonFileError(f"{name}: " + "; ".join(_describe(e))) from e

    lattice = ResiduatedLattice.from_dict(model.lattice.model_dump(), tolerance=tolerance)
    size = len(model.states)
    diagnostics = []

    for label, vector in (('initial vector', model.initial), ('final vector', model.final)):
        if len(vector) != size:
            diagnostics.append(f"{label} has {len(vector)} entries, expected {size}")
        elif not lattice.contains(vector):
            diagnostics.append(f"{label} has values outside {lattice.name}")

    for letter in model.alphabet:
        if letter not in model.transitions:
            diagnostics.append(f"letter {letter} has no transition matrix")
        else:
            _check_matrix(model.transitions[letter], size, f"transition matrix of {letter}", lattice, diagnostics)
    for letter in model.transitions:
        if letter not in model.alphabet:
            diagnostics.append(f"transition matrix given for {letter}, which is not in the alphabet")
    if size < 1:
        diagnostics.append("automaton has no states")

    if diagnostics:
        raise AutomatonValidationError(diagnostics, source=name)

    automaton = FuzzyAutomaton(
        lattice=lattice,
        states=model.states,
        alphabet=model.alphabet,
        delta={letter: FuzzyMatrix.from_rows(lattice, model.transitions[letter]) for letter in model.alphabet},
        sigma=FuzzyMatrix.row_vector(lattice, model.initial),
        tau=FuzzyMatrix.column_vector(lattice, model.final),
    )
    logger.debug(f"Loaded {name}: {size} states over {lattice.name}, alphabet {model.alphabet}")
    return ensure_valid(automaton, source=name)


def dump_automaton(a: FuzzyAutomaton) -> Dict[str, Any]:
    """The JSON document of an automaton; json.dumps writes floats in shortest round-trip form."""
    return {
        'lattice': a.lattice.to_dict(),
        'states': list(a.states),
        'alphabet': list(a.alphabet),
        'initial': a.sigma.values().tolist(),
        'final': a.tau.values().tolist(),
        'transitions': {letter: a.delta[letter].tolist() for letter in a.alphabet},
    }


def load_relation(source: Source, lattice: ResiduatedLattice) -> FuzzyMatrix:
    """Parse a relation given as a bare array of rows or as {"relation": rows}."""
    name = _source_name(source)
    data = read_json(source)
    try:
        rows = RelationFileModel.model_validate(
            data if isinstance(data, Mapping) else {'relation': data}
        ).relation
    except ValidationError as e:
        raise AutomatonFileError(f"{name}: " + "; ".join(_describe(e))) from e

    if not rows or len({len(row) for row in rows}) != 1:
        raise AutomatonFileError(f"{name}: a relation must be a non-empty rectangular array of rows")
    return FuzzyMatrix.from_rows(lattice, rows)


def dump_relation(phi: FuzzyMatrix) -> Dict[str, Any]:
    return {'relation': phi.tolist()}
