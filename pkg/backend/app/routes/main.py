from flask import Blueprint, request, jsonify
from pydantic import BaseModel, StrictInt, ValidationError
from typing import Any, Dict, List, Optional, Union
import logging
from ..exceptions import FuzzsimError
from ..services.computation import outcome_to_dict, report_to_dict, run_check, run_compute, run_degree

main_bp = Blueprint('main', __name__, url_prefix='/api')

logger = logging.getLogger(__name__)

class ComputeRequest(BaseModel):
    a: Dict[str, Any]
    b: Dict[str, Any]
    type: str
    crisp: bool = False
    cap: Optional[StrictInt] = None
    tolerance: Optional[float] = None
    trace: bool = False

class CheckRequest(BaseModel):
    a: Dict[str, Any]
    b: Dict[str, Any]
    relation: Union[List[Any], Dict[str, Any]]
    type: str
    tolerance: Optional[float] = None

class DegreeRequest(BaseModel):
    a: Dict[str, Any]
    word: Union[str, List[str]] = ''

def _parse(model):
    """Validate the JSON body against `model`; returns (body, None) or (None, error response)."""
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        return None, (jsonify({'error': 'Expected a JSON object', 'diagnostics': []}), 400)
    try:
        return model.model_validate(data), None
    except ValidationError as e:
        diagnostics = [f"{'.'.join(str(p) for p in item['loc'])}: {item['msg']}" for item in e.errors()]
        return None, (jsonify({'error': 'Invalid request body', 'diagnostics': diagnostics}), 400)

def _error(e):
    logger.info(f"Rejected request to {request.path}: {e}")
    return jsonify({'error': str(e), 'diagnostics': getattr(e, 'diagnostics', [])}), 400

@main_bp.route('/compute', methods=['POST'])
def compute():
    """
    Greatest simulation of a given type between two automata.
    ---
    Returns:
        JSON result with status, relation, iterations and warnings
    """
    body, error = _parse(ComputeRequest)
    if error:
        return error

    try:
        outcome = run_compute(body.a, body.b, body.type, crisp=body.crisp, cap=body.cap,
                              tolerance=body.tolerance, trace=body.trace)
    except FuzzsimError as e:
        return _error(e)

    # every status is a successful computation
    return jsonify(outcome_to_dict(outcome, include_trace=body.trace))

@main_bp.route('/check', methods=['POST'])
def check():
    """
    Check the defining conditions of a relation.
    ---
    Returns:
        JSON condition report
    """
    body, error = _parse(CheckRequest)
    if error:
        return error

    try:
        report = run_check(body.a, body.b, body.relation, body.type, tolerance=body.tolerance)
    except FuzzsimError as e:
        return _error(e)

    return jsonify(report_to_dict(report))

@main_bp.route('/degree', methods=['POST'])
def degree():
    """
    Degree to which an automaton accepts a word.
    ---
    Returns:
        JSON with the degree
    """
    body, error = _parse(DegreeRequest)
    if error:
        return error

    try:
        value = run_degree(body.a, body.word)
    except FuzzsimError as e:
        return _error(e)

    return jsonify({'degree': value})
