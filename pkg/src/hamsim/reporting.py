#!/usr/bin/env python3
"""
Deterministic JSON rendering of hamsim results.

Floats are written with a fixed number of significant digits so identical
jobs give byte-identical output; complex values become [re, im] pairs.
"""

import json
import math
from typing import Any, Dict, List

import numpy as np

from .config import Config
from .majorization import SimulationFactor
from .protocol import DressedProtocol, LocalUnitaryPair, SimulationProtocol
from .separations import TraceWitnessReport, WitnessReport
from .trotter import TrotterReport


def to_jsonable(value: Any) -> Any:
    """numpy arrays/scalars and complex numbers to plain lists, floats and [re, im] pairs"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _format_float(x: float, digits: int) -> str:
    if not math.isfinite(x):
        raise ValueError(f"refusing to serialize non-finite float {x!r}")
    if x == 0:
        return "0.0"
    text = f"{x:.{digits}g}"
    if 'e' not in text and '.' not in text:
        text += ".0"
    return text


def _encode(value: Any, level: int, digits: int) -> str:
    pad = "  " * (level + 1)
    close = "  " * level
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, level + 1, digits)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        # short scalar rows stay on one line
        if all(not isinstance(v, (dict, list)) for v in value):
            return "[" + ", ".join(_encode(v, level + 1, digits) for v in value) + "]"
        items = [f"{pad}{_encode(v, level + 1, digits)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return json.dumps(value)
    if isinstance(value, float):
        return _format_float(value, digits)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(payload: Any, digits: int = None) -> str:
    return _encode(to_jsonable(payload), 0, digits or Config.FLOAT_DIGITS) + "\n"


def matrix_to_json(m) -> List[List[List[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def pair_to_json(pair: LocalUnitaryPair) -> Dict[str, Any]:
    return {'u': matrix_to_json(pair.u), 'v': matrix_to_json(pair.v)}


def factor_to_json(factor: SimulationFactor) -> Dict[str, Any]:
    if factor.infinite:
        return {'s': None, 'infinite': True, 'binding_constraints': []}
    return {'s': factor.value, 'infinite': False, 'binding_constraints': list(factor.binding_constraints)}


def protocol_to_json(protocol: SimulationProtocol) -> Dict[str, Any]:
    terms = []
    for k, (p, pair) in enumerate(protocol.terms):
        term = {'p': p, **pair_to_json(pair)}
        if k < len(protocol.permutations):
            term['permutation'] = [i + 1 for i in protocol.permutations[k]]
        terms.append(term)
    return {
        'terms': terms,
        's': protocol.s,
        'target_h': protocol.target_h,
        'source_h': protocol.source_h,
    }


def dressed_to_json(dressed: DressedProtocol) -> Dict[str, Any]:
    return {
        'terms': [{'p': p, **pair_to_json(pair)} for p, pair in dressed.terms],
        's': dressed.s,
        'local_correction': dressed.local_correction.local_part().to_json(),
    }


def trotter_to_json(report: TrotterReport) -> Dict[str, Any]:
    return {
        'times': list(report.times),
        'errors': list(report.errors),
        'fitted_slope': report.fitted_slope,
        'halving_ratios': list(report.halving_ratios),
        'rounds': report.rounds,
        'commuting': report.commuting,
        'second_order': report.second_order,
        'max_unitarity_defect': report.max_unitarity_defect,
    }


def witness_to_json(report: WitnessReport) -> Dict[str, Any]:
    return {
        'example': 1,
        'd': report.d,
        'achieved': report.achieved,
        'conjugation_residual': report.conjugation_residual,
        'isometry_defect': report.isometry_defect,
        'unitarity_defect': report.unitarity_defect,
        'forced_a': report.forced_a,
        'forced_m': matrix_to_json(report.forced_m),
        'forced_n': matrix_to_json(report.forced_n),
        'witness_value': report.witness_value,
        'separation_certified': report.separation_certified,
        'certificate': report.certificate,
    }


def trace_witness_to_json(report: TraceWitnessReport) -> Dict[str, Any]:
    return {
        'example': 2,
        'achieved': report.achieved,
        'slice_identity_residual': report.slice_identity_residual,
        'conjugation_residual': report.conjugation_residual,
        'trace_witness': [report.source_slice_trace, report.target_slice_trace],
        'separation_certified': report.separation_certified,
        'certificate': report.certificate,
    }
