import json
import math

import numpy as np
import pytest

from hamsim.majorization import SimulationFactor
from hamsim.reporting import dumps, factor_to_json, matrix_to_json, to_jsonable


def test_floats_use_seventeen_significant_digits():
    text = dumps({'s': 1 / 3})
    assert '0.33333333333333331' in text
    assert json.loads(text)['s'] == 1 / 3


def test_integers_and_flags_pass_through():
    payload = json.loads(dumps({'n': np.int64(3), 'ok': np.bool_(True), 'none': None}))
    assert payload == {'n': 3, 'ok': True, 'none': None}


def test_complex_values_become_pairs():
    assert to_jsonable(np.array([1 + 2j])) == [[1.0, 2.0]]
    assert matrix_to_json(np.eye(2)) == [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]


def test_non_finite_floats_are_refused():
    with pytest.raises(ValueError):
        dumps({'s': math.inf})


def test_infinite_factor_uses_flag():
    payload = factor_to_json(SimulationFactor(value=None, infinite=True))
    assert payload['infinite'] is True and payload['s'] is None
    json.loads(dumps(payload))
