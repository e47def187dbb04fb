#!/usr/bin/env python3
"""
JSON job schemas for the command-line surface.

Complex numbers travel as [re, im] pairs and matrices as row-major nested
arrays of such pairs.
"""

from typing import Annotated, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import DimensionMismatchError
from .pauli_ham import PauliHamiltonian, from_matrix

ComplexPair = Annotated[List[float], Field(min_length=2, max_length=2)]
MatrixRows = List[List[ComplexPair]]
RealTriple = Annotated[List[float], Field(min_length=3, max_length=3)]


def matrix_from_rows(rows: MatrixRows, name: str = "matrix") -> np.ndarray:
    if not rows or any(len(row) != len(rows) for row in rows):
        raise DimensionMismatchError(f"{name} must be a non-empty square array of [re, im] pairs")
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


class _Strict(BaseModel):
    model_config = ConfigDict(extra='forbid')


class PauliModel(_Strict):
    a: float = 0.0
    m: RealTriple = Field(default_factory=lambda: [0.0, 0.0, 0.0])
    n: RealTriple = Field(default_factory=lambda: [0.0, 0.0, 0.0])
    h: List[RealTriple] = Field(default_factory=lambda: [[0.0] * 3 for _ in range(3)])

    @field_validator('h')
    @classmethod
    def _three_rows(cls, value):
        if len(value) != 3:
            raise ValueError("h must have exactly 3 rows")
        return value


class HamiltonianModel(_Strict):
    """Either a 4x4 matrix or Pauli coefficients, never both"""

    matrix: Optional[MatrixRows] = None
    pauli: Optional[PauliModel] = None

    @model_validator(mode='after')
    def _exactly_one(self):
        if (self.matrix is None) == (self.pauli is None):
            raise ValueError("give exactly one of 'matrix' or 'pauli'")
        return self

    def to_pauli(self) -> PauliHamiltonian:
        if self.matrix is not None:
            return from_matrix(matrix_from_rows(self.matrix, "Hamiltonian matrix"))
        return PauliHamiltonian.from_json(self.pauli.model_dump())


class FactorJob(_Strict):
    source: HamiltonianModel
    target: HamiltonianModel


class SynthesizeJob(FactorJob):
    s: Optional[float] = Field(default=None, ge=0)


class TermModel(_Strict):
    p: float = Field(ge=0)
    u: MatrixRows
    v: MatrixRows
    permutation: Optional[List[int]] = None


class ProtocolModel(_Strict):
    terms: List[TermModel] = Field(min_length=1)
    s: float = Field(ge=0)
    target_h: RealTriple
    source_h: RealTriple


class VerifyJob(_Strict):
    protocol: ProtocolModel
    source: Optional[HamiltonianModel] = None
    target: Optional[HamiltonianModel] = None

    @model_validator(mode='after')
    def _both_or_neither(self):
        if (self.source is None) != (self.target is None):
            raise ValueError("give both 'source' and 'target' or neither")
        return self


class SeparationJob(_Strict):
    example: int = Field(default=1, ge=1, le=2)
    d: Optional[int] = None


class TwirlJob(_Strict):
    U: MatrixRows
    V: MatrixRows
    H: MatrixRows
    ancilla_dims: Annotated[List[int], Field(min_length=2, max_length=2)] = Field(default_factory=lambda: [1, 1])
