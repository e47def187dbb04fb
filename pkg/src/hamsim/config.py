import os
import logging
from dotenv import load_dotenv
from typing import List

load_dotenv()

class Config:
    # Numerical tolerances
    HERMITIAN_TOL = float(os.getenv('HAMSIM_HERMITIAN_TOL', 1e-10))
    RECONSTRUCTION_TOL = float(os.getenv('HAMSIM_RECONSTRUCTION_TOL', 1e-10))
    ORTHOGONALITY_TOL = float(os.getenv('HAMSIM_ORTHOGONALITY_TOL', 1e-12))
    SPECTRUM_TOL = float(os.getenv('HAMSIM_SPECTRUM_TOL', 1e-12))
    ZERO_DENOMINATOR_TOL = float(os.getenv('HAMSIM_ZERO_DENOMINATOR_TOL', 1e-14))
    PROTOCOL_TOL = float(os.getenv('HAMSIM_PROTOCOL_TOL', 1e-9))
    COMMUTING_ERROR_TOL = float(os.getenv('HAMSIM_COMMUTING_ERROR_TOL', 1e-13))

    # Greedy decomposition
    BISECTION_TOL = float(os.getenv('HAMSIM_BISECTION_TOL', 1e-12))
    SNAP_TOL = float(os.getenv('HAMSIM_SNAP_TOL', 1e-10))
    MAX_DECOMPOSITION_STEPS = 24

    # Trotter sweep
    DEFAULT_T_SWEEP = os.getenv('HAMSIM_T_SWEEP', '0.1,0.5,9')

    # Reproducibility
    DEFAULT_SEED = int(os.getenv('HAMSIM_SEED', 20240607))
    FLOAT_DIGITS = int(os.getenv('HAMSIM_FLOAT_DIGITS', 17))
    SWEEP_SAMPLES = int(os.getenv('HAMSIM_SWEEP_SAMPLES', 200))

    # Logging
    LOG_LEVEL = os.getenv('HAMSIM_LOG_LEVEL', 'WARNING')
    LOG_FILE = os.getenv('HAMSIM_LOG_FILE')

    @classmethod
    def parse_t_sweep(cls, text: str = None) -> List[float]:
        """Expand a "start,factor,count" sweep into start*factor**j, j=0..count-1"""
        text = text or cls.DEFAULT_T_SWEEP
        try:
            start, factor, count = [part.strip() for part in text.split(',')]
            start, factor, count = float(start), float(factor), int(count)
        except ValueError:
            raise ValueError(f"t-sweep must look like 'start,factor,count', got {text!r}")

        if start <= 0 or factor <= 0 or count < 1:
            raise ValueError(f"t-sweep needs positive start/factor and count >= 1, got {text!r}")

        return [start * factor ** j for j in range(count)]

    @classmethod
    def log_level(cls) -> int:
        level = logging.getLevelName(cls.LOG_LEVEL.upper())
        return level if isinstance(level, int) else logging.WARNING
