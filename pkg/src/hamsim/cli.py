#!/usr/bin/env python3
"""
hamsim: batch command-line surface for two-qubit Hamiltonian simulation.

Usage:
    hamsim canonicalize --input H.json          Canonical form of a Hamiltonian
    hamsim factor --input pair.json             Optimal simulation factor
    hamsim synthesize --input pair.json --s S   Explicit time-sharing protocol
    hamsim verify --input job.json              Reconstruction and Trotter check
    hamsim separation --example 1 --d 4         Ancilla separation witnesses
    hamsim twirl-check --input twirl.json       Phase-twirl identity
    hamsim sweep --samples 200 --seed 7         Randomized certification sweep

Every command reads JSON from --input (or stdin) and writes JSON to --output
(or stdout). Exit status is 0 on success, 1 when the request has no solution
and 2 when the input is malformed.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ValidationError

from .certification import run_sweep, summarize
from .config import Config
from .errors import HamSimError, InputValidationError
from .majorization import can_simulate_efficiently, simulation_factor
from .matcore import frobenius
from .pauli_ham import canonical_matrix, canonicalize, lambda_from_h, require_canonical, to_matrix
from .protocol import (
    AncillaConjugation,
    LocalUnitaryPair,
    SimulationProtocol,
    dress,
    gate_time_bound,
    luanc_conjugate,
    reconstruct,
    synthesize_for,
    verify_twirl,
)
from .reporting import (
    dressed_to_json,
    dumps,
    factor_to_json,
    matrix_to_json,
    protocol_to_json,
    trace_witness_to_json,
    trotter_to_json,
    witness_to_json,
)
from .schemas import (
    FactorJob,
    HamiltonianModel,
    ProtocolModel,
    SeparationJob,
    SynthesizeJob,
    TwirlJob,
    VerifyJob,
    matrix_from_rows,
)
from .separations import example1, example2
from .trotter import check_dressed, scaling_check

logger = logging.getLogger('hamsim')

CONTROL_CLASSES = ('LU', 'LU+anc', 'LO', 'LOCC')


def configure_logging(level: Optional[str] = None):
    handlers = [logging.StreamHandler(sys.stderr)]
    if Config.LOG_FILE:
        handlers.append(logging.FileHandler(Config.LOG_FILE))

    resolved = logging.getLevelName(level.upper()) if level else Config.log_level()
    if not isinstance(resolved, int):
        resolved = logging.WARNING

    logging.basicConfig(
        level=resolved,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def read_payload(path: Optional[str]) -> Any:
    try:
        if path:
            with open(path) as f:
                text = f.read()
        else:
            text = sys.stdin.read()
    except OSError as e:
        raise InputValidationError(f"cannot read input: {e}")

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputValidationError(f"line {e.lineno}, column {e.colno}: {e.msg}")


def parse_job(model: type, payload: Any) -> BaseModel:
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        where = '.'.join(str(part) for part in first['loc']) or '<root>'
        raise InputValidationError(f"{where}: {first['msg']}")


def write_result(result: Dict[str, Any], path: Optional[str]):
    text = dumps(result)
    if path:
        with open(path, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def protocol_from_model(model: ProtocolModel) -> SimulationProtocol:
    terms = tuple(
        (term.p, LocalUnitaryPair(matrix_from_rows(term.u, "u"), matrix_from_rows(term.v, "v")))
        for term in model.terms
    )
    perms = tuple(tuple(i - 1 for i in term.permutation) for term in model.terms if term.permutation)
    return SimulationProtocol(
        terms=terms,
        s=model.s,
        target_h=require_canonical(model.target_h, "target_h"),
        source_h=require_canonical(model.source_h, "source_h"),
        permutations=perms if len(perms) == len(terms) else (),
    )


def cmd_canonicalize(args) -> Dict[str, Any]:
    """Canonical coefficients, the local frames and the stripped local terms"""
    job = parse_job(HamiltonianModel, read_payload(args.input))
    form = canonicalize(job.to_pauli())
    return {
        'h': form.h,
        'u': matrix_to_json(form.u),
        'v': matrix_to_json(form.v),
        'removed_local_terms': {'a': form.removed_a, 'm': form.removed_m, 'n': form.removed_n},
        'bell_spectrum': lambda_from_h(form.h).tolist(),
    }


def cmd_factor(args) -> Dict[str, Any]:
    job = parse_job(FactorJob, read_payload(args.input))
    source = canonicalize(job.source.to_pauli())
    target = canonicalize(job.target.to_pauli())
    lam, lam_target = lambda_from_h(source.h), lambda_from_h(target.h)

    factor = simulation_factor(lam_target, lam)
    result = factor_to_json(factor)
    # the two-qubit optimum is the same for every control class
    result['verdict_under'] = {name: result['s'] for name in CONTROL_CLASSES}
    result['efficient'] = can_simulate_efficiently(lam_target, lam)
    result['source_spectrum'] = lam.tolist()
    result['target_spectrum'] = lam_target.tolist()
    if args.t_prime is not None:
        result['gate_time_bound'] = gate_time_bound(target, source, args.t_prime)
    return result


def cmd_synthesize(args) -> Dict[str, Any]:
    job = parse_job(SynthesizeJob, read_payload(args.input))
    s = args.s if args.s is not None else job.s
    dressed = synthesize_for(job.source.to_pauli(), job.target.to_pauli(), s)
    return {
        's': dressed.s,
        'protocol': protocol_to_json(dressed.canonical),
        'dressed': dressed_to_json(dressed),
    }


def _check_frame(form, expected: np.ndarray, name: str):
    if np.max(np.abs(form.h - expected)) > Config.PROTOCOL_TOL:
        raise InputValidationError(
            f"{name} canonicalizes to h={form.h.tolist()}, but the protocol was built for h={expected.tolist()}"
        )


def cmd_verify(args) -> Dict[str, Any]:
    job = parse_job(VerifyJob, read_payload(args.input))
    protocol = protocol_from_model(job.protocol)
    t_values = Config.parse_t_sweep(args.t_sweep) if args.t_sweep else Config.parse_t_sweep()

    H = canonical_matrix(protocol.source_h)
    H_target = canonical_matrix(protocol.target_h)
    report = scaling_check(protocol, H, H_target, protocol.s, t_values, rounds=args.rounds)
    result = {
        'reconstruction_residual': frobenius(reconstruct(protocol, H) - protocol.s * H_target),
        'trotter': trotter_to_json(report),
    }

    if job.source is not None:
        source_pauli, target_pauli = job.source.to_pauli(), job.target.to_pauli()
        source, target = canonicalize(source_pauli), canonicalize(target_pauli)
        _check_frame(source, protocol.source_h, "source")
        _check_frame(target, protocol.target_h, "target")

        dressed = dress(protocol, source, target)
        dressed_report = check_dressed(dressed, to_matrix(source_pauli), to_matrix(target_pauli), t_values, rounds=args.rounds)
        result['dressed'] = {
            'reconstruction_residual': dressed_report.reconstruction_residual,
            'trotter': trotter_to_json(dressed_report),
        }
    return result


def cmd_separation(args) -> Dict[str, Any]:
    job = parse_job(SeparationJob, read_payload(args.input)) if args.input else SeparationJob()
    example = args.example or job.example
    if example == 1:
        d = args.d if args.d is not None else (job.d if job.d is not None else 3)
        return witness_to_json(example1(d))
    return trace_witness_to_json(example2())


def cmd_twirl_check(args) -> Dict[str, Any]:
    job = parse_job(TwirlJob, read_payload(args.input))
    d_a_anc, d_b_anc = job.ancilla_dims
    conj = AncillaConjugation(
        U=matrix_from_rows(job.U, "U"),
        V=matrix_from_rows(job.V, "V"),
        d_a_anc=d_a_anc,
        d_b_anc=d_b_anc,
    )
    H = matrix_from_rows(job.H, "H")
    residual = verify_twirl(conj, H)
    return {
        'residual': residual,
        'passed': residual <= Config.RECONSTRUCTION_TOL,
        'ensemble_size': d_a_anc * d_b_anc,
        'conjugated': matrix_to_json(luanc_conjugate(H, conj)),
    }


def cmd_sweep(args) -> Dict[str, Any]:
    frame = run_sweep(samples=args.samples, seed=args.seed)
    return summarize(frame)


COMMANDS = {
    'canonicalize': cmd_canonicalize,
    'factor': cmd_factor,
    'synthesize': cmd_synthesize,
    'verify': cmd_verify,
    'separation': cmd_separation,
    'twirl-check': cmd_twirl_check,
    'sweep': cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='hamsim', description='Optimal two-qubit Hamiltonian simulation')
    parser.add_argument('--log-level', default=None, help='Override HAMSIM_LOG_LEVEL')
    subparsers = parser.add_subparsers(dest='command', required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument('--input', default=None, help='JSON job file (default: stdin)')
        sub.add_argument('--output', default=None, help='Result file (default: stdout)')
        return sub

    add('canonicalize', 'Canonical form of a two-qubit Hamiltonian')

    factor = add('factor', 'Optimal simulation factor of target by source')
    factor.add_argument('--t-prime', type=float, default=None, help='Target gate time for the T\'/s bound')

    synth = add('synthesize', 'Synthesize a simulation protocol')
    synth.add_argument('--s', type=float, default=None, help='Simulation factor (default: optimum)')

    verify = add('verify', 'Check a protocol by reconstruction and Trotter scaling')
    verify.add_argument('--t-sweep', default=None, help='"start,factor,count"')
    verify.add_argument('--rounds', type=int, default=1, help='Repetitions of the schedule at t/rounds')

    separation = add('separation', 'Ancilla-assisted separation witnesses')
    separation.add_argument('--example', type=int, choices=[1, 2], default=None)
    separation.add_argument('--d', type=int, default=None, help='Level count for example 1 (>= 3)')

    add('twirl-check', 'Phase-twirl realization of an ancilla conjugation')

    sweep = add('sweep', 'Randomized certification sweep')
    sweep.add_argument('--samples', type=int, default=Config.SWEEP_SAMPLES)
    sweep.add_argument('--seed', type=int, default=Config.DEFAULT_SEED)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)

    try:
        result = COMMANDS[args.command](args)
        write_result(result, args.output)
    except HamSimError as e:
        logger.error(f"{args.command} failed: {e}")
        sys.stderr.write(f"hamsim: error: {e}\n")
        return e.exit_code
    except ValueError as e:
        # malformed option values such as a bad --t-sweep
        logger.error(f"{args.command} rejected its options: {e}")
        sys.stderr.write(f"hamsim: error: {e}\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
