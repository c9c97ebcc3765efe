"""Command-line front end.

One subcommand per toolkit operation.  Payload JSON goes to stdout (compact,
deterministic key order); a one-line provenance header (operation,
parameters, version) goes to stderr.  Exit codes: 0 success, 1 domain error,
2 usage error, 3 budget exceeded.  Matrices travel as JSON on stdin/stdout or
file paths; circuits as .slc text.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext

from mpmath import mp

from . import __version__
from .budgets import BudgetExceeded
from .circuits import (
    SlcParseError,
    emit_slc,
    min_depth2_sparsity,
    parse_slc,
    verify_factorization,
)
from .constructions import (
    amplify_direct_sum,
    hard_over_finite,
    hard_over_integers,
    quasipoly_hard,
    trivial_hard,
)
from .fields import (
    KIND_EXTENSION,
    RATIONAL_FIELD,
    decode_element,
    descriptor_to_json,
    encode_element,
    prime_field,
)
from .hitting import (
    RSParams,
    build_hard_psd,
    hit_inner,
    min_kernel_weight,
    refute_invertible,
    refute_symmetric,
    rs_generator,
    vandermonde_vectors,
)
from .matrices import ExactMatrix, matrix_from_json, matrix_to_json
from .sidon import construct_sidon, verify_tsum_distinct
from .ssdim import bound_eval, certify_depth_d, gamma_t, sigma_t
from .constructions import HardMatrixBundle

__all__ = ["CommandResult", "dispatch", "read_matrix", "main"]


@dataclass(frozen=True)
class CommandResult:
    exit_code: int  # 0 success, 1 domain error, 2 usage error, 3 budget
    payload: dict | None
    provenance: dict | None


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source, "r", encoding="utf-8") as fh:
        return fh.read()


def read_matrix(source: str) -> ExactMatrix:
    """Load and fully validate a matrix from a path or stdin ('-')."""
    text = _read_text(source)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    return matrix_from_json(obj)


def _format_bits(x) -> str:
    """Fixed-point decimal with exactly 12 fractional digits."""
    text = mp.nstr(x, 40)
    with localcontext() as ctx:
        d = Decimal(text)
        ctx.prec = max(40, d.adjusted() + 14)
        return str(d.quantize(Decimal("0.000000000001")))


def _bundle_payload(bundle: HardMatrixBundle) -> dict:
    payload = {
        "provenance": {
            "construction": bundle.provenance,
            "parameters": dict(sorted(bundle.parameters.items())),
        }
    }
    payload.update(matrix_to_json(bundle.matrix))
    return payload


def _verdict_payload(verdict) -> dict:
    payload = {"kind": verdict.kind, "bound": verdict.bound}
    if verdict.sparsity is not None:
        payload["sparsity"] = verdict.sparsity
    if verdict.witness_entry is not None:
        payload["witness_entry"] = list(verdict.witness_entry)
    if verdict.witness_index is not None:
        payload["witness_index"] = verdict.witness_index
    if verdict.witness_output is not None:
        payload["witness_output"] = verdict.witness_output
    if verdict.value is not None:
        payload["value"] = encode_element(RATIONAL_FIELD, verdict.value)
    if verdict.detail:
        payload["detail"] = verdict.detail
    return payload


# --------------------------------------------------------------------------
# Handlers.


def _cmd_sidon(args) -> dict:
    if args.verify:
        obj = json.loads(_read_text(args.input))
        if isinstance(obj, dict) and "grid" in obj:
            values = [int(x) for row in obj["grid"] for x in row]
        elif isinstance(obj, list):
            values = [int(x) for x in obj]
        else:
            raise ValueError("expected a sidon JSON object or a plain array")
        return {"t": args.t, "distinct": verify_tsum_distinct(values, args.t)}
    if args.n is None:
        raise ValueError("--n is required unless --verify is given")
    s = construct_sidon(args.n, args.t, prime_budget=args.prime_budget)
    return {"n": s.n, "t": s.t, "p": s.p, "grid": [list(row) for row in s.grid]}


def _cmd_hard_finite(args) -> dict:
    return _bundle_payload(hard_over_finite(args.p, args.n, args.t))


def _cmd_hard_integers(args) -> dict:
    return _bundle_payload(hard_over_integers(args.n, args.t))


def _cmd_hard_trivial(args) -> dict:
    return _bundle_payload(trivial_hard(args.n))


def _cmd_hard_quasipoly(args) -> dict:
    return _bundle_payload(quasipoly_hard(args.n, args.c))


def _cmd_hard_amplify(args) -> dict:
    matrix = read_matrix(args.input)
    result = amplify_direct_sum(matrix, args.m)
    payload = {
        "provenance": {"construction": "amplified", "parameters": {"m": args.m}}
    }
    payload.update(matrix_to_json(result))
    return payload


def _cmd_ssdim_gamma(args) -> dict:
    matrix = read_matrix(args.input)
    if matrix.field.kind == KIND_EXTENSION:
        base = prime_field(matrix.field.p)
    else:
        base = matrix.field
    value = gamma_t(matrix, args.t, base, budget=args.budget)
    return {"t": args.t, "base": descriptor_to_json(base), "value": value}


def _cmd_ssdim_sigma(args) -> dict:
    matrix = read_matrix(args.input)
    return {"t": args.t, "value": sigma_t(matrix, args.t, budget=args.budget)}


def _cmd_ssdim_bound(args) -> dict:
    ev = bound_eval(args.s, args.d, args.t, args.n)
    return {
        "s": ev.s,
        "d": ev.d,
        "t": ev.t,
        "n": ev.n,
        "log2_gamma_upper": _format_bits(ev.log2_gamma_upper),
        "log2_sigma_upper": _format_bits(ev.log2_sigma_upper),
        "log2_gamma_lower": _format_bits(ev.log2_gamma_lower),
    }


def _cmd_ssdim_certify(args) -> dict:
    return {
        "n": args.n,
        "d": args.d,
        "t": args.t,
        "s_star": certify_depth_d(args.n, args.d, args.t),
    }


def _cmd_hitting_vand(args) -> dict:
    hv = vandermonde_vectors(args.n, args.s)
    return {
        "n": hv.n,
        "s": hv.s,
        "vectors": [[str(x) for x in v] for v in hv.vectors],
    }


def _cmd_hitting_rs(args) -> dict:
    return matrix_to_json(rs_generator(RSParams(args.q, args.k)))


def _cmd_hitting_kernelweight(args) -> dict:
    matrix = read_matrix(args.input)
    weight = min_kernel_weight(matrix, budget=args.budget)
    return {"min_weight": weight, "kernel_is_zero": weight is None}


def _cmd_hitting_hit(args) -> dict:
    matrix = read_matrix(args.input)
    vec_a = [decode_element(matrix.field, x) for x in json.loads(args.a)]
    vec_b = [decode_element(matrix.field, x) for x in json.loads(args.b)]
    value = hit_inner(matrix, vec_a, vec_b)
    return {"value": encode_element(matrix.field, value)}


def _cmd_psd_build(args) -> dict:
    pair = build_hard_psd(args.n)
    return {
        "n": pair.n,
        "mtilde": matrix_to_json(pair.mtilde),
        "m": matrix_to_json(pair.m),
        "probe_count": pair.probes.s,
    }


def _cmd_psd_refute_sym(args) -> dict:
    pair = build_hard_psd(args.n)
    b = read_matrix(args.b)
    return _verdict_payload(refute_symmetric(b, pair))


def _cmd_psd_refute_inv(args) -> dict:
    pair = build_hard_psd(args.n)
    b = read_matrix(args.b)
    c = read_matrix(args.c)
    return _verdict_payload(refute_invertible(b, c, args.side, pair))


def _cmd_circuit_parse(args) -> dict:
    circuit = parse_slc(_read_text(args.input))
    return {
        "field": descriptor_to_json(circuit.field),
        "depth": circuit.depth,
        "size": circuit.size,
        "layers": [[f.rows, f.cols] for f in circuit.factors],
    }


def _cmd_circuit_verify(args) -> dict:
    target = read_matrix(args.target)
    circuit = parse_slc(_read_text(args.circuit))
    result = verify_factorization(circuit, target)
    payload = {"equal": result.equal, "size": result.size}
    if not result.equal:
        payload["mismatch"] = list(result.mismatch)
    return payload


def _cmd_circuit_emit(args) -> dict:
    circuit = parse_slc(_read_text(args.input))
    text = emit_slc(circuit)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return {"slc": text}


def _cmd_search(args) -> dict:
    matrix = read_matrix(args.input)
    result = min_depth2_sparsity(
        matrix, m_max=args.m_max, s_max=args.s_max, budget=args.budget
    )
    return {
        "status": "found" if result.s_min is not None else "none",
        "s_min": result.s_min,
        "s_max": result.s_max,
        "m_max": result.m_max,
        "nodes": result.nodes,
        "witness": emit_slc(result.witness) if result.witness else None,
    }


# --------------------------------------------------------------------------
# Parser wiring.


def _add_input(sub, help_text="matrix JSON path, or - for stdin"):
    sub.add_argument("--in", dest="input", default="-", help=help_text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardmat",
        description="explicit hard matrices, Shoup-Smolensky measures, "
        "hitting sets, and a desk-scale factorization oracle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sidon", help="construct or verify a t-wise Sidon grid")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--prime-budget", type=int, default=1_000_000)
    p.add_argument("--verify", action="store_true", help="verify JSON from --in")
    _add_input(p, "sidon JSON or element array (with --verify)")
    p.set_defaults(handler=_cmd_sidon, operation="sidon")

    hard = sub.add_parser("hard", help="explicit hard-matrix constructions")
    hard_sub = hard.add_subparsers(dest="subcommand", required=True)
    p = hard_sub.add_parser("finite", help="powers of the extension generator")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(handler=_cmd_hard_finite, operation="hard finite")
    p = hard_sub.add_parser("integers", help="powers of two on the Sidon grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(handler=_cmd_hard_integers, operation="hard integers")
    p = hard_sub.add_parser("trivial", help="doubly-exponential small instance")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_hard_trivial, operation="hard trivial")
    p = hard_sub.add_parser("quasipoly", help="block-diagonal amplification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(handler=_cmd_hard_quasipoly, operation="hard quasipoly")
    p = hard_sub.add_parser("amplify", help="I_m (x) A for a given matrix A")
    p.add_argument("--m", type=int, required=True)
    _add_input(p)
    p.set_defaults(handler=_cmd_hard_amplify, operation="hard amplify")

    ssdim = sub.add_parser("ssdim", help="Shoup-Smolensky measures and bounds")
    ssdim_sub = ssdim.add_subparsers(dest="subcommand", required=True)
    p = ssdim_sub.add_parser("gamma", help="span dimension of t-wise products")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--budget", type=int)
    _add_input(p)
    p.set_defaults(handler=_cmd_ssdim_gamma, operation="ssdim gamma")
    p = ssdim_sub.add_parser("sigma", help="distinct subset sums of products")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--budget", type=int)
    _add_input(p)
    p.set_defaults(handler=_cmd_ssdim_sigma, operation="ssdim sigma")
    p = ssdim_sub.add_parser("bound", help="log-space bound quantities")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_ssdim_bound, operation="ssdim bound")
    p = ssdim_sub.add_parser("certify", help="largest size ruled out at depth d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(handler=_cmd_ssdim_certify, operation="ssdim certify")

    hitting = sub.add_parser("hitting", help="probe vectors and kernel weights")
    hitting_sub = hitting.add_subparsers(dest="subcommand", required=True)
    p = hitting_sub.add_parser("vand", help="rational probe vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(handler=_cmd_hitting_vand, operation="hitting vand")
    p = hitting_sub.add_parser("rs", help="Reed-Solomon generator matrix")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=_cmd_hitting_rs, operation="hitting rs")
    p = hitting_sub.add_parser("kernelweight", help="min weight in ker(G^T)")
    p.add_argument("--budget", type=int)
    _add_input(p)
    p.set_defaults(handler=_cmd_hitting_kernelweight, operation="hitting kernelweight")
    p = hitting_sub.add_parser("hit", help="the pairing a^T M b")
    p.add_argument("--a", required=True, help="JSON array of element encodings")
    p.add_argument("--b", required=True, help="JSON array of element encodings")
    _add_input(p)
    p.set_defaults(handler=_cmd_hitting_hit, operation="hitting hit")

    psd = sub.add_parser("psd", help="hard PSD instance and refuters")
    psd_sub = psd.add_subparsers(dest="subcommand", required=True)
    p = psd_sub.add_parser("build", help="rank-n/2 PSD matrix and Gram factor")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_psd_build, operation="psd build")
    p = psd_sub.add_parser("refute-sym", help="check a claimed Gram factor")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", required=True, help="matrix JSON path for B")
    p.set_defaults(handler=_cmd_psd_refute_sym, operation="psd refute-sym")
    p = psd_sub.add_parser("refute-inv", help="check a claimed invertible product")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", required=True, help="matrix JSON path for B")
    p.add_argument("--c", required=True, help="matrix JSON path for C")
    p.add_argument(
        "--side",
        required=True,
        choices=["left-invertible", "right-invertible"],
    )
    p.set_defaults(handler=_cmd_psd_refute_inv, operation="psd refute-inv")

    circuit = sub.add_parser("circuit", help="parse, verify, and emit .slc files")
    circuit_sub = circuit.add_subparsers(dest="subcommand", required=True)
    p = circuit_sub.add_parser("parse", help="parse and summarize")
    _add_input(p, ".slc path, or - for stdin")
    p.set_defaults(handler=_cmd_circuit_parse, operation="circuit parse")
    p = circuit_sub.add_parser("verify", help="multiply layers and compare")
    p.add_argument("--target", required=True, help="matrix JSON path")
    p.add_argument("--circuit", required=True, help=".slc path")
    p.set_defaults(handler=_cmd_circuit_verify, operation="circuit verify")
    p = circuit_sub.add_parser("emit", help="canonicalize circuit text")
    _add_input(p, ".slc path, or - for stdin")
    p.add_argument("--out", help="also write the canonical text to this path")
    p.set_defaults(handler=_cmd_circuit_emit, operation="circuit emit")

    p = sub.add_parser("search", help="minimum depth-2 sparsity by exhaustion")
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--budget", type=int)
    _add_input(p)
    p.set_defaults(handler=_cmd_search, operation="search")

    return parser


_PROVENANCE_SKIP = {"handler", "operation", "command", "subcommand"}


def dispatch(argv=None) -> CommandResult:
    """Run one command; returns the payload, provenance, and exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return CommandResult(0 if code == 0 else 2, None, None)
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in _PROVENANCE_SKIP and v is not None
    }
    provenance = {
        "operation": args.operation,
        "parameters": params,
        "version": __version__,
    }
    try:
        payload = args.handler(args)
    except BudgetExceeded as exc:
        return CommandResult(
            3, {"error": {"type": "budget", "message": str(exc)}}, provenance
        )
    except SlcParseError as exc:
        return CommandResult(
            1,
            {
                "error": {
                    "type": "parse",
                    "message": str(exc),
                    "line": exc.line,
                    "column": exc.column,
                }
            },
            provenance,
        )
    except (ValueError, ZeroDivisionError, OSError, KeyError) as exc:
        return CommandResult(
            1, {"error": {"type": "domain", "message": str(exc)}}, provenance
        )
    return CommandResult(0, payload, provenance)


def main(argv=None) -> int:
    result = dispatch(argv)
    if result.payload is not None:
        print(json.dumps(result.payload, separators=(",", ":")))
    if result.provenance is not None:
        print(
            json.dumps(result.provenance, separators=(",", ":")),
            file=sys.stderr,
        )
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
