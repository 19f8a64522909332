"""Command-line front end.

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 domain error (with the error name in a structured field), 2 usage error.
Everything is exact integer arithmetic; rational coefficients appear only
in decomposition output and are rendered as fraction strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalogue as catalogue_mod
from .errors import TorelliError
from .freegroup import format_automorphism, parse_automorphism
from .johnson import psi, rank_h1, tau1
from .symplectic import format_sparse, parse_sparse, triple_basis
from .theta import theta_translation
from .torus import build_ring, extract_F, serialize_ring, verify_ring

SCHEMA_VERSION = 1


def to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def envelope(command: str, genus, result) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "genus": genus,
        "result": result,
    }


def load_automorphism(spec: str, genus: int):
    text = Path(spec[1:]).read_text() if spec.startswith("@") else spec
    aut = parse_automorphism(text)
    if aut.genus != genus:
        from .errors import GenusMismatch

        raise GenusMismatch(
            f"automorphism has genus {aut.genus}, command asked for {genus}"
        )
    return aut


def johnson_result(aut) -> dict:
    value = tau1(aut)
    return {
        "bounded": str(value.bounded),
        "closed": str(value.closed),
        "genus": aut.genus,
    }


def cmd_tau(args) -> dict:
    aut = load_automorphism(args.aut, args.genus)
    return envelope("tau", args.genus, johnson_result(aut))


def cmd_psi(args) -> dict:
    aut = load_automorphism(args.aut, args.genus)
    value = psi(aut)
    return envelope(
        "psi",
        args.genus,
        {"modulus": args.genus - 1, "coords": list(value.coords)},
    )


def cmd_theta(args) -> dict:
    aut = load_automorphism(args.aut, args.genus)
    translation = theta_translation(aut, args.n)
    return envelope(
        "theta",
        args.genus,
        {"n": args.n, "translation": list(translation), "even": True},
    )


def cmd_decompose(args) -> dict:
    w = parse_sparse(args.wedge3, args.genus, 3)
    from .symplectic import decompose_lambda3

    part1, part3 = decompose_lambda3(w)
    return envelope(
        "decompose",
        args.genus,
        {
            "input": str(w),
            "part1": format_sparse(part1.coeffs, triple_basis(args.genus)),
            "part3": format_sparse(part3.coeffs, triple_basis(args.genus)),
        },
    )


def cmd_ring(args) -> dict:
    if args.tau is not None:
        tau = parse_sparse(args.tau, args.genus, 3)
    else:
        aut = load_automorphism(args.aut, args.genus)
        tau = tau1(aut).bounded
    ring = build_ring(tau, args.genus)
    report = verify_ring(ring)
    tensor = extract_F(ring)
    return envelope(
        "ring",
        args.genus,
        {
            "tau": str(tau),
            "ring": serialize_ring(ring),
            "verify": report,
            "tensor": [list(r) for r in tensor.rows],
        },
    )


def cmd_ranktable(args) -> dict:
    return envelope(
        "ranktable",
        None,
        {
            "lambda": getattr(args, "lambda"),
            "r": args.r,
            "n": args.n,
            "rank": rank_h1(getattr(args, "lambda"), args.r, args.n),
            "assumes_genus_at_least": 3,
        },
    )


def cmd_catalogue(args) -> dict:
    entries = catalogue_mod.load(args.genus)
    from .symplectic import format_h1

    out = []
    for e in entries:
        record = {
            "name": e.name,
            "kind": e.kind,
            "curve": format_h1(e.curve_h1) if any(e.curve_h1) else "0",
            "valid": True,
            "report": [],
            "automorphism": format_automorphism(e.automorphism),
        }
        if e.gprime is not None:
            record["gprime"] = e.gprime
        if e.aclass is not None:
            record["aclass"] = e.aclass
        out.append(record)
    return envelope("catalogue", args.genus, {"entries": out})


def cmd_pool(args) -> dict:
    pool = catalogue_mod.torelli_pool(args.genus, args.size)
    return envelope(
        "pool",
        args.genus,
        {"size": args.size, "automorphisms": [format_automorphism(a) for a in pool]},
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torelli",
        description="Exact Johnson homomorphism and root-of-canonical-bundle "
        "computations for surface mapping classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_genus(p):
        p.add_argument("--genus", type=int, required=True)

    def add_aut(p):
        p.add_argument(
            "--aut",
            required=True,
            help="automorphism record, inline or @path to a file",
        )

    p = sub.add_parser("tau", help="Johnson value (bounded and closed)")
    add_genus(p)
    add_aut(p)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("psi", help="contraction of the Johnson value mod g-1")
    add_genus(p)
    add_aut(p)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("theta", help="translation action on n-th roots")
    add_genus(p)
    add_aut(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("decompose", help="split a degree-3 class into q-part and kernel part")
    add_genus(p)
    p.add_argument("--wedge3", required=True, help="sparse class, e.g. 'a1^b1^a2 - 2*a1^a2^a3'")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("ring", help="build, verify, and invert the mapping-torus ring")
    add_genus(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tau", help="sparse degree-3 class")
    group.add_argument("--aut", help="automorphism record, inline or @path")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("ranktable", help="first-cohomology rank by highest weight")
    p.add_argument("--lambda", choices=["lambda1", "lambda3", "other"], required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_ranktable)

    p = sub.add_parser("catalogue", help="load and validate the shipped twists")
    add_genus(p)
    p.set_defaults(func=cmd_catalogue)

    p = sub.add_parser("pool", help="deterministic Torelli test pool")
    add_genus(p)
    p.add_argument("--size", type=int, required=True)
    p.set_defaults(func=cmd_pool)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except TorelliError as exc:
        error = {
            "schema_version": SCHEMA_VERSION,
            "error": {"name": type(exc).__name__, "message": str(exc)},
        }
        sys.stdout.write(to_json(error))
        return 1
    except OSError as exc:
        error = {
            "schema_version": SCHEMA_VERSION,
            "error": {"name": "IOError", "message": str(exc)},
        }
        sys.stdout.write(to_json(error))
        return 1
    sys.stdout.write(to_json(payload))
    return 0


if __name__ == "__main__":
    sys.exit(main())
