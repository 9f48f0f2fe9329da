"""Command-line front end.

Every operation prints either a human-readable text form (default) or a
schema-versioned JSON envelope (``--format json``)::

    {"schema": "twinbuild/1", "command": ..., "parameters": ...,
     "result": ...}

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 domain error.

Matrices are written ``row;row;...`` with comma-separated polynomial
entries (``1,z;0,1``), or as a JSON array of entry strings; both parse
back to the identical matrix.  Words are comma-separated generator
indices (the empty string is the identity).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .building import (
    Simplex,
    chamber_from_basis,
    codelta,
    decode_coords,
    delta,
    encode_coords,
    opposite,
    project,
    project_twin,
    standard_chamber,
)
from .cells import bott_equivalence_check, loop_poincare, schubert_poincare
from .coxeter import (
    affine_to_word,
    bruhat_leq,
    coxeter_matrix,
    min_coset_reps,
    reduce_word,
    word_length,
)
from .errors import (
    DomainError,
    NotInImageError,
    NotInvertibleError,
    SymbolicDegreeError,
    TwinbuildError,
    VerificationError,
)
from .exactalg import LMat, parse_poly, parse_scalar, poly_to_str, scalar_to_str
from .lattice import INF
from .veronese import (
    SubspaceFlag,
    affine_veronese_vertex,
    caveat_check,
    spherical_veronese,
)
from .verify import available_suites, run_all, run_suite

SCHEMA = "twinbuild/1"

_ERROR_CODES = {
    NotInvertibleError: "not-invertible",
    NotInImageError: "not-in-image",
    SymbolicDegreeError: "symbolic-degree",
    VerificationError: "verification",
    DomainError: "domain-error",
    TwinbuildError: "error",
}


# ---------------------------------------------------------------------------
# parsing and printing helpers
# ---------------------------------------------------------------------------


def _parse_word(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(f"bad word {text!r}; expected comma-separated integers")


def _word_str(word):
    return ",".join(str(s) for s in word)


def _parse_matrix(text) -> LMat:
    text = text.strip()
    if text.startswith("["):
        rows = json.loads(text)
        return LMat([[parse_poly(str(e)) for e in row] for row in rows])
    return LMat(
        [[parse_poly(e) for e in row.split(",")] for row in text.split(";")]
    )


def _matrix_text(m: LMat) -> str:
    return ";".join(
        ",".join(poly_to_str(e) for e in row) for row in m.rows
    )


def _matrix_json(m: LMat):
    return [[poly_to_str(e) for e in row] for row in m.rows]


def _parse_param(text):
    text = text.strip()
    if text.upper() == "INF":
        return INF
    poly = parse_poly(text)
    if any(e != 0 for e in poly.coeffs):
        raise ValueError(f"panel parameter {text!r} must be constant or INF")
    return poly.coeff(0)


def _param_str(t):
    return "INF" if t is INF else scalar_to_str(t)


def _parse_coxeter_type(text):
    """'A3' -> finite A_3 (the symmetric group S_4); 'A~3' -> the affine
    cycle on 4 nodes."""
    text = text.strip()
    kind = "finite-A"
    body = text[1:]
    if not text.startswith("A"):
        raise ValueError(f"unsupported Coxeter type {text!r}")
    if body.startswith("~"):
        kind = "affine-A"
        body = body[1:]
    if not body.isdigit() or int(body) < 1:
        raise ValueError(f"unsupported Coxeter type {text!r}")
    return coxeter_matrix(kind, int(body) + 1)


def _parse_generators(text):
    text = text.strip()
    if text.startswith("J=") or text.startswith("K="):
        text = text[2:]
    if not text:
        return frozenset()
    return frozenset(int(t) for t in text.split(","))


def _parse_flag(text) -> SubspaceFlag:
    steps = []
    for sub in text.split("|"):
        steps.append(
            [[parse_scalar(e) for e in row.split(",")] for row in sub.split(";")]
        )
    n = len(steps[0][0])
    return SubspaceFlag(n, steps)


def _parse_weights(text):
    return [Fraction(t) for t in text.split(",")]


def _chamber_arg(text, side, n):
    if text is None:
        if n is None:
            raise ValueError("give --n or an explicit basis matrix")
        return standard_chamber(side, n)
    return chamber_from_basis(side, _parse_matrix(text))


def _face_arg(basis_text, keep_text, side):
    carrier = chamber_from_basis(side, _parse_matrix(basis_text))
    keep = {int(t) for t in keep_text.split(",")}
    return Simplex(carrier, keep)


def _bool_str(b):
    return "true" if b else "false"


# ---------------------------------------------------------------------------
# command handlers: each returns (parameters, json result, text, exit code)
# ---------------------------------------------------------------------------


def _cmd_coxeter(args):
    M = _parse_coxeter_type(args.type)
    if args.sub == "reduce":
        word = reduce_word(_parse_word(args.word), M)
        return (
            {"type": args.type, "word": args.word},
            {"word": list(word)},
            _word_str(word),
            0,
        )
    if args.sub == "length":
        ell = word_length(_parse_word(args.word), M)
        return {"type": args.type, "word": args.word}, {"length": ell}, str(ell), 0
    if args.sub == "bruhat":
        leq = bruhat_leq(_parse_word(args.v), _parse_word(args.w), M)
        return (
            {"type": args.type, "v": args.v, "w": args.w},
            {"leq": leq},
            _bool_str(leq),
            0,
        )
    # cosets
    J = _parse_generators(args.quotient)
    within = _parse_generators(args.within) if args.within else None
    reps = min_coset_reps(M, J, args.max_length, within=within)
    params = {
        "type": args.type,
        "quotient": sorted(J),
        "within": sorted(within) if within else None,
        "max_length": args.max_length,
    }
    return (
        params,
        {"representatives": [list(w) for w in reps]},
        "\n".join(_word_str(w) for w in reps),
        0,
    )


def _cmd_delta(args):
    c = _chamber_arg(args.c, args.side, args.n)
    d = chamber_from_basis(args.side, _parse_matrix(args.d))
    word = affine_to_word(delta(c, d))
    params = {"side": args.side, "c": args.c, "d": args.d}
    return params, {"word": list(word)}, _word_str(word), 0


def _cmd_codelta(args):
    cm = _chamber_arg(args.cminus, "-", args.n)
    cp = _chamber_arg(args.cplus, "+", args.n)
    word = affine_to_word(codelta(cm, cp))
    params = {"cminus": args.cminus, "cplus": args.cplus, "n": args.n}
    return params, {"word": list(word)}, _word_str(word), 0


def _cmd_opposite(args):
    cm = _chamber_arg(args.cminus, "-", args.n)
    cp = _chamber_arg(args.cplus, "+", args.n)
    opp = opposite(cm, cp)
    params = {"cminus": args.cminus, "cplus": args.cplus, "n": args.n}
    return params, {"opposite": opp}, _bool_str(opp), 0


def _cmd_project(args):
    face = _face_arg(args.basis, args.keep, args.side)
    c = chamber_from_basis(args.side, _parse_matrix(args.chamber))
    gate = project(face, c)
    params = {
        "side": args.side,
        "basis": args.basis,
        "keep": args.keep,
        "chamber": args.chamber,
    }
    return params, {"chamber": _matrix_json(gate.rep)}, _matrix_text(gate.rep), 0


def _cmd_project_twin(args):
    face = _face_arg(args.basis, args.keep, args.side)
    other = "-" if args.side == "+" else "+"
    c = chamber_from_basis(other, _parse_matrix(args.chamber))
    gate = project_twin(face, c)
    params = {
        "side": args.side,
        "basis": args.basis,
        "keep": args.keep,
        "chamber": args.chamber,
    }
    return params, {"chamber": _matrix_json(gate.rep)}, _matrix_text(gate.rep), 0


def _cmd_coords(args):
    cp = _chamber_arg(args.cplus, "+", args.n)
    cm = _chamber_arg(args.cminus, "-", args.n)
    if args.sub == "encode":
        e = chamber_from_basis("+", _parse_matrix(args.chamber))
        word = _parse_word(args.word) if args.word is not None else None
        coords = encode_coords(cp, cm, e, word=word)
        if word is None:
            word = affine_to_word(delta(cp, e))
        params = {"n": args.n, "chamber": args.chamber, "word": args.word}
        result = {
            "word": list(word),
            "coords": [_param_str(t) for t in coords],
        }
        text = f"word: {_word_str(word)}\ncoords: " + ",".join(
            _param_str(t) for t in coords
        )
        return params, result, text, 0
    word = _parse_word(args.word)
    coords = [_parse_param(t) for t in args.coords.split(",")] if args.coords else []
    e = decode_coords(cp, cm, word, coords)
    params = {"n": args.n, "word": args.word, "coords": args.coords}
    return params, {"chamber": _matrix_json(e.rep)}, _matrix_text(e.rep), 0


def _cmd_poincare(args):
    if args.sub == "schubert":
        M = _parse_coxeter_type(args.type)
        J = _parse_generators(args.quotient) if args.quotient else frozenset()
        series = schubert_poincare(M, J, _parse_word(args.w), args.truncation)
        params = {
            "type": args.type,
            "quotient": sorted(J),
            "w": args.w,
            "truncation": args.truncation,
        }
    elif args.sub == "loop":
        series = loop_poincare(args.n, args.deg)
        params = {"n": args.n, "deg": args.deg}
    else:  # bott-check
        ok = bott_equivalence_check(args.k, args.deg)
        return (
            {"k": args.k, "deg": args.deg},
            {"equivalent": ok},
            _bool_str(ok),
            0,
        )
    result = {
        "coefficients": list(series.coeffs),
        "series": str(series),
        "truncation": series.truncation,
    }
    text = str(series) if args.sub == "schubert" else json.dumps(list(series.coeffs), separators=(",", ":"))
    return params, result, text, 0


def _cmd_veronese(args):
    if args.sub == "spherical":
        flag = _parse_flag(args.flag)
        x = spherical_veronese(flag, _parse_weights(args.weights))
        params = {"flag": args.flag, "weights": args.weights}
        return params, {"matrix": _matrix_json(x)}, _matrix_text(x), 0
    if args.sub == "affine":
        g = _parse_matrix(args.loop) if args.loop else LMat.identity(args.n)
        x = affine_veronese_vertex(g, args.k)
        params = {"n": args.n, "k": args.k, "loop": args.loop}
        return params, {"matrix": _matrix_json(x)}, _matrix_text(x), 0
    # caveat
    x = _parse_matrix(args.x) if args.x else None
    ok = caveat_check(args.n, args.deg, x)
    params = {"n": args.n, "deg": args.deg, "x": args.x}
    return params, {"no_truncated_kernel": ok}, _bool_str(ok), 0


def _cmd_verify(args):
    if args.suite == "all":
        results = run_all(seed=args.seed, count=args.count)
    else:
        results = [run_suite(args.suite, seed=args.seed, count=args.count)]
    failed = sum(r.failed for r in results)
    lines = []
    for r in results:
        lines.append(str(r))
        lines.extend(f"  {m}" for m in r.messages)
    params = {"suite": args.suite, "seed": args.seed, "count": args.count}
    return (
        params,
        {"suites": [r.as_dict() for r in results], "failed": failed},
        "\n".join(lines),
        0 if failed == 0 else 1,
    )


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------


def _build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(
        prog="twinbuild",
        description="Exact twin-building and Veronese computations for SL_n.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    cox = sub.add_parser("coxeter", help="words, lengths, Bruhat order, cosets")
    coxsub = cox.add_subparsers(dest="sub", required=True)
    for name in ("reduce", "length"):
        q = coxsub.add_parser(name, parents=[fmt])
        q.add_argument("--type", required=True, help="A<k> or A~<k>")
        q.add_argument("--word", required=True)
        q.set_defaults(func=_cmd_coxeter)
    q = coxsub.add_parser("bruhat", parents=[fmt])
    q.add_argument("--type", required=True)
    q.add_argument("--v", required=True)
    q.add_argument("--w", required=True)
    q.set_defaults(func=_cmd_coxeter)
    q = coxsub.add_parser("cosets", parents=[fmt])
    q.add_argument("--type", required=True)
    q.add_argument("--quotient", required=True, help="J=<comma list>")
    q.add_argument("--within", default=None, help="K=<comma list>")
    q.add_argument("--max-length", type=int, default=12)
    q.set_defaults(func=_cmd_coxeter)

    q = sub.add_parser("delta", parents=[fmt], help="same-side Weyl distance")
    q.add_argument("--side", choices=("+", "-"), default="+")
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--c", default=None, help="basis matrix (default standard)")
    q.add_argument("--d", required=True, help="basis matrix")
    q.set_defaults(func=_cmd_delta)

    q = sub.add_parser("codelta", parents=[fmt], help="twin codistance")
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--cminus", default=None)
    q.add_argument("--cplus", default=None)
    q.set_defaults(func=_cmd_codelta)

    q = sub.add_parser("opposite", parents=[fmt], help="codistance identity test")
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--cminus", default=None)
    q.add_argument("--cplus", default=None)
    q.set_defaults(func=_cmd_opposite)

    q = sub.add_parser("project", parents=[fmt], help="same-side gate")
    q.add_argument("--side", choices=("+", "-"), default="+")
    q.add_argument("--basis", required=True, help="carrier chamber basis")
    q.add_argument("--keep", required=True, help="kept chain positions")
    q.add_argument("--chamber", required=True)
    q.set_defaults(func=_cmd_project)

    q = sub.add_parser("project-twin", parents=[fmt], help="twin gate")
    q.add_argument("--side", choices=("+", "-"), default="-",
                   help="side of the face")
    q.add_argument("--basis", required=True)
    q.add_argument("--keep", required=True)
    q.add_argument("--chamber", required=True, help="chamber on the other side")
    q.set_defaults(func=_cmd_project_twin)

    coords = sub.add_parser("coords", help="Schubert-cell coordinates")
    csub = coords.add_subparsers(dest="sub", required=True)
    q = csub.add_parser("encode", parents=[fmt])
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--cplus", default=None)
    q.add_argument("--cminus", default=None)
    q.add_argument("--chamber", required=True)
    q.add_argument("--word", default=None, help="reduced word (default: normal form)")
    q.set_defaults(func=_cmd_coords)
    q = csub.add_parser("decode", parents=[fmt])
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--cplus", default=None)
    q.add_argument("--cminus", default=None)
    q.add_argument("--word", required=True)
    q.add_argument("--coords", required=True, help="comma list; INF allowed")
    q.set_defaults(func=_cmd_coords)

    poin = sub.add_parser("poincare", help="cell-counting series")
    psub = poin.add_subparsers(dest="sub", required=True)
    q = psub.add_parser("schubert", parents=[fmt])
    q.add_argument("--type", required=True)
    q.add_argument("--quotient", default="", help="J=<comma list>")
    q.add_argument("--w", required=True)
    q.add_argument("--truncation", type=int, default=None)
    q.set_defaults(func=_cmd_poincare)
    q = psub.add_parser("loop", parents=[fmt])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--deg", type=int, required=True)
    q.set_defaults(func=_cmd_poincare)
    q = psub.add_parser("bott-check", parents=[fmt])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--deg", type=int, required=True)
    q.set_defaults(func=_cmd_poincare)

    ver = sub.add_parser("veronese", help="projector embeddings")
    vsub = ver.add_subparsers(dest="sub", required=True)
    q = vsub.add_parser("spherical", parents=[fmt])
    q.add_argument("--flag", required=True,
                   help="subspaces '|'-separated, rows ';'-separated")
    q.add_argument("--weights", required=True, help="comma list of rationals")
    q.set_defaults(func=_cmd_veronese)
    q = vsub.add_parser("affine", parents=[fmt])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--loop", default=None, help="unitary loop matrix")
    q.set_defaults(func=_cmd_veronese)
    q = vsub.add_parser("caveat", parents=[fmt])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--deg", type=int, required=True)
    q.add_argument("--x", default=None, help="sharp-fixed traceless matrix")
    q.set_defaults(func=_cmd_veronese)

    q = sub.add_parser("verify", parents=[fmt], help="seeded self-check suites")
    q.add_argument("suite", choices=("all",) + available_suites())
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--count", type=int, default=None)
    q.set_defaults(func=_cmd_verify)

    return p


def _command_name(args) -> str:
    name = args.command
    if getattr(args, "sub", None):
        name += "." + args.sub
    return name


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    name = _command_name(args)
    try:
        params, result, text, code = args.func(args)
    except TwinbuildError as exc:
        for cls in type(exc).__mro__:
            if cls in _ERROR_CODES:
                err_code = _ERROR_CODES[cls]
                break
        envelope = {
            "schema": SCHEMA,
            "command": name,
            "error": {"code": err_code, "message": str(exc)},
        }
        if args.format == "json":
            print(json.dumps(envelope, sort_keys=True))
        else:
            print(f"error ({err_code}): {exc}", file=sys.stderr)
        return 1 if isinstance(exc, VerificationError) else 3
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        envelope = {
            "schema": SCHEMA,
            "command": name,
            "parameters": params,
            "result": result,
        }
        print(json.dumps(envelope, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
