"""Command line front end with a JSON in / JSON out contract.

Every invocation prints exactly one JSON report::

    {"command": ..., "status": "ok"|"error"|"undecided"|"unsupported",
     "payload": ..., "diagnostics": [...]}

Error reports add ``"error": {"code": ..., "message": ...}``. Exit codes are
0 (ok), 1 (invalid input or other error) and 2 (undecided or unsupported).
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import au, bu, decompose, fusion
from .errors import InvalidInput, Undecidable, UnsupportedInput, UQGError
from .linalg import Tolerance, as_matrix

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2


class UsageError(UQGError):
    code = "usage"


class MalformedJSON(InvalidInput):
    code = "malformed_json"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _clean(obj: Any) -> Any:
    """Round floats to 12 significant digits so output is byte-stable."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(format(float(obj), ".12g"))
        return 0.0 if x == 0 else x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dump_report(report: dict) -> bytes:
    return (json.dumps(_clean(report), separators=(",", ":")) + "\n").encode("utf-8")


def matrix_to_document(q) -> dict:
    q = np.asarray(q, dtype=complex)
    return {"n": q.shape[0], "data": [[[z.real, z.imag] for z in row] for row in q]}


def document_to_matrix(doc: Any) -> np.ndarray:
    if not isinstance(doc, dict) or "data" not in doc:
        raise InvalidInput('matrix document must be an object with "n" and "data"')
    data = doc["data"]
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise InvalidInput('"data" must be a list of rows')
    n = doc.get("n", len(data))
    if not isinstance(n, int) or isinstance(n, bool) or n != len(data) or any(len(r) != n for r in data):
        raise InvalidInput(f"matrix is not {n}x{n}")

    def entry(v):
        if isinstance(v, list) and len(v) == 2 and all(_is_num(x) for x in v):
            return complex(v[0], v[1])
        if _is_num(v):
            return complex(v)
        raise InvalidInput(f"bad matrix entry {v!r}; expected [re, im]")

    q = np.array([[entry(v) for v in row] for row in data], dtype=complex)
    return as_matrix(q)


def _is_num(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _load_json(text: str | bytes, source: str) -> Any:
    try:
        return json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedJSON(f"malformed JSON in {source}: {exc}") from None


def _matrices(args, stdin: bytes, count: int) -> list[np.ndarray]:
    if args.matrix:
        docs = []
        for path in args.matrix:
            try:
                text = Path(path).read_bytes()
            except OSError as exc:
                raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
            docs.append(_load_json(text, path))
    else:
        loaded = _load_json(stdin() if callable(stdin) else stdin, "stdin")
        docs = loaded if isinstance(loaded, list) and all(isinstance(d, dict) for d in loaded) else [loaded]
    if len(docs) != count:
        raise UsageError(f"expected {count} matrix input(s), got {len(docs)}")
    return [document_to_matrix(d) for d in docs]


def _build_parser() -> _Parser:
    parser = _Parser(prog="univqg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def matrix_opts(p):
        p.add_argument("kind", choices=["au", "bu"])
        p.add_argument("--matrix", action="append", help="path to a matrix JSON document")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)

    for name in ("classify", "isomorphic", "canon"):
        matrix_opts(sub.add_parser(name))
    dec = sub.add_parser("decompose")
    matrix_opts(dec)
    dec.add_argument("--partition", help="JSON list of index blocks (B_u only)")

    fus = sub.add_parser("fusion")
    fus.add_argument("action", choices=["dims", "product", "verify"])
    fus.add_argument("--n", type=int)
    fus.add_argument("--max-len", type=int)
    fus.add_argument("--x", default="e")
    fus.add_argument("--y", default="e")
    return parser


def _cmd_classify(args, tol, stdin):
    (q,) = _matrices(args, stdin, 1)
    if args.kind == "au":
        return {"invariant": list(au.au_invariant(q, tol).spectrum)}, []
    d = bu.bu_descriptor(q, tol)
    return {"n": d.n, "c": d.c, "mu": list(d.mu.mu), "u_part": matrix_to_document(d.u_part)}, []


def _cmd_isomorphic(args, tol, stdin):
    q1, q2 = _matrices(args, stdin, 2)
    if args.kind == "au":
        return {"isomorphic": au.au_isomorphic(q1, q2, tol)}, []
    res = bu.bu_isomorphic(q1, q2, tol, seed=args.seed)
    payload: dict[str, Any] = {"verdict": res.verdict, "reason": res.reason}
    if res.verdict == "yes":
        payload["witness"] = {
            "z": [res.z.real, res.z.imag],
            "s": matrix_to_document(res.s),
            "residual": res.residual,
        }
    return payload, []


def _cmd_canon(args, tol, stdin):
    (q,) = _matrices(args, stdin, 1)
    if args.kind == "au":
        rep = np.diag(au.au_invariant(q, tol).spectrum)
    else:
        rep = bu.bu_descriptor(q, tol).representative()
    return {"matrix": matrix_to_document(rep)}, []


def _cmd_decompose(args, tol, stdin):
    (q,) = _matrices(args, stdin, 1)
    if args.kind == "au":
        if args.partition is not None:
            raise UsageError("--partition applies to decompose bu only")
        expr = decompose.decompose_au(q, tol)
    else:
        part = None if args.partition is None else _load_json(args.partition, "--partition")
        expr = decompose.decompose_bu(q, tol, partition=part)
    return {"atoms": expr.labels}, []


def _cmd_fusion(args, stdin):
    if args.action == "product":
        x, y = fusion.FreeWord.parse(args.x), fusion.FreeWord.parse(args.y)
        terms = sorted(fusion.fuse(x, y).elements(), key=lambda w: (-len(w), w.letters))
        payload: dict[str, Any] = {"terms": [str(w) for w in terms]}
        if args.n is not None:
            table = fusion.DimensionTable(args.n)
            payload["dims"] = [table.dim(w) for w in terms]
        return payload, []
    if args.n is None or args.max_len is None:
        raise UsageError(f"fusion {args.action} needs --n and --max-len")
    if args.max_len < 0:
        raise UsageError("--max-len must be >= 0")
    if args.action == "dims":
        return {"f": fusion.min_dim_sequence(args.n, args.max_len)}, []
    if args.max_len < 1:
        raise UsageError("--max-len must be >= 1")
    rep = fusion.verify_fusion_dims(args.n, args.max_len)
    payload = {
        "formula_ok": rep.formula_ok,
        "minimality_ok": rep.minimality_ok,
        "swap_ok": rep.swap_ok,
        "counterexamples": list(rep.counterexamples),
    }
    return payload, []


def _dispatch(args, stdin: bytes):
    if args.command == "fusion":
        return _cmd_fusion(args, stdin)
    try:
        tol = Tolerance.from_eq(args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    handler = {
        "classify": _cmd_classify,
        "isomorphic": _cmd_isomorphic,
        "canon": _cmd_canon,
        "decompose": _cmd_decompose,
    }[args.command]
    return handler(args, tol, stdin)


def _command_name(argv: Sequence[str]) -> str:
    words = [a for a in argv[:2] if not a.startswith("-")]
    return " ".join(words)


def run(argv: Sequence[str], stdin: bytes | Callable[[], bytes] = b"") -> tuple[int, bytes]:
    """Execute one command; returns ``(exit_code, stdout_bytes)``.

    ``stdin`` may be a zero-argument callable so it is only read when a
    command actually takes its matrix from standard input.
    """
    argv = list(argv)
    command = _command_name(argv)
    try:
        help_out = io.StringIO()
        with contextlib.redirect_stdout(help_out):
            try:
                args = _build_parser().parse_args(argv)
            except SystemExit as exc:
                return int(exc.code or 0), help_out.getvalue().encode("utf-8")
        payload, diagnostics = _dispatch(args, stdin)
        report = {"command": command, "status": "ok", "payload": payload, "diagnostics": diagnostics}
        if payload.get("verdict") == "undecided":
            report["status"] = "undecided"
            return EXIT_UNDECIDED, dump_report(report)
        return EXIT_OK, dump_report(report)
    except UQGError as exc:
        if isinstance(exc, UnsupportedInput):
            status, code = "unsupported", EXIT_UNDECIDED
        elif isinstance(exc, Undecidable):
            status, code = "undecided", EXIT_UNDECIDED
        else:
            status, code = "error", EXIT_ERROR
        report = {
            "command": command,
            "status": status,
            "error": {"code": exc.code, "message": str(exc)},
            "payload": None,
            "diagnostics": exc.diagnostics,
        }
        return code, dump_report(report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, out = run(argv, lambda: sys.stdin.buffer.read() if sys.stdin is not None else b"")
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
