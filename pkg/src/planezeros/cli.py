"""Command-line front end.

    planezeros decide --input divisor.json
    planezeros eval --input model.json --point '[["1/2","0"],[0.25,0.1]]'

Input documents hold exact rationals as strings:
{"n": 2, "hyperplanes": [{"a": [["1","0"],["0","1"]], "c": ["1/3","0"], "mult": 1}]}.
Reports are JSON objects {command, input_digest, result, residuals?, timings}.
Coordinate indices in reports are 1-based.
Exit codes: 0 success, 2 rejected divisor, 1 input error or failed check.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from fractions import Fraction

import numpy as np

from .construct import IndexObstruction, build_model, model_from_dict, model_to_dict
from .forms import L1, LinearForm, classify, divisor_certificate
from .gaussrat import GaussRat, parse_rational
from .indexcalc import PlaneDivisor, decide, divisor_index
from .oracle import verify_model

EXIT_OK, EXIT_ERROR, EXIT_REJECT = 0, 1, 2


class InputError(ValueError):
    """Malformed input, reported with the offending field path or line."""


# parsing


def _rational(x, path: str) -> Fraction:
    if not isinstance(x, str):
        raise InputError(f"{path}: expected a rational string like \"1/3\", got {json.dumps(x)}")
    try:
        return parse_rational(x)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def _gauss(x, path: str) -> GaussRat:
    if not isinstance(x, list) or len(x) != 2:
        raise InputError(f"{path}: expected a [re, im] pair, got {json.dumps(x)}")
    return GaussRat(_rational(x[0], f"{path}[0]"), _rational(x[1], f"{path}[1]"))


def parse_divisor(doc) -> PlaneDivisor:
    if not isinstance(doc, dict):
        raise InputError("document: expected a JSON object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InputError("n: expected an integer >= 2")
    hps = doc.get("hyperplanes")
    if not isinstance(hps, list) or not hps:
        raise InputError("hyperplanes: expected a non-empty list")
    forms = []
    for i, h in enumerate(hps):
        path = f"hyperplanes[{i}]"
        if not isinstance(h, dict) or "a" not in h:
            raise InputError(f"{path}: expected an object with field 'a'")
        a = h["a"]
        if not isinstance(a, list):
            raise InputError(f"{path}.a: expected a list of [re, im] pairs")
        if len(a) != n:
            raise InputError(f"{path}.a: dimension mismatch, {len(a)} coefficients for n = {n}")
        coeffs = tuple(_gauss(x, f"{path}.a[{j}]") for j, x in enumerate(a))
        c = _gauss(h.get("c", ["0", "0"]), f"{path}.c")
        mult = h.get("mult", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise InputError(f"{path}.mult: expected a positive integer")
        if not any(coeffs):
            raise InputError(f"{path}.a: coefficient vector is zero")
        forms.append(LinearForm(coeffs, c, mult))
    return PlaneDivisor(tuple(forms))


def divisor_to_doc(Z: PlaneDivisor) -> dict:
    return {"n": Z.n, "hyperplanes": [
        {"a": [x.to_pair() for x in f.a], "c": f.c.to_pair(), "mult": f.mult} for f in Z.components
    ]}


def parse_point(text: str, n: int) -> np.ndarray:
    """A point as a JSON list of [re, im] pairs; parts are rational strings or numbers."""
    try:
        pts = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"--point: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(pts, list) or len(pts) != n:
        raise InputError(f"--point: expected a list of {n} [re, im] pairs")
    z = []
    for j, x in enumerate(pts):
        if not isinstance(x, list) or len(x) != 2:
            raise InputError(f"--point[{j}]: expected a [re, im] pair")
        parts = []
        for k, v in enumerate(x):
            if isinstance(v, str):
                parts.append(float(_rational(v, f"--point[{j}][{k}]")))
            elif isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v):
                parts.append(float(v))
            else:
                raise InputError(f"--point[{j}][{k}]: expected a number or rational string")
        z.append(complex(parts[0], parts[1]))
    return np.array(z, dtype=complex)


def load_document(path: str) -> tuple[dict, bytes]:
    try:
        raw = sys.stdin.buffer.read() if path == "-" else open(path, "rb").read()
    except OSError as e:
        raise InputError(f"--input: cannot read {path}: {e.strerror}") from None
    try:
        doc = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError:
        raise InputError("--input: file is not UTF-8 text") from None
    except json.JSONDecodeError as e:
        raise InputError(f"--input: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return doc, raw


def _model_doc(doc):
    """The serialized model inside a model file or a build report, if any."""
    if isinstance(doc, dict) and "l2_factors" in doc:
        return doc
    if isinstance(doc, dict) and isinstance(doc.get("result"), dict) and "model" in doc["result"]:
        return doc["result"]["model"]
    return None


# report serialization: every float with 17 significant digits


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    return x


_TAG = "\x00f17:"


def _mark(x):
    """Floats become tagged strings holding their 17-digit text; non-finite ones plain strings."""
    if isinstance(x, float):
        if math.isnan(x):
            return "NaN"
        if math.isinf(x):
            return "Infinity" if x > 0 else "-Infinity"
        s = format(x, ".17g")
        return _TAG + (s if any(ch in s for ch in ".e") else s + ".0")
    if isinstance(x, dict):
        return {k: _mark(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_mark(v) for v in x]
    return x


def dumps(report: dict) -> str:
    text = json.dumps(_mark(_jsonable(report)), indent=2, ensure_ascii=False)
    # tagged strings become bare numbers
    out, i, tag = [], 0, json.dumps(_TAG)[:-1]
    while True:
        j = text.find(tag, i)
        if j < 0:
            out.append(text[i:])
            return "".join(out)
        k = text.index('"', j + len(tag))
        out.append(text[i:j])
        out.append(text[j + len(tag):k])
        i = k + 1


# commands


def _classify_result(Z: PlaneDivisor) -> dict:
    comps = []
    for i, (f, cf) in enumerate(zip(Z.components, Z.classified)):
        cert = divisor_certificate(cf)
        item = {"component": i + 1, "class": cf.cls, "m": cf.m, "perp_basis": [list(v) for v in cert.perp_basis],
                "basis": [list(v) for v in cf.basis], "b": [x.to_pair() for x in cf.b]}
        if cf.cls == L1:
            item.update(k0=list(cf.k0), scale=cf.scale.to_pair(), c_reduced=cf.c_reduced.to_pair())
        else:
            item["witness"] = [cf.witness[0] + 1, cf.witness[1] + 1]
        comps.append(item)
    return {"n": Z.n, "components": comps}


def _decision_result(d) -> dict:
    res = {"verdict": d.verdict, "index": d.index.tolist(),
           "z_prime": len(d.z_prime), "z_second": len(d.z_second)}
    if d.witness is not None:
        res["witness"] = {"p": d.witness.p + 1, "q": d.witness.q + 1, "sum": d.witness.value}
    if d.model is not None:
        M = d.model
        res["model"] = {"l1_factors": len(M.l1), "l2_factors": len(M.l2),
                        "sigma": [[x.to_pair() for x in r] for r in M.sigma], "tau": [x.to_pair() for x in M.tau]}
    return res


def _reject(Z, eps):
    d = decide(Z, eps, build=False)
    return {"verdict": "reject", "index": d.index.tolist(),
            "witness": {"p": d.witness.p + 1, "q": d.witness.q + 1, "sum": d.witness.value}}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    timings = {}
    report = {"command": args.command, "input_digest": None, "result": None}
    code = EXIT_OK
    try:
        if args.eps is not None and not args.eps > 0:
            raise InputError("--eps: must be positive")
        eps = 1e-12 if args.eps is None else args.eps
        if args.command == "selftest":
            from .acceptance import run_all

            outs = run_all(verbose=False)
            report["result"] = {"criteria": [
                {"number": o.number, "title": o.title, "passed": o.passed, "seconds": o.seconds} for o in outs
            ]}
            for o in outs:
                print(o.line(), file=sys.stderr)
            code = EXIT_OK if all(o.passed for o in outs) else EXIT_ERROR
        else:
            if args.input is None:
                raise InputError("--input: required for this command")
            doc, raw = load_document(args.input)
            report["input_digest"] = hashlib.sha256(raw).hexdigest()
            code = _dispatch(args, doc, eps, report, timings)
    except InputError as e:
        report["error"] = str(e)
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_ERROR
    timings["total"] = time.perf_counter() - t0
    report["timings"] = timings
    text = dumps(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def _dispatch(args, doc, eps, report, timings) -> int:
    cmd = args.command
    model_doc = _model_doc(doc) if cmd == "eval" else None
    if model_doc is not None:
        try:
            M = model_from_dict(model_doc)
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"model: malformed serialized model ({e})") from None
        z = parse_point(_need_point(args), M.n)
        return _eval(M, z, report, timings)

    Z = parse_divisor(doc)
    t = time.perf_counter()
    if cmd == "classify":
        report["result"] = _classify_result(Z)
    elif cmd == "index":
        report["result"] = {"index": divisor_index(Z).tolist()}
    elif cmd == "decide":
        d = decide(Z, eps)
        report["result"] = _decision_result(d)
        timings["decide"] = time.perf_counter() - t
        return EXIT_OK if d.accepted else EXIT_REJECT
    else:
        try:
            M = build_model(Z, eps)
        except IndexObstruction:
            report["result"] = _reject(Z, eps)
            return EXIT_REJECT
        timings["build"] = time.perf_counter() - t
        if cmd == "build":
            report["result"] = {"divisor": divisor_to_doc(Z), "model": model_to_dict(M)}
        elif cmd == "eval":
            return _eval(M, parse_point(_need_point(args), Z.n), report, timings)
        elif cmd == "verify":
            t = time.perf_counter()
            rep = verify_model(M, Z, seed=args.seed)
            timings["verify"] = time.perf_counter() - t
            d = rep.to_dict()
            for item in d["zero_tests"] + d["displaced_tests"]:
                item["component"] += 1
            report["residuals"] = {"periodicity": d.pop("periodicity")}
            report["result"] = d
            return EXIT_OK if rep.passed else EXIT_ERROR
    timings[cmd] = time.perf_counter() - t
    return EXIT_OK


def _need_point(args) -> str:
    if args.point is None:
        raise InputError("--point: required for eval")
    return args.point


def _eval(M, z, report, timings) -> int:
    t = time.perf_counter()
    L = complex(M.log_eval(z[None])[0])
    with np.errstate(over="ignore"):
        v = complex(np.exp(L))
    timings["eval"] = time.perf_counter() - t
    report["result"] = {"point": [[p.real, p.imag] for p in z], "value": [v.real, v.imag],
                        "log_value": [L.real, L.imag]}
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planezeros", description=__doc__.split("\n")[0])
    ap.add_argument("command", choices=["classify", "index", "decide", "build", "eval", "verify", "selftest"])
    ap.add_argument("--input", help="divisor document, serialized model or build report ('-' for stdin)")
    ap.add_argument("--eps", type=float, default=None, help="product truncation tolerance (default 1e-12)")
    ap.add_argument("--seed", type=int, default=0, help="seed for verification sampling")
    ap.add_argument("--point", help='JSON list of [re, im] pairs, e.g. \'[["1/2","0"],[0.25,0.1]]\'')
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
