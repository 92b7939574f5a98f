"""Command-line frontend: ``jtmaps {classify,verify,identities,gen,apply}``.

File formats (UTF-8, one JSON document per file):

MatrixJSON
    ``{"re": [[a, b], [c, d]], "im": [[e, f], [g, h]]}``, row-major.

FormSpecFile
    ``{"kind": "jte", "form": "b1"|"b2"|"b3", "unitary": MatrixJSON, "params": {...}}``
    ``{"kind": "seq", "form": "zero"|"d1"|"d2"|"d3"|"d4"|"rank1", "unitary": MatrixJSON, "params": {...}}``
    ``{"kind": "compose", "of": [FormSpec, ...]}``

    Parameters: b1 ``c``; b2 ``d``; b3 ``c1, c2``; d1 ``c``; d3 ``d``; d4
    ``c1, c2``; rank1 ``c``.  ``zero`` takes no unitary.  A composition
    ``{"of": [f1, f2, ..., fn]}`` is the map ``f1 o f2 o ... o fn`` (``fn`` is
    applied first); all parts must share a kind.

Exit codes: 0 success, 1 usage / I-O / schema / domain error, 2 violation of
a mathematical contract (not a Jordan triple or sequential endomorphism, a
failed identity).  Floats are written with 17 significant digits.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import canonical, effects
from .canonical import B1, B2, B3
from .classify import classify_jte, explain
from .effects import D1, D2, D3, D4, RankOneImage, SeqZero, check_seq, classify_seq
from .errors import ContractViolation, DomainError, InvalidArgument, JTMapsError
from .linearize import check_jte, check_linearity, extract_f
from .mat2 import Tolerances, as_effect, as_pd
from .proofcheck import run_identities
from .sampling import random_unitary, rng

JTE_TAGS = ("b1", "b2", "b3")
SEQ_TAGS = ("zero", "d1", "d2", "d3", "d4", "rank1")


class SchemaError(InvalidArgument):
    pass


# -- JSON ----------------------------------------------------------------------

def dumps(obj, indent=2, _level=0):
    """JSON text with floats at 17 significant digits and sorted keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        text = format(x, ".17g")
        if "e" not in text and "." not in text:
            text += ".0"
        return text
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(obj[k], indent, _level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_to_json(m):
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def matrix_from_json(obj):
    if not isinstance(obj, dict) or "re" not in obj:
        raise SchemaError("matrix must be an object with 're' (and optionally 'im') arrays")
    try:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj.get("im", [[0, 0], [0, 0]]), dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"matrix entries must be numbers: {exc}") from exc
    if re.shape != (2, 2) or im.shape != (2, 2):
        raise SchemaError("matrix must be exactly 2x2")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise SchemaError("matrix entries must be finite")
    return re + 1j * im


# -- form specs ----------------------------------------------------------------------

class Composite:
    """Pointwise composition ``parts[0] o parts[1] o ...`` of forms of one kind."""

    def __init__(self, kind, parts):
        self.kind = kind
        self.parts = list(parts)

    def __call__(self, a):
        for part in reversed(self.parts):
            a = part(a)
        return a


def _param(params, name):
    if name not in params:
        raise SchemaError(f"missing parameter '{name}'")
    try:
        x = float(params[name])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"parameter '{name}' must be a number") from exc
    if not math.isfinite(x):
        raise SchemaError(f"parameter '{name}' must be finite")
    return x


def form_from_spec(obj):
    """Build a form (or a :class:`Composite`) from a parsed FormSpecFile."""
    if not isinstance(obj, dict):
        raise SchemaError("form spec must be a JSON object")
    kind = obj.get("kind")
    if kind == "compose":
        parts = obj.get("of")
        if not isinstance(parts, list) or not parts:
            raise SchemaError("'compose' needs a non-empty 'of' list")
        built = [form_from_spec(p) for p in parts]
        kinds = {spec_kind(b) for b in built}
        if len(kinds) != 1:
            raise SchemaError("all parts of a composition must have the same kind")
        return Composite(kinds.pop(), built)
    tag = obj.get("form")
    params = obj.get("params", {})
    if not isinstance(params, dict):
        raise SchemaError("'params' must be an object")
    if kind == "jte":
        if tag not in JTE_TAGS:
            raise SchemaError(f"unknown jte form {tag!r}")
    elif kind == "seq":
        if tag not in SEQ_TAGS:
            raise SchemaError(f"unknown seq form {tag!r}")
        if tag == "zero":
            return SeqZero()
    else:
        raise SchemaError(f"unknown kind {kind!r}")
    if "unitary" not in obj:
        raise SchemaError("missing 'unitary'")
    u = matrix_from_json(obj["unitary"])
    try:
        if tag == "b1":
            return B1(u, _param(params, "c"))
        if tag == "b2":
            return B2(u, _param(params, "d"))
        if tag == "b3":
            return B3(u, _param(params, "c1"), _param(params, "c2"))
        if tag == "d1":
            return D1(u, _param(params, "c"))
        if tag == "d2":
            return D2(u)
        if tag == "d3":
            return D3(u, _param(params, "d"))
        if tag == "d4":
            return D4(u, _param(params, "c1"), _param(params, "c2"))
        return RankOneImage(u, _param(params, "c"))
    except (DomainError, InvalidArgument) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc


def spec_kind(form):
    if isinstance(form, Composite):
        return form.kind
    if isinstance(form, canonical.JTEForm):
        return "jte"
    if isinstance(form, effects.SeqForm):
        return "seq"
    raise TypeError(f"unknown form {form!r}")


def spec_from_form(form):
    """Inverse of :func:`form_from_spec`."""
    if isinstance(form, Composite):
        return {"kind": "compose", "of": [spec_from_form(p) for p in form.parts]}
    table = [
        (B1, "jte", "b1", "U", ("c",)), (B2, "jte", "b2", "V", ("d",)),
        (B3, "jte", "b3", "W", ("c1", "c2")), (D1, "seq", "d1", "U", ("c",)),
        (D2, "seq", "d2", "V", ()), (D3, "seq", "d3", "V", ("d",)),
        (D4, "seq", "d4", "W", ("c1", "c2")), (RankOneImage, "seq", "rank1", "W", ("c",)),
    ]
    if isinstance(form, SeqZero):
        return {"kind": "seq", "form": "zero", "params": {}}
    for cls, kind, tag, uname, pnames in table:
        if isinstance(form, cls):
            return {"kind": kind, "form": tag, "unitary": matrix_to_json(getattr(form, uname)),
                    "params": {p: getattr(form, p) for p in pnames}}
    raise TypeError(f"unknown form {form!r}")


def generate_spec(tag, seed):
    """Random FormSpecFile for a tag; JTE exponents in [-2, 2], seq exponents respect their sign constraints."""
    gen = rng(seed)
    u = random_unitary(gen)
    if tag == "b1":
        form = B1(u, gen.uniform(-2, 2))
    elif tag == "b2":
        form = B2(u, gen.uniform(-2, 2))
    elif tag == "b3":
        form = B3(u, *gen.uniform(-2, 2, 2)).normalized()
    elif tag == "zero":
        form = SeqZero()
    elif tag == "d1":
        form = D1(u, gen.uniform(0, 2))
    elif tag == "d2":
        form = D2(u)
    elif tag == "d3":
        form = D3(u, gen.uniform(1.05, 3))
    elif tag == "d4":
        form = D4(u, *gen.uniform(0, 2, 2)).normalized()
    elif tag == "rank1":
        form = RankOneImage(u, gen.uniform(0, 2))
    else:
        raise InvalidArgument(f"unknown form tag {tag!r}")
    return spec_from_form(form)


# -- reports ---------------------------------------------------------------------

def _diagnostics_dict(d):
    out = {
        "branch": d.branch, "v": d.v, "M": np.asarray(d.M).tolist(), "p": d.p,
        "detM_sign": d.detM_sign, "residual": d.residual,
        "consistency_residual": d.consistency_residual, "claim1_residual": d.claim1_residual,
        "isometry_residual": d.isometry_residual, "jte_residual": d.jte_residual,
        "linearity_residual": d.linearity_residual,
    }
    if d.f_identity_eigenvalues:
        out["f_identity_eigenvalues"] = list(d.f_identity_eigenvalues)
    return out


def _seq_text(res):
    spec = spec_from_form(res.form)
    params = ", ".join(f"{k} = {v:.9g}" for k, v in spec["params"].items())
    lines = [f"{spec['form'].upper()}" + (f": {params}" if params else "")]
    if res.beyond_stated_list:
        lines.append("  note: non-unital form, beyond the unital list (d1)-(d4)")
    lines.append(f"  branch = {res.branch}")
    lines.append(f"  sequential law residual = {res.seq_residual:.3g}")
    if res.jte_diagnostics is not None:
        lines.append(f"  linearity residual = {res.jte_diagnostics.linearity_residual:.3g}")
    if isinstance(res.form, D3):
        lines.append(f"  boundary (singular -> 0) residual = {res.boundary_residual:.3g}")
    lines.append(f"  verification residual = {res.residual:.3g}")
    return "\n".join(lines)


def _form_text(form):
    spec = spec_from_form(form)
    lines = [explain_head(spec)]
    if "unitary" in spec:
        u = np.asarray(spec["unitary"]["re"]) + 1j * np.asarray(spec["unitary"]["im"])
        lines.append(f"  unitary = {np.array2string(u, precision=9)}")
    return "\n".join(lines)


def explain_head(spec):
    params = ", ".join(f"{k} = {v:.9g}" for k, v in spec["params"].items())
    return spec["form"].upper() + (f": {params}" if params else "")


# -- commands --------------------------------------------------------------------

def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidArgument(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON: {exc}") from exc


def _black_box(form, corrupt=False):
    if not corrupt:
        return form
    return lambda a: (lambda y: y @ y)(np.asarray(form(a)))


def cmd_classify(args, tol, out):
    form = form_from_spec(_load_json(args.input))
    kind = spec_kind(form)
    vectorized = True
    if kind == "jte":
        res = classify_jte(form, tol, trials=args.trials, seed=args.seed, vectorized=vectorized)
        if args.json:
            payload = {"kind": "jte", "form": spec_from_form(res.form),
                       "diagnostics": _diagnostics_dict(res.diagnostics)}
            out.write(dumps(payload) + "\n")
        else:
            out.write(_form_text(res.form) + "\n" + "\n".join(explain(res).splitlines()[1:]) + "\n")
        return 0
    res = classify_seq(form, tol, trials=args.trials, seed=args.seed, vectorized=vectorized)
    if args.json:
        payload = {"kind": "seq", "form": spec_from_form(res.form), "branch": res.branch,
                   "seq_residual": res.seq_residual, "residual": res.residual,
                   "beyond_stated_list": res.beyond_stated_list}
        if res.jte_diagnostics is not None:
            payload["diagnostics"] = _diagnostics_dict(res.jte_diagnostics)
        out.write(dumps(payload) + "\n")
    else:
        text = _seq_text(res)
        if "unitary" in spec_from_form(res.form):
            text += "\n" + _form_text(res.form).splitlines()[1]
        out.write(text + "\n")
    return 0


def cmd_verify(args, tol, out):
    if args.trials < 1:
        raise InvalidArgument("--trials must be >= 1")
    form = form_from_spec(_load_json(args.input))
    phi = _black_box(form, args.corrupt)
    if spec_kind(form) == "jte":
        residuals = {"jordan_triple": check_jte(phi, args.trials, args.seed, tol, vectorized=True)}
        try:
            F = extract_f(phi, tol, vectorized=True)
            residuals["log_linearity"] = check_linearity(phi, F, args.trials, args.seed, tol, vectorized=True)
        except JTMapsError:
            residuals["log_linearity"] = float("inf")
    else:
        residuals = {"sequential": check_seq(phi, args.trials, args.seed, tol, vectorized=True)}
    worst = max(residuals.values())
    ok = worst <= tol.tol_class
    if args.json:
        out.write(dumps({"residuals": residuals, "tol_class": tol.tol_class, "passed": ok}) + "\n")
    else:
        for name, value in residuals.items():
            out.write(f"{name}: {value:.6g}\n")
        out.write(("PASS" if ok else "FAIL") + f" (tol_class = {tol.tol_class:g})\n")
    return 0 if ok else 2


def cmd_identities(args, tol, out):
    if args.trials < 1:
        raise InvalidArgument("--trials must be >= 1")
    report = run_identities(args.trials, args.seed)
    if args.json:
        out.write(dumps(report) + "\n")
    else:
        for name, check in report["checks"].items():
            status = "PASS" if check["passed"] else "FAIL"
            if name == "gh_det":
                band = "inside" if check["in_quoted_band"] else "outside"
                out.write(f"{status} gh_det = {check['value']:.9f} (golden {check['golden']:.9f}; "
                          f"{band} the quoted band (-0.6, -0.4))\n")
            elif name == "limits":
                out.write(f"{status} limits: arccosh(cosh^2 t)/t at t=10,20,40 = "
                          + ", ".join(f"{v:.6f}" for v in check["limit_one"])
                          + f"; at t=1000 = {check['limit_one_at_1000']:.6f}\n")
            else:
                out.write(f"{status} {name}: residual {check['residual']:.3g}\n")
        out.write(("ALL PASS" if report["passed"] else "FAILURES") + f" ({report['trials']} trials)\n")
    return 0 if report["passed"] else 2


def cmd_gen(args, tol, out):
    out.write(dumps(generate_spec(args.form, args.seed)) + "\n")
    return 0


def cmd_apply(args, tol, out):
    form = form_from_spec(_load_json(args.input))
    a = matrix_from_json(_load_json(args.matrix))
    if spec_kind(form) == "jte":
        a = as_pd(a, tol)
        y = form(a)
    else:
        a = as_effect(a, tol)
        y = form(a)
    out.write(dumps(matrix_to_json(y)) + "\n")
    return 0


# -- entry point -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _env_float(name):
    value = os.environ.get(name)
    return float(value) if value not in (None, "") else None


def tolerances_from(args):
    tc = args.tol_class if args.tol_class is not None else _env_float("JT_TOL_CLASS")
    te = args.tol_eq if args.tol_eq is not None else _env_float("JT_TOL_EQ")
    kw = {}
    if tc is not None:
        kw["tol_class"] = tc
    if te is not None:
        kw["tol_eq"] = te
    return Tolerances(**kw)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-class", type=float, default=None, help="classifier threshold (env JT_TOL_CLASS)")
    common.add_argument("--tol-eq", type=float, default=None, help="equality tolerance (env JT_TOL_EQ)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="jtmaps", description="Jordan triple and sequential endomorphisms of 2x2 matrices")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="recover the canonical form of a spec")
    c.add_argument("input")
    c.add_argument("--trials", type=int, default=50)

    v = sub.add_parser("verify", parents=[common], help="check the morphism laws of a spec")
    v.add_argument("input")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--corrupt", action="store_true", help="square every output (negative control)")

    i = sub.add_parser("identities", parents=[common], help="run the identity suite")
    i.add_argument("--trials", type=int, default=1000)

    g = sub.add_parser("gen", parents=[common], help="emit a random form spec")
    g.add_argument("--form", required=True)

    a = sub.add_parser("apply", parents=[common], help="apply a spec to a matrix")
    a.add_argument("--input", required=True)
    a.add_argument("--matrix", required=True)
    return p


COMMANDS = {"classify": cmd_classify, "verify": cmd_verify, "identities": cmd_identities,
            "gen": cmd_gen, "apply": cmd_apply}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        tol = tolerances_from(args)
        return COMMANDS[args.command](args, tol, out)
    except ContractViolation as exc:
        print(f"jtmaps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (JTMapsError, ValueError) as exc:
        print(f"jtmaps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
