"""Batch command line: one JSON job in, one JSON report out.

Exit codes: 0 success, 2 input error, 3 theorem-check failure, 4 numerical
non-convergence.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import jsonio as J
from .classical import (DegenerateMapError, bezout_matrix, line_image_detrep,
                        sylvester_matrix, sylvester_resultant)
from .curve import (InfeasibleError, bilinear_vanishing_check, conic, curve_bezout,
                    decomposition_identity_holds, detrep_through_points,
                    homogeneous_through_points, image_detrep, image_residuals,
                    principal_subspace, random_detrep, sample_curve_points)
from .roots import ConvergenceError
from .vessel import (BasepointAtSpectrumError, ConventionError,
                     cayley_hamilton_check, discriminant, discriminant_image_check,
                     fiber_isomorphism_check, in_fiber_points, one_dim_fixture,
                     out_fiber_points, prescribed_curve_vessel, reduce_transformed,
                     transform_vessel, vessel_check, vessel_fixture)

EXIT_OK, EXIT_INPUT, EXIT_THEOREM, EXIT_CONVERGENCE = 0, 2, 3, 4


class TheoremFailure(Exception):
    def __init__(self, report: dict, msg: str):
        super().__init__(msg)
        self.report = report


def _poly(data, key, nvars=None):
    return J.decode_poly(J._field(data, key, "$"), nvars, f"$.{key}")


def _int(data, key, default=None):
    v = data.get(key, default) if isinstance(data, dict) else default
    if v is None:
        raise J.SchemaError(f"$.{key}", "missing integer field")
    if not isinstance(v, int) or isinstance(v, bool):
        raise J.SchemaError(f"$.{key}", "expected an integer")
    return v


def _residual_summary(values):
    return {"max": float(max(values, default=0.0)), "count": len(values)}


# ---------------------------------------------------------------------------
# classical

def cmd_bezout(data, args):
    p, q = _poly(data, "p", 1), _poly(data, "q", 1)
    n = data.get("n")
    B = bezout_matrix(p, q, n)
    return {"matrix": J.encode_matrix(B.entries), "kernel_dim": B.kernel_dim,
            "det": J.encode_scalar(B.det()), "n": B.n}


def cmd_resultant(data, args):
    p, q = _poly(data, "p", 1), _poly(data, "q", 1)
    n = data.get("n")
    res = sylvester_resultant(p, q, n)
    B = bezout_matrix(p, q, n)
    dB = B.det()
    out = {"sylvester": J.encode_matrix(sylvester_matrix(p, q, n)),
           "resultant": J.encode_scalar(res), "bezout_det": J.encode_scalar(dB),
           "abs_equal": abs(res) == abs(dB)}
    if not out["abs_equal"]:
        raise TheoremFailure(out, "|det S| != |det B|")
    return out


def cmd_image_line(data, args):
    ps = [_poly(data, k, 1) for k in ("p0", "p1", "p2")]
    img = line_image_detrep(*ps, data.get("n"))
    return {"polynomial": J.encode_poly(img.polynomial),
            "b10": J.encode_matrix(img.b10.entries), "b20": J.encode_matrix(img.b20.entries),
            "b12": J.encode_matrix(img.b12.entries)}


# ---------------------------------------------------------------------------
# curve

def _detrep(data):
    return J.decode_detrep(J._field(data, "detrep", "$"), "$.detrep")


def cmd_curve_vn(data, args):
    dr = _detrep(data)
    n = _int(data, "n")
    vn = principal_subspace(dr, n)
    out = {"dim": vn.dim, "expected": vn.expected_dim, "basis": J.encode_matrix(vn.basis)}
    if vn.dim != vn.expected_dim:
        raise TheoremFailure(out, "dim V_n != n m")
    return out


def cmd_curve_bezout(data, args):
    dr = _detrep(data)
    n = _int(data, "n")
    p, q = _poly(data, "p", 3), _poly(data, "q", 3)
    gb = curve_bezout(p, q, dr, n)
    betas = (gb.beta10, gb.beta20, gb.beta12)
    out = {"beta10": J.encode_matrix(gb.beta10), "beta20": J.encode_matrix(gb.beta20),
           "beta12": J.encode_matrix(gb.beta12), "reduced": J.encode_matrix(gb.Bp),
           "kernel_dim": gb.kernel_dim,
           "identity_holds": decomposition_identity_holds(p, q, betas, n)}
    if not out["identity_holds"]:
        raise TheoremFailure(out, "decomposition identity fails")
    return out


def cmd_curve_common_zeros(data, args):
    dr = _detrep(data)
    n = _int(data, "n")
    p, q = _poly(data, "p", 3), _poly(data, "q", 3)
    gb = curve_bezout(p, q, dr, n)
    rep = bilinear_vanishing_check(p, q, dr, n, args.samples, np.random.default_rng(args.seed),
                                   tol=max(args.tol, 1e-8))
    out = {"count": gb.kernel_dim, "bilinear": {
        "pairs": rep.pairs, "skipped": rep.skipped,
        "max_identity_error": rep.max_identity_error,
        "vanishing_mismatches": rep.vanishing_mismatches, "ok": rep.ok}}
    if not rep.ok:
        raise TheoremFailure(out, "bilinear identity fails on sampled points")
    return out


def cmd_curve_image(data, args):
    dr = _detrep(data)
    n = _int(data, "n")
    ps = [_poly(data, k, 3) for k in ("p0", "p1", "p2")]
    img = image_detrep(*ps, dr, n)
    rng = np.random.default_rng(args.seed)
    pts = sample_curve_points(dr, args.samples, rng, args.tol)
    res = image_residuals(img, ps, pts)
    nbp = img.reduction.common.dim
    out = {"polynomial": J.encode_poly(img.polynomial), "degree": img.degree,
           "expected_degree": n * dr.m - nbp,
           "E0": J.encode_matrix(img.E0), "E1": J.encode_matrix(img.E1),
           "E2": J.encode_matrix(img.E2),
           "basepoints": [J.encode_point(b) for b in img.basepoints],
           "basepoints_exact": img.reduction.exact,
           "residuals": _residual_summary(res)}
    out["ok"] = out["degree"] == out["expected_degree"] and out["residuals"]["max"] < 1e-8
    if not out["ok"]:
        raise TheoremFailure(out, "image check failed")
    return out


# ---------------------------------------------------------------------------
# vessels

def _vessel(data):
    return J.decode_vessel(J._field(data, "vessel", "$"), "$.vessel")


def _rp(data):
    return J.decode_rational_pair(J._field(data, "map", "$"), "$.map")


def _check_dict(rep):
    return {"residuals": rep.residuals, "exact": rep.exact, "hermitian": rep.hermitian,
            "ok": rep.ok, "failing": rep.failing}


def cmd_vessel_check(data, args):
    rep = vessel_check(_vessel(data), args.tol)
    out = _check_dict(rep)
    if not rep.ok:
        raise TheoremFailure(out, "vessel axioms fail: " + ", ".join(rep.failing))
    return out


def cmd_vessel_discriminant(data, args):
    V = _vessel(data)
    d = discriminant(V)
    _, ch = cayley_hamilton_check(V, d)
    out = {"polynomial": J.encode_poly(d.polynomial),
           "out_polynomial": J.encode_poly(d.out_polynomial),
           "in_equals_out": d.in_equals_out, "cayley_hamilton_residual": float(ch)}
    if not d.in_equals_out or ch != 0:
        raise TheoremFailure(out, "discriminant identities fail")
    return out


def _sigma_order(data):
    order = data.get("sigma_order", "validated")
    if order not in ("validated", "printed"):
        raise J.SchemaError("$.sigma_order", "expected 'validated' or 'printed'")
    return order


def cmd_vessel_transform(data, args):
    V, rp = _vessel(data), _rp(data)
    T = transform_vessel(V, rp, _sigma_order(data), check=False)
    rep = vessel_check(T.vessel)
    out = {"vessel": J.encode_vessel(T.vessel), "check": _check_dict(rep)}
    if not rep.ok:
        raise TheoremFailure(out, "transformed vessel fails: " + ", ".join(rep.failing))
    return out


def cmd_vessel_reduce(data, args):
    V, rp = _vessel(data), _rp(data)
    T = transform_vessel(V, rp, _sigma_order(data))
    R = reduce_transformed(T, check=False)
    rep = vessel_check(R.vessel)
    out = {"vessel": J.encode_vessel(R.vessel), "check": _check_dict(rep),
           "basepoints": [J.encode_point(b) for b in R.basepoints], "exact": R.exact,
           "dim_e": R.vessel.dim_e}
    if not rep.ok:
        raise TheoremFailure(out, "reduced vessel fails: " + ", ".join(rep.failing))
    return out


def cmd_vessel_verify(data, args):
    V, rp = _vessel(data), _rp(data)
    out: dict = {}
    out["vessel"] = _check_dict(vessel_check(V))
    d = discriminant(V)
    out["in_equals_out"] = d.in_equals_out
    out["cayley_hamilton_residual"] = float(cayley_hamilton_check(V, d)[1])
    T = transform_vessel(V, rp, check=False)
    out["transformed"] = _check_dict(vessel_check(T.vessel))
    R = reduce_transformed(T, check=False)
    out["reduced"] = _check_dict(vessel_check(R.vessel))
    nbp = R.reduction.common.dim
    img = discriminant_image_check(R.vessel, rp, V, args.samples,
                                   np.random.default_rng(args.seed), nbp)
    out["image"] = {"samples": img.samples, "exact_samples": img.exact_samples,
                    "exact_failures": img.exact_failures, "max_residual": img.max_residual,
                    "degree": img.degree, "expected_degree": img.expected_degree, "ok": img.ok}
    fib = []
    for lam, e, _ in in_fiber_points(V):
        if rp.p0.evaluate(lam) != 0:
            fib.append(fiber_isomorphism_check(V, R, rp, lam, e).ok)
    for lam, e, v in out_fiber_points(V):
        if rp.p0.evaluate(lam) != 0:
            fib.append(fiber_isomorphism_check(V, R, rp, lam, e, out_vector=v).ok)
    out["fibers"] = {"checked": len(fib), "ok": all(fib)}
    verdicts = [out["vessel"]["ok"], out["in_equals_out"], out["cayley_hamilton_residual"] == 0,
                out["transformed"]["ok"], out["reduced"]["ok"], img.ok, all(fib)]
    out["ok"] = all(verdicts)
    if not out["ok"]:
        raise TheoremFailure(out, "theorem verification failed")
    return out


# ---------------------------------------------------------------------------
# fixtures

def _gen_fixture(data, args):
    kind = J._field(data, "kind", "$")
    rng = np.random.default_rng(args.seed)
    if kind == "conic":
        return {"detrep": J.encode_detrep(conic())}
    if kind == "detrep":
        m = _int(data, "m")
        field = data.get("field", "complex")
        return {"detrep": J.encode_detrep(random_detrep(m, rng, field))}
    if kind == "detrep-through-points":
        m = _int(data, "m")
        pts = [(J.decode_vector(p["x"], f"$.points[{k}].x"), J.decode_vector(p["e"], f"$.points[{k}].e"))
               for k, p in enumerate(J._field(data, "points", "$"))]
        return {"detrep": J.encode_detrep(detrep_through_points(pts, m, rng,
                                                                 data.get("field", "real")))}
    if kind == "planted-pair":
        n = _int(data, "n")
        pts = [J.decode_vector(x, f"$.points[{k}]") for k, x in enumerate(J._field(data, "points", "$"))]
        p = homogeneous_through_points(pts, n, rng)
        q = homogeneous_through_points(pts, n, rng)
        return {"p": J.encode_poly(p), "q": J.encode_poly(q), "n": n}
    if kind == "vessel-1d":
        return {"vessel": J.encode_vessel(one_dim_fixture())}
    if kind == "vessel":
        d1 = J.decode_vector(J._field(data, "diag1", "$"), "$.diag1")
        d2 = J.decode_vector(J._field(data, "diag2", "$"), "$.diag2")
        c = J.decode_vector(data.get("coupling", []), "$.coupling")
        return {"vessel": J.encode_vessel(vessel_fixture(d1, d2, c, args.seed))}
    if kind == "prescribed-vessel":
        m = _int(data, "m")
        pts = [tuple(J.decode_vector(x)) for x in J._field(data, "points", "$")]
        phis = [J.decode_vector(f) for f in J._field(data, "phis", "$")]
        bps = [(tuple(J.decode_vector(b["y"])), J.decode_vector(b["e"]))
               for b in data.get("basepoints", [])]
        return {"vessel": J.encode_vessel(prescribed_curve_vessel(pts, phis, m, bps, rng))}
    raise J.SchemaError("$.kind", f"unknown fixture kind {kind!r}")


def cmd_fixtures_gen(data, args):
    return _gen_fixture(data, args)


COMMANDS = {
    ("bezout",): cmd_bezout,
    ("resultant",): cmd_resultant,
    ("image-line",): cmd_image_line,
    ("curve", "vn"): cmd_curve_vn,
    ("curve", "bezout"): cmd_curve_bezout,
    ("curve", "common-zeros"): cmd_curve_common_zeros,
    ("curve", "image"): cmd_curve_image,
    ("vessel", "check"): cmd_vessel_check,
    ("vessel", "discriminant"): cmd_vessel_discriminant,
    ("vessel", "transform"): cmd_vessel_transform,
    ("vessel", "reduce"): cmd_vessel_reduce,
    ("vessel", "verify-theorems"): cmd_vessel_verify,
    ("fixtures", "gen"): cmd_fixtures_gen,
}


def _add_common(p):
    p.add_argument("--input", "-i", help="JSON job file (default: stdin)")
    p.add_argument("--output", "-o", help="report file (default: stdout)")
    p.add_argument("--tol", type=float, default=1e-9, help="floating tolerance")
    p.add_argument("--seed", type=int, default=0, help="seed for sampling and fixtures")
    p.add_argument("--samples", type=int, default=20, help="number of sampled curve points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvelim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    groups: dict = {}
    for key in COMMANDS:
        if len(key) == 1:
            p = sub.add_parser(key[0])
            p.set_defaults(key=key)
            _add_common(p)
        else:
            if key[0] not in groups:
                g = sub.add_parser(key[0])
                groups[key[0]] = g.add_subparsers(dest="action", required=True)
            p = groups[key[0]].add_parser(key[1])
            p.set_defaults(key=key)
            _add_common(p)
    return parser


def _load(args):
    text = open(args.input).read() if args.input else sys.stdin.read()
    return json.loads(text) if text.strip() else {}


def run(argv=None) -> tuple[int, dict]:
    """Execute one job; returns (exit code, report)."""
    args = build_parser().parse_args(argv)
    report = {"command": " ".join(args.key), "seed": args.seed, "tol": args.tol,
              "samples": args.samples}
    try:
        data = _load(args)
        report["input"] = data
        report["result"] = COMMANDS[args.key](data, args)
        report["status"] = "ok"
        code = EXIT_OK
    except json.JSONDecodeError as exc:
        report.update(status="input-error", error=f"malformed JSON at line {exc.lineno} "
                                                  f"column {exc.colno}: {exc.msg}")
        code = EXIT_INPUT
    except OSError as exc:
        report.update(status="input-error", error=str(exc))
        code = EXIT_INPUT
    except TheoremFailure as exc:
        report.update(status="theorem-failure", error=str(exc), result=exc.report)
        code = EXIT_THEOREM
    except ConventionError as exc:
        report.update(status="theorem-failure", error=str(exc))
        code = EXIT_THEOREM
    except ConvergenceError as exc:
        report.update(status="non-convergence", error=str(exc))
        code = EXIT_CONVERGENCE
    except (J.SchemaError, InfeasibleError, DegenerateMapError, BasepointAtSpectrumError,
            ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        report.update(status="input-error", error=f"{type(exc).__name__}: {exc}")
        code = EXIT_INPUT
    report["exit_code"] = code
    return code, report


def main(argv=None) -> int:
    code, report = run(argv)
    text = J.dumps(report) + "\n"
    args = build_parser().parse_args(argv)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
