"""Command-line front end.

Every subcommand writes one report: JSON by default, CSV for the sweep
commands.  JSON reports have the fixed key order
``command, parameters, results, checks, warnings, wall_time_s``; floats are
printed with 17 significant digits and complex numbers as
``{"re": ..., "im": ...}``.

Exit status: 0 when all checks pass, 1 when a check fails or a computation
does not converge, 2 for usage errors.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConditioningError, DomainError, HermiteCSError

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2

FAMILY_ALIASES = {
    "monomial1d": "Monomial1D", "monomial2d": "Monomial2D",
    "h1d": "HolHermiteH1D", "k1d": "HolHermiteK1D", "h2d": "HolHermiteH2D", "k2d": "HolHermiteK2D",
    "psi1d": "OscillatorPsi1D", "psi2d": "OscillatorPsi2D",
    "szego": "SzegoDisk", "bergman": "BergmanDisk", "factorial": "FactorialRatio",
}
KERNEL_ALIASES = {
    "bargmann1d": "Bargmann1D", "bargmann2d": "Bargmann2D", "vanem1d": "VanEM1D",
    "vanem2d": "VanEM2D", "szego": "Szego", "bergman": "Bergman", "3f2": "FactorialRatio3F2",
}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# report serialization


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return "%.17g" % x


def to_json(obj, indent: int = 2, level: int = 0) -> str:
    """Deterministic JSON text with 17-digit floats and complex objects."""
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json({"re": float(obj.real), "im": float(obj.imag)}, indent, level)
    if isinstance(obj, str):
        import json
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        return to_json(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        items = [pad + to_json(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class Report:
    command: str
    parameters: dict
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    wall_time_s: float | None = None
    table: list | None = None  # rows for CSV output

    def check(self, name: str, value: float, tolerance: float, passed: bool | None = None) -> bool:
        ok = bool(value <= tolerance) if passed is None else bool(passed)
        self.checks.append({"name": name, "value": value, "tolerance": tolerance, "pass": ok})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> str:
        return to_json({"command": self.command, "parameters": self.parameters, "results": self.results,
                        "checks": self.checks, "warnings": self.warnings,
                        "wall_time_s": self.wall_time_s}) + "\n"

    def to_csv(self) -> str:
        if not self.table:
            raise UsageError(f"{self.command} has no tabular output; use --format json")
        buf = io.StringIO()
        cols = list(self.table[0].keys())
        buf.write(",".join(cols) + "\n")
        for row in self.table:
            buf.write(",".join(_csv_cell(row[c]) for c in cols) + "\n")
        return buf.getvalue()


def _csv_cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return "%.17g" % float(v)
    return str(v)


# --------------------------------------------------------------------------
# argument parsing helpers


def parse_complex(text) -> complex:
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def parse_list(text, conv=float) -> list:
    if isinstance(text, (list, tuple)):
        return [conv(v) for v in text]
    parts = [p for p in str(text).split(",") if p.strip()]
    try:
        return [conv(p) for p in parts]
    except (ValueError, UsageError):
        raise UsageError(f"cannot parse list {text!r}") from None


def read_config(path: str) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for i, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{i}: expected key = value")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


# option name -> (type converter, default, help)
_OPTS = {
    "family": (str, None, "basis family (monomial1d, k1d, h1d, psi1d, szego, ...)"),
    "spec": (str, None, "kernel (bargmann1d, bargmann2d, vanem1d, vanem2d, szego, bergman, 3f2)"),
    "kind": (str, None, "transform kernel (A1, B1, C1, C1hat, A2, B2, C2, C2hat)"),
    "pair": (str, "a1b1", "composition pair (a1b1 or a2b2)"),
    "alpha": (float, None, "squeezing parameter in (0, 1)"),
    "a": (float, 1.0, "oscillator scale a"),
    "b": (float, 1.0, "oscillator scale b"),
    "index": (str, "0", "basis index, or m,n for two-variable families"),
    "z": (parse_complex, None, "point"),
    "z2": (parse_complex, None, "second coordinate for two-variable objects"),
    "w": (parse_complex, None, "second kernel argument"),
    "w2": (parse_complex, None, "second coordinate of the second argument"),
    "z1": (parse_complex, None, "first-mode point"),
    "x": (str, None, "comma-separated X-slot arguments"),
    "y": (str, None, "comma-separated Y-slot arguments"),
    "xi": (parse_complex, None, "squeeze parameter xi"),
    "n": (int, None, "truncation / number of functions per mode"),
    "order": (int, None, "quadrature order per axis"),
    "target_order": (int, None, "quadrature order on the target side"),
    "arity": (int, 1, "number of modes (1 or 2)"),
    "pad": (int, None, "extra states for the exact squeeze exponential"),
    "middle_factor": (str, "minus", "Zassenhaus middle factor sign (minus or plus)"),
    "reverse": (str, "false", "apply the adjoint transform (true/false)"),
    "normalize": (str, "false", "normalize the state (true/false)"),
    "alphas": (str, None, "comma-separated alpha values"),
    "sequence": (str, None, "comma-separated sequence k_n^{-1}"),
    "factorial": (int, None, "use k_n^{-1} = n! for n < this length"),
    "target": (str, "c1hat", "limit-scan target (c1hat, c2hat, k1d)"),
    "rank_tol": (float, 1e-10, "relative singular-value threshold"),
    "tol": (float, None, "check tolerance"),
    "cauchy_tol": (float, None, "divergence-detector threshold"),
}

_COMMANDS = {
    "eval-basis": (["family", "alpha", "a", "b", "index", "z", "z2"], "evaluate one basis function"),
    "kernel": (["spec", "alpha", "z", "z2", "w", "w2"], "evaluate a closed-form kernel"),
    "zaremba-compare": (["spec", "alpha", "z", "z2", "w", "w2", "n", "tol", "cauchy_tol"],
                        "Zaremba partial sum against the closed form"),
    "verify-orthogonality": (["family", "alpha", "a", "b", "n", "order", "tol"],
                             "quadrature Gram matrix against the identity"),
    "transform-check": (["kind", "alpha", "a", "b", "n", "order", "target_order", "reverse", "tol"],
                        "transform matrix unitarity"),
    "compose-check": (["pair", "alpha", "a", "b", "x", "y", "order", "tol"],
                      "A o B composition against the C kernel"),
    "coherent-state": (["z", "z2", "alpha", "n", "normalize"], "coherent-state coefficients"),
    "eigen-residual": (["z", "z2", "alpha", "n", "tol"], "annihilation eigen-residuals"),
    "squeeze-compare": (["xi", "n", "arity", "pad", "middle_factor", "tol"],
                        "exact squeeze operator against the Zassenhaus product"),
    "resolution-check": (["alpha", "n", "order", "arity", "tol"], "resolution of the identity residual"),
    "schmidt": (["z1", "z2", "alpha", "n", "rank_tol"], "Schmidt analysis of a two-mode coherent state"),
    "entropy-sweep": (["z1", "z2", "alphas", "n", "rank_tol"], "entanglement entropy versus alpha"),
    "logconvexity": (["sequence", "factorial"], "log-convexity diagnostic"),
    "limit-scan": (["target", "alphas", "a", "b", "tol"], "alpha -> 1 limit distances"),
}
_CSV_DEFAULT = {"entropy-sweep", "limit-scan"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hermite-cs", description="Holomorphic Hermite coherent-state toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    for name, (opts, helptext) in _COMMANDS.items():
        sp = sub.add_parser(name, help=helptext, description=helptext)
        for o in opts:
            _, default, h = _OPTS[o]
            sp.add_argument("--" + o.replace("_", "-"), dest=o, default=None,
                            help=h + ("" if default is None else f" (default {default})"))
        sp.add_argument("--config", default=None, help="key = value file; flags take precedence")
        sp.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        sp.add_argument("--format", choices=["json", "csv"], default=None,
                        help="report format (default json; csv for sweeps)")
        sp.add_argument("--no-timing", action="store_true",
                        help="omit wall time so identical runs give identical bytes")
    return p


def resolve(command: str, ns: argparse.Namespace) -> dict:
    """Merge flags over config-file values over defaults, then convert."""
    opts, _ = _COMMANDS[command]
    cfg = read_config(ns.config) if ns.config else {}
    unknown = set(cfg) - set(opts)
    if unknown:
        raise UsageError(f"config keys not used by {command}: {', '.join(sorted(unknown))}")
    params = {}
    for o in opts:
        conv, default, _ = _OPTS[o]
        raw = getattr(ns, o)
        if raw is None:
            raw = cfg.get(o)
        if raw is None:
            params[o] = default
            continue
        try:
            params[o] = conv(raw)
        except (ValueError, TypeError):
            raise UsageError(f"invalid value for --{o.replace('_', '-')}: {raw!r}") from None
    return params


def _need(params: dict, *keys: str) -> None:
    missing = [k for k in keys if params.get(k) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))


def _flag(text) -> bool:
    s = str(text).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected true/false, got {text!r}")


def _family(name: str):
    from .hermite import Family
    key = FAMILY_ALIASES.get(name.lower(), name)
    try:
        return Family(key)
    except ValueError:
        raise UsageError(f"unknown family {name!r}; known: {', '.join(FAMILY_ALIASES)}") from None


def _kernel_kind(name: str) -> str:
    key = KERNEL_ALIASES.get(name.lower(), name)
    if key not in KERNEL_ALIASES.values():
        raise UsageError(f"unknown kernel {name!r}; known: {', '.join(KERNEL_ALIASES)}")
    return key


def _basis_spec(params: dict):
    from .hermite import BasisSpec, Family
    fam = _family(params["family"])
    needs_alpha = fam in (Family.HOL_HERMITE_H_1D, Family.HOL_HERMITE_K_1D,
                          Family.HOL_HERMITE_H_2D, Family.HOL_HERMITE_K_2D)
    if needs_alpha:
        _need(params, "alpha")
    return BasisSpec(fam, params["alpha"] if needs_alpha else None, params.get("a") or 1.0,
                     params.get("b") or 1.0)


def _kernel_spec(params: dict):
    from .rkhs import KernelSpec
    kind = _kernel_kind(params["spec"])
    alpha = params.get("alpha") if kind in ("VanEM1D", "VanEM2D") else None
    if kind in ("VanEM1D", "VanEM2D"):
        _need(params, "alpha")
    return KernelSpec(kind, alpha)


def _kernel_args(spec, params: dict):
    _need(params, "z", "w")
    if spec.arity == 2:
        _need(params, "z2", "w2")
        return (params["z"], params["z2"]), (params["w"], params["w2"])
    return params["z"], params["w"]


# --------------------------------------------------------------------------
# commands


def cmd_eval_basis(params: dict, rep: Report) -> None:
    from .hermite import basis_eval
    _need(params, "family", "z")
    spec = _basis_spec(params)
    idx = parse_list(params["index"], int)
    if spec.arity == 2:
        _need(params, "z2")
        if len(idx) != 2:
            raise UsageError("two-variable families need --index m,n")
        val = basis_eval(spec, tuple(idx), (params["z"], params["z2"]))
    else:
        if len(idx) != 1:
            raise UsageError("one-variable families take a single index")
        val = basis_eval(spec, idx[0], params["z"])
    rep.results["value"] = val


def cmd_kernel(params: dict, rep: Report) -> None:
    from .rkhs import closed_kernel
    _need(params, "spec")
    spec = _kernel_spec(params)
    x, y = _kernel_args(spec, params)
    rep.results["value"] = closed_kernel(spec, x, y)


def cmd_zaremba_compare(params: dict, rep: Report) -> None:
    from .rkhs import CAUCHY_TOL, basis_for_kernel, closed_kernel, zaremba_kernel
    _need(params, "spec")
    spec = _kernel_spec(params)
    x, y = _kernel_args(spec, params)
    N = params["n"] or 80
    ct = params["cauchy_tol"] or CAUCHY_TOL
    series = zaremba_kernel(basis_for_kernel(spec), x, y, N, cauchy_tol=ct)
    closed = closed_kernel(spec, x, y)
    relative = spec.kind.value == "FactorialRatio3F2"
    err = abs(series - closed) / (abs(closed) if relative else 1.0)
    tol = params["tol"] if params["tol"] is not None else (1e-8 if relative else 1e-9)
    rep.results.update(series=series, closed=closed, error=err, relative=relative, N=N)
    rep.check("zaremba_vs_closed", err, tol)


def cmd_verify_orthogonality(params: dict, rep: Report) -> None:
    from .quadrature import twomode_norm, gram_matrix, vanem_norm
    _need(params, "family")
    spec = _basis_spec(params)
    if not spec.is_gaussian:
        raise UsageError(f"{spec.family.value} has no Gaussian orthogonality measure")
    N = params["n"] or (10 if spec.arity == 1 else 4)
    G = gram_matrix(spec, N=N, order=params["order"])
    off = G - np.diag(np.diag(G))
    tol = params["tol"] if params["tol"] is not None else (1e-8 if spec.arity == 1 else 1e-6)
    rep.results.update(N=N, max_offdiag=float(np.abs(off).max()),
                       max_diag_dev=float(np.abs(np.diag(G) - 1).max()))
    rep.check("identity_maxnorm", float(np.abs(G - np.eye(G.shape[0])).max()), tol)
    if spec.family.value == "HolHermiteH1D":
        rep.results["raw_norm_n0"] = vanem_norm(spec.alpha, 0)
    elif spec.family.value == "HolHermiteH2D":
        rep.results["raw_norm_00"] = twomode_norm(spec.alpha, 0, 0)


def cmd_transform_check(params: dict, rep: Report) -> None:
    from .bargmann import TransformSpec, slot_families, transform_matrix, unitarity_defect
    _need(params, "kind")
    kind = params["kind"]
    needs_alpha = kind.upper() not in ("A1", "A2")
    if needs_alpha:
        _need(params, "alpha")
    try:
        spec = TransformSpec(kind if kind.endswith("hat") else kind.upper(),
                             params["alpha"] if needs_alpha else None, params["a"], params["b"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fx, fy = slot_families(spec)
    src, tgt = (fx, fy) if _flag(params["reverse"]) else (fy, fx)
    N = params["n"] or (8 if spec.arity == 1 else 4)
    M = transform_matrix(spec, src, tgt, N, params["order"], params["target_order"])
    d = unitarity_defect(M)
    rep.results.update(source=src.family.value, target=tgt.family.value, N=N,
                       identity_distance=float(np.abs(M - np.eye(M.shape[0])).max()), unitarity_defect=d)
    rep.check("unitarity", d, params["tol"] if params["tol"] is not None else 1e-5)


def cmd_compose_check(params: dict, rep: Report) -> None:
    from .bargmann import TransformSpec, compose_kernels, sb_kernel
    _need(params, "alpha", "x", "y")
    pair = params["pair"].lower()
    if pair not in ("a1b1", "a2b2"):
        raise UsageError("--pair must be a1b1 or a2b2")
    two = pair == "a2b2"
    k1 = TransformSpec("A2" if two else "A1", None, params["a"], params["b"])
    k2 = TransformSpec("B2" if two else "B1", params["alpha"])
    kc = TransformSpec("C2" if two else "C1", params["alpha"], params["a"], params["b"])
    x = parse_list(params["x"], parse_complex)
    y = parse_list(params["y"], parse_complex)
    args = tuple(x) + tuple(y)
    comp = compose_kernels(k1, k2, args, params["order"])
    closed = sb_kernel(kc, args)
    err = abs(comp - closed)
    rep.results.update(composition=comp, closed=closed, error=err)
    rep.check("composition_vs_closed", err, params["tol"] if params["tol"] is not None else (1e-6 if two else 1e-8))


def cmd_coherent_state(params: dict, rep: Report) -> None:
    from .states import coherent_state
    _need(params, "z", "alpha")
    N = params["n"] or 20
    z = params["z"] if params["z2"] is None else (params["z"], params["z2"])
    c = coherent_state(z, params["alpha"], N, normalize=_flag(params["normalize"]))
    rep.results.update(coefficients=[complex(v) for v in c.coeffs.ravel()], shape=list(c.coeffs.shape),
                       tail=c.tail)


def cmd_eigen_residual(params: dict, rep: Report) -> None:
    from .states import annihilation_residual, bogoliubov_ops, coherent_state
    _need(params, "z", "alpha")
    if params["z2"] is None:
        N = params["n"] or 40
        c = coherent_state(params["z"], params["alpha"], N)
        r = annihilation_residual(c, bogoliubov_ops(params["alpha"], N)["Bminus"], params["z"])
        rep.results.update(N=N, residual=r, tail=c.tail)
        rep.check("Bminus_eigen", r, params["tol"] if params["tol"] is not None else 1e-8)
        return
    N = params["n"] or 24
    z1, z2 = params["z"], params["z2"]
    c = coherent_state((z1, z2), params["alpha"], N)
    B = bogoliubov_ops(params["alpha"], N, 2)
    tol = params["tol"] if params["tol"] is not None else 1e-7
    r1 = annihilation_residual(c, B["B1minus"], z1)
    r2 = annihilation_residual(c, B["B2minus"], z2)
    r12 = annihilation_residual(c, B["B1minus"] @ B["B2minus"], z1 * z2, exclude=3)
    rep.results.update(N=N, residual_1=r1, residual_2=r2, residual_product=r12, tail=c.tail)
    rep.check("B1minus_eigen", r1, tol)
    rep.check("B2minus_eigen", r2, tol)
    rep.check("product_eigen", r12, tol)


def cmd_squeeze_compare(params: dict, rep: Report) -> None:
    from .hermite import zeta_of_xi
    from .states import interior_defect, squeeze_column_defect, squeeze_matrix
    _need(params, "xi")
    xi, arity = params["xi"], params["arity"]
    if arity not in (1, 2):
        raise UsageError("--arity must be 1 or 2")
    N = params["n"] or (30 if arity == 1 else 12)
    mf = params["middle_factor"]
    if mf not in ("minus", "plus"):
        raise UsageError("--middle-factor must be minus or plus")
    tol = params["tol"] if params["tol"] is not None else 1e-8
    E = squeeze_matrix(xi, N, arity, "exact", params["pad"]).entries
    Z = squeeze_matrix(xi, N, arity, "zassenhaus", middle_factor=mf).entries
    U = squeeze_matrix(xi, N, arity, "exact", pad=0).entries
    excl = 10 if arity == 1 else N // 3
    block = N - excl
    d_ez = interior_defect(E, Z, N, arity, excl)
    d_u = interior_defect(U.conj().T @ U, np.eye(U.shape[0]), N, arity, excl)
    d_col = squeeze_column_defect(xi, N, arity, block)
    zeta = zeta_of_xi(xi)
    d_zeta = abs(abs(zeta) - math.tanh(abs(xi)))
    rep.results.update(N=N, block=block, zeta=zeta, exact_vs_zassenhaus=d_ez, unitarity_pad0=d_u,
                       closed_form_columns=d_col, zeta_map_error=d_zeta)
    rep.check("exact_vs_zassenhaus", d_ez, tol)
    rep.check("unitarity", d_u, 1e-8)
    rep.check("closed_form_columns", d_col, 1e-7)
    rep.check("zeta_map", d_zeta, 1e-15)


def cmd_resolution_check(params: dict, rep: Report) -> None:
    from .states import resolution_identity_residual
    _need(params, "alpha")
    arity = params["arity"]
    if arity not in (1, 2):
        raise UsageError("--arity must be 1 or 2")
    N = params["n"] or (8 if arity == 1 else 4)
    r = resolution_identity_residual(params["alpha"], N, params["order"], arity)
    rep.results.update(N=N, residual=r)
    rep.check("resolution_identity", r, params["tol"] if params["tol"] is not None else (1e-6 if arity == 1 else 1e-5))


def cmd_schmidt(params: dict, rep: Report) -> None:
    from .entanglement import schmidt
    from .states import coherent_state
    _need(params, "z1", "z2", "alpha")
    N = params["n"] or 12
    c = coherent_state((params["z1"], params["z2"]), params["alpha"], N)
    r = schmidt(c, params["rank_tol"])
    rep.results.update(N=N, singular_values=r.singular_values, entropy=r.entropy,
                       entropy_bits=r.entropy_bits, effective_rank=r.effective_rank, tail=c.tail)


def cmd_entropy_sweep(params: dict, rep: Report) -> None:
    from .entanglement import alpha_entropy_sweep
    _need(params, "z1", "z2", "alphas")
    alphas = parse_list(params["alphas"])
    N = params["n"] or 12
    pts = alpha_entropy_sweep(params["z1"], params["z2"], alphas, N, params["rank_tol"])
    rep.table = [{"alpha": p.alpha, "entropy_nats": p.entropy, "entropy_bits": p.entropy / math.log(2),
                  "effective_rank": p.effective_rank, "tail": p.tail} for p in pts]
    rep.results["points"] = rep.table
    for p in pts:
        rep.warnings.extend(f"alpha={p.alpha}: {m}" for m in p.warnings)
    ent = [p.entropy for p in pts]
    last_smallest = ent[-1] == min(ent)
    rep.check("final_entropy_smallest", ent[-1], min(ent), last_smallest)


def cmd_logconvexity(params: dict, rep: Report) -> None:
    from .rkhs import log_convexity_check
    if params["sequence"] is not None:
        seq = parse_list(params["sequence"])
    elif params["factorial"] is not None:
        seq = [float(math.factorial(n)) for n in range(params["factorial"])]
    else:
        raise UsageError("give --sequence or --factorial")
    r = log_convexity_check(seq)
    rep.results.update(checked=r.checked, violations=[list(v) for v in r.violations], note=r.note)
    rep.check("log_convexity", float(len(r.violations)), 0.0, r.passed)


def cmd_limit_scan(params: dict, rep: Report) -> None:
    from .bargmann import limit_distance
    from .hermite import bargmann_limit_distance
    target = params["target"].lower()
    alphas = parse_list(params["alphas"] or "0.9,0.99,0.999")
    if target == "c1hat":
        d = [limit_distance(1, a, params["a"]) for a in alphas]
    elif target == "c2hat":
        d = [limit_distance(2, a, params["a"], params["b"]) for a in alphas]
    elif target == "k1d":
        d = [bargmann_limit_distance(a) for a in alphas]
    else:
        raise UsageError("--target must be c1hat, c2hat or k1d")
    rep.table = [{"alpha": a, "distance": v} for a, v in zip(alphas, d)]
    rep.results["points"] = rep.table
    dec = all(b < a for a, b in zip(d, d[1:]))
    rep.check("strictly_decreasing", float(dec), 1.0, dec)
    rep.check("final_distance", d[-1], params["tol"] if params["tol"] is not None else 1e-2)


_HANDLERS = {
    "eval-basis": cmd_eval_basis, "kernel": cmd_kernel, "zaremba-compare": cmd_zaremba_compare,
    "verify-orthogonality": cmd_verify_orthogonality, "transform-check": cmd_transform_check,
    "compose-check": cmd_compose_check, "coherent-state": cmd_coherent_state,
    "eigen-residual": cmd_eigen_residual, "squeeze-compare": cmd_squeeze_compare,
    "resolution-check": cmd_resolution_check, "schmidt": cmd_schmidt,
    "entropy-sweep": cmd_entropy_sweep, "logconvexity": cmd_logconvexity, "limit-scan": cmd_limit_scan,
}


def run(command: str, params: dict, timing: bool = True) -> Report:
    """Execute one subcommand on already-resolved parameters."""
    if command not in _HANDLERS:
        raise UsageError(f"unknown command {command!r}; known: {', '.join(_HANDLERS)}")
    rep = Report(command, dict(params))
    t0 = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        _HANDLERS[command](params, rep)
    rep.warnings.extend(f"{w.category.__name__}: {w.message}" for w in caught)
    rep.wall_time_s = time.perf_counter() - t0 if timing else None
    return rep


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if ns.command is None:
        parser.print_usage(sys.stderr)
        print("error: a command is required; known: " + ", ".join(_COMMANDS), file=sys.stderr)
        return EXIT_USAGE
    try:
        params = resolve(ns.command, ns)
        rep = run(ns.command, params, timing=not ns.no_timing)
        fmt = ns.format or ("csv" if ns.command in _CSV_DEFAULT else "json")
        text = rep.to_csv() if fmt == "csv" else rep.to_json()
    except (UsageError, DomainError, ConditioningError) as exc:
        print(f"hermite-cs {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HermiteCSError as exc:
        print(f"hermite-cs {ns.command}: computation failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except ValueError as exc:
        print(f"hermite-cs {ns.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.output:
        Path(ns.output).write_text(text)
    else:
        sys.stdout.write(text)
    if fmt == "csv":
        for c in rep.checks:
            if not c["pass"]:
                print(f"check failed: {c['name']} = {c['value']!r} (tolerance {c['tolerance']!r})",
                      file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_CHECK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
