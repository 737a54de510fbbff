"""Report assembly and deterministic serialization (JSON and CSV).

Floats are written with 17 significant digits and dictionary keys keep
insertion order, so identical inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import io
import math
from typing import Any, Iterable, Sequence

import numpy as np

from .bethe import (
    MorseProblem,
    check_bounds,
    gradient_flow,
    in_alcove,
    k_bounds,
    k_bounds_as_printed,
)
from .hamiltonian import check_self_adjoint
from .lattice import Partition
from .spectrum import (
    DEGENERACY_GAP,
    EigenSystem,
    compare_spectra,
    completeness,
    max_offdiag,
    min_gap,
    oracle_spectrum,
    orthogonality_report,
    poincare_value,
)

__all__ = ["dumps", "spectrum_report", "verify_report", "csv_text", "fmt"]


def fmt(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(float(obj))
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, Partition):
        obj = list(obj.parts)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with fixed float formatting; ends with a newline."""
    return _encode(obj, indent, 0) + "\n"


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def spectrum_report(es: EigenSystem, oracle: np.ndarray | None = None) -> dict:
    """Per-``kappa`` Bethe data plus the global comparisons."""
    if oracle is None:
        oracle = oracle_spectrum(es.operator)
    energies = es.energies
    smin, smax = completeness(es.eigenvectors, es.weight)
    gram = orthogonality_report(es)
    return {
        "params": es.params.as_dict(),
        "n": es.cfg.n,
        "m": es.cfg.m,
        "solutions": [
            {
                "kappa": s.kappa,
                "xi": s.xi,
                "E": s.energy,
                "residuals": {
                    "eigen": float(r),
                    "grad_inf": s.grad_norm,
                    "bae": s.bae_residual,
                },
            }
            for s, r in zip(es.solutions, es.residuals)
        ],
        "spectrum_comparison": {
            "bethe": np.sort(energies),
            "oracle": oracle,
            "max_abs_diff": compare_spectra(energies, oracle),
            "min_gap": min_gap(energies),
            "degenerate": bool(min_gap(energies) < DEGENERACY_GAP),
        },
        "gram_max_offdiag": max_offdiag(gram, energies),
        "condition_number": smax / smin,
    }


def verify_report(es: EigenSystem, tol: float, flow_kappa: Partition | None = None) -> dict:
    """Run every numerical certificate for one configuration.

    ``report["passed"]`` is true only when all checks pass.
    """
    cfg, params = es.cfg, es.params
    op = es.operator
    n = cfg.n
    k_minus, k_plus = k_bounds(params, cfg)
    oracle = oracle_spectrum(op)
    rep = spectrum_report(es, oracle)

    sa = check_self_adjoint(op)
    sa_scale = float(np.max(np.abs(op.matrix))) or 1.0
    poincare = poincare_value(params, cfg.m)
    origin = es.eigenvectors[:, -1]
    smin, smax = completeness(es.eigenvectors, es.weight)

    checks = {
        "self_adjoint": sa <= 1e-12 * sa_scale,
        "newton_converged": all(s.grad_norm <= tol for s in es.solutions),
        "alcove": all(in_alcove(s.xi) for s in es.solutions),
        "bounds": all(check_bounds(s.xi, MorseProblem(cfg, params, s.kappa)) for s in es.solutions),
        "bae_residual": all(s.bae_residual <= 1e-12 for s in es.solutions),
        "hessian_floor": all(s.hessian_min_eig >= 2 * (n + k_minus) * (1 - 1e-12) for s in es.solutions),
        "distinct_solutions": _pairwise_distinct([s.xi for s in es.solutions]),
        "eigen_residual": float(np.max(es.residuals)) <= 1e-9,
        "spectrum": rep["spectrum_comparison"]["max_abs_diff"] <= 1e-9,
        "completeness": smin > 1e-8 * smax,
        "orthogonality": rep["gram_max_offdiag"] <= 1e-9,
        "poincare": bool(np.all(np.abs(origin - poincare) <= 1e-11 * abs(poincare))),
    }
    extra: dict[str, Any] = {
        "self_adjoint_residual": sa,
        "k_bounds": {"K_minus": k_minus, "K_plus": k_plus},
        "k_bounds_as_printed": dict(zip(("K_minus", "K_plus"), k_bounds_as_printed(params, cfg))),
        "poincare_value": poincare,
    }
    if flow_kappa is not None:
        prob = MorseProblem(cfg, params, flow_kappa)
        sol = next(s for s in es.solutions if s.kappa == flow_kappa)
        flow = gradient_flow(prob)
        err = float(np.max(np.abs(flow.final - sol.xi)))
        checks["gradient_flow"] = err <= 1e-8
        extra["gradient_flow"] = {"kappa": flow_kappa, "endpoint_error": err}
    rep.update(extra)
    rep["checks"] = checks
    rep["passed"] = all(checks.values())
    return rep


def _pairwise_distinct(points, tol: float = 1e-8) -> bool:
    pts = np.array(points)
    if len(pts) < 2:
        return True
    d = np.max(np.abs(pts[:, None, :] - pts[None, :, :]), axis=2)
    np.fill_diagonal(d, np.inf)
    return bool(np.min(d) > tol)
