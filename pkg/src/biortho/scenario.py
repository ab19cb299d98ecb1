"""Scenario documents: parsing, check dispatch and report rendering.

A scenario is a JSON object with a ``kind`` (``model``, ``immersion`` or
``arithmetic``), kind-specific inputs, and a non-empty ``checks`` list.
Reports are sorted by check name, so output does not depend on the order
checks were listed or executed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import biorthogonal as bio
from . import invariants as inv
from . import submanifolds as sub
from .curvature import random_curvature_tensor, recompose, singer_thorpe_decompose
from .errors import ParseError, UnknownCheck
from .models import CONSTRAINTS, ModelSpace, model, normalize_to_constraint
from .report import FAIL, CheckReport

DEFAULT_TOL = 1e-9
ORACLE_TOL = 1e-6
KINDS = ("model", "immersion", "arithmetic")


@dataclass
class Scenario:
    kind: str
    checks: list[str]
    tol: float = DEFAULT_TOL
    samples: int = bio.DEFAULT_SAMPLES
    seed: int = 0
    name: str = ""
    model_name: str | None = None
    model_params: dict[str, Any] = field(default_factory=dict)
    chi: float | None = None
    tau: float | None = None
    beta_sq: float | None = None
    integral: float | None = None
    half_conformally_flat: bool = False
    simplicial_volume: float | None = None
    points: list[sub.ImmersionPoint] = field(default_factory=list)
    ambient: str = "sphere"
    pi1_finite: bool = False
    p: int = 2
    e: int | None = None
    j: int | None = None


# --- parsing ----------------------------------------------------------------


def _number(doc: dict, key: str, default=None, *, integer: bool = False, positive: bool = False):
    if key not in doc or doc[key] is None:
        return default
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"field '{key}' must be a number, got {value!r}")
    if integer and int(value) != value:
        raise ParseError(f"field '{key}' must be an integer, got {value!r}")
    if not math.isfinite(value):
        raise ParseError(f"field '{key}' must be finite")
    if positive and value <= 0:
        raise ParseError(f"field '{key}' must be positive, got {value!r}")
    return int(value) if integer else float(value)


def _flag(doc: dict, key: str, default: bool = False) -> bool:
    value = doc.get(key, default)
    if not isinstance(value, bool):
        raise ParseError(f"field '{key}' must be true or false, got {value!r}")
    return value


def _parse_point(raw: Any, k: int, normalize: bool) -> sub.ImmersionPoint:
    where = f"points[{k}]"
    if not isinstance(raw, dict):
        raise ParseError(f"field '{where}' must be an object")
    if "fixture" in raw:
        name = raw["fixture"]
        if name not in sub.FIXTURES:
            raise ParseError(f"field '{where}.fixture': unknown fixture {name!r}")
        return sub.FIXTURES[name]()
    if "c" not in raw or "A" not in raw:
        raise ParseError(f"field '{where}' needs 'c' and 'A' (or 'fixture')")
    c = _number(raw, "c")
    try:
        mats = [np.array(a, dtype=float) for a in raw["A"]]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"field '{where}.A' is not a list of 4x4 matrices: {exc}") from None
    if not mats or any(a.shape != (4, 4) for a in mats):
        raise ParseError(f"field '{where}.A' must be a non-empty list of 4x4 matrices")
    if "m" in raw and _number(raw, "m", integer=True) != len(mats):
        raise ParseError(f"field '{where}.m' = {raw['m']} but {len(mats)} matrices were given")
    label = str(raw.get("label", ""))
    try:
        if normalize:
            return sub.normalize_frame(c, mats, label)
        return sub.ImmersionPoint(c, tuple(mats), label)
    except ValueError as exc:
        raise ParseError(f"field '{where}': {exc}") from None


def parse_scenario(doc: Any) -> Scenario:
    if not isinstance(doc, dict):
        raise ParseError("scenario must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"field 'kind' must be one of {list(KINDS)}, got {kind!r}")
    checks = doc.get("checks")
    if not isinstance(checks, list) or not checks or not all(isinstance(c, str) for c in checks):
        raise ParseError("field 'checks' must be a non-empty list of strings")
    known = CHECKS[kind]
    for c in checks:
        if c not in known:
            raise UnknownCheck(f"field 'checks': unknown check {c!r} for kind {kind!r}; known: {sorted(known)}")
    sc = Scenario(
        kind=kind,
        checks=list(dict.fromkeys(checks)),
        tol=_number(doc, "tol", DEFAULT_TOL, positive=True),
        samples=_number(doc, "samples", bio.DEFAULT_SAMPLES, integer=True, positive=True),
        seed=_number(doc, "seed", 0, integer=True),
        name=str(doc.get("name", "")),
        chi=_number(doc, "chi"),
        tau=_number(doc, "tau"),
        beta_sq=_number(doc, "beta_sq"),
        integral=_number(doc, "integral"),
        half_conformally_flat=_flag(doc, "half_conformally_flat"),
        simplicial_volume=_number(doc, "simplicial_volume"),
    )
    if not 0 <= sc.seed < 2**64:
        raise ParseError("field 'seed' must be a 64-bit unsigned integer")
    if kind == "model":
        entry = doc.get("model")
        if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
            raise ParseError("field 'model' must be an object with a 'name'")
        params = entry.get("params", {})
        if not isinstance(params, dict):
            raise ParseError("field 'model.params' must be an object")
        sc.model_name, sc.model_params = entry["name"], dict(params)
    elif kind == "immersion":
        raw = doc.get("points")
        if not isinstance(raw, list) or not raw:
            raise ParseError("field 'points' must be a non-empty list")
        normalize = _flag(doc, "normalize", True)
        sc.points = [_parse_point(r, k, normalize) for k, r in enumerate(raw)]
        sc.ambient = doc.get("ambient", "sphere")
        if sc.ambient not in sub.AMBIENT_CURVATURE:
            raise ParseError(f"field 'ambient' must be one of {sorted(sub.AMBIENT_CURVATURE)}")
        sc.pi1_finite = _flag(doc, "pi1_finite")
        sc.p = _number(doc, "p", 2, integer=True)
    else:
        sc.e = _number(doc, "e", integer=True)
        sc.j = _number(doc, "j", integer=True)
    return sc


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    return parse_scenario(doc)


# --- model checks -------------------------------------------------------------


def _model(sc: Scenario) -> ModelSpace:
    ms = model(sc.model_name, **sc.model_params)
    if sc.chi is not None:
        if ms.is_quotient:
            return ms.with_chi(sc.chi)
        if sc.chi != ms.chi:
            raise ParseError(f"field 'chi': {ms.name} is closed with chi = {ms.chi:g}")
    return ms


def decomposition_reports(ms: ModelSpace, tol: float) -> list[CheckReport]:
    b = singer_thorpe_decompose(ms.ct)
    err = float(np.max(np.abs(recompose(b).operator - ms.ct.operator)))
    out = [
        CheckReport("decomposition.round_trip", err, 1e-12, "<=", 0.0),
        CheckReport("decomposition.ric0_routes", b.ric0_mismatch, 1e-12, "<=", 0.0),
    ]
    for tag, w, eig in (("plus", b.wplus, b.eigplus), ("minus", b.wminus, b.eigminus)):
        wsq = float(np.sum(w * w))
        out.append(CheckReport(f"decomposition.estcos.{tag}", 6.0 * eig[0] ** 2, wsq, ">=", 1e-12,
                               data={"eigenvalues": list(eig)}))
        out.append(CheckReport(f"decomposition.eqT.{tag}", 2.0 / 3.0 * wsq, eig[0] ** 2, ">=", 1e-12))
    return out


def _k1perp_report(ms: ModelSpace) -> list[CheckReport]:
    m = bio.modified_scalars(ms.ct, k1_sec=ms.k1_sec)
    return [
        CheckReport(
            "k1perp",
            m.k1perp,
            m.k1_sec,
            ">=",
            1e-12,
            notes="minimum biorthogonal curvature is at least the minimum sectional curvature",
            data={"s": m.s, "ms_bio": m.ms_bio, "ms_mixed": m.ms_mixed, "ms_mixed_x12": m.ms_mixed_x12},
        )
    ]


def _oracle_report(ms: ModelSpace, samples: int, seed: int) -> list[CheckReport]:
    cf = bio.k1perp_closed_form(ms.ct)
    bf = bio.k1perp_bruteforce(ms.ct, samples=samples, seed=seed)
    return [CheckReport("oracle", abs(bf - cf), ORACLE_TOL, "<", 0.0, data={"closed_form": cf, "bruteforce": bf})]


def _certificate_reports(ms: ModelSpace) -> list[CheckReport]:
    out = []
    for con in CONSTRAINTS:
        vol = inv.minimal_volume_certificate(ms, con)
        t = normalize_to_constraint(ms, con)[0] if vol > 0 else 0.0
        out.append(CheckReport(f"certificate.{con}", vol, 0.0, ">=", 0.0, data={"t": t, "vacuous": vol == 0.0}))
    return out


def _beta(sc: Scenario, ms: ModelSpace | None = None) -> float | None:
    if sc.beta_sq is not None:
        return sc.beta_sq
    if ms is not None and ms.kahler and ms.name == "ch2":
        return 2.0 * ms.chi + 3.0 * ms.tau
    return None


MODEL_CHECKS: dict[str, Callable[[Scenario, ModelSpace], list[CheckReport]]] = {
    "decomposition": lambda sc, ms: decomposition_reports(ms, sc.tol),
    "gauss_bonnet": lambda sc, ms: inv.gauss_bonnet_check(ms, sc.tol),
    "hitchin_thorpe": lambda sc, ms: [inv.hitchin_thorpe(ms.chi, ms.tau, sc.simplicial_volume, sc.tol)],
    "certificates": lambda sc, ms: _certificate_reports(ms),
    "k1perp": lambda sc, ms: _k1perp_report(ms),
    "oracle": lambda sc, ms: _oracle_report(ms, sc.samples, sc.seed),
    "einstein_obstruction": lambda sc, ms: inv.einstein_obstruction(
        ms, half_conformally_flat=sc.half_conformally_flat, tol=sc.tol
    ),
    "lebrun_chain": lambda sc, ms: inv.lebrun_chain_check(ms, tol=min(sc.tol, 1e-12)),
    "monopole_bound": lambda sc, ms: [inv.monopole_bound_check(_beta(sc, ms), ms, tol=sc.tol)],
    "prop_t": lambda sc, ms: [inv.prop_t_inequality_check(ms, tau=sc.tau, tol=sc.tol)],
    "h2xh2_certificate": lambda sc, ms: [inv.h2xh2_certificate_check(ms, tol=sc.tol)],
}


# --- immersion checks -----------------------------------------------------------


def _per_point(fn):
    def run(sc: Scenario) -> list[CheckReport]:
        out = []
        for k, ip in enumerate(sc.points):
            for r in fn(sc, ip):
                out.append(_renamed(r, f"{r.name}.p{k}"))
        return out

    return run


def _renamed(r: CheckReport, name: str) -> CheckReport:
    return CheckReport(name, r.lhs, r.rhs, r.relation, r.tol, r.notes, r.data)


def _sphere_theorem(sc: Scenario) -> list[CheckReport]:
    v = sub.sphere_theorem_verdict(sc.points, sc.ambient, sc.pi1_finite, samples=sc.samples, seed=sc.seed)
    return [
        CheckReport(
            "sphere_theorem",
            v.worst_margin,
            0.0,
            "info",
            0.0,
            notes="; ".join(v.notes),
            data={"verdict": v.verdict, "labels": list(v.labels), "max_alpha_sq": v.max_alpha_sq},
        )
    ]


def _gauss_scal(sc: Scenario, ip: sub.ImmersionPoint) -> list[CheckReport]:
    ct = sub.induced_curvature(ip)
    ric = ct.ricci()
    return [
        CheckReport("gauss_scal", float(np.trace(ric)), sub.scalar_from_gauss(ip), "==", 1e-10),
        CheckReport("gauss_ricci", float(np.max(np.abs(np.diag(ric) - sub.ricci_from_gauss(ip)))), 0.0, "==", 1e-10),
    ]


def _ricci_pairs(sc: Scenario, ip: sub.ImmersionPoint) -> list[CheckReport]:
    out = []
    for i in range(1, 5):
        for j in range(i + 1, 5):
            out.extend(sub.ricci_pair_bound_check(ip, i, j, sc.tol))
    return out


IMMERSION_CHECKS: dict[str, Callable[[Scenario], list[CheckReport]]] = {
    "sphere_theorem": _sphere_theorem,
    "k1perp_lower_bound": _per_point(lambda sc, ip: [sub.k1perp_lower_bound_check(ip, sc.tol)]),
    "ricci_pair": _per_point(_ricci_pairs),
    "asperti_costa": _per_point(lambda sc, ip: [sub.asperti_costa_condition(ip, sc.p)]),
    "lawson_simons": _per_point(lambda sc, ip: [sub.lawson_simons_condition(ip)]),
    "gauss_scal": _per_point(_gauss_scal),
}


# --- arithmetic checks ----------------------------------------------------------


def _need(sc: Scenario, *keys: str) -> None:
    for k in keys:
        if getattr(sc, k) is None:
            raise ParseError(f"field '{k}' is required for the requested checks")


def _arith_monopole(sc: Scenario) -> list[CheckReport]:
    if sc.integral is None:
        raise ParseError("field 'integral' is required for monopole_bound in arithmetic scenarios")
    return [inv.monopole_bound_check(sc.beta_sq, integral=sc.integral, tol=sc.tol)]


def _arith_ht(sc: Scenario) -> list[CheckReport]:
    _need(sc, "chi", "tau")
    return [inv.hitchin_thorpe(sc.chi, sc.tau, sc.simplicial_volume, sc.tol)]


def _arith_cs(sc: Scenario) -> list[CheckReport]:
    _need(sc, "e", "j")
    return [inv.connected_sum_einstein_obstruction(sc.e, sc.j)]


ARITHMETIC_CHECKS: dict[str, Callable[[Scenario], list[CheckReport]]] = {
    "hitchin_thorpe": _arith_ht,
    "connected_sum": _arith_cs,
    "monopole_bound": _arith_monopole,
}

CHECKS = {"model": MODEL_CHECKS, "immersion": IMMERSION_CHECKS, "arithmetic": ARITHMETIC_CHECKS}


def run_scenario(sc: Scenario) -> list[CheckReport]:
    reports: list[CheckReport] = []
    if sc.kind == "model":
        ms = _model(sc)
        for c in sc.checks:
            reports.extend(MODEL_CHECKS[c](sc, ms))
    elif sc.kind == "immersion":
        for c in sc.checks:
            reports.extend(IMMERSION_CHECKS[c](sc))
    else:
        for c in sc.checks:
            reports.extend(ARITHMETIC_CHECKS[c](sc))
    return sorted(reports, key=lambda r: r.name)


# --- oracle campaign ----------------------------------------------------------------


def oracle_campaign(count: int, samples: int, seed: int, model_name: str | None = None) -> list[CheckReport]:
    """Closed form against brute force on random tensors (or one catalog model)."""
    if count < 1:
        raise ParseError("count must be >= 1")
    if model_name is not None:
        tensors = [model(model_name).ct] * count
    else:
        tensors = [random_curvature_tensor(np.random.SeedSequence([seed, k, 0])) for k in range(count)]
    devs = []
    for k, ct in enumerate(tensors):
        cf = bio.k1perp_closed_form(ct)
        bf = bio.k1perp_bruteforce(ct, samples=samples, seed=[seed, k, 1])
        devs.append(abs(bf - cf))
    return [
        CheckReport(
            "oracle.max_deviation",
            max(devs),
            ORACLE_TOL,
            "<",
            0.0,
            data={"count": count, "samples": samples, "model": model_name, "deviations": devs},
        )
    ]


# --- rendering ----------------------------------------------------------------------


def _plain(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def exit_code(reports: list[CheckReport]) -> int:
    return 1 if any(r.verdict == FAIL for r in reports) else 0


def machine_report(reports: list[CheckReport], meta: dict[str, Any]) -> str:
    counts = {"pass": 0, "fail": 0, "equality": 0}
    for r in reports:
        counts[r.verdict] += 1
    doc = {
        "meta": _plain(meta),
        "reports": [_plain(r.to_dict()) for r in reports],
        "summary": counts,
        "exit_code": exit_code(reports),
    }
    # repr-based float output is the shortest string that round-trips exactly
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=True) + "\n"


def table_report(reports: list[CheckReport]) -> str:
    rows = [("check", "lhs", "rel", "rhs", "margin", "verdict")]
    for r in reports:
        rows.append((r.name, f"{r.lhs:.15g}", r.relation, f"{r.rhs:.15g}", f"{r.margin:.3e}", r.verdict))
    widths = [max(len(row[k]) for row in rows) for k in range(6)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    for r in reports:
        extra = []
        if "verdict" in r.data:
            extra.append(f"verdict={r.data['verdict']}")
        if "ratio" in r.data and r.data["ratio"] is not None:
            extra.append(f"ratio={r.data['ratio']:.15g}")
        if r.notes:
            extra.append(r.notes)
        if extra:
            lines.append(f"  {r.name}: " + "; ".join(extra))
    return "\n".join(lines) + "\n"
