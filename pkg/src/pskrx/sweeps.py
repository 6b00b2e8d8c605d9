"""Sweep engine: evaluates error-rate / mutual-information curves over an
alpha^2 grid for configured receivers and benchmark bounds, with optional
Monte Carlo companion rows.

Output rows are (alpha_sq, curve_id, value, provenance, ci95), sorted by
(alpha_sq, curve_id); numbers are printed with 12 significant digits.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import bounds as bounds_mod
from . import feedforward as ff
from . import infotheory as it
from .detection import DetectorModel
from .simulate import pe_sigma, run_mc
from .static_receivers import (
    StaticReceiver3,
    StaticReceiver4,
    channel_matrix_4psk,
    decision_channel_3psk,
    error_rate_3psk,
    error_rate_4psk,
    optimize_static,
)

__all__ = [
    "ConfigError",
    "SweepConfig",
    "SweepRow",
    "run_sweep",
    "rows_to_csv",
    "rows_to_json",
    "config_from_dict",
]

_VALID_METRICS = ("error_rate", "mutual_info")
_VALID_BOUNDS = ("helstrom", "heterodyne", "bondurant_asymptote", "usd")
_VALID_FORMATS = ("csv", "json")


class ConfigError(ValueError):
    def __init__(self, fld: str, msg: str):
        super().__init__(f"config field {fld!r}: {msg}")
        self.field = fld


@dataclass(frozen=True)
class SweepRow:
    alpha_sq: float
    curve_id: str
    value: float
    provenance: str        # "analytic" | "monte-carlo"
    ci95: float | None     # None for analytic rows

    def sort_key(self):
        return (self.alpha_sq, self.curve_id, self.provenance)


@dataclass
class SweepConfig:
    metric: str
    M: int
    alpha_sq_grid: list[float]
    receivers: list[dict] = field(default_factory=list)
    bounds: list[str] = field(default_factory=list)
    detector: DetectorModel = field(default_factory=DetectorModel)
    mc: dict | None = None
    output_format: str = "csv"

    def validate(self):
        if self.metric not in _VALID_METRICS:
            raise ConfigError("metric", f"must be one of {_VALID_METRICS}, got {self.metric!r}")
        if self.M not in (3, 4):
            raise ConfigError("M", f"must be 3 or 4, got {self.M}")
        grid = list(self.alpha_sq_grid)
        if not grid:
            raise ConfigError("alpha_sq_grid", "must be non-empty")
        if any(a < 0 for a in grid):
            raise ConfigError("alpha_sq_grid", "values must be >= 0")
        if any(b - a <= 0 for a, b in zip(grid, grid[1:])):
            raise ConfigError("alpha_sq_grid", "must be strictly increasing")
        for b in self.bounds:
            if b not in _VALID_BOUNDS:
                raise ConfigError("bounds", f"unknown bound {b!r}")
            if b == "usd" and self.metric == "error_rate":
                raise ConfigError(
                    "bounds", "usd is an information benchmark; not valid for error_rate"
                )
            if b == "bondurant_asymptote" and (self.metric != "error_rate" or self.M != 4):
                raise ConfigError(
                    "bounds", "bondurant_asymptote applies to 4PSK error_rate sweeps only"
                )
        if self.mc is not None:
            if "trials" not in self.mc or int(self.mc["trials"]) < 1:
                raise ConfigError("mc.trials", "must be a positive integer")
            if "seed" not in self.mc:
                raise ConfigError("mc.seed", "must be given for reproducibility")
        if self.output_format not in _VALID_FORMATS:
            raise ConfigError("output_format", f"must be one of {_VALID_FORMATS}")


def config_from_dict(data: dict) -> SweepConfig:
    det = data.get("detector", {})
    try:
        detector = DetectorModel(float(det.get("eta", 1.0)), float(det.get("nu", 0.0)))
    except ValueError as exc:
        raise ConfigError("detector", str(exc)) from exc
    cfg = SweepConfig(
        metric=data.get("metric", "error_rate"),
        M=int(data.get("M", 3)),
        alpha_sq_grid=[float(x) for x in data.get("alpha_sq_grid", [])],
        receivers=list(data.get("receivers", [])),
        bounds=list(data.get("bounds", [])),
        detector=detector,
        mc=data.get("mc"),
        output_format=data.get("output_format", "csv"),
    )
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# curve construction
# ---------------------------------------------------------------------------

class _Curve:
    """One receiver curve: analytic value plus optional MC instantiation."""

    def __init__(self, curve_id, M, value_fn, mc_fn=None):
        self.curve_id = curve_id
        self.M = M
        self.value_fn = value_fn          # alpha -> float
        self.mc_fn = mc_fn                # alpha -> (receiver, det) | None


def _receiver_detector(spec: dict, default: DetectorModel) -> DetectorModel:
    det = spec.get("detector")
    if det is None:
        return default
    return DetectorModel(float(det.get("eta", 1.0)), float(det.get("nu", 0.0)))


def _channel_for(receiver, alpha, det):
    if isinstance(receiver, StaticReceiver3):
        return decision_channel_3psk(alpha, receiver, det)
    if isinstance(receiver, StaticReceiver4):
        return channel_matrix_4psk(alpha, receiver, det)
    return ff.channel_matrix_ff(alpha, receiver)


def build_curve(spec: dict, metric: str, M: int, default_det: DetectorModel) -> _Curve:
    kind = spec.get("kind")
    det = _receiver_detector(spec, default_det)
    label = spec.get("label")

    def make(curve_id, value_fn, mc_fn=None):
        return _Curve(label or curve_id, M, value_fn, mc_fn)

    if kind == "static3":
        if M != 3:
            raise ConfigError("receivers", "static3 requires M=3")
        rx = StaticReceiver3(
            float(spec.get("R", 0.5)),
            float(spec.get("disp_scale_a", 1.0)),
            float(spec.get("disp_scale_b", 1.0)),
        )
        if metric == "error_rate":
            fn = lambda a: error_rate_3psk(a, rx, det)
        else:
            fn = lambda a: it.mutual_information(
                it.uniform_priors(3), decision_channel_3psk(a, rx, det)
            )
        return make(f"3psk-static-R{rx.R:g}", fn, lambda a: (rx, det))

    if kind == "static4":
        if M != 4:
            raise ConfigError("receivers", "static4 requires M=4")
        rx = StaticReceiver4(
            float(spec.get("R1", 2.0 / 3.0)),
            float(spec.get("R2", 0.5)),
            tuple(spec.get("disp_scales", (1.0, 1.0, 1.0))),
        )
        if metric == "error_rate":
            fn = lambda a: error_rate_4psk(a, rx, det)
        else:
            fn = lambda a: it.mutual_information(
                it.uniform_priors(4), channel_matrix_4psk(a, rx, det)
            )
        return make(f"4psk-static-R{rx.R1:g}-{rx.R2:g}", fn, lambda a: (rx, det))

    if kind in ("static3_optimized", "static4_optimized"):
        mm = 3 if kind == "static3_optimized" else 4
        if M != mm:
            raise ConfigError("receivers", f"{kind} requires M={mm}")
        opt_disp = bool(spec.get("optimize_displacements", False))

        def opt(a):
            return optimize_static(a, mm, det, optimize_displacements=opt_disp)

        if metric == "error_rate":
            fn = lambda a: opt(a).pe
        else:
            fn = lambda a: it.mutual_information(
                it.uniform_priors(mm), _channel_for(opt(a).receiver, a, det)
            )
        suffix = "optRD" if opt_disp else "optR"
        return make(f"{mm}psk-static-{suffix}", fn, lambda a: (opt(a).receiver, det))

    if kind == "feedforward":
        mm = int(spec.get("M", M))
        if mm != M:
            raise ConfigError("receivers", f"feedforward M={mm} does not match sweep M={M}")
        N = int(spec.get("N", 10))
        policy = spec.get("policy", "fixed_order")
        order = spec.get("nulling_order")
        fspec = ff.FeedforwardSpec(
            M=mm, N=N, policy=policy,
            nulling_order=tuple(order) if order else None,
            detector=det,
        )

        if metric == "error_rate":
            if policy == "fixed_order" and fspec.nulling_order == (0, 1, 2) and mm == 3:
                fn = lambda a: ff.error_rate_3psk_ff(a, fspec)
            elif policy == "fixed_order" and fspec.nulling_order == (0, 2, 1, 3) and mm == 4:
                fn = lambda a: ff.error_rate_4psk_ff(a, fspec)
            elif policy == "map_posterior":
                fn = lambda a: ff.error_rate_4psk_map(a, N)
            elif policy == "optimized_displacement":
                fn = lambda a: ff.error_rate_3psk_ff_optdisp(a, N, det.eta)
            else:
                fn = lambda a: ff.error_rate_ff(a, fspec)
        else:
            fn = lambda a: it.mutual_information(
                it.uniform_priors(mm), ff.channel_matrix_ff(a, fspec)
            )
        tag = {"fixed_order": "ff", "map_posterior": "ffmap", "optimized_displacement": "ffod"}[policy]
        return make(f"{mm}psk-{tag}-N{N}", fn, lambda a: (fspec, det))

    if kind == "feedforward_asymptotic":
        if metric != "error_rate":
            raise ConfigError("receivers", "feedforward_asymptotic is an error-rate curve")
        if M == 3:
            fn = lambda a: ff.error_rate_3psk_ff_asymptotic(a, det.eta)
        else:
            fn = lambda a: ff.error_rate_4psk_ff_asymptotic(a, det.eta)
        return make(f"{M}psk-ff-Ninf", fn, None)

    raise ConfigError("receivers", f"unknown receiver kind {kind!r}")


def _bound_value(name: str, metric: str, alpha: float, M: int) -> float:
    if metric == "error_rate":
        if name == "helstrom":
            return bounds_mod.helstrom_psk(alpha, M)
        if name == "heterodyne":
            return bounds_mod.heterodyne_error_rate(alpha, M)
        if name == "bondurant_asymptote":
            return bounds_mod.bondurant_asymptote(alpha)
    else:
        if name == "helstrom":
            return it.mutual_information(it.uniform_priors(M), it.helstrom_channel(alpha, M))
        if name == "heterodyne":
            return it.heterodyne_mutual_information(alpha, M)
        if name == "usd":
            return it.usd_mutual_information(alpha, M)
    raise ConfigError("bounds", f"bound {name!r} has no {metric} value")


def run_sweep(config: SweepConfig, workers: int = 1) -> list[SweepRow]:
    config.validate()
    curves = [
        build_curve(spec, config.metric, config.M, config.detector)
        for spec in config.receivers
    ]
    rows: list[SweepRow] = []
    for a2 in config.alpha_sq_grid:
        alpha = math.sqrt(a2)
        for curve in curves:
            rows.append(
                SweepRow(a2, curve.curve_id, float(curve.value_fn(alpha)), "analytic", None)
            )
            if config.mc is not None and curve.mc_fn is not None:
                receiver, det = curve.mc_fn(alpha)
                res = run_mc(
                    receiver,
                    alpha,
                    int(config.mc["trials"]),
                    int(config.mc["seed"]),
                    det=det,
                    workers=workers,
                )
                if config.metric == "error_rate":
                    value = res.pe
                    ci = 1.96 * pe_sigma(res.empirical_channel, res.trials_per_symbol)
                else:
                    value = it.mutual_information(
                        it.uniform_priors(res.empirical_channel.shape[0]),
                        res.empirical_channel,
                    )
                    ci = None
                rows.append(SweepRow(a2, curve.curve_id, float(value), "monte-carlo", ci))
        for b in config.bounds:
            rows.append(
                SweepRow(a2, f"bound-{b}", _bound_value(b, config.metric, alpha, config.M),
                         "analytic", None)
            )
    rows.sort(key=SweepRow.sort_key)
    return rows


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


def rows_to_csv(rows: list[SweepRow]) -> str:
    lines = ["alpha_sq,curve_id,value,provenance,ci95"]
    for r in rows:
        lines.append(
            f"{_fmt(r.alpha_sq)},{r.curve_id},{_fmt(r.value)},{r.provenance},{_fmt(r.ci95)}"
        )
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[SweepRow]) -> str:
    payload = [
        {
            "alpha_sq": r.alpha_sq,
            "curve_id": r.curve_id,
            "value": r.value,
            "provenance": r.provenance,
            "ci95": r.ci95,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2) + "\n"
