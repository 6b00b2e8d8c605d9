"""Named sweep recipes pinning the parameters behind each reference curve
set, so reproducing one is a single command: ``pskrx recipe <name>``.
"""

from __future__ import annotations

import numpy as np

from .detection import DetectorModel
from .sweeps import SweepConfig

__all__ = ["RECIPES", "get_recipe"]


def _grid(stop: float, step: float = 0.25) -> list[float]:
    return [round(float(x), 6) for x in np.arange(0.0, stop + step / 2, step)]


def _eta_curves(kind: str, extra: dict, etas=(1.0, 0.9, 0.8, 0.7), nu=1e-6) -> list[dict]:
    out = []
    for eta in etas:
        spec = dict(kind=kind, **extra)
        spec["detector"] = {"eta": eta, "nu": nu}
        base = extra.get("label_base", kind)
        spec["label"] = f"{base}-eta{eta:g}"
        out.append(spec)
    return out


def _recipes() -> dict:
    r = {}

    r["3psk-noff-ideal"] = lambda: SweepConfig(
        metric="error_rate", M=3, alpha_sq_grid=_grid(14.0),
        receivers=[
            {"kind": "static3", "R": 0.5},
            {"kind": "static3_optimized"},
            {"kind": "static3_optimized", "optimize_displacements": True},
        ],
        bounds=["helstrom", "heterodyne"],
    )

    r["3psk-noff-eta"] = lambda: SweepConfig(
        metric="error_rate", M=3, alpha_sq_grid=_grid(14.0),
        receivers=_eta_curves("static3_optimized", {"label_base": "3psk-static-optR"}),
        bounds=["helstrom", "heterodyne"],
    )

    r["3psk-ff-ideal"] = lambda: SweepConfig(
        metric="error_rate", M=3, alpha_sq_grid=_grid(14.0),
        receivers=[
            {"kind": "feedforward", "M": 3, "N": n, "label": f"3psk-ff-N{n}"}
            for n in (2, 3, 5, 10)
        ] + [{"kind": "feedforward_asymptotic"}],
        bounds=["helstrom", "heterodyne"],
    )

    r["3psk-ff-imperfect"] = lambda: SweepConfig(
        metric="error_rate", M=3, alpha_sq_grid=_grid(14.0),
        receivers=[
            {"kind": "feedforward", "M": 3, "N": n, "label": f"3psk-ff-N{n}"}
            for n in (2, 3, 5, 10)
        ] + [{"kind": "static3_optimized", "label": "3psk-static-optR"}],
        bounds=["helstrom", "heterodyne"],
        detector=DetectorModel(0.9, 1e-6),
    )

    r["3psk-ff-eta-n10"] = lambda: SweepConfig(
        metric="error_rate", M=3, alpha_sq_grid=_grid(14.0),
        receivers=_eta_curves("feedforward", {"M": 3, "N": 10, "label_base": "3psk-ff-N10"}),
        bounds=["helstrom", "heterodyne"],
    )

    r["4psk-noff-ideal"] = lambda: SweepConfig(
        metric="error_rate", M=4, alpha_sq_grid=_grid(20.0),
        receivers=[
            {"kind": "static4", "R1": 2.0 / 3.0, "R2": 0.5},
            {"kind": "static4_optimized"},
            {"kind": "static4_optimized", "optimize_displacements": True},
        ],
        bounds=["helstrom", "heterodyne"],
    )

    r["4psk-noff-eta"] = lambda: SweepConfig(
        metric="error_rate", M=4, alpha_sq_grid=_grid(20.0),
        receivers=_eta_curves("static4_optimized", {"label_base": "4psk-static-optR"}),
        bounds=["helstrom", "heterodyne"],
    )

    r["4psk-ff-ideal"] = lambda: SweepConfig(
        metric="error_rate", M=4, alpha_sq_grid=_grid(20.0),
        receivers=[
            {"kind": "feedforward", "M": 4, "N": n, "label": f"4psk-ff-N{n}"}
            for n in (4, 6, 10)
        ] + [{"kind": "feedforward_asymptotic"}],
        bounds=["helstrom", "heterodyne", "bondurant_asymptote"],
    )

    r["4psk-map-ideal"] = lambda: SweepConfig(
        metric="error_rate", M=4, alpha_sq_grid=_grid(20.0),
        receivers=[
            {"kind": "feedforward", "M": 4, "N": n, "policy": "map_posterior",
             "label": f"4psk-ffmap-N{n}"}
            for n in (4, 6, 10)
        ],
        bounds=["helstrom", "heterodyne"],
    )

    r["4psk-ff-imperfect"] = lambda: SweepConfig(
        metric="error_rate", M=4, alpha_sq_grid=_grid(20.0),
        receivers=[
            {"kind": "feedforward", "M": 4, "N": n, "label": f"4psk-ff-N{n}"}
            for n in (4, 6, 10)
        ] + [{"kind": "static4", "R1": 2.0 / 3.0, "R2": 0.5, "label": "4psk-static-equal"}],
        bounds=["helstrom", "heterodyne"],
        detector=DetectorModel(0.9, 1e-6),
    )

    r["4psk-ff-eta-n10"] = lambda: SweepConfig(
        metric="error_rate", M=4, alpha_sq_grid=_grid(20.0),
        receivers=_eta_curves("feedforward", {"M": 4, "N": 10, "label_base": "4psk-ff-N10"}),
        bounds=["helstrom", "heterodyne"],
    )

    r["3psk-mi-ideal"] = lambda: SweepConfig(
        metric="mutual_info", M=3, alpha_sq_grid=_grid(8.0),
        receivers=[
            {"kind": "static3", "R": 0.5, "label": "3psk-static"},
            {"kind": "feedforward", "M": 3, "N": 3, "label": "3psk-ff-N3"},
            {"kind": "feedforward", "M": 3, "N": 10, "label": "3psk-ff-N10"},
        ],
        bounds=["usd", "heterodyne", "helstrom"],
    )

    r["4psk-mi-ideal"] = lambda: SweepConfig(
        metric="mutual_info", M=4, alpha_sq_grid=_grid(8.0),
        receivers=[
            {"kind": "static4", "R1": 2.0 / 3.0, "R2": 0.5, "label": "4psk-static"},
            {"kind": "feedforward", "M": 4, "N": 4, "label": "4psk-ff-N4"},
            {"kind": "feedforward", "M": 4, "N": 10, "label": "4psk-ff-N10"},
        ],
        bounds=["usd", "heterodyne", "helstrom"],
    )

    return r


RECIPES = _recipes()


def get_recipe(name: str) -> SweepConfig:
    if name not in RECIPES:
        known = ", ".join(sorted(RECIPES))
        raise KeyError(f"unknown recipe {name!r}; available: {known}")
    return RECIPES[name]()
