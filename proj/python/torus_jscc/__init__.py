"""Analog source-channel codes from curves on flat-torus layers."""

from ._core import (
    CurveSpec,
    DecodeResult,
    DistanceBounds,
    SchemeCode,
    SimResult,
    TorusJsccError,
    TorusSpec,
    TradeoffRow,
    curve_point,
    decode,
    design_scheme,
    distance_bounds,
    encode,
    inter_torus_distance,
    intra_torus_distance,
    line_spacing,
    phi,
    reduce_to_box,
    run_mse,
    tradeoff,
)

__all__ = [
    "CurveSpec",
    "DecodeResult",
    "DistanceBounds",
    "SchemeCode",
    "SimResult",
    "TorusJsccError",
    "TorusSpec",
    "TradeoffRow",
    "curve_point",
    "decode",
    "design_scheme",
    "distance_bounds",
    "encode",
    "inter_torus_distance",
    "intra_torus_distance",
    "line_spacing",
    "phi",
    "reduce_to_box",
    "run_mse",
    "tradeoff",
]
