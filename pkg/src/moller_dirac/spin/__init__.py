from __future__ import annotations

from .clifford import (
    AdjunctionMap,
    GammaRep,
    clifford_of,
    clifford_of_covector,
    flat,
    frame_components,
    future_normal,
    make_canonical_rep,
    metric_norm_sq,
    sharp,
    slice_product,
)
from .transport import (
    KappaF,
    SpinorTransportField,
    TransportResult,
    boost_lift,
    frame_transport,
    kappa_f,
    lorentz_part,
    rapidity_of,
    transport_covector,
    transport_result,
    transport_spinor,
    transport_vector,
    transport_vector_closed,
)

__all__ = [
    "AdjunctionMap",
    "GammaRep",
    "KappaF",
    "SpinorTransportField",
    "TransportResult",
    "boost_lift",
    "clifford_of",
    "clifford_of_covector",
    "flat",
    "frame_components",
    "frame_transport",
    "future_normal",
    "kappa_f",
    "lorentz_part",
    "make_canonical_rep",
    "metric_norm_sq",
    "rapidity_of",
    "sharp",
    "slice_product",
    "transport_covector",
    "transport_result",
    "transport_spinor",
    "transport_vector",
    "transport_vector_closed",
]
