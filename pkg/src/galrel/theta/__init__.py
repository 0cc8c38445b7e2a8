"""Twisted Minkowski metrics and certified η sums."""

from galrel.theta.eta import EtaValue, eta, tail_bound, theta_sum
from galrel.theta.metric import (
    b_divisor,
    descend_infinite,
    infinite_divisor,
    metric_from_divisor,
    place_weights,
    pullback_infinite,
    twisted_norm,
)
from galrel.theta.traces import (
    EtaRelationResidual,
    EtaTerm,
    check_change_metric,
    eta_relation_residual,
    trace_eta,
)

__all__ = [
    "EtaRelationResidual",
    "EtaTerm",
    "EtaValue",
    "b_divisor",
    "check_change_metric",
    "descend_infinite",
    "eta",
    "eta_relation_residual",
    "infinite_divisor",
    "metric_from_divisor",
    "place_weights",
    "pullback_infinite",
    "tail_bound",
    "theta_sum",
    "trace_eta",
]
