"""Deformed logarithm and the entropy functional built on it.

The q-logarithm ``log_q(t) = (t^(1-q) - 1) / (1 - q)`` interpolates between
the natural logarithm (q -> 1) and flatter, bounded transforms.  Summing it
over density values yields objectives that damp the influence of extreme
observations, which is what the estimators in this package exploit.
"""

from __future__ import annotations

import numpy as np

# Treat q within this distance of 1 as the exact logarithmic limit.
Q_UNIT_TOL = 1e-12


def _check_q(q: float) -> float:
    q = float(q)
    if not np.isfinite(q) or q <= 0.0:
        raise ValueError(f"q must be a positive finite number, got {q!r}")
    return q


def _check_positive(t, name: str = "t") -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr <= 0.0)):
        raise ValueError(f"{name} must be strictly positive and finite")
    return arr


def qlog(t, q: float):
    """Deformed logarithm ``(t^(1-q) - 1) / (1 - q)`` for t > 0, q > 0.

    Returns the natural logarithm when q is within ``Q_UNIT_TOL`` of 1, so
    the q -> 1 limit is exact rather than numerically fragile.  Accepts
    scalars or arrays; scalars in, scalar out.

    >>> qlog(4.0, 0.5)
    2.0
    """
    q = _check_q(q)
    arr = _check_positive(t)
    if abs(q - 1.0) <= Q_UNIT_TOL:
        out = np.log(arr)
    else:
        one_minus_q = 1.0 - q
        # expm1 keeps precision when (1-q)*log(t) is tiny.
        out = np.expm1(one_minus_q * np.log(arr)) / one_minus_q
    if np.isscalar(t) or getattr(t, "ndim", None) == 0:
        return float(out)
    return out


def qlog_second_derivative(t, q: float):
    """Second derivative of the q-logarithm, ``-q * t^(-q-1)``.

    Strictly negative for all t > 0, q > 0: the transform is concave, which
    is what guarantees the damping interpretation of the weights it induces.
    """
    q = _check_q(q)
    arr = _check_positive(t)
    out = -q * np.power(arr, -q - 1.0)
    if np.isscalar(t) or getattr(t, "ndim", None) == 0:
        return float(out)
    return out


def tsallis_entropy(values, q: float) -> float:
    """Entropy ``(sum(v^q) - 1) / (1 - q)`` of nonnegative values.

    At q = 1 (within ``Q_UNIT_TOL``) returns the Shannon form
    ``-sum(v * ln(v))`` with the usual 0*ln(0) = 0 convention.  The input
    need not be normalized; the functional is evaluated as written.
    """
    q = _check_q(q)
    arr = np.asarray(values, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr < 0.0)):
        raise ValueError("values must be nonnegative and finite")
    if abs(q - 1.0) <= Q_UNIT_TOL:
        pos = arr[arr > 0.0]
        return float(-np.sum(pos * np.log(pos)))
    return float((np.sum(np.power(arr, q)) - 1.0) / (1.0 - q))
