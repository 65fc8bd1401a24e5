"""Python access to the qfzeta core: zeta products, classes and Bers kernels."""

import json

from . import _core

__all__ = [
    "run",
    "multiplier",
    "conjugacy_classes",
    "multiplier_series",
    "F",
    "Z",
    "kernel",
    "hyperbolic_area",
]


def run(*args):
    """Runs a CLI command; returns (exit code, parsed JSON report)."""
    code, out, _ = _core.run([str(a) for a in args])
    return code, json.loads(out) if out.strip().startswith("{") else out


def multiplier(a, b, c, d):
    return _core.multiplier(complex(a), complex(b), complex(c), complex(d))


def conjugacy_classes(group, max_length):
    return json.loads(_core.conjugacy_classes(group, max_length))


def multiplier_series(group, n, max_length):
    return json.loads(_core.multiplier_series(group, n, max_length))


def F(group, n, max_length, m_trunc=64):
    return json.loads(_core.F(group, n, max_length, m_trunc))


def Z(group, s, max_length, m_trunc=64):
    return json.loads(_core.Z(group, s, max_length, m_trunc))


def kernel(group, n, z, w, side, max_length):
    return json.loads(_core.kernel(group, n, complex(z), complex(w), side, max_length))


def hyperbolic_area(group, center=1j):
    return _core.hyperbolic_area(group, complex(center))
