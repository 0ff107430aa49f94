"""Hasse-principle counterexamples over F_q(t), q = 2^m.

Thin wrapper over the compiled core: the heavyweight entry points exchange
JSON (the same schema the ``chatelet`` CLI reads and writes); this module
adds dict-level conveniences on top.
"""

import json as _json

from ._core import (
    CertificateInvalid,
    ConstructionError,
    CounterexampleToPaper,
    PrecisionExhausted,
    construct,
    certify,
    factor,
    find_gamma,
    is_irreducible,
    search,
    trace,
    verify,
)

__all__ = [
    "CertificateInvalid",
    "ConstructionError",
    "CounterexampleToPaper",
    "PrecisionExhausted",
    "construct",
    "construct_dict",
    "certify",
    "certify_dict",
    "factor",
    "find_gamma",
    "is_irreducible",
    "search",
    "search_dict",
    "trace",
    "verify",
]


def construct_dict(m, max_deg=8, threads=0):
    """construct(), parsed into a dict."""
    return _json.loads(construct(m, max_deg, threads))


def certify_dict(instance, degree_bound=4, prec=32, count=100, seed=1, height=3,
                 threads=0):
    """certify(), accepting and returning dicts."""
    if not isinstance(instance, str):
        instance = _json.dumps(instance)
    return _json.loads(
        certify(instance, degree_bound, prec, count, seed, height, threads))


def search_dict(instance, height=3):
    """search(), accepting and returning dicts."""
    if not isinstance(instance, str):
        instance = _json.dumps(instance)
    return _json.loads(search(instance, height))
