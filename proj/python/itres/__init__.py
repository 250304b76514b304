"""Exact iterated residues at infinity for Thom polynomials, multipoint
classes and tautological integrals over Hilbert schemes of points."""

import json as _json

from ._itres import (
    Error,
    InvalidForm,
    ParseError,
    QTableExhausted,
    ValidationError,
    admissible_sequences,
    conventions_report,
    multidegree,
    multiply,
    normalize,
    qtable,
    residual,
    run_cli,
    selftest,
    thom,
)
from . import _itres


def residue(form, degree_shortcut=True):
    """Iterated residue of a form given as a dict or a JSON string."""
    if not isinstance(form, str):
        form = _json.dumps(form)
    return _itres.residue(form, degree_shortcut)


def multipoint(k, m, n, side="target", convention="sieve"):
    """Returns (text, parsed JSON) of the multipoint class."""
    text, js = _itres.multipoint(k, m, n, side, convention)
    return text, _json.loads(js)


def tauint(k, m, r, d=-1, D=-1, equivariant=False, split_model=None, pairing=None):
    """Tautological integral over k+1 points; pairing is a dict of intersection numbers."""
    if pairing is not None and not isinstance(pairing, str):
        pairing = _json.dumps(pairing)
    return _json.loads(_itres.tauint(k, m, r, d, D, equivariant, split_model, pairing))


__all__ = [
    "Error",
    "InvalidForm",
    "ParseError",
    "QTableExhausted",
    "ValidationError",
    "admissible_sequences",
    "conventions_report",
    "multidegree",
    "multipoint",
    "multiply",
    "normalize",
    "qtable",
    "residual",
    "residue",
    "run_cli",
    "selftest",
    "tauint",
    "thom",
]
