"""Pedigree reconstruction and enumeration toolkit.

Pedigrees cross the C++ boundary as JSON; this wrapper exposes them as
plain dicts with the same schema the CLI reads and writes:

    {"vertices": [...], "arcs": [[child, parent], ...], "extant": {"x1": id, ...}}
"""

import json as _json
import os as _os
import sys as _sys

# Allow running the tests against a build tree without installing.
_ext_dir = _os.environ.get("PEDCOMB_EXT_DIR")
if _ext_dir and _ext_dir not in _sys.path:
    _sys.path.insert(0, _ext_dir)

from _core import (  # noqa: E402
    ResourceLimitError,
    are_r_hypomorphic as _are_r_hypomorphic,
    bounds,
    build_counterexample as _build_counterexample,
    canonical_code as _canonical_code,
    census,
    deck as _deck,
    find_isomorphism as _find_isomorphism,
    full_deck as _full_deck,
    genderize as _genderize,
    probe as _probe,
    reconstruct as _reconstruct,
    stirling2,
    sub_pedigree as _sub_pedigree,
    to_dot as _to_dot,
    validate as _validate,
)

__all__ = [
    "ResourceLimitError",
    "are_r_hypomorphic",
    "bounds",
    "build_counterexample",
    "canonical_code",
    "census",
    "deck",
    "find_isomorphism",
    "full_deck",
    "genderize",
    "probe",
    "reconstruct",
    "stirling2",
    "sub_pedigree",
    "to_dot",
    "validate",
]


def _dump(pedigree):
    return _json.dumps(pedigree)


def validate(pedigree):
    """Raise ValueError listing every violated invariant; True when valid."""
    return _validate(_dump(pedigree))


def canonical_code(pedigree):
    """Hex canonical code; equal codes mean label-fixing isomorphic."""
    return _canonical_code(_dump(pedigree))


def sub_pedigree(pedigree, keep):
    return _json.loads(_sub_pedigree(_dump(pedigree), list(keep)))


def to_dot(pedigree):
    return _to_dot(_dump(pedigree))


def find_isomorphism(a, b):
    """Vertex map (dict) fixing extant labels, or None."""
    return _find_isomorphism(_dump(a), _dump(b))


def are_r_hypomorphic(a, b, r):
    return _are_r_hypomorphic(_dump(a), _dump(b), r)


def deck(pedigree, r):
    return _json.loads(_deck(_dump(pedigree), r))


def build_counterexample(n, orderings=None, genderized=False):
    """The non-isomorphic, (n-1)-hypomorphic pair (T, U) of order n."""
    t, u = _build_counterexample(n, dict(orderings or {}), genderized)
    return _json.loads(t), _json.loads(u)


def genderize(pedigree):
    return _json.loads(_genderize(_dump(pedigree)))


def full_deck(pedigree):
    return _json.loads(_full_deck(_dump(pedigree)))


def reconstruct(cards):
    out = _reconstruct(_json.dumps(cards))
    if out["pedigree"] is not None:
        out["pedigree"] = _json.loads(out["pedigree"])
    return out


def probe(pedigree, r, max_vertices):
    out = _probe(_dump(pedigree), r, max_vertices)
    if out["counterpart"] is not None:
        out["counterpart"] = _json.loads(out["counterpart"])
    return out
