"""JSON state and report documents.

A state document has ``dims`` plus exactly one of::

    "matrix": [[[re, im], ...], ...]     # row-major dense matrix
    "pure":   [[re, im], ...]            # amplitude vector
    "family": {"name": "ghz3", "p": 1.0} # named family, pure-state weight p

Complex numbers are always ``[re, im]`` pairs.
"""

import hashlib
import json
import logging

import jsonschema
import numpy as np

from .errors import BlochSepError, DimensionError
from .states import FAMILIES, DensityMatrix, family
from .numerics import validate_density

log = logging.getLogger(__name__)

REPORT_FORMAT = "blochsep.report/1"
PURE_NORM_SLACK = 1e-6

_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

STATE_SCHEMA = {
    "type": "object",
    "properties": {
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
        "matrix": {"type": "array", "items": {"type": "array", "items": _PAIR}},
        "pure": {"type": "array", "items": _PAIR},
        "family": {
            "type": "object",
            "properties": {
                "name": {"enum": sorted(FAMILIES)},
                "p": {"type": "number", "minimum": 0, "maximum": 1},
            },
            "required": ["name"],
            "additionalProperties": False,
        },
    },
    "oneOf": [
        {"required": ["dims", "matrix"]},
        {"required": ["dims", "pure"]},
        {"required": ["family"]},
    ],
}

_REPORT_ENTRY = {
    "type": "object",
    "properties": {
        "partition": {"type": "string"},
        "criterion": {"enum": ["B1", "F1", "B2", "B3", "F2", "KSEP"]},
        "labeling": {"type": "string"},
        "roles": {"type": "object"},
        "lhs": {"type": "number"},
        "bound": {"type": "number"},
        "margin": {"type": "number"},
        "violated": {"type": "boolean"},
    },
    "required": ["partition", "criterion", "labeling", "lhs", "bound", "margin", "violated"],
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "format": {"const": REPORT_FORMAT},
        "input_digest": {"type": "string", "pattern": "^sha256:[0-9a-f]{64}$"},
        "dims": {"type": "array", "items": {"type": "integer"}},
        "tolerance": {"type": "number"},
        "reports": {"type": "array", "items": _REPORT_ENTRY},
        "summary": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "partition": {"type": "string"},
                    "entanglement_certified": {"type": "boolean"},
                    "violated_directly": {"type": "boolean"},
                    "implied_by": {"type": "array", "items": {"type": "string"}},
                    "strongest": {"anyOf": [_REPORT_ENTRY, {"type": "null"}]},
                },
                "required": ["partition", "entanglement_certified", "implied_by", "strongest"],
            },
        },
        "skipped": {"type": "array", "items": {"type": "string"}},
        "discrepancies": {"type": "array"},
    },
    "required": ["format", "input_digest", "dims", "tolerance", "reports", "summary", "skipped"],
}


class MalformedDocument(BlochSepError, ValueError):
    pass


class InvalidState(BlochSepError, ValueError):
    pass


def _complex(pairs):
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def _pairs(arr):
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def parse_state(doc, tol=None):
    """Turn a decoded state document into a validated :class:`DensityMatrix`."""
    try:
        jsonschema.validate(doc, STATE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise MalformedDocument(f"malformed state document: {exc.message}") from None
    if "family" in doc:
        fam = doc["family"]
        rho = family(fam["name"], float(fam.get("p", 1.0)))
        if "dims" in doc and tuple(doc["dims"]) != rho.dims:
            raise DimensionError(
                f"dims {tuple(doc['dims'])} do not match family {fam['name']} dims {rho.dims}"
            )
        return rho
    dims = tuple(doc["dims"])
    side = int(np.prod(dims))
    if "pure" in doc:
        psi = _complex(doc["pure"]) if doc["pure"] else np.zeros(0)
        if psi.shape != (side,):
            raise DimensionError(f"pure vector has {psi.size} amplitudes, dims {dims} need {side}")
        norm_sq = float(np.vdot(psi, psi).real)
        if abs(norm_sq - 1.0) > PURE_NORM_SLACK:
            raise InvalidState(f"pure vector has squared norm {norm_sq:.9g}, not 1")
        if abs(norm_sq - 1.0) > 1e-12:
            log.warning("normalizing pure vector (squared norm %.12g)", norm_sq)
            psi = psi / np.sqrt(norm_sq)
        return DensityMatrix.from_ket(psi, dims)
    rows = doc["matrix"]
    if len(rows) != side or any(len(r) != side for r in rows):
        raise DimensionError(f"matrix is not {side}x{side} as dims {dims} require")
    m = _complex(rows) if side else np.zeros((0, 0))
    v = validate_density(m, dims, tol)
    if not v:
        raise InvalidState(f"not a density matrix ({v.reason}): {v.detail}")
    return DensityMatrix(m, dims)


def load_state(text, tol=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"state document is not valid JSON: {exc}") from None
    return parse_state(doc, tol)


def state_document(rho):
    return {"dims": list(rho.dims), "matrix": _pairs(rho.matrix)}


def digest(rho):
    h = hashlib.sha256()
    h.update(np.asarray(rho.dims, dtype="<i8").tobytes())
    h.update(np.ascontiguousarray(rho.matrix, dtype="<c16").tobytes())
    return "sha256:" + h.hexdigest()


def report_document(rho, analysis, discrepancies=None):
    doc = {
        "format": REPORT_FORMAT,
        "input_digest": digest(rho),
        "dims": list(analysis.dims),
        "tolerance": analysis.tolerance,
        "reports": [r.to_dict() for r in analysis.reports],
        "summary": [s.to_dict() for s in analysis.summaries],
        "skipped": list(analysis.skipped),
    }
    if discrepancies:
        doc["discrepancies"] = discrepancies
    jsonschema.validate(doc, REPORT_SCHEMA)
    return doc


def dumps(doc):
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def report_text(doc):
    lines = [
        f"dims: {tuple(doc['dims'])}   tolerance: {doc['tolerance']:g}",
        f"input: {doc['input_digest']}",
        "",
        f"{'partition':<12} {'verdict':<22} {'strongest criterion':<28} {'lhs':>10} {'bound':>10} {'margin':>10}",
    ]
    for s in doc["summary"]:
        if s["entanglement_certified"]:
            verdict = "ENTANGLED" if s["violated_directly"] else "ENTANGLED (implied)"
        else:
            verdict = "no violation"
        st = s["strongest"]
        if st is None:
            lines.append(f"{s['partition']:<12} {verdict:<22} {'-':<28}")
        else:
            lines.append(
                f"{s['partition']:<12} {verdict:<22} {st['labeling']:<28} "
                f"{st['lhs']:>10.6f} {st['bound']:>10.6f} {st['margin']:>+10.6f}"
            )
    for note in doc["skipped"]:
        lines.append(f"skipped: {note}")
    return "\n".join(lines) + "\n"

