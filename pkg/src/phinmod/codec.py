"""JSON encodings of modules, matrices and field elements.

A module document looks like::

    {"field": {"prime": 2, "ramification": 6},
     "hodge": {"r": 1, "s": 2},
     "phi": [[...], [...], [...]], "N": [[...], [...], [...]],
     "fil_s": [vector], "fil_r": [vector, vector],
     "jordan": {"eigenvalues": [...], "change_of_basis": [[...]]}}

Entries are either a list of e rationals ``"num/den"`` or a single
rational written as a string or an integer.
"""

import json
from pathlib import Path
from typing import Any, List, Union

from .error_handler import FieldError, HodgeTypeError, ModuleFormatError, ModuleValidationError, PhinModError
from .linalg import Matrix
from .module import DIM, Filtration, HodgeType, JordanHint, PhiNModule, validate_module
from .valued_field import FieldElement, FieldSpec, make_field

REQUIRED_FIELDS = ("field", "hodge", "phi", "N", "fil_s", "fil_r")


def _element(field: FieldSpec, value: Any, where: str) -> FieldElement:
    try:
        return field.parse(value)
    except (FieldError, ValueError, ZeroDivisionError, TypeError) as e:
        raise ModuleFormatError(f"bad field element {value!r}: {e}", where) from e


def _vector(field: FieldSpec, value: Any, where: str) -> List[FieldElement]:
    if not isinstance(value, list) or len(value) != DIM:
        raise ModuleFormatError(f"expected a vector of length {DIM}", where)
    return [_element(field, x, f"{where}[{i}]") for i, x in enumerate(value)]


def _matrix(field: FieldSpec, value: Any, where: str) -> Matrix:
    if not isinstance(value, list) or len(value) != DIM:
        raise ModuleFormatError(f"expected a {DIM}x{DIM} matrix", where)
    return Matrix(field, [_vector(field, row, f"{where}[{i}]") for i, row in enumerate(value)])


def field_from_json(doc: Any) -> FieldSpec:
    if not isinstance(doc, dict) or "prime" not in doc or "ramification" not in doc:
        raise ModuleFormatError("expected {prime, ramification}", "field")
    try:
        return make_field(int(doc["prime"]), int(doc["ramification"]))
    except (FieldError, ValueError, TypeError) as e:
        raise ModuleFormatError(str(e), "field") from e


def module_from_json(doc: Any) -> PhiNModule:
    """Build a module from a parsed document without validating it.

    Raises:
        ModuleFormatError: naming the offending field
        ModuleValidationError: for a Hodge type outside 0<r<s
    """
    if not isinstance(doc, dict):
        raise ModuleFormatError("module document must be an object")
    for key in REQUIRED_FIELDS:
        if key not in doc:
            raise ModuleFormatError(f"missing field {key!r}", key)
    field = field_from_json(doc["field"])
    hodge_doc = doc["hodge"]
    try:
        hodge = HodgeType(int(hodge_doc["r"]), int(hodge_doc["s"]))
    except HodgeTypeError as e:
        raise ModuleValidationError([str(e)]) from e
    except (KeyError, TypeError, ValueError) as e:
        raise ModuleFormatError("expected {r, s}", "hodge") from e
    fil_s = doc["fil_s"]
    fil_r = doc["fil_r"]
    if not isinstance(fil_s, list) or len(fil_s) != 1:
        raise ModuleFormatError("Fil^s takes exactly one vector", "fil_s")
    if not isinstance(fil_r, list) or len(fil_r) != 2:
        raise ModuleFormatError("Fil^r takes exactly two vectors", "fil_r")
    fil = Filtration.from_vectors(
        field,
        _vector(field, fil_s[0], "fil_s[0]"),
        [_vector(field, v, f"fil_r[{i}]") for i, v in enumerate(fil_r)],
    )
    hint = None
    if doc.get("jordan") is not None:
        jordan = doc["jordan"]
        eigen = tuple(_element(field, x, f"jordan.eigenvalues[{i}]")
                      for i, x in enumerate(jordan.get("eigenvalues", [])))
        change = jordan.get("change_of_basis")
        hint = JordanHint(eigen, _matrix(field, change, "jordan.change_of_basis") if change else None)
    return PhiNModule(
        field=field,
        hodge=hodge,
        phi=_matrix(field, doc["phi"], "phi"),
        N=_matrix(field, doc["N"], "N"),
        fil=fil,
        jordan_hint=hint,
    )


def module_to_json(m: PhiNModule) -> dict:
    """Text encoding of a module; spans are written by their echelon bases."""
    doc = {
        "field": m.field.to_json(),
        "hodge": m.hodge.to_json(),
        "phi": m.phi.to_strings(),
        "N": m.N.to_strings(),
        "fil_s": m.fil.L1.to_strings(),
        "fil_r": m.fil.L2.to_strings(),
    }
    if m.jordan_hint is not None:
        hint = m.jordan_hint
        doc["jordan"] = {
            "eigenvalues": [x.to_strings() for x in hint.eigenvalues],
            "change_of_basis": hint.change_of_basis.to_strings() if hint.change_of_basis else None,
        }
    return doc


def parse_module_text(text: str, source: str = "<string>") -> PhiNModule:
    """Parse and validate a module document.

    Args:
        text: JSON text
        source: Name used in error locations

    Raises:
        ModuleFormatError: with line and column for malformed JSON
        ModuleValidationError: listing the violated invariants
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModuleFormatError(e.msg, f"{source}: line {e.lineno} column {e.colno}") from e
    try:
        module = module_from_json(doc)
    except ModuleValidationError:
        raise
    except PhinModError as e:
        raise ModuleFormatError(str(e), source) from e
    violations = validate_module(module)
    if violations:
        raise ModuleValidationError(violations)
    return module


def parse_module_file(path: Union[str, Path]) -> PhiNModule:
    """Read, parse and validate a module file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModuleFormatError(f"cannot read file: {e.strerror}", str(path)) from e
    return parse_module_text(text, str(path))


def write_module_file(m: PhiNModule, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(module_to_json(m), indent=2) + "\n", encoding="utf-8")


def dumps(doc: Any) -> str:
    """Canonical report serialization."""
    return json.dumps(doc, indent=2, sort_keys=True)
