"""Machine checks that justify each entry of the formula-corrections file.

Every entry names a check that the stated form must fail; ``stated_form_failure``
reruns it and returns the resulting Failure (or None if the stated form passes).
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .algebra import LinearForm, abelian_a, bracket
from .basis_index import Signature, block_combination, decompose_blocks
from .matrix import Matrix
from .roots import root_vector_long
from .verification import Failure, eigen_defect
from .weights import is_in_s, weight_vector_double


def load_corrections() -> list[dict]:
    text = resources.files("sopq.data").joinpath("corrections.json").read_text(encoding="utf-8")
    return json.loads(text)["corrections"]


def _complement_trace() -> Failure | None:
    sig = Signature(2, 2)
    x = block_combination(sig, [(1, "D", 1, 1)])
    a, b, _, _ = decompose_blocks(sig, x)
    stated = sum(a[k][k] for k in range(2)) + sum(b[k][k] for k in range(2)) == 0
    if stated and x.trace() != 0:
        return Failure("membership", "D_{1,1} at (2,2)", f"meets the stated conditions, trace {x.trace()}")
    return None


def _m_index() -> Failure | None:
    sig = Signature(4, 2)
    q, i, j = sig.q, 1, 2
    try:
        block_combination(sig, [(1, "A", q + i, -q + j), (-1, "A", q + j, -q + i)])
    except IndexError as e:
        return Failure("index-range", "m generator at (4,2), i=1, j=2", str(e))
    return None


def _zero_weight_sign() -> Failure | None:
    sig = Signature(4, 2)
    x = block_combination(sig, [(2, "A", 3, 3), (1, "A", 1, 1), (1, "D", 1, 1)])
    if not is_in_s(sig, x):
        return Failure("membership", "2A_{3,3} + (A_{1,1} + D_{1,1}) at (4,2)", f"trace {x.trace()}")
    return None


def stated_display_matrix(golden: dict, patch: dict) -> Matrix:
    """The golden-table matrix of a patched cell, exactly as transcribed."""
    entries = golden[patch["table"]][patch["cell"]][patch["param"]]
    d = sum(golden["signature"])
    return Matrix(d, {(r - 1, c - 1): Fraction(v) for r, c, v in entries})


def _weight_display_entry() -> Failure | None:
    from .report import load_golden

    sig = Signature(4, 2)
    patch = next(c["golden_patch"] for c in load_corrections() if c["id"] == "weight-display-entry")
    x = stated_display_matrix(load_golden(), patch)
    if not is_in_s(sig, x):
        return Failure("membership", f"{patch['table']}/{patch['cell']}", "B = -C^t fails")
    return None


def _ladder_labels() -> Failure | None:
    sig = Signature(4, 2)
    h = root_vector_long(sig, (-1, -1), 1, 2)
    z = bracket(h, weight_vector_double(sig, 1, 1))
    target = LinearForm.pair(2, 1, 1, 2, 1)
    bad = eigen_defect(abelian_a(sig).generators, target, z)
    if not z.is_zero() and bad is not None:
        actual = LinearForm.pair(2, 1, 1, 2, -1)
        lands = eigen_defect(abelian_a(sig).generators, actual, z) is None
        return Failure("eigen-identity", "[H(-f_1-f_2), S(2f_1)]",
                       f"fails against F_{bad} for f_1+f_2" + ("; has weight f_1-f_2" if lands else ""))
    return None


_CHECKS = {
    "complement-trace": _complement_trace,
    "m-index": _m_index,
    "zero-weight-sign": _zero_weight_sign,
    "weight-display-entry": _weight_display_entry,
    "ladder-labels": _ladder_labels,
}


def stated_form_failure(correction_id: str) -> Failure | None:
    return _CHECKS[correction_id]()


def apply_golden_patches(golden: dict, corrections: list[dict] | None = None) -> dict:
    """Copy of ``golden`` with every golden_patch of the corrections applied."""
    corrections = load_corrections() if corrections is None else corrections
    out = json.loads(json.dumps(golden))
    for c in corrections:
        patch = c.get("golden_patch")
        if not patch or tuple(out["signature"]) != (4, 2):
            continue
        entries = out[patch["table"]][patch["cell"]][patch["param"]]
        for e in entries:
            if (e[0], e[1]) == (patch["row"], patch["col"]):
                if str(e[2]) != patch["stated"]:
                    raise ValueError(f"golden entry {patch} does not hold the stated value")
                e[2] = patch["used"]
                break
        else:
            raise ValueError(f"golden entry {patch} not found")
    return out
