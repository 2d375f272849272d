"""Published reference values for the fixed three-observable system.

The rank, kernel vector, left-null-space basis and pseudoinverse of the
10x8 constraint matrix are known in closed form; they are embedded here
as fixtures so the whole linear-algebra stack can be regression-checked
from scratch at any time (``bellquasi paper-check``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactla import RatMatrix, RatVector, left_null_space, null_space, pseudoinverse, rank
from .quasi import build_matrix

REFERENCE_RANK = 7

REFERENCE_HOMOGENEOUS = (-1, 1, 1, -1, 1, -1, -1, 1)

REFERENCE_LEFT_NULL = (
    (-1, -1, 0, 0, 0, 0, 1, 0, 1, 0),
    (0, 0, 0, -1, -1, 0, 1, 1, 0, 0),
    (-1, 0, -1, 1, 0, 1, 0, 0, 0, 0),
)

_F = Fraction
REFERENCE_PSEUDOINVERSE = (
    (_F(1, 4), _F(-1, 8), _F(-1, 8), _F(1, 4), _F(-1, 8), _F(-1, 8), _F(1, 4), _F(-1, 8), _F(-1, 8), _F(1, 8)),
    (_F(-1, 20), _F(13, 40), _F(1, 8), _F(-1, 20), _F(13, 40), _F(1, 8), _F(7, 20), _F(-3, 40), _F(-3, 40), _F(-1, 8)),
    (_F(-1, 20), _F(1, 8), _F(13, 40), _F(7, 20), _F(-3, 40), _F(-3, 40), _F(-1, 20), _F(13, 40), _F(1, 8), _F(-1, 8)),
    (_F(1, 20), _F(-9, 40), _F(-9, 40), _F(-3, 20), _F(3, 8), _F(-1, 40), _F(-3, 20), _F(3, 8), _F(-1, 40), _F(1, 8)),
    (_F(7, 20), _F(-3, 40), _F(-3, 40), _F(-1, 20), _F(1, 8), _F(13, 40), _F(-1, 20), _F(1, 8), _F(13, 40), _F(-1, 8)),
    (_F(-3, 20), _F(3, 8), _F(-1, 40), _F(1, 20), _F(-9, 40), _F(-9, 40), _F(-3, 20), _F(-1, 40), _F(3, 8), _F(1, 8)),
    (_F(-3, 20), _F(-1, 40), _F(3, 8), _F(-3, 20), _F(-1, 40), _F(3, 8), _F(1, 20), _F(-9, 40), _F(-9, 40), _F(1, 8)),
    (_F(-1, 4), _F(-3, 8), _F(-3, 8), _F(-1, 4), _F(-3, 8), _F(-3, 8), _F(-1, 4), _F(-3, 8), _F(-3, 8), _F(7, 8)),
)


@dataclass(frozen=True)
class CheckItem:
    """One regression item: what was compared and how it went."""

    name: str
    ok: bool
    detail: str


def _spans_match(computed: Sequence[RatVector], expected: Sequence[Sequence[int]]) -> bool:
    """True when two vector sets span the same subspace (exact ranks)."""
    if not computed and not expected:
        return True
    if not computed or len(computed[0]) == 0:
        return not expected
    exp_rows = [list(v) for v in expected]
    comp_rows = [list(v) for v in computed]
    r_exp = rank(RatMatrix.from_rows(exp_rows)) if exp_rows else 0
    r_comp = rank(RatMatrix.from_rows(comp_rows)) if comp_rows else 0
    r_both = rank(RatMatrix.from_rows(exp_rows + comp_rows))
    return r_exp == r_comp == r_both


def run_reference_check(
    expected_rank: int = REFERENCE_RANK,
    expected_homogeneous: Sequence[int] = REFERENCE_HOMOGENEOUS,
    expected_left_null: Sequence[Sequence[int]] = REFERENCE_LEFT_NULL,
    expected_pseudoinverse: Optional[Sequence[Sequence[Fraction]]] = None,
) -> list[CheckItem]:
    """Recompute every structural quantity from scratch and diff it against
    the given fixtures (defaults: the published values).

    The fixture parameters exist so tests can inject faults and watch the
    corresponding item fail.
    """
    if expected_pseudoinverse is None:
        expected_pseudoinverse = REFERENCE_PSEUDOINVERSE
    m = build_matrix()
    items = []

    computed_rank = rank(m)
    items.append(
        CheckItem(
            name="rank",
            ok=computed_rank == expected_rank,
            detail=f"computed {computed_rank}, expected {expected_rank}",
        )
    )

    kernel = null_space(m)
    kernel_ok = _spans_match(kernel, [list(expected_homogeneous)])
    items.append(
        CheckItem(
            name="null space",
            ok=kernel_ok,
            detail=(
                f"{len(kernel)} basis vector(s); span "
                + ("matches" if kernel_ok else "does NOT match")
                + " the reference kernel direction"
            ),
        )
    )

    left = left_null_space(m)
    left_ok = _spans_match(left, [list(v) for v in expected_left_null])
    items.append(
        CheckItem(
            name="left null space",
            ok=left_ok,
            detail=(
                f"{len(left)} basis vector(s); span "
                + ("matches" if left_ok else "does NOT match")
                + " the reference complement"
            ),
        )
    )

    pinv = pseudoinverse(m)
    mismatches = [
        (i + 1, j + 1, pinv.entry(i, j), expected_pseudoinverse[i][j])
        for i in range(8)
        for j in range(10)
        if pinv.entry(i, j) != expected_pseudoinverse[i][j]
    ]
    if mismatches:
        shown = "; ".join(
            f"({i},{j}): computed {got}, expected {want}" for i, j, got, want in mismatches[:5]
        )
        detail = f"{len(mismatches)} of 80 entries differ: {shown}"
    else:
        detail = "all 80 entries match exactly"
    items.append(CheckItem(name="pseudoinverse", ok=not mismatches, detail=detail))
    return items
