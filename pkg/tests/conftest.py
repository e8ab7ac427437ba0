"""Shared brute-force helpers and frozen fixtures, independent of the code under test."""

from __future__ import annotations

from affinesg import Params, geometric_sum, orbit_term

# Frozen reference grids for three worked examples: the full set of members
# below the stated limit, and the marked values (the minimal generators).
WORKED_TABLES = {
    (3, 1, 3): {
        "limit": 21,
        "members": sorted([0, 3, 6, 9, 12, 15, 18, 10, 13, 16, 19, 20]),
        "marked": {3, 10},
    },
    (3, 1, 5): {
        "limit": 50,
        "members": sorted(
            [0, 5, 10, 15, 20, 25, 30, 35, 40, 45]
            + [16, 21, 26, 31, 36, 41, 46]
            + [32, 37, 42, 47]
            + [48, 49]
        ),
        "marked": {5, 16, 49},
    },
    (2, 3, 4): {
        "limit": 28,
        "members": sorted(
            [0, 4, 8, 12, 16, 20, 24] + [25] + [22, 26] + [11, 15, 19, 23, 27]
        ),
        "marked": {4, 11, 25},
    },
}


def reduced_vectors_up_to(a: int, max_top: int) -> list[dict[int, int]]:
    """Every reduced coefficient map on positive indices with top <= max_top.

    Enumerated directly from the three rules (cap a, full coefficient forces
    zeros below, nonzero top), not via any production code.  The empty map is
    excluded.
    """
    out: list[dict[int, int]] = []

    def rec(i: int, acc: dict[int, int]) -> None:
        if i == 0:
            if acc:
                out.append(dict(acc))
            return
        for j in range(a + 1):
            if j == a:
                # a full coefficient ends the vector: everything below is zero
                full = dict(acc)
                full[i] = a
                out.append(full)
            else:
                if j:
                    acc[i] = j
                rec(i - 1, acc)
                acc.pop(i, None)

    rec(max_top, {})
    return out


def s_sum_of_map(coeffs: dict[int, int], a: int) -> int:
    return sum(j * geometric_sum(a, i) for i, j in coeffs.items() if i >= 1)


def t_sum_of_map(coeffs: dict[int, int], p: Params) -> int:
    return sum(j * orbit_term(p, i) for i, j in coeffs.items())


def sieve_members(a: int, b: int, c: int, bound: int) -> list[int]:
    """Naive fixpoint closure of {0, c} under sums and x -> a*x + b.

    Quadratic and slow on purpose; used to double-check the fast oracle on
    small instances.
    """
    members = {0, c}
    changed = True
    while changed:
        changed = False
        snapshot = sorted(members)
        for x in snapshot:
            if x > 0:
                v = a * x + b
                if v < bound and v not in members:
                    members.add(v)
                    changed = True
            for y in snapshot:
                v = x + y
                if v < bound and v not in members:
                    members.add(v)
                    changed = True
    return sorted(members)
