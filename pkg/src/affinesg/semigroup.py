"""Closed-form invariants of the smallest affine-closed semigroup with a given seed.

Every quantity is computed from at most c greedy decompositions, never by
materializing the semigroup: the point of the closed forms is that a sieve
is unnecessary.  The brute-force counterpart lives in `affinesg.oracle` and
exists only to cross-check these formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Params,
    checked,
    decompose,
    geometric_sum,
    orbit_term,
)

__all__ = [
    "GapsCapError",
    "SemigroupProfile",
    "DEFAULT_GAPS_CAP",
    "apery_element",
    "apery_set",
    "contains",
    "embedding_dimension",
    "frobenius",
    "gaps",
    "genus",
    "k_tilde",
    "members_below",
    "minimal_generators",
    "profile",
]

DEFAULT_GAPS_CAP = 10_000_000


class GapsCapError(ValueError):
    """Gap enumeration refused because the Frobenius number exceeds the cap."""


@dataclass(frozen=True)
class SemigroupProfile:
    """All computed invariants of one semigroup.

    ``apery[l]`` is the least member congruent to b*l modulo c, so
    ``apery[0] == 0`` and membership of any n is the single comparison
    ``n >= apery[l]`` for the class l of n.
    """

    params: Params
    k_tilde: int
    minimal_generators: tuple[int, ...]
    apery: tuple[int, ...]
    frobenius: int
    genus: int
    conductor: int

    @property
    def embedding_dimension(self) -> int:
        return self.k_tilde


def k_tilde(p: Params) -> int:
    """Least k whose geometric sum exceeds c - 1; the count of minimal generators.

    Always at least 2, because the sums start 0, 1 and c is at least 2.
    """
    k = 0
    while geometric_sum(p.a, k) <= p.c - 1:
        k += 1
    return k


def minimal_generators(p: Params) -> list[int]:
    """The first k_tilde orbit terms; strictly increasing, gcd 1."""
    return [orbit_term(p, k) for k in range(k_tilde(p))]


def embedding_dimension(p: Params) -> int:
    """Size of the unique minimal generating set; equals k_tilde."""
    return k_tilde(p)


def apery_element(p: Params, l: int) -> int:
    """Least member congruent to b*l mod c, for a class index l in [0, c-1]."""
    if not 0 <= l <= p.c - 1:
        raise ValueError(f"class index must lie in [0, {p.c - 1}] (got {l})")
    if l == 0:
        return 0
    return decompose(p.a, l).t_value(p)


def apery_set(p: Params) -> list[int]:
    """All c least-in-class members, indexed by class: [x_0, ..., x_{c-1}].

    Same values as calling `apery_element` per class, with the greedy
    decomposition tables shared across classes.
    """
    a, b, c = p.a, p.b, p.c
    sums = [0, 1]
    while sums[-1] <= c - 1:
        sums.append(checked(sums[-1] * a + 1))
    top = len(sums) - 2  # largest index the greedy loop can use
    terms = [orbit_term(p, k) for k in range(top + 1)]
    out = [0] * c
    for l in range(1, c):
        rem = l
        k = top
        x = 0
        while rem:
            while sums[k] > rem:
                k -= 1
            q = rem // sums[k]
            x += q * terms[k]
            rem -= q * sums[k]
        out[l] = checked(x)
    return out


def frobenius(p: Params) -> int:
    """Largest integer outside the semigroup: the top Apery element minus c."""
    ap = apery_set(p)
    top = ap[p.c - 1]
    assert top == max(ap), "the last Apery class must hold the maximum"
    return top - p.c


def genus(p: Params) -> int:
    """Number of positive integers outside the semigroup.

    Computed from the Apery set as (sum of classes)/c - (c-1)/2, evaluated
    exactly over the integers.  The numerator is provably divisible; a
    failure here would mean an internal bug, hence the assertion.
    """
    ap = apery_set(p)
    total = 0
    for x in ap:
        total += x
    checked(total)
    num = checked(2 * total) - p.c * (p.c - 1)
    assert num % (2 * p.c) == 0, "genus formula must yield an integer"
    return num // (2 * p.c)


def contains(p: Params, n: int) -> bool:
    """Membership in constant arithmetic: n is in iff n >= its class minimum.

    The class of n is recovered through the inverse of b modulo c, which
    exists because gcd(b, c) = 1.
    """
    if n < 0:
        raise ValueError("membership is defined on non-negative integers")
    l = (n * pow(p.b, -1, p.c)) % p.c
    return n >= apery_element(p, l)


def gaps(p: Params, max_frobenius: int = DEFAULT_GAPS_CAP) -> list[int]:
    """All positive integers outside the semigroup, in increasing order.

    Refuses when the Frobenius number exceeds ``max_frobenius``: the output
    is O(F) long, while every other invariant stays O(c).
    """
    f = frobenius(p)
    if f > max_frobenius:
        raise GapsCapError(
            f"frobenius number {f} exceeds the gap enumeration cap "
            f"{max_frobenius}; raise the cap to materialize the gaps"
        )
    least = _least_by_residue(p)
    return [n for n in range(1, f + 1) if n < least[n % p.c]]


def members_below(p: Params, limit: int) -> list[int]:
    """All members in [0, limit)."""
    if limit < 1:
        return []
    least = _least_by_residue(p)
    return [n for n in range(limit) if n >= least[n % p.c]]


def _least_by_residue(p: Params) -> list[int]:
    least = [0] * p.c
    for x in apery_set(p):
        least[x % p.c] = x
    return least


def profile(p: Params) -> SemigroupProfile:
    """Compute every invariant once and validate their mutual consistency."""
    kt = k_tilde(p)
    gens = minimal_generators(p)
    ap = apery_set(p)
    assert len(gens) == kt
    assert ap[0] == 0
    assert len({x % p.c for x in ap}) == p.c, "Apery classes must cover all residues"
    top = ap[p.c - 1]
    assert top == max(ap) and top > 0
    f = top - p.c
    total = 0
    for x in ap:
        total += x
    checked(total)
    num = checked(2 * total) - p.c * (p.c - 1)
    assert num % (2 * p.c) == 0, "genus formula must yield an integer"
    g = num // (2 * p.c)
    return SemigroupProfile(
        params=p,
        k_tilde=kt,
        minimal_generators=tuple(gens),
        apery=tuple(ap),
        frobenius=f,
        genus=g,
        conductor=f + 1,
    )
