"""Formal decomposition of the germ after ramification.

The unramified branch copies are grouped by exact equality of their rewritten
polar parts; each group is one exponential factor.  Two rank conventions are
computed: ``rank_branchwise`` sums multiplicities over every contributing
(branch, root) pair, ``rank_distinct`` sums them over the distinct branches
only.  They differ exactly when one branch feeds several root-of-unity copies
into the same factor, which is flagged.  Monodromy characteristic polynomials
are assembled only under the separation condition (pairwise distinctness of
polar part + constant term across all copies).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .branch import Branch, UnramifiedBranch, ramification_order, require_valid, unramify
from .cyclotomic import CycloNum, CycloPoly
from .laurent import LaurentPoly

__all__ = [
    "ExponentialFactor",
    "FormalDecomposition",
    "StarConditionError",
    "exponential_factors",
    "star_condition",
    "char_polys",
    "decompose",
    "laurent_sort_key",
]


class StarConditionError(ValueError):
    """Monodromy assembly requested while the separation condition fails."""


@dataclass(frozen=True)
class ExponentialFactor:
    alpha: LaurentPoly
    members: tuple[tuple[str, int], ...]
    rank_branchwise: int
    rank_distinct: int
    charpoly: CycloPoly | None = None
    charpoly_distinct: CycloPoly | None = None  # set only when it differs

    @property
    def rank_diverges(self) -> bool:
        return self.rank_branchwise != self.rank_distinct

    @property
    def pole_order(self) -> int:
        return self.alpha.pole_order()


@dataclass(frozen=True)
class FormalDecomposition:
    p: int
    factors: tuple[ExponentialFactor, ...]
    star_holds: bool
    star_witness: tuple[tuple[str, int], tuple[str, int]] | None = None


def laurent_sort_key(f: LaurentPoly, order: int):
    """Deterministic total order on Laurent polynomials: (pole order, terms).

    Coefficients are lifted to a common cyclotomic order before keying, so the
    key is stable under permutations and representation order differences.
    """
    items = []
    for e in sorted(f.terms):
        c = f.terms[e].lift(order)
        items.append((e, tuple(sorted(
            (k, v.numerator, v.denominator) for k, v in c.coeffs.items()
        ))))
    return (f.pole_order(), tuple(items))


def _common_order(polys) -> int:
    n = 1
    for f in polys:
        for c in f.terms.values():
            n = n * c.order // gcd(n, c.order)
    return n


def exponential_factors(ub: list[UnramifiedBranch]) -> list[ExponentialFactor]:
    """Partition the unramified copies by exact equality of polar parts.

    Factors come back in the canonical order (pole order, then coefficients).
    """
    order = _common_order([u.alpha_sub for u in ub])
    groups: dict[tuple, list[UnramifiedBranch]] = {}
    for u in ub:
        groups.setdefault(laurent_sort_key(u.alpha_sub, order), []).append(u)

    factors = []
    for key in sorted(groups):
        members = groups[key]
        members.sort(key=lambda u: (u.label, u.root_index))
        distinct_labels = []
        for u in members:
            if u.label not in distinct_labels:
                distinct_labels.append(u.label)
        by_label = {u.label: u.m for u in members}
        factors.append(ExponentialFactor(
            alpha=members[0].alpha_sub,
            members=tuple(u.origin for u in members),
            rank_branchwise=sum(u.m for u in members),
            rank_distinct=sum(by_label[lbl] for lbl in distinct_labels),
        ))
    return factors


def star_condition(ub: list[UnramifiedBranch]):
    """Pairwise distinctness of polar part + constant term across copies.

    Returns (holds, witness); the witness is the first violating pair of
    (label, root index) origins.
    """
    shifted = [u.alpha_sub + LaurentPoly({0: u.delta0}) for u in ub]
    order = _common_order(shifted)
    seen: dict[tuple, tuple[str, int]] = {}
    for u, f in zip(ub, shifted):
        key = laurent_sort_key(f, order)
        if key in seen:
            return False, (seen[key], u.origin)
        seen[key] = u.origin
    return True, None


def char_polys(factors: list[ExponentialFactor],
               ub: list[UnramifiedBranch]) -> list[ExponentialFactor]:
    """Fill in monodromy characteristic polynomials, one zeta per member.

    Requires the separation condition; the product over (branch, root)
    members is primary, and the product over distinct branches is attached
    as ``charpoly_distinct`` whenever the two differ.
    """
    holds, witness = star_condition(ub)
    if not holds:
        raise StarConditionError(
            f"separation condition fails for {witness[0]} and {witness[1]}"
        )
    zetas = {u.origin: u.zeta for u in ub}
    out = []
    for f in factors:
        prod = CycloPoly.one()
        for origin in f.members:
            prod = prod * zetas[origin]
        literal = CycloPoly.one()
        seen: set[str] = set()
        for origin in f.members:
            if origin[0] not in seen:
                seen.add(origin[0])
                literal = literal * zetas[origin]
        out.append(ExponentialFactor(
            alpha=f.alpha,
            members=f.members,
            rank_branchwise=f.rank_branchwise,
            rank_distinct=f.rank_distinct,
            charpoly=prod,
            charpoly_distinct=None if literal == prod else literal,
        ))
    return out


def decompose(branches: list[Branch], truncation: int = 8) -> FormalDecomposition:
    """Full decomposition driver over validated branch data.

    Empty input is the purely regular case: trivial ramification, no factors.
    Factor order is deterministic and independent of input order.
    """
    branches = list(branches)
    if not branches:
        return FormalDecomposition(p=1, factors=(), star_holds=True)
    require_valid(branches, truncation)
    p = ramification_order(branches)
    ub = unramify(branches)
    factors = exponential_factors(ub)
    holds, witness = star_condition(ub)
    if holds:
        factors = char_polys(factors, ub)
    for f in factors:
        assert f.rank_branchwise >= 1
    return FormalDecomposition(
        p=p,
        factors=tuple(factors),
        star_holds=holds,
        star_witness=witness,
    )
