"""Realize a formal-module description as branch data and check the round trip.

A formal description lists exponential summands (polar part, rank, monodromy
polynomial) at a declared ramification order.  Realization normalizes each
summand to a primitive pair, groups summands into root-of-unity orbits, and
emits one branch per orbit with trivial holomorphic part; decomposing those
branches regenerates the whole orbit of every summand.  The round-trip
comparison therefore works with ramification-independent canonical classes:
primitive pair plus orbit closure plus rank plus monodromy polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .branch import Branch
from .cyclotomic import CycloNum, CycloPoly, root_of_unity
from .decomposition import FormalDecomposition, decompose, laurent_sort_key
from .laurent import LaurentPoly, subst_root_power, support_gcd

__all__ = [
    "FormalSummand",
    "FormalModuleSpec",
    "NormalizationConflictError",
    "canonicalize",
    "orbit_closure",
    "realize",
    "roundtrip_check",
    "RoundTripReport",
]


class NormalizationConflictError(ValueError):
    """Summands in one root-of-unity orbit disagree on rank or monodromy."""


@dataclass(frozen=True)
class FormalSummand:
    alpha: LaurentPoly
    rank: int
    charpoly: CycloPoly


@dataclass(frozen=True)
class FormalModuleSpec:
    p: int
    summands: tuple[FormalSummand, ...]
    regular_rank: int = 0


def validate_spec(spec: FormalModuleSpec) -> None:
    if spec.p < 1:
        raise ValueError("ramification order must be positive")
    if spec.regular_rank < 0:
        raise ValueError("regular rank must be nonnegative")
    for s in spec.summands:
        if s.alpha.is_zero() or not s.alpha.polar_part() == s.alpha:
            raise ValueError("summand polar parts must be nonzero with only "
                             "negative exponents")
        if s.rank < 1:
            raise ValueError("summand rank must be positive")
        if s.charpoly.is_zero() or not s.charpoly.is_monic() \
                or s.charpoly.degree != s.rank:
            raise ValueError("summand charpoly must be monic of degree rank")
    for i in range(len(spec.summands)):
        for j in range(i + 1, len(spec.summands)):
            if spec.summands[i].alpha == spec.summands[j].alpha:
                raise ValueError("summand polar parts must be pairwise distinct")


def canonicalize(p: int, alpha: LaurentPoly) -> tuple[int, LaurentPoly]:
    """Primitive form of a ramified polar part.

    Divides the ramification order and every exponent by their common gcd,
    so the result satisfies gcd(p', exponents) = 1 and names the same formal
    object at the smallest ramification.
    """
    if alpha.is_zero() or not alpha.polar_part() == alpha:
        raise ValueError("alpha must be nonzero and purely polar")
    d = support_gcd(alpha, p)
    if d <= 1:
        return p, alpha
    return p // d, LaurentPoly({e // d: c for e, c in alpha.terms.items()})


def orbit_closure(p: int, alpha: LaurentPoly) -> list[LaurentPoly]:
    """Distinct twists alpha(xi * t) over the p-th roots of unity xi,
    in canonical order."""
    seen: dict[tuple, LaurentPoly] = {}
    order = 1
    twisted = []
    for i in range(1, p + 1):
        xi = root_of_unity(p, i)
        f = subst_root_power(alpha, xi, 1)
        twisted.append(f)
        for c in f.terms.values():
            order = order * c.order // gcd(order, c.order)
    for f in twisted:
        seen.setdefault(laurent_sort_key(f, order), f)
    return [seen[k] for k in sorted(seen)]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _orbit_class_keys(p: int, alphas, extra_order: int = 1) -> list[tuple]:
    """Orbit-class keys for several polar parts at once.

    All keys are built at one shared coefficient order, so equal field values
    produce equal keys regardless of the order each coefficient was built at.
    """
    material = []
    order = extra_order
    for alpha in alphas:
        p0, a0 = canonicalize(p, alpha)
        orbit = orbit_closure(p0, a0)
        material.append((p0, orbit))
        for f in orbit:
            for c in f.terms.values():
                order = _lcm(order, c.order)
    return [(p0, tuple(sorted(laurent_sort_key(f, order) for f in orbit)))
            for p0, orbit in material]


def realize(spec: FormalModuleSpec) -> list[Branch]:
    """One branch per root-of-unity orbit of summands.

    Each branch carries the canonical orbit representative as polar part, a
    trivial holomorphic part, the orbit's rank as multiplicity and its
    monodromy polynomial; decomposing the output regenerates every orbit
    element.  Orbit members with conflicting rank or monodromy raise
    NormalizationConflictError.  The regular summand produces no branch.
    """
    validate_spec(spec)
    keys = _orbit_class_keys(spec.p, [s.alpha for s in spec.summands])
    groups: dict[tuple, list[FormalSummand]] = {}
    for key, s in zip(keys, spec.summands):
        groups.setdefault(key, []).append(s)

    branches = []
    for idx, key in enumerate(sorted(groups), start=1):
        members = groups[key]
        ranks = {s.rank for s in members}
        if len(ranks) > 1:
            raise NormalizationConflictError(
                f"orbit of {members[0].alpha!r} carries ranks {sorted(ranks)}"
            )
        for s in members[1:]:
            if not (s.charpoly == members[0].charpoly):
                raise NormalizationConflictError(
                    f"orbit of {members[0].alpha!r} carries distinct "
                    "monodromy polynomials"
                )
        p0, rep = canonicalize(spec.p, members[0].alpha)
        branches.append(Branch(
            label=f"s{idx}",
            p=p0,
            q=rep.pole_order(),
            alpha=rep,
            delta=LaurentPoly.zero(),
            m=members[0].rank,
            zeta=members[0].charpoly,
        ))
    return branches


@dataclass(frozen=True)
class RoundTripReport:
    ok: bool
    spec_ramification: int
    computed_ramification: int
    matched: tuple[str, ...] = ()
    missing: tuple[str, ...] = ()
    extra: tuple[str, ...] = ()
    conflicts: tuple[str, ...] = ()
    decomposition: FormalDecomposition | None = None


def _describe(p0: int, alpha: LaurentPoly, rank: int) -> str:
    terms = ", ".join(f"{c!r}*t^{e}" for e, c in sorted(alpha.terms.items()))
    return f"(ramification {p0}, alpha {terms}, rank {rank})"


def roundtrip_check(spec: FormalModuleSpec) -> RoundTripReport:
    """Compare decompose(realize(spec)) with the orbit closure of the spec.

    Both sides are mapped to canonical classes (primitive pair, orbit, rank,
    charpoly) counted with multiplicity; mismatches are reported, never
    raised.  A spec whose summands cannot be consistently orbit-closed is
    reported as a conflict.
    """
    try:
        branches = realize(spec)
    except NormalizationConflictError as err:
        return RoundTripReport(
            ok=False, spec_ramification=spec.p, computed_ramification=0,
            conflicts=(str(err),),
        )

    dec = decompose(branches)

    # Key the spec side and the computed side together at one shared
    # coefficient order, so representation differences cannot split classes.
    # The computed ramification divides the declared one; rescale exponents
    # to compare both sides at the declared order.
    spec_alphas = [s.alpha for s in spec.summands]
    scale = spec.p // dec.p
    got_alphas = [LaurentPoly({e * scale: c for e, c in f.alpha.terms.items()})
                  for f in dec.factors]
    all_keys = _orbit_class_keys(spec.p, spec_alphas + got_alphas)
    spec_keys = all_keys[:len(spec_alphas)]
    got_keys = all_keys[len(spec_alphas):]

    # The orbit closure of the spec is a union: summands sharing an orbit
    # contribute that orbit once (realize already checked consistency).
    spec_entries = []
    seen_classes = set()
    for key, s in zip(spec_keys, spec.summands):
        if key in seen_classes:
            continue
        seen_classes.add(key)
        p0, a0 = canonicalize(spec.p, s.alpha)
        size = len(orbit_closure(p0, a0))
        spec_entries.extend([(key, p0, a0, s.rank, s.charpoly)] * size)

    got_entries = []
    for key, f in zip(got_keys, dec.factors):
        p0, a0 = canonicalize(dec.p, f.alpha)
        got_entries.append((key, p0, a0, f.rank_branchwise, f.charpoly))

    matched, missing = [], []
    remaining = list(got_entries)
    for entry in spec_entries:
        key, p0, a0, rank, cp = entry
        hit = None
        for i, other in enumerate(remaining):
            if other[0] == key and other[3] == rank and \
                    (cp is None or other[4] is None or other[4] == cp):
                hit = i
                break
        if hit is None:
            missing.append(_describe(p0, a0, rank))
        else:
            matched.append(_describe(p0, a0, rank))
            remaining.pop(hit)
    extra = [_describe(p0, a0, rank) for (_, p0, a0, rank, _cp) in remaining]

    return RoundTripReport(
        ok=not missing and not extra,
        spec_ramification=spec.p,
        computed_ramification=dec.p,
        matched=tuple(matched),
        missing=tuple(missing),
        extra=tuple(extra),
        decomposition=dec,
    )
