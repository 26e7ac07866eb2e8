"""Closed convex upper sets over a fixed ordering cone, with exact lattice ops.

An upper set D satisfies D = cl co(D + C).  Nonempty members are full
dimensional (they contain translates of int C), so the irredundant H-rep is
unique up to positive scaling and, with primitive integer normals and sorted
facets, structural equality of canonical forms is set equality.

Both representations are kept: the H-rep (facets) identifies the set, the
V-rep (points on minimal faces, extreme rays, lineality basis) makes
Minkowski sums and support queries exact.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .cone import Cone, ValidationError, check_dim
from .ddm import hrep_to_vrep, vrep_to_hrep
from .linalg import (
    NEG_INF,
    POS_INF,
    Vec,
    dot,
    format_rational,
    is_zero,
    primitive,
    vadd,
    vec,
)

EMPTY = "empty"
FULL = "full"
PROPER = "proper"


class Halfspace(NamedTuple):
    """{z : <z, normal> >= offset}; offset -inf means the constraint is absent."""

    normal: Vec
    offset: Fraction | float


def in_dual_cone(cone: Cone, w: Sequence) -> bool:
    return all(dot(g, w) >= 0 for g in cone.generators)


@dataclass(frozen=True)
class UpperSet:
    """Canonical element of the lattice of closed convex upper sets.

    Use the constructors (``canonicalize``, ``point_plus_cone``,
    ``halfspace_set``, ``cone_upper_set``, ``UpperSet.empty/full``) rather
    than instantiating directly; they establish the canonical form that
    equality relies on.
    """

    cone: Cone
    kind: str
    halfspaces: tuple[Halfspace, ...] = ()
    points: tuple[Vec, ...] = field(default=(), compare=False)
    rays: tuple[Vec, ...] = field(default=(), compare=False)
    lineality: tuple[Vec, ...] = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    @property
    def is_full(self) -> bool:
        return self.kind == FULL

    @staticmethod
    def empty(cone: Cone) -> "UpperSet":
        return UpperSet(cone, EMPTY)

    @staticmethod
    def full(cone: Cone) -> "UpperSet":
        dim = cone.dim
        basis = tuple(tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim))
        return UpperSet(cone, FULL, points=(tuple(Fraction(0) for _ in range(dim)),), lineality=basis)

    def support(self, w) -> Fraction | float:
        """inf over the set of <y, w>: +inf on empty, -inf when unbounded below."""
        w = vec(w)
        check_dim(self.dim, w, "direction")
        if is_zero(w):
            raise ValidationError("support direction must be nonzero")
        if self.is_empty:
            return POS_INF
        for l in self.lineality:
            if dot(l, w) != 0:
                return NEG_INF
        for r in self.rays:
            if dot(r, w) < 0:
                return NEG_INF
        if not self.points:
            return NEG_INF
        return min(dot(p, w) for p in self.points)

    def member(self, y) -> bool:
        y = vec(y)
        check_dim(self.dim, y, "point")
        if self.is_empty:
            return False
        return all(dot(y, h.normal) >= h.offset for h in self.halfspaces)

    def subset_of(self, other: "UpperSet") -> bool:
        _check_same_cone(self, other)
        if self.is_empty or other.is_full:
            return True
        if other.is_empty:
            return False
        for p in self.points:
            if not other.member(p):
                return False
        for h in other.halfspaces:
            for r in self.rays:
                if dot(r, h.normal) < 0:
                    return False
            for l in self.lineality:
                if dot(l, h.normal) != 0:
                    return False
        return True

    def set_equal(self, other: "UpperSet") -> bool:
        """Exact set equality; canonical forms make this structural."""
        _check_same_cone(self, other)
        return self.kind == other.kind and self.halfspaces == other.halfspaces

    def translate(self, v) -> "UpperSet":
        """The set D + {v}; canonical form is preserved."""
        v = vec(v)
        check_dim(self.dim, v)
        if self.kind != PROPER:
            return self
        return UpperSet(
            self.cone,
            PROPER,
            tuple(Halfspace(h.normal, h.offset + dot(v, h.normal)) for h in self.halfspaces),
            tuple(vadd(p, v) for p in self.points),
            self.rays,
            self.lineality,
        )

    def scale(self, lam) -> "UpperSet":
        """Pointwise scaling for lam > 0; lam = 0 yields C by convention."""
        lam = Fraction(lam)
        if lam < 0:
            raise ValidationError("scaling by negative scalars leaves the conlinear structure")
        if lam == 0:
            return cone_upper_set(self.cone)
        if self.kind != PROPER:
            return self
        return UpperSet(
            self.cone,
            PROPER,
            tuple(Halfspace(h.normal, lam * h.offset) for h in self.halfspaces),
            tuple(tuple(lam * x for x in p) for p in self.points),
            self.rays,
            self.lineality,
        )

    def oplus(self, other: "UpperSet") -> "UpperSet":
        """cl(D + E), the lattice addition; the empty set absorbs."""
        _check_same_cone(self, other)
        if self.is_empty or other.is_empty:
            return UpperSet.empty(self.cone)
        if self.is_full or other.is_full:
            return UpperSet.full(self.cone)
        sums = {vadd(p, q) for p in self.points for q in other.points}
        return canonicalize(
            self.cone,
            points=sorted(sums),
            rays=self.rays + other.rays,
            lineality=self.lineality + other.lineality,
        )

    def supporting_halfspace(self, w) -> "UpperSet":
        """D ⊕ H(w) = {z : <z, w> >= support(D, w)} for w in the dual cone."""
        w = vec(w)
        check_dim(self.dim, w, "direction")
        if is_zero(w) or not in_dual_cone(self.cone, w):
            raise ValidationError("supporting halfspace direction must lie in C+ \\ {0}")
        if self.is_empty:
            raise ValidationError("supporting halfspace of the empty set is undefined")
        sigma = self.support(w)
        return halfspace_set(self.cone, w, sigma)

    def pointwise_negate(self) -> list[tuple[Vec, Fraction]]:
        """H-rep rows of -D = {-d : d in D}, plumbing for z - D expressions.

        The result is generally a lower set, so it is returned as raw rows
        rather than an UpperSet.
        """
        if self.kind != PROPER:
            raise ValidationError(f"pointwise_negate needs a proper set, got {self.kind}")
        return [(tuple(-x for x in h.normal), h.offset) for h in self.halfspaces]

    def hrep_rows(self) -> list[tuple[Vec, Fraction]]:
        return [(h.normal, h.offset) for h in self.halfspaces]

    def facet_normals(self) -> list[Vec]:
        return [h.normal for h in self.halfspaces]

    def literal(self) -> str:
        """Canonical one-line text form; see workspace for the grammar."""
        if self.is_empty:
            return "empty"
        if self.is_full:
            return "full"
        rows = ", ".join(
            "[" + ", ".join([format_rational(x) for x in h.normal] + [format_rational(h.offset)]) + "]"
            for h in self.halfspaces
        )
        return f"halfspaces: [{rows}]"

    def __str__(self) -> str:
        return self.literal()


def _check_same_cone(a: UpperSet, b: UpperSet) -> None:
    if a.cone != b.cone:
        raise ValidationError("operands belong to different ordering cones")


def _build_proper(cone: Cone, facets) -> UpperSet:
    halfspaces = []
    for w, b in facets:
        if not in_dual_cone(cone, w):
            raise ValidationError(
                f"facet normal {w} escaped the dual cone; input was not closed under C"
            )
        halfspaces.append(Halfspace(w, Fraction(b)))
    points, rays, lineality = hrep_to_vrep(facets, cone.dim)
    if not points:
        raise ValidationError("internal: proper set with empty vertex enumeration")
    return UpperSet(
        cone,
        PROPER,
        tuple(sorted(halfspaces)),
        tuple(points),
        tuple(rays),
        tuple(lineality),
    )


def canonicalize(
    cone: Cone,
    halfspaces: Iterable | None = None,
    points: Iterable | None = None,
    rays: Iterable | None = None,
    lineality: Iterable | None = None,
) -> UpperSet:
    """cl co(input + C) in canonical irredundant dual representation.

    Input is an H-rep (pairs (normal, offset), offset -inf meaning absent),
    a V-rep (points, optional rays/lineality), or both; when both are given
    they must describe the same upper set.  Constraints whose normals leave
    C+ after the closure under C are absorbed, never an error.
    """
    has_h = halfspaces is not None
    has_v = points is not None or rays is not None or lineality is not None
    if not has_h and not has_v:
        raise ValidationError("canonicalize needs an H-rep or a V-rep")
    result_h = _canonicalize_hrep(cone, halfspaces) if has_h else None
    result_v = (
        _canonicalize_vrep(cone, points or (), rays or (), lineality or ()) if has_v else None
    )
    if result_h is not None and result_v is not None:
        if not result_h.set_equal(result_v):
            raise ValidationError(
                "inconsistent representation: halfspaces and points/rays disagree "
                f"({result_h.literal()} vs {result_v.literal()})"
            )
        return result_h
    return result_h if result_h is not None else result_v


def _canonicalize_hrep(cone: Cone, pairs) -> UpperSet:
    rows = []
    for w, b in pairs:
        w = vec(w)
        check_dim(cone.dim, w, "halfspace normal")
        if is_zero(w):
            raise ValidationError("halfspace normal must be nonzero")
        if b == NEG_INF:
            continue  # absent constraint
        if b == POS_INF:
            return UpperSet.empty(cone)
        rows.append((primitive(w), Fraction(b) / _primitive_factor(w)))
    pts, rys, lin = hrep_to_vrep(rows, cone.dim)
    if not pts:
        return UpperSet.empty(cone)
    return _canonicalize_vrep(cone, pts, rys, lin)


def _primitive_factor(w) -> Fraction:
    """The positive k with primitive(w) = w / k."""
    p = primitive(w)
    i = next(i for i, x in enumerate(p) if x != 0)
    return Fraction(w[i], p[i])


def _canonicalize_vrep(cone: Cone, points, rays, lineality) -> UpperSet:
    pts = sorted({vec(p) for p in points})
    for p in pts:
        check_dim(cone.dim, p, "point")
    if not pts:
        return UpperSet.empty(cone)
    ray_set = {primitive(vec(r)) for r in rays} | set(cone.generators)
    ray_set.discard(tuple(0 for _ in range(cone.dim)))
    lin = [vec(l) for l in lineality if not is_zero(vec(l))]
    for r in ray_set:
        check_dim(cone.dim, r, "ray")
    facets = vrep_to_hrep(pts, sorted(ray_set), sorted(lin), cone.dim)
    if not facets:
        return UpperSet.full(cone)
    return _build_proper(cone, facets)


@functools.lru_cache(maxsize=None)
def cone_upper_set(cone: Cone) -> UpperSet:
    """C itself as a member of the lattice (the neutral element of ⊕)."""
    origin = tuple(Fraction(0) for _ in range(cone.dim))
    return canonicalize(cone, points=[origin])


def point_plus_cone(cone: Cone, p) -> UpperSet:
    return canonicalize(cone, points=[vec(p)])


def halfspace_set(cone: Cone, w, b) -> UpperSet:
    """{z : <z, w> >= b} as an upper set; b = -inf gives the full space."""
    w = vec(w)
    check_dim(cone.dim, w, "normal")
    if is_zero(w) or not in_dual_cone(cone, w):
        raise ValidationError("halfspace normal must lie in C+ \\ {0}")
    if b == NEG_INF:
        return UpperSet.full(cone)
    return canonicalize(cone, halfspaces=[(w, Fraction(b))])


def inf_set(cone: Cone, family: Iterable[UpperSet]) -> UpperSet:
    """Greatest lower bound for ⊇: cl co of the union.  inf ∅ = ∅."""
    members = list(family)
    for d in members:
        if d.cone != cone:
            raise ValidationError("family member over a different cone")
    nonempty = [d for d in members if not d.is_empty]
    if not nonempty:
        return UpperSet.empty(cone)
    if any(d.is_full for d in nonempty):
        return UpperSet.full(cone)
    points: set[Vec] = set()
    rays: list[Vec] = []
    lineality: list[Vec] = []
    for d in nonempty:
        points.update(d.points)
        rays.extend(d.rays)
        lineality.extend(d.lineality)
    return canonicalize(cone, points=sorted(points), rays=rays, lineality=lineality)


def sup_set(cone: Cone, family: Iterable[UpperSet]) -> UpperSet:
    """Least upper bound for ⊇: the intersection.  sup ∅ = R^m."""
    members = list(family)
    for d in members:
        if d.cone != cone:
            raise ValidationError("family member over a different cone")
    if any(d.is_empty for d in members):
        return UpperSet.empty(cone)
    rows = [pair for d in members for pair in d.hrep_rows()]
    if not rows:
        return UpperSet.full(cone)
    return canonicalize(cone, halfspaces=rows)
