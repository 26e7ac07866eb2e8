"""The fixed ordering cone, its positive dual, and the compact base polytope."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ddm import dual_cone_vrep
from .linalg import Vec, dot, format_vector, is_zero, primitive, vec

MAX_DIMENSION = 8


class ValidationError(ValueError):
    """A domain invariant is violated by the given data."""


class DimensionMismatchError(ValidationError):
    """Operands live in different ambient dimensions."""


def check_dim(expected: int, v, what: str = "vector") -> None:
    if len(v) != expected:
        raise DimensionMismatchError(f"{what} has dimension {len(v)}, expected {expected}")


def dual_cone(generators: list, dim: int | None = None) -> list[Vec]:
    """Extreme rays of {w : <z, w> >= 0 for all z in cone(generators)}.

    The generated cone must be full-dimensional and different from the whole
    space, which makes the dual pointed and its extreme rays canonical.
    Applying the operation twice returns a generating set of the input cone.
    """
    gens = [vec(g) for g in generators]
    if not gens:
        raise ValidationError("a cone needs at least one generator")
    dim = dim if dim is not None else len(gens[0])
    for g in gens:
        check_dim(dim, g, "generator")
    if all(is_zero(g) for g in gens):
        raise ValidationError("all generators are zero")
    lineality, rays = dual_cone_vrep(gens, dim)
    if lineality:
        raise ValidationError(
            "cone has empty interior (its span is not the whole space); dual is not pointed"
        )
    if not rays:
        raise ValidationError("cone is the whole space; dual is trivial")
    return rays


@dataclass(frozen=True)
class Cone:
    """A closed convex ordering cone C with 0 ∈ C, C ≠ R^m and int C ≠ ∅.

    Stored by generating rays; the dual generators (equivalently the inward
    facet normals of C) are computed, and the distinguished interior point c
    is validated against them.  Immutable and safe to share.
    """

    dim: int
    generators: tuple[Vec, ...]
    interior_point: Vec
    dual_generators: tuple[Vec, ...] = field(init=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIMENSION:
            raise ValidationError(f"dimension must be in 1..{MAX_DIMENSION}, got {self.dim}")
        gens = tuple(primitive(vec(g)) for g in self.generators)
        seen: dict[Vec, None] = {}
        for g in gens:
            check_dim(self.dim, g, "cone generator")
            if not is_zero(g):
                seen.setdefault(g, None)
        if not seen:
            raise ValidationError("cone has no nonzero generators")
        object.__setattr__(self, "generators", tuple(sorted(seen)))
        c = vec(self.interior_point)
        check_dim(self.dim, c, "interior point")
        object.__setattr__(self, "interior_point", c)
        duals = tuple(dual_cone(self.generators, self.dim))
        object.__setattr__(self, "dual_generators", duals)
        for g in self.generators:
            for w in duals:
                if dot(g, w) < 0:
                    raise ValidationError("dual generator fails <g, w> >= 0")
        for w in duals:
            if dot(c, w) <= 0:
                raise ValidationError(
                    f"interior point {format_vector(c)} is not interior: "
                    f"<c, {format_vector(w)}> = {dot(c, w)} is not > 0"
                )

    def contains(self, z) -> bool:
        """Exact membership z ∈ C, via the dual description."""
        z = vec(z)
        check_dim(self.dim, z)
        return all(dot(z, w) >= 0 for w in self.dual_generators)

    def base_polytope(self) -> list[Vec]:
        """Vertices of D(c) = {w ∈ C⁺ : <c, w> = 1}.

        C⁺ is pointed and <c, ·> is strictly positive on it, so D(c) is a
        compact base of C⁺ and its vertices are the normalized extreme rays.
        """
        c = self.interior_point
        return sorted(tuple(Fraction(x, 1) / dot(c, w) for x in w) for w in self.dual_generators)

    def is_pointed(self) -> bool:
        """Whether C contains no line (equivalently C⁺ is full-dimensional)."""
        from .ddm import rref_basis

        return len(rref_basis(self.dual_generators, self.dim)) == self.dim

    def describe(self) -> str:
        gens = " ".join(format_vector(g) for g in self.generators)
        duals = " ".join(format_vector(w) for w in self.dual_generators)
        return (
            f"cone dim={self.dim} generators: {gens} | dual generators: {duals} "
            f"| interior point: {format_vector(self.interior_point)}"
        )


def orthant(dim: int) -> Cone:
    """The nonnegative orthant with interior point (1, ..., 1)."""
    gens = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    return Cone(dim, tuple(gens), tuple(1 for _ in range(dim)))
