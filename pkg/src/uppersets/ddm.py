"""Double description method over exact rationals, sized for desk-scale cones.

One primitive does all the conversions: ``cone_vrep`` computes a minimal
V-representation (lineality basis + extreme rays) of ``{x : <row, x> >= 0}``.
Dual cones use it directly; polyhedron conversions go through the usual
homogenization in one extra dimension.

Rays are kept as primitive integer vectors throughout, so the inner loops run
on machine ints.  Adjacency of rays uses the combinatorial zero-set test,
which is valid because the description is kept minimal at every step.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Vec, dot, is_zero, primitive, vneg, vscale, vsub


class GeometryError(ValueError):
    """Raised when a polyhedral computation is malformed or out of scale."""


MAX_RAYS = 20000


def _unit(dim: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(dim))


def rref_basis(vectors, dim: int) -> list[Vec]:
    """Canonical (reduced row echelon, primitive) basis of span(vectors)."""
    mat = [[Fraction(x) for x in v] for v in vectors if not is_zero(v)]
    basis: list[list[Fraction]] = []
    r = 0
    for col in range(dim):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    for row in mat[:r]:
        basis.append(list(row))
    return [primitive(tuple(row)) for row in basis]


def cone_vrep(rows, dim: int) -> tuple[list[Vec], list[Vec]]:
    """Minimal V-rep (lineality basis, extreme rays) of {x : <row,x> >= 0 ∀rows}.

    Extreme rays are modulo the lineality space; both come back as sorted
    primitive integer vectors.  The zero cone yields ([], []).
    """
    prows = sorted({primitive(tuple(r)) for r in rows if not is_zero(tuple(r))})
    lin: list[Vec] = [_unit(dim, i) for i in range(dim)]
    rays: list[list] = []  # [vector, zero-set bitmask over processed rows]
    processed: list[Vec] = []

    for a in prows:
        bit = 1 << len(processed)
        full_mask = bit - 1
        lin_vals = [dot(a, v) for v in lin]
        pivot = next((i for i, val in enumerate(lin_vals) if val != 0), None)
        if pivot is not None:
            v0, val0 = lin[pivot], lin_vals[pivot]
            if val0 < 0:
                v0, val0 = vneg(v0), -val0
            new_lin = []
            for i, v in enumerate(lin):
                if i == pivot:
                    continue
                if lin_vals[i] == 0:
                    new_lin.append(v)
                else:
                    new_lin.append(primitive(vsub(vscale(val0, v), vscale(lin_vals[i], v0))))
            for entry in rays:
                val = dot(a, entry[0])
                if val != 0:
                    entry[0] = primitive(vsub(vscale(val0, entry[0]), vscale(val, v0)))
                entry[1] |= bit  # projected rays are tight at the new row
            lin = new_lin
            rays.append([primitive(v0), full_mask])
        else:
            vals = [dot(a, entry[0]) for entry in rays]
            pos = [entry for entry, v in zip(rays, vals) if v > 0]
            zero = [entry for entry, v in zip(rays, vals) if v == 0]
            neg = [entry for entry, v in zip(rays, vals) if v < 0]
            for entry in zero:
                entry[1] |= bit
            combined: dict[Vec, list] = {}
            if pos and neg:
                val_of = {id(entry): v for entry, v in zip(rays, vals)}
                for p in pos:
                    for n in neg:
                        meet = p[1] & n[1]
                        adjacent = True
                        for other in rays:
                            if other is p or other is n:
                                continue
                            if meet & other[1] == meet:
                                adjacent = False
                                break
                        if not adjacent:
                            continue
                        vecq = primitive(
                            vsub(vscale(val_of[id(p)], n[0]), vscale(val_of[id(n)], p[0]))
                        )
                        if is_zero(vecq) or vecq in combined:
                            continue
                        mask = bit  # tight at the current row by construction
                        for j, row in enumerate(processed):
                            if dot(row, vecq) == 0:
                                mask |= 1 << j
                        combined[vecq] = [vecq, mask]
            rays = pos + zero + list(combined.values())
            if len(rays) > MAX_RAYS:
                raise GeometryError(f"ray count exceeded desk scale ({MAX_RAYS})")
        processed.append(a)

    out_rays = sorted(entry[0] for entry in rays)
    return rref_basis(lin, dim), out_rays


def dual_cone_vrep(generators, dim: int) -> tuple[list[Vec], list[Vec]]:
    """V-rep of the positive dual {w : <g, w> >= 0 for every generator g}."""
    return cone_vrep(generators, dim)


def hrep_to_vrep(ineqs, dim: int) -> tuple[list[Vec], list[Vec], list[Vec]]:
    """V-rep (points, rays, lineality) of {z : <z, w> >= b for (w, b) in ineqs}.

    Points come back as Fraction tuples, one per minimal face; rays and
    lineality as primitive integer vectors.  An infeasible system yields no
    points.
    """
    rows = [tuple(w) + (-Fraction(b),) for w, b in ineqs]
    rows.append(_unit(dim + 1, dim))  # homogenization variable >= 0
    lin, rays = cone_vrep(rows, dim + 1)
    points: list[Vec] = []
    rec: list[Vec] = []
    for r in rays:
        t = r[dim]
        if t > 0:
            points.append(tuple(Fraction(x, t) for x in r[:dim]))
        else:
            rec.append(primitive(r[:dim]))
    lin_out = []
    for v in lin:
        if v[dim] != 0:
            raise GeometryError("homogenization lineality with nonzero level")
        lin_out.append(primitive(v[:dim]))
    return sorted(points), sorted(rec), sorted(lin_out)


def vrep_to_hrep(points, rays, lineality, dim: int) -> list[tuple[Vec, Fraction]]:
    """Irredundant facets (w, b) of conv(points) + cone(rays) + span(lineality).

    Requires at least one point and a full-dimensional result; facets mean
    {z : <z, w> >= b} with primitive integer normals.  A full-space input
    yields an empty facet list.
    """
    if not points:
        raise GeometryError("vrep_to_hrep needs at least one point")
    rows = [tuple(p) + (1,) for p in points]
    rows += [tuple(r) + (0,) for r in rays]
    for l in lineality:
        rows.append(tuple(l) + (0,))
        rows.append(vneg(l) + (0,))
    lin, facet_rays = cone_vrep(rows, dim + 1)
    if lin:
        raise GeometryError("facet enumeration on a lower-dimensional polyhedron")
    facets = []
    for f in facet_rays:
        normal, shift = f[:dim], f[dim]
        if is_zero(normal):
            continue  # the trivial valid inequality 1 >= 0
        prim = primitive(normal)
        i = next(i for i, x in enumerate(prim) if x != 0)
        factor = Fraction(normal[i], prim[i])  # positive
        facets.append((prim, Fraction(-shift) / factor))
    return sorted(facets)


def hrep_feasible(ineqs, dim: int) -> bool:
    """Whether {z : <z, w> >= b for (w, b) in ineqs} is nonempty."""
    points, _, _ = hrep_to_vrep(ineqs, dim)
    return bool(points)
