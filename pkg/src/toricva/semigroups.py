"""Lattice point and semigroup computations, exact throughout.

The centrepiece is the Hilbert basis of a pointed cone: the unique minimal
generating set of the semigroup of lattice points.  It is computed by
triangulating the cone, enumerating lattice points of the half-open
fundamental parallelepiped of every simplicial piece, and pruning the
reducible candidates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, prod

from .cones import Cone, cone_from_generators, contains
from .divisors import Polytope, is_bounded, poly_contains
from .lambdas import m_delta_contains
from .linalg import Vec, diagonalize_int, pair, solve_matrix, vec


def lattice_points(p: Polytope) -> tuple[Vec, ...]:
    """All lattice points of a bounded polytope, sorted by coordinates."""
    if not is_bounded(p):
        raise ValueError("unbounded region")
    if not p.vertices:
        return ()
    rank = p.vertices[0].rank
    amb = p.vertices[0].ambient
    los = [min(ceil(v.coords[i]) for v in p.vertices) for i in range(rank)]
    his = [max(floor(v.coords[i]) for v in p.vertices) for i in range(rank)]
    out = []
    for coords in product(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
        x = vec(coords, amb)
        if poly_contains(p, x):
            out.append(x)
    return tuple(out)


def simplex_lattice_points(c: Cone, m) -> tuple[Vec, ...]:
    """Lattice points x of c with minimum coefficient sum at most m."""
    m = Fraction(m)
    if m < 0:
        return ()
    rank = c.rank
    corners = [vec((0,) * rank, c.ambient)] + [m * r for r in c.rays]
    los = [min(ceil(v.coords[i]) for v in corners) for i in range(rank)]
    his = [max(floor(v.coords[i]) for v in corners) for i in range(rank)]
    out = []
    for coords in product(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
        x = vec(coords, c.ambient)
        if m_delta_contains(c, m, x):
            out.append(x)
    return tuple(out)


def _triangulate(c: Cone) -> list[tuple[Vec, ...]]:
    """Split a pointed cone into simplicial cones on the same ray set."""
    if len(c.rays) == c.dim:
        return [c.rays]
    pivot = c.rays[0]
    out = []
    for f in c.facet_normals:
        if pair(f, pivot) == 0:
            continue
        tight = [r for r in c.rays if pair(f, r) == 0]
        for simplex in _triangulate(cone_from_generators(tight)):
            out.append(simplex + (pivot,))
    return out


def _inverse(cols: list[tuple]) -> list[list[Fraction]]:
    n = len(cols)
    rows = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        scale = rows[col][col]
        rows[col] = [v / scale for v in rows[col]]
        inv[col] = [v / scale for v in inv[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                k = rows[r][col]
                rows[r] = [a - k * b for a, b in zip(rows[r], rows[col])]
                inv[r] = [a - k * b for a, b in zip(inv[r], inv[col])]
    return inv


def _parallelepiped_points(gens: tuple[Vec, ...]) -> list[Vec]:
    """Lattice points of {sum a_i g_i : 0 <= a_i < 1} for independent g_i."""
    n = gens[0].rank
    amb = gens[0].ambient
    if len(gens) == n:
        w = [[g.coords[i] for g in gens] for i in range(n)]
        p_mat, d_mat, _ = diagonalize_int(w)
        dets = [abs(d_mat[i][i]) for i in range(n)]
        vol = prod(dets)
        if vol == 0:
            raise ValueError("generators are linearly dependent")
        w_inv = _inverse([g.coords for g in gens])
        out = []
        for k in product(*[range(d) for d in dets]):
            z = [sum(p_mat[i][j] * k[j] for j in range(n)) for i in range(n)]
            a = [sum(w_inv[i][j] * z[j] for j in range(n)) for i in range(n)]
            frac = [ai - floor(ai) for ai in a]
            x = [sum(f * g.coords[i] for f, g in zip(frac, gens)) for i in range(n)]
            if any(xi.denominator != 1 for xi in map(Fraction, x)):
                raise RuntimeError("internal: reduced representative is not a lattice point")
            out.append(vec([int(xi) for xi in x], amb))
        if len(set(out)) != vol:
            raise RuntimeError("internal: parallelepiped point count is off")
        return out
    # Lower-dimensional pieces: scan the bounding box and solve exactly.
    los = [sum(min(0, g.coords[i]) for g in gens) for i in range(n)]
    his = [sum(max(0, g.coords[i]) for g in gens) for i in range(n)]
    rows = [[g.coords[i] for g in gens] for i in range(n)]
    out = []
    for coords in product(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
        res = solve_matrix(rows, list(coords))
        if res.status != "unique":
            continue
        if all(0 <= a < 1 for a in res.solution):
            out.append(vec(coords, amb))
    return out


def hilbert_basis(c: Cone) -> tuple[Vec, ...]:
    """Minimal generating set of the lattice points of a pointed cone."""
    cands = set(c.rays)
    for simplex in _triangulate(c):
        for x in _parallelepiped_points(simplex):
            if not x.is_zero:
                cands.add(x)
    basis = []
    for h in sorted(cands, key=lambda v: v.coords):
        reducible = any(s != h and contains(c, h - s) for s in cands)
        if not reducible:
            basis.append(h)
    return tuple(basis)


@dataclass(frozen=True)
class GenerationResult:
    """Whether a point set generates the cone's lattice semigroup.

    When it does not, `witness` is the first missing irreducible element
    in coordinate order.
    """

    generates: bool
    witness: Vec | None


def generates(points, c: Cone) -> GenerationResult:
    pts = list(points)
    for x in pts:
        if not x.is_lattice:
            raise ValueError("generators must be lattice points")
        if not contains(c, x):
            raise ValueError("point outside cone")
    have = set(pts)
    for h in hilbert_basis(c):
        if h not in have:
            return GenerationResult(False, h)
    return GenerationResult(True, None)


def semigroup_member(gens, target: Vec, bound: int) -> bool:
    """Is target a sum of at most `bound` of the given lattice points?"""
    gs = [g for g in gens if not g.is_zero]
    for g in gs:
        if not g.is_lattice:
            raise ValueError("generators must be lattice points")
    if not target.is_lattice:
        return False
    seen: dict[tuple, bool] = {}

    def reach(t: tuple, k: int) -> bool:
        if all(v == 0 for v in t):
            return True
        if k == 0:
            return False
        key = (t, k)
        if key in seen:
            return seen[key]
        seen[key] = False
        for g in gs:
            rest = tuple(a - b for a, b in zip(t, g.coords))
            if reach(rest, k - 1):
                seen[key] = True
                break
        return seen[key]

    return reach(tuple(target.coords), int(bound))
