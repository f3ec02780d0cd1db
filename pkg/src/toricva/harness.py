"""Hypothesis-to-conclusion checks for adjoint positivity on toric instances.

Each check takes an Instance (complete fan, base divisor, perturbation),
evaluates its hypotheses one by one, and reports the raw conclusion data
alongside.  A failed hypothesis never aborts anything: the report is
tagged not-applicable while still carrying whatever quantities were
computable, so sharpness experiments can inspect conclusions on instances
just outside a statement's reach.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil

from .cones import classify, contains, dual_cone
from .divisors import (
    Divisor,
    NotQCartier,
    canonical_divisor,
    dprime_in_range,
    local_data,
    poly_contains,
    polytope,
    translated_polytope,
)
from .fans import Fan, build_fan
from .hulls import affine_rank, hull_facets, hull_vertices
from .intersections import is_nef, wall_value
from .lambdas import lambda_max, lambda_min
from .linalg import M, N, Vec, det_int, pair, vec
from .semigroups import generates, lattice_points


@dataclass(frozen=True)
class Instance:
    fan: Fan
    d: Divisor
    dprime: Divisor
    label: str

    def __post_init__(self):
        nrays = len(self.fan.rays)
        if len(self.d.coeffs) != nrays or len(self.dprime.coeffs) != nrays:
            raise ValueError("divisor length does not match the fan's ray count")


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    detail: str = ""


@dataclass(frozen=True)
class Failure:
    """One concrete conclusion violation: a cone or wall plus what went wrong."""

    kind: str
    index: int
    message: str


@dataclass(frozen=True)
class ConeData:
    """Per-cone quantities: wall minima for the pair and both coefficient
    sums of the perturbation's local point inside the dual cone."""

    cone_index: int
    t: Fraction | None
    m: Fraction | None
    lambda_min_dual: Fraction | None
    lambda_max_dual: Fraction | None


@dataclass(frozen=True)
class CheckReport:
    statement: str
    label: str
    hypotheses: tuple[Hypothesis, ...]
    conclusion: bool | None
    failures: tuple[Failure, ...]
    cone_data: tuple[ConeData, ...]
    notes: tuple[str, ...] = ()

    @property
    def applicable(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    @property
    def status(self) -> str:
        if not self.applicable:
            return "not_applicable"
        if self.conclusion is None:
            raise RuntimeError("internal: applicable check produced no conclusion")
        return "pass" if self.conclusion else "fail"


def is_projective_space(fan: Fan) -> bool:
    """Recognize the standard fan on n+1 rays summing to zero.

    True iff the primitive rays sum to zero, every n of them form a lattice
    basis, and the maximal cones are exactly the n-element subsets.  This
    pins the fan down up to a lattice automorphism.
    """
    n = fan.rank
    if len(fan.rays) != n + 1:
        return False
    total = fan.rays[0]
    for r in fan.rays[1:]:
        total = total + r
    if not total.is_zero:
        return False
    for subset in combinations(range(n + 1), n):
        if abs(det_int([fan.rays[i].coords for i in subset])) != 1:
            return False
    expected = {tuple(sorted(s)) for s in combinations(range(n + 1), n)}
    return {tuple(sorted(c)) for c in fan.max_cones} == expected


def _try_local(fan: Fan, d: Divisor):
    try:
        return local_data(fan, d), None
    except NotQCartier as exc:
        return None, exc.cone_index


def _min_wall_value(fan: Fan, local) -> Fraction:
    return min(wall_value(fan, local, w) for w in fan.walls)


def cone_table(fan: Fan, local_d, local_dp) -> tuple[ConeData, ...]:
    local_sum = None
    if local_d is not None and local_dp is not None:
        local_sum = tuple(a + b for a, b in zip(local_d, local_dp))
    rows = []
    for ci in range(len(fan.max_cones)):
        walls = fan.walls_of(ci)
        t = m = lmin = lmax = None
        if local_d is not None:
            t = min(wall_value(fan, local_d, w) for w in walls)
        if local_sum is not None:
            m = min(wall_value(fan, local_sum, w) for w in walls)
        if local_dp is not None:
            dual = dual_cone(fan.cones[ci])
            up = local_dp[ci]
            if contains(dual, up):
                lmin = lambda_min(dual, up).value
                lmax = lambda_max(dual, up).value
        rows.append(ConeData(ci, t, m, lmin, lmax))
    return tuple(rows)


def _shared_hypotheses(inst: Instance, threshold: int, exclude_pspace: bool):
    """Hypotheses common to the global adjoint statements."""
    fan = inst.fan
    hyps = []
    if exclude_pspace:
        isp = is_projective_space(fan)
        hyps.append(
            Hypothesis(
                "fan_is_not_projective_space",
                not isp,
                "fan is the standard projective-space fan" if isp else "",
            )
        )
    local_d, bad_d = _try_local(fan, inst.d)
    hyps.append(
        Hypothesis(
            "base_divisor_q_cartier",
            local_d is not None,
            "" if local_d is not None else f"no local data on cone {bad_d}",
        )
    )
    local_dp, bad_dp = _try_local(fan, inst.dprime)
    hyps.append(
        Hypothesis(
            "perturbation_q_cartier",
            local_dp is not None,
            "" if local_dp is not None else f"no local data on cone {bad_dp}",
        )
    )
    hyps.append(
        Hypothesis(
            "perturbation_between_zero_and_canonical",
            dprime_in_range(fan, inst.dprime),
            "",
        )
    )
    if local_d is not None:
        mv = _min_wall_value(fan, local_d)
        hyps.append(
            Hypothesis(
                "wall_values_meet_threshold",
                mv >= threshold,
                f"minimum wall value {mv}, threshold {threshold}",
            )
        )
    else:
        hyps.append(
            Hypothesis("wall_values_meet_threshold", False, "wall values unavailable")
        )
    return hyps, local_d, local_dp


def generation_scan(fan: Fan, d: Divisor, local) -> tuple[tuple[Failure, ...], bool]:
    """Test on every maximal cone whether the shifted divisor polytope's
    lattice points generate the dual-cone semigroup.  Returns the failures
    and whether any lattice point had to be clipped to the dual cone."""
    p = polytope(fan, d)
    failures = []
    clipped = False
    for ci, u in enumerate(local):
        shifted = translated_polytope(p, u)
        pts = lattice_points(shifted)
        dual = dual_cone(fan.cones[ci])
        inside = [x for x in pts if contains(dual, x)]
        if len(inside) != len(pts):
            clipped = True
        res = generates(inside, dual)
        if not res.generates:
            failures.append(
                Failure("cone", ci, f"missing semigroup generator {res.witness.coords}")
            )
    return tuple(failures), clipped


def check_generation(inst: Instance) -> CheckReport:
    """Wall threshold n+1 (projective space excluded) forces the shifted
    polytope of the perturbed divisor to generate every dual-cone semigroup."""
    fan = inst.fan
    hyps, local_d, local_dp = _shared_hypotheses(inst, fan.rank + 1, exclude_pspace=True)
    total = inst.d + inst.dprime
    local_sum, _ = _try_local(fan, total)
    conclusion = None
    failures: tuple[Failure, ...] = ()
    notes: list[str] = []
    if local_sum is not None:
        failures, clipped = generation_scan(fan, total, local_sum)
        if clipped:
            notes.append("some shifted polytope points fell outside the dual cone and were ignored")
        conclusion = not failures
        if conclusion and all(u.is_lattice for u in local_sum):
            notes.append("combined divisor is Cartier and generates everywhere: very ample")
    return CheckReport(
        "adjoint-generation",
        inst.label,
        tuple(hyps),
        conclusion,
        tuple(failures),
        cone_table(fan, local_d, local_dp),
        tuple(notes),
    )


def _nef_report(inst: Instance, statement: str, threshold: int, exclude_pspace: bool) -> CheckReport:
    fan = inst.fan
    hyps, local_d, local_dp = _shared_hypotheses(inst, threshold, exclude_pspace)
    total = inst.d + inst.dprime
    local_sum, _ = _try_local(fan, total)
    conclusion = None
    failures: list[Failure] = []
    if local_sum is not None:
        for wi, w in enumerate(fan.walls):
            val = wall_value(fan, local_sum, w)
            if val < 0:
                failures.append(Failure("wall", wi, f"combined divisor meets curve at {val}"))
        conclusion = is_nef(fan, total)
        if conclusion != (not failures):
            raise RuntimeError("internal: nef verdict disagrees with wall scan")
    return CheckReport(
        statement,
        inst.label,
        tuple(hyps),
        conclusion,
        tuple(failures),
        cone_table(fan, local_d, local_dp),
    )


def check_nef_excluding_pspace(inst: Instance) -> CheckReport:
    """Wall threshold n, projective space excluded: the perturbed divisor is nef."""
    return _nef_report(inst, "adjoint-nef-sharp", inst.fan.rank, exclude_pspace=True)


def check_nef_threshold(inst: Instance) -> CheckReport:
    """Wall threshold n+1, no exclusion: the perturbed divisor is nef."""
    return _nef_report(inst, "adjoint-nef", inst.fan.rank + 1, exclude_pspace=False)


def check_wall_bound(inst: Instance, sigma: int, r=None) -> CheckReport:
    """Per-cone lower bound m >= t - lambda_min(u'_sigma) - r on wall minima.

    With r omitted, r = 1 and the hypothesis is the global coefficient range
    0 >= D' >= canonical.  With r supplied, the hypotheses localize: the
    perturbation is nonpositive on the cone's rays and every adjacent cone
    has an outside ray with coefficient >= -r.
    """
    fan = inst.fan
    local_d = local_data(fan, inst.d)
    if not is_nef(fan, inst.d):
        raise ValueError("wall minimum bound requires a nef base divisor")
    local_dp = local_data(fan, inst.dprime)
    if not 0 <= sigma < len(fan.max_cones):
        raise ValueError("no such maximal cone")
    walls = fan.walls_of(sigma)
    local_sum = tuple(a + b for a, b in zip(local_d, local_dp))
    t = min(wall_value(fan, local_d, w) for w in walls)
    m = min(wall_value(fan, local_sum, w) for w in walls)

    hyps = []
    if r is None:
        rr = Fraction(1)
        hyps.append(
            Hypothesis(
                "perturbation_between_zero_and_canonical",
                dprime_in_range(fan, inst.dprime),
                "",
            )
        )
    else:
        rr = Fraction(r)
        if rr <= 0:
            raise ValueError("r must be positive")
        on_cone = all(inst.dprime.coeffs[i] <= 0 for i in fan.max_cones[sigma])
        hyps.append(
            Hypothesis("perturbation_nonpositive_on_cone", on_cone, "")
        )
        floors = all(
            any(inst.dprime.coeffs[j] >= -rr for j in w.outside) for w in walls
        )
        hyps.append(
            Hypothesis(
                "adjacent_cones_have_floor_ray",
                floors,
                f"each adjacent cone needs an outside ray with coefficient >= {-rr}",
            )
        )

    dual = dual_cone(fan.cones[sigma])
    up = local_dp[sigma]
    lmin = lmax = None
    if contains(dual, up):
        lmin = lambda_min(dual, up).value
        lmax = lambda_max(dual, up).value
    if lmin is None:
        hyps.append(
            Hypothesis(
                "threshold",
                False,
                "perturbation's local point lies outside the dual cone",
            )
        )
        conclusion = None
        failures: tuple[Failure, ...] = ()
    else:
        hyps.append(
            Hypothesis(
                "threshold",
                t >= lmin,
                f"t = {t}, lambda_min = {lmin}",
            )
        )
        bound = t - lmin - rr
        conclusion = m >= bound
        failures = (
            ()
            if conclusion
            else (Failure("cone", sigma, f"minimum {m} is below the bound {bound}"),)
        )
    return CheckReport(
        "wall-minimum-bound",
        inst.label,
        tuple(hyps),
        conclusion,
        failures,
        (ConeData(sigma, t, m, lmin, lmax),),
    )


def check_corner_containment(inst: Instance) -> CheckReport:
    """Under the generation hypotheses, each shifted polytope contains the
    origin and every primitive generator of its dual cone."""
    fan = inst.fan
    hyps, local_d, local_dp = _shared_hypotheses(inst, fan.rank + 1, exclude_pspace=True)
    total = inst.d + inst.dprime
    local_sum, _ = _try_local(fan, total)
    conclusion = None
    failures: list[Failure] = []
    if local_sum is not None:
        p = polytope(fan, total)
        for ci, u in enumerate(local_sum):
            shifted = translated_polytope(p, u)
            dual = dual_cone(fan.cones[ci])
            zero = vec((0,) * fan.rank, M)
            for target in (zero, *dual.rays):
                if not poly_contains(shifted, target):
                    failures.append(
                        Failure("cone", ci, f"shifted polytope misses {target.coords}")
                    )
        conclusion = not failures
    return CheckReport(
        "corner-containment",
        inst.label,
        tuple(hyps),
        conclusion,
        tuple(failures),
        cone_table(fan, local_d, local_dp),
    )


def check_interior_bound(inst: Instance, sigma: int, bound: int = 5) -> CheckReport:
    """lambda_max of the perturbation's local point is at most lambda_max of
    every interior lattice point of the dual cone (coordinates up to `bound`)."""
    fan = inst.fan
    if not 0 <= sigma < len(fan.max_cones):
        raise ValueError("no such maximal cone")
    hyps = []
    local_dp, bad = _try_local(fan, inst.dprime)
    hyps.append(
        Hypothesis(
            "perturbation_q_cartier",
            local_dp is not None,
            "" if local_dp is not None else f"no local data on cone {bad}",
        )
    )
    hyps.append(
        Hypothesis(
            "perturbation_between_zero_and_canonical",
            dprime_in_range(fan, inst.dprime),
            "",
        )
    )
    conclusion = None
    failures: list[Failure] = []
    notes: list[str] = []
    lmin = lmax = None
    if local_dp is not None:
        dual = dual_cone(fan.cones[sigma])
        up = local_dp[sigma]
        if contains(dual, up):
            lmin = lambda_min(dual, up).value
            lmax = lambda_max(dual, up).value
            checked = 0
            for coords in product(range(-bound, bound + 1), repeat=fan.rank):
                x = vec(coords, M)
                if not contains(dual, x, strict=True):
                    continue
                checked += 1
                if lambda_max(dual, x).value < lmax:
                    failures.append(
                        Failure("cone", sigma, f"interior point {coords} has smaller maximum sum")
                    )
            notes.append(f"checked {checked} interior lattice points with coordinate bound {bound}")
            conclusion = not failures
    return CheckReport(
        "interior-point-bound",
        inst.label,
        tuple(hyps),
        conclusion,
        tuple(failures),
        (ConeData(sigma, None, None, lmin, lmax),),
        tuple(notes),
    )


def check_nonregular_bound(inst: Instance, sigma: int) -> CheckReport:
    """Non-regular cones force lambda_min of the perturbation's local point
    down to n-1 or less."""
    fan = inst.fan
    if not 0 <= sigma < len(fan.max_cones):
        raise ValueError("no such maximal cone")
    cls = classify(fan.cones[sigma])
    hyps = [
        Hypothesis(
            "cone_not_regular",
            not cls.regular,
            "cone is regular" if cls.regular else "",
        )
    ]
    local_dp, bad = _try_local(fan, inst.dprime)
    hyps.append(
        Hypothesis(
            "perturbation_q_cartier",
            local_dp is not None,
            "" if local_dp is not None else f"no local data on cone {bad}",
        )
    )
    hyps.append(
        Hypothesis(
            "perturbation_between_zero_and_canonical",
            dprime_in_range(fan, inst.dprime),
            "",
        )
    )
    conclusion = None
    failures: tuple[Failure, ...] = ()
    lmin = lmax = None
    if local_dp is not None:
        dual = dual_cone(fan.cones[sigma])
        up = local_dp[sigma]
        if contains(dual, up):
            lmin = lambda_min(dual, up).value
            lmax = lambda_max(dual, up).value
            conclusion = lmin <= fan.rank - 1
            if not conclusion:
                failures = (
                    Failure("cone", sigma, f"lambda_min {lmin} exceeds {fan.rank - 1}"),
                )
    return CheckReport(
        "nonregular-cone-bound",
        inst.label,
        tuple(hyps),
        conclusion,
        failures,
        (ConeData(sigma, None, None, lmin, lmax),),
    )


def polytope_fan(points) -> tuple[Fan, Divisor]:
    """Normal fan of a full-dimensional lattice polytope plus its support divisor.

    The divisor's polytope is exactly conv(points); it is ample on the
    returned fan, so every wall value is a positive edge length.
    """
    pts = [p if isinstance(p, Vec) else vec(p, M) for p in points]
    facets = hull_facets(pts)
    rays = [phi for phi, _ in facets]
    coeffs = tuple(-level for _, level in facets)
    cones = []
    for v in hull_vertices(pts):
        tight = tuple(
            i for i, (phi, level) in enumerate(facets) if pair(phi, v) == level
        )
        cones.append(tight)
    fan = build_fan(rays, sorted(cones), pts[0].rank)
    return fan, Divisor(coeffs)


def projective_space(n: int, t: int | None = None) -> Instance:
    if n < 2:
        raise ValueError("dimension must be at least 2")
    t = n + 1 if t is None else t
    rays = [vec((-1,) * n, N)] + [
        vec(tuple(int(i == j) for j in range(n)), N) for i in range(n)
    ]
    cones = [tuple(sorted(s)) for s in combinations(range(n + 1), n)]
    fan = build_fan(rays, cones, n)
    d = Divisor((t,) + (0,) * n)
    return Instance(fan, d, canonical_divisor(fan), f"projective_space({n},t={t})")


def weighted_112(t: int = 1) -> Instance:
    fan = build_fan(
        [vec((1, 1), N), vec((-1, 1), N), vec((0, -1), N)],
        [(0, 1), (1, 2), (2, 0)],
        2,
    )
    d = Divisor((t, 0, 0))
    return Instance(fan, d, canonical_divisor(fan), f"weighted_112(t={t})")


def hirzebruch(a: int, coeffs) -> Instance:
    if a < 0:
        raise ValueError("twist must be nonnegative")
    fan = build_fan(
        [vec((1, 0), N), vec((0, 1), N), vec((-1, a), N), vec((0, -1), N)],
        [(0, 1), (1, 2), (2, 3), (3, 0)],
        2,
    )
    cs = tuple(coeffs)
    if len(cs) != 4:
        raise ValueError("need four coefficients")
    return Instance(fan, Divisor(cs), canonical_divisor(fan), f"hirzebruch({a})")


def product_p1(a: int, b: int) -> Instance:
    fan = build_fan(
        [vec((1, 0), N), vec((0, 1), N), vec((-1, 0), N), vec((0, -1), N)],
        [(0, 1), (1, 2), (2, 3), (3, 0)],
        2,
    )
    d = Divisor((a, b, 0, 0))
    return Instance(fan, d, canonical_divisor(fan), f"product_p1({a},{b})")


def intro_simplex(us, t: int, corner_perturbation: bool = False) -> Instance:
    """Normal fan of the simplex conv{0, u_1..u_n} with the support divisor
    scaled by t.  The default perturbation is the canonical representative;
    the corner variant puts -1 exactly on the rays of the cone dual to the
    origin vertex."""
    base_pts = [vec(u, M) if not isinstance(u, Vec) else u for u in us]
    n = base_pts[0].rank
    if len(base_pts) != n:
        raise ValueError("need exactly n spanning lattice points")
    fan, base = polytope_fan([vec((0,) * n, M)] + base_pts)
    if t < 1:
        raise ValueError("scale must be positive")
    d = t * base
    if corner_perturbation:
        dp = Divisor(tuple(-1 if c == 0 else 0 for c in base.coeffs))
    else:
        dp = canonical_divisor(fan)
    label = f"intro_simplex(n={n},t={t})"
    return Instance(fan, d, dp, label)


def ew_simplex(t: int) -> Instance:
    inst = intro_simplex([(1, 0, 0), (0, 1, 0), (1, 1, 2)], t)
    return Instance(inst.fan, inst.d, inst.dprime, f"ew_simplex(t={t})")


@dataclass(frozen=True)
class RandomConfig:
    max_points: int = 6
    box: int = 4
    target_t: int = 3
    max_denominator: int = 2
    retries: int = 60


def default_config(dim: int) -> RandomConfig:
    return RandomConfig(
        max_points=6,
        box=4 if dim == 2 else 2,
        target_t=dim + 1,
        max_denominator=2,
        retries=60,
    )


def random_instance(dim: int, seed: int, cfg: RandomConfig | None = None) -> Instance:
    """Deterministic random instance: normal fan of a random lattice polytope,
    support divisor scaled until every wall value reaches cfg.target_t, and a
    random perturbation with coefficients in [-1, 0].

    Samples are rejected until every maximal cone is simplicial, so the random
    perturbation always has local data.
    """
    if dim not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    cfg = cfg if cfg is not None else default_config(dim)
    rng = _random.Random(f"toricva:{dim}:{seed}")
    fan = base = None
    for _ in range(cfg.retries):
        count = rng.randint(dim + 1, max(dim + 1, cfg.max_points))
        raw = [
            tuple(rng.randint(-cfg.box, cfg.box) for _ in range(dim))
            for _ in range(count)
        ]
        pts = [vec(p, M) for p in sorted(set(raw))]
        if len(pts) <= dim or affine_rank(pts) < dim:
            continue
        cand_fan, cand_base = polytope_fan(pts)
        if any(not classify(c).simplicial for c in cand_fan.cones):
            continue
        fan, base = cand_fan, cand_base
        break
    if fan is None:
        raise ValueError(f"no full-dimensional sample after {cfg.retries} retries")
    local = local_data(fan, base)
    minv = _min_wall_value(fan, local)
    scale = max(1, ceil(Fraction(cfg.target_t) / minv))
    coeffs = []
    for _ in fan.rays:
        den = rng.randint(1, cfg.max_denominator)
        num = rng.randint(-den, 0)
        coeffs.append(Fraction(num, den))
    return Instance(
        fan, scale * base, Divisor(tuple(coeffs)), f"random(dim={dim},seed={seed})"
    )


BUILTIN_NAMES = (
    "projective_space",
    "weighted_112",
    "hirzebruch",
    "product_p1",
    "intro_simplex_2d",
    "intro_simplex_3d",
    "ew_simplex",
)


def builtin(name: str, args: tuple = ()) -> Instance:
    """Instance registry used by the command line: name plus integer args."""
    args = tuple(args)
    if name == "projective_space":
        if len(args) not in (1, 2):
            raise ValueError("projective_space takes (n) or (n, t)")
        return projective_space(*args)
    if name == "weighted_112":
        if len(args) > 1:
            raise ValueError("weighted_112 takes at most (t)")
        return weighted_112(*args) if args else weighted_112()
    if name == "hirzebruch":
        if len(args) != 5:
            raise ValueError("hirzebruch takes (a, c0, c1, c2, c3)")
        return hirzebruch(args[0], args[1:])
    if name == "product_p1":
        if len(args) != 2:
            raise ValueError("product_p1 takes (a, b)")
        return product_p1(*args)
    if name == "intro_simplex_2d":
        if len(args) != 1:
            raise ValueError("intro_simplex_2d takes (t)")
        return intro_simplex([(1, 0), (1, 2)], args[0], corner_perturbation=True)
    if name == "intro_simplex_3d":
        if len(args) != 1:
            raise ValueError("intro_simplex_3d takes (t)")
        return intro_simplex(
            [(1, 0, 0), (0, 1, 0), (1, 1, 2)], args[0], corner_perturbation=True
        )
    if name == "ew_simplex":
        if len(args) != 1:
            raise ValueError("ew_simplex takes (t)")
        return ew_simplex(args[0])
    raise ValueError(f"unknown builtin {name!r}")
