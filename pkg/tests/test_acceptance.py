"""Acceptance gate: every criterion runs here, one pass/fail line each.

Run with `pytest tests/test_acceptance.py -v` (add -s to see the printed
criterion lines on success; they always appear in failure output).
"""

import random
import time
from fractions import Fraction
from itertools import product

import pytest

from oracles import sum_range
from toricva.cones import classify, cone_from_generators, contains, dual_cone
from toricva.divisors import Divisor, local_data, poly_contains, polytope, translated_polytope
from toricva.harness import (
    builtin,
    check_corner_containment,
    check_generation,
    check_interior_bound,
    check_nef_excluding_pspace,
    check_nef_threshold,
    check_nonregular_bound,
    check_wall_bound,
    generation_scan,
    projective_space,
    random_instance,
    weighted_112,
)
from toricva.intersections import edge_lengths, is_nef, wall_value, wall_values
from toricva.lambdas import lambda_max, lambda_min
from toricva.linalg import M, N, vec
from toricva.semigroups import (
    generates,
    hilbert_basis,
    lattice_points,
    semigroup_member,
    simplex_lattice_points,
)


@pytest.fixture(scope="module")
def pool2():
    return [random_instance(2, s) for s in range(130)]


@pytest.fixture(scope="module")
def pool3():
    return [random_instance(3, s) for s in range(30)]


def _ok(n, detail):
    print(f"criterion {n}: PASS ({detail})")


def test_criterion_01_weighted_surface_exact_values():
    start = time.monotonic()
    inst = weighted_112()
    rep = check_wall_bound(inst, 1)
    cd = rep.cone_data[0]
    assert cd.t == Fraction(1, 2)
    assert cd.lambda_min_dual == 2
    assert cd.m == -3
    # outside the threshold hypothesis the bound genuinely fails
    assert rep.status == "not_applicable"
    assert rep.conclusion is False
    assert Fraction(-3) < Fraction(1, 2) - 2 - 1
    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    _ok(1, f"t=1/2, lambda_min=2, m=-3 in {elapsed:.2f}s")


def test_criterion_02_skew_simplex_semigroup_gap():
    start = time.monotonic()
    u1, u2, u3 = vec((1, 0, 0), M), vec((0, 1, 0), M), vec((1, 1, 2), M)
    c = cone_from_generators([u1, u2, u3])
    delta = simplex_lattice_points(c, 1)
    assert set(delta) == {vec((0, 0, 0), M), u1, u2, u3}
    hb = hilbert_basis(c)
    assert vec((1, 1, 1), M) in hb
    res = generates(delta, c)
    assert not res.generates
    assert res.witness == vec((1, 1, 1), M)
    # exhaustively: the generated semigroup hits exactly the even third
    # coordinates, out to coordinate bound 6
    gens = [p for p in delta if not p.is_zero]
    psi = vec((1, 1, 1), N)  # positive on the cone, integer on lattice points
    checked = 0
    for coords in product(range(7), repeat=3):
        x = vec(coords, M)
        if not contains(c, x) or x.is_zero:
            continue
        budget = sum(a * b for a, b in zip(psi.coords, coords))
        member = semigroup_member(gens, x, int(budget))
        assert member == (coords[2] % 2 == 0), coords
        checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 5.0
    _ok(2, f"witness (1,1,1), {checked} points parity-checked in {elapsed:.2f}s")


def test_criterion_03_wall_identity_and_edge_lengths(pool2, pool3):
    start = time.monotonic()
    instances = pool2[:35] + pool3[:15]
    walls = edges = 0
    for inst in instances:
        fan = inst.fan
        local = local_data(fan, inst.d)
        assert is_nef(fan, inst.d)
        for w in fan.walls:
            value = wall_value(fan, local, w)
            assert local[w.tau] - local[w.sigma] == value * w.u
            walls += 1
        for e in edge_lengths(fan, inst.d):
            assert e.value == e.length
            edges += 1
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    _ok(3, f"{len(instances)} instances, {walls} walls, {edges} edges in {elapsed:.1f}s")


def test_criterion_04_wall_minimum_bound_fuzz(pool2, pool3):
    start = time.monotonic()
    applicable = 0
    local_variant = {Fraction(1, 2): 0, Fraction(2): 0}
    for inst in pool2[:60] + pool3:
        for sigma in range(len(inst.fan.max_cones)):
            rep = check_wall_bound(inst, sigma)
            if rep.applicable:
                applicable += 1
                assert rep.status == "pass", (inst.label, sigma)
            for r in local_variant:
                rep = check_wall_bound(inst, sigma, r)
                if rep.applicable:
                    local_variant[r] += 1
                    assert rep.status == "pass", (inst.label, sigma, r)
    assert applicable >= 100
    assert all(count > 0 for count in local_variant.values())
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    _ok(
        4,
        f"{applicable} applicable cones, r-variants "
        f"{dict((str(k), v) for k, v in local_variant.items())} in {elapsed:.1f}s",
    )


def test_criterion_05_generation_end_to_end(pool2, pool3):
    start = time.monotonic()
    counts = {2: 0, 3: 0}
    cartier_very_ample = 0
    for dim, pool in ((2, pool2), (3, pool3)):
        for inst in pool:
            rep = check_generation(inst)
            if not rep.applicable:
                # only the projective-space exclusion may reject a pool instance
                bad = [h.name for h in rep.hypotheses if not h.holds]
                assert bad == ["fan_is_not_projective_space"], (inst.label, bad)
                continue
            counts[dim] += 1
            assert rep.status == "pass", (inst.label, rep.failures)
            if any("very ample" in n for n in rep.notes):
                cartier_very_ample += 1
    assert counts[2] >= 100
    assert counts[3] >= 20
    assert cartier_very_ample > 0
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    _ok(
        5,
        f"{counts[2]} dim-2 and {counts[3]} dim-3 instances generate, "
        f"{cartier_very_ample} very-ample sub-cases in {elapsed:.1f}s",
    )


def test_criterion_06_nef_threshold_fuzz(pool2, pool3):
    start = time.monotonic()
    sharp = plain = 0
    for inst in pool2 + pool3:
        rep = check_nef_excluding_pspace(inst)
        if rep.applicable:
            sharp += 1
            assert rep.status == "pass", inst.label
        rep = check_nef_threshold(inst)
        if rep.applicable:
            plain += 1
            assert rep.status == "pass", inst.label
    assert sharp >= 100 and plain >= 100
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    _ok(6, f"nef in {sharp} threshold-n and {plain} threshold-n+1 cases in {elapsed:.1f}s")


def test_criterion_07_projective_plane_sharpness():
    low = projective_space(2, 2)
    combined = low.d + low.dprime
    assert wall_values(low.fan, combined) == (-1, -1, -1)
    assert not is_nef(low.fan, combined)

    edge = projective_space(2, 3)
    combined = edge.d + edge.dprime
    assert wall_values(edge.fan, combined) == (0, 0, 0)
    assert is_nef(edge.fan, combined)
    failures, _ = generation_scan(edge.fan, combined, local_data(edge.fan, combined))
    assert len(failures) == 3  # nef yet not very ample, on every cone
    _ok(7, "threshold-n case hits -1 walls; threshold-n+1 case is nef but not very ample")


def test_criterion_08_coefficient_sum_oracle():
    rng = random.Random("acceptance:lambda")
    pairs = 0
    while pairs < 100:
        dim = rng.choice((2, 3))
        gens = [
            tuple(rng.randint(-3, 3) for _ in range(dim))
            for _ in range(rng.randint(dim, dim + 2))
        ]
        try:
            c = cone_from_generators([vec(g, N) for g in gens])
        except ValueError:
            continue
        if not c.is_full_dim:
            continue
        def pick():
            coeffs = [rng.randint(0, 3) for _ in c.rays]
            return vec(
                tuple(
                    sum(k * r.coords[i] for k, r in zip(coeffs, c.rays))
                    for i in range(dim)
                ),
                N,
            )

        x, y = pick(), pick()
        cols = [r.coords for r in c.rays]
        for point in (x, y, x + y):
            lo, hi = sum_range(cols, point.coords)
            assert lambda_min(c, point).value == lo
            assert lambda_max(c, point).value == hi
            assert lo <= hi
            double = point + point
            assert lambda_min(c, double).value == 2 * lo
            assert lambda_max(c, double).value == 2 * hi
        assert lambda_min(c, x + y).value <= lambda_min(c, x).value + lambda_min(c, y).value
        assert lambda_max(c, x + y).value >= lambda_max(c, x).value + lambda_max(c, y).value
        pairs += 1
    _ok(8, f"{pairs} cone/point pairs agree with the enumeration oracle")


def test_criterion_09_containment_and_bound_suites(pool2, pool3):
    start = time.monotonic()
    corner = 0
    for inst in pool2 + pool3:
        rep = check_corner_containment(inst)
        if rep.applicable:
            corner += 1
            assert rep.status == "pass", inst.label

    interior = 0
    for inst in pool2:
        for sigma in range(len(inst.fan.max_cones)):
            rep = check_interior_bound(inst, sigma, bound=5)
            assert rep.status == "pass", (inst.label, sigma)
            interior += 1
        if interior >= 50:
            break

    nonregular = 0
    for inst in pool2 + pool3:
        for sigma, c in enumerate(inst.fan.cones):
            if classify(c).regular:
                continue
            rep = check_nonregular_bound(inst, sigma)
            assert rep.status == "pass", (inst.label, sigma)
            nonregular += 1
    assert corner >= 100 and interior >= 50 and nonregular >= 50
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    _ok(
        9,
        f"{corner} corner containments, {interior} interior-point cones, "
        f"{nonregular} non-regular cones in {elapsed:.1f}s",
    )


def test_criterion_10_intro_family_regression():
    start = time.monotonic()
    for name, t in (("intro_simplex_2d", 3), ("intro_simplex_3d", 4)):
        inst = builtin(name, (t,))
        fan = inst.fan
        distinguished = [
            ci
            for ci, cone in enumerate(fan.max_cones)
            if all(inst.d.coeffs[j] == 0 for j in cone)
        ]
        assert len(distinguished) == 1
        sigma = distinguished[0]
        rep = check_generation(inst)
        assert rep.status == "pass", (name, rep.failures)
        # the shifted polytope at the distinguished cone holds the whole
        # generating set of the dual semigroup outright
        total = inst.d + inst.dprime
        shifted = translated_polytope(
            polytope(fan, total), local_data(fan, total)[sigma]
        )
        dual = dual_cone(fan.cones[sigma])
        for h in hilbert_basis(dual):
            assert poly_contains(shifted, h), (name, h)
        assert poly_contains(shifted, vec((0,) * fan.rank, M))
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    _ok(10, f"simplex family generates at the distinguished cone in {elapsed:.2f}s")
