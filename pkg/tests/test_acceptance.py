"""Acceptance gate: one test per criterion, each with its runtime budget.

Every test records a one-line verdict; the lines are printed in the pytest
terminal summary and by ``python tests/test_acceptance.py``.
"""

import random
import time

import pytest

from evencliff.clifford import RANK_TO_CLASS, classify_fiber_algebra, cliff0, literal_example_table, straightening_oracle
from evencliff.clifford import verify_associativity, verify_bimodule_tensor_at
from evencliff.cli import run
from evencliff.conicgeom import TAG_DISC_DEGREE, InstanceSpec, InstanceTag, make_instance, sample_curve_points
from evencliff.exactalg import GF, QQ, HomogeneousPoly, det3
from evencliff.exactalg import linalg
from evencliff.quadform import SplitTwist, TwistedQuadraticForm, discriminant, fiber_rank, random_form, random_point
from evencliff.reconstruct import reconstruct_form, roundtrip_check

F = GF(10007)
BUILT = (InstanceTag.Mod12nb, InstanceTag.Mod10na, InstanceTag.Mod8nb, InstanceTag.Type5n)
LINES: list[str] = []

pytestmark = pytest.mark.acceptance


def record(number, name, ok, seconds, budget, detail=""):
    within = budget is None or seconds < budget
    verdict = "PASS" if ok and within else "FAIL"
    limit = f" (limit {budget} s)" if budget is not None else ""
    LINES.append(f"[{verdict}] {number}. {name}: {detail} in {seconds:.2f} s{limit}")
    assert ok, detail
    assert within, f"took {seconds:.2f} s, limit {budget} s"


def random_twist(rng, base_dim):
    a = tuple(rng.randint(0, 1) for _ in range(3))
    return SplitTwist(base_dim, a, rng.randint(-1, 2 * max(a)))


def scalar_diag(field, a):
    c = lambda v: HomogeneousPoly.constant(field, 1, v)
    return TwistedQuadraticForm.from_upper(SplitTwist(0, (0, 0, 0), 0), [c(a[0]), c(0), c(0), c(a[1]), c(0), c(a[2])])


def test_1_commutator_formula():
    t0 = time.perf_counter()
    rng = random.Random(1)
    bad = []
    count = 0
    for field in (QQ, F):
        for _ in range(50):
            a = [field.random_element(rng, nonzero=True) for _ in range(3)]
            A = cliff0(scalar_diag(field, a))
            got = [c.constant_value() for c in A.commutator(1, 3)]  # [f12, f23]
            if got != [0, 0, field.norm(2 * a[1]), 0]:
                bad.append((field, a, got))
            count += 1
    record(1, "commutator formula [f12,f23] = 2 a2 f13", not bad, time.perf_counter() - t0, 1, f"{count - len(bad)}/{count} triples")


def test_2_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(2)
    mismatches = 0
    for _ in range(100):
        q = random_form(random_twist(rng, 2), F, rng)
        pt = random_point(F, 3, rng)
        if cliff0(q).eval_table(pt) != straightening_oracle(q.matrix_at(pt), F).even:
            mismatches += 1
    record(2, "cliff0 = even part of straightening oracle", mismatches == 0, time.perf_counter() - t0, 10, f"{100 - mismatches}/100 dense forms")


def test_3_associativity_ledger():
    t0 = time.perf_counter()
    rng = random.Random(3)
    failing = 0
    for k in range(25):
        q = random_form(random_twist(rng, 1 + k % 2), QQ, rng)
        if not verify_associativity(cliff0(q)).passed:
            failing += 1
    lit = verify_associativity(literal_example_table((1, 1, 1), QQ))
    witness = next((f for f in lit.findings if f["triple"] == ["f12", "f12", "f13"]), None)
    ok = failing == 0 and not lit.passed and witness is not None
    ok = ok and (witness["left"], witness["right"]) == ("(-2)*f13", "(-1)*f13")
    detail = f"{25 - failing}/25 families associative; literal table fails at (f12,f12,f13): -2 f13 vs -f13"
    record(3, "associativity ledger", ok, time.perf_counter() - t0, 30, detail)


def test_4_roundtrip():
    t0 = time.perf_counter()
    rng = random.Random(4)
    failing = []
    for n in (0, 1, 2):
        for _ in range(50):
            field = QQ if rng.random() < 0.5 else F
            q = random_form(random_twist(rng, n), field, rng)
            if not roundtrip_check(q).passed:
                failing.append(n)
    record(4, "roundtrip q_R = -2 G^T M G, det law -8", not failing, time.perf_counter() - t0, 60, f"{150 - len(failing)}/150 forms over P^0, P^1, P^2")


def test_5_discriminant_degrees():
    t0 = time.perf_counter()
    wrong = []
    for tag in BUILT:
        for seed in range(20):
            inst = make_instance(InstanceSpec(tag, seed))
            if inst.disc_degree != TAG_DISC_DEGREE[tag]:
                wrong.append((tag.value, seed, inst.disc_degree))
    detail = "degrees 3/4/5/7 for Mod12nb/Mod10na/Mod8nb/Type5n over 20 seeds each"
    record(5, "discriminant degrees", not wrong, time.perf_counter() - t0, 30, detail if not wrong else str(wrong[:3]))


def test_6_fiber_algebra_correspondence():
    t0 = time.perf_counter()
    rng = random.Random(6)
    total = mismatched = on_disc = 0
    for tag in BUILT:
        inst = make_instance(InstanceSpec(tag, 0, F))
        A = cliff0(inst.q)
        pts = sample_curve_points(inst.disc, 100, seed=6)
        on_disc += len(pts)
        pts += [random_point(F, 3, rng) for _ in range(200 - len(pts))]
        for pt in pts:
            total += 1
            if classify_fiber_algebra(A, pt) is not RANK_TO_CLASS[fiber_rank(inst.q, pt)[0]]:
                mismatched += 1
    ok = mismatched == 0 and total == 800 and on_disc == 400
    detail = f"{total - mismatched}/{total} points ({on_disc} on the discriminant)"
    record(6, "fiber class vs algebra class", ok, time.perf_counter() - t0, 60, detail)


def test_7_bimodule_law():
    t0 = time.perf_counter()
    rng = random.Random(7)
    checked = failed = 0
    for _ in range(10):
        q = random_form(random_twist(rng, 2), F, rng)
        while discriminant(q).is_zero():
            q = random_form(random_twist(rng, 2), F, rng)
        done = 0
        while done < 5:
            pt = random_point(F, 3, rng)
            if linalg.det(F, q.matrix_at(pt)) == 0:
                continue
            for parity in ((1, 1), (1, 0), (0, 1)):
                rep = verify_bimodule_tensor_at(q, pt, parity)
                if not (rep.passed and rep.constants["tensor_dimension"] == 4 and rep.constants["product_map_rank"] == 4):
                    failed += 1
            done += 1
            checked += 1
    detail = f"{checked} smooth points, 10 forms, parities (1,1), (1,0), (0,1); {failed} failures"
    record(7, "Cliff_i (x) Cliff_j = Cliff_(i+j)", failed == 0 and checked == 50, time.perf_counter() - t0, 30, detail)


def test_8_discriminant_data_invariance():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for tag in BUILT:
        for seed in range(5):
            q = make_instance(InstanceSpec(tag, seed)).q
            d, dR = discriminant(q), det3(reconstruct_form(cliff0(q)).M)
            c = dR.is_proportional_to(d)
            count += 1
            if c is None or c == 0:
                bad.append((tag.value, seed))
    record(8, "disc(q_R) = const * disc(q)", not bad, time.perf_counter() - t0, 10, f"{count - len(bad)}/{count} builder instances")


def test_9_selftest_determinism():
    t0 = time.perf_counter()
    runs = [run(["selftest", "--output", "/dev/null"]) for _ in range(2)]
    codes = [c for c, _ in runs]
    digests = [doc["body_digest"] for _, doc in runs]
    ok = codes == [0, 0] and digests[0] == digests[1]
    record(9, "selftest determinism", ok, time.perf_counter() - t0, None, f"exit codes {codes}, digest {digests[0][:16]}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
