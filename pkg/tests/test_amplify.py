"""Balanced-code amplification of point-value sets: preservation and NO-case interval."""

import random
from fractions import Fraction
from itertools import combinations

from sparsef2.f2 import BitMat, BitVec
from sparsef2.instances import PointValueSet, VectorSumInstance
from sparsef2.reductions import amplify_pointvalues, amplify_with_generator, junta_hardness_instance
from sparsef2.solvers import ParityForm, best_junta_agreement, parity_agreement, solve_exhaustive


def pv_from_instance(inst):
    points = tuple(inst.m.row(i) for i in range(inst.m.rows))
    return PointValueSet(points, tuple(inst.b))


def random_no_instance(rng, rows=8, cols=10, k=2):
    while True:
        m = BitMat.from_bitrows([rng.getrandbits(cols) for _ in range(rows)], cols)
        b = BitVec(rows, rng.getrandbits(rows) | 1)  # nonzero target
        inst = VectorSumInstance(m, b, k)
        if not solve_exhaustive(inst).feasible:
            return inst


def all_parities(n, max_support):
    for w in range(max_support + 1):
        for sub in combinations(range(n), w):
            for const in (0, 1):
                yield ParityForm(BitVec.from_support(n, sub), const)


def test_identity_generator_is_noop():
    pv = pv_from_instance(random_no_instance(random.Random(0)))
    out = amplify_with_generator(pv, BitMat.identity(len(pv)))
    assert out.points == pv.points and out.values == pv.values


def test_planted_parity_preserved():
    rng = random.Random(1)
    n = 9
    planted = ParityForm(BitVec.from_support(n, (2, 6)))
    points = tuple(BitVec(n, rng.getrandbits(n)) for _ in range(12))
    pv = PointValueSet(points, tuple(planted.evaluate(z) for z in points))
    out = amplify_pointvalues(pv, eps=0.15, seed=4)
    assert parity_agreement(out, planted) == 1


def test_no_case_interval():
    rng = random.Random(7)
    for trial in range(4):
        inst = random_no_instance(rng)
        pv = pv_from_instance(inst)
        out = amplify_pointvalues(pv, eps=0.1, seed=100 + trial)
        for form in all_parities(pv.dim, 2):
            agree = parity_agreement(out, form)
            assert Fraction(2, 5) <= agree <= Fraction(3, 5), f"{form} at {agree}"


def test_junta_eps_setting():
    rng = random.Random(3)
    inst = random_no_instance(rng)
    pv = pv_from_instance(inst)
    out = junta_hardness_instance(pv, delta=0.25, k=1, seed=9)
    assert out.eps == 0.125 and out.delta == 0.25


def test_junta_no_case_bound():
    rng = random.Random(11)
    for trial in range(3):
        inst = random_no_instance(rng)
        pv = pv_from_instance(inst)
        out = junta_hardness_instance(pv, delta=0.25, k=2, seed=40 + trial)
        assert best_junta_agreement(out, 2) <= Fraction(3, 4)


def test_junta_yes_case_planted():
    rng = random.Random(13)
    n = 8
    planted = ParityForm(BitVec.from_support(n, (0, 5)))
    points = tuple(BitVec(n, rng.getrandbits(n)) for _ in range(10))
    pv = PointValueSet(points, tuple(planted.evaluate(z) for z in points))
    out = junta_hardness_instance(pv, delta=0.2, k=2, seed=2)
    assert parity_agreement(out, planted) == 1
    assert best_junta_agreement(out, 2) == 1
