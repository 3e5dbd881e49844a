"""The nine acceptance criteria, each at its stated size and tolerance.

Every criterion prints one ``PASS``/``FAIL`` line to the terminal (even under
output capture) before asserting.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from fuzzypolar import documents as doc
from fuzzypolar import fuzzyset as fz
from fuzzypolar import geometry as geo
from fuzzypolar import topology as top
from fuzzypolar.cli import main
from fuzzypolar.fuzzyset import PredicateKind as K
from fuzzypolar.geometry import DualPair
from fuzzypolar.oracle import Grid, compare, oracle_add, oracle_polar
from fuzzypolar.polar import bipolar, fuzzy_polar, polar_of_family

from strategies import box_chain, general_chain, interval_chain, rand_vec, symmetric_chain


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        line = f"[acceptance {number}] {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail else "")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def test_1_bipolar_suite(report):
    rng = random.Random(1001)
    start = time.perf_counter()
    good = 0
    for _ in range(200):
        mu = symmetric_chain(rng, rng.randint(1, 3), rng.randint(1, 3))
        good += fz.same_chain(bipolar(mu), mu)
    elapsed = time.perf_counter() - start
    report(1, "bipolar equals the set for closed absolutely convex sets",
           good == 200 and elapsed < 60, f"{good}/200 in {elapsed:.1f}s")


def test_2_polar_laws(report):
    rng = random.Random(1002)
    fails = {}

    def rand_mu():
        return general_chain(rng, rng.randint(1, 3), rng.randint(1, 3))

    fails["antitone"] = 0
    for _ in range(100):
        mu = rand_mu()
        rho = fz.lattice_sup(mu, general_chain(rng, mu.dim, rng.randint(1, 3)))
        fails["antitone"] += not fz.leq(fuzzy_polar(rho), fuzzy_polar(mu))

    fails["scalar"] = 0
    lams = [F(1, 3), F(-1, 3), F(2), F(-2), F(5)]
    for i in range(100):
        mu, lam = rand_mu(), lams[i % len(lams)]
        lhs = fuzzy_polar(fz.scalar_mul(lam, mu))
        fails["scalar"] += not fz.same_chain(lhs, fz.scalar_mul(1 / abs(lam), fuzzy_polar(mu)))

    fails["family"] = 0
    for _ in range(100):
        n = rng.randint(1, 2)
        fam = [general_chain(rng, n, rng.randint(1, 3)) for _ in range(rng.randint(2, 3))]
        fails["family"] += not polar_of_family(fam) == fuzzy_polar(fz.lattice_sup(*fam))

    fails["crisp"] = 0
    for _ in range(100):
        n = rng.randint(1, 3)
        b = geo.polytope([rand_vec(rng, n, nonzero=False) for _ in range(rng.randint(1, n + 3))], n)
        fails["crisp"] += not fz.same_chain(fuzzy_polar(fz.crisp(b)), fz.crisp(geo.crisp_polar(b)))

    fails["absolutely convex"] = 0
    for _ in range(100):
        fails["absolutely convex"] += not fz.predicate(K.ABSOLUTELY_CONVEX, fuzzy_polar(rand_mu()))

    total = sum(fails.values())
    report(2, "polar laws (a)-(e), 100 instances each", total == 0,
           ", ".join(f"{k}: {v} failures" for k, v in fails.items()))


def test_3_level_identity(report):
    rng = random.Random(1003)
    eq_fail = sup_fail = checks = 0
    lattice = [F(k, 24) for k in range(1, 25)]
    for _ in range(100):
        mu = general_chain(rng, rng.randint(1, 3), rng.randint(1, 3))
        p = fuzzy_polar(mu)
        breaks = {1 - g for g in (F(0),) + mu.grades}
        for th in lattice:
            lhs = fz.level_set(p, th)
            rhs = geo.crisp_polar(fz.level_set(mu, 1 - th))
            checks += 1
            if th in breaks:
                sup_fail += not geo.subset(rhs, lhs)
            else:
                eq_fail += not geo.equal(lhs, rhs)
    report(3, "level identity off breakpoints, containment at breakpoints",
           eq_fail == 0 and sup_fail == 0, f"{checks} checks, {eq_fail + sup_fail} failures")


def test_4_below_bipolar(report):
    rng = random.Random(1004)
    bad = 0
    axis = [F(k, 2) for k in range(-10, 11)]  # 21 points per axis
    for i in range(100):
        n = 1 + i % 2
        mu = general_chain(rng, n, rng.randint(1, 3))
        bp = bipolar(mu)
        pts = [(a,) for a in axis] if n == 1 else [(a, b) for a in axis for b in axis]
        bad += sum(fz.membership(mu, x) > fz.membership(bp, x) for x in pts)
    report(4, "membership never exceeds the bipolar on a 21-per-axis grid", bad == 0, f"{bad} violations")


def test_5_oracle_equivalence(report):
    rng = random.Random(1005)
    polar_diffs = add_diffs = 0
    for i in range(50):
        n = 1 + i % 2
        mu = general_chain(rng, n, rng.randint(1, 3))
        grid = Grid.uniform(-5, 5, F(1, 4), 1) if n == 1 else Grid.uniform(-2, 2, F(1, 4), 2)
        polar_diffs += len(compare(fuzzy_polar(mu), oracle_polar(mu, grid)))
    grid1 = Grid.uniform(-5, 5, F(1, 4), 1)
    grid2 = Grid.uniform(-3, 3, F(1, 2), 2)
    for i in range(50):
        if i % 5:
            mu, eta = interval_chain(rng, rng.randint(1, 3), 4), interval_chain(rng, rng.randint(1, 3), 4)
            grid = grid1
        else:
            mu, eta = box_chain(rng, 2, rng.randint(1, 2), span=1), box_chain(rng, 2, rng.randint(1, 2), span=1)
            grid = grid2
        add_diffs += len(compare(fz.add(mu, eta), oracle_add(mu, eta, grid)))
    report(5, "closed forms agree with the grid oracles", polar_diffs == 0 and add_diffs == 0,
           f"polar: {polar_diffs} differences, add: {add_diffs} differences")


def test_6_mackey_arens(report):
    start = time.perf_counter()
    square = fz.crisp(geo.box([-1, -1], [1, 1]))
    cross = fz.crisp(geo.polytope([(1, 0), (-1, 0), (0, 1), (0, -1)]))
    funcs = [(1, 0), (0, 1), (1, 1)]
    pair = DualPair(2)
    good = top.verify_mackey_arens([square, cross], funcs, pair)
    triangle = fz.crisp(geo.polytope([(-1, -1), (2, -1), (-1, 2)]))
    bad = top.verify_mackey_arens([triangle, cross], funcs, pair)
    elapsed = time.perf_counter() - start
    flipped = [i for i, (a, b) in enumerate(zip(good.neighborhoods, bad.neighborhoods))
               if a.bipolar_equal != b.bipolar_equal]
    ok = (good.overall and not bad.overall and flipped == [0]
          and not bad.neighborhoods[0].bipolar_equal and elapsed < 5)
    report(6, "Mackey-Arens desk run on square and cross-polytope", ok,
           f"overall {good.overall}, flipped records {flipped}, {elapsed:.2f}s")


def test_7_absorption_and_seminorm(report):
    t = top.absorbs(fz.crisp(geo.box([-1], [1])), fz.crisp(geo.box([-5], [5])))
    rng = random.Random(1007)
    good = 0
    for _ in range(20):
        n = rng.randint(1, 2)
        nbhd = fz.lattice_sup(general_chain(rng, n, rng.randint(1, 3), top_one=True),
                              fz.crisp(geo.points([(0,) * n])))
        base = [fz.crisp(geo.box([-1] * n, [1] * n)), fz.crisp(geo.box([-F(1, 2)] * n, [2] * n))]
        mu = top.seminorm_from_bounded_nbhd(nbhd, base)
        good += fz.predicate(K.SEMINORM, mu)
    report(7, "absorption witness and seminorm construction", t == F(1, 5) and good == 20,
           f"witness {t}, seminorms {good}/20")


def test_8_weak_neighborhood_modes(report, tmp_path, capsys):
    pts = tmp_path / "a.json"
    pts.write_text('[["1","0"]]')
    outs = {}
    for mode in ("definition", "paper_literal"):
        code = main(["weak-nbhd", str(pts), "--lambda", "1/2", "--mode", mode])
        captured = capsys.readouterr()
        outs[mode] = (code, captured.out.strip(), captured.err)
    a_lam = fz.construct([(F(1, 2), geo.points([(1, 0)]))])
    slab = geo.polyhedron([((1, 0), 1), ((-1, 0), 1)], 2)
    defn = doc.parse_document(outs["definition"][1])
    lit = doc.parse_document(outs["paper_literal"][1])
    ok = (outs["definition"][0] == 0 and outs["paper_literal"][0] == 0
          and outs["definition"][1] != outs["paper_literal"][1]
          and fz.same_chain(defn, fuzzy_polar(a_lam))
          and outs["definition"][1] == doc.write_document(fuzzy_polar(a_lam))
          and fz.same_chain(defn, fz.construct([(F(1, 2), geo.whole_space(2)), (1, slab)]))
          and fz.same_chain(lit, fz.construct([(F(1, 2), slab)]))
          and outs["definition"][2].startswith("notice:"))
    report(8, "weak neighbourhood modes differ and the definition mode is the polar", ok)


def _random_document_set(rng):
    n = rng.randint(1, 3)
    pick = rng.randrange(5)
    if pick == 0:
        return general_chain(rng, n, rng.randint(1, 3))
    if pick == 1:
        return symmetric_chain(rng, n, rng.randint(1, 3))
    if pick == 2:
        return fuzzy_polar(general_chain(rng, n, rng.randint(1, 3)))
    if pick == 3:
        return box_chain(rng, n, rng.randint(1, 3))
    a, b = general_chain(rng, n, 2), general_chain(rng, n, 2)
    return fz.lattice_sup(a, fz.scalar_mul(3, b))


def test_9_round_trip_and_determinism(report, tmp_path, capsys):
    rng = random.Random(1009)
    stable = 0
    repeat_ok = True
    for i in range(100):
        mu = _random_document_set(rng)
        text = doc.write_document(mu)
        back = doc.parse_document(text)
        stable += doc.write_document(back) == text and fz.same_chain(back, mu)
        if i % 10 == 0:
            path = tmp_path / f"d{i}.json"
            path.write_text(text)
            runs = []
            for _ in range(2):
                main(["polar", str(path)])
                runs.append(capsys.readouterr().out)
            repeat_ok &= runs[0] == runs[1]
    path = tmp_path / "d0.json"
    procs = [subprocess.run([sys.executable, "-m", "fuzzypolar.cli", "bipolar", str(path)],
                            capture_output=True, text=True).stdout for _ in range(2)]
    repeat_ok &= procs[0] == procs[1] and procs[0] != ""
    report(9, "documents round-trip byte-identically and runs repeat exactly",
           stable == 100 and repeat_ok, f"{stable}/100 round trips, repeat runs identical: {repeat_ok}")
