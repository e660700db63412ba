"""Exit criteria.  Each test carries a ``criterion`` marker; a summary line
per criterion is printed at the end of the run."""

import itertools
import json
import subprocess
import sys
import time

import pytest
from oracles import naive_realizable, partitions_of

from hurwitz.core import ChiTooLarge, control_family_datum, validate_branch_datum
from hurwitz.dessin import Dessin
from hurwitz.errors import OddEuler
from hurwitz.homology import (
    enumerate_simple_loops,
    is_loop_trivial,
    loop_word,
    min_nontrivial_loop,
    primal_cycle_basis,
)
from hurwitz.search import SearchOptions, decide_realizability, verify_witness

THEOREM_CANDIDATES = {2: (6, 40), 3: (9, 2240), 4: (12, 246400)}


def cli(*args):
    started = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "hurwitz", *args], capture_output=True)
    return proc, time.perf_counter() - started


def all_small_data():
    out = []
    for d in range(1, 6):
        parts = list(partitions_of(d))
        for triple in itertools.product(parts, repeat=3):
            try:
                out.append(validate_branch_datum(d, triple))
            except (OddEuler, ChiTooLarge):
                pass
    return out


@pytest.fixture(scope="module")
def control_witnesses():
    out = {}
    for h in (1, 2, 3):
        datum = control_family_datum(h)
        out[h] = (datum, decide_realizability(datum))
    return out


@pytest.fixture(scope="module")
def oracle_sweep():
    started = time.perf_counter()
    rows = []
    for datum in all_small_data():
        decision = decide_realizability(datum, SearchOptions(use_centralizer_reduction=True))
        expected = naive_realizable(datum.degree, [p.parts for p in datum.partitions])
        rows.append((datum, decision, expected))
    return rows, time.perf_counter() - started


@pytest.mark.criterion(1, "theorem holds for h=2,3,4 (exact zero, < 60 s single-threaded)")
def test_theorem_small_h():
    proc, elapsed = cli("verify-theorem", "--h-max", "4", "--no-reduce", "--jobs", "1")
    assert proc.returncode == 0, proc.stderr.decode()
    assert elapsed < 60
    payload = json.loads(proc.stdout)
    assert payload["status"] == "PASS"
    for row in payload["results"]:
        degree, candidates = THEOREM_CANDIDATES[row["h"]]
        assert row["degree"] == degree
        assert row["constellations"] == 0
        assert row["search_space"] == candidates
        assert row["candidates_examined"] == candidates
    assert [r["h"] for r in payload["results"]] == [2, 3, 4]

    proc, elapsed = cli("verify-theorem", "--h-max", "4")
    assert proc.returncode == 0 and elapsed < 60
    assert [r["constellations"] for r in json.loads(proc.stdout)["results"]] == [0, 0, 0]


@pytest.mark.criterion(2, "stretch: h=5 gives 0 with reduction and 4 workers in < 10 min")
def test_theorem_h5():
    proc, elapsed = cli("verify-theorem", "--h-max", "5", "--jobs", "4")
    assert proc.returncode == 0, proc.stderr.decode()
    assert elapsed < 600
    row = json.loads(proc.stdout)["results"][-1]
    assert (row["h"], row["degree"], row["constellations"]) == (5, 15, 0)
    assert row["search_space"] == 44_844_800
    assert row["reduced"] is True


@pytest.mark.criterion(3, "control family h=1,2,3 realizable with verified witnesses")
def test_positive_controls(control_witnesses):
    for h, (datum, decision) in control_witnesses.items():
        assert decision.realizable, h
        report = verify_witness(datum, decision.witness)
        assert report.product_identity and all(report.cycle_types_match) and report.transitive


@pytest.mark.criterion(4, "reduced engine agrees with the naive oracle for every datum with d <= 5 (< 30 s)")
def test_oracle_equivalence(oracle_sweep):
    rows, elapsed = oracle_sweep
    discrepancies = [str(d) for d, decision, expected in rows if decision.realizable != expected]
    assert discrepancies == []
    assert len(rows) == 110
    assert elapsed < 30


@pytest.mark.criterion(5, "Euler characteristic and side-count conservation for every witness")
def test_euler_consistency(control_witnesses, oracle_sweep):
    witnesses = [(d, dec.witness) for d, dec in control_witnesses.values()]
    witnesses += [(d, dec.witness) for d, dec, _ in oracle_sweep[0] if dec.realizable]
    assert len(witnesses) == 3 + 107
    for datum, w in witnesses:
        D = Dessin.from_constellation(w)
        assert D.euler_characteristic() == datum.source_chi
        assert sum(walk.size for walk in D.walks) == 2 * datum.degree


@pytest.mark.criterion(6, "homology: hexagonal systole 1 (H_d), sphere loops trivial, torus loops within 2d")
def test_homology_suite(control_witnesses, oracle_sweep):
    _, hexa = control_witnesses[1]
    D = Dessin.from_constellation(hexa.witness)
    n, loop = min_nontrivial_loop(D, 3)
    assert n == 1
    assert loop_word(D, loop).names() == ["H_d"]

    for datum, decision, _ in oracle_sweep[0]:
        if decision.realizable and datum.source_chi == 2:
            S = Dessin.from_constellation(decision.witness)
            basis = primal_cycle_basis(S)
            for length in range(1, S.edge_count + 1):
                for x in enumerate_simple_loops(S, length):
                    assert is_loop_trivial(S, x, basis), (str(datum), x)

    for h, (datum, decision) in control_witnesses.items():
        T = Dessin.from_constellation(decision.witness)
        found = min_nontrivial_loop(T, 2 * datum.degree)
        assert found is not None, h
        assert not is_loop_trivial(T, found[1])


@pytest.mark.criterion(7, "parity law: even-offset letters per loop are even (loops of length <= 6)")
def test_parity_law(control_witnesses):
    checked = 0
    for datum, decision in control_witnesses.values():
        D = Dessin.from_constellation(decision.witness)
        for n in range(1, 7):
            for x in enumerate_simple_loops(D, n):
                assert loop_word(D, x).even_count() % 2 == 0
                checked += 1
    assert checked > 0


@pytest.mark.criterion(8, "byte-identical stdout across repeated runs and --jobs values")
def test_determinism(tmp_path):
    theorem = tmp_path / "theorem.json"
    theorem.write_text('{"degree": 6, "partitions": [[3, 3], [3, 3], [4, 2]]}')
    control = tmp_path / "control.json"
    control.write_text('{"degree": 9, "partitions": [[3, 3, 3], [3, 3, 3], [3, 3, 3]]}')
    witness = tmp_path / "witness.json"
    witness.write_text('{"degree": 3, "sigma": [[[0, 1, 2]], [[0, 1, 2]], [[0, 1, 2]]]}')

    variants = [
        [["decide", "--datum", str(theorem), "--jobs", j] for j in ("1", "1", "3")],
        [["decide", "--datum", str(control), "--jobs", j] for j in ("1", "1", "4")],
        [["decide", "--datum", str(control), "--count", "--no-reduce", "--jobs", j] for j in ("1", "2")],
        [["verify-theorem", "--h-max", "4", "--jobs", j] for j in ("1", "1", "2")],
        [["verify-theorem", "--h-max", "5", "--jobs", j] for j in ("1", "4")],
        [["analyze", "--witness", str(witness)]] * 2,
    ]
    for group in variants:
        outputs = set()
        for args in group:
            proc, _ = cli(*args)
            assert proc.returncode == 0, proc.stderr.decode()
            outputs.add(proc.stdout)
        assert len(outputs) == 1, group[0]
