"""End-to-end command-line runs: pipelines, exit codes, determinism."""

import random

from sparsef2.cli import main
from sparsef2.f2 import BitMat, BitVec
from sparsef2.formats import parse_instance, write_instance
from sparsef2.graphs import Graph
from sparsef2.instances import VectorSumInstance


def run_cli(*args):
    return main(list(args))


def test_gen_graph_and_solve_pipeline(tmp_path, capsys):
    gpath = tmp_path / "g.graph"
    vpath = tmp_path / "inst.vs"
    assert run_cli("gen-graph", "--out", str(gpath), "--override", "n=6", "--override", "p=0.4",
                   "--k", "3", "--seed", "11") == 0
    assert run_cli("reduce", "clique2vs", "--in", str(gpath), "--k", "3", "--out", str(vpath)) == 0
    status = run_cli("solve", "--in", str(vpath), "--alg", "mitm", "--format", "lines")
    out = capsys.readouterr().out
    assert status == 0  # planted clique guarantees feasibility
    assert "feasible=1" in out and "weight=6" in out


def test_solve_infeasible_exit_code(tmp_path):
    path = tmp_path / "no.vs"
    inst = VectorSumInstance(BitMat.identity(2), BitVec.from01("11"), 1)
    write_instance(path, inst, "vectorsum")
    assert run_cli("solve", "--in", str(path), "--alg", "exhaustive") == 1
    assert run_cli("solve", "--in", str(path), "--alg", "bfs") == 1


def test_parse_error_exit_code(tmp_path):
    path = tmp_path / "bad.vs"
    path.write_text("2 3\n110\n01\nb 11\nk 2\n")
    assert run_cli("solve", "--in", str(path)) == 2


def test_unknown_flag_rejected():
    assert run_cli("solve", "--frobnicate", "x") == 2


def test_resource_cap_exit_code(tmp_path):
    path = tmp_path / "wide.vs"
    m = BitMat.zeros(3, 40)
    write_instance(path, VectorSumInstance(m, BitVec.from01("111"), 6), "vectorsum")
    assert run_cli("solve", "--in", str(path), "--alg", "mitm", "--cap", "10") == 3


def test_verify_bch_and_balance(capsys):
    assert run_cli("verify", "bch", "--override", "n=15", "--delta", "5", "--format", "lines") == 0
    out = capsys.readouterr().out
    assert "verified=1" in out and "rows=8" in out
    assert run_cli("verify", "balance", "--k", "6", "--eps", "0.2", "--seed", "4") == 0


def test_verify_density(tmp_path):
    path = tmp_path / "code.txt"
    rng = random.Random(1)
    from sparsef2.codes import LinearCode
    from sparsef2.f2 import rank

    while True:
        gen = BitMat.from_bitrows([rng.getrandbits(3) for _ in range(9)], 3)
        if rank(gen) == 3:
            break
    write_instance(path, LinearCode.from_generator(gen), "code")
    assert run_cli("verify", "density", "--in", str(path)) == 0


def test_verify_roundtrip_and_bias(tmp_path):
    gpath = tmp_path / "g.graph"
    write_instance(gpath, Graph.from_edges(4, [(1, 2), (3, 4)]), "graph")
    assert run_cli("verify", "roundtrip", "--in", str(gpath), "--kind", "graph") == 0

    ppath = tmp_path / "pts.txt"
    points = [BitVec(3, v) for v in range(8)]
    write_instance(ppath, points, "points")
    assert run_cli("verify", "bias", "--in", str(ppath), "--k", "3", "--eps", "0.01") == 0


def test_reduce_amplify_and_verify_parity(tmp_path):
    pv_path = tmp_path / "pairs.pv"
    out_path = tmp_path / "amplified.pv"
    inst = VectorSumInstance(BitMat.identity(4), BitVec.from01("1100"), 1)  # NO at k=1
    from sparsef2.instances import PointValueSet

    pv = PointValueSet(tuple(inst.m.row(i) for i in range(4)), tuple(inst.b))
    write_instance(pv_path, pv, "pointvalues")
    assert run_cli("reduce", "amplify", "--in", str(pv_path), "--eps", "0.1",
                   "--seed", "3", "--out", str(out_path)) == 0
    assert run_cli("verify", "parity", "--in", str(out_path), "--k", "1", "--eps", "0.1") == 0


def test_reduce_vs2es_cli(tmp_path):
    vs = tmp_path / "src.vs"
    es = tmp_path / "out.es"
    write_instance(vs, VectorSumInstance(BitMat.identity(3), BitVec.from01("010"), 1), "vectorsum")
    assert run_cli(
        "reduce", "vs2es", "--in", str(vs), "--out", str(es), "--eps", "0.25", "--seed", "3",
        "--override", "sketch_rows=4", "--override", "K=6", "--override", "r=3",
    ) == 0
    emitted = parse_instance(es, "evenset")
    assert emitted.m.cols == 154 and emitted.k == 40


def test_byte_identical_outputs(tmp_path):
    a, b = tmp_path / "a.graph", tmp_path / "b.graph"
    for path in (a, b):
        assert run_cli("gen-graph", "--out", str(path), "--override", "n=9",
                       "--override", "p=0.6", "--seed", "99") == 0
    assert a.read_bytes() == b.read_bytes()

    va, vb = tmp_path / "a.vs", tmp_path / "b.vs"
    for path in (va, vb):
        assert run_cli("reduce", "clique2vs", "--in", str(a), "--k", "2", "--out", str(path)) == 0
    assert va.read_bytes() == vb.read_bytes()


def test_verify_junta_and_poly(tmp_path):
    pv_path = tmp_path / "xor.pv"
    ppath = tmp_path / "uniform.pts"
    xor_pv = "4 2\n00 0\n10 1\n01 1\n11 0\n"
    pv_path.write_text(xor_pv)
    # XOR is realized by a 2-junta but no 1-junta beats a coin flip.
    assert run_cli("verify", "junta", "--in", str(pv_path), "--k", "2", "--delta", "0.1") == 0
    assert run_cli("verify", "junta", "--in", str(pv_path), "--k", "1", "--delta", "0.1") == 0
    write_instance(ppath, [BitVec(3, v) for v in range(8)], "points")
    assert run_cli("verify", "poly", "--in", str(ppath), "--k", "3", "--deg", "2", "--delta", "0.0") == 0


def test_viola_cli_roundtrip(tmp_path):
    pts = tmp_path / "p.txt"
    out = tmp_path / "shift.txt"
    write_instance(pts, [BitVec.from01("10"), BitVec.from01("01")], "points")
    assert run_cli("reduce", "viola", "--in", str(pts), "--deg", "2", "--out", str(out)) == 0
    shifted = parse_instance(out, "points")
    assert sorted(v.to01() for v in shifted) == ["00", "00", "11", "11"]


def test_mdc_cli_pipeline(tmp_path):
    rng = random.Random(8)
    base = tmp_path / "rows.txt"
    squared = tmp_path / "sq.txt"
    amplified = tmp_path / "amp.txt"
    learn = tmp_path / "learn.pv"
    gpath = tmp_path / "exp.graph"
    write_instance(base, [BitVec(3, rng.getrandbits(3) | 1) for _ in range(6)], "points")
    assert run_cli("reduce", "mdc-tensor", "--in", str(base), "--out", str(squared),
                   "--override", "power=2") == 0
    rows = parse_instance(squared, "points")
    assert len(rows) == 36 and rows[0].n == 9

    from sparsef2.graphs import random_regular

    g, _ = random_regular(36, 4, seed=5)
    write_instance(gpath, g, "graph")
    assert run_cli("reduce", "mdc-walk", "--in", str(squared), "--out", str(amplified),
                   "--override", f"graph={gpath}", "--walk-len", "2", "--seed", "4") == 0
    amplified_rows = parse_instance(amplified, "points")
    assert len(amplified_rows) == 36 * 4 * 4  # walks times sign patterns

    assert run_cli("reduce", "mdc-learn", "--in", str(amplified), "--deg", "1",
                   "--out", str(learn)) == 0
    pv = parse_instance(learn, "pointvalues")
    assert len(pv) == len(amplified_rows) and pv.dim == 8
