"""File formats: parse/emit round trips, comments, and error reporting."""

import random

import pytest

from sparsef2.codes import bch_parity_check, simplex_generator
from sparsef2.errors import ParseError
from sparsef2.f2 import BitMat, BitVec
from sparsef2.formats import dumps, loads
from sparsef2.graphs import Graph, random_graph
from sparsef2.instances import EvenSetInstance, PointValueSet, VectorSumInstance


def random_vectorsum(rng):
    rows, cols = rng.randrange(1, 8), rng.randrange(1, 10)
    m = BitMat.from_bitrows([rng.getrandbits(cols) for _ in range(rows)], cols)
    return VectorSumInstance(m, BitVec(rows, rng.getrandbits(rows)), rng.randrange(1, 5))


def test_graph_parse_example():
    g = loads("3 2\n1 2\n2 3\n", "graph")
    assert g == Graph.from_edges(3, [(1, 2), (2, 3)])


def test_vectorsum_parse_example():
    inst = loads("2 3\n110\n011\nb 11\nk 2\n", "vectorsum")
    assert inst.m == BitMat.from_rows(["110", "011"])
    assert inst.b == BitVec.from01("11") and inst.k == 2


def test_parse_error_names_line():
    with pytest.raises(ParseError) as err:
        loads("2 3\n110\n01\nb 11\nk 2\n", "vectorsum")
    assert "line 3" in str(err.value)


def test_comments_ignored():
    g = loads("# provenance junk\n3 1\n# mid comment\n1 3\n", "graph")
    assert g.edges == ((1, 3),)


def test_header_emitted_and_ignored():
    g = Graph.from_edges(4, [(1, 2)])
    text = dumps(g, "graph", header=["tool test", "seed=1"])
    assert text.startswith("# tool test\n# seed=1\n")
    assert loads(text, "graph") == g


@pytest.mark.parametrize("kind", ["graph", "vectorsum", "evenset", "pointvalues", "points", "code"])
def test_roundtrip_random(kind):
    rng = random.Random(hash(kind) & 0xFFFF)
    for _ in range(40):
        if kind == "graph":
            obj = random_graph(rng.randrange(1, 10), rng.random(), rng.randrange(10**6))
        elif kind == "vectorsum":
            obj = random_vectorsum(rng)
        elif kind == "evenset":
            inst = random_vectorsum(rng)
            obj = EvenSetInstance(inst.m, inst.k)
        elif kind == "pointvalues":
            n = rng.randrange(1, 9)
            count = rng.randrange(1, 12)
            obj = PointValueSet(
                tuple(BitVec(n, rng.getrandbits(n)) for _ in range(count)),
                tuple(rng.getrandbits(1) for _ in range(count)),
            )
        elif kind == "points":
            n = rng.randrange(1, 9)
            obj = [BitVec(n, rng.getrandbits(n)) for _ in range(rng.randrange(1, 12))]
        else:
            obj = rng.choice(
                [
                    simplex_generator(rng.randrange(2, 5)),
                    None,
                ]
            )
            if obj is None:
                from sparsef2.codes import LinearCode

                obj = LinearCode.from_parity_check(bch_parity_check(rng.randrange(4, 16), 3))
        again = loads(dumps(obj, kind), kind)
        if kind == "code":
            assert again.length == obj.length and again.dim == obj.dim
            assert (again.generator or again.parity_check) == (obj.generator or obj.parity_check)
        else:
            assert again == obj


def test_trailing_garbage_rejected():
    with pytest.raises(ParseError):
        loads("3 1\n1 2\n1 3\n", "graph")
