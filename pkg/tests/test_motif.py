import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowmotif.motif import Motif, MotifError, builtin, parse_motif_file, resolve, validate


def test_cycle3_valid():
    m = Motif((("a", "b"), ("b", "c"), ("c", "a")), delta=10, phi=7)
    assert validate(m) is None


def test_chain_break_reported():
    msg = validate(Motif((("a", "b"), ("c", "d"))))
    assert "chain break at position 1->2" in msg


def test_repeated_vertices_allowed():
    assert validate(Motif((("a", "b"), ("b", "a"), ("a", "b")))) is None


def test_negative_bounds():
    assert "delta" in validate(Motif((("a", "b"),), delta=-1))
    assert "phi" in validate(Motif((("a", "b"),), phi=-0.5))


def test_isolated_vertex():
    assert "not an endpoint" in validate(Motif((("a", "b"),), vertices=("a", "b", "z")))


def test_builtin_cycle3():
    m = builtin("cycle", 3)
    assert m.m == 3 and len(m.vertices) == 3
    assert m.edges[-1][1] == m.edges[0][0]
    assert m.slots() == (0, 1, 2, 0)


def test_builtin_chains():
    assert builtin("chain", 3).m == 2
    assert builtin("chain", 2).edges == (("v1", "v2"),)


@pytest.mark.parametrize("kind", ["chain", "cycle"])
def test_builtin_too_small(kind):
    with pytest.raises(MotifError):
        builtin(kind, 1)


@given(st.sampled_from(["chain", "cycle"]), st.integers(2, 9))
def test_builtin_walk_is_connected(kind, n):
    m = builtin(kind, n)
    assert validate(m) is None
    assert len(m.walk) == m.m + 1
    for (a, b), (c, d) in zip(m.edges, m.edges[1:]):
        assert b == c
    if kind == "cycle":
        assert len(set(m.vertices)) == n and m.edges[0][0] == m.edges[-1][1]


CYCLE_FILE = "delta 10\nphi 7\nedge 1 A B\nedge 2 B C\nedge 3 C A\n"


def test_parse_file():
    m = parse_motif_file(CYCLE_FILE)
    assert m.delta == 10 and m.phi == 7
    assert m.edges == (("A", "B"), ("B", "C"), ("C", "A"))
    assert m.slots() == builtin("cycle", 3).slots()


def test_parse_file_order_normalised():
    shuffled = "# comment\nphi 7\nedge 2 B C\nedge 1 A B\ndelta 10\nedge 3 C A  # closes\n"
    assert parse_motif_file(shuffled) == parse_motif_file(CYCLE_FILE)


@pytest.mark.parametrize(
    "text,err",
    [
        ("delta 1\nphi 0\nedge 1 A B\nedge 3 B C\n", "line 4: label gap"),
        ("delta 1\nphi 0\nedge 1 A B\nedge 1 B C\n", "line 4: duplicate"),
        ("phi 0\nedge 1 A B\n", "missing 'delta'"),
        ("delta 1\nedge 1 A B\n", "missing 'phi'"),
        ("delta 1\nphi 0\nedge A B\n", "line 3"),
        ("delta x\nphi 0\nedge 1 A B\n", "line 1"),
        ("delta 1\nphi 0\nedge 1 A B\nedge 2 C D\n", "chain break"),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(MotifError, match=err):
        parse_motif_file(text)


def test_resolve_shorthand_and_file(tmp_path):
    assert resolve("cycle:4", delta=5).name == "cycle:4"
    p = tmp_path / "m.txt"
    p.write_text(CYCLE_FILE)
    assert resolve(str(p)).m == 3
