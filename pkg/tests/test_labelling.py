import pytest
from hypothesis import given
from hypothesis import strategies as st

from gracetree import (
    Labelling,
    RootedSymmetricTree,
    TranspositionProduct,
    apply_permutation,
    build,
    complement,
    edge_labels,
    is_graceful,
    labelling_from_json,
    labelling_to_json,
    path_sequence,
    reflect,
    relabel_vertices,
    shift,
    theorem1_label,
    to_general,
)

sequences = (
    st.lists(st.integers(1, 4), min_size=1, max_size=4)
    .map(tuple)
    .filter(lambda s: RootedSymmetricTree(s).n <= 120)
)


def test_labelling_validation():
    with pytest.raises(ValueError):
        Labelling(())
    with pytest.raises(ValueError):
        Labelling((0, 0, 1))
    with pytest.raises(ValueError):
        Labelling((1, 2, 3))
    f = Labelling((2, 0, 1))
    assert f.n == 3
    assert f[0] == 2
    assert f.vertex_with_label(0) == 1
    assert list(f) == [2, 0, 1]


def test_edge_labels_golden():
    g = to_general(build(path_sequence(3)))
    assert edge_labels(g, (1, 2, 0)) == (1, 2)
    with pytest.raises(ValueError):
        edge_labels(g, (0, 1))


def test_is_graceful_basics():
    g = to_general(build(path_sequence(3)))
    assert is_graceful(g, (1, 2, 0))
    assert not is_graceful(g, (0, 1, 2))
    assert not is_graceful(g, (0, 0, 1))
    with pytest.raises(ValueError):
        is_graceful(g, (0, 1))


@given(sequences)
def test_complement_involution_preserves_gracefulness(seq):
    t = build(seq)
    g = to_general(t)
    f = theorem1_label(t)
    c = complement(f)
    assert is_graceful(g, c)
    assert complement(c).labels == f.labels


def test_shift_reflect_raw():
    assert shift((0, 2, 1), 5) == (5, 7, 6)
    assert shift(Labelling((0, 2, 1)), -1) == (-1, 1, 0)
    assert reflect((0, 2, 1), 4) == (4, 2, 3)


@given(st.lists(st.integers(0, 50), min_size=2, max_size=12, unique=True), st.integers(-20, 20))
def test_shift_preserves_differences(values, amount):
    diffs = [abs(a - b) for a, b in zip(values, values[1:])]
    moved = shift(tuple(values), amount)
    assert [abs(a - b) for a, b in zip(moved, moved[1:])] == diffs


@given(st.lists(st.integers(0, 50), min_size=2, max_size=12, unique=True), st.integers(50, 90))
def test_reflect_preserves_differences_and_involutes(values, pivot):
    diffs = [abs(a - b) for a, b in zip(values, values[1:])]
    flipped = reflect(tuple(values), pivot)
    assert [abs(a - b) for a, b in zip(flipped, flipped[1:])] == diffs
    assert reflect(flipped, pivot) == tuple(values)


def test_transposition_product_validation():
    with pytest.raises(ValueError):
        TranspositionProduct(((1, 1),))
    with pytest.raises(ValueError):
        TranspositionProduct(((0, 1), (1, 2)))
    with pytest.raises(ValueError):
        TranspositionProduct(((-1, 2),))
    p = TranspositionProduct(((0, 4), (5, 9)))
    assert p.apply_to_value(4) == 0
    assert p.apply_to_value(7) == 7


def test_apply_permutation():
    f = Labelling((0, 2, 1, 3))
    p = TranspositionProduct(((0, 3),))
    assert apply_permutation(f, p).labels == (3, 2, 1, 0)
    with pytest.raises(ValueError):
        apply_permutation(Labelling((0, 1)), TranspositionProduct(((0, 5),)))


def test_relabel_vertices():
    f = Labelling((0, 2, 1))
    ident = relabel_vertices(f, (0, 1, 2))
    assert ident.labels == f.labels
    swapped = relabel_vertices(f, (2, 1, 0))
    assert swapped.labels == (1, 2, 0)
    with pytest.raises(ValueError):
        relabel_vertices(f, (0, 0, 1))


def test_labelling_json_roundtrip():
    f = Labelling((2, 0, 1))
    assert labelling_from_json(labelling_to_json(f)).labels == f.labels
    text = labelling_to_json(f, extra={"note": "x"})
    assert '"note"' in text
    with pytest.raises(ValueError):
        labelling_from_json('{"nope": []}')
