import itertools

import pytest

from gracetree import (
    METHOD_SEARCH,
    RootedSymmetricTree,
    SweepSpec,
    build,
    enumerate_family,
    evaluate_sequence,
    is_graceful,
    is_zero_rotatable,
    rotatability_to_csv,
    run_sweep,
    sequence_label,
    sweep_to_csv,
    to_general,
)
from gracetree.sweep import ROTATE0_SCHEMA, SWEEP_COLUMNS, SWEEP_SCHEMA


def brute_sequences(nmax: int) -> list[tuple[int, ...]]:
    # independent enumeration: filter raw products by total size.
    # the path shows a length-L sequence needs at least L+1 vertices,
    # so lengths beyond nmax-1 cannot fit.
    out = []
    for length in range(1, nmax):
        for seq in itertools.product(range(1, nmax), repeat=length):
            n = 1
            for k in reversed(seq):
                n = 1 + k * n
            if n <= nmax:
                out.append(seq)
    return sorted(out, key=lambda s: (RootedSymmetricTree(s).n, len(s), s))


def test_enumerate_rst_all_matches_product_filter():
    for nmax in (2, 5, 8):
        got = enumerate_family(SweepSpec("rst_all", nmax=nmax))
        assert got == brute_sequences(nmax)
        assert len(got) == len(set(got))
        for seq in got:
            assert RootedSymmetricTree(seq).n <= nmax


def test_enumerate_family_goldens():
    spiders = enumerate_family(SweepSpec("symmetric_spider", legs=3, branches=(2, 4)))
    assert spiders == [(2, 1, 1), (3, 1, 1), (4, 1, 1)]

    bananas = enumerate_family(SweepSpec("symmetric_banana", branches=(2, 3)))
    assert bananas == [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3)]

    q3 = enumerate_family(SweepSpec("q3", nmax=7))
    assert q3 == [(1, 1), (1, 2), (1, 3), (2, 1), (1, 4), (1, 5), (2, 2), (3, 1)]

    capped = enumerate_family(SweepSpec("symmetric_spider", legs=3, branches=(2, 4), nmax=8))
    assert capped == [(2, 1, 1)]


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec("mystery_family")
    with pytest.raises(ValueError):
        SweepSpec("q3", branches=(3, 2))
    with pytest.raises(ValueError):
        enumerate_family(SweepSpec("rst_all"))
    with pytest.raises(ValueError):
        enumerate_family(SweepSpec("symmetric_spider", legs=2))
    with pytest.raises(ValueError):
        enumerate_family(SweepSpec("symmetric_banana"))


def test_evaluate_sequence_constructive():
    row = evaluate_sequence((2, 2), family="q3")
    assert row.tree_label == "2,2"
    assert row.n == 7 and row.q == 3
    assert row.all_yes
    assert METHOD_SEARCH not in row.methods
    assert row.nodes == 0
    for rep, labels in row.witnesses:
        assert is_graceful(to_general(build((2, 2))), labels)
        assert labels[rep] == 0


def test_evaluate_sequence_search_fallback_and_counterexample():
    row = evaluate_sequence((1, 1, 1, 2))
    assert not row.all_yes
    assert "no" in row.verdicts
    idx = row.verdicts.index("no")
    assert row.methods[idx] == METHOD_SEARCH
    # the refusal must agree with the plain search oracle
    rep = is_zero_rotatable(build((1, 1, 1, 2)))
    assert rep.verdict == "no"


def test_evaluate_matches_search_oracle_per_orbit():
    for seq in [(2, 2), (3, 1), (1, 1, 1, 2), (2, 1, 2)]:
        row = evaluate_sequence(seq)
        oracle = is_zero_rotatable(build(seq))
        assert row.orbit_reps == tuple(e.representative for e in oracle.entries)
        assert row.verdicts == tuple(e.verdict for e in oracle.entries), seq


def test_run_sweep_jobs_agree():
    spec = SweepSpec("q3", nmax=12)
    serial = run_sweep(spec, jobs=1)
    parallel = run_sweep(spec, jobs=2)
    strip = lambda r: (r.family, r.tree_label, r.n, r.q, r.orbit_reps, r.verdicts, r.methods, r.nodes, r.witnesses)
    assert [strip(r) for r in serial] == [strip(r) for r in parallel]


def test_sweep_csv_shape_and_stability():
    spec = SweepSpec("q3", nmax=10)
    rows = run_sweep(spec)
    text = sweep_to_csv(rows, include_timing=False)
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert len(lines) == len(rows) + 1
    for line in lines[1:]:
        assert line.startswith(SWEEP_SCHEMA + ",")
        assert line.endswith(",")  # timing column blanked
    # byte-stable across runs once timing is excluded
    again = sweep_to_csv(run_sweep(spec), include_timing=False)
    assert again == text
    timed = sweep_to_csv(rows, include_timing=True)
    assert not timed.strip().split("\n")[1].endswith(",")


def test_sweep_csv_golden_row():
    row = evaluate_sequence((2, 1), family="q3")
    text = sweep_to_csv([row], include_timing=False)
    line = text.strip().split("\n")[1]
    assert line == (
        'gracetree.sweep/1,q3,"2,1",5,3,3,0 1 3,yes yes yes,'
        "theorem1 complement_of theorem2_odd,true,0,"
    )


def test_rotate0_csv():
    rep = is_zero_rotatable(build((2, 2)), tree_id="2,2")
    text = rotatability_to_csv(rep, include_timing=False)
    lines = text.strip().split("\n")
    assert lines[0].startswith("schema,")
    assert len(lines) == 4
    for line in lines[1:]:
        assert line.startswith(ROTATE0_SCHEMA + ',"2,2",7,')


def test_sequence_label():
    assert sequence_label((3, 1, 4)) == "3,1,4"
