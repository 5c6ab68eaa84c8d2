from __future__ import annotations

import math

import pytest

from timecent import (
    ErTvgSpec,
    format_tvg,
    generate_er_tvg,
    reference_spec,
    snapshot_pairs,
)


def test_p_zero_gives_empty_snapshots():
    tvg = generate_er_tvg(ErTvgSpec(4, 3, 0.0, seed=1))
    assert tvg.num_instants == 3
    assert tvg.num_contacts() == 0


def test_p_one_gives_complete_snapshots():
    tvg = generate_er_tvg(ErTvgSpec(4, 3, 1.0, seed=1))
    assert [len(s) for s in tvg.snapshots] == [6, 6, 6]


def test_single_node_has_no_pairs():
    tvg = generate_er_tvg(ErTvgSpec(1, 5, 1.0, seed=1))
    assert tvg.num_contacts() == 0


def test_spec_validation():
    with pytest.raises(ValueError):
        ErTvgSpec(0, 3, 0.5, 1)
    with pytest.raises(ValueError):
        ErTvgSpec(4, 0, 0.5, 1)
    with pytest.raises(ValueError):
        ErTvgSpec(4, 3, 1.5, 1)
    with pytest.raises(ValueError):
        ErTvgSpec(4, 3, 0.5, -1)


def test_reference_spec_parameters():
    spec = reference_spec(1)
    assert spec.num_nodes == 160
    assert spec.num_instants == 800
    assert spec.edge_probability == pytest.approx(0.01 * math.log(160) / 160, rel=1e-12)
    assert spec.edge_probability == pytest.approx(3.17198363452e-04, rel=1e-11)
    assert spec.seed == 1


def test_same_seed_is_byte_identical():
    spec = ErTvgSpec(30, 50, 0.05, seed=42)
    a = generate_er_tvg(spec)
    b = generate_er_tvg(spec)
    assert a == b
    assert format_tvg(a) == format_tvg(b)


def test_different_seeds_differ():
    a = generate_er_tvg(ErTvgSpec(30, 50, 0.05, seed=1))
    b = generate_er_tvg(ErTvgSpec(30, 50, 0.05, seed=2))
    assert a != b


def test_snapshots_are_independent_substreams():
    """Any snapshot can be regenerated alone, enabling parallel generation."""
    spec = ErTvgSpec(25, 40, 0.08, seed=9)
    tvg = generate_er_tvg(spec)
    for i in (0, 7, 39):
        assert frozenset(snapshot_pairs(spec, i)) == tvg.snapshots[i].contacts
    with pytest.raises(ValueError):
        snapshot_pairs(spec, 40)


def test_mean_contacts_matches_expectation():
    """Contacts per snapshot concentrate on p * C(n, 2) over many instants."""
    spec = ErTvgSpec(60, 400, 0.01, seed=5)
    tvg = generate_er_tvg(spec)
    expected = spec.edge_probability * 60 * 59 / 2
    mean = tvg.num_contacts() / spec.num_instants
    assert abs(mean - expected) <= 0.15 * expected


def test_contact_pairs_are_canonical():
    tvg = generate_er_tvg(ErTvgSpec(12, 30, 0.3, seed=3))
    for snap in tvg.snapshots:
        for a, b in snap.contact_list:
            assert 0 <= a < b < 12
