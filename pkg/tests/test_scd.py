"""Symmetric chain decompositions and removal decompositions."""

import math

import pytest

from nclat.errors import AssemblyFailure, HypothesisViolated, NotRankSymmetric
from nclat.fixtures import load_builtin
from nclat.geometry import make_configuration, standard_config
from nclat.partition import SetPartition
from nclat.poset import (
    bool_poset,
    build_nc_poset,
    poset_isomorphic,
    product_poset,
    rank_vector,
)
from nclat.scd import (
    boolean_scd,
    decomposition_parts,
    generic_scd,
    product_scd,
    removal_class,
    scd_S,
    scd_T,
    scd_U,
    scd_V,
    split_at_last_point,
    symmetric_chain_profile,
    verify_scd,
)
from nclat.enumeration import s_table, t_sequence, u_table, v_table


def test_boolean_scd_all_small():
    for n in range(9):
        chains = boolean_scd(n)
        res = verify_scd(bool_poset(n), chains)
        assert res.ok, (n, res.reason)
        assert res.chain_count == math.comb(n, n // 2)


def test_product_scd():
    a, b = boolean_scd(2), boolean_scd(3)
    combined = product_scd(a, b, combine=lambda x, y: (x, y))
    prod = product_poset(bool_poset(2), bool_poset(3))
    res = verify_scd(prod, combined)
    assert res.ok, res.reason


def test_generic_scd_on_circle():
    poset = build_nc_poset(standard_config("Q", 5))
    res = verify_scd(poset, generic_scd(poset))
    assert res.ok, res.reason


def test_scd_T_sizes():
    seq = t_sequence(5)
    for n in range(6):
        chains = scd_T(n)
        assert sum(len(c) for c in chains) == seq[n]
        poset = build_nc_poset(standard_config("T", n))
        res = verify_scd(poset, chains)
        assert res.ok, (n, res.reason)


@pytest.mark.parametrize("fam,builder,table", [
    ("U", scd_U, u_table),
    ("V", scd_V, v_table),
    ("S", scd_S, s_table),
])
def test_scd_families(fam, builder, table):
    tab = table(3, 3)
    for m in range(4):
        for n in range(4):
            chains = builder(m, n)
            expected = tab[m][n]
            if fam == "U" and (m, n) == (0, 0):
                expected = 1  # the empty lattice still has its empty partition
            assert sum(len(c) for c in chains) == expected
            poset = build_nc_poset(standard_config(fam, m, n))
            res = verify_scd(poset, chains)
            assert res.ok, (fam, m, n, res.reason)
            assert res.lengths == symmetric_chain_profile(rank_vector(poset))


def test_verify_scd_rejects_tampering():
    poset = bool_poset(3)
    good = [list(c) for c in boolean_scd(3)]

    missing = [c[:] for c in good]
    long_chain = max(range(len(missing)), key=lambda i: len(missing[i]))
    missing[long_chain] = missing[long_chain][:-1]
    assert not verify_scd(poset, missing).ok

    doubled = [c[:] for c in good] + [good[0][:1]]
    assert not verify_scd(poset, doubled).ok

    reversed_chain = [c[:] for c in good]
    reversed_chain[long_chain] = list(reversed(reversed_chain[long_chain]))
    assert not verify_scd(poset, reversed_chain).ok

    # splitting a 4-chain into two halves keeps it saturated but uncentered
    split = [c[:] for c in good if len(c) != 4]
    four = next(c for c in good if len(c) == 4)
    split += [four[:2], four[2:]]
    assert not verify_scd(poset, split).ok

    foreign = [c[:] for c in good]
    foreign[0] = foreign[0] + [frozenset({99})]
    assert not verify_scd(poset, foreign).ok


def test_symmetric_chain_profile():
    assert symmetric_chain_profile([1, 3, 3, 1]) == {4: 1, 2: 2}
    assert symmetric_chain_profile([1, 6, 6, 1]) == {4: 1, 2: 5}
    assert symmetric_chain_profile([5]) == {1: 5}
    with pytest.raises(NotRankSymmetric):
        symmetric_chain_profile([1, 2, 3])
    with pytest.raises(AssemblyFailure):
        symmetric_chain_profile([2, 1, 2])


def test_removal_class_partitions_the_lattice():
    cfg = standard_config("U", 2, 2)
    poset = build_nc_poset(cfg)
    counts = {}
    for pi in poset.elements:
        counts[removal_class(pi, 2)] = counts.get(removal_class(pi, 2), 0) + 1
    assert counts == {"A": 10, "B1": 2, "B2": 2}
    assert sum(counts.values()) == u_table(2, 2)[2][2]


def test_decomposition_parts_structure():
    dec = decomposition_parts("U", 2, 2)
    names = [p.name for p in dec.parts]
    assert names == ["A", "B1", "B2"]
    total = sorted(i for p in dec.parts for i in p.host_indices)
    assert total == list(range(len(dec.poset)))
    for part in dec.parts:
        induced = dec.poset.induced(part.host_indices)
        assert poset_isomorphic(induced, part.model)


def test_decomposition_parts_T():
    dec = decomposition_parts("T", 4)
    sizes = {p.name: len(p.host_indices) for p in dec.parts}
    assert sizes == {"A": 24, "B1": 4}
    b_part = next(p for p in dec.parts if p.name == "B1")
    induced = dec.poset.induced(b_part.host_indices)
    assert poset_isomorphic(induced, bool_poset(2))


def test_split_at_last_point():
    cfg = standard_config("Q", 5)
    sp = split_at_last_point(cfg)
    sub = build_nc_poset(sp.sub_config)
    assert len(sp.sub_config.points) == 4
    # both intervals copy the one-point-smaller lattice and cannot overlap:
    # below beta the last point is a singleton, above alpha it is paired
    assert len(sp.lower) == len(sp.upper) == len(sub) == 14
    assert not set(sp.lower.elements) & set(sp.upper.elements)
    assert poset_isomorphic(sp.lower, sub)
    assert poset_isomorphic(sp.upper, sub)
    # alpha joins the removed point to its neighbor, beta isolates it
    assert sp.alpha.block_of(4) == (3, 4)
    assert sp.beta.blocks[-1] == (4,)


def test_split_requires_boundary_position():
    with pytest.raises(HypothesisViolated):
        split_at_last_point(load_builtin("triangle-pinwheel"))
    scrambled = make_configuration([(0, 0), (2, 0), (1, 2), (3, 1)])
    with pytest.raises(HypothesisViolated):
        split_at_last_point(scrambled)
