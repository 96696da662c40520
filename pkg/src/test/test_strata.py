"""
Combinatorics of the multiplicity stratification, checked against brute-force set partitions.
"""
import os
import sys
from collections import Counter

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.partitions import MultiplicityVector, SetPartition
from utils.strata import (
    bell_number,
    codim,
    count_planes,
    eddeg,
    enumerate_multiplicity_vectors,
    enumerate_partitions_of_type,
    integer_partitions,
    strata_table,
    type_of_partition,
)


def _all_set_partitions(items):
    """Every set partition of `items`, by inserting the first element into each block of the rest."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for partition in _all_set_partitions(rest):
        yield [[head]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[head] + partition[i]] + partition[i + 1 :]


def test_multiplicity_vectors():
    assert enumerate_multiplicity_vectors(3, proper_only=True) == [MultiplicityVector.of(0, 0, 1), MultiplicityVector.of(1, 1, 0)]
    assert len(enumerate_multiplicity_vectors(4)) == 5
    assert enumerate_multiplicity_vectors(1, proper_only=True) == []
    assert [sum(p) for p in integer_partitions(6)] == [6] * 11
    print("✓ multiplicity vectors follow integer partitions")


def test_codim():
    for n in range(2, 9):
        assert codim(MultiplicityVector.pair(n)) == 2
        assert codim(MultiplicityVector.generic(n)) == 0
    assert codim(MultiplicityVector.of(0, 0, 1)) == 5
    # the all-equal stratum is the line of scalar matrices
    for n in range(1, 9):
        w = MultiplicityVector(w=(0,) * (n - 1) + (1,))
        assert codim(w) == n * (n + 1) // 2 - 1


def test_count_planes_examples():
    assert count_planes(MultiplicityVector.pair(4)) == 6
    assert count_planes(MultiplicityVector.of(0, 2, 0, 0)) == 3
    assert count_planes(MultiplicityVector.of(0, 0, 0, 0, 1)) == 1
    assert eddeg(MultiplicityVector.of(1, 1, 0)) == 3
    assert eddeg(MultiplicityVector.of(3, 1, 0, 0, 0)) == 10
    assert eddeg(MultiplicityVector.of(0, 3, 0, 0, 0, 0)) == 15
    try:
        eddeg(MultiplicityVector.generic(3))
        raise AssertionError("the open stratum has no ED degree here")
    except ValueError:
        pass


def test_partitions_of_type():
    found = {str(p) for p in enumerate_partitions_of_type(MultiplicityVector.of(1, 1, 0))}
    assert found == {"{1|23}", "{12|3}", "{13|2}"}
    assert [str(p) for p in enumerate_partitions_of_type(MultiplicityVector.of(0, 1))] == ["{12}"]
    assert len(enumerate_partitions_of_type(MultiplicityVector.of(0, 2, 0, 0))) == 3
    for partition in enumerate_partitions_of_type(MultiplicityVector.of(1, 0, 1, 0)):
        assert type_of_partition(partition) == MultiplicityVector.of(1, 0, 1, 0)


def test_bell_closure_against_brute_force():
    for n in range(1, 11):
        brute = Counter()
        for blocks in _all_set_partitions(list(range(1, n + 1))):
            brute[type_of_partition(SetPartition(blocks=blocks))] += 1
        assert sum(brute.values()) == bell_number(n)
        total = 0
        for w in enumerate_multiplicity_vectors(n):
            assert count_planes(w) == brute[w], f"count_planes({w}) = {count_planes(w)}, brute force {brute[w]}"
            total += count_planes(w)
        assert total == bell_number(n)
        if n <= 7:
            for w in enumerate_multiplicity_vectors(n):
                assert len(enumerate_partitions_of_type(w)) == brute[w]
    assert [bell_number(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    print("✓ plane counts sum to the Bell numbers for n <= 10")


def test_strata_table():
    table = strata_table(4)
    planes = {tuple(row["w"]): row["planes"] for row in table}
    assert planes == {(2, 1, 0, 0): 6, (0, 2, 0, 0): 3, (1, 0, 1, 0): 4, (0, 0, 0, 1): 1}
    assert all(row["eddeg"] == row["planes"] for row in table)
    full = strata_table(4, proper_only=False)
    assert len(full) == 5 and full[-1]["w"] == [4, 0, 0, 0] and full[-1]["eddeg"] is None
    print("✓ strata table for n = 4")


if __name__ == "__main__":
    test_multiplicity_vectors()
    test_codim()
    test_count_planes_examples()
    test_partitions_of_type()
    test_bell_closure_against_brute_force()
    test_strata_table()
    print("\n✅ All strata tests passed!")
