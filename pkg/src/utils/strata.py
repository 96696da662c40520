"""
Combinatorics of the eigenvalue-multiplicity stratification.
"""
import itertools
from functools import lru_cache
from math import factorial, prod
from typing import Any, Dict, Iterator, List, Sequence

from models.partitions import MultiplicityVector, SetPartition
from utils.exactform import binomial


def integer_partitions(n: int, largest: int = None) -> Iterator[List[int]]:
    """Partitions of n as non-increasing part lists, largest-first order."""
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - part, part):
            yield [part] + rest


def enumerate_multiplicity_vectors(n: int, proper_only: bool = False) -> List[MultiplicityVector]:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    vectors = [MultiplicityVector.from_block_sizes(n, parts) for parts in integer_partitions(n)]
    if proper_only:
        vectors = [w for w in vectors if w.is_proper]
    return vectors


def codim(w: MultiplicityVector) -> int:
    """sum_i (i-1)(i+2)/2 * w_i."""
    return sum((i - 1) * (i + 2) // 2 * wi for i, wi in enumerate(w.w, start=1))


def count_planes(w: MultiplicityVector) -> int:
    """Number of set partitions of {1..n} with w_i blocks of size i: n! / prod (i!)^w_i w_i!."""
    denominator = prod(factorial(i) ** wi * factorial(wi) for i, wi in enumerate(w.w, start=1))
    return factorial(w.n) // denominator


def eddeg(w: MultiplicityVector) -> int:
    """Euclidean distance degree of the stratum closure (equal to its plane count)."""
    if not w.is_proper:
        raise ValueError(f"{w} is the open stratum, not a stratum of the discriminant")
    return count_planes(w)


def _partitions_of_sizes(remaining: Sequence[int], sizes: Dict[int, int]) -> Iterator[List[tuple]]:
    if not remaining:
        yield []
        return
    head, tail = remaining[0], remaining[1:]
    for size in sorted(sizes):
        if sizes[size] == 0:
            continue
        sizes[size] -= 1
        for others in itertools.combinations(tail, size - 1):
            block = (head,) + others
            rest = [i for i in tail if i not in others]
            for blocks in _partitions_of_sizes(rest, sizes):
                yield [block] + blocks
        sizes[size] += 1


def enumerate_partitions_of_type(w: MultiplicityVector) -> List[SetPartition]:
    """All set partitions of {1..n} of type w; the block holding the smallest free index is chosen first."""
    sizes = {i: wi for i, wi in enumerate(w.w, start=1) if wi}
    return [SetPartition(blocks=blocks) for blocks in _partitions_of_sizes(list(range(1, w.n + 1)), sizes)]


def type_of_partition(partition: SetPartition) -> MultiplicityVector:
    return partition.multiplicity_vector()


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """B_n via B_{n+1} = sum_k C(n,k) B_k."""
    if n < 0:
        raise ValueError(f"bell_number needs n >= 0, got {n}")
    if n == 0:
        return 1
    return sum(binomial(n - 1, k) * bell_number(k) for k in range(n))


def strata_table(n: int, proper_only: bool = True) -> List[Dict[str, Any]]:
    """One row per stratum: w, codimension, plane count, ED degree and plane dimension."""
    rows = []
    for w in enumerate_multiplicity_vectors(n, proper_only=proper_only):
        planes = count_planes(w)
        rows.append(
            {
                "w": list(w.w),
                "codim": codim(w),
                "planes": planes,
                "eddeg": planes if w.is_proper else None,
                "plane_dim": w.block_count,
            }
        )
    return rows
