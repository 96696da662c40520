"""
Stratum labels: multiplicity vectors and set partitions of {1..n}.
"""
from typing import Any, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class MultiplicityVector(BaseModel):
    """w with w[i-1] = number of eigenvalues of multiplicity i, sum i*w_i = n = len(w)."""

    model_config = ConfigDict(frozen=True)

    w: Tuple[int, ...]

    @model_validator(mode="after")
    def _check(self) -> "MultiplicityVector":
        if any(x < 0 for x in self.w):
            raise ValueError(f"Multiplicities must be non-negative: {self.w}")
        total = sum((i + 1) * x for i, x in enumerate(self.w))
        if total != len(self.w):
            raise ValueError(f"sum i*w_i = {total} does not equal n = {len(self.w)} for w={self.w}")
        return self

    @classmethod
    def of(cls, *w: int) -> "MultiplicityVector":
        return cls(w=tuple(w))

    @classmethod
    def from_block_sizes(cls, n: int, sizes: Sequence[int]) -> "MultiplicityVector":
        w = [0] * n
        for size in sizes:
            w[size - 1] += 1
        return cls(w=tuple(w))

    @classmethod
    def generic(cls, n: int) -> "MultiplicityVector":
        """(n, 0, ..., 0): the open stratum of simple spectra."""
        return cls(w=(n,) + (0,) * (n - 1))

    @classmethod
    def pair(cls, n: int) -> "MultiplicityVector":
        """(n-2, 1, 0, ...): exactly one double eigenvalue."""
        if n < 2:
            raise ValueError("A double eigenvalue needs n >= 2")
        return cls(w=(n - 2, 1) + (0,) * (n - 2))

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def is_proper(self) -> bool:
        """Stratum of the discriminant (w_1 < n)."""
        return self.n > 0 and self.w[0] < self.n

    @property
    def block_count(self) -> int:
        """Number of distinct eigenvalues, i.e. the dimension of each plane."""
        return sum(self.w)

    def block_sizes(self) -> List[int]:
        """Block sizes in descending order."""
        sizes: List[int] = []
        for i in range(self.n, 0, -1):
            sizes.extend([i] * self.w[i - 1])
        return sizes

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.w) + ")"


class SetPartition(BaseModel):
    """Partition of {1..n} into non-empty blocks, canonically ordered by smallest element."""

    model_config = ConfigDict(frozen=True)

    blocks: Tuple[Tuple[int, ...], ...]

    @field_validator("blocks", mode="before")
    @classmethod
    def _canonical(cls, value: Any) -> Tuple[Tuple[int, ...], ...]:
        blocks = [tuple(sorted(int(i) for i in block)) for block in value]
        if any(not block for block in blocks):
            raise ValueError("Set partition blocks must be non-empty")
        return tuple(sorted(blocks, key=lambda block: block[0]))

    @model_validator(mode="after")
    def _check(self) -> "SetPartition":
        elements = [i for block in self.blocks for i in block]
        if sorted(elements) != list(range(1, len(elements) + 1)):
            raise ValueError(f"Blocks {self.blocks} do not partition {{1..{len(elements)}}}")
        return self

    @property
    def n(self) -> int:
        return sum(len(block) for block in self.blocks)

    def multiplicity_vector(self) -> MultiplicityVector:
        return MultiplicityVector.from_block_sizes(self.n, [len(block) for block in self.blocks])

    def to_json(self) -> List[List[int]]:
        return [list(block) for block in self.blocks]

    def __str__(self) -> str:
        return "{" + "|".join("".join(str(i) for i in block) for block in self.blocks) + "}"
