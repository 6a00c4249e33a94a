"""
Grading and Koszul Signs
========================

Every sign in the engine is produced here. Other modules never write a
(-1)^... by hand; they describe the rearrangement they perform and ask this
module for its sign.

CONVENTIONS:
------------
- Degrees are plain Python ints (cohomological degree).
- A basis vector v used as an argument of a multilinear map always sits in a
  shifted space. Its "letter degree" is |sv| = |v| - 1.
- A permutation is given by its images: new position k holds the old element
  images[k]. Public functions take 1-based images, internal helpers 0-based.

    old:  v1 v2 v3          images (2, 3, 1)
    new:  v2 v3 v1

KOSZUL RULE:
------------
Every time two homogeneous elements of degrees p and q swap places, the
result picks up (-1)^(p*q). A permutation collects one factor per inverted
pair.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from errors import GradingError

# =============================================================================
# BASIC HELPERS
# =============================================================================


def sign(exponent: int) -> int:
    """(-1)^exponent for any integer exponent."""
    return -1 if exponent % 2 else 1


def letter_degree(degree: int) -> int:
    """Degree of s v in the [1]-shifted space."""
    return degree - 1


def total(degrees: Iterable[int]) -> int:
    return sum(degrees)


def as_scalar(value: int | Fraction | str) -> Fraction:
    """Exact rational from an int, a Fraction or a "p/q" string."""
    return Fraction(value)


# =============================================================================
# PERMUTATIONS
# =============================================================================


@dataclass(frozen=True)
class Permutation:
    """
    A permutation stored by its 1-based images.

    Attributes:
    -----------
    images : tuple[int, ...]
        images[k] is the old (1-based) position of the element that lands
        in new position k + 1.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise GradingError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def cycle(cls, n: int, power: int = 1) -> Permutation:
        """
        Power of the generator of C_n.

        The generator moves the last element to the front, which is how the
        cyclic action rotates input blocks.
        """
        if n == 0:
            return cls(())
        shift = power % n
        return cls(tuple(((k - shift) % n) + 1 for k in range(n)))

    def __len__(self) -> int:
        return len(self.images)

    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.images)

    def act(self, items: Sequence) -> tuple:
        """Rearrange items: position k receives items[images[k] - 1]."""
        if len(items) != len(self.images):
            raise GradingError(f"permutation of length {len(self)} applied to {len(items)} items")
        return tuple(items[i - 1] for i in self.images)

    def then(self, other: Permutation) -> Permutation:
        """
        Composite rearrangement: first self, then other.

        act(self.then(other), xs) == other.act(self.act(xs))
        """
        if len(other) != len(self):
            raise GradingError("cannot compose permutations of different lengths")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for k, i in enumerate(self.images, start=1):
            inv[i - 1] = k
        return Permutation(tuple(inv))

    def power_of_cycle(self) -> int | None:
        """Return k if self == cycle(n, k), else None."""
        n = len(self.images)
        for k in range(max(n, 1)):
            if Permutation.cycle(n, k) == self:
                return k
        return None


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(tuple(i + 1 for i in p)) for p in permutations(range(n))]


# =============================================================================
# KOSZUL SIGNS
# =============================================================================


def reorder_sign(order: Sequence[int], degrees: Sequence[int]) -> int:
    """
    Koszul sign of rearranging items into [items[i] for i in order].

    Parameters:
    -----------
    order : sequence of distinct 0-based indices
    degrees : degree of each item in its original position

    Returns:
    --------
    int : +1 or -1
    """
    if len(order) != len(degrees):
        raise GradingError(f"order of length {len(order)} for {len(degrees)} degrees")
    odd = [degrees[i] % 2 for i in order]
    flips = 0
    for p in range(len(order)):
        if not odd[p]:
            continue
        for q in range(p + 1, len(order)):
            if odd[q] and order[p] > order[q]:
                flips += 1
    return sign(flips)


def koszul_sign(perm: Permutation | Sequence[int], degrees: Sequence[int]) -> int:
    """
    Sign of permuting homogeneous elements of the given degrees by perm.

    Examples:
    ---------
        koszul_sign((2, 1), (1, 1))          -> -1
        koszul_sign((2, 3, 1), (1, 1, 1))    -> +1
    """
    if not isinstance(perm, Permutation):
        perm = Permutation(tuple(perm))
    if len(perm) != len(degrees):
        raise GradingError(
            f"permutation of length {len(perm)} does not match {len(degrees)} degrees"
        )
    return reorder_sign(perm.zero_based(), degrees)


def block_swap_sign(left: int, right: int) -> int:
    """Sign of moving a block of total degree `right` past one of degree `left`."""
    return sign(left * right)


def rotation_sign(degrees: Sequence[int], r: int) -> int:
    """
    Sign of the cyclic rotation word -> word[r:] + word[:r].

    The first r items travel together past the remaining ones.
    """
    r %= max(len(degrees), 1)
    return block_swap_sign(sum(degrees[:r]), sum(degrees[r:]))


def block_permutation_sign(order: Sequence[int], block_degrees: Sequence[int]) -> int:
    """Koszul sign of permuting whole blocks, each carrying its total degree."""
    return reorder_sign(order, block_degrees)


# =============================================================================
# SHIFT ISOMORPHISMS
# =============================================================================


class Side(enum.StrEnum):
    OUTPUT = "output"
    INPUT = "input"


def shift_tensor_sign(d: int, j: int, degrees: Sequence[int]) -> int:
    """
    Sign for moving an s_d shift from outside a tensor product onto slot j.

    H_j carries (-1)^(d * (|v_1| + ... + |v_{j-1}|)); j is 1-based.
    """
    if not 1 <= j <= len(degrees):
        raise GradingError(f"slot {j} out of range for {len(degrees)} factors")
    return sign(d * sum(degrees[: j - 1]))


def shift_hom_sign(d: int, side: Side | str, f_degree: int) -> int:
    """
    Sign of the shift isomorphism on Hom spaces.

    Shifting the output carries no sign; shifting the input carries
    (-1)^(d |f|).
    """
    side = Side(side)
    if side is Side.OUTPUT:
        return 1
    return sign(d * f_degree)
