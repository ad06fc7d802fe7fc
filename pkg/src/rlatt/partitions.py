"""Bounded-partition combinatorics.

Partitions are plain tuples of weakly decreasing positive integers with
trailing zeros trimmed away; the empty partition is ``()``.  The functions
here enumerate the lattice of partitions fitting inside an ``n x m`` box,
manipulate vertical strips, and provide the dominance order and the
dominant-weight coordinates used by the rest of the package.
"""

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

__all__ = [
    "trim",
    "pad",
    "weight",
    "is_partition",
    "LatticeBasis",
    "enumerate_lattice",
    "reduce_partition",
    "vertical_strips",
    "add_strip",
    "dominance_leq",
    "min_column",
    "weight_to_partition",
    "partition_to_weight",
]


def trim(parts) -> tuple[int, ...]:
    """Drop trailing zeros."""
    parts = tuple(parts)
    end = len(parts)
    while end > 0 and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def pad(lam, length: int) -> tuple[int, ...]:
    """Zero-pad a partition to the given length."""
    lam = trim(lam)
    if len(lam) > length:
        raise ValueError(f"partition {lam} has more than {length} parts")
    return lam + (0,) * (length - len(lam))


def weight(lam) -> int:
    return sum(lam)


def is_partition(parts) -> bool:
    parts = tuple(parts)
    if any(x < 0 for x in parts):
        return False
    return all(parts[j] >= parts[j + 1] for j in range(len(parts) - 1))


@dataclass(frozen=True)
class LatticeBasis:
    """Deterministically ordered basis of the partitions inside an n x m box.

    The order is graded by weight, with ties broken by descending
    lexicographic comparison of the zero-padded parts, so matrix indices are
    stable across runs.
    """

    n: int
    m: int
    order: tuple[tuple[int, ...], ...]
    index: dict

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)


def enumerate_lattice(n: int, m: int) -> LatticeBasis:
    """Enumerate all partitions with at most n parts, each of size at most m."""
    if not (isinstance(n, int) and isinstance(m, int)) or n < 1 or m < 1:
        raise ValueError(f"lattice shape requires integers n >= 1, m >= 1, got ({n}, {m})")
    found = [trim(sorted(c, reverse=True)) for c in combinations_with_replacement(range(m + 1), n)]
    found.sort(key=lambda lam: (weight(lam), tuple(-x for x in pad(lam, n))))
    order = tuple(found)
    return LatticeBasis(n=n, m=m, order=order, index={lam: i for i, lam in enumerate(order)})


def reduce_partition(mu, n: int) -> tuple[int, ...]:
    """Subtract the (n+1)-th part from the first n parts."""
    mu = trim(mu)
    if len(mu) > n + 1:
        raise ValueError(f"partition {mu} has more than {n + 1} parts")
    padded = pad(mu, n + 1)
    last = padded[n]
    return trim(tuple(x - last for x in padded[:n]))


def vertical_strips(r: int, n: int) -> list[tuple[int, ...]]:
    """All 0/1 masks of length n+1 with exactly r ones."""
    if not 1 <= r <= n + 1:
        raise ValueError(f"strip size {r} outside 1..{n + 1}")
    masks = []
    for ones in combinations(range(n + 1), r):
        mask = [0] * (n + 1)
        for j in ones:
            mask[j] = 1
        masks.append(tuple(mask))
    return masks


def add_strip(lam, strip) -> tuple[tuple[int, ...], bool]:
    """Add a 0/1 strip to a partition.

    Returns the resulting composition (zero-padded to the strip length) and a
    flag telling whether it is weakly decreasing.
    """
    padded = pad(lam, len(strip))
    mu = tuple(x + t for x, t in zip(padded, strip))
    dominant = all(mu[j] >= mu[j + 1] for j in range(len(mu) - 1))
    return mu, dominant


def dominance_leq(lam, mu, n: int) -> bool:
    """Dominance order on partitions with at most n parts.

    ``lam <= mu`` iff for every r = 1..n the partial-sum difference corrected
    by r*(|lam| - |mu|)/(n+1) is a nonpositive integer.  Partitions of
    different weight are comparable only when the weights agree mod n+1.
    """
    lam, mu = trim(lam), trim(mu)
    for name, part in (("lam", lam), ("mu", mu)):
        if len(part) > n or not is_partition(part):
            raise ValueError(f"{name}={part} is not a partition with at most {n} parts")
    lam_p, mu_p = pad(lam, n), pad(mu, n)
    wdiff = weight(lam) - weight(mu)
    acc = 0
    for r in range(1, n + 1):
        acc += lam_p[r - 1] - mu_p[r - 1]
        num = (n + 1) * acc - r * wdiff
        if num % (n + 1) != 0 or num > 0:
            return False
    return True


def min_column(mu) -> int:
    """Smallest j with mu_j > mu_{j+1}; 0 for the empty partition."""
    mu = trim(mu)
    for j in range(len(mu)):
        nxt = mu[j + 1] if j + 1 < len(mu) else 0
        if mu[j] > nxt:
            return j + 1
    return 0


def weight_to_partition(l) -> tuple[int, ...]:
    """Partition from dominant-weight coordinates: lam_j = l_j + ... + l_n."""
    l = tuple(l)
    if any(x < 0 for x in l):
        raise ValueError(f"weight coordinates must be nonnegative, got {l}")
    lam = []
    total = 0
    for x in reversed(l):
        total += x
        lam.append(total)
    return trim(reversed(lam))


def partition_to_weight(lam, n: int) -> tuple[int, ...]:
    """Dominant-weight coordinates l_r = lam_r - lam_{r+1} of a partition."""
    lam = trim(lam)
    if not is_partition(lam) or len(lam) > n:
        raise ValueError(f"{lam} is not a partition with at most {n} parts")
    padded = pad(lam, n + 1)
    return tuple(padded[r] - padded[r + 1] for r in range(n))
