# core/permutations.py

"""
Permutations as tuples: ``perm[i]`` is the image of position i.

Composition is ``compose(a, b)[i] = a[b[i]]`` (apply b first). Adjacent
transpositions s_i swap positions i and i+1, 0-indexed.
"""
from functools import lru_cache
from itertools import permutations as _itertools_permutations
from typing import List, Sequence, Tuple

Perm = Tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def adjacent(i: int, n: int) -> Perm:
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def inversions(a: Perm) -> int:
    return sum(1 for i in range(len(a)) for j in range(i + 1, len(a)) if a[i] > a[j])


def sign(a: Perm) -> int:
    return -1 if inversions(a) % 2 else 1


@lru_cache(maxsize=None)
def reduced_word(a: Perm) -> Tuple[int, ...]:
    """Indices w with a = s_{w[0]} o s_{w[1]} o ... ; peels off the first descent."""
    for i in range(len(a) - 1):
        if a[i] > a[i + 1]:
            return reduced_word(compose(a, adjacent(i, len(a)))) + (i,)
    return ()


def product(*perms: Perm) -> Perm:
    """Block product a x b x ... acting on consecutive blocks."""
    out: List[int] = []
    offset = 0
    for p in perms:
        out.extend(offset + j for j in p)
        offset += len(p)
    return tuple(out)


def cycle_last_to_front(n: int) -> Perm:
    """Position n-1 goes to 0 and every other position moves up by one."""
    if n == 0:
        return ()
    return tuple(i + 1 for i in range(n - 1)) + (0,)


def block_swap(p: int, q: int) -> Perm:
    """Sends the last q positions to the front, keeping the order inside blocks."""
    return tuple(q + i for i in range(p)) + tuple(range(q))


def all_permutations(n: int) -> List[Perm]:
    return list(_itertools_permutations(range(n)))


@lru_cache(maxsize=None)
def shuffles(sizes: Tuple[int, ...]) -> Tuple[Perm, ...]:
    """
    Multi-shuffles for the block sizes: permutations increasing on each block,
    one per coset of the Young subgroup, in lexicographic order of the block
    labels they give to positions.
    """
    n = sum(sizes)
    labels = []
    for b, size in enumerate(sizes):
        labels.extend([b] * size)
    out = []
    for lab in sorted(set(_itertools_permutations(labels))):
        positions = [[pos for pos in range(n) if lab[pos] == b] for b in range(len(sizes))]
        out.append(tuple(pos for block in positions for pos in block))
    return tuple(out)


def blocks(sizes: Sequence[int]) -> List[range]:
    out, offset = [], 0
    for size in sizes:
        out.append(range(offset, offset + size))
        offset += size
    return out


def coset_decompose(g: Perm, gamma: Perm, sizes: Tuple[int, ...]) -> Tuple[Perm, Tuple[Perm, ...]]:
    """
    Writes g o gamma = gamma' o h with gamma' a multi-shuffle and h in the
    Young subgroup; returns gamma' and h as one permutation per block.
    """
    full = compose(g, gamma)
    gamma_new: List[int] = []
    for blk in blocks(sizes):
        gamma_new.extend(sorted(full[i] for i in blk))
    gamma_new_t = tuple(gamma_new)
    h = compose(inverse(gamma_new_t), full)
    parts = []
    for blk in blocks(sizes):
        start = blk.start
        parts.append(tuple(h[i] - start for i in blk))
    return gamma_new_t, tuple(parts)
