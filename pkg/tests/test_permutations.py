# tests/test_permutations.py

from functools import reduce
from pathlib import Path
import sys

# Ensure the core modules can be imported
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import permutations as perms


# --- Evaluation for words and composition ---

def test_reduced_words_rebuild_permutations():
    """
    Assesses that a permutation is the composite of the adjacent transpositions in its reduced word.
    """
    for g in perms.all_permutations(4):
        word = perms.reduced_word(g)
        assert len(word) == perms.inversions(g), "reduced words have one letter per inversion"
        rebuilt = reduce(perms.compose, [perms.adjacent(i, 4) for i in word], perms.identity(4))
        assert rebuilt == g, f"word {word} should rebuild {g}"
        assert perms.sign(g) == (-1) ** len(word)


def test_inverse_and_composition():
    for g in perms.all_permutations(3):
        assert perms.compose(g, perms.inverse(g)) == perms.identity(3)
        assert perms.compose(perms.inverse(g), g) == perms.identity(3)
    assert len(perms.all_permutations(3)) == 6


# --- Evaluation for block permutations ---

def test_block_product_acts_on_consecutive_blocks():
    assert perms.product((1, 0), (0,), (1, 0)) == (1, 0, 2, 4, 3)


def test_block_swap_moves_the_last_block_to_the_front():
    """
    Assesses block_swap(p, q): positions 0..p-1 go to q..q+p-1, the last q go to the front.
    """
    assert perms.block_swap(2, 1) == (1, 2, 0)
    assert perms.block_swap(1, 2) == (2, 0, 1)
    assert perms.cycle_last_to_front(3) == (1, 2, 0)
    assert perms.cycle_last_to_front(0) == ()
