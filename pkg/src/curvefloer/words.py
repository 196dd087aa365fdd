"""Words in the surface group read off side crossings, and Dehn's algorithm.

A word is a tuple of nonzero ints: letter +-(j+1) is a signed crossing of the
glued side pair j.  The one-relator presentation uses the vertex-link relator
computed by FlatSurface.relator(); its symmetrized set has pieces of length 1,
so Dehn's algorithm (replace any subword longer than half a relator by the
shorter complement) decides the word problem.
"""

from __future__ import annotations

from typing import List, Sequence, Set, Tuple

Word = Tuple[int, ...]


def free_reduce(word: Sequence[int]) -> Word:
    out: List[int] = []
    for letter in word:
        if letter == 0:
            raise ValueError("zero letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def rotations(word: Sequence[int]):
    w = tuple(word)
    for i in range(len(w)):
        yield w[i:] + w[:i]


def symmetrized_relators(relator: Sequence[int]) -> List[Word]:
    rels: Set[Word] = set()
    for base in (tuple(relator), invert(relator)):
        rels.update(rotations(base))
    return sorted(rels)


def _find_subword(cyclic: Word, pattern: Word) -> int:
    """Start index of pattern inside the cyclic word, or -1."""
    n = len(cyclic)
    if len(pattern) > n:
        return -1
    doubled = cyclic + cyclic
    for i in range(n):
        if doubled[i:i + len(pattern)] == pattern:
            return i
    return -1


def dehn_reduce(word: Sequence[int], relator: Sequence[int]) -> Word:
    """Fixpoint of free/cyclic reduction plus Dehn replacement steps.

    Each Dehn step finds a cyclic subword equal to more than half of some
    symmetrized relator and replaces it by the inverse of the complement,
    strictly shortening the word; the result is empty iff the word is trivial.
    """
    rels = symmetrized_relators(relator)
    half = len(relator) // 2
    w = cyclic_reduce(word)
    changed = True
    while changed and w:
        changed = False
        for rel in rels:
            length = len(rel)
            for cut in range(length - 1, half, -1):
                head, tail = rel[:cut], rel[cut:]
                pos = _find_subword(w, head)
                if pos < 0:
                    continue
                rotated = w[pos:] + w[:pos]
                w = cyclic_reduce(invert(tail) + rotated[cut:])
                changed = True
                break
            if changed:
                break
    return w


def is_null_homotopic(word: Sequence[int], relator: Sequence[int]) -> bool:
    return len(dehn_reduce(word, relator)) == 0


def cyclic_words_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    return _find_subword(a, b) >= 0


def abelianization(word: Sequence[int], num_pairs: int) -> Tuple[int, ...]:
    counts = [0] * num_pairs
    for letter in word:
        counts[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(counts)


def max_piece_length(relator: Sequence[int]) -> int:
    """Longest common proper prefix between distinct symmetrized relators.

    Dehn's algorithm is valid when this is below |R|/6 (metric small
    cancellation); the standard 4g-gon relators have pieces of length 1.
    """
    rels = symmetrized_relators(relator)
    best = 0
    for i, r1 in enumerate(rels):
        for r2 in rels[i + 1:]:
            k = 0
            while k < len(r1) and k < len(r2) and r1[k] == r2[k]:
                k += 1
            best = max(best, k)
    return best
