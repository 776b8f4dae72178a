"""Free nilpotent Lie algebras on weighted generators.

The basis is the Lyndon-word Hall set truncated at the requested step
(nilpotency class).  Each basis element is realised as a noncommutative
polynomial in the truncated tensor algebra, which makes the expansion of
arbitrary brackets a finite triangular elimination: the bracketing of a
Lyndon word equals the word itself plus lexicographically larger words
of the same length.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .algebra import GradedLieAlgebra
from .errors import StepTooLarge

Q = Fraction

MAX_STEP = 6  # documented bound; covers every construction used in tests


def lyndon_words(alphabet_size, max_len):
    """All Lyndon words over ``0..alphabet_size-1`` with length <= max_len.

    Duval's generator, produced in lexicographic order.
    """
    out = []
    w = [0]
    while w:
        out.append(tuple(w))
        t = [w[i % len(w)] for i in range(max_len)]
        while t and t[-1] == alphabet_size - 1:
            t.pop()
        if not t:
            break
        t[-1] += 1
        w = t
    return out


def standard_factorization(word):
    """Split ``w = u v`` with ``v`` the longest proper Lyndon suffix."""
    n = len(word)
    for i in range(1, n):
        suffix = word[i:]
        if _is_lyndon(suffix):
            return word[:i], suffix
    raise ValueError(f"{word!r} admits no standard factorization")


def _is_lyndon(word):
    return all(word < word[i:] for i in range(1, len(word)))


def _nc_mul(a, b, max_len):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            if len(w1) + len(w2) > max_len:
                continue
            w = w1 + w2
            s = out.get(w, Q(0)) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def _nc_sub(a, b):
    out = dict(a)
    for w, c in b.items():
        s = out.get(w, Q(0)) - c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def _nc_bracket(a, b, max_len):
    return _nc_sub(_nc_mul(a, b, max_len), _nc_mul(b, a, max_len))


class FreeNilpotentAlgebra(GradedLieAlgebra):
    """Free nilpotent algebra with marked generators.

    ``words[i]`` is the Lyndon word of basis vector ``i``;
    ``generator_indices[j]`` locates generator ``j`` in the basis.
    """

    def __init__(self, weights, step):
        if step < 1:
            raise ValueError("step must be >= 1")
        if step > MAX_STEP:
            raise StepTooLarge(f"step {step} exceeds the supported bound {MAX_STEP}")
        weights = tuple(int(w) for w in weights)
        if not weights or any(w < 1 for w in weights):
            raise ValueError("weights must be positive integers")
        ngen = len(weights)

        words = sorted(lyndon_words(ngen, step), key=lambda w: (len(w), w))
        index = {w: i for i, w in enumerate(words)}

        poly = {}
        for w in words:
            if len(w) == 1:
                poly[w] = {w: Q(1)}
            else:
                u, v = standard_factorization(w)
                poly[w] = _nc_bracket(poly[u], poly[v], step)

        def expand(element):
            """Coordinates of a Lie element given as a noncommutative polynomial."""
            coords = {}
            rest = dict(element)
            while rest:
                w = min(rest, key=lambda t: (len(t), t))
                if w not in index:
                    raise ValueError(f"not a Lie element: stray word {w}")
                c = rest[w]
                coords[index[w]] = c
                rest = _nc_sub(rest, {k: c * v for k, v in poly[w].items()})
            return coords

        brackets = {}
        for i, wi in enumerate(words):
            for j in range(i + 1, len(words)):
                wj = words[j]
                if len(wi) + len(wj) > step:
                    continue
                prod = _nc_bracket(poly[wi], poly[wj], step)
                if prod:
                    brackets[(i, j)] = expand(prod)

        degrees = tuple(sum(weights[letter] for letter in w) for w in words)
        super().__init__(len(words), brackets, degrees)
        self.words = tuple(words)
        self.generator_weights = weights
        self.generator_indices = tuple(index[(g,)] for g in range(ngen))
        self._poly = poly
        self._index = index


@lru_cache(maxsize=32)
def _cached(weights, step):
    return FreeNilpotentAlgebra(weights, step)


def free_nilpotent(weights, step):
    """Free nilpotent Lie algebra on ``len(weights)`` generators.

    Generator ``j`` carries degree ``weights[j]``; a Lyndon basis element
    carries the summed weight of its letters.  Instances are cached.
    """
    return _cached(tuple(int(w) for w in weights), int(step))
