"""Reflection group machinery over the simple-root basis.

Elements act on root vectors through exact integer matrices whose columns
are the images of the simple roots.  Words multiply left to right: the
word (i, j) means the reflection at node i composed after ... applied
first.  Concretely ``from_word(cm, (i, j))`` acts as the node-i reflection
applied to the image under the node-j reflection reading right to left;
its action matrix is the product S_i S_j.

The breadth-first level engine is vectorized with numpy int64 batches.
New products of length k + 1 can only coincide with elements of length
k - 1 (lengths change by exactly one per generator), so deduplication
keeps a single previous level.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import roots
from .cartan import CartanMatrix
from .errors import InvalidSubsetError, LoopAtlasError, MixedAmbientError

Coords = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

_KEY_LIMIT = 32000  # compact dedup keys are int16


@dataclass(frozen=True)
class WeylElement:
    """Group element: canonical reduced word plus exact action matrix."""

    ambient: CartanMatrix
    word: tuple[int, ...]
    matrix: Matrix

    @property
    def length(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        letters = ".".join(str(i) for i in self.word) or "e"
        return f"WeylElement({letters})"


def _identity_rows(n: int) -> Matrix:
    return tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))


def identity(cm: CartanMatrix) -> WeylElement:
    return WeylElement(ambient=cm, word=(), matrix=_identity_rows(cm.size))


def reflection_matrix(cm: CartanMatrix, i: int) -> Matrix:
    """Action matrix of the node-i reflection; column j holds the image of
    simple root j."""
    if not 1 <= i <= cm.size:
        raise InvalidSubsetError(f"node {i} out of range 1..{cm.size}")
    n = cm.size
    rows = [list(r) for r in _identity_rows(n)]
    for j in range(n):
        rows[i - 1][j] -= cm.entries[j][i - 1]
    return tuple(tuple(r) for r in rows)


def reflect(cm: CartanMatrix, beta: Coords, i: int) -> Coords:
    """Image of a root vector under the node-i reflection."""
    value = roots.pairing(cm, beta, i)
    return tuple(b - value if k == i - 1 else b for k, b in enumerate(beta))


def act(w: WeylElement, beta: Coords) -> Coords:
    if len(beta) != w.ambient.size:
        raise InvalidSubsetError(f"vector has {len(beta)} coordinates, ambient has {w.ambient.size}")
    return tuple(sum(row[c] * beta[c] for c in range(len(beta))) for row in w.matrix)


def _multiply_right(cm: CartanMatrix, rows: list[list[int]], i: int) -> None:
    """In-place right multiplication by the node-i reflection."""
    col = i - 1
    acol = [cm.entries[c][col] for c in range(cm.size)]
    for row in rows:
        pivot = row[col]
        if pivot:
            for c in range(cm.size):
                row[c] -= pivot * acol[c]


def _descent(rows: list[list[int]], n: int) -> int | None:
    """Smallest node whose simple root is sent negative, None at identity."""
    for c in range(n):
        if all(rows[r][c] <= 0 for r in range(n)):
            return c + 1
    return None


def _word_from_rows(cm: CartanMatrix, rows: list[list[int]]) -> tuple[int, ...]:
    n = cm.size
    work = [list(r) for r in rows]
    letters: list[int] = []
    guard = 0
    while True:
        i = _descent(work, n)
        if i is None:
            break
        _multiply_right(cm, work, i)
        letters.append(i)
        guard += 1
        if guard > 10_000:
            raise LoopAtlasError("descent extraction did not terminate; matrix is not a group element")
    ident = _identity_rows(n)
    if tuple(tuple(r) for r in work) != ident:
        raise LoopAtlasError("matrix is not an action matrix of this group")
    return tuple(reversed(letters))


def word_from_matrix(cm: CartanMatrix, matrix: Matrix) -> tuple[int, ...]:
    """Canonical reduced word of an action matrix, by descent extraction."""
    return _word_from_rows(cm, [list(r) for r in matrix])


def from_word(cm: CartanMatrix, word) -> WeylElement:
    """Element of a letter sequence; stores the canonical reduced word."""
    n = cm.size
    rows = [list(r) for r in _identity_rows(n)]
    for i in word:
        if not 1 <= int(i) <= n:
            raise InvalidSubsetError(f"letter {i} out of range 1..{n}")
        _multiply_right(cm, rows, int(i))
    matrix = tuple(tuple(r) for r in rows)
    return WeylElement(ambient=cm, word=_word_from_rows(cm, rows), matrix=matrix)


def simple(cm: CartanMatrix, i: int) -> WeylElement:
    return WeylElement(ambient=cm, word=(i,), matrix=reflection_matrix(cm, i))


def reduce_word(cm: CartanMatrix, word) -> tuple[int, ...]:
    """Canonical reduced word equal to the given letter sequence."""
    return from_word(cm, word).word


def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """Product acting as w1 after w2."""
    if w1.ambient != w2.ambient:
        raise MixedAmbientError("cannot compose elements over different ambient matrices")
    n = w1.ambient.size
    a, b = w1.matrix, w2.matrix
    prod = tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n)
    )
    return WeylElement(ambient=w1.ambient, word=word_from_matrix(w1.ambient, prod), matrix=prod)


def inverse(w: WeylElement) -> WeylElement:
    return from_word(w.ambient, tuple(reversed(w.word)))


def inversions(w: WeylElement, depth: int | None = None) -> tuple[Coords, ...]:
    """Positive (real) root vectors sent negative.

    For an affine ambient only levels up to ``depth`` are inspected
    (default three times the length plus one, generous for the word sizes
    this is used at); the inversion count equals the length, so a depth
    that is too small shows up as a shortfall rather than a silent pass.
    """
    cm = w.ambient
    if cm.is_affine:
        if depth is None:
            depth = 3 * w.length + 1
        candidates = roots.positive_real_roots(cm, depth)
    else:
        candidates = roots.positive_roots(cm)
    return tuple(beta for beta in candidates if roots.is_negative(act(w, beta)))


def longest_element(cm: CartanMatrix, nodes) -> WeylElement:
    """Longest element of the subgroup generated by the given nodes.

    The node subset must induce a finite system.  Greedy ascent: repeatedly
    apply the smallest in-subset reflection whose simple root is still sent
    positive.  The resulting length is checked against the count of induced
    positive roots.
    """
    subset = sorted({int(i) for i in nodes})
    for i in subset:
        if not 1 <= i <= cm.size:
            raise InvalidSubsetError(f"node {i} out of range 1..{cm.size}")
    if not subset:
        return identity(cm)
    span = roots.roots_in_span(cm, tuple(subset))  # validates finiteness
    n = cm.size
    rows = [list(r) for r in _identity_rows(n)]
    letters: list[int] = []
    while True:
        progressed = False
        for i in subset:
            col = i - 1
            if any(rows[r][col] > 0 for r in range(n)) and all(rows[r][col] >= 0 for r in range(n)):
                _multiply_right(cm, rows, i)
                letters.append(i)
                progressed = True
                break
        if not progressed:
            break
    expected = len(span) // 2
    if len(letters) != expected:
        raise LoopAtlasError(
            f"longest element search made {len(letters)} steps, expected {expected}"
        )
    return WeylElement(ambient=cm, word=tuple(letters), matrix=tuple(tuple(r) for r in rows))


def removed_node_image(cm: CartanMatrix, removed: int) -> Coords:
    """Image of one simple root under the longest element of the subgroup
    generated by all the others.

    The coefficient on the removed root is always exactly 1: those
    reflections only ever add multiples of their own simple roots.
    """
    if not 1 <= removed <= cm.size:
        raise InvalidSubsetError(f"node {removed} out of range 1..{cm.size}")
    others = tuple(i for i in cm.nodes if i != removed)
    w = longest_element(cm, others)
    image = tuple(w.matrix[r][removed - 1] for r in range(cm.size))
    if image[removed - 1] != 1:
        raise LoopAtlasError("removed-root coefficient drifted from 1")
    if not roots.is_positive(image):
        raise LoopAtlasError("image of the removed root is not positive")
    return image


# --- breadth-first level engine --------------------------------------------


def _keys(arr16: np.ndarray) -> np.ndarray:
    """Byte keys of an int16 matrix batch; the view is reversible, so keys
    double as compact storage."""
    m, n2 = arr16.shape[0], arr16.shape[1] * arr16.shape[2]
    flat = np.ascontiguousarray(arr16).reshape(m, n2)
    return flat.view(np.dtype((np.void, 2 * n2))).ravel()


def _unkey(keys: np.ndarray, n: int) -> np.ndarray:
    return keys.view(np.int16).reshape(-1, n, n)


def _levels(cm: CartanMatrix, max_length: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (length, batch of action matrices) in breadth-first order.

    Batches are int16 arrays of shape (count, n, n), each level sorted by
    the byte key of its matrices, so the stream is deterministic.  Levels
    are held as int16 to keep deep searches inside memory; per-generator
    products widen to int32 and a range guard keeps the compact keys
    faithful.
    """
    if max_length < 0:
        raise InvalidSubsetError(f"max_length must be nonnegative, got {max_length}")
    n = cm.size
    a = np.array(cm.entries, dtype=np.int32)
    cols = [a[:, g].copy() for g in range(n)]
    ident = np.eye(n, dtype=np.int16)[None, :, :]
    yield 0, ident
    if max_length == 0:
        return
    prev_keys = _keys(np.zeros((0, n, n), dtype=np.int16))
    cur, cur_keys = ident, _keys(ident)
    for length in range(1, max_length + 1):
        chunks = []
        for g in range(n):
            wide = cur.astype(np.int32)
            wide -= wide[:, :, g : g + 1] * cols[g][None, None, :]
            if wide.max(initial=0) >= _KEY_LIMIT or wide.min(initial=0) <= -_KEY_LIMIT:
                raise LoopAtlasError("entries exceed the compact key range; lower max_length")
            chunks.append(_keys(wide.astype(np.int16)))
            del wide
        keys = np.concatenate(chunks)
        del chunks
        keys.sort()
        mask = np.empty(keys.shape[0], dtype=bool)
        mask[0] = True
        mask[1:] = keys[1:] != keys[:-1]
        uniq = keys[mask]
        del keys, mask
        new_keys = uniq[~np.isin(uniq, prev_keys, assume_unique=True)]
        if new_keys.shape[0] == 0:
            return
        yield length, _unkey(new_keys, n)
        prev_keys = cur_keys
        cur, cur_keys = _unkey(new_keys, n), new_keys


def matrix_tuple(arr: np.ndarray) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in arr.tolist())


def enumerate_elements(cm: CartanMatrix, max_length: int) -> Iterator[WeylElement]:
    """All elements of length at most max_length, shortest first.

    Within a length, elements stream in ascending order of their matrix
    tuples.  Finite groups are exhausted when levels empty out.
    """
    for length, batch in _levels(cm, max_length):
        level = sorted(matrix_tuple(m) for m in batch)
        for matrix in level:
            word = word_from_matrix(cm, matrix)
            if len(word) != length:
                raise LoopAtlasError("level engine produced a wrong-length element")
            yield WeylElement(ambient=cm, word=word, matrix=matrix)


@lru_cache(maxsize=4)
def ball_sizes(cm: CartanMatrix, max_length: int) -> tuple[int, ...]:
    """Element counts per length, mostly a sizing aid for searches."""
    return tuple(batch.shape[0] for _, batch in _levels(cm, max_length))


def element_to_json(w: WeylElement) -> dict:
    return {"word": list(w.word), "matrix": [list(r) for r in w.matrix], "length": w.length}
