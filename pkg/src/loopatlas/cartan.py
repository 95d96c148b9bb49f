"""Integer Cartan matrices for the finite and untwisted affine families.

Entry convention is row-on-column: ``entries[i][j]`` is the value of simple
root ``i`` on simple coroot ``j``, so short columns carry the more negative
entries.  Node numbering is Bourbaki, 1-based at the API surface.  The
attached node of an affine matrix is always the last index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import (
    ClassificationError,
    InvalidCartanMatrixError,
    InvalidSubsetError,
    TwistedTypeError,
    UnsupportedRankError,
)

Rows = tuple[tuple[int, ...], ...]

MAX_RANK = 9

# Constructor ranges per series.  C2 is admitted (it is a valid matrix,
# needed for the rank-2 affine family); classify() canonicalizes the rank-2
# B/C isomorphism class to B2.
RANK_RANGE = {
    "A": (1, MAX_RANK),
    "B": (2, MAX_RANK),
    "C": (2, MAX_RANK),
    "D": (4, MAX_RANK),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class CartanMatrix:
    """Immutable integer Cartan matrix with its affine flag and label.

    ``label`` is a display string like ``"E6"`` or ``"E6affine"`` when the
    type is known, None for raw unclassified input.
    """

    entries: Rows
    is_affine: bool
    label: str | None = None

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def finite_rank(self) -> int:
        """Rank of the finite part: size for finite, size - 1 for affine."""
        return self.size - 1 if self.is_affine else self.size

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(range(1, self.size + 1))

    def entry(self, i: int, j: int) -> int:
        """1-based entry access."""
        return self.entries[i - 1][j - 1]

    def __str__(self) -> str:
        name = self.label or f"{self.size}x{self.size}"
        return f"CartanMatrix({name})"


@dataclass(frozen=True)
class Edge:
    """Diagram edge: ``bond`` is the product of the two off-diagonal
    entries, ``short_end`` the short-root endpoint (None when the bond is
    simply laced)."""

    i: int
    j: int
    bond: int
    short_end: int | None


@dataclass(frozen=True)
class DynkinDiagram:
    nodes: tuple[int, ...]
    edges: tuple[Edge, ...]


def _check_gcm_axioms(rows: Rows) -> None:
    n = len(rows)
    if n == 0:
        raise InvalidCartanMatrixError("empty matrix")
    for row in rows:
        if len(row) != n:
            raise InvalidCartanMatrixError("matrix must be square")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidCartanMatrixError(f"non-integer entry {x!r}")
    for i in range(n):
        if rows[i][i] != 2:
            raise InvalidCartanMatrixError(f"diagonal entry at node {i + 1} is {rows[i][i]}, must be 2")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise InvalidCartanMatrixError(f"positive off-diagonal entry at ({i + 1},{j + 1})")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise InvalidCartanMatrixError(f"zero pattern not symmetric at ({i + 1},{j + 1})")


def symmetrizer(cm: CartanMatrix | Rows) -> tuple[int, ...]:
    """Positive integers d with d[i]*A[i][j] == d[j]*A[j][i], minimal per
    connected component.

    Short roots receive the larger d.  Raises if no such d exists.
    """
    rows = cm.entries if isinstance(cm, CartanMatrix) else tuple(tuple(r) for r in cm)
    n = len(rows)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        comp = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j == i or rows[i][j] == 0:
                    continue
                ratio = Fraction(rows[i][j], rows[j][i])
                if d[j] is None:
                    d[j] = d[i] * ratio
                    queue.append(j)
                    comp.append(j)
        # scale this component to minimal positive integers
        denom_lcm = 1
        for i in comp:
            denom_lcm = denom_lcm * d[i].denominator // gcd(denom_lcm, d[i].denominator)
        vals = [int(d[i] * denom_lcm) for i in comp]
        g = 0
        for v in vals:
            g = gcd(g, v)
        for i, v in zip(comp, vals):
            d[i] = Fraction(v // g)
    out = tuple(int(x) for x in d)
    for i in range(n):
        for j in range(n):
            if out[i] * rows[i][j] != out[j] * rows[j][i]:
                raise InvalidCartanMatrixError("matrix is not symmetrizable")
    return out


def _symmetrized(rows: Rows, d: tuple[int, ...]) -> list[list[int]]:
    n = len(rows)
    return [[d[i] * rows[i][j] for j in range(n)] for i in range(n)]


def determinant(cm: CartanMatrix | Rows) -> int:
    """Exact determinant of the Cartan matrix."""
    rows = cm.entries if isinstance(cm, CartanMatrix) else tuple(tuple(r) for r in cm)
    mat = [[Fraction(x) for x in row] for row in rows]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col] != 0:
                factor = mat[r][col] * inv
                for c in range(col, n):
                    mat[r][c] -= factor * mat[col][c]
    assert det.denominator == 1
    return int(det)


def _rational_kernel(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right kernel, via reduced row echelon form."""
    n = len(mat)
    m = len(mat[0]) if mat else 0
    rref = [row[:] for row in mat]
    pivots: list[int] = []
    r = 0
    for c in range(m):
        pivot = next((k for k in range(r, n) if rref[k][c] != 0), None)
        if pivot is None:
            continue
        rref[r], rref[pivot] = rref[pivot], rref[r]
        inv = 1 / rref[r][c]
        rref[r] = [x * inv for x in rref[r]]
        for k in range(n):
            if k != r and rref[k][c] != 0:
                f = rref[k][c]
                rref[k] = [a - f * b for a, b in zip(rref[k], rref[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * m
        vec[fc] = Fraction(1)
        for idx, pc in enumerate(pivots):
            vec[pc] = -rref[idx][fc]
        basis.append(vec)
    return basis


def null_vector(cm: CartanMatrix | Rows, side: str = "right") -> tuple[int, ...]:
    """Primitive positive integer null vector of a corank-one matrix.

    side="right" solves A u = 0 (comark side); side="left" solves
    v A = 0 (mark side).
    """
    rows = cm.entries if isinstance(cm, CartanMatrix) else tuple(tuple(r) for r in cm)
    n = len(rows)
    if side == "left":
        mat = [[Fraction(rows[j][i]) for j in range(n)] for i in range(n)]
    elif side == "right":
        mat = [[Fraction(x) for x in row] for row in rows]
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    basis = _rational_kernel(mat)
    if len(basis) != 1:
        raise InvalidCartanMatrixError(f"matrix has corank {len(basis)}, expected 1")
    vec = basis[0]
    denom_lcm = 1
    for x in vec:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if all(v < 0 for v in ints):
        ints = [-v for v in ints]
    if not all(v > 0 for v in ints):
        raise InvalidCartanMatrixError("null vector is not strictly positive")
    return tuple(ints)


def _corank(rows: Rows) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    return len(_rational_kernel(mat))


def _is_positive_definite(rows: Rows, d: tuple[int, ...]) -> bool:
    """Sylvester test on the symmetrized matrix, exact arithmetic."""
    sym = _symmetrized(rows, d)
    n = len(sym)
    for k in range(1, n + 1):
        minor = tuple(tuple(sym[i][j] for j in range(k)) for i in range(k))
        if determinant(minor) <= 0:
            return False
    return True


# --- constructors -----------------------------------------------------------


def _finite_entries(series: str, rank: int) -> list[list[int]]:
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain(i: int, j: int) -> None:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1

    if series == "A":
        for i in range(1, n):
            chain(i, i + 1)
    elif series == "B":
        for i in range(1, n - 1):
            chain(i, i + 1)
        # last node short: row of the long neighbor sees -2
        a[n - 2][n - 1] = -2
        a[n - 1][n - 2] = -1
    elif series == "C":
        for i in range(1, n - 1):
            chain(i, i + 1)
        # last node long
        a[n - 2][n - 1] = -1
        a[n - 1][n - 2] = -2
    elif series == "D":
        for i in range(1, n - 1):
            chain(i, i + 1)
        chain(n - 2, n)
    elif series == "E":
        for i, j in ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4)):
            chain(i, j)
        if rank >= 7:
            chain(6, 7)
        if rank == 8:
            chain(7, 8)
    elif series == "F":
        chain(1, 2)
        chain(3, 4)
        a[1][2] = -2  # node 3 short
        a[2][1] = -1
    elif series == "G":
        a[0][1] = -1  # node 1 short
        a[1][0] = -3
    return a


def finite_cartan(series: str, rank: int) -> CartanMatrix:
    """Bourbaki Cartan matrix of the given finite series and rank."""
    if series not in RANK_RANGE:
        raise InvalidCartanMatrixError(f"unknown series {series!r}")
    lo, hi = RANK_RANGE[series]
    if not lo <= rank <= hi:
        raise UnsupportedRankError(f"series {series} supports ranks {lo}..{hi}, got {rank}")
    rows = tuple(tuple(row) for row in _finite_entries(series, rank))
    return CartanMatrix(entries=rows, is_affine=False, label=f"{series}{rank}")


def affinize(cm: CartanMatrix) -> CartanMatrix:
    """Untwisted affinization: append the attached node as index l+1.

    The new row is the negative of the highest root evaluated on each simple
    coroot; the new column is the negative of each simple root evaluated on
    the highest-root coroot (comark expansion).  Both integer null-vector
    identities, (marks, 1) on the left and (comarks, 1) on the right, are
    asserted on the result.
    """
    if cm.is_affine:
        raise InvalidCartanMatrixError("matrix is already affine")
    if not irreducible(cm):
        raise InvalidCartanMatrixError("affinization needs an irreducible matrix")
    if cm.label is not None:
        label = f"{cm.label}affine"
    else:
        # raw input: classify for the label; safe here because the catalog
        # itself is built from labeled matrices and never reenters
        series, rank = classify(cm)[:2]
        label = f"{series}{rank}affine"
    from . import roots  # deferred: roots builds on finite matrices only

    a = roots.marks(cm)
    nv = roots.comarks(cm)
    n = cm.size
    rows = [list(row) + [0] for row in cm.entries]
    border_row = [0] * (n + 1)
    for j in range(n):
        border_row[j] = -sum(a[i] * cm.entries[i][j] for i in range(n))
        rows[j][n] = -sum(nv[i] * cm.entries[j][i] for i in range(n))
    border_row[n] = 2
    rows.append(border_row)
    entries = tuple(tuple(r) for r in rows)
    _check_gcm_axioms(entries)
    if determinant(entries) != 0:
        raise InvalidCartanMatrixError("affinization is not singular")
    if null_vector(entries, "left") != a + (1,):
        raise InvalidCartanMatrixError("left null vector does not extend the marks")
    if null_vector(entries, "right") != nv + (1,):
        raise InvalidCartanMatrixError("right null vector does not extend the comarks")
    return CartanMatrix(entries=entries, is_affine=True, label=label)


def _as_int(x) -> int:
    """Accept ints and integral floats (JSON), reject everything else."""
    if isinstance(x, bool):
        raise InvalidCartanMatrixError(f"non-integer entry {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise InvalidCartanMatrixError(f"non-integer entry {x!r}")


def from_matrix(rows_in) -> CartanMatrix:
    """Validate raw integer rows as a finite or untwisted affine matrix.

    Finite means positive definite symmetrization (reducible allowed, label
    set when the type classifies).  Corank-one input must be an untwisted
    affinization with the attached node last; anything else is rejected,
    with a distinct error for twisted shapes.
    """
    rows = tuple(tuple(_as_int(x) for x in row) for row in rows_in)
    _check_gcm_axioms(rows)
    d = symmetrizer(rows)
    if _is_positive_definite(rows, d):
        label = None
        try:
            series, rank, _ = classify(CartanMatrix(rows, is_affine=False))
            label = f"{series}{rank}"
        except ClassificationError:
            pass
        return CartanMatrix(entries=rows, is_affine=False, label=label)
    if _corank(rows) != 1:
        raise InvalidCartanMatrixError("matrix is neither finite type nor corank one")
    n = len(rows)
    for cand in range(n - 1, -1, -1):
        keep = [i for i in range(n) if i != cand]
        block = tuple(tuple(rows[i][j] for j in keep) for i in keep)
        try:
            finite_block = from_matrix(block)
            if finite_block.is_affine or finite_block.label is None:
                continue
            rebuilt = affinize(finite_cartan(finite_block.label[0], int(finite_block.label[1:])))
        except (InvalidCartanMatrixError, ClassificationError):
            continue
        perm = keep + [cand]
        permuted = tuple(tuple(rows[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        if _isomorphic(permuted, rebuilt.entries):
            if cand != n - 1:
                raise InvalidCartanMatrixError(
                    f"affine input must list the attached node last; found it at position {cand + 1}"
                )
            series, rank, _ = classify(CartanMatrix(rows, is_affine=True))
            return CartanMatrix(entries=rows, is_affine=True, label=f"{series}{rank}affine")
    raise TwistedTypeError("corank-one matrix is not an untwisted affinization")


# --- classification ---------------------------------------------------------


def _node_signature(rows: Rows, i: int):
    n = len(rows)
    return tuple(sorted((rows[i][j], rows[j][i]) for j in range(n) if j != i and rows[i][j] != 0))


def _isomorphic(a: Rows, b: Rows) -> bool:
    """Permutation equivalence of two square integer matrices with equal
    diagonal, by signature-pruned backtracking."""
    n = len(a)
    if len(b) != n:
        return False
    sig_a = [_node_signature(a, i) for i in range(n)]
    sig_b = [_node_signature(b, i) for i in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return False
    order = sorted(range(n), key=lambda i: (sig_a.count(sig_a[i]), i))
    image: list[int | None] = [None] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or sig_b[j] != sig_a[i]:
                continue
            ok = True
            for ii in order[:k]:
                jj = image[ii]
                if a[i][ii] != b[j][jj] or a[ii][i] != b[jj][j]:
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                image[i] = None
                used[j] = False
        return False

    return extend(0)


@lru_cache(maxsize=1)
def _catalog() -> tuple[tuple[str, int, bool, Rows], ...]:
    """One representative per isomorphism class, finite and affine.

    C starts at rank 3 because the rank-2 B/C matrices are permutation
    equivalent; that class is catalogued as B2.
    """
    out = []
    for series, (lo, hi) in RANK_RANGE.items():
        start = 3 if series == "C" else lo
        for rank in range(start, hi + 1):
            fin = finite_cartan(series, rank)
            out.append((series, rank, False, fin.entries))
            out.append((series, rank, True, affinize(fin).entries))
    return tuple(out)


def classify(cm: CartanMatrix | Rows) -> tuple[str, int, bool]:
    """(series, rank, affine) of the isomorphism class, Bourbaki labels.

    The rank-2 B/C class reports as ("B", 2, ...).  Raises
    ClassificationError when nothing in the catalog matches (for instance
    reducible input).
    """
    rows = cm.entries if isinstance(cm, CartanMatrix) else tuple(tuple(r) for r in cm)
    flat = sorted(x for row in rows for x in row)
    for series, rank, affine, entries in _catalog():
        if len(entries) != len(rows):
            continue
        if sorted(x for row in entries for x in row) != flat:
            continue
        if _isomorphic(rows, entries):
            return series, rank, affine
    raise ClassificationError("matrix matches no catalogued type of rank <= %d" % MAX_RANK)


# --- diagram structure ------------------------------------------------------


def diagram(cm: CartanMatrix) -> DynkinDiagram:
    """Diagram with bond multiplicities and short-end markers."""
    rows = cm.entries
    n = cm.size
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] == 0:
                continue
            bond = rows[i][j] * rows[j][i]
            short: int | None = None
            if abs(rows[i][j]) > abs(rows[j][i]):
                short = j + 1  # column j divides by the smaller norm
            elif abs(rows[j][i]) > abs(rows[i][j]):
                short = i + 1
            edges.append(Edge(i=i + 1, j=j + 1, bond=bond, short_end=short))
    return DynkinDiagram(nodes=cm.nodes, edges=tuple(edges))


def _check_subset(cm: CartanMatrix, nodes) -> tuple[int, ...]:
    subset = tuple(sorted({int(i) for i in nodes}))
    if len(subset) != len(tuple(nodes)):
        raise InvalidSubsetError(f"duplicate nodes in {tuple(nodes)!r}")
    for i in subset:
        if not 1 <= i <= cm.size:
            raise InvalidSubsetError(f"node {i} out of range 1..{cm.size}")
    return subset


def subdiagram(cm: CartanMatrix, nodes) -> CartanMatrix:
    """Induced matrix on a node subset, revalidated from scratch."""
    subset = _check_subset(cm, nodes)
    if not subset:
        raise InvalidSubsetError("empty subset has no matrix")
    rows = tuple(tuple(cm.entries[i - 1][j - 1] for j in subset) for i in subset)
    return from_matrix(rows)


def components(cm: CartanMatrix) -> tuple[tuple[int, ...], ...]:
    """Connected components of the diagram, each sorted, in order of their
    smallest node."""
    n = cm.size
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        queue = [start]
        seen[start] = True
        while queue:
            i = queue.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and cm.entries[i][j] != 0:
                    seen[j] = True
                    queue.append(j)
        out.append(tuple(sorted(x + 1 for x in comp)))
    return tuple(out)


def irreducible(cm: CartanMatrix) -> bool:
    return len(components(cm)) == 1


def component_types(cm: CartanMatrix, nodes) -> tuple[tuple[str, int], ...]:
    """Classified connected components of the induced subdiagram, as a
    sorted tuple of (series, rank) pairs.  Empty subset gives ()."""
    subset = _check_subset(cm, nodes)
    if not subset:
        return ()
    sub = subdiagram(cm, subset)
    out = []
    for comp in components(sub):
        piece = subdiagram(sub, comp)
        series, rank, affine = classify(piece)
        if affine:
            raise InvalidSubsetError("subset spans an affine component")
        out.append((series, rank))
    return tuple(sorted(out))


# --- parsing and serialization ---------------------------------------------


def parse_type(text: str) -> CartanMatrix:
    """Parse a type label like "A2", "E6affine", "C2affine"."""
    s = text.strip()
    affine = False
    if s.endswith("affine"):
        affine = True
        s = s[: -len("affine")]
    if not s or s[0].upper() not in RANK_RANGE or not s[1:].isdigit():
        raise InvalidCartanMatrixError(f"cannot parse type label {text!r}")
    cm = finite_cartan(s[0].upper(), int(s[1:]))
    return affinize(cm) if affine else cm


def to_json(cm: CartanMatrix) -> dict:
    if cm.label:
        series = cm.label[0]
        rank_text = cm.label[1:-6] if cm.is_affine else cm.label[1:]
        return {"series": series, "rank": int(rank_text), "affine": cm.is_affine}
    return {"matrix": [list(row) for row in cm.entries], "affine": cm.is_affine}


def from_json(obj: dict) -> CartanMatrix:
    if "matrix" in obj:
        return from_matrix(obj["matrix"])
    cm = finite_cartan(str(obj["series"]).upper(), int(obj["rank"]))
    return affinize(cm) if obj.get("affine") else cm


def all_types(max_rank: int = 8, affine: bool = True) -> tuple[CartanMatrix, ...]:
    """One representative per isomorphism class with finite rank <= max_rank,
    in series then rank order.  C starts at rank 3 (the rank-2 class is B2)."""
    if max_rank > MAX_RANK:
        raise UnsupportedRankError(f"catalog stops at rank {MAX_RANK}")
    out = []
    for series in ("A", "B", "C", "D", "E", "F", "G"):
        lo, hi = RANK_RANGE[series]
        if series == "C":
            lo = 3
        for rank in range(lo, min(hi, max_rank) + 1):
            cm = finite_cartan(series, rank)
            out.append(affinize(cm) if affine else cm)
    return tuple(out)
