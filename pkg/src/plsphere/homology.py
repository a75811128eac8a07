"""Integer simplicial homology via elimination-based Smith normal form.

Boundary matrices are kept sparse (dict-of-dict rows plus column indexes)
and eliminated greedily on unit pivots with a Markowitz-style fill-in
heuristic; the usually tiny residual block is finished with the classical
Euclidean Smith normal form over arbitrary-precision integers.  An acyclic
Morse matching may be supplied as a pivot schedule.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .complex_core import HasseDiagram, SimplicialComplex, build_hasse
from .errors import DimensionOutOfRange, InconsistentMatching
from .morse import MorseResult, verify_acyclic_matching


class SparseIntMatrix:
    """Sparse integer matrix; no explicit zeros are stored."""

    __slots__ = ("nrows", "ncols", "rows", "col_rows")

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: list[dict[int, int]] = [dict() for _ in range(nrows)]
        self.col_rows: list[set[int]] = [set() for _ in range(ncols)]

    def set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rows[r][c] = v
            self.col_rows[c].add(r)
        elif c in self.rows[r]:
            del self.rows[r][c]
            self.col_rows[c].discard(r)

    def get(self, r: int, c: int) -> int:
        return self.rows[r].get(c, 0)

    def nnz(self) -> int:
        return sum(len(row) for row in self.rows)

    def entries(self):
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                yield r, c, v

    def copy(self) -> "SparseIntMatrix":
        M = SparseIntMatrix(self.nrows, self.ncols)
        M.rows = [dict(row) for row in self.rows]
        M.col_rows = [set(s) for s in self.col_rows]
        return M

    def multiply(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseIntMatrix(self.nrows, other.ncols)
        for r, row in enumerate(self.rows):
            acc: dict[int, int] = {}
            for k, v in row.items():
                for c, w in other.rows[k].items():
                    acc[c] = acc.get(c, 0) + v * w
            for c, v in acc.items():
                if v:
                    out.set(r, c, v)
        return out


@dataclass(frozen=True)
class SmithNormalForm:
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)


def boundary_matrix(K: SimplicialComplex, k: int) -> SparseIntMatrix:
    """The k-th boundary operator: rows are k-faces, columns (k-1)-faces.

    Entry for (sigma, sigma minus its i-th smallest vertex) is (-1)**i.
    """
    if k < 1 or k > K.dim:
        raise DimensionOutOfRange(f"k={k} outside 1..{K.dim}")
    hi = K.faces(k)
    lo_index = {f: i for i, f in enumerate(K.faces(k - 1))}
    M = SparseIntMatrix(len(hi), len(lo_index))
    for r, face in enumerate(hi):
        sign = 1
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            M.set(r, lo_index[sub], sign)
            sign = -sign
    return M


def _pivot_unit(M: SparseIntMatrix, r: int, c: int) -> None:
    """Eliminate with the unit entry at (r, c) and retire its row/column."""
    rows, col_rows = M.rows, M.col_rows
    val = rows[r][c]
    prow = rows[r]
    for r2 in list(col_rows[c]):
        if r2 == r:
            continue
        row2 = rows[r2]
        f = row2[c] * val  # val in {1,-1} so val == val^-1
        for k, v in prow.items():
            if k == c:
                continue
            new = row2.get(k, 0) - f * v
            if new:
                row2[k] = new
                col_rows[k].add(r2)
            elif k in row2:
                del row2[k]
                col_rows[k].discard(r2)
        del row2[c]
        col_rows[c].discard(r2)
    # row r's remaining entries are cleared by column operations that touch
    # only row r (its column is already clear) -- drop the row wholesale
    for k in prow:
        col_rows[k].discard(r)
    rows[r] = {}


def _unit_phase(M: SparseIntMatrix, schedule=None) -> int:
    """Pivot on unit entries until none remain; returns the pivot count.

    ``schedule`` is an optional list of (row, col) pivots tried first, in
    order; stale or non-unit scheduled entries are skipped.
    """
    rows, col_rows = M.rows, M.col_rows
    pivots = 0

    if schedule:
        for r, c in schedule:
            if rows[r].get(c) in (1, -1):
                _pivot_unit(M, r, c)
                pivots += 1

    heap: list[tuple[int, int, int]] = []
    for r, row in enumerate(rows):
        rl = len(row) - 1
        for c, v in row.items():
            if v in (1, -1):
                heap.append(((rl) * (len(col_rows[c]) - 1), r, c))
    heapq.heapify(heap)
    while heap:
        cost, r, c = heapq.heappop(heap)
        v = rows[r].get(c)
        if v not in (1, -1):
            continue
        cur = (len(rows[r]) - 1) * (len(col_rows[c]) - 1)
        if cur > cost:
            heapq.heappush(heap, (cur, r, c))
            continue
        touched = [r2 for r2 in col_rows[c] if r2 != r]
        _pivot_unit(M, r, c)
        pivots += 1
        for r2 in touched:
            row2 = rows[r2]
            rl = len(row2) - 1
            for k, v2 in row2.items():
                if v2 in (1, -1):
                    heapq.heappush(heap, (rl * (len(col_rows[k]) - 1), r2, k))
    return pivots


def _dense_snf(mat: list[list[int]]) -> list[int]:
    """Classical Euclidean Smith normal form of a small dense matrix."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    divisors = []
    t = 0
    while True:
        # locate a nonzero entry of minimal magnitude in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = mat[i][j]
                if v and (best is None or abs(v) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        mat[t], mat[bi] = mat[bi], mat[t]
        for row in mat:
            row[t], row[bj] = row[bj], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if mat[i][t]:
                    q = mat[i][t] // mat[t][t]
                    for j in range(t, n):
                        mat[i][j] -= q * mat[t][j]
                    if mat[i][t]:
                        mat[t], mat[i] = mat[i], mat[t]
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, n):
                if mat[t][j]:
                    q = mat[t][j] // mat[t][t]
                    for i in range(t, m):
                        mat[i][j] -= q * mat[i][t]
                    if mat[t][j]:
                        for i in range(t, m):
                            mat[i][t], mat[i][j] = mat[i][j], mat[i][t]
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing block
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if mat[i][j] % mat[t][t]:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            for j in range(t, n):
                mat[t][j] += mat[culprit][j]
        divisors.append(abs(mat[t][t]))
        t += 1
        if t == m or t == n:
            # the trailing block may still hold nonzeros only if t hit a
            # border; by construction it is empty then
            break
    return divisors


def smith_normal_form(M: SparseIntMatrix, schedule=None) -> SmithNormalForm:
    """Elementary divisors of M (greedy unit pivots, then Euclidean SNF)."""
    W = M.copy()
    units = _unit_phase(W, schedule=schedule)
    # densify the (typically tiny) residual
    live_rows = [r for r, row in enumerate(W.rows) if row]
    live_cols = sorted({c for r in live_rows for c in W.rows[r]})
    col_map = {c: j for j, c in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in live_rows]
    for i, r in enumerate(live_rows):
        for c, v in W.rows[r].items():
            dense[i][col_map[c]] = v
    residual = _dense_snf(dense) if dense else []
    # unit pivots divide everything; the Euclidean part is already a chain
    divisors = [1] * (units + sum(1 for d in residual if d == 1))
    divisors += [d for d in residual if d > 1]
    return SmithNormalForm(tuple(divisors))


def rank_mod_p(M: SparseIntMatrix, p: int) -> int:
    """Rank of M over the prime field GF(p) by sparse Gauss elimination."""
    rows = [
        {c: v % p for c, v in row.items() if v % p}
        for row in M.rows
    ]
    col_rows: dict[int, set[int]] = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    rank = 0
    heap = [(len(row), r) for r, row in enumerate(rows) if row]
    heapq.heapify(heap)
    while heap:
        sz, r = heapq.heappop(heap)
        row = rows[r]
        if not row or len(row) != sz:
            if row:
                heapq.heappush(heap, (len(row), r))
            continue
        c = min(row, key=lambda k: len(col_rows[k]))
        inv = pow(row[c], p - 2, p)
        rank += 1
        for r2 in list(col_rows[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            f = (row2[c] * inv) % p
            for k, v in row.items():
                new = (row2.get(k, 0) - f * v) % p
                if new:
                    row2[k] = new
                    col_rows.setdefault(k, set()).add(r2)
                elif k in row2:
                    del row2[k]
                    col_rows[k].discard(r2)
        for k in row:
            col_rows[k].discard(r)
        rows[r] = {}
    return rank


def _prime_powers(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass
class HomologyGroups:
    """Per-dimension Betti numbers and torsion (prime-power cyclic orders)."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    reduced: bool
    coefficients: str

    def group_text(self, k: int) -> str:
        parts = []
        b = self.betti[k]
        if b == 1:
            parts.append("Z")
        elif b > 1:
            parts.append(f"Z^{b}")
        parts.extend(f"Z/{t}" for t in self.torsion[k])
        return " + ".join(parts) if parts else "0"

    def report_text(self) -> str:
        return "\n".join(f"H_{k} = {self.group_text(k)}" for k in range(len(self.betti))) + "\n"

    def report_dict(self) -> dict:
        return {
            "coefficients": self.coefficients,
            "reduced": self.reduced,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
        }


def _assemble_integer_homology(
    K: SimplicialComplex, snfs: dict[int, SmithNormalForm], reduced: bool
) -> HomologyGroups:
    f = K.f_vector()
    d = K.dim
    betti = []
    torsion = []
    for k in range(d + 1):
        rk = snfs[k].rank if k >= 1 else 0
        rk1 = snfs[k + 1].rank if k + 1 <= d else 0
        b = f[k] - rk - rk1
        tor: list[int] = []
        if k + 1 <= d:
            for t in snfs[k + 1].torsion():
                tor.extend(_prime_powers(t))
        betti.append(b)
        torsion.append(tuple(sorted(tor)))
    if reduced:
        betti[0] -= 1
    return HomologyGroups(tuple(betti), tuple(torsion), reduced, "Z")


def homology(K: SimplicialComplex, coefficients="Z", reduced: bool = False) -> HomologyGroups:
    """Homology groups of K.

    ``coefficients`` is "Z" (integral, the default), "Q" (rational), or a
    prime p for GF(p).  Over a field the torsion entries are empty and the
    Betti numbers are field dimensions.
    """
    d = K.dim
    f = K.f_vector()
    if coefficients == "Z":
        snfs = {k: smith_normal_form(boundary_matrix(K, k)) for k in range(1, d + 1)}
        return _assemble_integer_homology(K, snfs, reduced)
    if coefficients == "Q":
        ranks = {k: smith_normal_form(boundary_matrix(K, k)).rank for k in range(1, d + 1)}
        label = "Q"
    else:
        p = int(coefficients)
        ranks = {k: rank_mod_p(boundary_matrix(K, k), p) for k in range(1, d + 1)}
        label = f"GF({p})"
    betti = []
    for k in range(d + 1):
        rk = ranks.get(k, 0)
        rk1 = ranks.get(k + 1, 0)
        betti.append(f[k] - rk - rk1)
    if reduced:
        betti[0] -= 1
    return HomologyGroups(tuple(betti), tuple(() for _ in range(d + 1)), reduced, label)


def is_spherical_homology(K: SimplicialComplex) -> bool:
    """H_d = Z and all other reduced integral homology groups vanish."""
    hg = homology(K, "Z", reduced=True)
    d = K.dim
    if hg.betti[d] != 1 or hg.torsion[d]:
        return False
    return all(hg.betti[k] == 0 and not hg.torsion[k] for k in range(d))


def homology_with_matching(
    K: SimplicialComplex,
    result: MorseResult,
    hasse: HasseDiagram | None = None,
) -> HomologyGroups:
    """Integral homology using an acyclic matching as the pivot schedule.

    Matched pairs are eliminated first, ordered by a linear extension of
    the reversed-arc acyclic order; the residual is finished by the
    generic Smith normal form.  The result equals plain homology.
    """
    H = hasse if hasse is not None else build_hasse(K)
    if not verify_acyclic_matching(H, result):
        raise InconsistentMatching("matching is not acyclic")

    d = K.dim
    pairs_by_dim: dict[int, list[tuple[tuple, tuple]]] = {k: [] for k in range(1, d + 1)}
    for low, high in result.matching:
        pairs_by_dim[len(high) - 1].append((low, high))

    snfs: dict[int, SmithNormalForm] = {}
    for k in range(1, d + 1):
        M = boundary_matrix(K, k)
        hi_index = {f: i for i, f in enumerate(K.faces(k))}
        lo_index = {f: i for i, f in enumerate(K.faces(k - 1))}
        pairs = pairs_by_dim[k]
        schedule = _matching_schedule(pairs, hi_index, lo_index)
        snfs[k] = smith_normal_form(M, schedule=schedule)
    return _assemble_integer_homology(K, snfs, reduced=False)


def _matching_schedule(pairs, hi_index, lo_index) -> list[tuple[int, int]]:
    """Order pairs so each pivot entry is still a unit when reached.

    Pair P must come after pair Q whenever Q's low face lies in P's high
    face; the acyclicity of the matching makes this relation a DAG.
    """
    by_low = {low: i for i, (low, _) in enumerate(pairs)}
    out_edges: list[list[int]] = [[] for _ in pairs]
    indeg = [0] * len(pairs)
    for i, (low, high) in enumerate(pairs):
        for j in range(len(high)):
            sub = high[:j] + high[j + 1:]
            q = by_low.get(sub)
            if q is not None and q != i:
                out_edges[i].append(q)
                indeg[q] += 1
    # reverse topological order: children (targets) first
    order = []
    stack = [i for i, dg in enumerate(indeg) if dg == 0]
    while stack:
        i = stack.pop()
        order.append(i)
        for q in out_edges[i]:
            indeg[q] -= 1
            if indeg[q] == 0:
                stack.append(q)
    order.reverse()
    return [(hi_index[pairs[i][1]], lo_index[pairs[i][0]]) for i in order]


def matrix_triplet_text(M: SparseIntMatrix) -> str:
    """Plain triplet export: one `row col value` line per stored entry."""
    lines = [f"{r} {c} {v}" for r, c, v in sorted(M.entries())]
    return "\n".join(lines) + ("\n" if lines else "")
