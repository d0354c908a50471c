"""Exact RREF of W_tk and the standard kernel basis (I / -C).

Dense, Fraction-valued, and meant for small probes (v <= 12 at k = 3).
The two sign conjectures about the standard basis are open problems, so
:func:`probe_conjectures` reports what it sees and never raises on a miss.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .combinatorics import binomial, iter_blocks, rank_lex

DENSE_CAP = 10_000


class ExactMatrix:
    """Row-major matrix of Fractions."""

    def __init__(self, rows: Sequence[Sequence]):
        self.data = [[Fraction(x) for x in row] for row in rows]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.data == other.data

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.data]

    def select_columns(self, cols: Sequence[int]) -> ExactMatrix:
        return ExactMatrix([[row[j] for j in cols] for row in self.data])

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for row in self.data:
            nz = [(k, x) for k, x in enumerate(row) if x]
            out.append([sum((x * other.data[k][j] for k, x in nz), Fraction(0)) for j in range(other.cols)])
        return ExactMatrix(out)

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)


def materialize_W(t: int, k: int, v: int, cap: int = DENSE_CAP) -> ExactMatrix:
    """Dense 0/1 inclusion matrix, rows C(X,t) and columns C(X,k) in lex order."""
    if not 0 <= t <= k <= v - t:
        raise ValueError(f"need 0 <= t <= k <= v - t, got t={t}, k={k}, v={v}")
    ncols = binomial(v, k)
    if ncols > cap:
        raise ValueError(f"W_{t}{k}({v}) has {ncols} columns, over the dense cap {cap}")
    W = [[0] * ncols for _ in range(binomial(v, t))]
    for j, block in enumerate(iter_blocks(v, k)):
        for sub in combinations(block, t):
            W[rank_lex(sub, v)][j] = 1
    return ExactMatrix(W)


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form and pivot columns (greedy, left to right)."""
    a = [list(row) for row in m.data]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return ExactMatrix(a), pivots


@dataclass
class StandardBasis:
    t: int
    k: int
    v: int
    column_permutation: list[int]  # presented position -> lex rank of block
    matrix: ExactMatrix  # C(v,k) x (C(v,k) - C(v,t)), rows in presented order

    @property
    def num_columns(self) -> int:
        return self.matrix.cols

    def in_lex_order(self) -> ExactMatrix:
        """Basis with rows moved back to lex block order."""
        rows = [None] * self.matrix.rows
        for pos, lex in enumerate(self.column_permutation):
            rows[lex] = self.matrix.data[pos]
        return ExactMatrix(rows)


def standard_basis(t: int, k: int, v: int, cap: int = DENSE_CAP) -> StandardBasis:
    """Kernel basis (I / -C) from the column-permuted RREF (C | I) of W_tk.

    Pivot columns of the left-to-right RREF are moved to the tail; the free
    columns, in lex order, form C.
    """
    W = materialize_W(t, k, v, cap)
    R, pivots = rref(W)
    if len(pivots) != W.rows:
        raise ArithmeticError(f"W_{t}{k}({v}) has rank {len(pivots)} < {W.rows}")
    pivot_set = set(pivots)
    free = [c for c in range(W.cols) if c not in pivot_set]
    nfree = len(free)
    # after reordering, row i of R has its pivot at presented column nfree + i
    basis = []
    for j in free:
        basis.append([Fraction(int(jj == j)) for jj in free])
    for i in range(len(pivots)):
        basis.append([-R.data[i][j] for j in free])
    sb = StandardBasis(t, k, v, free + pivots, ExactMatrix(basis) if basis else ExactMatrix.zeros(W.cols, 0))
    if not (W @ sb.in_lex_order()).is_zero():
        raise ArithmeticError("W times standard basis is not zero")
    return sb


def probe_conjectures(basis: StandardBasis) -> dict:
    """Scan rows for sign constancy and look for a nowhere-zero row.

    The nowhere-zero question is only posed for t > 1; for t <= 1 it is
    reported as None.
    """
    violations = []
    nowhere_zero = False
    for pos, row in enumerate(basis.matrix.data):
        signs = {x > 0 for x in row if x}
        if not signs:
            raise ArithmeticError(f"basis row {pos} is entirely zero")
        if len(signs) > 1:
            violations.append({"row": pos, "block_rank": basis.column_permutation[pos]})
        if all(row):
            nowhere_zero = True
    return {
        "t": basis.t,
        "k": basis.k,
        "v": basis.v,
        "num_basis_columns": basis.num_columns,
        "sign_constant_rows": not violations,
        "violations": violations,
        "nowhere_zero_row": nowhere_zero if basis.t > 1 else None,
        "column_order": basis.column_permutation,
    }
