"""Linear algebra over the two-element field, vectors packed into Python ints."""
from __future__ import annotations

import numpy as np


def bits(indices) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def support(v: int) -> list:
    out, i = [], 0
    while v:
        if v & 1:
            out.append(i)
        v >>= 1
        i += 1
    return out


class Echelon:
    """Incrementally built row-echelon basis with optional provenance tags.

    ``reduce`` returns the fully reduced remainder, which is a canonical
    representative of the coset ``v + span``.  Tags record which inserted
    vectors were combined, so membership tests can also report a witness.
    """

    def __init__(self):
        self.pivots = {}   # pivot bit -> (row, tag)

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: int, tag: int = 0):
        for p in sorted(self.pivots, reverse=True):
            if v >> p & 1:
                row, t = self.pivots[p]
                v ^= row
                tag ^= t
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        p = v.bit_length() - 1
        # keep rows fully reduced so remainders are canonical
        for q, (row, t) in list(self.pivots.items()):
            if row >> p & 1:
                self.pivots[q] = (row ^ v, t ^ tag)
        self.pivots[p] = (v, tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank(rows) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def nullspace(rows, ncols: int) -> list:
    """Basis of {x : <row, x> = 0 for every row}, deterministic order."""
    # Gauss-Jordan on the row space, then read off free variables.
    piv = {}
    for r in rows:
        for p, row in piv.items():
            if r >> p & 1:
                r ^= row
        if not r:
            continue
        p = r.bit_length() - 1
        for q in list(piv):
            if piv[q] >> p & 1:
                piv[q] ^= r
        piv[p] = r
    basis = []
    for free in range(ncols):
        if free in piv:
            continue
        x = 1 << free
        for p, row in piv.items():
            if row >> free & 1:
                x ^= 1 << p
        basis.append(x)
    return basis


def to_matrix(rows, ncols: int) -> np.ndarray:
    m = np.zeros((len(rows), ncols), dtype=np.uint8)
    for i, r in enumerate(rows):
        for j in support(r):
            m[i, j] = 1
    return m


def from_matrix(m) -> list:
    m = np.asarray(m) % 2
    return [bits(np.flatnonzero(row)) for row in m]


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    m = np.concatenate([a.astype(np.uint8) % 2, np.eye(n, dtype=np.uint8)], axis=1)
    r = 0
    for c in range(n):
        hits = np.flatnonzero(m[r:, c])
        if not len(hits):
            raise np.linalg.LinAlgError("singular matrix over GF(2)")
        p = r + hits[0]
        m[[r, p]] = m[[p, r]]
        for i in range(n):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
    return m[:, n:]
