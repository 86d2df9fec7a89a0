"""Z2 chain arithmetic: symmetric-difference addition, boundaries, norms, lex order.

A chain is a sparse sorted set of simplex identifiers of one dimension of one
complex.  Addition is symmetric difference; the bottleneck norm of a chain in
the weighted dimension is the weight of its largest simplex (0 when empty);
two chains compare lexicographically at the largest identifier where their
supports differ, the chain lacking it being smaller.
"""

from __future__ import annotations

import numpy as np

from .chainsutil import searchsorted_member
from .complexes import WeightedComplex
from .errors import ChainError

LESS, EQUAL, GREATER = -1, 0, 1


class Chain:
    """Sparse Z2 vector over the d-simplices of a complex (value semantics)."""

    __slots__ = ("complex", "dim", "ids")

    def __init__(self, complex: WeightedComplex, dim: int, ids=()):
        ids = np.unique(np.asarray(ids, dtype=np.int64))
        n = complex.n_simplices(dim)
        if ids.size and (ids[0] < 0 or ids[-1] >= n):
            raise ChainError(
                f"identifier out of range for dimension {dim} (0..{n - 1})"
            )
        self.complex = complex
        self.dim = int(dim)
        self.ids = ids

    @classmethod
    def from_simplices(cls, complex, dim, simplices):
        """Build from vertex-label tuples, XOR-ing out repeated entries."""
        ids = [complex.simplex_id(dim, s) for s in simplices]
        vals, counts = np.unique(np.array(ids, dtype=np.int64), return_counts=True)
        return cls(complex, dim, vals[counts % 2 == 1])

    def simplices(self):
        """Supports as vertex-label tuples, in identifier order."""
        return [self.complex.simplex_vertices(self.dim, int(i)) for i in self.ids]

    def __len__(self):
        return int(self.ids.size)

    def __bool__(self):
        return self.ids.size > 0

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and other.complex is self.complex
            and other.dim == self.dim
            and np.array_equal(other.ids, self.ids)
        )

    def __hash__(self):
        return hash((id(self.complex), self.dim, self.ids.tobytes()))

    def __add__(self, other):
        return add(self, other)

    def __repr__(self):
        return f"Chain(dim={self.dim}, support={self.ids.tolist()})"


def _check_pair(c1: Chain, c2: Chain):
    if c1.complex is not c2.complex:
        raise ChainError("chains belong to different complexes")
    if c1.dim != c2.dim:
        raise ChainError(f"dimension mismatch: {c1.dim} vs {c2.dim}")


def add(c1: Chain, c2: Chain) -> Chain:
    """Z2 sum: symmetric difference of the supports."""
    _check_pair(c1, c2)
    return Chain(c1.complex, c1.dim, np.setxor1d(c1.ids, c2.ids, assume_unique=True))


def boundary(c: Chain) -> Chain:
    """Linear extension of the simplex boundary; result lives one dimension down."""
    if c.dim < 1:
        raise ChainError("boundary of a 0-chain is undefined")
    K = c.complex
    faces = K.face_ids(c.dim)[c.ids].ravel()
    vals, counts = np.unique(faces, return_counts=True)
    return Chain(K, c.dim - 1, vals[counts % 2 == 1])


def is_cycle(c: Chain) -> bool:
    if c.dim == 0:
        return True  # every 0-chain has zero boundary
    return len(boundary(c)) == 0


def bottleneck_norm(c: Chain) -> float:
    """Maximum simplex weight in the chain; 0 for the empty chain."""
    if c.dim != c.complex.query_dim:
        raise ChainError("bottleneck norm requires the weighted dimension")
    if c.ids.size == 0:
        return 0.0
    return float(c.complex.weights[c.ids[-1]])


def lex_compare(c1: Chain, c2: Chain) -> int:
    """-1, 0 or 1; decided at the largest identifier where the supports differ."""
    _check_pair(c1, c2)
    if c1.dim != c1.complex.query_dim:
        raise ChainError("lex order requires the weighted dimension")
    diff = np.setxor1d(c1.ids, c2.ids, assume_unique=True)
    if diff.size == 0:
        return EQUAL
    top = diff[-1]
    return GREATER if searchsorted_member(c1.ids, top) else LESS
