"""Generator tuples and descriptions of the reductive subgroup H of GL_n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotInH
from .linalg import Field, Matrix

KINDS = ("group", "lie", "assoc")


@dataclass(frozen=True)
class GeneratorTuple:
    """A tuple of n x n matrices generating a group, Lie algebra or associative algebra."""

    field: Field
    dim: int
    kind: str
    entries: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.entries:
            raise ValueError("a generator tuple needs at least one entry")
        for i, x in enumerate(self.entries):
            if not isinstance(x, Matrix):
                raise TypeError(f"entry {i} is not a Matrix")
            if x.field != self.field or x.shape != (self.dim, self.dim):
                raise ValueError(f"entry {i} is not a {self.dim}x{self.dim} matrix over {self.field!r}")
            if self.kind == "group" and not x.is_invertible():
                raise ValueError(f"entry {i} is not invertible but kind is 'group'")

    @classmethod
    def make(cls, field: Field, kind: str, matrices: Iterable) -> GeneratorTuple:
        mats = tuple(m if isinstance(m, Matrix) else Matrix(field, m) for m in matrices)
        if not mats:
            raise ValueError("a generator tuple needs at least one entry")
        return cls(field, mats[0].nrows, kind, mats)

    def with_entries(self, entries: Iterable[Matrix]) -> GeneratorTuple:
        return GeneratorTuple(self.field, self.dim, self.kind, tuple(entries))

    def conjugate(self, g: Matrix) -> GeneratorTuple:
        """The tuple g x g^-1."""
        gi = g.inverse()
        return self.with_entries(g @ x @ gi for x in self.entries)

    def is_trivial(self) -> bool:
        """Identity tuple (group) or zero tuple (lie/assoc)."""
        if self.kind == "group":
            return all(x.is_identity() for x in self.entries)
        return all(x.is_zero() for x in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class HSpec:
    """A reductive subgroup H of GL_n given by coordinate blocks.

    H is the product over ``blocks`` of GL(block) (or SL(block) where
    ``det_one`` is set), acting as the identity on every coordinate not in a
    block ("pinned" coordinates).  ``HSpec.glu(n, U)`` is GL(U) with the
    complementary coordinate span as the fixed complement; ``HSpec.full(n)``
    is GL_n itself.  Coordinates are zero-based.
    """

    dim: int
    blocks: tuple
    det_one: tuple

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            for i in b:
                if not 0 <= i < self.dim:
                    raise ValueError(f"coordinate {i} out of range for dimension {self.dim}")
                if i in seen:
                    raise ValueError(f"coordinate {i} appears in two blocks")
                seen.add(i)
        if len(self.det_one) != len(self.blocks):
            raise ValueError("det_one must have one flag per block")

    @classmethod
    def full(cls, n: int) -> HSpec:
        return cls(n, (tuple(range(n)),), (False,))

    @classmethod
    def glu(cls, n: int, u_coords: Iterable[int]) -> HSpec:
        u = tuple(sorted(set(u_coords)))
        return cls(n, (u,) if u else (), (False,) if u else ())

    @classmethod
    def levi(cls, n: int, blocks: Iterable[Iterable[int]], det_one: Sequence[bool] | None = None) -> HSpec:
        blocks = [tuple(sorted(set(b))) for b in blocks]
        flags = [False] * len(blocks) if det_one is None else [bool(f) for f in det_one]
        if len(flags) != len(blocks):
            raise ValueError("det_one must have one flag per block")
        keep = [(b, f) for b, f in zip(blocks, flags) if b]
        return cls(n, tuple(b for b, _ in keep), tuple(f for _, f in keep))

    @property
    def pinned(self) -> tuple:
        covered = {i for b in self.blocks for i in b}
        return tuple(i for i in range(self.dim) if i not in covered)

    @property
    def has_det_one(self) -> bool:
        return any(self.det_one)

    @property
    def kind(self) -> str:
        if self.has_det_one or len(self.blocks) > 1:
            return "levi"
        if self.blocks and len(self.blocks[0]) == self.dim:
            return "full"
        return "glu"

    @property
    def u_coords(self) -> tuple:
        """Coordinates of U for GL(U)-type specs (``full`` counts as U = V)."""
        if self.kind == "levi":
            raise ValueError("u_coords only makes sense for GL(U)-type H")
        return self.blocks[0] if self.blocks else ()

    @property
    def complement_coords(self) -> tuple:
        return self.pinned

    def block_index(self) -> dict:
        return {i: k for k, b in enumerate(self.blocks) for i in b}

    def same_block(self, i: int, j: int) -> bool:
        idx = self.block_index()
        return i in idx and idx.get(i) == idx.get(j)

    def lie_basis(self, field: Field) -> list[Matrix]:
        """A basis of Lie(H) inside gl_n."""
        out = []
        for b, d1 in zip(self.blocks, self.det_one):
            for i in b:
                for j in b:
                    if i != j:
                        out.append(Matrix.unit(field, self.dim, i, j))
            if d1:
                for i in b[1:]:
                    out.append(Matrix.unit(field, self.dim, b[0], b[0]) - Matrix.unit(field, self.dim, i, i))
            else:
                for i in b:
                    out.append(Matrix.unit(field, self.dim, i, i))
        return out

    def lie_dim(self) -> int:
        return sum(len(b) ** 2 - (1 if d1 else 0) for b, d1 in zip(self.blocks, self.det_one))

    def check_element(self, g: Matrix) -> None:
        """Raise :class:`NotInH` unless ``g`` lies in H."""
        if g.shape != (self.dim, self.dim):
            raise NotInH(f"conjugator has shape {g.shape}, expected {(self.dim, self.dim)}")
        idx = self.block_index()
        for i in range(self.dim):
            for j in range(self.dim):
                v = g[i, j]
                if i in idx and j in idx and idx[i] == idx[j]:
                    continue
                want = g.field.one if i == j else g.field.zero
                if v != want:
                    where = "pinned coordinate" if (i == j) else "off-block entry"
                    raise NotInH(f"conjugator entry ({i},{j}) = {v} but H forces {want} ({where})")
        for b, d1 in zip(self.blocks, self.det_one):
            sub = Matrix(g.field, [[g[i, j] for j in b] for i in b])
            d = sub.det()
            if d == 0:
                raise NotInH(f"conjugator block {list(b)} is singular")
            if d1 and d != g.field.one:
                raise NotInH(f"conjugator block {list(b)} has determinant {d}, H requires 1")

    def contains(self, g: Matrix) -> bool:
        try:
            self.check_element(g)
        except NotInH:
            return False
        return True

    def to_json(self) -> dict:
        kind = self.kind
        if kind == "full":
            return {"type": "full"}
        if kind == "glu":
            return {"type": "glu", "u": list(self.u_coords)}
        return {"type": "levi", "blocks": [list(b) for b in self.blocks], "det_one": list(self.det_one)}
