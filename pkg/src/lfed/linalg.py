"""Exact row-echelon spans of polynomials.

Rows are kept monic and keyed by their lex-leading monomial; reduction always
eliminates the lex-greatest pivot monomial still present, so bases and
remainders are deterministic.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

from .field import FieldSpec
from .poly import BiPoly, Monomial


class TruncatedSpace:
    """Finite-dimensional subspace of K[x, y] held in echelon form.

    ``degree_bound`` is informational: it records the total-degree window the
    space was built for and is enforced by :meth:`insert` when set.
    """

    def __init__(self, field: FieldSpec, degree_bound: Optional[int] = None):
        self.field = field
        self.degree_bound = degree_bound
        self._rows: dict[Monomial, dict] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def dimension(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[Monomial]:
        return sorted(self._rows, reverse=True)

    def basis(self) -> list[BiPoly]:
        return [BiPoly._raw(self.field, dict(self._rows[m])) for m in self.pivots]

    def __iter__(self) -> Iterator[BiPoly]:
        return iter(self.basis())

    def _reduce_terms(self, terms: dict) -> dict:
        rows = self._rows
        while True:
            hits = [m for m in terms if m in rows]
            if not hits:
                return terms
            m = max(hits)
            c = terms[m]
            for mono, v in rows[m].items():
                prev = terms.get(mono)
                new = -c * v if prev is None else prev - c * v
                if new:
                    terms[mono] = new
                else:
                    terms.pop(mono, None)

    def reduce(self, f: BiPoly) -> BiPoly:
        """Remainder of ``f`` after eliminating every pivot monomial."""
        if f.field != self.field:
            raise ValueError(f"polynomial over {f.field} reduced in a space over {self.field}")
        return BiPoly._raw(self.field, self._reduce_terms(f.terms))

    def contains(self, f: BiPoly) -> bool:
        return self.reduce(f).is_zero()

    __contains__ = contains

    def insert(self, f: BiPoly) -> bool:
        """Add ``f`` to the span; returns whether the dimension grew."""
        if self.degree_bound is not None and f.degree > self.degree_bound:
            raise ValueError(f"{f} exceeds the degree bound {self.degree_bound}")
        rem = self.reduce(f)
        if rem.is_zero():
            return False
        lead, c = rem.leading_term()
        inv = c.inverse()
        self._rows[lead] = {m: v * inv for m, v in rem._terms.items()}
        return True

    def extend(self, polys: Iterable[BiPoly]) -> int:
        return sum(self.insert(f) for f in polys)

    def issubspace(self, other: "TruncatedSpace") -> bool:
        return all(other.contains(f) for f in self.basis())

    def equals(self, other: "TruncatedSpace") -> bool:
        return len(self) == len(other) and self.issubspace(other)

    @classmethod
    def span(cls, field: FieldSpec, polys: Iterable[BiPoly], degree_bound: Optional[int] = None):
        space = cls(field, degree_bound)
        space.extend(polys)
        return space

    def __repr__(self) -> str:
        return f"TruncatedSpace(dim={len(self)}, degree_bound={self.degree_bound}, field={self.field})"
