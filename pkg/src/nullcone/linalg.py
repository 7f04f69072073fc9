"""Exact sparse Gaussian elimination over the rationals.

Vectors are plain ``dict`` objects mapping a sortable column key to a
nonzero :class:`~fractions.Fraction`.  Pivots are always the smallest key
present in a row, so the column order chosen by the caller fixes the
echelon form completely.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping


def clean(vec: Mapping) -> dict:
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


def axpy(y: dict, a: Fraction, x: Mapping) -> None:
    """y += a*x in place, dropping zeros."""
    if a == 0:
        return
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def scaled(x: Mapping, a) -> dict:
    if a == 0:
        return {}
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Incrementally maintained reduced row echelon form.

    With ``track=True`` every stored row remembers which combination of the
    inserted vectors (identified by their labels) produced it, so that
    :meth:`express` can write a vector of the span in terms of the
    originals.  This is what turns span membership into certificates.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: dict = {}  # pivot key -> reduced row
        self.combos: dict = {}  # pivot key -> {label: coeff}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in self.pivots()]

    def reduce(self, vec: Mapping) -> tuple[dict, dict]:
        """Return ``(residual, combo)`` with ``vec = residual + sum combo[l]*original[l]``."""
        residual = dict(vec)
        combo: dict = {}
        for p in [k for k in vec if k in self.rows]:
            c = residual.get(p, 0)
            if not c:
                continue
            axpy(residual, -c, self.rows[p])
            if self.track:
                axpy(combo, c, self.combos[p])
        return residual, combo

    def residual(self, vec: Mapping) -> dict:
        return self.reduce(vec)[0]

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: Mapping) -> dict | None:
        """Coefficients on the inserted vectors summing to ``vec``, or None."""
        residual, combo = self.reduce(vec)
        return None if residual else combo

    def add(self, vec: Mapping, label: Hashable = None) -> dict | None:
        """Insert ``vec``.

        Returns None when the vector was independent (it is now part of the
        span).  When it was already in the span, returns the relation
        ``{label: 1, other: -c, ...}`` among inserted vectors (empty when
        untracked).
        """
        residual, combo = self.reduce(vec)
        if self.track:
            rel = {label: Fraction(1)}
            axpy(rel, Fraction(-1), combo)
        else:
            rel = {}
        if not residual:
            return rel
        p = min(residual)
        inv = 1 / residual[p]
        row = scaled(residual, inv)
        rel = scaled(rel, inv)
        for q, other in self.rows.items():
            c = other.get(p)
            if c:
                axpy(other, -c, row)
                if self.track:
                    axpy(self.combos[q], -c, rel)
        self.rows[p] = row
        if self.track:
            self.combos[p] = rel
        return None

    def extend(self, vecs: Iterable[Mapping]) -> "Echelon":
        for i, v in enumerate(vecs):
            self.add(v, i)
        return self


def rank(vecs: Iterable[Mapping]) -> int:
    return Echelon().extend(vecs).rank


def reduced_basis(vecs: Iterable[Mapping]) -> list[dict]:
    return Echelon().extend(vecs).basis()


def kernel(images: list[Mapping]) -> list[dict]:
    """Basis of ``{c : sum_i c[i]*images[i] = 0}`` as sparse dicts over indices.

    One basis vector per dependent image, in index order; the result is
    returned in reduced form so that it does not depend on insertion
    details.
    """
    ech = Echelon(track=True)
    out = []
    for i, img in enumerate(images):
        rel = ech.add(img, i)
        if rel is not None:
            out.append(clean(rel))
    return reduced_basis(out)


def solve(columns: list[Mapping], rhs: Mapping) -> dict | None:
    """One solution ``c`` of ``sum_i c[i]*columns[i] = rhs`` or None."""
    ech = Echelon(track=True)
    for i, col in enumerate(columns):
        ech.add(col, i)
    return ech.express(rhs)


def span_equal(a: Iterable[Mapping], b: Iterable[Mapping]) -> bool:
    ea = Echelon().extend(a)
    eb = Echelon().extend(b)
    return ea.basis() == eb.basis()


def span_contains(big: Iterable[Mapping], small: Iterable[Mapping]) -> bool:
    ech = Echelon().extend(big)
    return all(ech.contains(v) for v in small)


def intersection(a: list[Mapping], b: list[Mapping]) -> list[dict]:
    """Basis of span(a) ∩ span(b)."""
    rel = kernel(list(a) + [scaled(v, -1) for v in b])
    out = []
    for c in rel:
        vec: dict = {}
        for i, coeff in c.items():
            if i < len(a):
                axpy(vec, coeff, a[i])
        if vec:
            out.append(vec)
    return reduced_basis(out)
