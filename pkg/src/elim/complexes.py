"""Bounded based complexes of rational vector spaces and their torsion.

A complex ``0 -> E^0 -> ... -> E^{n+1} -> 0`` is stored as its term
dimensions plus the boundary matrices.  When the complex is exact, the
alternating product of completion determinants collapses to a single nonzero
rational, the torsion of the based complex.  The value does not depend on
which valid column/completion choices are made along the way; that
independence is a tested contract here, not an assumption, and ``torsion``
accepts an ``rng`` purely so the test suite can exercise randomized choices
against the deterministic greedy ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotExactError, ParseError
from .linalg import Matrix, complete_to_basis, det, rank


@dataclass(frozen=True)
class BasedComplex:
    """Term dimensions ``[r_0, ..., r_{n+1}]`` and boundaries ``d_i: E^i -> E^{i+1}``.

    Boundary ``i`` has shape ``r_{i+1} x r_i``.  Instances are immutable and
    every operation on them is a pure function.
    """

    dims: tuple[int, ...]
    boundaries: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.dims:
            raise ValueError("complex needs at least one term")
        if len(self.boundaries) != len(self.dims) - 1:
            raise ValueError(
                f"{len(self.dims)} terms need {len(self.dims) - 1} boundaries, "
                f"got {len(self.boundaries)}")
        for i, b in enumerate(self.boundaries):
            if (b.rows, b.cols) != (self.dims[i + 1], self.dims[i]):
                raise ValueError(
                    f"boundary {i} has shape {b.rows}x{b.cols}, expected "
                    f"{self.dims[i + 1]}x{self.dims[i]}")

    @property
    def top_index(self) -> int:
        """The ``n`` for which the last term is ``E^{n+1}``."""
        return len(self.dims) - 2

    def scale_boundaries(self, mu) -> "BasedComplex":
        return BasedComplex(self.dims, tuple(b.scale(mu) for b in self.boundaries))

    def to_json(self) -> dict:
        return {"dims": list(self.dims),
                "boundaries": [b.to_json() for b in self.boundaries]}

    @staticmethod
    def from_json(obj) -> "BasedComplex":
        try:
            dims = tuple(int(d) for d in obj["dims"])
            boundaries = tuple(Matrix.from_json(b) for b in obj["boundaries"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError("complex JSON needs dims and boundaries") from exc
        try:
            return BasedComplex(dims, boundaries)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


@dataclass(frozen=True)
class TorsionResult:
    """Resolved torsion scalar plus an audit trail of determinant factors.

    ``value`` is the torsion after resolving the alternating-exponent
    convention, so a two-term complex yields exactly ``det`` of its boundary.
    ``factor_log`` records ``(term index k, det D_k)`` for each completion
    matrix, and ``n_parity`` the parity of ``n``; trimming a zero-dimensional
    trailing term flips this parity and inverts the resolved value, which is
    why the parity is part of the result.
    """

    value: Fraction
    factor_log: tuple[tuple[int, Fraction], ...]
    n_parity: int

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "n_parity": self.n_parity,
            "factors": [{"term": k, "det": str(d)} for k, d in self.factor_log],
        }


def is_complex(c: BasedComplex) -> bool:
    """True iff consecutive boundaries compose to zero (exact arithmetic)."""
    zero = Fraction(0)
    for i in range(len(c.boundaries) - 1):
        prod = c.boundaries[i + 1] @ c.boundaries[i]
        if any(x != zero for row in prod.data for x in row):
            return False
    return True


def is_exact(c: BasedComplex) -> bool:
    """Acyclicity via rank counting: ``rank d_{i-1} + rank d_i = r_i`` at each term."""
    if not is_complex(c):
        raise ValueError("not a complex: boundaries do not compose to zero")
    ranks = [rank(b) for b in c.boundaries]
    padded = [0] + ranks + [0]
    return all(padded[i] + padded[i + 1] == r for i, r in enumerate(c.dims))


def trim(c: BasedComplex) -> BasedComplex:
    """Drop leading/trailing zero-dimensional terms.

    Dropping a leading zero term leaves the torsion value unchanged; dropping
    a trailing one flips the parity of ``n`` and hence inverts the resolved
    value.  Callers that care read ``n_parity`` off the ``TorsionResult``.
    """
    lo, hi = 0, len(c.dims)
    while lo < hi and c.dims[lo] == 0:
        lo += 1
    while hi > lo and c.dims[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        raise ValueError("cannot trim a complex whose terms are all zero")
    return BasedComplex(c.dims[lo:hi], c.boundaries[lo:hi - 1])


def scaling_exponent(dims) -> int:
    """Degree of the torsion as a polynomial in the boundary entries.

    Scaling every boundary by ``mu`` scales the torsion by ``mu`` to this
    power: ``(-1)^(n+1) * sum_i (-1)^i * i * r_i`` for dims ``[r_0..r_{n+1}]``.
    """
    dims = list(dims)
    n = len(dims) - 2
    total = sum((-1) ** i * i * r for i, r in enumerate(dims))
    return (-1) ** (n + 1) * total


def _random_completion(image_cols, dim: int, rng: random.Random) -> list[int]:
    """A random valid standard-basis completion of ``image_cols`` (for tests)."""
    from .linalg import _Echelon

    ech = _Echelon(dim)
    for col in image_cols:
        if not ech.add(col):
            raise ValueError("image columns unexpectedly dependent")
    order = list(range(dim))
    rng.shuffle(order)
    zero, one = Fraction(0), Fraction(1)
    chosen = []
    for j in order:
        if ech.rank == dim:
            break
        if ech.add([one if i == j else zero for i in range(dim)]):
            chosen.append(j)
    return sorted(chosen)


def torsion(c: BasedComplex, *, rng: random.Random | None = None) -> TorsionResult:
    """Torsion scalar of a based exact complex with all terms nonzero.

    Sweeping left to right, the columns of each boundary image are completed
    to a basis by standard-basis vectors; ``D_k`` is the resulting square
    matrix on term ``k`` and the result satisfies

        value ** ((-1)**n) == prod_k det(D_k) ** ((-1)**(k+1)).

    The deterministic run uses the leftmost-greedy completion.  Passing
    ``rng`` randomizes the (provably irrelevant) completion choices.
    """
    if any(r == 0 for r in c.dims):
        raise NotExactError(
            "zero-dimensional terms present: trim the complex first")
    if len(c.dims) < 2:
        raise NotExactError("a single-term nonzero complex is never exact")
    if not is_exact(c):
        raise NotExactError("torsion is undefined: complex is not exact")

    n = c.top_index
    log: list[tuple[int, Fraction]] = []
    product = Fraction(1)
    basis_cols = list(range(c.dims[0]))  # all of E^0; the boundary is injective
    for i, boundary in enumerate(c.boundaries):
        image_cols = boundary.columns(basis_cols)
        target_dim = c.dims[i + 1]
        if rng is None:
            completion = complete_to_basis(image_cols, target_dim)
        else:
            completion = _random_completion(image_cols, target_dim, rng)
        d_matrix = Matrix(tuple(zip(*image_cols, *(
            tuple(Fraction(1) if r == j else Fraction(0) for r in range(target_dim))
            for j in completion))))
        d_val = det(d_matrix)
        log.append((i + 1, d_val))
        product *= d_val if i % 2 == 0 else 1 / d_val
        basis_cols = completion

    value = product if n % 2 == 0 else 1 / product
    return TorsionResult(value=value, factor_log=tuple(log), n_parity=n % 2)
