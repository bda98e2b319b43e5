"""Shared builders for the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from reflexop.exact import GaussianRational, Matrix
from reflexop.opspace import OperatorSpace

G = GaussianRational


def E(i: int, j: int, n: int = 2, m: int | None = None) -> Matrix:
    """Matrix unit with a one at (i, j), 1-based, of size n x m."""
    return Matrix.unit(n, n if m is None else m, i - 1, j - 1)


def I(n: int = 2) -> Matrix:
    return Matrix.identity(n)


def span(*mats: Matrix) -> OperatorSpace:
    r, c = mats[0].shape
    return OperatorSpace(c, r, mats)


def M(rows) -> Matrix:
    return Matrix.from_rows(rows)


SMALL = [-2, -1, 0, 0, 0, 1, 2, 3]


def random_scalar(rng: random.Random) -> GaussianRational:
    return G(rng.choice(SMALL), rng.choice([0, 0, 0, 1, -1]))


def random_matrix(rng: random.Random, rows: int, cols: int, density: float = 0.5) -> Matrix:
    return Matrix.from_rows([[random_scalar(rng) if rng.random() < density else G(0) for _ in range(cols)]
                             for _ in range(rows)])


def random_space(rng: random.Random, h1: int, h2: int, max_gens: int | None = None) -> OperatorSpace:
    k = rng.randint(0, max_gens if max_gens is not None else h1 * h2)
    return OperatorSpace(h1, h2, [random_matrix(rng, h2, h1, rng.choice((0.25, 0.5, 1.0))) for _ in range(k)])


scalars = st.builds(lambda a, b, d: G(Fraction(a, d), Fraction(b, d)),
                    st.integers(-5, 5), st.integers(-3, 3), st.integers(1, 4))


def matrices(rows, cols):
    return st.lists(st.lists(scalars, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix.from_rows)


@st.composite
def spaces(draw, h1=None, h2=None, max_gens=4):
    h1 = h1 or draw(st.integers(1, 3))
    h2 = h2 or draw(st.integers(1, 3))
    gens = draw(st.lists(matrices(h2, h1), max_size=max_gens))
    return OperatorSpace(h1, h2, gens)


@st.composite
def square_spaces(draw, n_max=3, max_gens=4):
    n = draw(st.integers(1, n_max))
    return draw(spaces(n, n, max_gens))


def vectors(n):
    return st.lists(scalars, min_size=n, max_size=n)
