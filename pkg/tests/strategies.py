"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from toricsum.exactlin import rank


def int_matrix(max_rows=4, max_cols=4, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            )
        )
    )


def points(dim, n_min=1, n_max=7, bound=5):
    return st.lists(
        st.tuples(*[st.integers(-bound, bound)] * dim), min_size=n_min, max_size=n_max
    )


def polygon_points(bound=5, n_max=7):
    """Point sets whose hull is full-dimensional in the plane."""
    return points(2, 3, n_max, bound).filter(
        lambda ps: rank([(x - ps[0][0], y - ps[0][1]) for x, y in ps]) == 2
    )


def spanning_rays(dim, l_max=8, bound=3):
    vec = st.tuples(*[st.integers(-bound, bound)] * dim).filter(any)
    return st.lists(vec, min_size=dim + 1, max_size=l_max, unique=True).filter(
        lambda rs: rank(rs) == dim
    )
