"""Hypothesis strategies for small modules over the fixture algebras."""

import numpy as np
from hypothesis import assume
from hypothesis import strategies as st

from tiltlab.modrep import FdModule, ModuleError


@st.composite
def small_modules(draw, algebra, max_total=4, max_vertex=2):
    """Random representation satisfying the relations, total dimension at most ``max_total``."""
    q = algebra.quiver
    dims = draw(st.lists(st.integers(0, max_vertex), min_size=q.n, max_size=q.n)
                .filter(lambda d: 0 < sum(d) <= max_total))
    mats = []
    for a in q.arrows:
        r, c = dims[a.target], dims[a.source]
        entries = draw(st.lists(st.integers(0, algebra.p - 1), min_size=r * c, max_size=r * c))
        mats.append(np.array(entries, dtype=np.int64).reshape(r, c))
    try:
        return FdModule(algebra, dims, mats)
    except ModuleError:
        assume(False)
