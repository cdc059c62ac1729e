"""
Hypothesis strategies for random ∅-free expressions, and sampled corpora
"""

from typing import List

from hypothesis import strategies as st

from analysis.sampler import sample_many
from core.derive import p_upper
from core.syntax import BINARY_OPS, EPS, Expr, binary, star, sym

LETTERS = ("a", "b", "c")

# |π(e)| <= p(e); expressions above this cap are left to the p(e) bound
PI_CAP = 200000

leaves = st.one_of(st.just(EPS), st.sampled_from(LETTERS).map(sym))


def _extend(children):
    return st.one_of(
        children.map(star),
        st.tuples(st.sampled_from(BINARY_OPS), children, children).map(lambda t: binary(*t)),
    )


exprs = st.recursive(leaves, _extend, max_leaves=6)


def tractable_samples(k: int, n: int, count: int, seed: str) -> List[Expr]:
    """Uniform samples of size n whose π fits under PI_CAP"""
    return [e for e in sample_many(k, n, count, seed) if p_upper(e) <= PI_CAP]
