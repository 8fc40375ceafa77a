"""Hypothesis strategies shared by the algebra, trace and oracle tests."""
from fractions import Fraction

from hypothesis import strategies as st

from axbq.algebra import Letter, Monomial, NormalFormElement, normal_form

coeffs = st.builds(Fraction, st.integers(-5, 5).filter(bool), st.integers(1, 4))


def letters(mode="N", max_index=10):
    kinds = [
        st.builds(lambda a: Letter("u", a), st.integers(-max_index, max_index).filter(bool)),
        st.builds(lambda n: Letter("s", n), st.integers(1, max_index)),
        st.builds(lambda n: Letter("S", n), st.integers(1, max_index)),
    ]
    if mode == "Z":
        kinds.append(st.just(Letter("f", 1)))
    return st.one_of(*kinds)


def words(mode="N", max_len=12, max_index=10):
    return st.lists(letters(mode, max_index), max_size=max_len)


def monomials(mode="N", max_index=8, max_power=8):
    @st.composite
    def build(draw):
        m = draw(st.integers(1, max_index))
        return Monomial(draw(st.integers(-max_power, max_power)), draw(st.integers(1, max_index)), m,
                        draw(st.integers(0, m - 1)), draw(st.integers(0, 1)) if mode == "Z" else 0)
    return build()


def diagonal_monomials(max_index=8, max_power=8):
    """Monomials with n = m, i.e. the image of the expectation E."""
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_index))
        return Monomial(draw(st.integers(-max_power, max_power)), n, n, draw(st.integers(0, n - 1)))
    return build()


def elements(mode="N", max_terms=4, max_len=6, max_index=6):
    @st.composite
    def build(draw):
        parts = draw(st.lists(st.tuples(coeffs, words(mode, max_len, max_index)), max_size=max_terms))
        return NormalFormElement.sum_of(normal_form(w, mode) * c for c, w in parts)
    return build()
