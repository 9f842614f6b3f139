import pytest
from hypothesis import given, strategies as st

from laws import law_cases

CASES = law_cases()


@pytest.mark.parametrize(
    "model,law", CASES, ids=[f"{m.name}-{law.__name__}" for m, law in CASES]
)
@given(rng=st.randoms(use_true_random=False))
def test_law(model, law, rng):
    assert law(model, rng)
