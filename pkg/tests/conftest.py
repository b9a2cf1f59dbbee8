import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spreadlab import Filtration, RingContext, ideal


@pytest.fixture(scope="session")
def ctx3():
    """Standard-graded ring in three variables."""
    return RingContext(32003, ("x", "y", "z"))


@pytest.fixture(scope="session")
def ctx2():
    return RingContext(32003, ("x", "y"))


@pytest.fixture(scope="session")
def curve_ctx():
    """Weighted ring carrying the (t^3, t^4, t^5) parametrized curve."""
    return RingContext(32003, ("x", "y", "z"), weights=(3, 4, 5))


@pytest.fixture(scope="session")
def curve_prime(curve_ctx):
    return ideal(
        curve_ctx,
        curve_ctx.poly("y^2 - x*z"),
        curve_ctx.poly("x^3 - y*z"),
        curve_ctx.poly("x^2*y - z^2"),
    )


@pytest.fixture(scope="session")
def curve_symbolic(curve_prime):
    return Filtration.symbolic(curve_prime)
