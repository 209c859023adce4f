import mpmath
import pytest

from selberg import errors
from selberg.config import GUARD_DIGITS, Precision, resolve


def test_tolerances():
    p = Precision(40)
    assert p.classify_tol == mpmath.mpf(10) ** -32
    assert p.dedup_tol == p.merge_tol == mpmath.mpf(10) ** -20
    assert p.escalated().digits == 60


def test_minimum_precision():
    with pytest.raises(ValueError):
        Precision(19)


def test_context_sets_guard_digits():
    with Precision(30).context():
        assert mpmath.mp.dps == 30 + GUARD_DIGITS
    assert mpmath.mp.dps == 15


def test_resolve():
    assert resolve(None) == Precision()
    assert resolve(25) == Precision(25)


def test_error_hierarchy():
    assert issubclass(errors.PoleHit, errors.PreconditionError)
    assert issubclass(errors.PreconditionError, ValueError)
    assert issubclass(errors.IncompleteBall, errors.VerificationError)
    assert issubclass(errors.VerificationError, errors.SelbergError)
