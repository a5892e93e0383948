from gmpy2 import mpq

from framelattice.exact.contfrac import cf_expand
from framelattice.exact.scalars import QuadScalar

SQRT2 = QuadScalar(0, 1, 2)
PHI = QuadScalar(mpq(1, 2), mpq(1, 2), 5)


def test_sqrt2():
    cf = cf_expand(SQRT2)
    assert cf.integer_part == 1 and cf.preperiod == () and cf.period == (2,)
    conv = [c for _, c in zip(range(4), cf.convergents())]
    assert conv == [(1, 1), (3, 2), (7, 5), (17, 12)]
    errs = [abs(p - q * SQRT2) for p, q in conv]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_golden_ratio():
    cf = cf_expand(PHI)
    assert cf.integer_part == 1 and cf.period == (1,)
    assert str(cf) == "[1; (1)]"


def test_rational_is_finite():
    cf = cf_expand(mpq(7, 3))
    assert cf.integer_part == 2 and cf.preperiod == (3,) and cf.period == ()
    assert list(cf.convergents())[-1] == (7, 3)


def test_periodic_with_preperiod():
    cf = cf_expand(QuadScalar(0, 1, 3))
    assert cf.period == (1, 2)
    cf = cf_expand(QuadScalar(mpq(1, 3), mpq(1, 2), 7))
    assert cf.is_periodic


def test_convergent_properties():
    for x in (SQRT2, PHI, QuadScalar(0, 1, 3), QuadScalar(mpq(2, 7), mpq(-3, 5), 11), QuadScalar(5, 1, 13)):
        cf = cf_expand(x)
        a = cf.terms(11)
        conv = [c for _, c in zip(range(11), cf.convergents())]
        for m in range(1, 10):
            (p0, q0), (p1, q1), (p2, q2) = conv[m - 1], conv[m], conv[m + 1]
            assert q2 == a[m + 1] * q1 + q0
            assert (p1 - q1 * x) * (p2 - q2 * x) < 0
            assert abs(x - mpq(p1, q1)) < mpq(1, q1 * q1)
        assert all(t >= 1 for t in a[1:])
