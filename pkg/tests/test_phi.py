import math

import pytest

from repgraph.errors import ArgumentError
from repgraph.phi import Magnitude, PhiFunction, at_least, phi_inverse


def test_loglog_values_and_domain():
    phi = PhiFunction.loglog(1.0, 1.0)
    assert phi.domain_min == 3
    t = 100
    assert phi(t) == pytest.approx(math.log(t) * math.log(math.log(t)) ** 2)
    with pytest.raises(ArgumentError):
        phi(2)


def test_power_is_exact_on_integers():
    phi = PhiFunction.power(2, shift=-16, floor=0.5)
    assert phi(5) == 9 and isinstance(phi(5), int)
    assert phi(2) == 1.0          # floor branch
    assert phi.domain_min == 1


def test_table_must_increase():
    with pytest.raises(ArgumentError, match="not strictly increasing"):
        PhiFunction.from_table([1, 2, 2])
    phi = PhiFunction.from_table([1, 3, 7])
    assert phi(3) == 7
    with pytest.raises(ArgumentError):
        phi(4)


def test_config_round_trip():
    for phi in (PhiFunction.loglog(2, 0.5), PhiFunction.power(2, shift=-16, floor=0.5),
                PhiFunction.affine(3, 1), PhiFunction.from_table([1, 2, 5])):
        assert PhiFunction.from_config(phi.to_config()) == phi
    with pytest.raises(ArgumentError):
        PhiFunction.from_config({"family": "nope"})


@pytest.mark.parametrize("phi", [PhiFunction.power(2, shift=-16, floor=0.5),
                                 PhiFunction.loglog(1, 1), PhiFunction.affine(2, 3)])
def test_inverse_matches_scan(phi):
    for y in (1.5, 7, 30, 59):
        n = phi.domain_min
        while phi(n) <= y:
            n += 1
        assert phi_inverse(phi, y) == n - 1


def test_log_at_large_magnitude():
    phi = PhiFunction.loglog(1, 1)
    m = Magnitude.from_loglog(3.0)
    assert phi.log_at(m) == pytest.approx(3.0 + 2 * math.log(3.0))
    p = PhiFunction.power(2)
    assert p.log_at(Magnitude.from_log(1000.0)) == pytest.approx(2000.0)


def test_at_least_tolerates_rounding():
    assert at_least(3, 3.0000000000000004)
    assert not at_least(3, 3.1)
    assert at_least(3, 3)
