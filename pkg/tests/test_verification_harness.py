from fractions import Fraction

import pytest

from ellhyp import verification_harness as vh
from ellhyp.special_functions import DomainError


def by_params(report, **params):
    return [r for r in report.results if all(r.parameters.get(k) == v for k, v in params.items())]


def test_period_third():
    report = vh.verify_theorem_period([Fraction(1, 3)])
    (r,) = report.results
    assert r.passed and r.residual < 1e-8
    assert r.lhs == pytest.approx(1.0351206614256, rel=1e-12)


def test_period_one():
    (r,) = vh.verify_theorem_period([1]).results
    assert r.passed and r.residual < 1e-8


@pytest.mark.parametrize("lam", [0, -1, 10])
def test_period_guard(lam):
    with pytest.raises(DomainError):
        vh.verify_theorem_period([lam])


def test_corollary():
    report = vh.verify_corollary()
    assert [r.name for r in report.results] == ["corollary_binomial", "corollary_gamma"]
    assert all(r.passed and r.residual < 1e-9 for r in report.results)
    first, second = report.results
    assert first.rhs == pytest.approx(0.8927, abs=1e-4)
    assert second.lhs == pytest.approx(4.2066, abs=1e-4)
    # the two right sides differ by 3 pi / 2 since Gamma(3/2) = sqrt(pi)/2
    import math
    assert second.rhs / first.rhs == pytest.approx(3 * math.pi / 2, rel=1e-13)


def test_ono_examples():
    report = vh.verify_ono(Fraction(1, 3), [3, 5, 7])
    (skip,) = by_params(report, p=3)
    assert skip.skipped
    p7 = {r.name: r for r in by_params(report, p=7)}
    assert p7["ono"].lhs == Fraction(9, 49) == p7["ono"].rhs
    assert p7["ono"].passed and p7["ono_transformed"].passed
    p5 = {r.name: r for r in by_params(report, p=5)}
    assert p5["ono"].rhs == Fraction(1, 5)  # phi_5(-3^-1) (0 - 5) / 25 = phi_5(3) * -1/5
    assert report.failed == 0 and report.skipped == 1


def test_greene_inversion_p7():
    report = vh.verify_greene_inversion(7)
    assert len(report.results) == 6  # t = 0 excluded
    (r4,) = by_params(report, t=4)
    assert r4.lhs == r4.rhs == Fraction(-9, 49)
    assert report.ok


def test_greene_t1_is_decided_by_evaluation():
    for p in (5, 7, 11, 13):
        (r1,) = by_params(vh.verify_greene_inversion(p), t=1)
        assert r1.passed


def test_binomial_examples():
    report = vh.verify_theorem_binomial([5, 7, 13])
    assert report.ok
    p5 = {r.name: r for r in by_params(report, p=5)}
    assert p5["binomial_part1"].lhs == 0 == p5["binomial_part1"].rhs
    assert p5["binomial_part1"].parameters["chi3_branch"] == "degenerate"
    p7 = {r.name: r for r in by_params(report, p=7)}
    assert p7["binomial_part1"].lhs == Fraction(-4, 7)
    assert p7["binomial_part2"].lhs == 4
    p13 = {r.name: r for r in by_params(report, p=13)}
    assert p13["binomial_part2"].lhs == -2 == p13["binomial_part2"].rhs


def test_binomial_rejects_small_primes():
    with pytest.raises(DomainError):
        vh.verify_theorem_binomial([3])


def test_transformations_grid():
    report = vh.verify_transformations(seed=3)
    assert report.ok
    assert report.seed == 3
    zero = [r for r in report.results if r.parameters.get("z") == 0.0 and not r.skipped]
    assert len(zero) == 3
    for r in zero:
        assert r.lhs == 1.0 and r.rhs == 1.0
    skipped = [r for r in report.results if r.skipped]
    assert skipped and all(r.name == "transform_pfaff" for r in skipped)


def test_transformations_named_instances():
    report = vh.verify_transformations(zs=[0.25], n_random=0)
    names = {r.name: r for r in report.results}
    assert names["transform_square"].residual < 1e-9
    assert names["transform_pfaff"].residual < 1e-9
    assert names["transform_pfaff"].lhs == pytest.approx(0.75 ** -0.25 * 0.9468055707360212, rel=1e-12)


def test_transformations_rejects_out_of_range():
    with pytest.raises(DomainError):
        vh.verify_transformations(zs=[0.95])


def test_transformations_deterministic():
    a = vh.verify_transformations(seed=11)
    b = vh.verify_transformations(seed=11)
    assert [(r.parameters, r.lhs) for r in a.results] == [(r.parameters, r.lhs) for r in b.results]


def test_twist_examples():
    report = vh.verify_twist_relation([3, 7, 11], twists=[-6])
    assert by_params(report, p=3)[0].skipped
    assert all(r.passed for r in report.results)
    assert report.passed == 2


def test_jacobsthal_suite():
    report = vh.verify_jacobsthal([5, 7, 13])
    assert [r.rhs for r in report.results] == [0, 4, -2]
    assert report.ok


@pytest.mark.parametrize("shift,snaps", [(0.3, False), (1.0, True)])
def test_failure_carries_raw_values(monkeypatch, shift, snaps):
    # corrupt every 3F2 value by shift/p^2: off the grid, or onto a wrong grid point
    real_table = vh.ff.gaussian_hyp_table

    def corrupted(A, B):
        p = A[0].p
        return real_table(A, B) + shift / p ** 2

    monkeypatch.setattr(vh.ff, "gaussian_hyp_table", corrupted)
    report = vh.verify_ono(Fraction(1, 3), [7])
    assert report.failed == 2
    for r in report.results:
        assert not r.passed
        assert "raw" in r.details
        if snaps:
            assert "snap_residual" in r.details and r.lhs != r.rhs
        else:
            assert "snap_error" in r.details


def test_counts_consistent():
    report = vh.verify_ono(Fraction(1, 2), vh.ff.odd_primes(3, 40))
    assert report.passed + report.failed + report.skipped == len(report.results)
    assert report.counts == (report.passed, report.failed)


def test_run_all_small():
    reports = vh.run_all(vh.HarnessConfig(primes_max=40))
    assert [r.suite for r in reports] == list(vh.SUITES)
    assert all(r.ok for r in reports)


def test_unknown_suite():
    with pytest.raises(ValueError):
        vh.run_suite("nope")
