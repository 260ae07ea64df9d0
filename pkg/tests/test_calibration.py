"""Selection of the Phi constants, the k_J ordering and the lambda sign."""

from fractions import Fraction

from exlie import calibration, groups, lie


def test_unique_candidate_passes():
    res = calibration.calibrate()
    assert res.converged
    assert res.candidates == 12 and len(res.passing) == 1
    c = res.conventions
    assert (c.transpose_sign, c.nu_coeff, c.cross_coeff) == (-1, Fraction(1, 3), 2)
    assert lie.CONVENTIONS == c


def test_other_choices_selected():
    res = calibration.calibrate()
    assert res.kj_convention == "blockwise" == groups.KJ_CONVENTION
    assert res.lambda_sign == 1


def test_rejected_candidates_are_far_off():
    res = calibration.calibrate()
    worst = sorted(w for _, w in res.table)
    assert worst[0] <= 1e-10 and worst[1] > 1e-3


def test_report_keys():
    d = calibration.calibrate().as_dict()
    assert set(d) == {"phi", "residuals", "candidates_tested", "candidates_passing", "converged", "k_J",
                      "lambda_sign"}
    assert set(d["residuals"]) == {"alpha1~", "alpha_2", "alpha"}


def test_cached_per_tolerance():
    assert calibration.calibrate(1e-9) is calibration.calibrate(1e-9)
