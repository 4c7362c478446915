"""Acceptance gate: the twelve headline checks at their contract bounds.

Each test runs one verification suite at the bounds the library promises
to satisfy and prints a single pass/fail line (visible under pytest -s).
The full module is the release bar; nothing here may be skipped or
loosened.  Run order goes from cheap arithmetic to the slow enumerations.
"""

import json

from planes import suites


def _run(criterion: int, label: str, name: str, **kwargs) -> dict:
    report = suites.run_suite(name, **kwargs)
    status = report["status"].upper()
    print(f"criterion {criterion:2d} ({label}): {status}")
    if report["status"] != "pass":
        print(json.dumps(report["detail"], indent=2, sort_keys=True, default=str))
    assert report["status"] == "pass", f"criterion {criterion} failed: {label}"
    return report


def test_criterion_01_count_formula_equals_both_oracles_to_500():
    report = _run(1, "closed formula vs dual enumeration, d <= 500",
                  "r24", dmax=500)
    assert report["detail"]["dmax"] == 500


def test_criterion_02_klein_bijection_to_200():
    _run(2, "plane-pair bijection and image characterization, n <= 200",
         "klein", nmax=200)


def test_criterion_03_orthogonal_complement_formula_to_200():
    _run(3, "complement coordinate shuffle and disc equality, n <= 200",
         "orth", nmax=200)


def test_criterion_04_local_identity_symbolic_and_numeric():
    report = _run(4, "local factor identity, three cases, series to y^20",
                  "local-identity", order=20)
    cases = report["detail"]["cases"]
    assert sorted(c["eps"] for c in cases) == [-1, 0, 1]
    for case in cases:
        assert case["symbolic"] is True
        assert set(case["numeric_primes"]) == {"3", "5", "7", "11", "13"}
        assert all(case["numeric_primes"].values())


def test_criterion_05_divisor_sum_matches_local_series():
    report = _run(5, "square-part sum vs Euler factor, d0 in {3, 11, 19}, "
                     "odd f <= 99", "p-local", fmax=99)
    assert report["detail"]["d0"] == [3, 11, 19]


def test_criterion_06_three_squares_class_number_to_200():
    _run(6, "r3 against class numbers on both residue branches, d0 <= 200",
         "class-number", dmax=200)


def test_criterion_07_l_value_against_character_sum_to_200():
    report = _run(7, "L(1, chi) within 1e-6 of pi r3/(24 sqrt d0), d0 <= 200",
                  "l-value", dmax=200)
    worst = report["detail"].get("worst_abs_diff")
    if worst is not None:
        assert worst < 1e-6


def test_criterion_08_gauss_image_single_genus_to_200():
    _run(8, "orthogonal forms of norm-n vectors fill one genus, n <= 200",
         "gauss-genus", nmax=200)


def test_criterion_09_multiplication_lattices_and_norm_identity_to_150():
    _run(9, "mu images equal Klein orthogonals plus norm identity, n <= 150",
         "comp-ort", nmax=150)


def test_criterion_10_pair_realizability_to_150():
    _run(10, "observed class pairs equal genus prediction, n <= 150",
         "pair-genus", nmax=150)


def test_criterion_11_genus_count_is_square_index_to_300():
    _run(11, "genus count equals [Cl : Cl^2], a power of two, n <= 300",
         "genus-structure", nmax=300)


def test_criterion_12_global_identity_numeric():
    report = _run(12, "assembled identity at w=4, d <= 200, primes <= 10^4",
                  "global-identity", w=4.0, dmax=200, prime_cutoff=10 ** 4)
    detail = report["detail"]
    assert detail["rel_diff"] < 1e-4
    assert detail["prime_cutoff"] == 10 ** 4
