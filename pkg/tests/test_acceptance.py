"""Acceptance criteria: one test per criterion, each printing a pass/fail
line and enforcing its stated tolerance (exact) and runtime budget.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import json
import time

from digitbinom import binomlib, cli, digits, identities, sierpinski


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def _report(number: int, label: str, ok: bool, elapsed: float, limit: float):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    print(f"criterion {number} ({label}): {status} "
          f"[{elapsed:.2f}s / limit {limit:g}s]")
    assert ok, f"criterion {number} ({label}) failed"
    assert elapsed < limit, f"criterion {number} exceeded {limit}s ({elapsed:.2f}s)"


def test_criterion_1_qbinom_golden_row(capsys):
    with _Timer() as t:
        code = cli.main(["qbinom", "3", "--route", "both", "--format", "json"])
    out = capsys.readouterr().out
    payload = json.loads(out)
    rows = payload["rows"]
    ok = (code == 0
          and [r["product"] for r in rows] == ["1", "1 + q + q^2", "1 + q + q^2", "1"]
          and [r["digital"] for r in rows] == ["1", "1 + q + q^2", "1 + q + q^2", "1"]
          and all(r["agree"] for r in rows))
    with capsys.disabled():
        _report(1, "q-binomial golden row", ok, t.elapsed, 0.1)


def test_criterion_2_q_digital_sweep():
    with _Timer() as t:
        ok = all(identities.verify_q_digital(n).passed for n in range(256))
    _report(2, "q-digital sweep n<256", ok, t.elapsed, 10)


def test_criterion_3_two_route_q_binomials():
    with _Timer() as t:
        ok = all(
            binomlib.q_binomial_digital(n, k) == binomlib.q_binomial_product(n, k)
            for n in range(11) for k in range(n + 1))
    _report(3, "digital == product route, N<=10", ok, t.elapsed, 30)


def test_criterion_4_rothe_cross_check():
    with _Timer() as t:
        ok = True
        for n_levels in range(1, 9):
            rothe = identities.verify_rothe(n_levels)
            special = identities.verify_special_case(n_levels)
            ok = ok and rothe.passed and special.passed
            ok = ok and rothe.lhs == special.lhs
    _report(4, "Rothe vs special case, N<=8", ok, t.elapsed, 10)


def test_criterion_5_multivariable_sweep():
    with _Timer() as t:
        ok = True
        for b in (2, 3, 4):
            for n in range(b ** 3):
                if digits.dominated_count(n, b) > 4096:
                    continue
                ok = ok and identities.verify_multivariable(b, n).passed
        for n in range(1024):
            report = identities.verify_multivariable(
                2, n, mode="random_eval", seed=20260810 + n, points=5)
            ok = ok and report.passed
    _report(5, "multivariable symbolic + screening", ok, t.elapsed, 60)


def test_criterion_6_three_parameter_sweep():
    with _Timer() as t:
        ok = all(identities.verify_three_parameter(b, n).passed
                 for b in (2, 3) for n in range(64))
    _report(6, "three-parameter sweep", ok, t.elapsed, 60)


def test_criterion_7_matrix_laws():
    with _Timer() as t:
        ok = True
        for b in (2, 3):
            for n in range(4):
                vx = sierpinski.VariableVectors.symbolic(n)
                vy = sierpinski.VariableVectors.symbolic(n, x_letter="y")
                direct = sierpinski.build_direct(b, n, vx)
                ok = ok and direct == sierpinski.build_kron(b, n, vx)
                product = sierpinski.multiply(
                    direct, sierpinski.build_direct(b, n, vy))
                ok = ok and product == sierpinski.build_direct(b, n, vx + vy)
        for b in range(2, 5):
            for n in range(5):
                brute = sum(1 for j in range(b ** n)
                            for k in range(j + 1) if digits.dominates(k, j, b))
                built = sierpinski.build_numeric(b, n, [1] * n, [1] * n)
                ok = ok and built.nnz() == brute == (b * (b + 1) // 2) ** n
    _report(7, "matrix laws and sparsity count", ok, t.elapsed, 60)


def test_criterion_8_identity_suite():
    with _Timer() as t:
        ok = all(identities.identity_sum_q(n).passed for n in range(1, 9))
        ok = ok and all(identities.identity_deriv_x(n).passed for n in range(1, 7))
        ok = ok and all(identities.verify_digit_sum_corollary(n).passed
                        for n in range(1, 17))
        ok = ok and all(identities.identity_deriv_q(n).passed for n in range(1, 7))
        ok = ok and all(identities.verify_pq_analog(n).passed for n in range(1, 7))
        ok = ok and all(binomlib.chu_vandermonde_check(p_idx, q_idx).passed
                        for p_idx in range(9) for q_idx in range(p_idx + 1))
    _report(8, "identity suite", ok, t.elapsed, 60)


def test_criterion_9_digit_layer_equivalence():
    with _Timer() as t:
        ok = True
        for b in (2, 3, 5):
            digit_sum = [0] * 1000
            for v in range(1, 1000):
                digit_sum[v] = digit_sum[v // b] + v % b
            for n in range(1000):
                dominated = set(digits.enumerate_dominated(n, b))
                for m in range(n + 1):
                    dom = digits.dominates(m, n, b)
                    carry_free = digits.is_carry_free(m, n - m, b)
                    additive = digit_sum[m] + digit_sum[n - m] == digit_sum[n]
                    member = m in dominated
                    if not (dom == carry_free == additive == member):
                        ok = False
    _report(9, "dominance equivalences, n<1000", ok, t.elapsed, 30)


def test_criterion_10_performance_gate():
    with _Timer() as t:
        matrix = sierpinski.build_numeric(2, 16, [1] * 16, [1] * 16)
        nnz = matrix.nnz()
    ok = nnz == 43_046_721 == 3 ** 16
    _report(10, "output-sensitive build of the 2^16 matrix", ok, t.elapsed, 10)
