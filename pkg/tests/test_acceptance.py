"""End-to-end acceptance checks, one per shipped guarantee.

Each test exercises one numbered guarantee at its stated tolerance and
prints a single pass/fail line (run pytest with -s to see them all).
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from isingchi import (
    FibonacciSpec,
    FrustratedModel,
    autocorrelation,
    build_table,
    chi_column_gauge,
    chi_grid,
    chi_uniform,
    coupling_pair,
    dual_pair,
    eight_vertex_weights,
    ff_correlation,
    fib_bits,
    find_peaks,
    jacobi_elliptic,
    lookup,
    make_modulus,
    metallic_alpha,
    onsager_nn,
    orientation_flip,
    sign_sequence,
)
from isingchi.couplings import RapidityLine
from isingchi.elliptic import complete_elliptic_K
from isingchi.oracle import (
    CylinderSpec,
    cylinder_correlation,
    extrapolate,
    oracle_pair_correlations,
    verify_identities,
)


def _finish(num, label, checks, elapsed, budget):
    ok = all(checks.values()) and elapsed < budget
    print("criterion %2d  %-34s %s  (%.1fs / %.0fs)"
          % (num, label, "pass" if ok else "FAIL", elapsed, budget))
    failed = [name for name, good in checks.items() if not good]
    assert ok, "failed checks: %s, elapsed %.1fs (budget %.0fs)" % (
        failed, elapsed, budget)


def test_criterion_01_elliptic_kernel():
    t0 = time.perf_counter()
    checks = {}
    checks["K(0)"] = abs(float(complete_elliptic_K(0.0)) - math.pi / 2) <= 1e-15

    rng = np.random.default_rng(101)
    worst = 0.0
    for k in rng.uniform(0.01, 0.98, size=20):
        ref = quad(lambda t, kk=k: 1 / math.sqrt(1 - kk * kk * math.sin(t) ** 2),
                   0, math.pi / 2, epsabs=1e-13, epsrel=1e-13,
                   full_output=1)[0]
        worst = max(worst, abs(float(complete_elliptic_K(float(k))) - ref))
    checks["K vs quadrature"] = worst <= 1e-12

    worst = 0.0
    for _ in range(1000):
        u = rng.uniform(-3, 3)
        k = rng.uniform(0.01, 0.99)
        sn, cn, dn = (float(v) for v in jacobi_elliptic(u, k))
        worst = max(worst, abs(sn * sn + cn * cn - 1),
                    abs(dn * dn + k * k * sn * sn - 1))
    checks["Jacobi identities"] = worst <= 1e-12
    _finish(1, "elliptic kernel", checks, time.perf_counter() - t0, 5)


def test_criterion_02_coupling_parametrization():
    t0 = time.perf_counter()
    rng = np.random.default_rng(102)
    worst_prod, worst_flip = 0.0, 0.0
    for _ in range(1000):
        mod = make_modulus(float(rng.uniform(0.05, 0.95)))
        d = float(rng.uniform(0.02, 0.98)) * float(mod.big_K_prime)
        a = RapidityLine(id=0, u=0.0)
        b = RapidityLine(id=1, u=-d)
        pair = coupling_pair(a, b, mod)
        prod = float(np.sinh(2 * float(pair.K))) * float(
            np.sinh(2 * float(pair.K_bar)))
        worst_prod = max(worst_prod, abs(prod - float(mod.k)))
        swapped = coupling_pair(orientation_flip(a), b, mod)
        worst_flip = max(worst_flip,
                         abs(float(pair.K) - float(swapped.K_bar)),
                         abs(float(pair.K_bar) - float(swapped.K)))
    checks = {"product rule": worst_prod <= 1e-12,
              "orientation flip swaps": worst_flip <= 1e-12}
    _finish(2, "coupling parametrization", checks,
            time.perf_counter() - t0, 5)


def test_criterion_03_nearest_neighbour_closed_form(table05_r30):
    t0 = time.perf_counter()
    K = math.asinh(math.sqrt(0.5)) / 2
    widths = [8, 10, 12, 14]
    vals = [0.5 * (cylinder_correlation(CylinderSpec(w, K, "uniform"), (1, 0))
                   + cylinder_correlation(CylinderSpec(w, K, "antiperiodic"),
                                          (1, 0)))
            for w in widths]
    limit, _ = extrapolate(widths, vals)
    checks = {"cylinder extrapolation":
              abs(onsager_nn(0.5) - limit) <= 1e-6}

    seed = abs(math.sqrt(0.5) * lookup(table05_r30, 1, 0)
               + lookup(table05_r30, 0, 1, "Cbar") - math.sqrt(1.5))
    checks["seed identity"] = seed <= 1e-12
    checks["strong-coupling limit"] = abs(onsager_nn(0.999)
                                          - math.sqrt(2) / 2) <= 2e-3
    _finish(3, "nearest-neighbour closed form", checks,
            time.perf_counter() - t0, 120)


def test_criterion_04_table_against_oracle():
    t0 = time.perf_counter()
    table = build_table(make_modulus(0.5), 8)
    C, C_bar = oracle_pair_correlations(0.5, 4)
    worst = 0.0
    for m in range(6):
        for n in range(6):
            worst = max(worst,
                        abs(lookup(table, m, n) - C[(m, n)]),
                        abs(lookup(table, m, n, "Cbar") - C_bar[(m, n)]))
    checks = {"every entry within 1e-6 of the oracle": worst <= 1e-6}
    _finish(4, "table against oracle", checks,
            time.perf_counter() - t0, 300)


def test_criterion_05_recurrence_residuals():
    t0 = time.perf_counter()
    fine = build_table(make_modulus(0.5), 40, precision_bits=256)
    coarse = build_table(make_modulus(0.5), 12, precision_bits=53)
    checks = {"R=40 at 256 bits": fine.residual_report <= 1e-20,
              "R=12 at double": coarse.residual_report <= 1e-12}
    _finish(5, "recurrence residuals", checks, time.perf_counter() - t0, 60)


def test_criterion_06_dual_diagonal_limit(table05_r30):
    t0 = time.perf_counter()
    limit = (1 - 0.5 ** 2) ** 0.25
    gap = abs(lookup(table05_r30, 30, 30, "Cbar") - limit)
    checks = {"C_bar(30,30) near (1-k^2)^(1/4)": gap <= 1e-3}
    _finish(6, "dual diagonal limit", checks, time.perf_counter() - t0, 60)


def test_criterion_07_frustrated_factorization():
    t0 = time.perf_counter()
    checks = {}
    rng = np.random.default_rng(107)
    worst = 0.0
    for S in rng.uniform(0.05, 8.0, size=1000):
        w = eight_vertex_weights(float(S))
        worst = max(worst, abs(w.a ** 2 + w.b ** 2 - w.c ** 2 - w.d ** 2)
                    / w.d ** 2)
    checks["free-fermion condition"] = worst <= 1e-12

    table = build_table(make_modulus(dual_pair(1.0).k), 6)
    ma = FrustratedModel(S=1.0, version="a")
    mb = FrustratedModel(S=1.0, version="b")
    odd_odd_zero, parity_zero = True, True
    for _ in range(1000):
        dx = int(rng.integers(-11, 12))
        dy = int(rng.integers(-5, 6)) * 2 + 1
        if dx % 2:
            odd_odd_zero &= ff_correlation(ma, table, dx, dy, 0) == 0.0
        else:
            s = (ff_correlation(ma, table, dx, dy, 0)
                 + ff_correlation(ma, table, dx, dy, 1))
            parity_zero &= s == 0.0
    checks["odd-odd class vanishes"] = odd_odd_zero
    checks["sublattice parity average vanishes"] = parity_zero

    for version in ("a", "b"):
        rep = verify_identities(("frustrated", 1.0, version), radius=3)
        checks["assembly vs mixed-sign oracle (%s)" % version] = rep.passed

    # base column x0 = 0, so version a sees parity y0 and version b parity 0
    gauge_ok = True
    for y0 in range(4):
        for dx in range(-6, 7):
            for dy in range(-6, 7):
                eps = ((1 if y0 % 4 in (0, 1) else -1)
                       * (1 if (y0 + dy) % 4 in (0, 1) else -1))
                va = ff_correlation(ma, table, dx, dy, y0 % 2)
                vb = ff_correlation(mb, table, dx, dy, 0)
                gauge_ok &= va == eps * vb
    checks["layout gauge map exact"] = gauge_ok
    _finish(7, "frustrated factorization", checks,
            time.perf_counter() - t0, 300)


def test_criterion_08_susceptibility_grid(table05_r30):
    t0 = time.perf_counter()
    checks = {}
    grid = chi_grid(("uniform", table05_r30), 64, 64, 30)
    checks["sum rule"] = abs(float(grid.values.mean()) - 1.0) <= 1e-3

    flip = (-np.arange(64)) % 64
    even = max(np.max(np.abs(grid.values - grid.values[flip, :])),
               np.max(np.abs(grid.values - grid.values[:, flip])))
    checks["evenness"] = float(even) <= 1e-12

    rng = np.random.default_rng(108)
    per = max(abs(chi_uniform(table05_r30, (qx + 2 * math.pi, qy), 30)
                  - chi_uniform(table05_r30, (qx, qy), 30))
              for qx, qy in rng.uniform(-math.pi, math.pi, size=(10, 2)))
    checks["2pi periodicity"] = per <= 1e-12

    floor = -(grid.tail_bound + 1e-10)
    checks["grid minimum above tail floor"] = float(grid.values.min()) >= floor

    kappa = (-1.0) ** np.arange(31)
    shift = max(abs(chi_column_gauge(table05_r30, kappa, (qx, qy), 30)
                    - chi_uniform(table05_r30, (qx, qy + math.pi), 30))
                for qx, qy in rng.uniform(-math.pi, math.pi, size=(10, 2)))
    checks["alternating gauge is half-zone shift"] = shift <= 1e-12
    _finish(8, "susceptibility grid", checks, time.perf_counter() - t0, 60)


def test_criterion_09_peak_structure():
    t0 = time.perf_counter()
    checks = {}
    ftable = build_table(make_modulus(dual_pair(1.0).k), 12)
    for version in ("a", "b"):
        model = FrustratedModel(S=1.0, version=version)
        grid = chi_grid(("frustrated", model, ftable), 64, 64, 12)
        peaks = find_peaks(grid)
        checks["frustrated %s peaks commensurate" % version] = (
            len(peaks) > 0 and all(p.commensurate for p in peaks))

    kappa = autocorrelation(sign_sequence(FibonacciSpec(j=0), 200_000), 31)
    counts = {}
    for k in (0.5, 0.9):
        table = build_table(make_modulus(k), 30)
        grid = chi_grid(("gauge", table, kappa), 64, 64, 30)
        counts[k] = len(find_peaks(grid))
    checks["quasiperiodic splitting grows with k"] = counts[0.9] > counts[0.5]
    _finish(9, "peak structure", checks, time.perf_counter() - t0, 120)


def test_criterion_10_fibonacci_words():
    t0 = time.perf_counter()
    checks = {}
    N = 1_000_000
    for j in (0, 1, 2):
        ones = int(fib_bits(FibonacciSpec(j=j), N).sum())
        checks["ones frequency j=%d" % j] = (
            abs(ones / N - 1 / metallic_alpha(j)) <= 2 / N)
    hand = [0, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 1, 1]
    checks["hand-checked prefix"] = (
        fib_bits(FibonacciSpec(j=0), len(hand)).tolist() == hand)
    _finish(10, "fibonacci words", checks, time.perf_counter() - t0, 5)
