#!/usr/bin/env python3
"""Smoke test for the cubic_weyl_py extension module.

Builds the cdylib with cargo (unless --no-build), stages it under a
temporary directory as an importable module, and exercises the main
operations end to end.
"""

import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    if "--no-build" not in sys.argv:
        subprocess.run(
            ["cargo", "build", "-p", "cubic-weyl-py", "--release"],
            cwd=REPO_ROOT,
            check=True,
        )
    lib = REPO_ROOT / "target" / "release" / "libcubic_weyl_py.so"
    if not lib.exists():
        sys.exit(f"extension library not found at {lib}")
    stage = Path(tempfile.mkdtemp(prefix="cubic_weyl_py."))
    shutil.copy2(lib, stage / "cubic_weyl_py.so")
    sys.path.insert(0, str(stage))
    return stage


def approx(x, y, tol=1e-9):
    return abs(x - y) <= tol


def main() -> None:
    build_extension()
    import cubic_weyl_py as cw

    # modular arithmetic
    assert cw.mod_inverse(3, 5) == 2
    assert cw.mod_inverse(1, 1) == 0
    assert cw.jacobi(2, 7) == 1
    assert cw.jacobi(2, 3) == -1
    assert cw.jacobi(5, 5) == 0
    assert cw.factorize(12) == [(2, 2), (3, 1)]
    assert cw.factorize(9991) == [(97, 1), (103, 1)]
    ub, va, rhs = cw.inverse_reciprocity(3, 5)
    assert ub == (2, 5) and va == (2, 3) and rhs == (1, 15)
    try:
        cw.mod_inverse(2, 4)
    except ValueError:
        pass
    else:
        sys.exit("mod_inverse(2, 4) should raise")

    # exponential sums
    assert approx(cw.e_of(0.5), -1.0, 1e-15)
    s, err_bound = cw.weyl_sum(1, 9, 9, 0.0)
    expected = 3.0 * (1.0 + 2.0 * math.cos(2.0 * math.pi / 9.0))
    assert approx(s.real, expected, 1e-10) and abs(s.imag) < 1e-10
    assert err_bound > 0
    s, _ = cw.weyl_sum(1, 5, 5, 0.0)
    assert abs(s) < 1e-12

    weights = cw.partition_weights(3.0)
    assert [lvl for lvl, _ in weights] == [1, 2]
    assert approx(sum(w for _, w in weights), 1.0, 1e-12)

    # Gauss sums: closed form vs oracle
    g = cw.gauss_closed(1, 0, 4)
    assert approx(g.value().real, 2.0, 1e-9) and approx(g.value().imag, 2.0, 1e-9)
    assert g.unit == "(1+i)" and g.radicand == 4
    assert abs(cw.gauss_brute(1, 0, 6)) < 1e-12
    for (a, ell, q) in [(1, 0, 5), (3, 7, 80), (2, 3, 9), (5, 4, 12)]:
        closed = cw.gauss_closed(a, ell, q).value()
        brute = cw.gauss_brute(a, ell, q)
        assert abs(closed - brute) <= 1e-9 * math.sqrt(2 * q), (a, ell, q)
    lhs, rhs2 = cw.gauss_mult_check(2, 1, 4, 9)
    assert abs(lhs - rhs2) < 1e-9 * 6.0

    # congruence counting and short pairs
    assert cw.count_solutions(1, 5, 0, 4, 0, 4) == 5
    ell, s_val, d, t = cw.short_approx(7, 100)
    assert (ell, s_val, t) == (7, 1, 0)
    ell, s_val, d, t = cw.short_approx(99, 100)
    assert s_val * 99 == ell + t * 100

    # differencing identity and partition
    lhs, _, disc = cw.weyl_difference_identity(1, 9, 0.0, 16)
    assert disc < 1e-8 * max(lhs, 1.0)
    q0, b, parts, total = cw.d_partition(1, 9, 0.0, 20)
    assert q0 == 3 and b == 1
    assert approx(sum(v for _, v in parts), total, 1e-8)

    # Poisson check
    table = [complex(math.cos(2 * math.pi * x / 5), math.sin(2 * math.pi * x / 5)) for x in range(5)]
    t_cut = cw.poisson_truncation(100, 5, 1.0)
    _, _, disc = cw.poisson_check(100, table, t_cut)
    assert disc < 1e-6

    # harness surfaces
    assert cw.weyl_bound(10, 1) >= 10.0
    csv1 = cw.sweep_csv("q_list = 5, 9\ntheta = 1.0\na_samples = 2\nseed = 3\n")
    csv2 = cw.sweep_csv("q_list = 5, 9\ntheta = 1.0\na_samples = 2\nseed = 3\n")
    assert csv1 == csv2
    assert csv1.startswith("q,N,a,gamma,abs_sum,ratio,weyl_bound,exponent\n")

    report = cw.trace_json(1, 125, 26, 0.0)
    assert '"q0": "125"' in report and '"t_identity_ok": true' in report

    values = [complex(1.0, 0.0)] * 100
    assert cw.completion_ratio(values, 1, 1, 100, 16) <= 1.0 + 1e-12

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
