//! Python bindings: the main types and operations of the cubic-weyl crate.
//!
//! Build the cdylib and import it as `cubic_weyl_py`; see
//! `python/smoke_test.py` at the repository root.

use cubic_weyl::error::Error;
use cubic_weyl::expsum::{self, CubicPhase, SmoothWindow};
use cubic_weyl::gauss::{self, GaussParams};
use cubic_weyl::harness;
use cubic_weyl::modarith;
use cubic_weyl::reduction::{self, ApproxPair, CongruenceBox};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Reduced fraction as a (numerator, denominator) pair.
type Fraction = (i128, i128);

#[pyfunction]
fn mod_inverse(a: i128, m: i128) -> PyResult<i128> {
    modarith::mod_inverse(a, m).map_err(err)
}

#[pyfunction]
fn jacobi(a: i128, n: i128) -> PyResult<i8> {
    modarith::jacobi(a, n).map_err(err)
}

#[pyfunction]
fn factorize(q: u64) -> Vec<(u64, u32)> {
    modarith::factorize(q).factors
}

/// (u/b, v/a, 1/(ab)) as (num, den) pairs with u/b + v/a = 1/(ab) mod 1.
#[pyfunction]
fn inverse_reciprocity(a: i128, b: i128) -> PyResult<(Fraction, Fraction, Fraction)> {
    let (ub, va, rhs) = modarith::inverse_reciprocity(a, b).map_err(err)?;
    Ok((
        (ub.num(), ub.den()),
        (va.num(), va.den()),
        (rhs.num(), rhs.den()),
    ))
}

#[pyfunction]
fn e_of(x: f64) -> Complex64 {
    expsum::e_of(x)
}

/// Returns (sum, error_bound) for S = sum_{n=1..N} e(a n^3/q + gamma n).
#[pyfunction]
fn weyl_sum(a: i128, q: u64, n: u64, gamma: f64) -> PyResult<(Complex64, f64)> {
    let phase = CubicPhase::new(a, q, gamma).map_err(err)?;
    let s = expsum::weyl_sum(&phase, n).map_err(err)?;
    Ok((s.value, s.err_bound))
}

fn window_from(shape: &str, n: u64) -> PyResult<SmoothWindow> {
    match shape {
        "poly" => Ok(SmoothWindow::poly_bump(n)),
        "gaussian" => Ok(SmoothWindow::gaussian(n)),
        other => Err(PyValueError::new_err(format!(
            "unknown window shape `{other}` (expected `poly` or `gaussian`)"
        ))),
    }
}

/// Smooth sum over n in [N, 2N] of f(n) e(a n^3/q + gamma n).
#[pyfunction]
#[pyo3(signature = (a, q, gamma, window_n, shape = "poly"))]
fn smooth_weyl_sum(a: i128, q: u64, gamma: f64, window_n: u64, shape: &str) -> PyResult<Complex64> {
    let phase = CubicPhase::new(a, q, gamma).map_err(err)?;
    let window = window_from(shape, window_n)?;
    Ok(expsum::smooth_weyl_sum(&phase, &window).value)
}

/// Nonzero dyadic partition-of-unity weights at x.
#[pyfunction]
#[pyo3(signature = (x, max_level = 64))]
fn partition_weights(x: f64, max_level: u32) -> PyResult<Vec<(u32, f64)>> {
    expsum::partition_weights(x, max_level).map_err(err)
}

/// Smallest truncation with a certified Poisson tail below 1e-9 for a
/// Gaussian window of scale window_n against a q-periodic table bounded by
/// g_max.
#[pyfunction]
fn poisson_truncation(window_n: u64, q: u64, g_max: f64) -> PyResult<i64> {
    SmoothWindow::gaussian(window_n)
        .suggest_truncation(q, g_max)
        .map_err(err)
}

/// Two-sided Poisson check; returns (lhs, rhs, discrepancy).
#[pyfunction]
fn poisson_check(
    window_n: u64,
    g_table: Vec<Complex64>,
    truncation: i64,
) -> PyResult<(Complex64, Complex64, f64)> {
    let window = SmoothWindow::gaussian(window_n);
    expsum::poisson_check(&window, &g_table, truncation).map_err(err)
}

/// Exact symbolic value of a complete Gauss sum.
#[pyclass(frozen)]
struct GaussClosed {
    #[pyo3(get)]
    sign: i8,
    #[pyo3(get)]
    phase_num: i128,
    #[pyo3(get)]
    phase_den: i128,
    #[pyo3(get)]
    unit: String,
    #[pyo3(get)]
    multiplier: u64,
    #[pyo3(get)]
    radicand: u64,
    repr: String,
    value: Complex64,
}

#[pymethods]
impl GaussClosed {
    /// Rendered complex value.
    fn value(&self) -> Complex64 {
        self.value
    }

    fn __repr__(&self) -> String {
        format!("GaussClosed({})", self.repr)
    }
}

#[pyfunction]
fn gauss_closed(a: i128, ell: i128, q: u64) -> PyResult<GaussClosed> {
    let v = gauss::gauss_closed(&GaussParams::new(a, ell, q).map_err(err)?).map_err(err)?;
    Ok(GaussClosed {
        sign: v.sign,
        phase_num: v.phase.num(),
        phase_den: v.phase.den(),
        unit: v.unit.to_string(),
        multiplier: v.multiplier,
        radicand: v.radicand,
        repr: v.to_string(),
        value: v.to_complex(),
    })
}

#[pyfunction]
fn gauss_brute(a: i128, ell: i128, q: u64) -> PyResult<Complex64> {
    gauss::gauss_brute(&GaussParams::new(a, ell, q).map_err(err)?).map_err(err)
}

/// Both sides of G(a, l; q1 q2) = G(a q1, l; q2) G(a q2, l; q1).
#[pyfunction]
fn gauss_mult_check(a: i128, ell: i128, q1: u64, q2: u64) -> PyResult<(Complex64, Complex64)> {
    gauss::gauss_mult_check(a, ell, q1, q2).map_err(err)
}

#[pyfunction]
fn count_solutions(b: i128, q: u64, x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> PyResult<u64> {
    reduction::count_solutions(&CongruenceBox {
        b,
        q,
        x_interval: (x_lo, x_hi),
        y_interval: (y_lo, y_hi),
    })
    .map_err(err)
}

/// Short pair (ell, s, d, t) with b = ell * s^{-1} mod d and s b = ell + t d.
#[pyfunction]
#[pyo3(signature = (b, d, weight_l = 1.0, weight_s = 1.0))]
fn short_approx(b: i128, d: u64, weight_l: f64, weight_s: f64) -> PyResult<(i128, i128, u64, i128)> {
    let p = reduction::short_approx(b, d, weight_l, weight_s).map_err(err)?;
    Ok((p.ell, p.s, p.d, p.t))
}

/// (|S|^2, expanded double sum, discrepancy) of the differencing identity.
#[pyfunction]
fn weyl_difference_identity(
    a: i128,
    q: u64,
    gamma: f64,
    window_n: u64,
) -> PyResult<(f64, Complex64, f64)> {
    let phase = CubicPhase::new(a, q, gamma).map_err(err)?;
    let window = SmoothWindow::poly_bump(window_n);
    reduction::weyl_difference_identity(&phase, &window).map_err(err)
}

/// Divisor-indexed slices of the differenced sum.
type PartitionSlices = Vec<(u64, Complex64)>;

/// (q0, b, [(d, S'_d)], total) of the differenced sum split by (m, q0).
#[pyfunction]
fn d_partition(
    a: i128,
    q: u64,
    gamma: f64,
    window_n: u64,
) -> PyResult<(u64, i128, PartitionSlices, Complex64)> {
    let phase = CubicPhase::new(a, q, gamma).map_err(err)?;
    let window = SmoothWindow::poly_bump(window_n);
    let p = reduction::d_partition(&phase, &window).map_err(err)?;
    Ok((
        p.q0,
        p.b,
        p.parts.into_iter().collect(),
        p.total,
    ))
}

/// The diagnostic dual sums (S_d^(1), S_d^(2)).
#[pyfunction]
#[pyo3(signature = (a, q, gamma, d, ell, s, t, s1, y, n))]
#[allow(clippy::too_many_arguments)]
fn dual_sum(
    a: i128,
    q: u64,
    gamma: f64,
    d: u64,
    ell: i128,
    s: i128,
    t: i128,
    s1: i128,
    y: u64,
    n: u64,
) -> PyResult<(Complex64, Complex64)> {
    let phase = CubicPhase::new(a, q, gamma).map_err(err)?;
    let pair = ApproxPair { ell, s, d, t };
    reduction::dual_sum(&phase, d, &pair, s1, (y, n)).map_err(err)
}

/// (M_d, condition value, condition holds) for the dual-sum range.
#[pyfunction]
#[pyo3(signature = (ell, s, d, q0, y, n, epsilon = 0.05))]
#[allow(clippy::too_many_arguments)]
fn compute_md(
    ell: i128,
    s: i128,
    d: u64,
    q0: u64,
    y: u64,
    n: u64,
    epsilon: f64,
) -> (f64, f64, bool) {
    let pair = ApproxPair { ell, s, d, t: 0 };
    let r = reduction::compute_md(&pair, d, q0, y, n, epsilon);
    (r.m_d, r.cond_value, r.cond_holds)
}

#[pyfunction]
#[pyo3(signature = (n, q, epsilon = 0.0))]
fn weyl_bound(n: u64, q: u64, epsilon: f64) -> f64 {
    harness::weyl_bound(n, q, epsilon)
}

/// Run a sweep from the flat key = value config text and return the CSV.
#[pyfunction]
#[pyo3(signature = (config_text, seed = None))]
fn sweep_csv(config_text: &str, seed: Option<u64>) -> PyResult<String> {
    let mut cfg = harness::SweepConfig::parse(config_text).map_err(err)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let out = harness::sweep(&cfg).map_err(err)?;
    Ok(harness::records_to_csv(&out.records))
}

/// One recursion-trace pass rendered as JSON.
#[pyfunction]
#[pyo3(signature = (a, q, n, gamma, y_rule = 0.5))]
fn trace_json(a: i128, q: u64, n: u64, gamma: f64, y_rule: f64) -> PyResult<String> {
    Ok(harness::trace_recursion(a, q, n, gamma, y_rule)
        .map_err(err)?
        .to_json())
}

/// Completion diagnostic for an explicit sequence F(full_lo..=full_hi).
#[pyfunction]
fn completion_ratio(
    values: Vec<Complex64>,
    full_lo: i64,
    sub_lo: i64,
    sub_hi: i64,
    gamma_grid: u32,
) -> PyResult<f64> {
    let full_hi = full_lo + values.len() as i64 - 1;
    let f = |n: i64| values[(n - full_lo) as usize];
    harness::completion_ratio(&f, (sub_lo, sub_hi), (full_lo, full_hi), gamma_grid).map_err(err)
}

#[pymodule]
fn cubic_weyl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(mod_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_reciprocity, m)?)?;
    m.add_function(wrap_pyfunction!(e_of, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_sum, m)?)?;
    m.add_function(wrap_pyfunction!(smooth_weyl_sum, m)?)?;
    m.add_function(wrap_pyfunction!(partition_weights, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_truncation, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_check, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_closed, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_brute, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_mult_check, m)?)?;
    m.add_function(wrap_pyfunction!(count_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(short_approx, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_difference_identity, m)?)?;
    m.add_function(wrap_pyfunction!(d_partition, m)?)?;
    m.add_function(wrap_pyfunction!(dual_sum, m)?)?;
    m.add_function(wrap_pyfunction!(compute_md, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_bound, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_csv, m)?)?;
    m.add_function(wrap_pyfunction!(trace_json, m)?)?;
    m.add_function(wrap_pyfunction!(completion_ratio, m)?)?;
    m.add_class::<GaussClosed>()?;
    Ok(())
}
