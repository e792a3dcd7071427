//! Incomplete, complete and smooth-weighted exponential sums.
//!
//! Phases split into an exact rational part (handled with [`Mod1Rational`])
//! and a real linear part gamma*n which is reduced mod 1 with an
//! error-compensated product, so sums stay accurate for large n.

use crate::error::{Error, Result};
use crate::modarith::{gcd_i128, mulmod_u64, Mod1Rational};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// e(x) = exp(2*pi*i*x) for a real argument, reduced mod 1.
pub fn e_of(x: f64) -> Complex64 {
    let t = TAU * x.rem_euclid(1.0);
    Complex64::new(t.cos(), t.sin())
}

/// e(x) for an exact rational phase.
pub fn e_of_rational(x: &Mod1Rational) -> Complex64 {
    e_of(x.value())
}

/// Exact product a*b = hi + lo (Dekker via fused multiply-add).
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    (hi, lo)
}

/// gamma*n reduced into [0, 1) without losing the low-order product bits.
pub fn frac_of_product(gamma: f64, n: i64) -> f64 {
    frac_of_product_f(gamma, n as f64)
}

/// a*b reduced into [0, 1), keeping the low half of the exact product.
pub fn frac_of_product_f(a: f64, b: f64) -> f64 {
    let (hi, lo) = two_prod(a, b);
    (hi.fract() + lo).rem_euclid(1.0)
}

/// Neumaier-compensated accumulator for one f64 component.
#[derive(Clone, Copy, Default)]
struct NeumaierSum {
    s: f64,
    c: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Compensated complex accumulator tracking a per-term rounding budget.
#[derive(Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
    terms: u64,
}

// Per-term error allowance: phase reduction (~2.5e-16 in the angle, times
// 2*pi) plus the rounding of cos/sin and of the compensated addition.
const PER_TERM_ERR: f64 = 3.0e-15;

impl ComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.terms += 1;
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn err_bound(&self) -> f64 {
        self.terms as f64 * PER_TERM_ERR
    }

    pub fn into_sum_value(self) -> SumValue {
        SumValue {
            value: self.value(),
            err_bound: self.err_bound(),
        }
    }
}

/// A computed sum together with an accumulated floating-point error estimate.
#[derive(Clone, Copy, Debug)]
pub struct SumValue {
    pub value: Complex64,
    pub err_bound: f64,
}

/// The amplitude g(x) = a*x^3/q + gamma*x with gcd(a, q) = 1.
#[derive(Clone, Copy, Debug)]
pub struct CubicPhase {
    a: i128,
    a_red: u64,
    q: u64,
    gamma: f64,
}

impl CubicPhase {
    pub fn new(a: i128, q: u64, gamma: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DomainError("modulus q must be positive".into()));
        }
        if q > i64::MAX as u64 {
            return Err(Error::Overflow(format!("modulus {q} exceeds 2^63 - 1")));
        }
        if gcd_i128(a, q as i128) != 1 {
            return Err(Error::NotCoprime { a, b: q as i128 });
        }
        let a_red = a.rem_euclid(q as i128) as u64;
        Ok(CubicPhase { a, a_red, q, gamma })
    }

    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// a*n^3 mod q as an exact fraction over q. n^3 is reduced stepwise, so
    /// there is no overflow for any q < 2^63.
    pub fn rational_part(&self, n: i64) -> Mod1Rational {
        let q = self.q;
        let nr = (n as i128).rem_euclid(q as i128) as u64;
        let n2 = mulmod_u64(nr, nr, q);
        let n3 = mulmod_u64(n2, nr, q);
        Mod1Rational::new(mulmod_u64(self.a_red, n3, q) as i128, q as i128)
    }

    /// g(n) mod 1 as a float.
    pub fn phase_at(&self, n: i64) -> f64 {
        let rat = self.rational_part(n).value();
        (rat + frac_of_product(self.gamma, n)).rem_euclid(1.0)
    }

    /// e(g(n)).
    pub fn term(&self, n: i64) -> Complex64 {
        let t = TAU * self.phase_at(n);
        Complex64::new(t.cos(), t.sin())
    }
}

/// S(N) = sum_{n=1..N} e(g(n)) with compensated accumulation.
pub fn weyl_sum(phase: &CubicPhase, n_terms: u64) -> Result<SumValue> {
    if n_terms == 0 {
        return Err(Error::EmptyRange("weyl_sum needs N >= 1".into()));
    }
    if n_terms > i64::MAX as u64 {
        return Err(Error::Overflow("N exceeds 2^63 - 1".into()));
    }
    let mut acc = ComplexSum::default();
    for n in 1..=n_terms as i64 {
        acc.add(phase.term(n));
    }
    Ok(acc.into_sum_value())
}

/// Named bump profiles for the smooth cutoff on [N, 2N].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WindowShape {
    /// C^4 polynomial bump: smootherstep ramps of width `ramp_frac * N` at
    /// both ends of [N, 2N], plateau 1 in between.
    PolyBump { ramp_frac: f64 },
    /// Gaussian centred at 1.5N with sigma = sigma_frac * N, truncated at the
    /// support edges (edge values < 1e-13 for the default fraction).
    Gaussian { sigma_frac: f64 },
}

/// C^4 transition: 0 for u <= 0, 1 for u >= 1, derivative 630 u^4 (1-u)^4.
fn smootherstep(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        u * u * u * u * u * (126.0 + u * (-420.0 + u * (540.0 + u * (-315.0 + u * 70.0))))
    }
}

const MAX_SMOOTHERSTEP_DERIV: f64 = 630.0 / 256.0; // at u = 1/2

/// A smooth weight supported on [N, 2N] with 0 <= f <= 1.
///
/// `deriv_cap` is the constant C with |f'(x)| <= C/x on the support; the
/// higher derivatives satisfy |f^(j)(x)| <= C_j/x^j with C_j growing like
/// (2/ramp_frac)^j * max|s^(j)| for the polynomial bump and like
/// (x_max/sigma)^j for the Gaussian.
#[derive(Clone, Copy, Debug)]
pub struct SmoothWindow {
    n: u64,
    shape: WindowShape,
    deriv_cap: f64,
}

impl SmoothWindow {
    pub fn poly_bump(n: u64) -> Self {
        Self::poly_bump_with_ramp(n, 0.25).unwrap()
    }

    pub fn poly_bump_with_ramp(n: u64, ramp_frac: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError("window scale N must be positive".into()));
        }
        if !(ramp_frac > 0.0 && ramp_frac <= 0.5) {
            return Err(Error::DomainError(format!(
                "ramp fraction {ramp_frac} must lie in (0, 0.5]"
            )));
        }
        Ok(SmoothWindow {
            n,
            shape: WindowShape::PolyBump { ramp_frac },
            deriv_cap: 2.0 * MAX_SMOOTHERSTEP_DERIV / ramp_frac,
        })
    }

    pub fn gaussian(n: u64) -> Self {
        Self::gaussian_with_sigma(n, 1.0 / 16.0).unwrap()
    }

    pub fn gaussian_with_sigma(n: u64, sigma_frac: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError("window scale N must be positive".into()));
        }
        if !(sigma_frac > 0.0 && sigma_frac <= 0.25) {
            return Err(Error::DomainError(format!(
                "sigma fraction {sigma_frac} must lie in (0, 0.25]"
            )));
        }
        // max |f'| = exp(-1/2)/sigma, attained at |x - c| = sigma
        Ok(SmoothWindow {
            n,
            shape: WindowShape::Gaussian { sigma_frac },
            deriv_cap: 2.0 * (-0.5f64).exp() / sigma_frac,
        })
    }

    pub fn scale(&self) -> u64 {
        self.n
    }

    pub fn shape(&self) -> WindowShape {
        self.shape
    }

    pub fn deriv_cap(&self) -> f64 {
        self.deriv_cap
    }

    /// Support as a real interval (N, 2N).
    pub fn support(&self) -> (f64, f64) {
        (self.n as f64, 2.0 * self.n as f64)
    }

    /// Integers n with f(n) possibly nonzero.
    pub fn integer_support(&self) -> std::ops::RangeInclusive<i64> {
        self.n as i64..=(2 * self.n) as i64
    }

    /// Number of integers in the support.
    pub fn support_len(&self) -> u64 {
        self.n + 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        let lo = self.n as f64;
        let hi = 2.0 * lo;
        if x <= lo || x >= hi {
            return 0.0;
        }
        match self.shape {
            WindowShape::PolyBump { ramp_frac } => {
                let w = ramp_frac * lo;
                if x < lo + w {
                    smootherstep((x - lo) / w)
                } else if x > hi - w {
                    smootherstep((hi - x) / w)
                } else {
                    1.0
                }
            }
            WindowShape::Gaussian { sigma_frac } => {
                let c = 1.5 * lo;
                let sigma = sigma_frac * lo;
                let u = (x - c) / sigma;
                (-0.5 * u * u).exp()
            }
        }
    }

    /// Fourier transform f^(eta) = integral of f(x) e(-x eta) dx, computed by
    /// adaptive Simpson quadrature to 1e-10 absolute tolerance.
    pub fn fourier(&self, eta: f64) -> Complex64 {
        let (lo, hi) = self.support();
        let integrand = |x: f64| {
            let w = self.eval(x);
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let t = -TAU * frac_of_product_f(x, eta);
            w * Complex64::new(t.cos(), t.sin())
        };
        integrate_complex(&integrand, lo, hi, eta, 1e-10)
    }

    /// Upper bound on  sum_{|m| > truncation} |f^(m/q)| * g_max  for windows
    /// with a certified rapidly decaying transform. Returns None for shapes
    /// without such a certificate (the polynomial bump decays only
    /// polynomially).
    pub fn transform_tail_bound(&self, truncation: i64, q: u64, g_max: f64) -> Option<f64> {
        let WindowShape::Gaussian { sigma_frac } = self.shape else {
            return None;
        };
        let sigma = sigma_frac * self.n as f64;
        let amp = sigma * TAU.sqrt(); // |f^(0)| = sigma * sqrt(2 pi)
        let rate = 2.0 * std::f64::consts::PI.powi(2) * sigma * sigma / (q as f64 * q as f64);
        let mut tail = 0.0f64;
        let mut m = truncation.max(0) + 1;
        loop {
            let term = 2.0 * amp * (-rate * (m as f64) * (m as f64)).exp();
            tail += term;
            if term < 1e-30 || m > truncation + 4_000_000 {
                break;
            }
            m += 1;
        }
        // truncation of the Gaussian at the support edges contributes below
        // 1e-13 of the mass for sigma_frac <= 1/16
        Some(g_max * (tail + 1e-12 * amp))
    }

    /// Smallest truncation whose certified tail bound is below 1e-9.
    pub fn suggest_truncation(&self, q: u64, g_max: f64) -> Result<i64> {
        for t in 0..200_000i64 {
            match self.transform_tail_bound(t, q, g_max) {
                None => {
                    return Err(Error::SlowDecay {
                        bound: f64::INFINITY,
                        limit: 1e-9,
                        truncation: t,
                    })
                }
                Some(b) if b < 1e-9 => return Ok(t),
                Some(_) => {}
            }
        }
        Err(Error::SlowDecay {
            bound: f64::NAN,
            limit: 1e-9,
            truncation: 200_000,
        })
    }
}

/// Adaptive Simpson on a complex integrand. The interval is pre-split so each
/// panel covers at most a quarter oscillation of e(-x eta) before the
/// adaptive recursion starts.
fn integrate_complex(
    f: &dyn Fn(f64) -> Complex64,
    lo: f64,
    hi: f64,
    eta: f64,
    tol: f64,
) -> Complex64 {
    let oscillations = (eta.abs() * (hi - lo)).ceil() as usize;
    let panels = (4 * oscillations).clamp(16, 1 << 14);
    let step = (hi - lo) / panels as f64;
    let panel_tol = tol / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        let a = lo + k as f64 * step;
        let b = a + step;
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (f(a), f(m), f(b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_rec(f, a, b, fa, fm, fb, whole, panel_tol, 24);
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Sum over all integers of f(n) e(g(n)); only n in [N, 2N] contribute.
pub fn smooth_weyl_sum(phase: &CubicPhase, window: &SmoothWindow) -> SumValue {
    let mut acc = ComplexSum::default();
    for n in window.integer_support() {
        let w = window.eval(n as f64);
        if w != 0.0 {
            acc.add(w * phase.term(n));
        }
    }
    acc.into_sum_value()
}

/// Dyadic partition-of-unity weights at x: V_l rises across (2^(l-1), 2^l]
/// and falls back across (2^l, 2^(l+1)], so the nonzero weights at any x >= 1
/// are at most two consecutive levels and sum to 1 exactly (telescoping).
pub fn partition_weights(x: f64, max_level: u32) -> Result<Vec<(u32, f64)>> {
    if x.is_nan() || x < 1.0 {
        return Err(Error::DomainError(format!(
            "partition_weights needs x >= 1, got {x}"
        )));
    }
    let lg = x.log2();
    if (max_level as f64) < lg {
        return Err(Error::DomainError(format!(
            "max_level {max_level} too small for x = {x}"
        )));
    }
    let base = lg.floor() as i64;
    let mut out = Vec::with_capacity(2);
    for level in (base - 1).max(0)..=(base + 2).min(max_level as i64) {
        let w = smootherstep(lg - level as f64 + 1.0) - smootherstep(lg - level as f64);
        if w > 0.0 {
            out.push((level as u32, w));
        }
    }
    Ok(out)
}

/// Two-sided Poisson summation check for a smooth window against a q-periodic
/// table g: compares sum_n f(n) g(n) with
/// sum_{|m| <= truncation} f^(m/q) g^(-m), where
/// g^(eta) = (1/q) sum_{x=1..q} g(x) e_q(-x eta).
pub fn poisson_check(
    window: &SmoothWindow,
    g_table: &[Complex64],
    truncation: i64,
) -> Result<(Complex64, Complex64, f64)> {
    if g_table.is_empty() {
        return Err(Error::EmptyRange("g table must have q >= 1 entries".into()));
    }
    let q = g_table.len() as u64;
    let g_max = g_table.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    match window.transform_tail_bound(truncation, q, g_max) {
        None => {
            return Err(Error::SlowDecay {
                bound: f64::INFINITY,
                limit: 1e-6,
                truncation,
            })
        }
        Some(bound) if bound > 1e-6 => {
            return Err(Error::SlowDecay {
                bound,
                limit: 1e-6,
                truncation,
            })
        }
        Some(_) => {}
    }

    let mut lhs = ComplexSum::default();
    for n in window.integer_support() {
        let w = window.eval(n as f64);
        if w != 0.0 {
            lhs.add(w * g_table[(n as u64 % q) as usize]);
        }
    }
    let lhs = lhs.value();

    // g^(-m) = (1/q) sum_{x=1..q} g(x) e_q(x m), periodic in m with period q
    let mut ghat = vec![Complex64::new(0.0, 0.0); q as usize];
    for (r, slot) in ghat.iter_mut().enumerate() {
        let mut acc = ComplexSum::default();
        for x in 1..=q {
            let phase = Mod1Rational::new((x as i128) * (r as i128), q as i128);
            acc.add(g_table[(x % q) as usize] * e_of_rational(&phase));
        }
        *slot = acc.value() / q as f64;
    }

    let mut rhs = Complex64::new(0.0, 0.0);
    for m in -truncation..=truncation {
        let idx = (m as i128).rem_euclid(q as i128) as usize;
        rhs += window.fourier(m as f64 / q as f64) * ghat[idx];
    }
    let discrepancy = (lhs - rhs).norm();
    Ok((lhs, rhs, discrepancy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::gcd_u64;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn e_of_examples() {
        assert!(close(e_of(0.0), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(e_of(0.5), Complex64::new(-1.0, 0.0), 1e-15));
        let s = std::f64::consts::SQRT_2 / 2.0;
        assert!(close(e_of(0.125), Complex64::new(s, s), 1e-15));
        assert!(close(
            e_of_rational(&Mod1Rational::new(1, 8)),
            Complex64::new(s, s),
            1e-15
        ));
        assert!((e_of(123456.789).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn weyl_sum_examples() {
        let s = weyl_sum(&CubicPhase::new(1, 1, 0.0).unwrap(), 7).unwrap();
        assert!(close(s.value, Complex64::new(7.0, 0.0), 1e-12));

        let s = weyl_sum(&CubicPhase::new(1, 5, 0.0).unwrap(), 5).unwrap();
        assert!(s.value.norm() < 1e-12, "complete cubic sum mod 5 vanishes");

        let s = weyl_sum(&CubicPhase::new(1, 9, 0.0).unwrap(), 9).unwrap();
        let expected = 3.0 * (1.0 + 2.0 * (TAU / 9.0).cos());
        assert!((s.value.re - expected).abs() < 1e-12);
        assert!(s.value.im.abs() < 1e-12);
    }

    #[test]
    fn weyl_sum_not_coprime_rejected() {
        assert!(matches!(
            CubicPhase::new(3, 9, 0.0),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn oversized_modulus_rejected() {
        assert!(matches!(
            CubicPhase::new(1, u64::MAX, 0.0),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn weyl_sum_reversal_within_budget() {
        let phase = CubicPhase::new(7, 1009, 0.371).unwrap();
        let n = 5000u64;
        let fwd = weyl_sum(&phase, n).unwrap();
        let mut acc = ComplexSum::default();
        for k in (1..=n as i64).rev() {
            acc.add(phase.term(k));
        }
        let rev = acc.into_sum_value();
        assert!((fwd.value - rev.value).norm() <= 2.0 * fwd.err_bound);
    }

    #[test]
    fn complete_sum_vanishes_when_cubing_permutes() {
        // squarefree q with gcd(3, phi(q)) = 1: cubing permutes residues
        for q in [2u64, 5, 10, 11, 55] {
            let phi: u64 = (1..=q).filter(|&x| gcd_u64(x, q) == 1).count() as u64;
            assert_eq!(gcd_u64(3, phi), 1, "test fixture q={q}");
            let s = weyl_sum(&CubicPhase::new(1, q, 0.0).unwrap(), q).unwrap();
            assert!(s.value.norm() < 1e-10, "q={q} |S|={}", s.value.norm());
        }
    }

    #[test]
    fn smooth_sum_constant_phase_is_window_mass() {
        let phase = CubicPhase::new(1, 1, 0.0).unwrap();
        let w = SmoothWindow::poly_bump(40);
        let s = smooth_weyl_sum(&phase, &w);
        let direct: f64 = w.integer_support().map(|n| w.eval(n as f64)).sum();
        assert!((s.value.re - direct).abs() < 1e-12);
        assert!(s.value.im.abs() < 1e-12);
        assert!(direct > 0.0 && direct <= 41.0);
    }

    #[test]
    fn smooth_sum_tiny_support() {
        // N = 1: the support [1, 2] touches integers {1, 2}, both at the
        // boundary where f vanishes; the two-term identity holds trivially.
        let phase = CubicPhase::new(1, 7, 0.0).unwrap();
        let w = SmoothWindow::poly_bump(1);
        let s = smooth_weyl_sum(&phase, &w);
        let direct = w.eval(1.0) * phase.term(1) + w.eval(2.0) * phase.term(2);
        assert!(close(s.value, direct, 1e-15));
    }

    #[test]
    fn smooth_sum_plateau_matches_sharp_difference() {
        // ramp width 1 on [9, 18]: f = 1 exactly on the integers 10..=17
        let phase = CubicPhase::new(1, 9, 0.0).unwrap();
        let w = SmoothWindow::poly_bump_with_ramp(9, 1.0 / 9.0).unwrap();
        let s = smooth_weyl_sum(&phase, &w);
        let full = weyl_sum(&phase, 17).unwrap().value;
        let head = weyl_sum(&phase, 9).unwrap().value;
        assert!(close(s.value, full - head, 1e-12));
    }

    #[test]
    fn partition_weight_examples() {
        // exact power of two away from overlap: a single weight 1
        let w = partition_weights(8.0, 32).unwrap();
        assert_eq!(w, vec![(3, 1.0)]);

        let w = partition_weights(1.0, 32).unwrap();
        let total: f64 = w.iter().map(|&(_, v)| v).sum();
        assert!((total - 1.0).abs() < 1e-15);

        let w = partition_weights(3.0, 32).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[0].0, 1);
        assert_eq!(w[1].0, 2);
        let total: f64 = w.iter().map(|&(_, v)| v).sum();
        assert!((total - 1.0).abs() < 1e-12);

        assert!(matches!(
            partition_weights(0.5, 32),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn partition_sums_to_one_on_log_grid() {
        let mut x = 1.0f64;
        let step = (1e6f64).powf(1.0 / 9999.0);
        for _ in 0..10_000 {
            let total: f64 = partition_weights(x, 64)
                .unwrap()
                .iter()
                .map(|&(_, v)| v)
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "x={x} total={total}");
            x *= step;
        }
    }

    #[test]
    fn gaussian_fourier_matches_closed_form() {
        let w = SmoothWindow::gaussian(120);
        let sigma = 120.0 / 16.0;
        let c = 180.0;
        for &eta in &[0.0, 0.004, 0.013, -0.02] {
            let got = w.fourier(eta);
            let amp = sigma * (TAU).sqrt() * (-2.0 * std::f64::consts::PI.powi(2) * sigma * sigma * eta * eta).exp();
            let want = amp * e_of((-c * eta).rem_euclid(1.0));
            assert!(close(got, want, 1e-8), "eta={eta} got={got} want={want}");
        }
    }

    #[test]
    fn poisson_classical_case() {
        // g identically 1 with q = 1: both sides equal sum f(n)
        let w = SmoothWindow::gaussian(100);
        let table = vec![Complex64::new(1.0, 0.0)];
        let t = w.suggest_truncation(1, 1.0).unwrap();
        let (lhs, rhs, disc) = poisson_check(&w, &table, t).unwrap();
        let direct: f64 = w.integer_support().map(|n| w.eval(n as f64)).sum();
        assert!((lhs.re - direct).abs() < 1e-12);
        assert!(disc < 1e-9, "disc={disc} lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn poisson_character_case() {
        // g(x) = e_5(x), Gaussian window on [100, 200]
        let w = SmoothWindow::gaussian(100);
        let table: Vec<Complex64> = (0..5)
            .map(|x| e_of_rational(&Mod1Rational::new(x, 5)))
            .collect();
        let t = w.suggest_truncation(5, 1.0).unwrap();
        let (_, _, disc) = poisson_check(&w, &table, t).unwrap();
        assert!(disc < 1e-6, "disc={disc}");
    }

    #[test]
    fn poisson_rejects_uncontrolled_tail() {
        let w = SmoothWindow::gaussian(100);
        let table: Vec<Complex64> = (0..40)
            .map(|x| e_of_rational(&Mod1Rational::new(x, 40)))
            .collect();
        assert!(matches!(
            poisson_check(&w, &table, 0),
            Err(Error::SlowDecay { .. })
        ));
        let bump = SmoothWindow::poly_bump(100);
        assert!(matches!(
            poisson_check(&bump, &table, 50),
            Err(Error::SlowDecay { .. })
        ));
    }

    proptest! {
        #[test]
        fn weyl_sum_triangle_inequality(a in 1i128..50, q in 1u64..200, n in 1u64..300, gamma in -1.0f64..1.0) {
            prop_assume!(gcd_i128(a, q as i128) == 1);
            let s = weyl_sum(&CubicPhase::new(a, q, gamma).unwrap(), n).unwrap();
            prop_assert!(s.value.norm() <= n as f64 + 1e-9);
        }

        #[test]
        fn window_bounded_and_supported(n in 1u64..500, x in 0.0f64..2000.0) {
            for w in [SmoothWindow::poly_bump(n), SmoothWindow::gaussian(n)] {
                let v = w.eval(x);
                prop_assert!((0.0..=1.0).contains(&v));
                if x <= n as f64 || x >= 2.0 * n as f64 {
                    prop_assert_eq!(v, 0.0);
                }
            }
        }
    }
}
