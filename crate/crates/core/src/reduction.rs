//! Weyl differencing, congruence-box counting and the lattice-reduction
//! construction of short rational approximations.

use crate::error::{Error, Result};
use crate::expsum::{frac_of_product, smooth_weyl_sum, ComplexSum, CubicPhase, SmoothWindow};
use crate::gauss::{gauss_brute, gauss_closed, GaussParams};
use crate::modarith::{factorize, gcd_i128, gcd_u64, mod_inverse, mulmod_i128, Mod1Rational};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// Solution-counting box for the congruence y*b = x mod q.
#[derive(Clone, Copy, Debug)]
pub struct CongruenceBox {
    pub b: i128,
    pub q: u64,
    /// inclusive integer interval for x
    pub x_interval: (i64, i64),
    /// inclusive integer interval for y
    pub y_interval: (i64, i64),
}

/// Exact count of (x, y) in the box with y*b = x mod q, brute force over y.
pub fn count_solutions(bx: &CongruenceBox) -> Result<u64> {
    if bx.q == 0 {
        return Err(Error::DomainError("modulus must be positive".into()));
    }
    let (xl, xh) = bx.x_interval;
    let (yl, yh) = bx.y_interval;
    if xl > xh || yl > yh {
        return Err(Error::EmptyRange("congruence box interval is empty".into()));
    }
    let height = (yh - yl + 1) as u128;
    if height > 10_000_000 {
        return Err(Error::TooLarge {
            what: "congruence box y-interval",
            size: height,
            cap: 10_000_000,
        });
    }
    let q = bx.q as i128;
    let mut count = 0u64;
    for y in yl..=yh {
        let r = mulmod_i128(y as i128, bx.b, q) as i64;
        // number of x in [xl, xh] with x = r mod q
        let hi = (xh - r).div_euclid(bx.q as i64);
        let lo = (xl - r - 1).div_euclid(bx.q as i64);
        count += (hi - lo) as u64;
    }
    Ok(count)
}

/// A short pair (l, s) with b = l * s^{-1} mod d, plus the integer t defined
/// by s*b = l + t*d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproxPair {
    pub ell: i128,
    pub s: i128,
    pub d: u64,
    pub t: i128,
}

impl ApproxPair {
    /// Re-verify the exact congruence and the integer identity.
    pub fn verify(&self, b: i128) -> bool {
        let d = self.d as i128;
        self.ell >= 1
            && self.s != 0
            && gcd_i128(self.s, d) == 1
            && (self.s * b - self.ell) == self.t * d
            && (self.s * b - self.ell).rem_euclid(d) == 0
    }

    pub fn weighted_norm(&self, weight_l: f64, weight_s: f64) -> f64 {
        (self.ell as f64 / weight_l).max(self.s.unsigned_abs() as f64 / weight_s)
    }
}

type Vec2 = (i128, i128);

fn wdot(u: Vec2, v: Vec2, w1: i128, w2: i128) -> i128 {
    (u.0 * w1) * (v.0 * w1) + (u.1 * w2) * (v.1 * w2)
}

fn round_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    (2 * a + b).div_euclid(2 * b)
}

/// Shortest-pair construction by Gauss-Lagrange reduction of the lattice
/// {(l, s) : l = s*b mod d} under the weighted norm
/// max(l / weight_l, |s| / weight_s).
///
/// The reduction runs on exact integer Gram values with the weights quantized
/// to 32 bits; the short candidate combinations are scanned for one with
/// l >= 1, gcd(s, d) = 1 and l*|s| <= 4d, and an exhaustive scan over
/// |s| <= d/2 takes over whenever the candidates cannot be certified within
/// factor 2 of the optimum. The product cap keeps the output Minkowski-sized
/// even when the true shortest vector has gcd(s, d) > 1; (b mod d, 1) always
/// qualifies, so a pair always exists.
pub fn short_approx(b: i128, d: u64, weight_l: f64, weight_s: f64) -> Result<ApproxPair> {
    if d < 2 {
        return Err(Error::DomainError(format!(
            "short_approx needs d >= 2, got {d}"
        )));
    }
    if !(weight_l > 0.0 && weight_l.is_finite() && weight_s > 0.0 && weight_s.is_finite()) {
        return Err(Error::DomainError("weights must be positive and finite".into()));
    }
    let di = d as i128;
    let b_red = b.rem_euclid(di);
    if gcd_i128(b_red, di) != 1 {
        return Err(Error::NotCoprime { a: b, b: di });
    }

    // quantized integer weights; only the ratio matters for the metric
    let wmin = weight_l.min(weight_s);
    let scale = (1u64 << 32) as f64;
    let w1 = ((scale * wmin / weight_l).round() as i128).clamp(1, 1 << 32);
    let w2 = ((scale * wmin / weight_s).round() as i128).clamp(1, 1 << 32);

    let mut v1: Vec2 = (b_red, 1);
    let mut v2: Vec2 = (di, 0);
    if wdot(v1, v1, w1, w2) > wdot(v2, v2, w1, w2) {
        std::mem::swap(&mut v1, &mut v2);
    }
    loop {
        let mu = round_div(wdot(v1, v2, w1, w2), wdot(v1, v1, w1, w2));
        v2 = (v2.0 - mu * v1.0, v2.1 - mu * v1.1);
        if wdot(v2, v2, w1, w2) >= wdot(v1, v1, w1, w2) {
            break;
        }
        std::mem::swap(&mut v1, &mut v2);
    }

    fn consider(
        best: &mut Option<(f64, i128, i128)>,
        weight_l: f64,
        weight_s: f64,
        di: i128,
        mut l: i128,
        mut s: i128,
    ) {
        if l == 0 {
            return;
        }
        if l < 0 {
            l = -l;
            s = -s;
        }
        if s == 0 || gcd_i128(s, di) != 1 {
            return;
        }
        if l.checked_mul(s.abs()).is_none_or(|p| p > 4 * di) {
            return;
        }
        let m = (l as f64 / weight_l).max(s.unsigned_abs() as f64 / weight_s);
        if best.is_none_or(|(bm, _, _)| m < bm) {
            *best = Some((m, l, s));
        }
    }
    let mut best: Option<(f64, i128, i128)> = None;
    for (l, s) in [
        v1,
        v2,
        (v1.0 + v2.0, v1.1 + v2.1),
        (v1.0 - v2.0, v1.1 - v2.1),
    ] {
        consider(&mut best, weight_l, weight_s, di, l, s);
        consider(&mut best, weight_l, weight_s, di, -l, -s);
    }
    // s = 1 always yields a valid pair
    consider(&mut best, weight_l, weight_s, di, b_red, 1);

    // certificate: the true weighted L2 norm of the reduced shortest vector
    // lower-bounds every nonzero lattice vector, so the optimum of the max
    // metric is at least |v1|_2 / sqrt(2) up to weight quantization
    let true_norm = |v: Vec2| {
        let x = v.0 as f64 / weight_l;
        let y = v.1 as f64 / weight_s;
        (x * x + y * y).sqrt()
    };
    let shortest = true_norm(v1).min(true_norm(v2));
    let certified = best.is_some_and(|(m, _, _)| m <= 1.35 * shortest);

    if !certified && d <= 1 << 24 {
        for s in 1..=(d / 2).max(1) as i128 {
            if gcd_i128(s, di) != 1 {
                continue;
            }
            let l_pos = mulmod_i128(s, b_red, di);
            consider(&mut best, weight_l, weight_s, di, l_pos, s);
            let l_neg = (di - l_pos) % di;
            consider(&mut best, weight_l, weight_s, di, l_neg, -s);
        }
    }

    let (_, ell, s) = best.ok_or(Error::NoPair)?;
    let t_num = s
        .checked_mul(b)
        .and_then(|sb| sb.checked_sub(ell))
        .ok_or_else(|| Error::Overflow("s*b overflows 128 bits".into()))?;
    debug_assert_eq!(t_num.rem_euclid(di), 0);
    Ok(ApproxPair {
        ell,
        s,
        d,
        t: t_num / d as i128,
    })
}

/// q0 = q / (q, 3) and b = 3a or a, the bookkeeping constants of the
/// differenced sum.
pub fn differencing_constants(phase: &CubicPhase) -> (u64, i128) {
    let q = phase.q();
    let g3 = gcd_u64(q, 3);
    let q0 = q / g3;
    let b = if g3 == 1 { 3 * phase.a() } else { phase.a() };
    (q0, b)
}

fn differenced_inner(
    window: &SmoothWindow,
    q0: u64,
    b: i128,
    m: i64,
) -> Complex64 {
    let q0i = q0 as i128;
    let b_red = b.rem_euclid(q0i);
    let m_red = (m as i128).rem_euclid(q0i);
    let bm = mulmod_i128(b_red, m_red, q0i);
    let bm2 = mulmod_i128(bm, m_red, q0i);
    let mut acc = ComplexSum::default();
    for n in window.integer_support() {
        let w = window.eval(n as f64) * window.eval((n + m) as f64);
        if w == 0.0 {
            continue;
        }
        let ni = (n as i128).rem_euclid(q0i);
        let n2 = mulmod_i128(ni, ni, q0i);
        // (b m n^2 + b m^2 n) / q0 mod 1
        let num = (mulmod_i128(bm, n2, q0i) + mulmod_i128(bm2, ni, q0i)) % q0i;
        let t = TAU * (num as f64 / q0 as f64);
        acc.add(w * Complex64::new(t.cos(), t.sin()));
    }
    acc.value()
}

fn outer_term(phase: &CubicPhase, m: i64) -> Complex64 {
    let t = TAU
        * (phase.rational_part(m).value() + frac_of_product(phase.gamma(), m)).rem_euclid(1.0);
    Complex64::new(t.cos(), t.sin())
}

fn check_support(window: &SmoothWindow) -> Result<()> {
    if window.support_len() > 10_000 {
        return Err(Error::TooLarge {
            what: "window support",
            size: window.support_len() as u128,
            cap: 10_000,
        });
    }
    Ok(())
}

/// Two-sided check of the differencing expansion
/// |S|^2 = sum_{m,n} f(m+n) f(n) e(g(m+n) - g(n)).
/// Returns (|S|^2, expanded double sum, discrepancy).
pub fn weyl_difference_identity(
    phase: &CubicPhase,
    window: &SmoothWindow,
) -> Result<(f64, Complex64, f64)> {
    check_support(window)?;
    let lhs = smooth_weyl_sum(phase, window).value.norm_sqr();
    let (q0, b) = differencing_constants(phase);
    let n_cap = window.scale() as i64;
    let mut rhs = ComplexSum::default();
    for m in -n_cap..=n_cap {
        let inner = differenced_inner(window, q0, b, m);
        if inner != Complex64::new(0.0, 0.0) {
            rhs.add(outer_term(phase, m) * inner);
        }
    }
    let rhs = rhs.value();
    Ok((lhs, rhs, (lhs - rhs).norm()))
}

/// The differenced sum split by d | q0 according to (m, q0) = q0/d.
#[derive(Clone, Debug)]
pub struct DPartition {
    pub q0: u64,
    pub b: i128,
    /// S'_d for every divisor d of q0 (zero when no m falls in the class)
    pub parts: BTreeMap<u64, Complex64>,
    /// the undissected total over 1 <= |m| <= N
    pub total: Complex64,
}

/// Partition the differenced sum by the value of (m, q0).
pub fn d_partition(phase: &CubicPhase, window: &SmoothWindow) -> Result<DPartition> {
    check_support(window)?;
    let (q0, b) = differencing_constants(phase);
    let divisors = factorize(q0).divisors();
    if divisors.len() > 100 {
        return Err(Error::TooLarge {
            what: "divisor count of q0",
            size: divisors.len() as u128,
            cap: 100,
        });
    }
    let mut parts: BTreeMap<u64, Complex64> =
        divisors.iter().map(|&d| (d, Complex64::new(0.0, 0.0))).collect();
    let mut total = ComplexSum::default();
    let n_cap = window.scale() as i64;
    for m in -n_cap..=n_cap {
        if m == 0 {
            continue;
        }
        let inner = differenced_inner(window, q0, b, m);
        let term = outer_term(phase, m) * inner;
        let d = q0 / gcd_u64(m.unsigned_abs(), q0);
        *parts.get_mut(&d).expect("divisor table covers q0") += term;
        total.add(term);
    }
    Ok(DPartition {
        q0,
        b,
        parts,
        total: total.value(),
    })
}

/// Gauss factor with the closed form when gcd(a, q) = 1, brute force
/// otherwise; negative moduli follow G(a, b; -q) = G(-a, -b; q).
fn gauss_factor(a: i128, ell: i128, q_signed: i128) -> Result<Complex64> {
    let (a, ell, q) = if q_signed < 0 {
        (-a, -ell, (-q_signed) as u64)
    } else {
        (a, ell, q_signed as u64)
    };
    let params = GaussParams::new(a, ell, q)?;
    match gauss_closed(&params) {
        Ok(v) => Ok(v.to_complex()),
        Err(Error::NotCoprime { .. }) => gauss_brute(&params),
        Err(e) => Err(e),
    }
}

/// The two dual sums of the transformed range, using only the explicitly
/// known leading part a x^3 / (4q) of the transformed amplitudes (the
/// existential integer shifts and linear phases are unknown and set to zero,
/// so these values are diagnostic, never asserted against bounds).
pub fn dual_sum(
    phase: &CubicPhase,
    d: u64,
    pair: &ApproxPair,
    s1: i128,
    range: (u64, u64),
) -> Result<(Complex64, Complex64)> {
    let (q0, b) = differencing_constants(phase);
    if d == 0 || q0 % d != 0 {
        return Err(Error::ConditionViolated(format!("d = {d} must divide q0 = {q0}")));
    }
    if pair.d != d {
        return Err(Error::ConditionViolated(format!(
            "approximation pair was built mod {}, not mod {d}",
            pair.d
        )));
    }
    if s1 <= 0 || pair.s % s1 != 0 {
        return Err(Error::ConditionViolated(format!(
            "s1 = {s1} must be a positive divisor of s = {}",
            pair.s
        )));
    }
    let di = d as i128;
    let b_red = b.rem_euclid(di);
    if d > 1 && gcd_i128(b_red, di) != 1 {
        return Err(Error::ConditionViolated(format!(
            "gcd(b, d) > 1 for b = {b}, d = {d}"
        )));
    }
    let (y_lo, n_hi) = range;
    let s2 = pair.s / s1;
    let ell = pair.ell;
    let g3 = gcd_u64(phase.q(), 3) as i128;
    let cofactor = (q0 / d) as i128; // q0/d, so s1*t*q0*m^2/d is always integral

    // phase denominator 4*(q,3)*d^3 must stay below 2^63 for exact reduction
    let den = 4i128
        .checked_mul(g3)
        .and_then(|x| x.checked_mul(di))
        .and_then(|x| x.checked_mul(di))
        .and_then(|x| x.checked_mul(di))
        .filter(|&x| x < (1i128 << 62))
        .ok_or_else(|| Error::Overflow(format!("phase denominator 4*(q,3)*d^3 with d = {d}")))?;

    let lo = ((di * y_lo as i128) as f64 / (q0 as f64 * s1 as f64)).ceil() as i128;
    let hi = ((di * n_hi as i128) as f64 / (q0 as f64 * s1 as f64)).floor() as i128;

    let mut sum1 = ComplexSum::default();
    let mut sum2 = ComplexSum::default();
    for m_abs in lo.max(1)..=hi {
        for m in [m_abs, -m_abs] {
            if gcd_i128(m, q0 as i128) != 1 || gcd_i128(m, pair.s) != 1 {
                continue;
            }
            // leading part of g* and g** at x = q0 s1 m / d:
            // a x^3 / (4q) = a q0^2 s1^3 m^3 / (4 (q,3) d^3)
            let mut num = phase.a().rem_euclid(den);
            for f in [q0 as i128, q0 as i128, s1, s1, s1, m, m, m] {
                num = mulmod_i128(num, f, den);
            }
            let lead = crate::expsum::e_of_rational(&Mod1Rational::new(num, den));

            let weight = 1.0 / (m as f64 * ell as f64);
            let big_l = ell
                .checked_mul(m)
                .ok_or_else(|| Error::Overflow("l*m overflows".into()))?;
            let q_inner = big_l.unsigned_abs();
            if q_inner > u64::MAX as u128 {
                return Err(Error::Overflow("l*m exceeds u64".into()));
            }
            let q_inner = q_inner as i128;
            let dbar = mod_inverse(di, q_inner)?;
            let alpha = mulmod_i128(s2, dbar, q_inner);
            // -s1 * t * (q0/d) * m^2 mod |l m|
            let m2 = mulmod_i128(m, m, q_inner);
            let beta = -mulmod_i128(
                mulmod_i128(s1, pair.t, q_inner),
                mulmod_i128(cofactor, m2, q_inner),
                q_inner,
            );

            let g1 = gauss_factor(mulmod_i128(b_red, mulmod_i128(s1, m, di), di), 0, di)?;
            let g2 = gauss_factor(alpha, beta, big_l)?;
            sum1.add(weight * lead * g1 * g2);

            let bs1m_inv = mod_inverse(mulmod_i128(b_red, mulmod_i128(s1, m, di), di), di)?;
            let g1b = gauss_factor(bs1m_inv, bs1m_inv, di)?;
            let g2b = gauss_factor(alpha, alpha + beta, big_l)?;
            sum2.add(weight * lead * g1b * g2b);
        }
    }
    Ok((sum1.value(), sum2.value()))
}

/// M_d and the smallness condition l*d*M_d^2*N^(11 eps) <= 1.
#[derive(Clone, Copy, Debug)]
pub struct MdReport {
    pub m_d: f64,
    pub cond_value: f64,
    pub cond_holds: bool,
}

pub fn compute_md(pair: &ApproxPair, d: u64, q0: u64, y: u64, n: u64, epsilon: f64) -> MdReport {
    let first = (pair.s.unsigned_abs() as f64 * q0 as f64
        / (pair.ell as f64 * (d as f64) * (d as f64) * y as f64))
        .sqrt();
    let second = n as f64 / d as f64;
    let m_d = first.max(second);
    let cond_value = pair.ell as f64 * d as f64 * m_d * m_d * (n as f64).powf(11.0 * epsilon);
    MdReport {
        m_d,
        cond_value,
        cond_holds: cond_value <= 1.0,
    }
}
