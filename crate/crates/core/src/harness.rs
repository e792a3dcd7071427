//! Empirical sweeps over (q, N, a, gamma) grids, one-pass recursion traces
//! and completion diagnostics.
//!
//! Sweeps are deterministic: the per-q sampling RNG is derived from the
//! global seed and q alone, records are merged in sorted order, and floats
//! are printed with a fixed 12-significant-digit format, so identical
//! configurations produce byte-identical CSV.

use crate::error::{Error, Result};
use crate::expsum::{smooth_weyl_sum, weyl_sum, CubicPhase, SmoothWindow};
use crate::modarith::{gcd_u64, is_prime, mod_inverse, mulmod_i128};
use crate::reduction::{
    compute_md, d_partition, differencing_constants, dual_sum, short_approx, ApproxPair,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::TAU;
use std::fmt::Write as _;

/// Classical differencing bound for the cubic case:
/// N^(1+eps) * (1/q + 1/N + q/N^3)^(1/4), implied constant 1.
pub fn weyl_bound(n: u64, q: u64, epsilon: f64) -> f64 {
    let nf = n as f64;
    let qf = q as f64;
    nf.powf(1.0 + epsilon) * (1.0 / qf + 1.0 / nf + qf / (nf * nf * nf)).powf(0.25)
}

/// One grid point of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub q: u64,
    pub n: u64,
    pub a: u64,
    pub gamma: f64,
    pub abs_sum: f64,
    pub ratio: f64,
    pub weyl_bound: f64,
    pub exponent: f64,
}

/// Which moduli a sweep visits.
#[derive(Clone, Debug, PartialEq)]
pub enum QSpec {
    List(Vec<u64>),
    /// inclusive range scanned for primes
    PrimesRange(u64, u64),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub qs: QSpec,
    /// N = floor(q^theta)
    pub theta: f64,
    /// number of random coprime a per q, on top of {1, q-1}
    pub a_samples: u32,
    pub gamma_list: Vec<f64>,
    pub seed: u64,
    /// sample size when drawing from a primes range (all primes if None)
    pub q_count: Option<u32>,
}

impl SweepConfig {
    /// Parse the flat `key = value` sweep configuration format.
    ///
    /// Keys: `q_list` (comma-separated), `q_primes_range` (lo,hi), `q_count`,
    /// `theta`, `a_samples`, `gamma_list`, `seed`. Lines starting with `#`
    /// are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut qs = None;
        let mut theta = None;
        let mut a_samples = 0u32;
        let mut gamma_list = vec![0.0];
        let mut seed = 0u64;
        let mut q_count = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::ConfigError(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::ConfigError(format!("line {}: bad {what}", lineno + 1));
            match key {
                "q_list" => {
                    let list = value
                        .split(',')
                        .map(|t| t.trim().parse::<u64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("q_list"))?;
                    qs = Some(QSpec::List(list));
                }
                "q_primes_range" => {
                    let (lo, hi) = value.split_once(',').ok_or_else(|| bad("q_primes_range"))?;
                    qs = Some(QSpec::PrimesRange(
                        lo.trim().parse().map_err(|_| bad("q_primes_range"))?,
                        hi.trim().parse().map_err(|_| bad("q_primes_range"))?,
                    ));
                }
                "q_count" => q_count = Some(value.parse().map_err(|_| bad("q_count"))?),
                "theta" => theta = Some(value.parse().map_err(|_| bad("theta"))?),
                "a_samples" => a_samples = value.parse().map_err(|_| bad("a_samples"))?,
                "gamma_list" => {
                    gamma_list = value
                        .split(',')
                        .map(|t| t.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad("gamma_list"))?;
                }
                "seed" => seed = value.parse().map_err(|_| bad("seed"))?,
                other => {
                    return Err(Error::ConfigError(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        let qs = qs.ok_or_else(|| {
            Error::ConfigError("config needs q_list or q_primes_range".into())
        })?;
        let theta =
            theta.ok_or_else(|| Error::ConfigError("config needs theta".into()))?;
        if gamma_list.is_empty() {
            return Err(Error::ConfigError("gamma_list is empty".into()));
        }
        Ok(SweepConfig {
            qs,
            theta,
            a_samples,
            gamma_list,
            seed,
            q_count,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    pub records: Vec<SweepRecord>,
    /// human-readable flags (bound violations); never fails the run
    pub diagnostics: Vec<String>,
    /// running max ratio per (q, N), sorted by q
    pub max_ratios: Vec<(u64, u64, f64)>,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Deterministic a-sampling for one q: always 1 and q-1, plus seeded uniform
/// coprime draws.
fn sample_a(q: u64, count: u32, seed: u64) -> Vec<u64> {
    let mut set = std::collections::BTreeSet::new();
    set.insert(1u64);
    if q > 2 {
        set.insert(q - 1);
    }
    if q > 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ q));
        let mut drawn = 0;
        let mut guard = 0u64;
        while drawn < count && guard < 10_000 * count as u64 + 100 {
            guard += 1;
            let a = rng.random_range(2..q - 1);
            if gcd_u64(a, q) == 1 && set.insert(a) {
                drawn += 1;
            }
        }
    }
    set.into_iter().collect()
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&x| is_prime(x)).collect()
}

/// Expand the q set of a config (seeded subsampling for prime ranges).
pub fn resolve_q_set(cfg: &SweepConfig) -> Result<Vec<u64>> {
    let mut qs = match &cfg.qs {
        QSpec::List(list) => list.clone(),
        QSpec::PrimesRange(lo, hi) => {
            let all = primes_in(*lo, *hi);
            match cfg.q_count {
                None => all,
                Some(k) => {
                    if all.is_empty() {
                        Vec::new()
                    } else {
                        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(cfg.seed ^ 0x71ab));
                        let mut chosen = std::collections::BTreeSet::new();
                        let mut guard = 0;
                        while chosen.len() < (k as usize).min(all.len()) && guard < 1_000_000 {
                            guard += 1;
                            chosen.insert(all[rng.random_range(0..all.len())]);
                        }
                        chosen.into_iter().collect()
                    }
                }
            }
        }
    };
    qs.sort_unstable();
    qs.dedup();
    if qs.is_empty() {
        return Err(Error::ConfigError("empty q grid".into()));
    }
    if qs.iter().any(|&q| q < 1) {
        return Err(Error::ConfigError("q must be >= 1".into()));
    }
    Ok(qs)
}

/// Run the sweep. Grid points are independent and evaluated in parallel;
/// records are merged in sorted (q, N, a, gamma) order.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    let qs = resolve_q_set(cfg)?;
    if !(cfg.theta > 0.0 && cfg.theta.is_finite()) {
        return Err(Error::ConfigError(format!("bad theta {}", cfg.theta)));
    }
    let points: Vec<(u64, u64, u64, f64)> = {
        let mut v = Vec::new();
        for &q in &qs {
            let n = ((q as f64).powf(cfg.theta).floor() as u64).max(1);
            for a in sample_a(q, cfg.a_samples, cfg.seed) {
                for &gamma in &cfg.gamma_list {
                    v.push((q, n, a, gamma));
                }
            }
        }
        v
    };
    let mut records: Vec<SweepRecord> = points
        .par_iter()
        .map(|&(q, n, a, gamma)| {
            let phase = CubicPhase::new(a as i128, q, gamma).expect("a sampled coprime to q");
            let s = weyl_sum(&phase, n).expect("N >= 1");
            let abs_sum = s.value.norm();
            let ratio = abs_sum / ((q as f64 * n as f64).powf(0.25));
            SweepRecord {
                q,
                n,
                a,
                gamma,
                abs_sum,
                ratio,
                weyl_bound: weyl_bound(n, q, 0.0),
                exponent: abs_sum.max(1e-12).ln() / (q as f64).max(2.0).ln(),
            }
        })
        .collect();
    records.sort_by(|x, y| {
        (x.q, x.n, x.a)
            .cmp(&(y.q, y.n, y.a))
            .then(x.gamma.partial_cmp(&y.gamma).expect("finite gamma"))
    });

    let mut diagnostics = Vec::new();
    let mut max_ratios: Vec<(u64, u64, f64)> = Vec::new();
    for r in &records {
        if r.abs_sum > r.n as f64 + 1e-6 {
            diagnostics.push(format!(
                "triangle inequality violated at q={} N={} a={}: |S|={}",
                r.q, r.n, r.a, r.abs_sum
            ));
        }
        if r.abs_sum > 10.0 * r.weyl_bound {
            diagnostics.push(format!(
                "|S| exceeds 10x differencing bound at q={} N={} a={} (|S|={:.6}, bound={:.6})",
                r.q, r.n, r.a, r.abs_sum, r.weyl_bound
            ));
        }
        match max_ratios.last_mut() {
            Some(last) if last.0 == r.q && last.1 == r.n => last.2 = last.2.max(r.ratio),
            _ => max_ratios.push((r.q, r.n, r.ratio)),
        }
    }
    Ok(SweepOutput {
        records,
        diagnostics,
        max_ratios,
    })
}

/// Fixed 12-significant-digit scientific rendering, for byte-stable CSV.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

/// CSV with the stable header and LF line endings.
pub fn records_to_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str("q,N,a,gamma,abs_sum,ratio,weyl_bound,exponent\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.q,
            r.n,
            r.a,
            fmt_f64(r.gamma),
            fmt_f64(r.abs_sum),
            fmt_f64(r.ratio),
            fmt_f64(r.weyl_bound),
            fmt_f64(r.exponent)
        );
    }
    out
}

fn ser_i128<S: serde::Serializer>(x: &i128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_u64<S: serde::Serializer>(x: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_u64_map<S: serde::Serializer>(
    v: &Vec<(u64, f64)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(v.len()))?;
    for (k, val) in v {
        m.serialize_entry(&k.to_string(), val)?;
    }
    m.end()
}

/// One pass of the recursion pipeline with every exact identity re-verified.
/// All integers serialize as decimal strings; key order is fixed.
#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    #[serde(serialize_with = "ser_i128")]
    pub a: i128,
    #[serde(serialize_with = "ser_u64")]
    pub q: u64,
    #[serde(serialize_with = "ser_u64")]
    pub n: u64,
    pub gamma: f64,
    #[serde(serialize_with = "ser_u64")]
    pub q0: u64,
    #[serde(serialize_with = "ser_i128")]
    pub b: i128,
    pub smooth_abs: f64,
    pub delta: f64,
    #[serde(serialize_with = "ser_u64_map")]
    pub part_magnitudes: Vec<(u64, f64)>,
    #[serde(serialize_with = "ser_u64")]
    pub chosen_d: u64,
    #[serde(serialize_with = "ser_u64")]
    pub y: u64,
    pub weight_l: f64,
    pub weight_s: f64,
    #[serde(serialize_with = "ser_i128")]
    pub ell: i128,
    #[serde(serialize_with = "ser_i128")]
    pub s: i128,
    #[serde(serialize_with = "ser_i128")]
    pub t: i128,
    #[serde(serialize_with = "ser_i128")]
    pub s1: i128,
    pub m_d: f64,
    pub smallness_epsilon: f64,
    pub smallness_value: f64,
    pub smallness_holds: bool,
    pub s_d1_abs: f64,
    pub s_d2_abs: f64,
    pub congruence_ok: bool,
    pub t_identity_ok: bool,
    pub d_divides_q0: bool,
    pub notes: Vec<String>,
}

impl TraceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Execute one pass of the pipeline: differencing constants, d-partition,
/// short approximation, t / M_d bookkeeping, and the two dual sums. Exact
/// identities are hard errors when violated; inequalities are only reported.
pub fn trace_recursion(a: i128, q: u64, n: u64, gamma: f64, y_rule: f64) -> Result<TraceReport> {
    if n == 0 {
        return Err(Error::DomainError("trace needs N >= 1".into()));
    }
    if n > 10_000 {
        return Err(Error::TooLarge {
            what: "trace window scale N",
            size: n as u128,
            cap: 10_000,
        });
    }
    if !(y_rule > 0.0 && y_rule <= 1.0) {
        return Err(Error::DomainError(format!(
            "Y rule {y_rule} must lie in (0, 1]"
        )));
    }
    let phase = CubicPhase::new(a, q, gamma)?;
    let window = SmoothWindow::poly_bump(n);
    let mut notes = Vec::new();

    let (q0, b) = differencing_constants(&phase);
    let smooth = smooth_weyl_sum(&phase, &window);
    let smooth_abs = smooth.value.norm();
    let delta = (smooth_abs / (q as f64 * n as f64).powf(0.25)).max(1e-6);

    let partition = d_partition(&phase, &window)?;
    let part_magnitudes: Vec<(u64, f64)> = partition
        .parts
        .iter()
        .map(|(&d, v)| (d, v.norm()))
        .collect();
    let (&chosen_d, _) = partition
        .parts
        .iter()
        .max_by(|x, y| x.1.norm().partial_cmp(&y.1.norm()).expect("finite"))
        .expect("q0 >= 1 always has the divisor 1");
    notes.push(format!(
        "chose d = {chosen_d} with |S'_d| = {:.6e}",
        partition.parts[&chosen_d].norm()
    ));

    let y = ((n as f64 * y_rule).floor() as u64).clamp(1, n);

    // weight shapes of the short-pair bounds: (1/delta^4)(d/q)^2 * Y/N for l
    // and (1/delta^4)(d/q)^2 * N Y^2 / q for s
    let shape = (chosen_d as f64 / q as f64).powi(2) / delta.powi(4);
    let weight_l = (shape * y as f64 / n as f64).max(1e-9);
    let weight_s = (shape * n as f64 * (y as f64).powi(2) / q as f64).max(1e-9);

    let pair = if chosen_d == 1 {
        let t = b - 1;
        notes.push("d = 1: degenerate pair (l, s) = (1, 1)".into());
        ApproxPair { ell: 1, s: 1, d: 1, t }
    } else {
        short_approx(b, chosen_d, weight_l, weight_s)?
    };

    // exact identities: hard failures
    let di = chosen_d as i128;
    let congruence_ok = if chosen_d == 1 {
        true
    } else {
        let s_inv = mod_inverse(pair.s, di)?;
        mulmod_i128(pair.ell, s_inv, di) == b.rem_euclid(di)
    };
    let t_identity_ok = pair.s * b - pair.ell == pair.t * di;
    let d_divides_q0 = q0 % chosen_d == 0;
    if !congruence_ok || !t_identity_ok || !d_divides_q0 {
        return Err(Error::ConditionViolated(format!(
            "exact identity failed: congruence={congruence_ok} t-identity={t_identity_ok} d|q0={d_divides_q0}"
        )));
    }

    let s1 = 1i128;
    let md = compute_md(&pair, chosen_d, q0, y, n, 0.05);
    let (s_d1, s_d2) = dual_sum(&phase, chosen_d, &pair, s1, (y, n))?;
    notes.push("dual sums use the known leading amplitude only; existential phase shifts are unset".into());

    Ok(TraceReport {
        a,
        q,
        n,
        gamma,
        q0,
        b,
        smooth_abs,
        delta,
        part_magnitudes,
        chosen_d,
        y,
        weight_l,
        weight_s,
        ell: pair.ell,
        s: pair.s,
        t: pair.t,
        s1,
        m_d: md.m_d,
        smallness_epsilon: 0.05,
        smallness_value: md.cond_value,
        smallness_holds: md.cond_holds,
        s_d1_abs: s_d1.norm(),
        s_d2_abs: s_d2.norm(),
        congruence_ok,
        t_identity_ok,
        d_divides_q0,
        notes,
    })
}

/// Completion diagnostic: |sum over the subrange| divided by the maximal
/// gamma-twisted full-range sum over a uniform gamma grid. Expected O(log N);
/// reported, never asserted.
pub fn completion_ratio(
    f: &dyn Fn(i64) -> Complex64,
    subrange: (i64, i64),
    fullrange: (i64, i64),
    gamma_grid: u32,
) -> Result<f64> {
    let (m1, m2) = subrange;
    let (n1, n2) = fullrange;
    if m1 > m2 || n1 > n2 {
        return Err(Error::EmptyRange("completion ranges must be nonempty".into()));
    }
    if !(n1 <= m1 && m2 <= n2) {
        return Err(Error::DomainError(
            "subrange must sit inside the full range".into(),
        ));
    }
    if (n2 - n1) as u128 > 100_000 {
        return Err(Error::TooLarge {
            what: "completion range",
            size: (n2 - n1) as u128,
            cap: 100_000,
        });
    }
    if gamma_grid < 16 {
        return Err(Error::DomainError("gamma grid needs at least 16 points".into()));
    }
    let mut num = Complex64::new(0.0, 0.0);
    for n in m1..=m2 {
        num += f(n);
    }
    let values: Vec<Complex64> = (n1..=n2).map(f).collect();
    let mut denom = 0.0f64;
    for k in 0..gamma_grid {
        let gamma = k as f64 / gamma_grid as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, n) in (n1..=n2).enumerate() {
            let t = TAU * crate::expsum::frac_of_product(gamma, n);
            acc += values[idx] * Complex64::new(t.cos(), t.sin());
        }
        denom = denom.max(acc.norm());
    }
    Ok(num.norm() / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_bound_examples() {
        let q = 100u64;
        let b = weyl_bound(q, q, 0.0);
        let expect = 100.0 * (2.0 / 100.0 + 1.0 / 10_000.0f64).powf(0.25);
        assert!((b - expect).abs() < 1e-12);

        // q = 1: the bound is at least the trivial estimate N
        for n in [1u64, 10, 1000] {
            assert!(weyl_bound(n, 1, 0.0) >= n as f64);
        }

        // N = q^(1/2): same scaling as (qN)^(1/4) up to constants
        let q = 10_000u64;
        let n = 100u64;
        let bound = weyl_bound(n, q, 0.0);
        let target = (q as f64 * n as f64).powf(0.25);
        let c = bound / target;
        assert!(c > 0.5 && c < 3.0, "c={c}");
    }

    #[test]
    fn sweep_deterministic_and_sorted() {
        let cfg = SweepConfig {
            qs: QSpec::List(vec![9, 5, 25]),
            theta: 1.0,
            a_samples: 3,
            gamma_list: vec![0.0],
            seed: 42,
            q_count: None,
        };
        let out1 = sweep(&cfg).unwrap();
        let out2 = sweep(&cfg).unwrap();
        assert_eq!(records_to_csv(&out1.records), records_to_csv(&out2.records));
        let mut sorted = out1.records.clone();
        sorted.sort_by_key(|r| (r.q, r.n, r.a));
        assert_eq!(
            sorted.iter().map(|r| (r.q, r.a)).collect::<Vec<_>>(),
            out1.records.iter().map(|r| (r.q, r.a)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn sweep_known_points() {
        let cfg = SweepConfig {
            qs: QSpec::List(vec![5, 9]),
            theta: 1.0,
            a_samples: 0,
            gamma_list: vec![0.0],
            seed: 7,
            q_count: None,
        };
        let out = sweep(&cfg).unwrap();
        let r5 = out
            .records
            .iter()
            .find(|r| r.q == 5 && r.a == 1)
            .unwrap();
        assert!(r5.abs_sum < 1e-10 && r5.ratio < 1e-10);

        let r9 = out
            .records
            .iter()
            .find(|r| r.q == 9 && r.a == 1)
            .unwrap();
        let expected = 3.0 * (1.0 + 2.0 * (TAU / 9.0).cos());
        assert!((r9.abs_sum - expected).abs() < 1e-9);
        assert!((r9.ratio - expected / 3.0).abs() < 1e-9);
    }

    #[test]
    fn sweep_rejects_empty_grid() {
        let cfg = SweepConfig {
            qs: QSpec::List(vec![]),
            theta: 0.4,
            a_samples: 1,
            gamma_list: vec![0.0],
            seed: 1,
            q_count: None,
        };
        assert!(matches!(sweep(&cfg), Err(Error::ConfigError(_))));
    }

    #[test]
    fn config_parsing() {
        let cfg = SweepConfig::parse(
            "# demo\nq_list = 5, 9, 25\ntheta = 0.4\na_samples = 10\ngamma_list = 0, 0.25\nseed = 99\n",
        )
        .unwrap();
        assert_eq!(cfg.qs, QSpec::List(vec![5, 9, 25]));
        assert_eq!(cfg.theta, 0.4);
        assert_eq!(cfg.a_samples, 10);
        assert_eq!(cfg.gamma_list, vec![0.0, 0.25]);
        assert_eq!(cfg.seed, 99);

        let cfg = SweepConfig::parse("q_primes_range = 100, 200\nq_count = 5\ntheta = 0.5\n").unwrap();
        assert!(matches!(cfg.qs, QSpec::PrimesRange(100, 200)));
        let qs = resolve_q_set(&cfg).unwrap();
        assert_eq!(qs.len(), 5);
        assert!(qs.iter().all(|&q| is_prime(q)));

        assert!(SweepConfig::parse("theta = 0.4\n").is_err());
        assert!(SweepConfig::parse("q_list = 5\ntheta = 0.4\nwat = 1\n").is_err());
    }

    #[test]
    fn trace_prime_modulus() {
        let report = trace_recursion(1, 7, 10, 0.0, 0.5).unwrap();
        assert_eq!(report.q0, 7);
        assert_eq!(report.b, 3);
        assert!(report.congruence_ok && report.t_identity_ok && report.d_divides_q0);
        // d = 1 or d = 7 only
        assert!(report.chosen_d == 1 || report.chosen_d == 7);
    }

    #[test]
    fn trace_prime_power() {
        let report = trace_recursion(1, 125, 26, 0.0, 0.5).unwrap();
        assert_eq!(report.q0, 125);
        assert_eq!(report.b, 3);
        assert!(report.congruence_ok && report.t_identity_ok && report.d_divides_q0);
        assert!(report.s_d1_abs.is_finite() && report.s_d2_abs.is_finite());
        let json = report.to_json();
        assert!(json.contains("\"q\": \"125\""));
        assert!(json.contains("\"t_identity_ok\": true"));
    }

    #[test]
    fn trace_rejects_common_factor() {
        assert!(matches!(
            trace_recursion(5, 125, 26, 0.0, 0.5),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn completion_ratio_cases() {
        // constant F with subrange = full range: gamma = 0 attains the max
        let f = |_: i64| Complex64::new(1.0, 0.0);
        let r = completion_ratio(&f, (1, 100), (1, 100), 16).unwrap();
        assert!(r <= 1.0 + 1e-12);

        // quadratic chirp
        let f = |n: i64| {
            let t = TAU * (0.013 * (n as f64) * (n as f64)).rem_euclid(1.0);
            Complex64::new(t.cos(), t.sin())
        };
        let r = completion_ratio(&f, (200, 400), (1, 1000), 64).unwrap();
        assert!(r.is_finite() && r < 20.0, "r={r}");

        // single-point subrange
        let r = completion_ratio(&f, (10, 10), (1, 1000), 16).unwrap();
        assert!(r <= 1.0);

        assert!(matches!(
            completion_ratio(&f, (5, 4), (1, 10), 16),
            Err(Error::EmptyRange(_))
        ));
    }
}
