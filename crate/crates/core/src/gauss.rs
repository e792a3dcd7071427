//! Complete quadratic Gauss sums G(a, l; q) = sum_{mu=1..q} e_q(a mu^2 + l mu).
//!
//! `gauss_closed` evaluates the sum exactly in symbolic form (Jacobi sign,
//! unit phase fraction, fourth-root-of-unity factor, sqrt scale) for
//! gcd(a, q) = 1, dispatching on q mod 4:
//!
//! * q odd: complete the square independently of the parity of l, then the
//!   classical evaluation with the epsilon factor 1 or i by q mod 4;
//! * q = 2 mod 4: zero for even l, otherwise a shift to odd modulus times 2;
//! * q = 0 mod 4: zero for odd l, otherwise the (1 + i^a) evaluation.
//!
//! `gauss_brute` is the O(q) oracle used to cross-check every case.

use crate::error::{Error, Result};
use crate::expsum::e_of_rational;
use crate::modarith::{gcd_u64, mod_inverse, mulmod_u64, Mod1Rational};
use num_complex::Complex64;
use std::f64::consts::TAU;

const BRUTE_CAP: u64 = 1_000_000;

/// Parameters (a, l, q), stored with a, l reduced mod q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussParams {
    a: u64,
    ell: u64,
    q: u64,
}

impl GaussParams {
    pub fn new(a: i128, ell: i128, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::DomainError("Gauss modulus must be positive".into()));
        }
        Ok(GaussParams {
            a: a.rem_euclid(q as i128) as u64,
            ell: ell.rem_euclid(q as i128) as u64,
            q,
        })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// The fourth-root / (1 + i^a) factor of the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitFactor {
    One,
    I,
    MinusOne,
    MinusI,
    OnePlusI,
    OneMinusI,
}

impl UnitFactor {
    pub fn to_complex(self) -> Complex64 {
        match self {
            UnitFactor::One => Complex64::new(1.0, 0.0),
            UnitFactor::I => Complex64::new(0.0, 1.0),
            UnitFactor::MinusOne => Complex64::new(-1.0, 0.0),
            UnitFactor::MinusI => Complex64::new(0.0, -1.0),
            UnitFactor::OnePlusI => Complex64::new(1.0, 1.0),
            UnitFactor::OneMinusI => Complex64::new(1.0, -1.0),
        }
    }
}

impl std::fmt::Display for UnitFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            UnitFactor::One => "1",
            UnitFactor::I => "i",
            UnitFactor::MinusOne => "-1",
            UnitFactor::MinusI => "-i",
            UnitFactor::OnePlusI => "(1+i)",
            UnitFactor::OneMinusI => "(1-i)",
        };
        f.write_str(s)
    }
}

/// Exact symbolic value sign * e(phase) * unit * multiplier * sqrt(radicand).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussValue {
    pub sign: i8,
    pub phase: Mod1Rational,
    pub unit: UnitFactor,
    pub multiplier: u64,
    pub radicand: u64,
}

impl GaussValue {
    pub fn zero() -> Self {
        GaussValue {
            sign: 0,
            phase: Mod1Rational::zero(),
            unit: UnitFactor::One,
            multiplier: 0,
            radicand: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_complex(&self) -> Complex64 {
        if self.sign == 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.sign as f64
            * e_of_rational(&self.phase)
            * self.unit.to_complex()
            * self.multiplier as f64
            * (self.radicand as f64).sqrt()
    }

    pub fn norm(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            self.unit.to_complex().norm() * self.multiplier as f64 * (self.radicand as f64).sqrt()
        }
    }
}

impl std::fmt::Display for GaussValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign == 0 {
            return f.write_str("0");
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(
            f,
            "{sign}e({}) * {} * {} * sqrt({})",
            self.phase, self.unit, self.multiplier, self.radicand
        )
    }
}

/// Precomputed q-th roots of unity for repeated brute-force evaluations with
/// the same modulus.
pub struct RootTable {
    q: u64,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 || q > BRUTE_CAP {
            return Err(Error::OracleTooLarge(q));
        }
        let roots = (0..q)
            .map(|k| {
                let t = TAU * k as f64 / q as f64;
                Complex64::new(t.cos(), t.sin())
            })
            .collect();
        Ok(RootTable { q, roots })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// G(a, l; q) by direct summation over the table. The index
    /// a*mu^2 + l*mu mod q is stepped by finite differences, so the inner
    /// loop is addition-only.
    pub fn gauss(&self, a: u64, ell: u64) -> Complex64 {
        let q = self.q;
        let (a, ell) = (a % q, ell % q);
        let mut idx = 0u64; // value at mu = 0
        let mut step = (a + ell) % q; // first difference a(2 mu + 1) + l at mu = 0
        let dd = (2 * a) % q; // constant second difference
        let mut re = 0.0f64;
        let mut im = 0.0f64;
        let mut re_c = 0.0f64;
        let mut im_c = 0.0f64;
        for _ in 0..q {
            idx += step;
            if idx >= q {
                idx -= q;
            }
            step += dd;
            if step >= q {
                step -= q;
            }
            let z = self.roots[idx as usize];
            // Kahan steps
            let y = z.re - re_c;
            let t = re + y;
            re_c = (t - re) - y;
            re = t;
            let y = z.im - im_c;
            let t = im + y;
            im_c = (t - im) - y;
            im = t;
        }
        Complex64::new(re, im)
    }
}

/// O(q) oracle with exact rational phases; capped at q <= 10^6.
pub fn gauss_brute(p: &GaussParams) -> Result<Complex64> {
    let table = RootTable::new(p.q)?;
    Ok(table.gauss(p.a, p.ell))
}

fn jacobi_u64(a: u64, n: u64) -> i8 {
    crate::modarith::jacobi(a as i128, n as i128).expect("odd modulus by construction")
}

/// Closed-form evaluation of G(a, l; q) for gcd(a, q) = 1.
pub fn gauss_closed(p: &GaussParams) -> Result<GaussValue> {
    let (a, ell, q) = (p.a, p.ell, p.q);
    if gcd_u64(a, q) != 1 {
        return Err(Error::NotCoprime {
            a: a as i128,
            b: q as i128,
        });
    }
    if q == 1 {
        return Ok(GaussValue {
            sign: 1,
            phase: Mod1Rational::zero(),
            unit: UnitFactor::One,
            multiplier: 1,
            radicand: 1,
        });
    }
    if q % 2 == 1 {
        return Ok(closed_odd(a, ell, q, 1));
    }
    if q % 4 == 2 {
        // G(a, l; 2q') = G(2a, l; q') * G(aq', l; 2) and the mod-2 factor is
        // 0 for even l, 2 for odd l
        if ell % 2 == 0 {
            return Ok(GaussValue::zero());
        }
        let q2 = q / 2;
        if q2 == 1 {
            return Ok(GaussValue {
                sign: 1,
                phase: Mod1Rational::zero(),
                unit: UnitFactor::One,
                multiplier: 2,
                radicand: 1,
            });
        }
        return Ok(closed_odd((2 * a) % q2, ell % q2, q2, 2));
    }
    // q = 0 mod 4
    if ell % 2 == 1 {
        // completing the square leaves G(a^-1, a^-1; q), which vanishes for
        // 4 | q since the linear coefficient is odd
        return Ok(GaussValue::zero());
    }
    let half = ell / 2;
    let inv_a = mod_inverse(a as i128, q as i128)? as u64;
    let phase_num = mulmod_u64(inv_a, mulmod_u64(half, half, q), q);
    let phase = Mod1Rational::new(-(phase_num as i128), q as i128);
    let unit = if a % 4 == 1 {
        UnitFactor::OnePlusI
    } else {
        UnitFactor::OneMinusI
    };
    // a is odd and positive here since gcd(a, q) = 1 with 4 | q
    Ok(GaussValue {
        sign: jacobi_u64(q % a, a),
        phase,
        unit,
        multiplier: 1,
        radicand: q,
    })
}

/// Odd-modulus evaluation: e_q(-(4a)^-1 l^2) * (a/q) * eps_q * sqrt(q),
/// with the extra integer multiplier carried through from even reductions.
fn closed_odd(a: u64, ell: u64, q: u64, multiplier: u64) -> GaussValue {
    debug_assert!(q % 2 == 1 && q > 1);
    let inv_4a = mod_inverse(4 * a as i128, q as i128).expect("gcd(4a, q) = 1 for odd q") as u64;
    let phase_num = mulmod_u64(inv_4a, mulmod_u64(ell, ell, q), q);
    let phase = Mod1Rational::new(-(phase_num as i128), q as i128);
    let unit = if q % 4 == 1 {
        UnitFactor::One
    } else {
        UnitFactor::I
    };
    GaussValue {
        sign: jacobi_u64(a, q),
        phase,
        unit,
        multiplier,
        radicand: q,
    }
}

/// Completing the square: G(a, l; q) = e(phase) * G(reduced) with the reduced
/// linear coefficient either 0 (even case, or any odd q) or a^-1 (odd l with
/// even q).
pub fn complete_square_reduce(p: &GaussParams) -> Result<(Mod1Rational, GaussParams)> {
    let (a, ell, q) = (p.a, p.ell, p.q);
    if gcd_u64(a, q) != 1 {
        return Err(Error::NotCoprime {
            a: a as i128,
            b: q as i128,
        });
    }
    if ell == 0 {
        return Ok((Mod1Rational::zero(), *p));
    }
    if q % 2 == 1 {
        let inv_4a = mod_inverse(4 * a as i128, q as i128)? as u64;
        let num = mulmod_u64(inv_4a, mulmod_u64(ell, ell, q), q);
        return Ok((
            Mod1Rational::new(-(num as i128), q as i128),
            GaussParams { a, ell: 0, q },
        ));
    }
    let inv_a = mod_inverse(a as i128, q as i128)? as u64;
    if ell % 2 == 0 {
        let half = ell / 2;
        let num = mulmod_u64(inv_a, mulmod_u64(half, half, q), q);
        Ok((
            Mod1Rational::new(-(num as i128), q as i128),
            GaussParams { a, ell: 0, q },
        ))
    } else {
        // (l^2 - 1)/4 is an integer for odd l
        let quarter = ((ell as u128 * ell as u128 - 1) / 4 % q as u128) as u64;
        let num = mulmod_u64(inv_a, quarter, q);
        Ok((
            Mod1Rational::new(-(num as i128), q as i128),
            GaussParams {
                a: inv_a,
                ell: inv_a,
                q,
            },
        ))
    }
}

/// CRT multiplicativity check: returns both sides of
/// G(a, l; q1 q2) = G(a q1, l; q2) * G(a q2, l; q1), evaluated by brute force.
pub fn gauss_mult_check(a: i128, ell: i128, q1: u64, q2: u64) -> Result<(Complex64, Complex64)> {
    if gcd_u64(q1, q2) != 1 {
        return Err(Error::NotCoprimeModuli(q1, q2));
    }
    let prod = q1
        .checked_mul(q2)
        .ok_or_else(|| Error::Overflow(format!("{q1} * {q2} overflows u64")))?;
    let lhs = gauss_brute(&GaussParams::new(a, ell, prod)?)?;
    let left = gauss_brute(&GaussParams::new(a * q1 as i128, ell, q2)?)?;
    let right = gauss_brute(&GaussParams::new(a * q2 as i128, ell, q1)?)?;
    Ok((lhs, left * right))
}
