//! Exact integer and rational-mod-1 arithmetic.
//!
//! Everything downstream (Gauss sums, differencing identities, dual sums)
//! manipulates phases as exact reduced fractions mod 1; this module owns that
//! representation together with the usual modular toolkit: inverses, Jacobi
//! symbols, reciprocity identities and factorization.
//!
//! Integers are signed 128-bit in the API; moduli stay below 2^63 so that all
//! products fit in 128-bit intermediates.

use crate::error::{Error, Result};

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// (a * b) mod m without overflow, for m < 2^64.
pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// (a * b) mod m for signed 128-bit values with positive modulus m < 2^63.
/// Inputs are first reduced into [0, m).
pub fn mulmod_i128(a: i128, b: i128, m: i128) -> i128 {
    debug_assert!(m > 0);
    let a = a.rem_euclid(m) as u128;
    let b = b.rem_euclid(m) as u128;
    // a, b < 2^63 so the product fits in u128
    ((a * b) % (m as u128)) as i128
}

/// An exact fraction num/den taken mod 1, always stored reduced with
/// 0 <= num < den.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mod1Rational {
    num: i128,
    den: i128,
}

impl Mod1Rational {
    /// Reduce num/den mod 1. The denominator must be nonzero.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "Mod1Rational with zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = gcd_i128(num, den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Mod1Rational { num, den }
    }

    pub fn zero() -> Self {
        Mod1Rational { num: 0, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &Self) -> Self {
        let g = gcd_i128(self.den, other.den);
        let lcm = (self.den / g)
            .checked_mul(other.den)
            .expect("Mod1Rational denominator overflow");
        let a = self
            .num
            .checked_mul(lcm / self.den)
            .expect("Mod1Rational numerator overflow");
        let b = other
            .num
            .checked_mul(lcm / other.den)
            .expect("Mod1Rational numerator overflow");
        Mod1Rational::new(a + b, lcm)
    }

    pub fn neg(&self) -> Self {
        Mod1Rational::new(-self.num, self.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply by an integer, reducing mod 1.
    pub fn scale(&self, k: i128) -> Self {
        Mod1Rational::new(mulmod_i128(self.num, k, self.den), self.den)
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Mod1Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Prime factorization with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Multiply the factorization back together.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }

    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pk = 1u64;
                for _ in 0..=e {
                    next.push(d * pk);
                    if pk <= u64::MAX / p {
                        pk *= p;
                    }
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }
}

/// Modular inverse of a mod m, in [0, m). By convention the inverse mod 1 is 0.
pub fn mod_inverse(a: i128, m: i128) -> Result<i128> {
    if m < 1 {
        return Err(Error::DomainError(format!("modulus {m} must be positive")));
    }
    if m == 1 {
        return Ok(0);
    }
    let a = a.rem_euclid(m);
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return Err(Error::NotCoprime { a, b: m });
    }
    Ok(old_s.rem_euclid(m))
}

/// Jacobi symbol (a/n) for odd positive n. Negative a are reduced mod n first,
/// which agrees with the sign rule (-1/n) = (-1)^((n-1)/2).
pub fn jacobi(a: i128, n: i128) -> Result<i8> {
    if n < 1 {
        return Err(Error::DomainError(format!("Jacobi modulus {n} must be positive")));
    }
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result: i8 = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        Ok(result)
    } else {
        Ok(0)
    }
}

/// Reciprocity for modular inverses: for coprime positive a, b return
/// (u/b, v/a, 1/(ab)) with u = a^{-1} mod b and v = b^{-1} mod a, satisfying
/// u/b + v/a = 1/(ab) mod 1 exactly. The identity is re-verified before
/// returning.
pub fn inverse_reciprocity(a: i128, b: i128) -> Result<(Mod1Rational, Mod1Rational, Mod1Rational)> {
    if a < 1 || b < 1 {
        return Err(Error::DomainError(format!(
            "inverse_reciprocity needs positive arguments, got ({a}, {b})"
        )));
    }
    if gcd_i128(a, b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    let u = mod_inverse(a, b)?;
    let v = mod_inverse(b, a)?;
    let ub = Mod1Rational::new(u, b);
    let va = Mod1Rational::new(v, a);
    let prod = a
        .checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("product {a} * {b} exceeds 128 bits")))?;
    let rhs = Mod1Rational::new(1, prod);
    assert_eq!(ub.add(&va), rhs, "inverse reciprocity identity failed");
    Ok((ub, va, rhs))
}

fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // n is odd, composite, and has no factor below 100 here.
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Complete prime factorization of q >= 1 by trial division plus Pollard rho.
pub fn factorize(q: u64) -> Factorization {
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = q;
    for p in 2u64..100 {
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    let mut stack = Vec::new();
    if rest > 1 {
        stack.push(rest);
    }
    let mut large: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if is_prime(m) {
            large.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    large.sort_unstable();
    for p in large {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += 1;
                continue;
            }
        }
        factors.push((p, 1));
    }
    factors.sort_unstable();
    Factorization { factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 1).unwrap(), 0);
        assert_eq!(mod_inverse(3, 5).unwrap(), 2);
        assert_eq!(
            mod_inverse(2, 4).unwrap_err(),
            Error::NotCoprime { a: 2, b: 4 }
        );
    }

    #[test]
    fn mod_inverse_property_small() {
        for m in 1i128..=200 {
            for a in 1..m {
                if gcd_i128(a, m) == 1 {
                    let u = mod_inverse(a, m).unwrap();
                    assert!(u >= 0 && u < m);
                    if m > 1 {
                        assert_eq!((a * u).rem_euclid(m), 1);
                    }
                }
            }
        }
    }

    /// Euler-criterion oracle: (a/p) via counting square roots, extended to
    /// odd n multiplicatively over the factorization.
    fn jacobi_oracle(a: i128, n: i128) -> i8 {
        let mut result = 1i8;
        let f = factorize(n as u64);
        for (p, e) in f.factors {
            let p = p as i128;
            let leg = if a.rem_euclid(p) == 0 {
                0
            } else {
                let mut is_square = false;
                for x in 0..p {
                    if (x * x - a).rem_euclid(p) == 0 {
                        is_square = true;
                        break;
                    }
                }
                if is_square {
                    1
                } else {
                    -1
                }
            };
            for _ in 0..e {
                result *= leg;
            }
        }
        result
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_oracle(2, 7), 1);
        assert_eq!(jacobi(2, 7).unwrap(), 1);
        assert_eq!(jacobi_oracle(2, 3), -1);
        assert_eq!(jacobi(2, 3).unwrap(), -1);
        assert_eq!(jacobi(5, 5).unwrap(), 0);
        assert_eq!(jacobi(7, 4).unwrap_err(), Error::EvenModulus(4));
    }

    #[test]
    fn jacobi_matches_oracle() {
        for n in (1i128..=99).step_by(2) {
            for a in -10..=30 {
                assert_eq!(jacobi(a, n).unwrap(), jacobi_oracle(a, n), "a={a} n={n}");
            }
        }
    }

    #[test]
    fn jacobi_multiplicative() {
        for n in (1i128..=999).step_by(2) {
            for a1 in 1..=12 {
                for a2 in 1..=12 {
                    let lhs = jacobi(a1 * a2, n).unwrap();
                    let rhs = jacobi(a1, n).unwrap() * jacobi(a2, n).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn quadratic_reciprocity_small() {
        for p in (3i128..=99).step_by(2) {
            for q in (3i128..=99).step_by(2) {
                if gcd_i128(p, q) == 1 {
                    let lhs = jacobi(p, q).unwrap() as i32 * jacobi(q, p).unwrap() as i32;
                    let rhs = if ((p - 1) / 2 * ((q - 1) / 2)) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    assert_eq!(lhs, rhs, "p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn inverse_reciprocity_examples() {
        let (ub, va, rhs) = inverse_reciprocity(3, 5).unwrap();
        assert_eq!(ub, Mod1Rational::new(2, 5));
        assert_eq!(va, Mod1Rational::new(2, 3));
        assert_eq!(rhs, Mod1Rational::new(1, 15));

        let (ub, va, rhs) = inverse_reciprocity(1, 1).unwrap();
        assert!(ub.is_zero() && va.is_zero() && rhs.is_zero());

        assert!(matches!(
            inverse_reciprocity(2, 2),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn inverse_reciprocity_exhaustive_small() {
        // the identity is re-verified exactly inside the function
        for a in 1i128..=500 {
            for b in 1i128..=500 {
                if gcd_i128(a, b) == 1 {
                    inverse_reciprocity(a, b).unwrap();
                }
            }
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).factors, vec![]);
        assert_eq!(factorize(12).factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(9991).factors, vec![(97, 1), (103, 1)]);
    }

    #[test]
    fn factorize_divisors() {
        assert_eq!(factorize(12).divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorize(1).divisors(), vec![1]);
    }

    proptest! {
        #[test]
        fn factorize_roundtrip(q in 1u64..5_000_000) {
            let f = factorize(q);
            prop_assert_eq!(f.product(), q);
            for w in f.factors.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for &(p, _) in &f.factors {
                prop_assert!(is_prime(p));
            }
        }

        #[test]
        fn mod1_add_matches_naive(a in -50i128..50, b in 1i128..50, c in -50i128..50, d in 1i128..50) {
            let r = Mod1Rational::new(a, b).add(&Mod1Rational::new(c, d));
            let naive = Mod1Rational::new(a * d + c * b, b * d);
            prop_assert_eq!(r, naive);
        }

        #[test]
        fn mod1_scale_matches_naive(a in -50i128..50, b in 1i128..50, k in -100i128..100) {
            let r = Mod1Rational::new(a, b).scale(k);
            prop_assert_eq!(r, Mod1Rational::new(a * k, b));
        }

        #[test]
        fn mod1_neg_cancels(a in -50i128..50, b in 1i128..50) {
            let r = Mod1Rational::new(a, b);
            prop_assert!(r.add(&r.neg()).is_zero());
        }

        #[test]
        fn mod_inverse_random(a in 1i128..1_000_000, m in 1i128..1_000_000) {
            prop_assume!(gcd_i128(a, m) == 1);
            let u = mod_inverse(a, m).unwrap();
            if m == 1 {
                prop_assert_eq!(u, 0);
            } else {
                prop_assert_eq!((a * u).rem_euclid(m), 1);
            }
        }
    }
}
