//! Laurent polynomials in one variable `A` with exact integer coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Dense Laurent polynomial: `coeffs[k]` is the coefficient of `A^(low + k)`.
/// Leading and trailing zeros are never stored; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<i128>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    pub fn monomial(c: i128, e: i32) -> Self {
        Laurent { low: e, coeffs: vec![c] }.normalized()
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Laurent { low: -2, coeffs: vec![-1, 0, 0, 0, -1] }
    }

    pub fn from_terms(terms: &[(i32, i128)]) -> Self {
        let mut p = Laurent::zero();
        for &(e, c) in terms {
            p = &p + &Laurent::monomial(c, e);
        }
        p
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            return Laurent::zero();
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.low + k as i32, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn coeff(&self, e: i32) -> i128 {
        let k = e - self.low;
        if k < 0 {
            0
        } else {
            self.coeffs.get(k as usize).copied().unwrap_or(0)
        }
    }

    /// Multiply by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Substitute `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        let high = self.low + self.coeffs.len() as i32 - 1;
        let mut c = self.coeffs.clone();
        c.reverse();
        Laurent { low: -high, coeffs: c }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Laurent::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Exact division by the loop value `-A^2 - A^-2`. Panics if the division
    /// leaves a remainder.
    pub fn div_loop_value(&self) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        // p = -(A^-2)(A^4 + 1) q, so q = -A^2 p / (A^4 + 1).
        let mut r = (-self).coeffs;
        let len = r.len();
        assert!(len >= 5, "polynomial not divisible by the loop value");
        let mut q = vec![0i128; len - 4];
        for k in (0..len - 4).rev() {
            let c = r[k + 4];
            q[k] = c;
            r[k + 4] -= c;
            r[k] -= c;
        }
        assert!(r.iter().all(|&c| c == 0), "polynomial not divisible by the loop value");
        Laurent { low: self.low + 2, coeffs: q }.normalized()
    }

    /// Parse the text form produced by `Display`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "0" {
            return Some(Laurent::zero());
        }
        let b = s.as_bytes();
        let mut i = 0;
        let mut p = Laurent::zero();
        while i < b.len() {
            let mut sign = 1i128;
            if b[i] == b'+' || b[i] == b'-' {
                if b[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i != 0 {
                return None;
            }
            let ds = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i128 = if ds == i { 1 } else { s[ds..i].parse().ok()? };
            let exp = if i < b.len() && b[i] == b'A' {
                i += 1;
                if i < b.len() && b[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < b.len() && b[i] == b'-' {
                        i += 1;
                    }
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    s[es..i].parse().ok()?
                } else {
                    1
                }
            } else {
                if ds == i {
                    return None;
                }
                0
            };
            p = &p + &Laurent::monomial(sign * coeff, exp);
        }
        Some(p)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = (self.low + self.coeffs.len() as i32).max(o.low + o.coeffs.len() as i32);
        let mut c = vec![0i128; (high - low) as usize];
        for (k, &v) in self.coeffs.iter().enumerate() {
            c[(self.low - low) as usize + k] += v;
        }
        for (k, &v) in o.coeffs.iter().enumerate() {
            c[(o.low - low) as usize + k] += v;
        }
        Laurent { low, coeffs: c }.normalized()
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![0i128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Laurent { low: self.low + o.low, coeffs: c }.normalized()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if c < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.unsigned_abs();
            if e == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}")?;
            }
            if e == 1 {
                f.write_str("A")?;
            } else {
                write!(f, "A^{e}")?;
            }
        }
        Ok(())
    }
}
