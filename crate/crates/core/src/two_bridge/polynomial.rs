use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{self, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A one-variable integer polynomial, `coeffs[i]` being the coefficient of `t^i`.
///
/// Arithmetic keeps trailing zeros trimmed. [`IntPolynomial::normalized`]
/// additionally divides out the lowest power of `t` and fixes the sign so the
/// leading coefficient is positive, which is the form Alexander polynomials
/// are compared in (they are defined up to `±t^k`).
///
/// Serialized as the coefficient list, each entry a 64-bit integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for &c in &self.coeffs {
            let c = i64::try_from(c).map_err(|_| ser::Error::custom(format!("coefficient {c} exceeds 64 bits")))?;
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Vec::<i64>::deserialize(deserializer).map(|c| IntPolynomial::from_i64(&c))
    }
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<i128>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| i128::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    /// `t`
    pub fn variable() -> Self {
        Self::new(vec![0, 1])
    }

    /// Builds from `(exponent, coefficient)` terms with possibly negative
    /// exponents, shifted so the lowest exponent present becomes 0.
    pub fn from_laurent_terms(terms: impl IntoIterator<Item = (i64, i128)>) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|&(e, _)| e).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|&(e, _)| e).max().unwrap_or(lo);
        let mut coeffs = vec![0i128; (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn max_abs_coeff(&self) -> i128 {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Unit-normal form: lowest exponent 0, positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        let mut coeffs = self.coeffs[lead_zeros..].to_vec();
        if coeffs.last().is_some_and(|&c| c < 0) {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        Self::new(coeffs)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        c.iter().eq(c.iter().rev())
    }

    /// `t^deg · f(1/t)`
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().copied().collect())
    }

    /// Exact division. `None` when `divisor` does not divide `self` over Z.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let d_deg = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let n_deg = self.degree()?;
        if n_deg < d_deg {
            return None;
        }
        let mut quot = vec![0i128; n_deg - d_deg + 1];
        for i in (0..quot.len()).rev() {
            let top = rem[i + d_deg];
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            quot[i] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self::new(quot))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&0) + rhs.coeffs.get(i).unwrap_or(&0))
            .collect();
        IntPolynomial::new(c)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{a}t^{i}")?,
            }
        }
        Ok(())
    }
}
