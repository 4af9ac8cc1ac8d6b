//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `coeffs[i]` is the coefficient of `x^i`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Outcome of comparing two polynomials for all sufficiently large `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Eventually {
    /// `p(x) > q(x)` for all large `x`.
    PWins,
    /// `q(x) > p(x)` for all large `x`.
    QWins,
    Equal,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    /// `x - a`.
    pub fn linear_root(a: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![-a.into(), BigInt::one()])
    }

    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `Π (x - a)` over `roots`.
    pub fn from_roots<I, T>(roots: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        roots
            .into_iter()
            .fold(Self::one(), |acc, a| &acc * &Self::linear_root(a))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_u64(&self, x: u64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// `q(x) = p(x - k)`, expanded with binomial coefficients.
    pub fn shift(&self, k: u64) -> Self {
        let n = self.coeffs.len();
        let k = BigInt::from(k);
        let mut out = vec![BigInt::zero(); n];
        // (x - k)^i = Σ_j C(i,j) x^j (-k)^{i-j}
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut binom = BigInt::one();
            for j in (0..=i).rev() {
                // term x^j has coefficient C(i, j) (-k)^{i-j}
                let pow = pow_neg(&k, i - j);
                out[j] += c * &binom * pow;
                if j > 0 {
                    binom = binom * BigInt::from(j) / BigInt::from(i - j + 1);
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Decides which polynomial is larger for every sufficiently large `x`
    /// from the sign of the leading coefficient of `self - other`.
    pub fn compare_eventually(&self, other: &Self) -> Eventually {
        match self.eventual_cmp(other) {
            Ordering::Greater => Eventually::PWins,
            Ordering::Less => Eventually::QWins,
            Ordering::Equal => Eventually::Equal,
        }
    }

    /// Eventual-dominance order as an [`Ordering`].
    pub fn eventual_cmp(&self, other: &Self) -> Ordering {
        let d = self - other;
        match d.leading_coeff() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// A point beyond every real root of `self - other`: the Cauchy-style
    /// bound `10 (deg + 1)(1 + max |c|)` on the difference.
    pub fn separation_point(&self, other: &Self) -> BigInt {
        let d = self - other;
        let max = d
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        BigInt::from(10) * BigInt::from(d.coeffs.len().max(1)) * (BigInt::one() + max)
    }

    /// `[c0, c1, ..., cn]`.
    pub fn to_vector_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }

    /// JSON array of decimal strings, ascending degree.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        Self::deserialize(v).map_err(|e| Error::Parse(format!("polynomial json: {e}")))
    }
}

fn pow_neg(k: &BigInt, e: usize) -> BigInt {
    let p = num_traits::pow(k.clone(), e);
    if e % 2 == 1 {
        -p
    } else {
        p
    }
}

/// `S_i(a)`: the sum over all `i`-subsets of `a` of their products.
pub fn elementary_symmetric(a: &[i64], i: usize) -> Result<BigInt> {
    if i > a.len() {
        return Err(Error::InvalidArgument(format!(
            "elementary symmetric index {i} exceeds list length {}",
            a.len()
        )));
    }
    // e[j] after processing a prefix = S_j of that prefix
    let mut e = vec![BigInt::zero(); i + 1];
    e[0] = BigInt::one();
    for &x in a {
        for j in (1..=i).rev() {
            let prev = e[j - 1].clone();
            e[j] += prev * x;
        }
    }
    Ok(e.swap_remove(i))
}

impl fmt::Display for IntPolynomial {
    /// Descending form with explicit signs, e.g. `x^3 - 6x^2 + 11x - 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts the `[c0, c1, ...]` vector form.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[c0, c1, ...]`, got `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p(&[-1, 1]) * &p(&[-2, 1]), p(&[2, -3, 1]));
        let q = p(&[2, -3, 1]);
        assert!((&q - &q).is_zero());
        assert_eq!(&q * &IntPolynomial::one(), q);
        assert_eq!(q.scale(&BigInt::from(-2)), p(&[-4, 6, -2]));
        assert_eq!(&q + &p(&[0, 3, -1]), p(&[2]));
        assert_eq!(-&q, p(&[-2, 3, -1]));
    }

    #[test]
    fn canonical_form_trims() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[0, 0]), IntPolynomial::zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn eval_examples() {
        let c3 = p(&[-6, 11, -6, 1]);
        assert_eq!(c3.eval_u64(4), BigInt::from(6));
        assert_eq!(c3.eval_u64(0), BigInt::from(-6));
        assert_eq!(IntPolynomial::zero().eval_u64(17), BigInt::zero());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p(&[0, 0, 1]).shift(1), p(&[1, -2, 1]));
        let q = p(&[2, -3, 1]);
        assert_eq!(q.shift(0), q);
        assert_eq!(q.shift(1), p(&[6, -5, 1]));
    }

    #[test]
    fn compare_examples() {
        let q = p(&[2, -3, 1]);
        assert_eq!(q.compare_eventually(&q), Eventually::Equal);
        assert_eq!(p(&[0, 0, 1]).compare_eventually(&p(&[100, 50])), Eventually::PWins);
        assert_eq!(p(&[100, 50]).compare_eventually(&p(&[0, 0, 1])), Eventually::QWins);
    }

    #[test]
    fn elementary_symmetric_examples() {
        assert_eq!(elementary_symmetric(&[1, 1, 2], 1).unwrap(), BigInt::from(4));
        assert_eq!(elementary_symmetric(&[1, 1, 2], 0).unwrap(), BigInt::one());
        assert_eq!(elementary_symmetric(&[], 0).unwrap(), BigInt::one());
        assert_eq!(elementary_symmetric(&[1, 1, 2], 2).unwrap(), BigInt::from(5));
        assert_eq!(elementary_symmetric(&[1, 1, 2], 3).unwrap(), BigInt::from(2));
        assert!(elementary_symmetric(&[1, 1, 2], 4).is_err());
    }

    #[test]
    fn rendering() {
        let c3 = p(&[-6, 11, -6, 1]);
        assert_eq!(c3.to_string(), "x^3 - 6x^2 + 11x - 6");
        assert_eq!(c3.to_vector_string(), "[-6, 11, -6, 1]");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(p(&[1]).to_string(), "1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(c3.to_json(), serde_json::json!(["-6", "11", "-6", "1"]));
        assert_eq!(IntPolynomial::from_json(&c3.to_json()).unwrap(), c3);
        assert_eq!("[-6, 11, -6, 1]".parse::<IntPolynomial>().unwrap(), c3);
        assert_eq!("[]".parse::<IntPolynomial>().unwrap(), IntPolynomial::zero());
        assert!("-6, 11".parse::<IntPolynomial>().is_err());
    }
}
