//! Exact integer polynomials and the Faddeev–LeVerrier recurrence.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph for which exact characteristic polynomials are computed by default.
pub const EXACT_POLY_LIMIT: usize = 64;

/// Polynomial with arbitrary-precision integer coefficients; `coeffs[r]` multiplies `x^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial has no coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^r` (zero past the degree).
    pub fn coeff(&self, r: usize) -> BigInt {
        self.coeffs.get(r).cloned().unwrap_or_default()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(r, c)| c * BigInt::from(r)).collect())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs_f64().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|r| self.coeff(r) + rhs.coeff(r)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(IntPolynomial::new(vec![]), |acc, p| &acc + &p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (r, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{r}")?,
                (_, false) => write!(f, "{mag}x^{r}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Exact `c_A(x) = det(A - xI)` for graphs up to [`EXACT_POLY_LIMIT`] nodes.
pub fn char_poly_exact(g: &Graph) -> Result<IntPolynomial> {
    char_poly_exact_limit(g, EXACT_POLY_LIMIT)
}

/// [`char_poly_exact`] with an explicit size limit.
///
/// Faddeev–LeVerrier on `p(x) = det(xI - A)`: with `M_0 = 0` and `c_n = 1`,
/// `M_k = A M_{k-1} + c_{n-k+1} I` and `c_{n-k} = -tr(A M_k) / k`; every
/// division is exact over the integers. The result is `(-1)^n p(x)`.
pub fn char_poly_exact_limit(g: &Graph, limit: usize) -> Result<IntPolynomial> {
    let n = g.n();
    if n > limit {
        return Err(Error::SizeLimit { n, limit });
    }
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&l| g.adj0(i, l)).collect()).collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for &l in &nbrs[i] {
                for j in 0..n {
                    next[i * n + j] += &m[l * n + j];
                }
            }
            next[i * n + i] += &c[n - k + 1];
        }
        // tr(A M_k) = sum_i sum_{l ~ i} (M_k)_{l i}
        let mut tr = BigInt::zero();
        for i in 0..n {
            for &l in &nbrs[i] {
                tr += &next[l * n + i];
            }
        }
        let kk = BigInt::from(k);
        debug_assert!((&tr % &kk).is_zero());
        c[n - k] = -(tr / kk);
        m = next;
    }
    if n % 2 == 1 {
        for v in c.iter_mut() {
            *v = -&*v;
        }
    }
    Ok(IntPolynomial::new(c))
}

/// Coefficients of `q(x) = p(x) / (x - root)` for monic-direction synthetic division
/// in floating point; `coeffs` ascending, the remainder is discarded.
pub fn deflate(coeffs: &[f64], root: f64) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    let mut q = vec![0.0; deg];
    let mut carry = 0.0;
    for r in (1..=deg).rev() {
        carry = coeffs[r] + carry * root;
        q[r - 1] = carry;
    }
    q
}
