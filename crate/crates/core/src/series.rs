//! Truncated formal power series.
//!
//! A `TruncatedSeries` stores the dense coefficient vector `c_0 ... c_N` of a
//! series known exactly through degree `N` (the *order*). Everything here is
//! plain formal-series algebra; in rational mode results are exact, which is
//! what makes this module the oracle for every closed-form coefficient
//! formula in [`crate::functionals`].
//!
//! Order bookkeeping:
//! - binary operations truncate to the smaller order of the two operands;
//! - `integrate` and `mul_z` raise the order by one (the new information is
//!   genuinely determined by the input);
//! - `differentiate` and `div_z` lower it by one.

use crate::caratheodory::CaratheodorySequence;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    /// Series from the dense coefficient vector `c_0 ... c_N`.
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![T::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(T::one(), 0, order)
    }

    /// `c * z^k` truncated at `order`.
    pub fn monomial(c: T, k: usize, order: usize) -> Self {
        assert!(k <= order, "monomial degree exceeds order");
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    /// The identity series `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(T::one(), 1, order)
    }

    /// Truncation degree `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`; `None` beyond the truncation degree.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Drop information above `order`.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot extend a series beyond its known order"
        );
        Self::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(coeffs)
    }

    /// Division; the divisor must have a nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() {
            return Err(Error::SingularDivision);
        }
        let n = self.order().min(rhs.order());
        let mut out: Vec<T> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                acc = acc - rhs.coeffs[k].clone() * out[m - k].clone();
            }
            out.push(acc / b0.clone());
        }
        Ok(Self::from_coeffs(out))
    }

    /// Formal exponential; requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm {
                expected: "0",
                found: format!("{:?}", self.coeffs[0]),
            });
        }
        let n = self.order();
        let mut e = vec![T::zero(); n + 1];
        e[0] = T::one();
        // m e_m = sum_{k=1..m} k s_k e_{m-k}, from e' = s' e.
        for m in 1..=n {
            let mut acc = T::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + T::from_int(k as i64) * self.coeffs[k].clone() * e[m - k].clone();
            }
            e[m] = acc * T::from_ratio(1, m as i64);
        }
        Ok(Self::from_coeffs(e))
    }

    /// Formal logarithm; requires constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm {
                expected: "1",
                found: format!("{:?}", self.coeffs[0]),
            });
        }
        let n = self.order();
        let mut l = vec![T::zero(); n + 1];
        // m s_m = sum_{k=1..m} k l_k s_{m-k}, from s' = s l'.
        for m in 1..=n {
            let mut acc = T::from_int(m as i64) * self.coeffs[m].clone();
            for (k, lk) in l.iter().enumerate().take(m).skip(1) {
                if lk.is_zero() {
                    continue;
                }
                acc = acc - T::from_int(k as i64) * lk.clone() * self.coeffs[m - k].clone();
            }
            l[m] = acc * T::from_ratio(1, m as i64);
        }
        Ok(Self::from_coeffs(l))
    }

    /// Antiderivative with integration constant zero; order rises by one.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c.clone() * T::from_ratio(1, (k + 1) as i64));
        }
        Self::from_coeffs(out)
    }

    /// Formal derivative; order drops by one.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| T::from_int(k as i64) * c.clone())
            .collect();
        Self::from_coeffs(out)
    }

    /// Multiply by `z`; order rises by one.
    pub fn mul_z(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(T::zero());
        out.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(out)
    }

    /// Divide by `z`; requires zero constant term, order drops by one.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm {
                expected: "0",
                found: format!("{:?}", self.coeffs[0]),
            });
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_coeffs(self.coeffs[1..].to_vec()))
    }

    /// Composition `self(inner)`; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm {
                expected: "0",
                found: format!("{:?}", inner.coeffs[0]),
            });
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncated(n);
        // Horner from the top coefficient down.
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Substitute `z -> z^stride`, truncating at `order`.
    pub fn dilate(&self, stride: usize, order: usize) -> Self {
        assert!(stride >= 1);
        assert!(
            order / stride <= self.order(),
            "dilation needs source coefficients through degree {}",
            order / stride
        );
        let mut out = vec![T::zero(); order + 1];
        for k in 0..=(order / stride) {
            out[k * stride] = self.coeffs[k].clone();
        }
        Self::from_coeffs(out)
    }
}

/// `(f(z^n))^{1/n}` for a normalized series `f = z + ...`, computed as
/// `z * (g(z^n))^{1/n}` with `g = f/z`, `g(0) = 1` (principal branch).
///
/// Only exponents congruent to 1 mod `n` survive in the result.
pub fn nfold_root<T: Scalar>(f: &TruncatedSeries<T>, n: usize) -> Result<TruncatedSeries<T>> {
    if n == 0 {
        return Err(Error::Domain("fold order must be at least 1".into()));
    }
    let g = f.div_z()?;
    if !g.coeffs[0].is_one() {
        return Err(Error::BranchPoint {
            found: format!("{:?}", g.coeffs[0]),
        });
    }
    let root = g.log()?.scale(&T::from_ratio(1, n as i64)).exp()?;
    Ok(root.dilate(n, f.order() - 1).mul_z())
}

/// The cardioid generator `1 + z e^z` as a series: `c_0 = 1`,
/// `c_k = 1/(k-1)!` for `k >= 1`.
pub fn phi_cardioid<T: Scalar>(order: usize) -> TruncatedSeries<T> {
    let mut coeffs = vec![T::zero(); order + 1];
    coeffs[0] = T::one();
    let mut factorial = T::one();
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        if k >= 2 {
            factorial = factorial * T::from_int((k - 1) as i64);
        }
        *c = T::one() / factorial.clone();
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// The half-plane generator `(1+z)/(1-z) = 1 + 2z + 2z^2 + ...`.
pub fn phi_koebe<T: Scalar>(order: usize) -> TruncatedSeries<T> {
    let mut coeffs = vec![T::from_int(2); order + 1];
    coeffs[0] = T::one();
    TruncatedSeries::from_coeffs(coeffs)
}

/// Generator from its first three coefficients `1 + B1 z + B2 z^2 + B3 z^3`.
pub fn phi_from_coeffs<T: Scalar>(b1: T, b2: T, b3: T, order: usize) -> TruncatedSeries<T> {
    assert!(order >= 3);
    let mut coeffs = vec![T::zero(); order + 1];
    coeffs[0] = T::one();
    coeffs[1] = b1;
    coeffs[2] = b2;
    coeffs[3] = b3;
    TruncatedSeries::from_coeffs(coeffs)
}

/// The starlike function generated by a Caratheodory function `p` and a
/// generator `phi`:
///
/// `f(z) = z exp( int_0^z (phi(w(t)) - 1) / t dt )`, `w = (p-1)/(p+1)`.
///
/// This is the oracle for every closed-form coefficient formula: `f` solves
/// `z f'/f = phi(w(z))`.
pub fn starlike_from_caratheodory<T: Scalar>(
    p: &TruncatedSeries<T>,
    phi: &TruncatedSeries<T>,
    order: usize,
) -> Result<TruncatedSeries<T>> {
    assert!(order >= 1);
    if p.order() < order || phi.order() < order {
        return Err(Error::IndexOutOfRange {
            index: order,
            len: p.order().min(phi.order()),
        });
    }
    let p = p.truncated(order);
    let phi = phi.truncated(order);
    let one = TruncatedSeries::one(order);
    let omega = p.sub(&one).div(&p.add(&one))?;
    let integrand = phi.compose(&omega)?.sub(&one);
    let log_f = integrand.div_z()?.integrate();
    Ok(log_f.exp()?.mul_z().truncated(order))
}

/// Same oracle, driven directly by a coefficient sequence `p = 1 + sum p_n z^n`.
pub fn starlike_from_sequence<T: Scalar>(
    seq: &CaratheodorySequence<T>,
    phi: &TruncatedSeries<T>,
    order: usize,
) -> Result<TruncatedSeries<T>> {
    starlike_from_caratheodory(&seq.to_series(order)?, phi, order)
}

/// Exact coefficients of `z exp((e^{z^3} - 1)/3)`, the function attaining
/// `|H_3(1)| = 1/9`: `a_2 = a_3 = a_5 = a_6 = 0`, `a_4 = 1/3`, `a_7 = 2/9`.
pub fn extremal_series<T: Scalar>(order: usize) -> TruncatedSeries<T> {
    assert!(order >= 1);
    let inner_order = order - 1;
    // (e^{z^3} - 1)/3 = sum_{k>=1} z^{3k} / (3 k!)
    let mut arg = vec![T::zero(); inner_order + 1];
    let mut factorial = T::one();
    let mut k = 1usize;
    while 3 * k <= inner_order {
        factorial = factorial * T::from_int(k as i64);
        arg[3 * k] = T::from_ratio(1, 3) / factorial.clone();
        k += 1;
    }
    TruncatedSeries::from_coeffs(arg)
        .exp()
        .expect("zero constant term by construction")
        .mul_z()
}
