//! Closed-form coefficient functionals.
//!
//! `coeffs_wp` evaluates the initial Taylor coefficients `a_2 ... a_7` of a
//! starlike function generated by the cardioid generator `1 + z e^z` directly
//! from the Caratheodory coefficients `p_1 ... p_6`. Hankel determinants,
//! the fourth-determinant decomposition, Ma-Minda recursion coefficients and
//! the 2-/3-fold symmetric bounds all live here. Every formula has an
//! independent series-engine oracle exercised by the test suites.

use crate::caratheodory::CaratheodorySequence;
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};
use crate::series::TruncatedSeries;

/// Taylor coefficients `a_1 ... a_7` with `a_1 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector<T: Scalar> {
    a: [T; 7],
}

impl<T: Scalar> CoeffVector<T> {
    pub fn new(a2: T, a3: T, a4: T, a5: T, a6: T, a7: T) -> Self {
        Self {
            a: [T::one(), a2, a3, a4, a5, a6, a7],
        }
    }

    /// `a_n` for `1 <= n <= 7`.
    pub fn a(&self, n: usize) -> Result<&T> {
        if n == 0 || n > 7 {
            return Err(Error::MissingCoefficient { needed: n, have: 7 });
        }
        Ok(&self.a[n - 1])
    }

    /// Extract `a_1 ... a_7` from a normalized series `f = z + ...`.
    pub fn from_series(f: &TruncatedSeries<T>) -> Result<Self> {
        if f.order() < 7 {
            return Err(Error::MissingCoefficient {
                needed: 7,
                have: f.order(),
            });
        }
        Ok(Self {
            a: [
                f.coeff(1).unwrap().clone(),
                f.coeff(2).unwrap().clone(),
                f.coeff(3).unwrap().clone(),
                f.coeff(4).unwrap().clone(),
                f.coeff(5).unwrap().clone(),
                f.coeff(6).unwrap().clone(),
                f.coeff(7).unwrap().clone(),
            ],
        })
    }
}

/// The coefficients of the cardioid-starlike function attached to a
/// Caratheodory sequence:
///
/// ```text
/// a2 = p1/2
/// a3 = (p2 + p1^2/2)/4
/// a4 = (p3 + 3 p1 p2 / 4)/6
/// a5 = (p1^4/48 + p2^2/4 + 2 p1 p3/3 - p1^2 p2/8 + p4)/8
/// a6 = (-p1^5/240 + 19 p1^3 p2/480 - 7 p1 p2^2/80 - p1^2 p3/15
///        + p2 p3/6 + p1 p4/4 + 2 p5/5)/4
/// a7 = (17 p1^6/11520 - 37 p1^4 p2/1920 + 29 p1^2 p2^2/480 - p2^3/32
///        + 13 p1^3 p3/360 - p1 p2 p3/6 + p3^2/18 - p1^2 p4/16 + p2 p4/8
///        + p1 p5/5 + p6/3)/4
/// ```
pub fn coeffs_wp<T: Scalar>(seq: &CaratheodorySequence<T>) -> Result<CoeffVector<T>> {
    if seq.len() < 6 {
        return Err(Error::MissingCoefficient {
            needed: 6,
            have: seq.len(),
        });
    }
    let r = T::from_ratio;
    let p1 = seq.pn(1)?.clone();
    let p2 = seq.pn(2)?.clone();
    let p3 = seq.pn(3)?.clone();
    let p4 = seq.pn(4)?.clone();
    let p5 = seq.pn(5)?.clone();
    let p6 = seq.pn(6)?.clone();

    let p1_2 = p1.clone() * p1.clone();
    let p1_3 = p1_2.clone() * p1.clone();
    let p1_4 = p1_3.clone() * p1.clone();
    let p1_5 = p1_4.clone() * p1.clone();
    let p1_6 = p1_5.clone() * p1.clone();
    let p2_2 = p2.clone() * p2.clone();

    let a2 = p1.clone() * r(1, 2);
    let a3 = (p2.clone() + p1_2.clone() * r(1, 2)) * r(1, 4);
    let a4 = (p3.clone() + p1.clone() * p2.clone() * r(3, 4)) * r(1, 6);
    let a5 = (p1_4.clone() * r(1, 48)
        + p2_2.clone() * r(1, 4)
        + p1.clone() * p3.clone() * r(2, 3)
        - p1_2.clone() * p2.clone() * r(1, 8)
        + p4.clone())
        * r(1, 8);
    let a6 = (-(p1_5 * r(1, 240))
        + p1_3.clone() * p2.clone() * r(19, 480)
        - p1.clone() * p2_2.clone() * r(7, 80)
        - p1_2.clone() * p3.clone() * r(1, 15)
        + p2.clone() * p3.clone() * r(1, 6)
        + p1.clone() * p4.clone() * r(1, 4)
        + p5.clone() * r(2, 5))
        * r(1, 4);
    let a7 = (p1_6 * r(17, 11520)
        - p1_4 * p2.clone() * r(37, 1920)
        + p1_2.clone() * p2_2.clone() * r(29, 480)
        - p2_2.clone() * p2.clone() * r(1, 32)
        + p1_3 * p3.clone() * r(13, 360)
        - p1.clone() * p2.clone() * p3.clone() * r(1, 6)
        + p3.clone() * p3.clone() * r(1, 18)
        - p1_2 * p4.clone() * r(1, 16)
        + p2 * p4 * r(1, 8)
        + p1 * p5 * r(1, 5)
        + p6 * r(1, 3))
        * r(1, 4);

    Ok(CoeffVector::new(a2, a3, a4, a5, a6, a7))
}

fn det<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = T::zero();
    for (j, pivot) in m[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = pivot.clone() * det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Hankel determinant `H_q(n)`: determinant of the `q x q` matrix
/// `[a_{n+i+j}]`, `i, j = 0 .. q-1`.
pub fn hankel_det<T: Scalar>(c: &CoeffVector<T>, q: usize, n: usize) -> Result<T> {
    if q == 0 || n == 0 {
        return Err(Error::Domain("q and n must be at least 1".into()));
    }
    let needed = n + 2 * (q - 1);
    if needed > 7 {
        return Err(Error::MissingCoefficient { needed, have: 7 });
    }
    let m: Vec<Vec<T>> = (0..q)
        .map(|i| (0..q).map(|j| c.a(n + i + j).unwrap().clone()).collect())
        .collect();
    Ok(det(&m))
}

/// The three 3x3 minors appearing in the bottom-row expansion of `H_4(1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QTriple<T: Scalar> {
    pub q1: T,
    pub q2: T,
    pub q3: T,
}

/// Expansion of the fourth Hankel determinant along its bottom row:
///
/// `H_4(1) = a7 H_3(1) - a6 Q1 + a5 Q2 - a4 Q3`
///
/// with
///
/// ```text
/// Q1 = a3 (a2 a5 - a3 a4) - a4 (a5 - a2 a4) + a6 (a3 - a2^2)
/// Q2 = a3 (a3 a5 - a4^2) - a5 (a5 - a2 a4) + a6 (a4 - a2 a3)
/// Q3 = a4 (a3 a5 - a4^2) - a5 (a2 a5 - a3 a4) + a6 (a2 a4 - a3^2)
/// ```
///
/// The last factor of `Q3` is `a2 a4 - a3^2`; it is the cofactor of the
/// `(4,1)` entry, and with it the decomposition reproduces the 4x4
/// determinant identically.
pub fn h4_decomposition<T: Scalar>(c: &CoeffVector<T>) -> Result<(QTriple<T>, T)> {
    let a2 = c.a(2)?.clone();
    let a3 = c.a(3)?.clone();
    let a4 = c.a(4)?.clone();
    let a5 = c.a(5)?.clone();
    let a6 = c.a(6)?.clone();
    let a7 = c.a(7)?.clone();

    let q1 = a3.clone() * (a2.clone() * a5.clone() - a3.clone() * a4.clone())
        - a4.clone() * (a5.clone() - a2.clone() * a4.clone())
        + a6.clone() * (a3.clone() - a2.clone() * a2.clone());
    let q2 = a3.clone() * (a3.clone() * a5.clone() - a4.clone() * a4.clone())
        - a5.clone() * (a5.clone() - a2.clone() * a4.clone())
        + a6.clone() * (a4.clone() - a2.clone() * a3.clone());
    let q3 = a4.clone() * (a3.clone() * a5.clone() - a4.clone() * a4.clone())
        - a5.clone() * (a2.clone() * a5.clone() - a3.clone() * a4.clone())
        + a6.clone() * (a2.clone() * a4.clone() - a3.clone() * a3.clone());

    let h3 = hankel_det(c, 3, 1)?;
    let h4 = a7 * h3 - a6 * q1.clone() + a5 * q2.clone() - a4 * q3.clone();
    Ok((QTriple { q1, q2, q3 }, h4))
}

/// First coefficients `B_1, B_2, B_3` of a Ma-Minda generator
/// `phi(z) = 1 + B_1 z + B_2 z^2 + B_3 z^3 + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct MindaPhi<T: Scalar> {
    pub b1: T,
    pub b2: T,
    pub b3: T,
}

impl<T: Scalar> MindaPhi<T> {
    pub fn new(b1: T, b2: T, b3: T) -> Self {
        Self { b1, b2, b3 }
    }

    /// `1 + z e^z`.
    pub fn cardioid() -> Self {
        Self::new(T::one(), T::one(), T::from_ratio(1, 2))
    }

    /// `(1+z)/(1-z)`.
    pub fn koebe() -> Self {
        Self::new(T::from_int(2), T::from_int(2), T::from_int(2))
    }
}

/// Coefficients produced by the subordination recursion for a generic
/// generator.
#[derive(Clone, Debug, PartialEq)]
pub struct MaMindaCoeffs<T: Scalar> {
    pub b1: T,
    pub b2: T,
    pub b3: T,
    pub a2: T,
    pub a3: T,
}

/// With `z f'/f = 1 + b_1 z + b_2 z^2 + ...` subordinate to `phi` and
/// `p_1(z) = 1 + c_1 z + ...` the attached Caratheodory function:
///
/// ```text
/// b1 = B1 c1 / 2
/// b2 = ((B2 - B1) c1^2 + 2 B1 c2)/4
/// b3 = ((B1 - 2 B2 + B3) c1^3 + 4 (B2 - B1) c1 c2 + 4 B1 c3)/8
/// a2 = b1
/// a3 = ((B1^2 - B1 + B2) c1^2 + 2 B1 c2)/8
/// ```
///
/// consistent with the recursion `(n-1) a_n = sum_k b_k a_{n-k}`.
pub fn maminda_coeffs<T: Scalar>(phi: &MindaPhi<T>, c1: T, c2: T, c3: T) -> MaMindaCoeffs<T> {
    let r = T::from_ratio;
    let b1cap = phi.b1.clone();
    let b2cap = phi.b2.clone();
    let b3cap = phi.b3.clone();

    let c1_2 = c1.clone() * c1.clone();
    let b1 = b1cap.clone() * c1.clone() * r(1, 2);
    let b2 = ((b2cap.clone() - b1cap.clone()) * c1_2.clone()
        + T::from_int(2) * b1cap.clone() * c2.clone())
        * r(1, 4);
    let b3 = ((b1cap.clone() - T::from_int(2) * b2cap.clone() + b3cap) * c1_2.clone() * c1.clone()
        + T::from_int(4) * (b2cap.clone() - b1cap.clone()) * c1.clone() * c2.clone()
        + T::from_int(4) * b1cap.clone() * c3)
        * r(1, 8);
    let a2 = b1.clone();
    let a3 = ((b1cap.clone() * b1cap.clone() - b1cap.clone() + b2cap) * c1_2
        + T::from_int(2) * b1cap * c2)
        * r(1, 8);
    MaMindaCoeffs { b1, b2, b3, a2, a3 }
}

/// Symmetry order of the n-fold transforms handled in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fold {
    Two,
    Three,
}

/// `H_3(1)` of the n-fold symmetrization `(f(z^n))^{1/n}`:
///
/// * 2-fold: `alpha_3 (alpha_5 - alpha_3^2)` with `alpha_3 = a_2/2`,
///   `alpha_5 = a_3/2 - a_2^2/8`;
/// * 3-fold: `-beta_4^2` with `beta_4 = a_2/3`.
pub fn nfold_h3<T: Scalar>(c: &CoeffVector<T>, fold: Fold) -> Result<T> {
    let a2 = c.a(2)?.clone();
    match fold {
        Fold::Two => {
            let a3 = c.a(3)?.clone();
            let alpha3 = a2.clone() * T::from_ratio(1, 2);
            let alpha5 = a3 * T::from_ratio(1, 2) - a2.clone() * a2 * T::from_ratio(1, 8);
            Ok(alpha3.clone() * (alpha5 - alpha3.clone() * alpha3))
        }
        Fold::Three => {
            let beta4 = a2 * T::from_ratio(1, 3);
            Ok(-(beta4.clone() * beta4))
        }
    }
}

/// Bound on `|H_3(1)|` over 3-fold symmetric members: `B_1^2 / 9`. Sharp.
pub fn threefold_bound<R: RealScalar>(phi: &MindaPhi<R>) -> R {
    phi.b1.clone() * phi.b1.clone() * R::from_ratio(1, 9)
}

/// Bound on `|H_3(1)|` over 2-fold symmetric members, `(B_1/4)` times a
/// three-case value selected by comparing `9 B_1^2 / 4` against
/// `2 (B_2 + B_1^2 -/+ B_1)`; the middle case value is `B_1/6` and the outer
/// values `(B_2 - B_1^2/8)/6` and `(B_1^2/8 - B_2)/6` agree with it at the
/// seams. Requires `B_1 > 0`; ties resolve to the middle case.
pub fn twofold_bound<R: RealScalar>(phi: &MindaPhi<R>) -> Result<R> {
    let b1 = phi.b1.clone();
    let b2 = phi.b2.clone();
    if b1 <= R::zero() {
        return Err(Error::Domain("case selection requires B1 > 0".into()));
    }
    let b1sq = b1.clone() * b1.clone();
    let pivot = b1sq.clone() * R::from_ratio(9, 4);
    let low = (b2.clone() + b1sq.clone() - b1.clone()) * R::from_int(2);
    let high = (b2.clone() + b1sq.clone() + b1.clone()) * R::from_int(2);

    let sixth = R::from_ratio(1, 6);
    let case_value = if pivot < low {
        (b2 - b1sq * R::from_ratio(1, 8)) * sixth
    } else if pivot <= high {
        b1.clone() * sixth
    } else {
        (b1sq * R::from_ratio(1, 8) - b2) * sixth
    };
    Ok(b1 * R::from_ratio(1, 4) * case_value)
}
