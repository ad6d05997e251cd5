//! The algebraic objects behind the cuboid maximization: the scaled third
//! Hankel determinant as a polynomial in `p_1 ... p_4`, its unit-disk
//! parameter decomposition, the majorant surface `B(p, x, y)` on
//! `V = [0,2] x [0,1] x [0,1]`, and the face/edge restrictions used in the
//! case analysis.
//!
//! Every evaluator is generic over [`Ring`], so the exact rational, floating
//! and interval paths all share one coefficient table.

use std::fmt;
use std::str::FromStr;

use crate::caratheodory::{lz_expand, LzParams};
use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Ring, Scalar};

/// Monomials of `9216 * H_3(1)` in `(p_1, p_2, p_3, p_4)`, exponents listed
/// per variable. Frozen from exact symbolic expansion of the determinant
/// through the closed-form coefficients; the expansion is re-derived
/// independently in the test suite.
pub const H3_NUMERATOR_MONOMIALS: [(i64, [u8; 4]); 9] = [
    (-21, [6, 0, 0, 0]),
    (60, [4, 1, 0, 0]),
    (96, [3, 0, 1, 0]),
    (192, [1, 1, 1, 0]),
    (-144, [2, 2, 0, 0]),
    (-144, [2, 0, 0, 1]),
    (-72, [0, 3, 0, 0]),
    (-256, [0, 0, 2, 0]),
    (288, [0, 1, 0, 1]),
];

/// Scale of the frozen numerator table.
pub const H3_DENOMINATOR: i64 = 9216;

/// Human-readable form of the frozen polynomial.
pub fn h3_polynomial_string() -> String {
    let names = ["p1", "p2", "p3", "p4"];
    let mut out = String::from("9216*H3 =");
    for (i, (coeff, exps)) in H3_NUMERATOR_MONOMIALS.iter().enumerate() {
        let sign = if *coeff < 0 {
            " - "
        } else if i == 0 {
            " "
        } else {
            " + "
        };
        out.push_str(sign);
        out.push_str(&coeff.abs().to_string());
        for (name, &e) in names.iter().zip(exps.iter()) {
            match e {
                0 => {}
                1 => out.push_str(&format!("*{name}")),
                _ => out.push_str(&format!("*{name}^{e}")),
            }
        }
    }
    out
}

fn pow<R: Ring>(base: &R, exp: u8) -> R {
    let mut acc = R::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// `H_3(1)` evaluated from Caratheodory coefficients through the frozen
/// polynomial table.
pub fn h3_poly<R: Ring>(p1: &R, p2: &R, p3: &R, p4: &R) -> R {
    let vars = [p1, p2, p3, p4];
    let mut acc = R::zero();
    for (coeff, exps) in H3_NUMERATOR_MONOMIALS.iter() {
        let mut term = R::from_int(*coeff);
        for (var, &e) in vars.iter().zip(exps.iter()) {
            if e > 0 {
                term = term * pow(*var, e);
            }
        }
        acc = acc + term;
    }
    acc * R::from_ratio(1, H3_DENOMINATOR)
}

/// `H_3(1)` as a function of the unit-disk parameters, through the
/// coefficient parametrization.
pub fn h3_from_lz<T: Scalar>(params: &LzParams<T>) -> Result<T> {
    let (p2, p3, p4) = lz_expand(params)?;
    Ok(h3_poly(&params.p, &p2, &p3, &p4))
}

/// The decomposition `9216 H_3 = nu1 + nu2 eta + nu3 eta^2 + phi rho`, with
/// the `eta`/`rho` dependence isolated. Returned in that order.
///
/// `nu2` here carries the monomial `-Q p gamma^2` (coefficient one); the
/// surface term `b2` majorizes it with coefficient ten, so the majorant is
/// unaffected.
pub fn nu_decomposition<T: Scalar>(p: &T, gamma: &T) -> (T, T, T) {
    let g = gamma.clone();
    let psq = p.clone() * p.clone();
    let p3 = psq.clone() * p.clone();
    let p4 = psq.clone() * psq.clone();
    let p6 = p4.clone() * psq.clone();
    let q = T::from_int(4) - psq.clone();
    let qsq = q.clone() * q.clone();
    let g2 = g.clone() * g.clone();
    let g3 = g2.clone() * g.clone();
    let g4 = g3.clone() * g.clone();
    let one_m_g2 = T::one() - gamma.modulus_sq();

    let nu1 = -(p6 * T::from_int(4))
        + p4.clone() * q.clone() * g.clone() * T::from_int(5)
        - p4 * q.clone() * g2.clone() * T::from_int(16)
        - psq.clone() * qsq.clone() * g2 * T::from_int(25)
        - psq.clone() * qsq.clone() * g3.clone() * T::from_int(5)
        + psq.clone() * qsq.clone() * g4 * T::from_int(2)
        + qsq.clone() * g3 * T::from_int(36);

    let nu2 = T::from_int(8)
        * one_m_g2.clone()
        * q.clone()
        * (p3 * T::from_int(4) - q.clone() * (p.clone() * g.clone() + p.clone() * g.clone() * g));

    let nu3 = -(T::from_int(8) * one_m_g2 * qsq * (T::from_int(8) + gamma.modulus_sq()));

    (nu1, nu2, nu3)
}

/// Coefficient of `rho` in the decomposition.
pub fn nu_rho_coefficient<T: Scalar>(p: &T, gamma: &T, eta: &T) -> T {
    let q = T::from_int(4) - p.clone() * p.clone();
    T::from_int(72)
        * (T::one() - gamma.modulus_sq())
        * q.clone()
        * q
        * (T::one() - eta.modulus_sq())
        * gamma.clone()
}

/// `b_1(p, x)`: the `eta`-free part of the majorant numerator.
pub fn b1<R: Ring>(p: &R, x: &R) -> R {
    let psq = p.clone() * p.clone();
    let p4 = psq.clone() * psq.clone();
    let p6 = p4.clone() * psq.clone();
    let q = R::from_int(4) - psq.clone();
    let qsq = q.clone() * q.clone();
    let x2 = x.clone() * x.clone();
    let x3 = x2.clone() * x.clone();
    let x4 = x3.clone() * x.clone();

    p6 * R::from_int(4)
        + psq.clone() * x2.clone() * qsq.clone() * R::from_int(25)
        + psq.clone() * x3.clone() * qsq.clone() * R::from_int(5)
        + psq * x4 * qsq.clone() * R::from_int(2)
        + p4.clone() * x.clone() * q.clone() * R::from_int(5)
        + x3 * qsq * R::from_int(36)
        + p4 * x2 * q * R::from_int(16)
}

/// `b_2(p, x)`: coefficient of `y`.
pub fn b2<R: Ring>(p: &R, x: &R) -> R {
    let psq = p.clone() * p.clone();
    let p3 = psq.clone() * p.clone();
    let q = R::from_int(4) - psq;
    let x2 = x.clone() * x.clone();
    R::from_int(8)
        * (R::one() - x2.clone())
        * q.clone()
        * (p3 * R::from_int(4)
            + q * (p.clone() * x.clone() + p.clone() * x2 * R::from_int(10)))
}

/// `b_3(p, x)`: coefficient of `y^2`.
pub fn b3<R: Ring>(p: &R, x: &R) -> R {
    let q = R::from_int(4) - p.clone() * p.clone();
    let x2 = x.clone() * x.clone();
    R::from_int(8) * (R::one() - x2.clone()) * q.clone() * q * (R::from_int(8) + x2)
}

/// `b_4(p, x)`: coefficient of `1 - y^2`.
pub fn b4<R: Ring>(p: &R, x: &R) -> R {
    let q = R::from_int(4) - p.clone() * p.clone();
    let x2 = x.clone() * x.clone();
    R::from_int(72) * (R::one() - x2) * q.clone() * q * x.clone()
}

/// The majorant surface without domain checks; shared by the floating,
/// rational and interval paths. `b3_offset` perturbs the constant `8` inside
/// `b_3` and exists for fault-injection tests; it is zero in real use.
pub fn bound_b_unchecked<R: Ring>(p: &R, x: &R, y: &R, b3_offset: &R) -> R {
    let y2 = y.clone() * y.clone();
    let q = R::from_int(4) - p.clone() * p.clone();
    let x2 = x.clone() * x.clone();
    let b3_term = R::from_int(8)
        * (R::one() - x2.clone())
        * q.clone()
        * q
        * (R::from_int(8) + b3_offset.clone() + x2);
    (b1(p, x)
        + b2(p, x) * y.clone()
        + b3_term * y2.clone()
        + b4(p, x) * (R::one() - y2))
        * R::from_ratio(1, 9216)
}

fn check_unit<R: RealScalar>(name: &str, v: &R, hi: i64) -> Result<()> {
    if *v < R::zero() || *v > R::from_int(hi) {
        return Err(Error::Domain(format!(
            "{name} = {:?} outside [0, {hi}]",
            v.approx()
        )));
    }
    Ok(())
}

/// `B(p, x, y)` on the cuboid `V = [0,2] x [0,1] x [0,1]`; a pointwise upper
/// bound for `|H_3(1)|` after the triangle inequality, with `x = |gamma|`,
/// `y = |eta|`.
pub fn bound_b<R: RealScalar>(p: &R, x: &R, y: &R) -> Result<R> {
    check_unit("p", p, 2)?;
    check_unit("x", x, 1)?;
    check_unit("y", y, 1)?;
    Ok(bound_b_unchecked(p, x, y, &R::zero()))
}

/// Faces (`d1 ... d5`) and edges (`c1 ... c5`) of the cuboid analysis, as
/// printed in the case split. `restrict` evaluates the printed functions;
/// `embed` maps their parameters back into `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceEdge {
    /// Face `p = 0`, parameters `(x, y)`.
    D1,
    /// Face `x = 0`, parameters `(p, y)`.
    D2,
    /// Face `x = 1`, parameter `p` (the printed form is free of `y`).
    D3,
    /// Face `y = 0`, parameters `(p, x)`.
    D4,
    /// Face `y = 1`, parameters `(p, x)`.
    D5,
    /// Edge `x = 0, y = 0`, parameter `p`.
    C1,
    /// Edge `x = 0, y = 1`, parameter `p`.
    C2,
    /// Edges `x = 1, y in {0, 1}`, parameter `p`.
    C3,
    /// Edge `p = 0, y = 1`, parameter `x`.
    C4,
    /// Edge `p = 0, y = 0`, parameter `x`.
    C5,
}

impl FaceEdge {
    pub const ALL: [FaceEdge; 10] = [
        FaceEdge::D1,
        FaceEdge::D2,
        FaceEdge::D3,
        FaceEdge::D4,
        FaceEdge::D5,
        FaceEdge::C1,
        FaceEdge::C2,
        FaceEdge::C3,
        FaceEdge::C4,
        FaceEdge::C5,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            FaceEdge::D1 => "d1",
            FaceEdge::D2 => "d2",
            FaceEdge::D3 => "d3",
            FaceEdge::D4 => "d4",
            FaceEdge::D5 => "d5",
            FaceEdge::C1 => "c1",
            FaceEdge::C2 => "c2",
            FaceEdge::C3 => "c3",
            FaceEdge::C4 => "c4",
            FaceEdge::C5 => "c5",
        }
    }

    /// Number of free parameters.
    pub fn dim(&self) -> usize {
        match self {
            FaceEdge::D1 | FaceEdge::D2 | FaceEdge::D4 | FaceEdge::D5 => 2,
            _ => 1,
        }
    }

    /// Upper endpoints of the parameter domain (lower endpoints are zero).
    pub fn domain_upper(&self) -> Vec<i64> {
        match self {
            FaceEdge::D1 => vec![1, 1],
            FaceEdge::D2 => vec![2, 1],
            FaceEdge::D3 => vec![2],
            FaceEdge::D4 | FaceEdge::D5 => vec![2, 1],
            FaceEdge::C1 | FaceEdge::C2 | FaceEdge::C3 => vec![2],
            FaceEdge::C4 | FaceEdge::C5 => vec![1],
        }
    }

    /// The point of `V` the parameters embed to, as `(p, x, y)`.
    pub fn embed<R: Ring>(&self, params: &[R]) -> [R; 3] {
        let zero = R::zero;
        let one = R::one;
        match self {
            FaceEdge::D1 => [zero(), params[0].clone(), params[1].clone()],
            FaceEdge::D2 => [params[0].clone(), zero(), params[1].clone()],
            FaceEdge::D3 => [params[0].clone(), one(), zero()],
            FaceEdge::D4 => [params[0].clone(), params[1].clone(), zero()],
            FaceEdge::D5 => [params[0].clone(), params[1].clone(), one()],
            FaceEdge::C1 => [params[0].clone(), zero(), zero()],
            FaceEdge::C2 => [params[0].clone(), zero(), one()],
            FaceEdge::C3 => [params[0].clone(), one(), zero()],
            FaceEdge::C4 => [zero(), params[0].clone(), one()],
            FaceEdge::C5 => [zero(), params[0].clone(), zero()],
        }
    }
}

impl fmt::Display for FaceEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FaceEdge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FaceEdge::ALL
            .iter()
            .copied()
            .find(|fe| fe.id() == s)
            .ok_or_else(|| Error::UnknownIdentifier(s.to_string()))
    }
}

/// Evaluate the printed restriction without domain checks. The printed `c4`
/// and `c5` each omit the `x^3/16` contribution of the `p = 0` face, so they
/// sit below the faithful restriction of the surface; everything else equals
/// `bound_b` at the embedded point.
pub fn restrict_unchecked<R: Ring>(face: FaceEdge, params: &[R]) -> R {
    assert_eq!(params.len(), face.dim(), "wrong parameter count");
    let r = R::from_ratio;
    match face {
        FaceEdge::D1 => {
            let (x, y) = (params[0].clone(), params[1].clone());
            let x2 = x.clone() * x.clone();
            let y2 = y.clone() * y.clone();
            let x3 = x2.clone() * x.clone();
            (x3 * R::from_int(9)
                + R::from_int(2)
                    * (R::one() - x2.clone())
                    * ((R::from_int(8) + x2) * y2.clone()
                        + x * R::from_int(9) * (R::one() - y2)))
                * r(1, 144)
        }
        FaceEdge::D2 => {
            let (p, y) = (params[0].clone(), params[1].clone());
            let inner = p.clone() * p.clone() * p.clone() + y.clone() * R::from_int(16)
                - p.clone() * p.clone() * y.clone() * R::from_int(4);
            inner.clone() * inner * r(1, 2304)
        }
        FaceEdge::D3 | FaceEdge::C3 => {
            let p = params[0].clone();
            let psq = p.clone() * p.clone();
            let p4 = psq.clone() * psq.clone();
            let p6 = p4.clone() * psq.clone();
            (R::from_int(576) + psq * R::from_int(224) - p4 * R::from_int(136)
                + p6 * R::from_int(15))
                * r(1, 9216)
        }
        FaceEdge::D4 => {
            let (p, x) = (params[0].clone(), params[1].clone());
            let psq = p.clone() * p.clone();
            let p4 = psq.clone() * psq.clone();
            let p6 = p4.clone() * psq.clone();
            let x2 = x.clone() * x.clone();
            let x3 = x2.clone() * x.clone();
            let x4 = x3.clone() * x.clone();
            (p4 * x.clone()
                * (R::from_int(23) - x.clone() * R::from_int(34) - x2.clone() * R::from_int(19)
                    - x3.clone() * R::from_int(4))
                * R::from_int(4)
                + p6 * (R::from_int(4) - x.clone() * R::from_int(5) + x2.clone() * R::from_int(9)
                    + x3.clone() * R::from_int(5)
                    + x4 * R::from_int(2))
                + x.clone() * (R::from_int(2) - x2.clone()) * R::from_int(576)
                + psq
                    * x.clone()
                    * (-R::from_int(36) + x * R::from_int(25) + x2 * R::from_int(23)
                        + x3 * R::from_int(2))
                    * R::from_int(16))
                * r(1, 9216)
        }
        FaceEdge::D5 => {
            let (p, x) = (params[0].clone(), params[1].clone());
            let psq = p.clone() * p.clone();
            let p3 = psq.clone() * p.clone();
            let p4 = psq.clone() * psq.clone();
            let p5 = p4.clone() * p.clone();
            let p6 = p4.clone() * psq.clone();
            let x2 = x.clone() * x.clone();
            let x3 = x2.clone() * x.clone();
            let x4 = x3.clone() * x.clone();
            (p4 * (R::from_int(16) + x.clone() * R::from_int(5) - x2.clone() * R::from_int(48)
                - x3.clone()
                - x4.clone() * R::from_int(6))
                * R::from_int(4)
                - p5 * (R::from_int(4) - x.clone() - x2.clone() * R::from_int(14)
                    + x3.clone()
                    + x4.clone() * R::from_int(10))
                    * R::from_int(8)
                + p6 * (R::from_int(4) - x.clone() * R::from_int(5) + x2.clone() * R::from_int(9)
                    + x3.clone() * R::from_int(5)
                    + x4.clone() * R::from_int(2))
                + psq * (-R::from_int(32) + x2.clone() * R::from_int(53)
                    - x3.clone() * R::from_int(13)
                    + x4.clone() * R::from_int(6))
                    * R::from_int(16)
                + p3 * (R::from_int(2) - x.clone() - x2.clone() * R::from_int(12)
                    + x3.clone()
                    + x4.clone() * R::from_int(10))
                    * R::from_int(64)
                + p * x.clone()
                    * (R::one() + x.clone() * R::from_int(10) - x2.clone()
                        - x3.clone() * R::from_int(10))
                    * R::from_int(128)
                + (R::from_int(16) - x2 * R::from_int(14) + x3 * R::from_int(9)
                    - x4 * R::from_int(2))
                    * R::from_int(64))
                * r(1, 9216)
        }
        FaceEdge::C1 => {
            let p = params[0].clone();
            pow(&p, 6) * r(4, 9216)
        }
        FaceEdge::C2 => {
            let p = params[0].clone();
            let inner = R::from_int(16) - p.clone() * p.clone() * R::from_int(4)
                + p.clone() * p.clone() * p;
            inner.clone() * inner * r(1, 2304)
        }
        FaceEdge::C4 => {
            let x = params[0].clone();
            let x2 = x.clone() * x.clone();
            (R::from_int(8) - x2.clone() * R::from_int(7) - x2.clone() * x2) * r(1, 72)
        }
        FaceEdge::C5 => {
            let x = params[0].clone();
            let x2 = x.clone() * x.clone();
            x * (R::one() - x2) * r(1, 8)
        }
    }
}

/// Evaluate the printed restriction with domain checks.
pub fn restrict<R: RealScalar>(face: FaceEdge, params: &[R]) -> Result<R> {
    if params.len() != face.dim() {
        return Err(Error::Domain(format!(
            "{face} takes {} parameter(s), got {}",
            face.dim(),
            params.len()
        )));
    }
    for (v, hi) in params.iter().zip(face.domain_upper()) {
        check_unit("parameter", v, hi)?;
    }
    Ok(restrict_unchecked(face, params))
}

/// The faithful restriction: `B` itself at the embedded point.
pub fn bound_b_at_face<R: RealScalar>(face: FaceEdge, params: &[R]) -> Result<R> {
    if params.len() != face.dim() {
        return Err(Error::Domain(format!(
            "{face} takes {} parameter(s), got {}",
            face.dim(),
            params.len()
        )));
    }
    let [p, x, y] = face.embed(params);
    bound_b(&p, &x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caratheodory::CaratheodorySequence;
    use crate::functionals::{coeffs_wp, hankel_det};
    use crate::{CRat, Rat};
    use num_traits::{One, Zero};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(num: i64, den: i64) -> Rat {
        Rat::from_ratio(num, den)
    }

    fn crat(re: (i64, i64), im: (i64, i64)) -> CRat {
        CRat::new(Rat::from_ratio(re.0, re.1), Rat::from_ratio(im.0, im.1))
    }

    #[test]
    fn h3_poly_golden_points() {
        let z = Rat::zero();
        let two = Rat::from_int(2);
        assert_eq!(h3_poly(&z, &z, &two, &z), rat(-1, 9));
        assert_eq!(h3_poly(&two, &two, &two, &two), rat(-1, 36));
        assert_eq!(h3_poly(&z, &z, &z, &z), Rat::zero());
    }

    #[test]
    fn h3_poly_matches_determinant_through_closed_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..200 {
            let p: Vec<Rat> = (0..4)
                .map(|_| rat(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=6)))
                .collect();
            let seq = CaratheodorySequence::new(vec![
                p[0].clone(),
                p[1].clone(),
                p[2].clone(),
                p[3].clone(),
                Rat::zero(),
                Rat::zero(),
            ]);
            let det = hankel_det(&coeffs_wp(&seq).unwrap(), 3, 1).unwrap();
            let poly = h3_poly(&p[0], &p[1], &p[2], &p[3]);
            assert_eq!(det, poly);
        }
    }

    #[test]
    fn h3_from_lz_golden_points() {
        let params = LzParams::new(Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()).unwrap();
        assert_eq!(h3_from_lz(&params).unwrap(), rat(-1, 9));

        let params = LzParams::new(
            Rat::from_int(2),
            Rat::from_ratio(1, 2),
            Rat::from_ratio(-1, 3),
            Rat::from_ratio(2, 7),
        )
        .unwrap();
        assert_eq!(h3_from_lz(&params).unwrap(), rat(-1, 36));

        let params = LzParams::new(Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()).unwrap();
        assert!(h3_from_lz(&params).unwrap().is_zero());
    }

    #[test]
    fn nu_decomposition_reassembles_h3_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let p = CRat::new(rat(rng.gen_range(0i64..=8), 4), Rat::zero());
            let mut small = || {
                crat(
                    (rng.gen_range(-3i64..=3), 5),
                    (rng.gen_range(-3i64..=3), 5),
                )
            };
            let params = LzParams::new(p, small(), small(), small()).unwrap();
            let (nu1, nu2, nu3) = nu_decomposition(&params.p, &params.gamma);
            let phi = nu_rho_coefficient(&params.p, &params.gamma, &params.eta);
            let assembled = (nu1
                + nu2 * params.eta.clone()
                + nu3 * params.eta.clone() * params.eta.clone()
                + phi * params.rho.clone())
                * CRat::from_ratio(1, 9216);
            assert_eq!(assembled, h3_from_lz(&params).unwrap());
        }
    }

    #[test]
    fn bound_b_golden_points() {
        let one = Rat::one;
        let zero = Rat::zero;
        assert_eq!(
            bound_b(&Rat::from_int(2), &rat(1, 3), &rat(4, 7)).unwrap(),
            rat(1, 36)
        );
        assert_eq!(bound_b(&zero(), &zero(), &one()).unwrap(), rat(1, 9));
        assert_eq!(bound_b(&zero(), &one(), &rat(2, 5)).unwrap(), rat(1, 16));
    }

    #[test]
    fn bound_b_rejects_points_outside_the_cuboid() {
        assert!(bound_b(&rat(5, 2), &Rat::zero(), &Rat::zero()).is_err());
        assert!(bound_b(&Rat::one(), &rat(-1, 10), &Rat::zero()).is_err());
        assert!(bound_b(&Rat::one(), &Rat::zero(), &rat(11, 10)).is_err());
    }

    #[test]
    fn faces_match_surface_exactly_on_rational_grids() {
        let grid: Vec<Rat> = (0..=8).map(|k| rat(k, 8)).collect();
        let pgrid: Vec<Rat> = (0..=8).map(|k| rat(k, 4)).collect();
        for face in [FaceEdge::D1, FaceEdge::D2, FaceEdge::D4, FaceEdge::D5] {
            let (first, second): (&[Rat], &[Rat]) = match face {
                FaceEdge::D1 => (&grid, &grid),
                _ => (&pgrid, &grid),
            };
            for a in first {
                for b in second {
                    let params = vec![a.clone(), b.clone()];
                    assert_eq!(
                        restrict(face, &params).unwrap(),
                        bound_b_at_face(face, &params).unwrap(),
                        "face {face} at ({a}, {b})"
                    );
                }
            }
        }
        for p in &pgrid {
            let params = vec![p.clone()];
            assert_eq!(
                restrict(FaceEdge::D3, &params).unwrap(),
                bound_b_at_face(FaceEdge::D3, &params).unwrap()
            );
        }
    }

    #[test]
    fn edge_restrictions_c1_c2_c3_match_surface() {
        let pgrid: Vec<Rat> = (0..=16).map(|k| rat(k, 8)).collect();
        for face in [FaceEdge::C1, FaceEdge::C2, FaceEdge::C3] {
            for p in &pgrid {
                let params = vec![p.clone()];
                assert_eq!(
                    restrict(face, &params).unwrap(),
                    bound_b_at_face(face, &params).unwrap(),
                    "edge {face} at {p}"
                );
            }
        }
    }

    #[test]
    fn printed_c4_c5_sit_an_x_cubed_sixteenth_below_the_surface() {
        let grid: Vec<Rat> = (0..=16).map(|k| rat(k, 16)).collect();
        for x in &grid {
            let x3_16 = x.clone() * x.clone() * x.clone() * rat(1, 16);
            let params = vec![x.clone()];
            assert_eq!(
                restrict(FaceEdge::C4, &params).unwrap() + x3_16.clone(),
                bound_b_at_face(FaceEdge::C4, &params).unwrap()
            );
            assert_eq!(
                restrict(FaceEdge::C5, &params).unwrap() + x3_16,
                bound_b_at_face(FaceEdge::C5, &params).unwrap()
            );
        }
    }

    #[test]
    fn surface_slice_at_origin_edge_is_y_squared_ninth() {
        for k in 0..=10 {
            let y = rat(k, 10);
            assert_eq!(
                bound_b(&Rat::zero(), &Rat::zero(), &y).unwrap(),
                y.clone() * y * rat(1, 9)
            );
        }
    }

    #[test]
    fn restriction_values_from_the_case_analysis() {
        let d3 = restrict(FaceEdge::D3, &[0.991758f64]).unwrap();
        assert!((d3 - 0.0736789).abs() < 1e-6);

        let c5 = restrict(FaceEdge::C5, &[1.0 / 3.0f64.sqrt()]).unwrap();
        assert!((c5 - 0.0481125).abs() < 1e-6);

        let c1 = restrict(FaceEdge::C1, &[2.0f64]).unwrap();
        assert!((c1 - 1.0 / 36.0).abs() < 1e-15);

        let c2_at_zero = restrict(FaceEdge::C2, &[Rat::zero()]).unwrap();
        assert_eq!(c2_at_zero, rat(1, 9));
    }

    #[test]
    fn surface_stays_below_one_ninth_on_a_dense_grid() {
        // Pre-certification smoke check on a 201 x 101 x 101 grid.
        let limit = 1.0 / 9.0 + 1e-12;
        for i in 0..=200 {
            let p = i as f64 / 100.0;
            for j in 0..=100 {
                let x = j as f64 / 100.0;
                for k in 0..=100 {
                    let y = k as f64 / 100.0;
                    let b = bound_b_unchecked(&p, &x, &y, &0.0);
                    assert!(b <= limit, "B({p},{x},{y}) = {b}");
                }
            }
        }
    }

    #[test]
    fn majorization_holds_on_sampled_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..20_000 {
            let params = crate::caratheodory::sample_lz(&mut rng);
            let h3 = h3_from_lz(&params).unwrap();
            let b = bound_b(&params.p.re, &params.gamma.norm(), &params.eta.norm()).unwrap();
            assert!(h3.norm() <= b + 1e-12);
        }
    }

    #[test]
    fn face_identifiers_round_trip() {
        for face in FaceEdge::ALL {
            assert_eq!(face.id().parse::<FaceEdge>().unwrap(), face);
        }
        assert!("d9".parse::<FaceEdge>().is_err());
    }

    #[test]
    fn restrict_checks_arity_and_domain() {
        assert!(restrict(FaceEdge::D1, &[rat(1, 2)]).is_err());
        assert!(restrict(FaceEdge::C5, &[rat(1, 2), rat(1, 2)]).is_err());
        assert!(restrict(FaceEdge::C5, &[rat(3, 2)]).is_err());
        assert!(restrict(FaceEdge::D2, &[rat(3, 2), rat(1, 2)]).is_ok());
    }
}
