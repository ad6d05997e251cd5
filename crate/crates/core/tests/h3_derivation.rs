//! Independent symbolic re-derivation of the frozen `9216 * H_3` monomial
//! table: expand the determinant formula through the coefficient displays
//! with a small exact multivariate polynomial engine and compare monomial by
//! monomial.

use std::collections::BTreeMap;

use hankel_core::bound_surface::{H3_DENOMINATOR, H3_NUMERATOR_MONOMIALS};
use hankel_core::scalar::Ring;
use hankel_core::Rat;
use num_traits::Zero;

/// Dense-exponent multivariate polynomial in `(p1, p2, p3, p4)` over the
/// rationals.
#[derive(Clone, Debug, PartialEq)]
struct MPoly {
    terms: BTreeMap<[u8; 4], Rat>,
}

impl MPoly {
    fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    fn term(coeff: Rat, exps: [u8; 4]) -> Self {
        let mut poly = Self::zero();
        if !coeff.is_zero() {
            poly.terms.insert(exps, coeff);
        }
        poly
    }

    fn var(index: usize) -> Self {
        let mut exps = [0u8; 4];
        exps[index] = 1;
        Self::term(Rat::from_int(1), exps)
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (exps, coeff) in &other.terms {
            let entry = out.terms.entry(*exps).or_insert_with(Rat::zero);
            *entry += coeff;
            if entry.is_zero() {
                out.terms.remove(exps);
            }
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rat::from_int(-1)))
    }

    fn scale(&self, factor: &Rat) -> Self {
        let mut out = Self::zero();
        for (exps, coeff) in &self.terms {
            let product = coeff * factor;
            if !product.is_zero() {
                out.terms.insert(*exps, product);
            }
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = [
                    ea[0] + eb[0],
                    ea[1] + eb[1],
                    ea[2] + eb[2],
                    ea[3] + eb[3],
                ];
                let entry = out.terms.entry(exps).or_insert_with(Rat::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.terms.remove(&exps);
                }
            }
        }
        out
    }
}

fn rat(num: i64, den: i64) -> Rat {
    Rat::from_ratio(num, den)
}

#[test]
fn frozen_h3_table_equals_symbolic_expansion() {
    let p1 = MPoly::var(0);
    let p2 = MPoly::var(1);
    let p3 = MPoly::var(2);
    let p4 = MPoly::var(3);

    let p1_2 = p1.mul(&p1);
    let p1_4 = p1_2.mul(&p1_2);

    // The closed-form coefficient displays as polynomials in p_1 ... p_4.
    let a2 = p1.scale(&rat(1, 2));
    let a3 = p2.scale(&rat(1, 4)).add(&p1_2.scale(&rat(1, 8)));
    let a4 = p3.scale(&rat(1, 6)).add(&p1.mul(&p2).scale(&rat(1, 8)));
    let a5 = p1_4
        .scale(&rat(1, 384))
        .add(&p2.mul(&p2).scale(&rat(1, 32)))
        .add(&p1.mul(&p3).scale(&rat(1, 12)))
        .sub(&p1_2.mul(&p2).scale(&rat(1, 64)))
        .add(&p4.scale(&rat(1, 8)));

    // H_3(1) = 2 a2 a3 a4 + a3 a5 - a3^3 - a4^2 - a2^2 a5.
    let h3 = a2
        .mul(&a3)
        .mul(&a4)
        .scale(&rat(2, 1))
        .add(&a3.mul(&a5))
        .sub(&a3.mul(&a3).mul(&a3))
        .sub(&a4.mul(&a4))
        .sub(&a2.mul(&a2).mul(&a5));

    let scaled = h3.scale(&Rat::from_int(H3_DENOMINATOR));

    let mut frozen = MPoly::zero();
    for (coeff, exps) in H3_NUMERATOR_MONOMIALS {
        frozen = frozen.add(&MPoly::term(Rat::from_int(coeff), exps));
    }

    assert_eq!(
        scaled, frozen,
        "frozen monomial table disagrees with the symbolic expansion"
    );
}

#[test]
fn expansion_pins_down_the_display_typos() {
    // The corrected table differs from the circulated display in exactly
    // these monomials; keep them pinned so the corrections stay documented.
    let table: BTreeMap<[u8; 4], i64> = H3_NUMERATOR_MONOMIALS
        .iter()
        .map(|&(c, e)| (e, c))
        .collect();
    assert_eq!(table[&[6, 0, 0, 0]], -21); // display: +3
    assert_eq!(table[&[4, 1, 0, 0]], 60); // display: -12
    assert_eq!(table[&[1, 1, 1, 0]], 192); // display: -192
    assert_eq!(table[&[0, 3, 0, 0]], -72); // display: +72
    assert_eq!(table[&[2, 0, 0, 1]], -144); // display: +144
    assert_eq!(table[&[0, 1, 0, 1]], 288); // display: +288 p^2 p4
    assert_eq!(table.len(), 9);
}
