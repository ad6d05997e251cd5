//! Closed floating-point intervals with outward rounding.
//!
//! Directed rounding is emulated by nudging each computed endpoint one ulp
//! outward (`next_down`/`next_up`), which keeps every operation a rigorous
//! enclosure of the exact result. Only the ring operations needed by the
//! polynomial evaluators are provided; the [`Ring`] impl lets the interval
//! type flow through the same coefficient tables as the scalar payloads.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Ring;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        assert!(lo.is_finite() && hi.is_finite());
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Self::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Self::new(lo, hi))
    }

    fn outward(lo: f64, hi: f64) -> Self {
        Self::new(lo.next_down(), hi.next_up())
    }

    /// Tight sign-aware integer power, sound by repeated interval squaring.
    pub fn powi(&self, exp: u32) -> Self {
        match exp {
            0 => Self::point(1.0),
            1 => *self,
            _ => {
                let sq = self.sq();
                if exp.is_multiple_of(2) {
                    sq.powi(exp / 2)
                } else {
                    sq.powi(exp / 2) * *self
                }
            }
        }
    }

    /// `x^2` without the dependency loss of `x * x`.
    pub fn sq(&self) -> Self {
        let (alo, ahi) = (self.lo.abs(), self.hi.abs());
        let big = alo.max(ahi);
        if self.lo >= 0.0 || self.hi <= 0.0 {
            let small = alo.min(ahi);
            Self::outward(small * small, big * big).intersect_nonneg()
        } else {
            Self::new(0.0, (big * big).next_up())
        }
    }

    fn intersect_nonneg(self) -> Self {
        Self::new(self.lo.max(0.0), self.hi.max(0.0))
    }

    /// Split at the midpoint.
    pub fn bisect(&self) -> (Self, Self) {
        let m = self.mid();
        (Self::new(self.lo, m), Self::new(m, self.hi))
    }
}

impl Add for Interval {
    type Output = Interval;

    fn add(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, rhs: Interval) -> Interval {
        Interval::outward(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, rhs: Interval) -> Interval {
        let candidates = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        let lo = candidates.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = candidates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::outward(lo, hi)
    }
}

impl Zero for Interval {
    fn zero() -> Self {
        Interval::point(0.0)
    }

    fn is_zero(&self) -> bool {
        self.lo == 0.0 && self.hi == 0.0
    }
}

impl One for Interval {
    fn one() -> Self {
        Interval::point(1.0)
    }
}

impl Ring for Interval {
    /// Rational constants are enclosed once, on entry: exact when the
    /// denominator is a power of two, otherwise widened by one ulp each way.
    fn from_ratio(num: i64, den: i64) -> Self {
        debug_assert!(den > 0);
        let q = num as f64 / den as f64;
        if den.count_ones() == 1 && num.abs() < (1i64 << 53) {
            Interval::point(q)
        } else {
            Interval::outward(q, q)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_integer_constants_stay_points() {
        assert_eq!(Interval::from_ratio(36, 1).width(), 0.0);
        assert_eq!(Interval::from_ratio(-5, 8).width(), 0.0);
        let ninth = Interval::from_ratio(1, 9);
        assert!(ninth.width() > 0.0);
        assert!(ninth.contains(1.0 / 9.0));
    }

    #[test]
    fn squares_straddling_zero_are_nonnegative() {
        let x = Interval::new(-2.0, 1.0);
        let s = x.sq();
        assert_eq!(s.lo(), 0.0);
        assert!(s.hi() >= 4.0);
        assert!(x.powi(2).contains_interval(&Interval::new(0.0, 4.0)) || s.hi() >= 4.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn operations_enclose_point_results(
            a in -10.0f64..10.0, wa in 0.0f64..3.0,
            b in -10.0f64..10.0, wb in 0.0f64..3.0,
            ta in 0.0f64..=1.0, tb in 0.0f64..=1.0,
            exp in 0u32..6,
        ) {
            let ia = Interval::new(a, a + wa);
            let ib = Interval::new(b, b + wb);
            let pa = a + ta * wa;
            let pb = b + tb * wb;
            prop_assert!((ia + ib).contains(pa + pb));
            prop_assert!((ia - ib).contains(pa - pb));
            prop_assert!((ia * ib).contains(pa * pb));
            prop_assert!(ia.sq().contains(pa * pa));
            prop_assert!(ia.powi(exp).contains(pa.powi(exp as i32)));
        }

        #[test]
        fn subintervals_give_nested_products(
            a in -5.0f64..5.0, w in 0.1f64..2.0,
            b in -5.0f64..5.0, v in 0.1f64..2.0,
        ) {
            let outer_a = Interval::new(a, a + w);
            let outer_b = Interval::new(b, b + v);
            let inner_a = Interval::new(a + 0.25 * w, a + 0.75 * w);
            let inner_b = Interval::new(b + 0.25 * v, b + 0.75 * v);
            prop_assert!((outer_a * outer_b).contains_interval(&(inner_a * inner_b)));
            prop_assert!((outer_a + outer_b).contains_interval(&(inner_a + inner_b)));
        }
    }
}
