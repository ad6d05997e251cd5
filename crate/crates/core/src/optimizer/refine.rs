//! Bracketed 1-D root refinement for the critical-point computations.

use crate::error::{Error, Result};

/// A root bracketed to width `hi - lo`.
#[derive(Clone, Copy, Debug)]
pub struct RootEnclosure {
    pub lo: f64,
    pub hi: f64,
}

impl RootEnclosure {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn eval_derivative(coeffs: &[f64], x: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(0.0, |acc, (k, &c)| acc * x + k as f64 * c)
}

/// Refine the root of the polynomial `sum coeffs[k] x^k` inside `[lo, hi]`.
///
/// The bracket must exhibit a sign change. Bisection guarantees progress;
/// a Newton step from the midpoint is taken instead whenever it stays
/// strictly inside the bracket. The returned enclosure has width at most
/// `1e-10`.
pub fn refine_root_1d(coeffs: &[f64], lo: f64, hi: f64) -> Result<RootEnclosure> {
    const TARGET_WIDTH: f64 = 1e-10;
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = eval(coeffs, lo);
    let fhi = eval(coeffs, hi);
    if flo == 0.0 {
        return Ok(RootEnclosure { lo, hi: lo });
    }
    if fhi == 0.0 {
        return Ok(RootEnclosure { lo: hi, hi });
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }

    for _ in 0..200 {
        if hi - lo <= TARGET_WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fmid = eval(coeffs, mid);
        let dmid = eval_derivative(coeffs, mid);
        // Prefer the Newton point when it lands strictly inside.
        let candidate = if dmid != 0.0 {
            let newton = mid - fmid / dmid;
            if newton > lo && newton < hi {
                newton
            } else {
                mid
            }
        } else {
            mid
        };
        let fcand = eval(coeffs, candidate);
        if fcand == 0.0 {
            return Ok(RootEnclosure {
                lo: candidate,
                hi: candidate,
            });
        }
        if fcand.signum() == flo.signum() {
            lo = candidate;
            flo = fcand;
        } else {
            hi = candidate;
        }
        // A pure Newton pass can stall against one end; force a bisection
        // step whenever the candidate made too little progress.
        if hi - lo > TARGET_WIDTH {
            let mid = 0.5 * (lo + hi);
            let fmid = eval(coeffs, mid);
            if fmid == 0.0 {
                return Ok(RootEnclosure { lo: mid, hi: mid });
            }
            if fmid.signum() == flo.signum() {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
    }
    Ok(RootEnclosure { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locates_the_quartic_face_critical_point() {
        // d/dp of (576 + 224 p^2 - 136 p^4 + 15 p^6): 448 p - 544 p^3 + 90 p^5.
        let root = refine_root_1d(&[0.0, 448.0, 0.0, -544.0, 0.0, 90.0], 0.5, 1.5).unwrap();
        assert!(root.width() <= 1e-10);
        assert!((root.mid() - 0.991758).abs() < 1e-5);
    }

    #[test]
    fn locates_the_inner_edge_critical_point() {
        // d/dx of x (1 - x^2)/8: (1 - 3 x^2)/8.
        let root = refine_root_1d(&[0.125, 0.0, -0.375], 0.0, 1.0).unwrap();
        assert!((root.mid() - 1.0 / 3.0f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn rejects_brackets_without_sign_change() {
        assert!(matches!(
            refine_root_1d(&[1.0, 0.0, 1.0], -1.0, 1.0),
            Err(Error::NoSignChange { .. })
        ));
    }

    #[test]
    fn accepts_roots_at_bracket_ends() {
        let root = refine_root_1d(&[0.0, 1.0], 0.0, 1.0).unwrap();
        assert_eq!(root.mid(), 0.0);
    }
}
