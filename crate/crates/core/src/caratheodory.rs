//! The Caratheodory class: coefficient sequences of analytic functions with
//! positive real part and `p(0) = 1`.
//!
//! Members are realized through atomic Herglotz measures (enough for every
//! coefficient extremal problem handled here), parametrized through the
//! Libera-Zlotkiewicz / Kwon-Lecko-Sim formulas for `p_2, p_3, p_4`, and
//! validated through positive semidefiniteness of the Hermitian Toeplitz
//! moment matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// Eigenvalue slack allowed when deciding positive semidefiniteness in
/// floating mode; extremal measures sit exactly on the boundary of the
/// moment cone.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// One point mass of a Herglotz measure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    /// Angle in `[0, 2*pi)`.
    pub angle: f64,
    /// Nonnegative weight.
    pub weight: f64,
}

/// A probability measure with finitely many atoms on the circle. Realizes
/// the Caratheodory function `p(z) = sum_k w_k (1 + z e^{-i t_k}) / (1 - z e^{-i t_k})`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if atoms.iter().any(|a| a.weight < -1e-12) {
            return Err(Error::InvalidMeasure("negative weight".into()));
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { atoms })
    }

    /// Point mass at the given angle.
    pub fn point_mass(angle: f64) -> Self {
        Self {
            atoms: vec![Atom { angle, weight: 1.0 }],
        }
    }

    /// Build from raw `(angle, weight)` pairs, normalizing the weights.
    pub fn normalized(pairs: &[(f64, f64)]) -> Result<Self> {
        let total: f64 = pairs.iter().map(|&(_, w)| w.abs()).sum();
        if total <= 0.0 || !total.is_finite() {
            return Err(Error::InvalidMeasure("weights must have positive sum".into()));
        }
        Self::new(
            pairs
                .iter()
                .map(|&(angle, w)| Atom {
                    angle: angle.rem_euclid(TAU),
                    weight: w.abs() / total,
                })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Atoms sorted by angle; used for deterministic comparisons.
    pub fn canonical_atoms(&self) -> Vec<Atom> {
        let mut atoms = self.atoms.clone();
        atoms.sort_by(|a, b| {
            a.angle
                .total_cmp(&b.angle)
                .then(a.weight.total_cmp(&b.weight))
        });
        atoms
    }
}

/// Coefficients `p_1 ... p_N` of a Caratheodory function.
#[derive(Clone, Debug, PartialEq)]
pub struct CaratheodorySequence<T: Scalar> {
    p: Vec<T>,
}

impl<T: Scalar> CaratheodorySequence<T> {
    pub fn new(p: Vec<T>) -> Self {
        Self { p }
    }

    /// Number of known coefficients `N`.
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `p_n` for `1 <= n <= N`.
    pub fn pn(&self, n: usize) -> Result<&T> {
        if n == 0 || n > self.p.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                len: self.p.len(),
            });
        }
        Ok(&self.p[n - 1])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.p
    }

    /// The constant sequence `p_n = c`.
    pub fn constant(c: T, n: usize) -> Self {
        Self::new(vec![c; n])
    }

    /// The series `1 + sum_{n=1..order} p_n z^n`.
    pub fn to_series(&self, order: usize) -> Result<TruncatedSeries<T>> {
        if order > self.p.len() {
            return Err(Error::IndexOutOfRange {
                index: order,
                len: self.p.len(),
            });
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(T::one());
        coeffs.extend(self.p.iter().take(order).cloned());
        Ok(TruncatedSeries::from_coeffs(coeffs))
    }

    pub fn approx(&self) -> CaratheodorySequence<Complex64> {
        CaratheodorySequence::new(self.p.iter().map(|c| c.approx()).collect())
    }
}

/// Coefficients `p_n = 2 sum_k w_k e^{-i n t_k}` of the measure's
/// Caratheodory function, for `n = 1 ... n_max`.
pub fn herglotz_coeffs(measure: &AtomicMeasure, n_max: usize) -> CaratheodorySequence<Complex64> {
    let p = (1..=n_max)
        .map(|n| {
            let mut acc = Complex64::zero();
            for atom in measure.atoms() {
                acc += atom.weight * Complex64::from_polar(1.0, -(n as f64) * atom.angle);
            }
            2.0 * acc
        })
        .collect();
    CaratheodorySequence::new(p)
}

/// Unit-disk parameters `(p, gamma, eta, rho)` with `p in [0, 2]` and
/// `|gamma|, |eta|, |rho| <= 1`, parametrizing `(p_2, p_3, p_4)` given
/// `p_1 = p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LzParams<T: Scalar> {
    pub p: T,
    pub gamma: T,
    pub eta: T,
    pub rho: T,
}

impl<T: Scalar> LzParams<T> {
    pub fn new(p: T, gamma: T, eta: T, rho: T) -> Result<Self> {
        let params = Self { p, gamma, eta, rho };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        const SLACK: f64 = 1e-12;
        let p = self.p.approx();
        if p.im.abs() > SLACK || p.re < -SLACK || p.re > 2.0 + SLACK {
            return Err(Error::Domain(format!("p = {p} outside [0, 2]")));
        }
        for (name, v) in [("gamma", &self.gamma), ("eta", &self.eta), ("rho", &self.rho)] {
            if v.abs_approx() > 1.0 + SLACK {
                return Err(Error::Domain(format!("{name} outside the closed unit disk")));
            }
        }
        Ok(())
    }
}

/// The `(p_2, p_3, p_4)` triple determined by unit-disk parameters:
///
/// ```text
/// 2 p2 = p^2 + gamma (4 - p^2)
/// 4 p3 = p^3 + 2 p (4-p^2) gamma - p (4-p^2) gamma^2 + 2 (4-p^2)(1-|gamma|^2) eta
/// 8 p4 = p^4 + (4-p^2) gamma (p^2 (gamma^2 - 3 gamma + 3) + 4 gamma)
///        - 4 (4-p^2)(1-|gamma|^2) (p (gamma-1) eta + conj(gamma) eta^2 - (1-|eta|^2) rho)
/// ```
pub fn lz_expand<T: Scalar>(params: &LzParams<T>) -> Result<(T, T, T)> {
    params.validate()?;
    let p = params.p.clone();
    let g = params.gamma.clone();
    let e = params.eta.clone();
    let r = params.rho.clone();

    let two = T::from_int(2);
    let three = T::from_int(3);
    let four = T::from_int(4);

    let psq = p.clone() * p.clone();
    let q = four.clone() - psq.clone();
    let one_m_g2 = T::one() - g.modulus_sq();
    let one_m_e2 = T::one() - e.modulus_sq();

    let p2 = (psq.clone() + g.clone() * q.clone()) * T::from_ratio(1, 2);

    let p3 = (p.clone() * psq.clone()
        + two.clone() * p.clone() * q.clone() * g.clone()
        - p.clone() * q.clone() * g.clone() * g.clone()
        + two * q.clone() * one_m_g2.clone() * e.clone())
        * T::from_ratio(1, 4);

    let gamma_poly = psq.clone() * (g.clone() * g.clone() - three.clone() * g.clone() + three)
        + four.clone() * g.clone();
    let tail = p.clone() * (g.clone() - T::one()) * e.clone() + g.conj() * e.clone() * e.clone()
        - one_m_e2 * r;
    let p4 = (psq.clone() * psq
        + q.clone() * g * gamma_poly
        - four * q * one_m_g2 * tail)
        * T::from_ratio(1, 8);

    Ok((p2, p3, p4))
}

/// The length-4 sequence `(p_1, p_2, p_3, p_4)` from unit-disk parameters.
pub fn lz_sequence<T: Scalar>(params: &LzParams<T>) -> Result<CaratheodorySequence<T>> {
    let (p2, p3, p4) = lz_expand(params)?;
    Ok(CaratheodorySequence::new(vec![params.p.clone(), p2, p3, p4]))
}

/// Minimum eigenvalue of the `(N+1) x (N+1)` Hermitian Toeplitz moment
/// matrix `T_{jk} = p_{k-j}` with `p_0 = 2`, `p_{-r} = conj(p_r)`.
///
/// By Cauchy interlacing this equals the minimum over all leading principal
/// Toeplitz matrices, so a single eigensolve decides validity for every
/// truncation at once.
pub fn toeplitz_min_eigenvalue<T: Scalar>(seq: &CaratheodorySequence<T>) -> f64 {
    let n = seq.len();
    let dim = n + 1;
    let mut p = Vec::with_capacity(dim);
    p.push(Complex64::new(2.0, 0.0));
    p.extend(seq.coeffs().iter().map(|c| c.approx()));

    // Embed the Hermitian matrix H = A + iB into the real symmetric
    // [[A, -B], [B, A]]; its spectrum is that of H, doubled.
    let mut m = DMatrix::<f64>::zeros(2 * dim, 2 * dim);
    for j in 0..dim {
        for k in 0..dim {
            let h = if k >= j { p[k - j] } else { p[j - k].conj() };
            m[(j, k)] = h.re;
            m[(j + dim, k + dim)] = h.re;
            m[(j, k + dim)] = -h.im;
            m[(j + dim, k)] = h.im;
        }
    }
    let eigen = m.symmetric_eigen();
    eigen.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// `true` together with the minimum eigenvalue if every Toeplitz moment
/// matrix of the sequence is positive semidefinite within [`PSD_TOLERANCE`].
pub fn toeplitz_validate<T: Scalar>(seq: &CaratheodorySequence<T>) -> (bool, f64) {
    let min_eig = toeplitz_min_eigenvalue(seq);
    (min_eig >= -PSD_TOLERANCE, min_eig)
}

/// One inequality line of a margin report: `lhs <= rhs` with
/// `slack = rhs - lhs`.
#[derive(Clone, Copy, Debug)]
pub struct MarginLine {
    pub lhs: f64,
    pub rhs: f64,
}

impl MarginLine {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Margins of the classical coefficient inequalities at indices `(n, k)`:
///
/// * `|p_{n+k} - mu p_n p_k| <= 2` for `0 <= mu <= 1`, else `2 |2 mu - 1|`;
/// * for `(n, k)` covering `p_3`, additionally
///   `|p_1^3 - mu p_3| <= 2 |mu - 4|` for `mu <= 4/3`, else
///   `2 mu sqrt(mu / (mu - 1))`.
#[derive(Clone, Debug)]
pub struct Lemma2Margins {
    pub product: MarginLine,
    pub cubic: Option<MarginLine>,
}

pub fn lemma2_margins<T: Scalar>(
    seq: &CaratheodorySequence<T>,
    mu: f64,
    n: usize,
    k: usize,
) -> Result<Lemma2Margins> {
    if n == 0 || k == 0 || n + k > seq.len() {
        return Err(Error::IndexOutOfRange {
            index: n + k,
            len: seq.len(),
        });
    }
    let pn = seq.pn(n)?.approx();
    let pk = seq.pn(k)?.approx();
    let pnk = seq.pn(n + k)?.approx();

    let lhs = (pnk - mu * pn * pk).norm();
    let rhs = if (0.0..=1.0).contains(&mu) {
        2.0
    } else {
        2.0 * (2.0 * mu - 1.0).abs()
    };
    let product = MarginLine { lhs, rhs };

    let cubic = if n + k == 3 {
        let p1 = seq.pn(1)?.approx();
        let p3 = seq.pn(3)?.approx();
        let lhs = (p1 * p1 * p1 - mu * p3).norm();
        let rhs = if mu <= 4.0 / 3.0 {
            2.0 * (mu - 4.0).abs()
        } else {
            2.0 * mu * (mu / (mu - 1.0)).sqrt()
        };
        Some(MarginLine { lhs, rhs })
    } else {
        None
    };

    Ok(Lemma2Margins { product, cubic })
}

/// Deterministic measure sample: atom count uniform in `1..=max_atoms`,
/// angles uniform on the circle, weights uniform on the simplex.
pub fn sample_measure<R: Rng>(rng: &mut R, max_atoms: usize) -> AtomicMeasure {
    assert!(max_atoms >= 1);
    let count = rng.gen_range(1..=max_atoms);
    let mut atoms: Vec<Atom> = (0..count)
        .map(|_| Atom {
            angle: rng.gen::<f64>() * TAU,
            weight: -(1.0 - rng.gen::<f64>()).ln(),
        })
        .collect();
    let total: f64 = atoms.iter().map(|a| a.weight).sum();
    for atom in &mut atoms {
        atom.weight /= total;
    }
    AtomicMeasure::new(atoms).expect("normalized by construction")
}

/// Uniform point of the closed unit disk.
pub fn sample_disk<R: Rng>(rng: &mut R) -> Complex64 {
    let radius = rng.gen::<f64>().sqrt();
    let angle = rng.gen::<f64>() * TAU;
    Complex64::from_polar(radius, angle)
}

/// Deterministic unit-disk parameter sample with `p` uniform in `[0, 2]`.
pub fn sample_lz<R: Rng>(rng: &mut R) -> LzParams<Complex64> {
    LzParams {
        p: Complex64::new(2.0 * rng.gen::<f64>(), 0.0),
        gamma: sample_disk(rng),
        eta: sample_disk(rng),
        rho: sample_disk(rng),
    }
}

/// Seeded variants used by command-line flows and property runs.
pub fn seeded_measure(seed: u64, max_atoms: usize) -> AtomicMeasure {
    sample_measure(&mut ChaCha8Rng::seed_from_u64(seed), max_atoms)
}

pub fn seeded_lz(seed: u64) -> LzParams<Complex64> {
    sample_lz(&mut ChaCha8Rng::seed_from_u64(seed))
}
