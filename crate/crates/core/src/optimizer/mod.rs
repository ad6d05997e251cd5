//! Certified global maximization over boxes.
//!
//! [`Target`] wraps the surface and its printed restrictions behind a single
//! interval-evaluation interface; [`bb_max`] runs deterministic best-first
//! branch-and-bound and returns a [`BoundCertificate`]; [`certify`]
//! assembles the full cuboid/face/edge verification report.

mod bb;
mod certify;
mod refine;

pub use bb::{bb_max, BbSettings, BoundCertificate};
pub use certify::{
    certify_conjecture, edges_report, faces_report, CertItem, CertReport, CertifySettings,
    ItemStatus,
};
pub use refine::{refine_root_1d, RootEnclosure};

use crate::bound_surface::{bound_b_unchecked, restrict_unchecked, FaceEdge};
use crate::error::{Error, Result};
use crate::interval::Interval;

/// An axis-aligned box; one interval per free coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxRegion {
    dims: Vec<Interval>,
}

impl BoxRegion {
    pub fn new(dims: Vec<Interval>) -> Self {
        assert!(!dims.is_empty());
        Self { dims }
    }

    /// The full cuboid `V = [0,2] x [0,1] x [0,1]`.
    pub fn cuboid() -> Self {
        Self::new(vec![
            Interval::new(0.0, 2.0),
            Interval::new(0.0, 1.0),
            Interval::new(0.0, 1.0),
        ])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[Interval] {
        &self.dims
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.dims.iter().map(Interval::mid).collect()
    }

    pub fn corners(&self) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new()];
        for iv in &self.dims {
            let mut next = Vec::with_capacity(out.len() * 2);
            for prefix in &out {
                let mut lo = prefix.clone();
                lo.push(iv.lo());
                next.push(lo);
                if iv.width() > 0.0 {
                    let mut hi = prefix.clone();
                    hi.push(iv.hi());
                    next.push(hi);
                }
            }
            out = next;
        }
        out
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim() && self.dims.iter().zip(point).all(|(iv, &x)| iv.contains(x))
    }

    pub fn contained_in(&self, other: &BoxRegion) -> bool {
        self.dim() == other.dim()
            && self
                .dims
                .iter()
                .zip(&other.dims)
                .all(|(a, b)| b.contains_interval(a))
    }

    /// Bisect along the axis with the largest width relative to `reference`.
    pub fn bisect_relative(&self, reference: &[f64]) -> (BoxRegion, BoxRegion) {
        let axis = self
            .dims
            .iter()
            .enumerate()
            .map(|(i, iv)| (i, iv.width() / reference[i].max(f64::MIN_POSITIVE)))
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (left, right) = self.dims[axis].bisect();
        let mut a = self.dims.clone();
        let mut b = self.dims.clone();
        a[axis] = left;
        b[axis] = right;
        (BoxRegion::new(a), BoxRegion::new(b))
    }
}

/// A maximization target: the full surface over `V` or one of the printed
/// face/edge restrictions over its own parameter domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    /// `B(p, x, y)` over the cuboid. `b3_offset` perturbs the constant `8`
    /// in `b_3` and exists solely as a fault-injection hook for tests.
    BoundB { b3_offset: f64 },
    /// A printed face/edge restriction.
    Restriction(FaceEdge),
}

impl Target {
    pub fn bound_b() -> Self {
        Target::BoundB { b3_offset: 0.0 }
    }

    pub fn dim(&self) -> usize {
        match self {
            Target::BoundB { .. } => 3,
            Target::Restriction(face) => face.dim(),
        }
    }

    /// The target's full domain.
    pub fn domain(&self) -> BoxRegion {
        match self {
            Target::BoundB { .. } => BoxRegion::cuboid(),
            Target::Restriction(face) => BoxRegion::new(
                face.domain_upper()
                    .iter()
                    .map(|&hi| Interval::new(0.0, hi as f64))
                    .collect(),
            ),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Target::BoundB { .. } => "B".to_string(),
            Target::Restriction(face) => face.id().to_string(),
        }
    }

    fn eval_intervals(&self, dims: &[Interval]) -> Interval {
        match self {
            Target::BoundB { b3_offset } => {
                let offset = Interval::point(*b3_offset);
                bound_b_unchecked(&dims[0], &dims[1], &dims[2], &offset)
            }
            Target::Restriction(face) => restrict_unchecked(*face, dims),
        }
    }

    /// Rigorous range enclosure over a box (natural interval extension with
    /// outward rounding).
    pub fn enclose(&self, region: &BoxRegion) -> Result<Interval> {
        if region.dim() != self.dim() || !region.contained_in(&self.domain()) {
            return Err(Error::Domain(format!(
                "box outside the domain of {}",
                self.name()
            )));
        }
        Ok(self.eval_intervals(region.dims()))
    }

    /// Rigorous lower bound on the exact value at a point (degenerate-box
    /// evaluation, lower endpoint).
    pub fn value_lower_at(&self, point: &[f64]) -> f64 {
        let dims: Vec<Interval> = point.iter().map(|&x| Interval::point(x)).collect();
        self.eval_intervals(&dims).lo()
    }

    /// Plain floating evaluation, for display.
    pub fn value_approx(&self, point: &[f64]) -> f64 {
        match self {
            Target::BoundB { b3_offset } => crate::bound_surface::bound_b_unchecked(
                &point[0], &point[1], &point[2], b3_offset,
            ),
            Target::Restriction(face) => restrict_unchecked(*face, point),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enclosure_of_degenerate_corner_is_tight() {
        let region = BoxRegion::new(vec![
            Interval::point(2.0),
            Interval::point(0.0),
            Interval::point(0.0),
        ]);
        let enc = Target::bound_b().enclose(&region).unwrap();
        let target = 1.0 / 36.0;
        assert!(enc.contains(target));
        assert!(enc.width() < 1e-15);
    }

    #[test]
    fn enclosure_of_full_cuboid_contains_attained_range() {
        let enc = Target::bound_b().enclose(&BoxRegion::cuboid()).unwrap();
        assert!(enc.lo() <= 0.0);
        assert!(enc.hi() >= 1.0 / 9.0);
    }

    #[test]
    fn enclosure_of_monotone_edge_contains_range() {
        let target = Target::Restriction(FaceEdge::C1);
        let enc = target.enclose(&target.domain()).unwrap();
        assert!(enc.lo() <= 0.0);
        assert!(enc.hi() >= 1.0 / 36.0);
    }

    #[test]
    fn enclosures_are_sound_on_random_interior_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let targets: Vec<Target> = std::iter::once(Target::bound_b())
            .chain(FaceEdge::ALL.iter().map(|&f| Target::Restriction(f)))
            .collect();
        for target in &targets {
            let domain = target.domain();
            for _ in 0..1000 {
                // Random sub-box plus a random point inside it.
                let dims: Vec<Interval> = domain
                    .dims()
                    .iter()
                    .map(|iv| {
                        let a = iv.lo() + rng.gen::<f64>() * iv.width();
                        let b = iv.lo() + rng.gen::<f64>() * iv.width();
                        Interval::new(a.min(b), a.max(b))
                    })
                    .collect();
                let region = BoxRegion::new(dims);
                let point: Vec<f64> = region
                    .dims()
                    .iter()
                    .map(|iv| iv.lo() + rng.gen::<f64>() * iv.width())
                    .collect();
                let enc = target.enclose(&region).unwrap();
                let value = target.value_approx(&point);
                assert!(
                    enc.contains(value),
                    "{}: {value} outside [{}, {}]",
                    target.name(),
                    enc.lo(),
                    enc.hi()
                );
            }
        }
    }

    #[test]
    fn bisection_nests_enclosures() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let target = Target::bound_b();
        let reference = [2.0, 1.0, 1.0];
        for _ in 0..500 {
            let dims: Vec<Interval> = [2.0, 1.0, 1.0]
                .iter()
                .map(|&hi| {
                    let a = rng.gen::<f64>() * hi;
                    let b = rng.gen::<f64>() * hi;
                    Interval::new(a.min(b), a.max(b))
                })
                .collect();
            let parent = BoxRegion::new(dims);
            let parent_enc = target.enclose(&parent).unwrap();
            let (left, right) = parent.bisect_relative(&reference);
            let union = target
                .enclose(&left)
                .unwrap()
                .hull(&target.enclose(&right).unwrap());
            assert!(parent_enc.contains_interval(&union));
        }
    }

    #[test]
    fn domain_mismatch_is_reported() {
        let region = BoxRegion::new(vec![Interval::new(0.0, 3.0)]);
        assert!(Target::Restriction(FaceEdge::C5).enclose(&region).is_err());
    }
}
