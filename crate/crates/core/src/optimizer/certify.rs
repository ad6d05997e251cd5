//! End-to-end certification: the cuboid supremum, every face and edge of
//! the case analysis, and the documentary cross-checks that pin down where
//! the printed displays disagree with the exact algebra.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bound_surface::{
    bound_b, bound_b_at_face, h3_from_lz, h3_poly, h3_polynomial_string, nu_decomposition,
    nu_rho_coefficient, restrict, restrict_unchecked, FaceEdge,
};
use crate::caratheodory::{CaratheodorySequence, LzParams};
use crate::functionals::{coeffs_wp, hankel_det};
use crate::interval::Interval;
use crate::scalar::Ring;
use crate::{CRat, Rat};

use super::{bb_max, refine_root_1d, BbSettings, BoundCertificate, BoxRegion, Target};

const ONE_NINTH: f64 = 1.0 / 9.0;
const FLOAT_SLOP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItemStatus {
    Pass,
    Fail,
    Info,
}

impl ItemStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ItemStatus::Pass => "PASS",
            ItemStatus::Fail => "FAIL",
            ItemStatus::Info => "INFO",
        }
    }
}

/// One verification line: a computed quantity against its target value.
#[derive(Clone, Debug)]
pub struct CertItem {
    pub name: String,
    pub paper: Option<String>,
    pub computed: String,
    pub value: Option<f64>,
    pub tol: Option<f64>,
    pub status: ItemStatus,
    pub note: Option<String>,
}

/// A list of verification items plus the global cuboid certificate when the
/// run produced one.
#[derive(Clone, Debug, Default)]
pub struct CertReport {
    pub items: Vec<CertItem>,
    pub cuboid: Option<BoundCertificate>,
}

impl CertReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != ItemStatus::Fail)
    }
}

#[derive(Clone, Debug)]
pub struct CertifySettings {
    pub tol: f64,
    pub max_boxes: u64,
    /// Fault-injection hook: perturbs the constant `8` inside `b_3`.
    /// Zero in real runs.
    pub b3_offset: f64,
}

impl Default for CertifySettings {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_boxes: 10_000_000,
            b3_offset: 0.0,
        }
    }
}

impl CertifySettings {
    fn bb(&self) -> BbSettings {
        BbSettings {
            tol: self.tol,
            max_boxes: self.max_boxes,
            ..BbSettings::default()
        }
    }

    fn target(&self) -> Target {
        Target::BoundB {
            b3_offset: self.b3_offset,
        }
    }
}

fn two_sided(name: &str, paper: &str, target: f64, tol: f64, computed: f64) -> CertItem {
    let pass = (computed - target).abs() <= tol;
    CertItem {
        name: name.to_string(),
        paper: Some(paper.to_string()),
        computed: format!("{computed:.11e}"),
        value: Some(computed),
        tol: Some(tol),
        status: if pass { ItemStatus::Pass } else { ItemStatus::Fail },
        note: None,
    }
}

fn upper_bounded(name: &str, paper: &str, limit: f64, tol: f64, computed: f64) -> CertItem {
    let pass = computed <= limit + tol;
    CertItem {
        name: name.to_string(),
        paper: Some(paper.to_string()),
        computed: format!("{computed:.11e}"),
        value: Some(computed),
        tol: Some(tol),
        status: if pass { ItemStatus::Pass } else { ItemStatus::Fail },
        note: None,
    }
}

fn bb_item(
    name: &str,
    paper: &str,
    target_value: f64,
    tol: f64,
    target: &Target,
    region: &BoxRegion,
    settings: &CertifySettings,
) -> (CertItem, Option<BoundCertificate>) {
    // The certified gap must be finer than the comparison tolerance or the
    // item would test the solver slack, not the table value.
    let mut bb = settings.bb();
    bb.tol = bb.tol.min(0.5 * tol).max(1e-12);
    match bb_max(target, region, &bb) {
        Ok(cert) => {
            let mut item = two_sided(name, paper, target_value, tol, cert.upper);
            item.note = Some(format!(
                "upper bound after {} boxes, witness at {:?}",
                cert.boxes_processed, cert.best_point
            ));
            (item, Some(cert))
        }
        Err(err) => (
            CertItem {
                name: name.to_string(),
                paper: Some(paper.to_string()),
                computed: "unresolved".to_string(),
                value: None,
                tol: Some(tol),
                status: ItemStatus::Fail,
                note: Some(err.to_string()),
            },
            None,
        ),
    }
}

fn restriction_region(face: FaceEdge) -> BoxRegion {
    Target::Restriction(face).domain()
}

fn rational_points(seed: u64, count: usize) -> Vec<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Rat::from_ratio(rng.gen_range(0..=1000), 1000))
        .collect()
}

/// `B(2, x, y) = 1/36` exactly, checked at random rational points.
fn face_p2_exactness_item(count: usize) -> CertItem {
    let xs = rational_points(101, count);
    let ys = rational_points(202, count);
    let target = Rat::from_ratio(1, 36);
    let exact = xs
        .iter()
        .zip(&ys)
        .filter(|(x, y)| bound_b(&Rat::from_int(2), *x, *y).unwrap() == target)
        .count();
    CertItem {
        name: "face_p2_value".into(),
        paper: Some("1/36".into()),
        computed: "1/36".into(),
        value: Some(1.0 / 36.0),
        tol: Some(0.0),
        status: if exact == count { ItemStatus::Pass } else { ItemStatus::Fail },
        note: Some(format!("exact at {exact}/{count} random rational points")),
    }
}

/// `B(0, 1, y) = 1/16` exactly, checked at random rational points.
fn edge_x1_exactness_item(count: usize) -> CertItem {
    let ys = rational_points(303, count);
    let target = Rat::from_ratio(1, 16);
    let exact = ys
        .iter()
        .filter(|y| bound_b(&Rat::zero(), &Rat::one(), *y).unwrap() == target)
        .count();
    CertItem {
        name: "edge_p0_x1_value".into(),
        paper: Some("1/16".into()),
        computed: "1/16".into(),
        value: Some(1.0 / 16.0),
        tol: Some(0.0),
        status: if exact == count { ItemStatus::Pass } else { ItemStatus::Fail },
        note: Some(format!("exact at {exact}/{count} random rational points")),
    }
}

/// The corrected scaled polynomial, cross-checked against the determinant
/// route on random rational sequences.
fn h3_polynomial_info() -> CertItem {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut mismatches = 0usize;
    let count = 64;
    for _ in 0..count {
        let p: Vec<Rat> = (0..4)
            .map(|_| Rat::from_ratio(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=6)))
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
        if det != h3_poly(&p[0], &p[1], &p[2], &p[3]) {
            mismatches += 1;
        }
    }
    CertItem {
        name: "info_h3_polynomial".into(),
        paper: None,
        computed: h3_polynomial_string(),
        value: None,
        tol: None,
        status: if mismatches == 0 { ItemStatus::Info } else { ItemStatus::Fail },
        note: Some(format!(
            "corrected numerator; determinant oracle agrees at {}/{} rational points \
             (display lists 3p^6, -12p^4p2, -192pp2p3, +72p2^3 and a duplicated p^2p4 pair)",
            count - mismatches,
            count
        )),
    }
}

/// `B(0, 0, y) = y^2/9`, settling the two printed statements about that edge.
fn b00y_resolution_info() -> CertItem {
    let ninth = Rat::from_ratio(1, 9);
    let mut ok = 0usize;
    let count = 33;
    for k in 0..count {
        let y = Rat::from_ratio(k as i64, 32);
        let b = bound_b(&Rat::zero(), &Rat::zero(), &y).unwrap();
        if b == y.clone() * y * ninth.clone() {
            ok += 1;
        }
    }
    CertItem {
        name: "info_b00y".into(),
        paper: None,
        computed: "B(0,0,y) = y^2/9".into(),
        value: None,
        tol: None,
        status: if ok == count { ItemStatus::Info } else { ItemStatus::Fail },
        note: Some(format!(
            "matches the bound <= 1/9 on that edge; the printed simplification y^2/36 does not \
             evaluate to the surface (checked at {ok}/{count} rational points)"
        )),
    }
}

/// The printed `c4`, `c5` sit exactly `x^3/16` below the surface restriction.
fn printed_edge_gap_info() -> CertItem {
    let mut ok = 0usize;
    let count = 17;
    for k in 0..count {
        let x = Rat::from_ratio(k as i64, 16);
        let params = std::slice::from_ref(&x);
        let gap = x.clone() * x.clone() * x.clone() * Rat::from_ratio(1, 16);
        let c4_holds = restrict(FaceEdge::C4, params).unwrap() + gap.clone()
            == bound_b_at_face(FaceEdge::C4, params).unwrap();
        let c5_holds = restrict(FaceEdge::C5, params).unwrap() + gap
            == bound_b_at_face(FaceEdge::C5, params).unwrap();
        if c4_holds && c5_holds {
            ok += 1;
        }
    }
    CertItem {
        name: "info_printed_c4_c5".into(),
        paper: None,
        computed: "B(0,x,1) = c4(x) + x^3/16, B(0,x,0) = c5(x) + x^3/16".into(),
        value: None,
        tol: None,
        status: if ok == count { ItemStatus::Info } else { ItemStatus::Fail },
        note: Some(format!(
            "printed edge profiles omit the x^3 face term; both maxima stay below 1/9, the \
             faithful (0,x,0) maximum is sqrt(6)/36 at x = sqrt(2/3) (checked at {ok}/{count} \
             rational points)"
        )),
    }
}

/// The eta-linear coefficient of the disk-parameter decomposition carries
/// `-Q p gamma^2`, not `-10 Q p gamma^2`; the sum still reassembles `H_3`.
fn nu2_resolution_info() -> CertItem {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut ok = 0usize;
    let count = 32;
    for _ in 0..count {
        let p = CRat::new(Rat::from_ratio(rng.gen_range(0i64..=8), 4), Rat::zero());
        let mut small = || {
            CRat::new(
                Rat::from_ratio(rng.gen_range(-3i64..=3), 5),
                Rat::from_ratio(rng.gen_range(-3i64..=3), 5),
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
        if assembled == h3_from_lz(&params).unwrap() {
            ok += 1;
        }
    }
    CertItem {
        name: "info_nu2".into(),
        paper: None,
        computed: "nu2 = 8(1-|g|^2)(4-p^2)(4p^3 - (4-p^2)(pg + pg^2))".into(),
        value: None,
        tol: None,
        status: if ok == count { ItemStatus::Info } else { ItemStatus::Fail },
        note: Some(format!(
            "the displayed 10pg^2 monomial has coefficient one; b2 majorizes either form \
             (decomposition reassembles H3 exactly at {ok}/{count} rational parameter points)"
        )),
    }
}

fn push_face_items(items: &mut Vec<CertItem>, settings: &CertifySettings) {
    // Face p = 0.
    let (item, _) = bb_item(
        "face_p0_sup",
        "1/9",
        ONE_NINTH,
        settings.tol,
        &Target::Restriction(FaceEdge::D1),
        &restriction_region(FaceEdge::D1),
        settings,
    );
    items.push(item);

    // Face p = 2 is constant.
    items.push(face_p2_exactness_item(100));

    // Face x = 0.
    let (item, _) = bb_item(
        "face_x0_sup",
        "1/9",
        ONE_NINTH,
        settings.tol,
        &Target::Restriction(FaceEdge::D2),
        &restriction_region(FaceEdge::D2),
        settings,
    );
    items.push(item);

    // Face x = 1: maximum and critical point.
    let (item, _) = bb_item(
        "face_x1_max",
        "0.0736789",
        0.0736789,
        1e-5,
        &Target::Restriction(FaceEdge::D3),
        &restriction_region(FaceEdge::D3),
        settings,
    );
    items.push(item);
    match refine_root_1d(&[0.0, 448.0, 0.0, -544.0, 0.0, 90.0], 0.5, 1.5) {
        Ok(root) => {
            let mut item = two_sided("face_x1_argmax", "0.991758", 0.991758, 1e-4, root.mid());
            item.note = Some(format!("root enclosed to width {:.2e}", root.width()));
            items.push(item);
        }
        Err(err) => items.push(CertItem {
            name: "face_x1_argmax".into(),
            paper: Some("0.991758".into()),
            computed: "unresolved".into(),
            value: None,
            tol: Some(1e-4),
            status: ItemStatus::Fail,
            note: Some(err.to_string()),
        }),
    }

    // Face y = 0: the interior critical candidate, then the closed-face
    // supremum (attained on the x = 1 boundary shared with c3).
    let x_crit = refine_root_1d(&[2.0, 0.0, -3.0], 0.0, 1.0)
        .map(|r| r.mid())
        .unwrap_or(0.816497);
    let candidate = [Interval::point(0.00115734), Interval::point(x_crit)];
    let value_hi = restrict_unchecked(FaceEdge::D4, &candidate).hi();
    let mut item = upper_bounded("face_y0_interior", "<= 0.0680414", 0.0680414, 1e-4, value_hi);
    item.note = Some(format!(
        "critical candidate near (0.00115734, {x_crit:.6}); value sqrt(6)/36"
    ));
    items.push(item);

    let (mut item, _) = bb_item(
        "face_y0_sup",
        "0.0736789",
        0.0736789,
        1e-5,
        &Target::Restriction(FaceEdge::D4),
        &restriction_region(FaceEdge::D4),
        settings,
    );
    item.note = Some(format!(
        "closed-face supremum sits on the x = 1 boundary shared with c3; {}",
        item.note.take().unwrap_or_default()
    ));
    items.push(item);

    // Face y = 1.
    let (item, _) = bb_item(
        "face_y1_sup",
        "1/9",
        ONE_NINTH,
        settings.tol,
        &Target::Restriction(FaceEdge::D5),
        &restriction_region(FaceEdge::D5),
        settings,
    );
    items.push(item);
}

fn push_edge_items(items: &mut Vec<CertItem>, settings: &CertifySettings) {
    let specs: [(&str, FaceEdge, &str, f64, f64); 5] = [
        ("edge_c1_max", FaceEdge::C1, "0.0277778", 1.0 / 36.0, 1e-6),
        ("edge_c2_max", FaceEdge::C2, "1/9", ONE_NINTH, 1e-6),
        ("edge_c3_max", FaceEdge::C3, "0.0736789", 0.0736789, 1e-5),
        ("edge_c4_max", FaceEdge::C4, "1/9", ONE_NINTH, 1e-6),
        ("edge_c5_max", FaceEdge::C5, "0.0481125", 0.0481125, 1e-5),
    ];
    for (name, face, paper, value, tol) in specs {
        let (item, _) = bb_item(
            name,
            paper,
            value,
            tol,
            &Target::Restriction(face),
            &restriction_region(face),
            settings,
        );
        items.push(item);
    }

    match refine_root_1d(&[0.125, 0.0, -0.375], 0.0, 1.0) {
        Ok(root) => {
            let expected = 1.0 / 3.0f64.sqrt();
            items.push(two_sided(
                "edge_c5_argmax",
                "3^(-1/2)",
                expected,
                1e-6,
                root.mid(),
            ));
        }
        Err(err) => items.push(CertItem {
            name: "edge_c5_argmax".into(),
            paper: Some("3^(-1/2)".into()),
            computed: "unresolved".into(),
            value: None,
            tol: Some(1e-6),
            status: ItemStatus::Fail,
            note: Some(err.to_string()),
        }),
    }

    // Remaining cuboid edges, evaluated as degenerate boxes of the surface:
    // bounds are [p_lo, p_hi, x_lo, x_hi] with y free in [0, 1].
    let edge_boxes: [(&str, &str, f64, [f64; 4]); 3] = [
        ("edge_p0_x0_sup", "1/9", ONE_NINTH, [0.0, 0.0, 0.0, 0.0]),
        ("edge_p2_sup", "1/36", 1.0 / 36.0, [2.0, 2.0, 0.0, 1.0]),
        ("edge_p0_x1_sup", "1/16", 1.0 / 16.0, [0.0, 0.0, 1.0, 1.0]),
    ];
    for (name, paper, value, [plo, phi, xlo, xhi]) in edge_boxes {
        let region = BoxRegion::new(vec![
            Interval::new(plo, phi),
            Interval::new(xlo, xhi),
            Interval::new(0.0, 1.0),
        ]);
        let (item, _) = bb_item(
            name,
            paper,
            value,
            settings.tol,
            &settings.target(),
            &region,
            settings,
        );
        items.push(item);
    }

    items.push(edge_x1_exactness_item(100));
}

/// Certify the conjectured bound: branch-and-bound over the full cuboid,
/// every face and edge of the case analysis, and the documentary
/// cross-checks. A rigorous upper bound exceeding `1/9 + tol` surfaces as a
/// failed item, not an error.
pub fn certify_conjecture(settings: &CertifySettings) -> CertReport {
    let mut report = CertReport::default();

    let (mut sup_item, cert) = bb_item(
        "cuboid_sup",
        "1/9",
        ONE_NINTH,
        settings.tol,
        &settings.target(),
        &BoxRegion::cuboid(),
        settings,
    );
    if let Some(cert) = &cert {
        // The upper bound must also not undershoot the attained value.
        if cert.upper < ONE_NINTH - FLOAT_SLOP && sup_item.status == ItemStatus::Pass {
            sup_item.status = ItemStatus::Fail;
            sup_item.note = Some("upper bound fell below the attained value".into());
        }
    }
    report.items.push(sup_item);

    if let Some(cert) = cert {
        let dist = {
            let target = [0.0, 0.0, 1.0];
            cert.best_point
                .iter()
                .zip(target)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        };
        let mut item = two_sided("cuboid_argmax", "(0, 0, 1)", 0.0, 1e-3, dist);
        item.note = Some(format!(
            "distance from witness {:?} to the corner",
            cert.best_point
        ));
        report.items.push(item);
        report.cuboid = Some(cert);
    }

    push_face_items(&mut report.items, settings);
    push_edge_items(&mut report.items, settings);

    report.items.push(h3_polynomial_info());
    report.items.push(b00y_resolution_info());
    report.items.push(printed_edge_gap_info());
    report.items.push(nu2_resolution_info());

    report
}

/// Face table only.
pub fn faces_report(settings: &CertifySettings) -> CertReport {
    let mut report = CertReport::default();
    push_face_items(&mut report.items, settings);
    report
}

/// Edge table only, including the printed-display cross-checks.
pub fn edges_report(settings: &CertifySettings) -> CertReport {
    let mut report = CertReport::default();
    push_edge_items(&mut report.items, settings);
    report.items.push(printed_edge_gap_info());
    report.items.push(b00y_resolution_info());
    report
}
