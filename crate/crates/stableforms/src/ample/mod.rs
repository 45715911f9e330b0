//! Membership sets over a sliced hyperplane and their verification suites.
//!
//! A [`SlicingFrame`] fixes an anchor 3-form `rho`, a hyperplane `B` with
//! annihilator `theta`, and a complementary line. Two-forms `nu` on `B`
//! (written in the canonical basis of `B`, so on R^5) are extended to R^6
//! by pulling back along the projection with kernel the line; the frame's
//! central object is the affine family `theta ^ nu + rho`.
//!
//! The membership chain over a hyperplane configuration `Xi` containing `B`:
//!
//! * level 0 -- `theta ^ nu + rho` is stable positive;
//! * level 1 -- additionally every plane of `Xi` is generic for it;
//! * level 2 -- additionally any coinciding pair of planes stays away from
//!   `B`'s own eigenspace intersections;
//! * level 3 -- no pair coincides at all, i.e. `Xi` is generic.
//!
//! Each level removes a closed set from the previous one, so level `k`
//! membership implies level `k-1`.

pub mod hull;
pub mod strata;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::exterior::{
    basis_masks, pullback, wedge, AltForm, ExteriorError, LinearMap, MultiIndex, Vector,
};
use crate::grass::{
    classify_hyperplane, config_generic, intersect, subspace_equal, sum, GrassError,
    HyperplaneConfig, HyperplaneKind, Subspace,
};
use crate::report::VerifyReport;
use crate::sample;
use crate::scalar::Coeff;
use crate::stable::{lambda_invariant, para_complex, StableError};
use crate::tol;

#[derive(Debug, Error)]
pub enum AmpleError {
    #[error("frame is degenerate: {0}")]
    DegenerateFrame(String),
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("point is not on the stratum (residual {residual:e})")]
    NotOnStratum { residual: f64 },
    #[error("search budget of {budget} exhausted")]
    BudgetExhausted { budget: usize },
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error(transparent)]
    Grass(#[from] GrassError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// Oriented splitting `R^6 = L (+) B` with an anchor 3-form.
///
/// `nu` arguments to the membership operations live on `R^5`, identified
/// with `B` through the canonical basis of the plane.
#[derive(Clone, Debug)]
pub struct SlicingFrame<K> {
    pub rho: AltForm<K>,
    pub plane: Subspace<K>,
    /// Annihilating covector of the plane.
    pub theta: Vector<K>,
    /// Generator of the complementary line.
    pub line_gen: Vector<K>,
    inclusion: LinearMap<K>,
    projection: LinearMap<K>,
}

impl<K: Coeff> SlicingFrame<K> {
    /// Frame over `ker(theta)`; the complement generator is the coordinate
    /// axis pairing best with `theta`.
    pub fn from_theta(rho: AltForm<K>, theta: Vector<K>, eps: f64) -> Result<Self, AmpleError> {
        let plane = Subspace::hyperplane(&theta, eps)?;
        Self::assemble(rho, plane, theta, eps)
    }

    /// Frame over an explicitly given hyperplane; `theta` is its canonical
    /// annihilator.
    pub fn from_plane(rho: AltForm<K>, plane: Subspace<K>, eps: f64) -> Result<Self, AmpleError> {
        let theta = plane.annihilator(eps)?;
        Self::assemble(rho, plane, theta, eps)
    }

    fn assemble(
        rho: AltForm<K>,
        plane: Subspace<K>,
        theta: Vector<K>,
        eps: f64,
    ) -> Result<Self, AmpleError> {
        if rho.ambient() != 6 || rho.degree() != 3 {
            return Err(AmpleError::DegenerateFrame(
                "anchor must be a 3-form on R^6".into(),
            ));
        }
        if plane.dim() != 5 {
            return Err(AmpleError::DegenerateFrame("plane must be 5-dimensional".into()));
        }
        // complement generator: the coordinate axis with the largest pairing
        let (best, mag) = theta
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.magnitude()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("six components");
        if mag == 0.0 {
            return Err(AmpleError::DegenerateFrame("zero annihilator".into()));
        }
        let line_gen = Vector::basis(6, best + 1);
        let mut cols = vec![line_gen.clone()];
        cols.extend(plane.basis_vectors());
        let t = LinearMap::from_cols(cols);
        let t_inv = t
            .mat
            .inverse(eps.max(if K::EXACT { 0.0 } else { tol::RANK_REL }))
            .ok_or_else(|| AmpleError::DegenerateFrame("line does not complement plane".into()))?;
        let projection = LinearMap::new(crate::linalg::Mat::from_fn(5, 6, |i, j| {
            t_inv[(i + 1, j)].clone()
        }));
        let inclusion = LinearMap::from_cols(plane.basis_vectors());
        Ok(SlicingFrame {
            rho,
            plane,
            theta,
            line_gen,
            inclusion,
            projection,
        })
    }

    pub fn theta_form(&self) -> AltForm<K> {
        let mut out = AltForm::zero(6, 1);
        for (i, c) in self.theta.comps.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(
                    MultiIndex::from_indices(&[(i + 1) as u8], 6).expect("valid index"),
                    c.clone(),
                );
            }
        }
        out
    }

    /// Extension of a 2-form on the plane to `R^6` (pullback along the
    /// projection that kills the complement line). Any two extensions differ
    /// by a multiple of `theta`, so `theta ^ extend(nu)` is well defined.
    pub fn extend(&self, nu: &AltForm<K>) -> Result<AltForm<K>, AmpleError> {
        if nu.ambient() != 5 || nu.degree() != 2 {
            return Err(AmpleError::PreconditionNotMet(
                "nu must be a 2-form in plane coordinates".into(),
            ));
        }
        Ok(pullback(&self.projection, nu)?)
    }

    /// Restriction of a form on `R^6` to the plane, in plane coordinates.
    pub fn restrict(&self, a: &AltForm<K>) -> Result<AltForm<K>, AmpleError> {
        Ok(pullback(&self.inclusion, a)?)
    }

    /// The sliced form `theta ^ nu + rho`.
    pub fn shifted(&self, nu: &AltForm<K>) -> Result<AltForm<K>, AmpleError> {
        let ext = self.extend(nu)?;
        Ok(wedge(&self.theta_form(), &ext)?.add(&self.rho))
    }

    /// Quadratic-invariant coefficient of the sliced form.
    pub fn lambda_of(&self, nu: &AltForm<K>) -> Result<K, AmpleError> {
        Ok(lambda_invariant(&self.shifted(nu)?)?.lambda_coeff)
    }

    pub fn to_f64(&self) -> SlicingFrame<f64> {
        SlicingFrame {
            rho: self.rho.to_f64(),
            plane: self.plane.to_f64(),
            theta: self.theta.to_f64(),
            line_gen: self.line_gen.to_f64(),
            inclusion: LinearMap::new(crate::linalg::Mat::from_fn(6, 5, |i, j| {
                self.inclusion.mat[(i, j)].to_f64()
            })),
            projection: LinearMap::new(crate::linalg::Mat::from_fn(5, 6, |i, j| {
                self.projection.mat[(i, j)].to_f64()
            })),
        }
    }
}

/// Restriction of a 3-form to a hyperplane, in the plane's canonical basis.
pub fn restrict_to_hyperplane<K: Coeff>(
    rho: &AltForm<K>,
    plane: &Subspace<K>,
    eps: f64,
) -> Result<AltForm<K>, AmpleError> {
    let frame = SlicingFrame::from_plane(rho.clone(), plane.clone(), eps)?;
    frame.restrict(rho)
}

/// Open-orbit test for 3-forms on R^5 via the dual bivector: `tau` is in the
/// open orbit iff `pi ^ pi != 0`, where `pi` is the 2-vector dual to `tau`
/// under `wedge^3 (R^5)* ~ wedge^2 R^5 (x) wedge^5 (R^5)*`.
///
/// The dual distinguishes exactly zero forms (`pi = 0`), non-zero
/// decomposable forms (`pi` decomposable, `pi ^ pi = 0`) and the open orbit.
pub fn is_ospseudoplectic<K: Coeff>(tau: &AltForm<K>, eps: f64) -> Result<bool, AmpleError> {
    if tau.ambient() != 5 || tau.degree() != 3 {
        return Err(AmpleError::PreconditionNotMet(
            "open-orbit test expects a 3-form on R^5".into(),
        ));
    }
    // bivector coefficients: pi_Jc = sign(J^c, J) tau_J
    let full = MultiIndex::full(5);
    let mut pi: std::collections::BTreeMap<u32, K> = Default::default();
    for (idx, c) in tau.terms() {
        let comp = MultiIndex::from_mask(full.mask() & !idx.mask());
        let (_, sign) = comp.merge(*idx).expect("disjoint by construction");
        let signed = if sign > 0 { c.clone() } else { K::zero() - c.clone() };
        pi.insert(comp.mask(), signed);
    }
    // pi ^ pi in wedge^4 R^5: for each 4-subset, sum over complementary pairs
    let scale = tau.max_magnitude().max(1.0);
    for quad in basis_masks(5, 4) {
        let mut acc = K::zero();
        for pair in basis_masks(5, 2) {
            if pair & quad == pair {
                let other = quad & !pair;
                if let (Some(a), Some(b)) = (pi.get(&pair), pi.get(&other)) {
                    let (_, sign) = MultiIndex::from_mask(pair)
                        .merge(MultiIndex::from_mask(other))
                        .expect("disjoint");
                    let term = a.clone() * b.clone();
                    acc = acc + if sign > 0 { term } else { K::zero() - term };
                }
            }
        }
        if !acc.is_negligible(eps * scale * scale) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Membership outcome with the deepest level reached and a witness for the
/// first failure.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipOutcome {
    pub ok: bool,
    pub level_requested: u8,
    pub level_reached: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

/// Level-0 membership: the sliced form is stable positive.
pub fn in_n0<K: Coeff>(frame: &SlicingFrame<K>, nu: &AltForm<K>) -> Result<bool, AmpleError> {
    Ok(frame.lambda_of(nu)?.is_positive())
}

/// Membership at levels 1..=3 over a configuration containing the frame's
/// plane. Implements the defining conditions literally through hyperplane
/// classification and subspace comparison.
pub fn in_n_level<K: Coeff>(
    frame: &SlicingFrame<K>,
    xi: &HyperplaneConfig<K>,
    nu: &AltForm<K>,
    level: u8,
    eps: f64,
) -> Result<MembershipOutcome, AmpleError> {
    assert!((1..=3).contains(&level), "level must be 1, 2 or 3");
    let fail = |reached: u8, witness: serde_json::Value| MembershipOutcome {
        ok: false,
        level_requested: level,
        level_reached: reached,
        witness: Some(witness),
    };

    let rho_prime = frame.shifted(nu)?;
    let class = lambda_invariant(&rho_prime)?;
    if !class.lambda_coeff.is_positive() {
        return Ok(fail(0, json!({ "kind": "not-stable" })));
    }
    let pc = para_complex(&rho_prime, eps)?;

    // level 1: every plane generic
    let mut classes = Vec::with_capacity(xi.len());
    for (i, b) in xi.planes().iter().enumerate() {
        let c = classify_hyperplane(b, &pc, eps)?;
        if c.kind != HyperplaneKind::Generic {
            if level >= 1 {
                return Ok(fail(0, json!({ "kind": "non-generic-plane", "plane": i })));
            }
        }
        classes.push(c);
    }
    if level == 1 {
        return Ok(MembershipOutcome {
            ok: true,
            level_requested: level,
            level_reached: 1,
            witness: None,
        });
    }

    // locate the frame plane inside the configuration
    let b_idx = xi
        .planes()
        .iter()
        .position(|p| subspace_equal(p, &frame.plane, tol::SUBSPACE_EQ))
        .ok_or_else(|| {
            AmpleError::PreconditionNotMet("configuration must contain the frame plane".into())
        })?;

    // pair analysis
    let mut coinciding: Vec<(usize, usize)> = Vec::new();
    for i in 0..xi.len() {
        for j in (i + 1)..xi.len() {
            let same_plus = subspace_equal(&classes[i].int_plus, &classes[j].int_plus, tol::SUBSPACE_EQ);
            let same_minus =
                subspace_equal(&classes[i].int_minus, &classes[j].int_minus, tol::SUBSPACE_EQ);
            if same_plus && same_minus {
                coinciding.push((i, j));
            }
        }
    }

    // level 2: coinciding pairs must avoid B's own intersections
    for &(i, j) in &coinciding {
        for sign_plus in [true, false] {
            let (pi, pb) = if sign_plus {
                (&classes[i].int_plus, &classes[b_idx].int_plus)
            } else {
                (&classes[i].int_minus, &classes[b_idx].int_minus)
            };
            if subspace_equal(pi, pb, tol::SUBSPACE_EQ) {
                return Ok(fail(
                    1,
                    json!({
                        "kind": "coinciding-pair-touches-frame",
                        "pair": [i, j],
                        "sign": if sign_plus { "plus" } else { "minus" },
                    }),
                ));
            }
        }
    }
    if level == 2 {
        return Ok(MembershipOutcome {
            ok: true,
            level_requested: level,
            level_reached: 2,
            witness: None,
        });
    }

    // level 3: no coinciding pair at all
    if let Some(&(i, j)) = coinciding.first() {
        return Ok(fail(2, json!({ "kind": "coinciding-pair", "pair": [i, j] })));
    }
    Ok(MembershipOutcome {
        ok: true,
        level_requested: level,
        level_reached: 3,
        witness: None,
    })
}

// ---------------------------------------------------------------------------
// Sampling within the membership sets (float backend).
// ---------------------------------------------------------------------------

/// Margin requirement used by the float samplers: the invariant must exceed
/// the boundary-safety threshold scaled by the fourth power of the sliced
/// form's size (the invariant is quartic).
pub fn margin_ok(lambda: f64, rho_prime: &AltForm<f64>) -> bool {
    lambda > tol::MEMBER_MARGIN * rho_prime.max_magnitude().max(1.0).powi(4)
}

/// Rejection-sample a level-0 member with a conditioning margin.
///
/// Each sample draws fresh Gaussians from its own stream; if no draw at the
/// given spread lands inside, the last draw is halved towards zero (the
/// anchor is an interior point whenever it is itself stable).
pub fn sample_n0(
    frame: &SlicingFrame<f64>,
    rng: &mut rand_chacha::ChaCha8Rng,
    spread: f64,
) -> Option<AltForm<f64>> {
    let mut last: Option<AltForm<f64>> = None;
    for _ in 0..200 {
        let nu = sample::random_form(rng, 5, 2, spread);
        let rho_prime = frame.shifted(&nu).ok()?;
        let lambda = lambda_invariant(&rho_prime).ok()?.lambda_coeff;
        if margin_ok(lambda, &rho_prime) {
            return Some(nu);
        }
        last = Some(nu);
    }
    // anneal the last draw towards the anchor
    let mut nu = last?;
    for _ in 0..60 {
        nu = nu.scale_by(&0.5);
        let rho_prime = frame.shifted(&nu).ok()?;
        let lambda = lambda_invariant(&rho_prime).ok()?.lambda_coeff;
        if margin_ok(lambda, &rho_prime) {
            return Some(nu);
        }
    }
    None
}

/// Dense coordinates of a 2-form on the plane (10 components, mask order).
pub fn nu_to_dense(nu: &AltForm<f64>) -> Vec<f64> {
    nu.to_dense()
}

pub fn nu_from_dense(v: &[f64]) -> AltForm<f64> {
    AltForm::from_dense(5, 2, v)
}

// ---------------------------------------------------------------------------
// Genericity-stability suites.
// ---------------------------------------------------------------------------

/// Monte-Carlo verification that slicing preserves the genericity status of
/// the frame plane and the four-dimensional sum of its eigenspace
/// intersections.
///
/// With a generic plane: for every sampled member `nu`, (a) the plane stays
/// generic for the sliced form, (b) the direct sum of the two eigenspace
/// intersections is the same 4-plane as at the anchor. With a non-generic
/// plane the suite switches to checking that non-genericity persists and
/// marks the report as a degenerate-frame run.
pub fn verify_gen_stab(
    frame: &SlicingFrame<f64>,
    samples: u64,
    seed: u64,
    eps: f64,
) -> Result<VerifyReport, AmpleError> {
    let mut report = VerifyReport::new("gen-stab", "genericity-stability", seed, samples);
    report.tolerance("subspace_eq", tol::SUBSPACE_EQ);
    report.tolerance("member_margin", tol::MEMBER_MARGIN);

    let pc0 = para_complex(&frame.rho, eps)?;
    let class0 = classify_hyperplane(&frame.plane, &pc0, eps)?;
    let generic_frame = class0.kind == HyperplaneKind::Generic;
    let expected_sum = sum(&class0.int_plus, &class0.int_minus, eps);
    if !generic_frame {
        report.note("degenerate-frame: plane is non-generic; checking persistence instead");
    }

    use rayon::prelude::*;
    let outcomes: Vec<Option<serde_json::Value>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample::stream(seed, i);
            let Some(nu) = sample_n0(frame, &mut rng, 1.0) else {
                return Some(json!({ "sample": i, "kind": "sampling-failed" }));
            };
            let rho_prime = frame.shifted(&nu).ok()?;
            let pc = match para_complex(&rho_prime, eps) {
                Ok(pc) => pc,
                Err(e) => {
                    return Some(json!({
                        "sample": i, "kind": "eigenspace-failure", "error": e.to_string()
                    }))
                }
            };
            let class = match classify_hyperplane(&frame.plane, &pc, eps) {
                Ok(c) => c,
                Err(e) => {
                    return Some(json!({
                        "sample": i, "kind": "classification-failure", "error": e.to_string()
                    }))
                }
            };
            if generic_frame {
                if class.kind != HyperplaneKind::Generic {
                    return Some(json!({
                        "sample": i, "kind": "plane-left-generic-stratum",
                        "class": format!("{:?}", class.kind),
                    }));
                }
                let s = sum(&class.int_plus, &class.int_minus, eps);
                if !subspace_equal(&s, &expected_sum, tol::SUBSPACE_EQ) {
                    return Some(json!({
                        "sample": i, "kind": "intersection-sum-moved",
                        "nu": nu_to_dense(&nu),
                    }));
                }
            } else if class.kind == HyperplaneKind::Generic {
                return Some(json!({
                    "sample": i, "kind": "non-generic-plane-became-generic",
                    "nu": nu_to_dense(&nu),
                }));
            }
            None
        })
        .collect();

    for w in outcomes.into_iter().flatten() {
        report.fail(w);
    }
    report.set_count(
        "checked",
        samples - report.counts.get("failures").copied().unwrap_or(0),
    );
    Ok(report)
}

/// Verification of the persistence of eigenspace-intersection inclusions:
/// if `B cap E_pm` (for the sliced form) sits inside another plane's
/// intersections, the same inclusions hold at the anchor and the pair is
/// non-generic there.
pub fn verify_non_gen_stab(
    frame: &SlicingFrame<f64>,
    other: &Subspace<f64>,
    nu: &AltForm<f64>,
    eps: f64,
) -> Result<VerifyReport, AmpleError> {
    let mut report = VerifyReport::new("non-gen-stab", "non-genericity-persistence", 0, 1);
    report.tolerance("subspace_eq", tol::SUBSPACE_EQ);

    let rho_prime = frame.shifted(nu)?;
    if !lambda_invariant(&rho_prime)?.lambda_coeff.is_positive() {
        return Err(AmpleError::PreconditionNotMet("nu is not a level-0 member".into()));
    }
    let pc_prime = para_complex(&rho_prime, eps)?;
    let b_plus = intersect(&frame.plane, &pc_prime.e_plus, eps);
    let b_minus = intersect(&frame.plane, &pc_prime.e_minus, eps);
    let o_plus = intersect(other, &pc_prime.e_plus, eps);
    let o_minus = intersect(other, &pc_prime.e_minus, eps);
    if !(o_plus.contains_subspace(&b_plus, tol::SUBSPACE_EQ)
        && o_minus.contains_subspace(&b_minus, tol::SUBSPACE_EQ))
    {
        return Err(AmpleError::PreconditionNotMet(
            "sliced-form inclusions do not hold".into(),
        ));
    }

    let pc0 = para_complex(&frame.rho, eps)?;
    let b0_plus = intersect(&frame.plane, &pc0.e_plus, eps);
    let b0_minus = intersect(&frame.plane, &pc0.e_minus, eps);
    let o0_plus = intersect(other, &pc0.e_plus, eps);
    let o0_minus = intersect(other, &pc0.e_minus, eps);
    if !o0_plus.contains_subspace(&b0_plus, tol::SUBSPACE_EQ) {
        report.fail(json!({ "kind": "anchor-inclusion-failed", "sign": "plus" }));
    }
    if !o0_minus.contains_subspace(&b0_minus, tol::SUBSPACE_EQ) {
        report.fail(json!({ "kind": "anchor-inclusion-failed", "sign": "minus" }));
    }
    let xi = HyperplaneConfig::new(vec![frame.plane.clone(), other.clone()], tol::SUBSPACE_EQ)?;
    let (generic, _) = config_generic(&xi, &pc0, eps, tol::SUBSPACE_EQ)?;
    if generic {
        report.fail(json!({ "kind": "pair-unexpectedly-generic" }));
    }
    report.set_count("checked", 1);
    Ok(report)
}

/// Frame with a decomposable restriction: anchor `theta^{456}` over the
/// plane spanned by `e2..e6` with annihilator `theta^1`.
pub fn decomposable_frame<K: Coeff>() -> SlicingFrame<K> {
    let anchor = AltForm::monomial(6, &[4, 5, 6]).expect("valid monomial");
    let theta = Vector::basis(6, 1);
    SlicingFrame::from_theta(anchor, theta, if K::EXACT { 0.0 } else { tol::RANK_REL })
        .expect("decomposable frame is well formed")
}

/// Exact verification of the two-component structure over the decomposable
/// frame: membership is equivalent to a single coefficient being non-zero,
/// each sign component is convex, and equal-magnitude cross-sign midpoints
/// fall on the wall.
pub fn two_component_structure(samples: u64, seed: u64) -> Result<VerifyReport, AmpleError> {
    use crate::scalar::Rat;
    let frame: SlicingFrame<Rat> = decomposable_frame();
    let mut report =
        VerifyReport::new("two-component", "decomposable-two-components", seed, samples);
    report.tolerance("exact", 0.0);

    // the pivotal coefficient: local theta^{12} pairs e2 with e3
    let pivot = MultiIndex::from_indices(&[1, 2], 5).expect("valid");
    let mut members: Vec<(AltForm<Rat>, bool)> = Vec::new();

    for i in 0..samples {
        let mut rng = sample::stream(seed, i);
        let omega = sample::random_rational_form(&mut rng, 5, 2);
        let w23 = omega.coeff(pivot);
        let lambda = frame.lambda_of(&omega)?;
        if lambda != w23.clone() * w23.clone() {
            report.fail(json!({
                "sample": i,
                "kind": "invariant-formula-mismatch",
                "w23": w23.render(),
                "lambda": lambda.render(),
            }));
            continue;
        }
        let member = in_n0(&frame, &omega)?;
        if member != !w23.is_zero() {
            report.fail(json!({ "sample": i, "kind": "membership-biconditional-failed" }));
            continue;
        }
        if member {
            members.push((omega, w23.is_positive()));
        }
    }
    report.set_count("members", members.len() as u64);

    // per-component convexity on random same-sign pairs
    let positives: Vec<&AltForm<Rat>> = members.iter().filter(|m| m.1).map(|m| &m.0).collect();
    let negatives: Vec<&AltForm<Rat>> = members.iter().filter(|m| !m.1).map(|m| &m.0).collect();
    let mut convex_checks = 0u64;
    for (pool, name) in [(&positives, "plus"), (&negatives, "minus")] {
        if pool.len() < 2 {
            continue;
        }
        for i in 0..pool.len().min(64) {
            let mut rng = sample::stream(seed ^ 0x5eed, i as u64);
            let a = pool[i];
            let b = pool[(i * 7 + 3) % pool.len()];
            let t = {
                use rand::Rng;
                crate::scalar::rat(rng.gen_range(1_i64..=9), 10)
            };
            let one_minus = crate::scalar::rint(1) - t.clone();
            let mix = a.scale_by(&t).add(&b.scale_by(&one_minus));
            convex_checks += 1;
            if !in_n0(&frame, &mix)? {
                report.fail(json!({ "kind": "convex-combination-left-component", "component": name }));
            }
        }
    }
    report.set_count("convex_checks", convex_checks);

    // cross-sign midpoints with equal magnitudes land exactly on the wall
    let mut cross_checks = 0u64;
    for (i, p) in positives.iter().take(32).enumerate() {
        if let Some(nref) = negatives.get(i % negatives.len().max(1)) {
            let c_pos = p.coeff(pivot);
            let c_neg = nref.coeff(pivot);
            if c_neg.is_zero() {
                continue;
            }
            // rescale the negative member so the pivot coefficients cancel
            let ratio = (crate::scalar::rint(0) - c_pos.clone()) / c_neg.clone();
            let scaled = nref.scale_by(&ratio);
            let half = crate::scalar::rat(1, 2);
            let mid = p.scale_by(&half).add(&scaled.scale_by(&half));
            cross_checks += 1;
            if in_n0(&frame, &mid)? {
                report.fail(json!({ "kind": "cross-sign-midpoint-was-member" }));
            }
            if !frame.lambda_of(&mid)?.is_zero() {
                report.fail(json!({ "kind": "cross-sign-midpoint-invariant-nonzero" }));
            }
        }
    }
    report.set_count("cross_checks", cross_checks);
    Ok(report)
}

/// The standard generic frame: reference anchor over the plane
/// `<e1, e2, e4, e5, e3 + e6>` with annihilator `theta^3 - theta^6`.
pub fn standard_generic_frame<K: Coeff>() -> SlicingFrame<K> {
    let rho = crate::verify::fixtures::rho_plus_k::<K>();
    let plane = Subspace::from_int_rows(
        6,
        &[
            &[1, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 1, 0, 0, 1],
        ],
        if K::EXACT { 0.0 } else { tol::RANK_REL },
    );
    SlicingFrame::from_plane(rho, plane, if K::EXACT { 0.0 } else { tol::RANK_REL })
        .expect("standard frame is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint, Rat};
    use crate::verify::fixtures::{mono, mono5, rho_plus};

    #[test]
    fn restriction_of_reference_form_to_plus_plane_is_decomposable() {
        let plus_plane: Subspace<Rat> = Subspace::from_int_rows(
            6,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
            ],
            0.0,
        );
        let tau = restrict_to_hyperplane(&rho_plus(), &plus_plane, 0.0).unwrap();
        assert_eq!(tau, mono5(&[1, 2, 3]));
        assert!(!is_ospseudoplectic(&tau, 0.0).unwrap());
    }

    #[test]
    fn restriction_to_minus_plane_is_decomposable() {
        let minus_plane: Subspace<Rat> = Subspace::from_int_rows(
            6,
            &[
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 0, 0, 0, 0, 1],
            ],
            0.0,
        );
        let tau = restrict_to_hyperplane(&rho_plus(), &minus_plane, 0.0).unwrap();
        assert!(!is_ospseudoplectic(&tau, 0.0).unwrap());
        assert!(!tau.is_zero());
    }

    #[test]
    fn restriction_to_generic_plane_is_open_orbit() {
        let frame: SlicingFrame<Rat> = standard_generic_frame();
        let tau = frame.restrict(&frame.rho).unwrap();
        assert!(is_ospseudoplectic(&tau, 0.0).unwrap());
    }

    #[test]
    fn open_orbit_test_reference_values() {
        let open = mono5(&[1, 2, 3]).add(&mono5(&[1, 4, 5]));
        assert!(is_ospseudoplectic(&open, 0.0).unwrap());
        assert!(!is_ospseudoplectic(&mono5(&[1, 2, 3]), 0.0).unwrap());
        assert!(!is_ospseudoplectic(&AltForm::<Rat>::zero(5, 3), 0.0).unwrap());
    }

    #[test]
    fn level_zero_membership_reference_values() {
        let frame: SlicingFrame<Rat> = standard_generic_frame();
        assert!(in_n0(&frame, &AltForm::zero(5, 2)).unwrap());

        let dec: SlicingFrame<Rat> = decomposable_frame();
        // omega with omega(e2, e3) = 0: not a member
        let omega_zero = mono5(&[1, 3]).add(&mono5(&[2, 4]));
        assert!(!in_n0(&dec, &omega_zero).unwrap());
        // omega with omega(e2, e3) = 2: member with invariant 4
        let omega_two = mono5(&[1, 2]).scale_by(&rint(2)).add(&mono5(&[3, 4]));
        assert!(in_n0(&dec, &omega_two).unwrap());
        assert_eq!(dec.lambda_of(&omega_two).unwrap(), rint(4));
    }

    #[test]
    fn extension_is_theta_independent_in_the_wedge() {
        let frame: SlicingFrame<Rat> = standard_generic_frame();
        // theta ^ extend(restrict(beta)) = theta ^ beta for any 2-form beta
        let beta = mono(&[1, 4]).add(&mono(&[3, 5]).scale_by(&rat(2, 3)));
        let lhs = wedge(
            &frame.theta_form(),
            &frame.extend(&frame.restrict(&beta).unwrap()).unwrap(),
        )
        .unwrap();
        let rhs = wedge(&frame.theta_form(), &beta).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership_levels_on_normal_form_pair() {
        let frame: SlicingFrame<Rat> = standard_generic_frame();
        // companion plane <e1, e3, e4, e5, e2 + e6>
        let bp: Subspace<Rat> = Subspace::from_int_rows(
            6,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 1, 0, 0, 0, 1],
            ],
            0.0,
        );
        let xi =
            HyperplaneConfig::new(vec![frame.plane.clone(), bp.clone()], tol::SUBSPACE_EQ).unwrap();
        let zero = AltForm::zero(5, 2);
        for level in 1..=3 {
            let out = in_n_level(&frame, &xi, &zero, level, 0.0).unwrap();
            assert!(out.ok, "level {level} should hold at the normal form");
        }
        // at nu = 0 the companion shares the minus intersection with the frame
        let pc = para_complex(&frame.rho, 0.0).unwrap();
        let shared_b = intersect(&frame.plane, &pc.e_minus, 0.0);
        let shared_bp = intersect(&bp, &pc.e_minus, 0.0);
        assert!(subspace_equal(&shared_b, &shared_bp, tol::SUBSPACE_EQ));
        assert_eq!(shared_b.dim(), 2);
    }

    #[test]
    fn singleton_configuration_is_level_three_for_members() {
        let frame: SlicingFrame<f64> = standard_generic_frame::<Rat>().to_f64();
        let xi = HyperplaneConfig::new(vec![frame.plane.clone()], tol::SUBSPACE_EQ).unwrap();
        for i in 0..32 {
            let mut rng = sample::stream(99, i);
            let nu = sample_n0(&frame, &mut rng, 1.0).expect("sampling succeeds");
            let out = in_n_level(&frame, &xi, &nu, 3, tol::RANK_REL).unwrap();
            assert!(out.ok, "sample {i} failed at level {}", out.level_reached);
        }
    }

    #[test]
    fn gen_stab_on_standard_frame_small_run() {
        let frame: SlicingFrame<f64> = standard_generic_frame::<Rat>().to_f64();
        let report = verify_gen_stab(&frame, 64, 7, tol::RANK_REL).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);
        // the common sum is <e1, e2, e4, e5>
        let pc = para_complex(&frame.rho, tol::RANK_REL).unwrap();
        let class = classify_hyperplane(&frame.plane, &pc, tol::RANK_REL).unwrap();
        let s = sum(&class.int_plus, &class.int_minus, tol::RANK_REL);
        let expected: Subspace<f64> = Subspace::from_int_rows(
            6,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
            ],
            tol::RANK_REL,
        );
        assert!(subspace_equal(&s, &expected, tol::SUBSPACE_EQ));
    }

    #[test]
    fn gen_stab_degenerate_frame_reports_persistence() {
        // plus-type plane <e1..e5> is non-generic and stays so
        let plane: Subspace<f64> = Subspace::from_int_rows(
            6,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
            ],
            tol::RANK_REL,
        );
        let frame = SlicingFrame::from_plane(rho_plus().to_f64(), plane, tol::RANK_REL).unwrap();
        let report = verify_gen_stab(&frame, 48, 11, tol::RANK_REL).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);
        assert!(report.notes.iter().any(|n| n.contains("degenerate-frame")));
    }

    #[test]
    fn non_gen_stab_constructed_witness() {
        // start from the standard frame, slice by some member, then build a
        // plane containing both sliced intersections
        let frame: SlicingFrame<f64> = standard_generic_frame::<Rat>().to_f64();
        let mut rng = sample::stream(21, 0);
        let nu = sample_n0(&frame, &mut rng, 0.7).unwrap();
        let rho_prime = frame.shifted(&nu).unwrap();
        let pc = para_complex(&rho_prime, tol::RANK_REL).unwrap();
        let bp = intersect(&frame.plane, &pc.e_plus, tol::RANK_REL);
        let bm = intersect(&frame.plane, &pc.e_minus, tol::RANK_REL);
        let four = sum(&bp, &bm, tol::RANK_REL);
        // extend the 4-plane by a vector outside it and outside the frame plane
        let mut vecs = four.basis_vectors();
        vecs.push(Vector::new(vec![0.31, -0.17, 0.83, 0.29, -0.55, 0.41]));
        let other = Subspace::span(6, &vecs, tol::RANK_REL);
        assert_eq!(other.dim(), 5);
        let report = verify_non_gen_stab(&frame, &other, &nu, tol::RANK_REL).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);
    }

    #[test]
    fn non_gen_stab_vacuous_branch() {
        // a generic companion pair fails the precondition for generic nu
        let frame: SlicingFrame<f64> = standard_generic_frame::<Rat>().to_f64();
        let bp: Subspace<f64> = Subspace::from_int_rows(
            6,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 1, 0, 0, 0, 1],
            ],
            tol::RANK_REL,
        );
        let mut rng = sample::stream(22, 0);
        let nu = sample_n0(&frame, &mut rng, 0.7).unwrap();
        let err = verify_non_gen_stab(&frame, &bp, &nu, tol::RANK_REL);
        assert!(matches!(err, Err(AmpleError::PreconditionNotMet(_))));
    }

    #[test]
    fn non_gen_stab_identity_slice_is_tautological() {
        let frame: SlicingFrame<f64> = standard_generic_frame::<Rat>().to_f64();
        let pc = para_complex(&frame.rho, tol::RANK_REL).unwrap();
        let bp = intersect(&frame.plane, &pc.e_plus, tol::RANK_REL);
        let bm = intersect(&frame.plane, &pc.e_minus, tol::RANK_REL);
        let four = sum(&bp, &bm, tol::RANK_REL);
        let mut vecs = four.basis_vectors();
        vecs.push(Vector::new(vec![0.11, 0.47, -0.23, 0.67, 0.05, -0.31]));
        let other = Subspace::span(6, &vecs, tol::RANK_REL);
        let zero = AltForm::zero(5, 2);
        let report = verify_non_gen_stab(&frame, &other, &zero, tol::RANK_REL).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn two_component_structure_small_run() {
        let report = two_component_structure(128, 3).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);
        assert!(report.counts["members"] > 64);
        assert!(report.counts["cross_checks"] > 8);
    }

    #[test]
    fn membership_chain_is_monotone() {
        let frame: SlicingFrame<f64> = standard_generic_frame::<Rat>().to_f64();
        let bp: Subspace<f64> = Subspace::from_int_rows(
            6,
            &[
                &[1, 0, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, 0],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 1, 0, 0, 0, 1],
            ],
            tol::RANK_REL,
        );
        let xi =
            HyperplaneConfig::new(vec![frame.plane.clone(), bp], tol::SUBSPACE_EQ).unwrap();
        for i in 0..24 {
            let mut rng = sample::stream(31, i);
            let nu = sample_n0(&frame, &mut rng, 0.8).unwrap();
            let l3 = in_n_level(&frame, &xi, &nu, 3, tol::RANK_REL).unwrap();
            let l2 = in_n_level(&frame, &xi, &nu, 2, tol::RANK_REL).unwrap();
            let l1 = in_n_level(&frame, &xi, &nu, 1, tol::RANK_REL).unwrap();
            if l3.ok {
                assert!(l2.ok);
            }
            if l2.ok {
                assert!(l1.ok);
            }
            if l1.ok {
                assert!(in_n0(&frame, &nu).unwrap());
            }
        }
    }

    #[test]
    fn translation_structure_of_membership_sets() {
        // anchoring at theta ^ nu0 + rho shifts the membership set by nu0
        let frame: SlicingFrame<f64> = standard_generic_frame::<Rat>().to_f64();
        let mut rng = sample::stream(77, 0);
        let nu0 = sample_n0(&frame, &mut rng, 0.6).unwrap();
        let shifted_anchor = frame.shifted(&nu0).unwrap();
        let shifted_frame =
            SlicingFrame::from_plane(shifted_anchor, frame.plane.clone(), tol::RANK_REL).unwrap();
        for i in 1..24 {
            let mut rng = sample::stream(77, i);
            let nu = sample::random_form(&mut rng, 5, 2, 0.8);
            let lhs = in_n0(&shifted_frame, &nu).unwrap();
            let rhs = in_n0(&frame, &nu.add(&nu0)).unwrap();
            assert_eq!(lhs, rhs, "sample {i}");
        }
    }
}
