//! Convex-hull and path-connectivity certificates for membership sets.
//!
//! Along any line `nu* + t d` the invariant coefficient of the sliced form
//! is a polynomial in `t` of degree at most three: the quartic term would be
//! the invariant of `theta ^ d` itself, which vanishes because that form
//! has a repeated `theta` factor in its twisted endomorphism. Membership
//! intervals along a line are therefore the positivity intervals of a cubic,
//! recovered exactly from five interpolation nodes, and every generic line
//! carries an unbounded membership tail on one side. The hull certificate
//! harvests member points from such intervals over random directions and
//! solves a nonnegative least-squares system for convex weights.

use serde_json::json;

use super::{margin_ok, nu_from_dense, sample_n0, AmpleError, SlicingFrame};
use crate::exterior::AltForm;
use crate::grass::HyperplaneConfig;
use crate::linalg::Mat;
use crate::report::VerifyReport;
use crate::sample;
use crate::stable::lambda_invariant;
use crate::tol;

/// Coefficients (ascending) of the invariant polynomial along
/// `t -> lambda(theta ^ (base + t dir) + rho)`, via interpolation at five
/// nodes. The leading (quartic) coefficient is returned too; it sits at the
/// rounding floor and is trimmed by the root finder.
pub fn line_poly(
    frame: &SlicingFrame<f64>,
    base: &AltForm<f64>,
    dir: &AltForm<f64>,
) -> Result<[f64; 5], AmpleError> {
    let nodes = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let mut values = [0.0; 5];
    for (i, t) in nodes.iter().enumerate() {
        let nu = base.add(&dir.scale_by(t));
        values[i] = frame.lambda_of(&nu)?;
    }
    let vand = Mat::from_fn(5, 5, |i, j| nodes[i].powi(j as i32));
    let c = vand
        .solve(&values.to_vec(), 1e-14)
        .expect("interpolation nodes are distinct");
    Ok([c[0], c[1], c[2], c[3], c[4]])
}

/// Real roots of a polynomial of degree <= 4 (ascending coefficients),
/// by recursive critical-point isolation and bisection.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let max_c = coeffs.iter().fold(0.0_f64, |a, c| a.max(c.abs()));
    if max_c == 0.0 {
        return Vec::new();
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-11 * max_c {
        deg -= 1;
    }
    let c = &coeffs[..=deg];
    match deg {
        0 => Vec::new(),
        1 => vec![-c[0] / c[1]],
        2 => {
            let disc = c[1] * c[1] - 4.0 * c[2] * c[0];
            if disc < 0.0 {
                return Vec::new();
            }
            let s = disc.sqrt();
            // numerically stable quadratic roots
            let q = -0.5 * (c[1] + c[1].signum() * s);
            let mut roots = if q == 0.0 {
                vec![0.0, 0.0]
            } else {
                vec![q / c[2], c[0] / q]
            };
            roots.sort_by(f64::total_cmp);
            roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
            roots
        }
        _ => {
            let eval = |t: f64| horner(c, t);
            // critical points split the line into monotone pieces
            let deriv: Vec<f64> = (1..=deg).map(|k| c[k] * k as f64).collect();
            let mut knots = real_roots(&deriv);
            knots.sort_by(f64::total_cmp);
            // Cauchy bound on root magnitude
            let bound = 1.0 + c[..deg].iter().map(|x| (x / c[deg]).abs()).fold(0.0, f64::max);
            let mut grid = vec![-bound];
            grid.extend(knots.iter().filter(|k| k.abs() < bound));
            grid.push(bound);
            let mut roots = Vec::new();
            for w in grid.windows(2) {
                let (a, b) = (w[0], w[1]);
                let (fa, fb) = (eval(a), eval(b));
                if fa == 0.0 {
                    roots.push(a);
                }
                if fa * fb < 0.0 {
                    roots.push(bisect(&eval, a, b));
                }
            }
            let last = *grid.last().expect("non-empty grid");
            if eval(last) == 0.0 {
                roots.push(last);
            }
            roots.sort_by(f64::total_cmp);
            roots.dedup_by(|a, b| (*a - *b).abs() < 1e-10 * bound.max(1.0));
            roots
        }
    }
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ci| acc * t + ci)
}

fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..100 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Maximal open intervals where the polynomial is positive.
/// `None` endpoints denote the two infinities.
pub fn positive_intervals(coeffs: &[f64]) -> Vec<(Option<f64>, Option<f64>)> {
    let roots = real_roots(coeffs);
    let eval = |t: f64| horner(coeffs, t);
    let mut probes: Vec<(Option<f64>, Option<f64>, f64)> = Vec::new();
    if roots.is_empty() {
        probes.push((None, None, 0.0));
    } else {
        let first = roots[0];
        let last = *roots.last().expect("non-empty");
        probes.push((None, Some(first), first - 1.0 - first.abs() * 0.5));
        for w in roots.windows(2) {
            probes.push((Some(w[0]), Some(w[1]), 0.5 * (w[0] + w[1])));
        }
        probes.push((Some(last), None, last + 1.0 + last.abs() * 0.5));
    }
    probes
        .into_iter()
        .filter(|(_, _, probe)| eval(*probe) > 0.0)
        .map(|(a, b, _)| (a, b))
        .collect()
}

/// Representative member points along one direction: interval midpoints and
/// two tail depths for unbounded pieces.
fn interval_picks(intervals: &[(Option<f64>, Option<f64>)]) -> Vec<f64> {
    let mut out = Vec::new();
    for (lo, hi) in intervals {
        match (lo, hi) {
            (Some(a), Some(b)) => out.push(0.5 * (a + b)),
            (None, Some(b)) => {
                let step = 1.0 + b.abs() * 0.5;
                out.push(b - step);
                out.push(b - 6.0 * step);
            }
            (Some(a), None) => {
                let step = 1.0 + a.abs() * 0.5;
                out.push(a + step);
                out.push(a + 6.0 * step);
            }
            (None, None) => {
                out.extend_from_slice(&[-8.0, -1.0, 1.0, 8.0]);
            }
        }
    }
    out
}

/// Lawson-Hanson nonnegative least squares: minimise `|A w - b|` over
/// `w >= 0`.
pub fn nnls(a: &Mat<f64>, b: &[f64]) -> Vec<f64> {
    let m = a.cols;
    let mut passive: Vec<usize> = Vec::new();
    let mut w = vec![0.0; m];
    let mut residual: Vec<f64> = b.to_vec();
    let tol_g = 1e-12 * a.max_magnitude().max(1.0) * b.iter().fold(0.0_f64, |x, y| x.max(y.abs())).max(1.0);

    for _ in 0..(3 * m + 20) {
        // gradient of 1/2 |Aw - b|^2 restricted to the active set
        let grad: Vec<f64> = (0..m)
            .map(|j| (0..a.rows).map(|i| a[(i, j)] * residual[i]).sum())
            .collect();
        let candidate = (0..m)
            .filter(|j| !passive.contains(j))
            .max_by(|&x, &y| grad[x].total_cmp(&grad[y]));
        let Some(best) = candidate else { break };
        if grad[best] <= tol_g {
            break;
        }
        passive.push(best);

        loop {
            let z = least_squares_subset(a, b, &passive);
            if z.iter().all(|&v| v > 0.0) {
                for (idx, &j) in passive.iter().enumerate() {
                    w[j] = z[idx];
                }
                for j in 0..m {
                    if !passive.contains(&j) {
                        w[j] = 0.0;
                    }
                }
                break;
            }
            // step back along the segment to the feasible boundary
            let mut alpha = f64::INFINITY;
            for (idx, &j) in passive.iter().enumerate() {
                if z[idx] <= 0.0 {
                    let denom = w[j] - z[idx];
                    if denom > 0.0 {
                        alpha = alpha.min(w[j] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for (idx, &j) in passive.iter().enumerate() {
                w[j] += alpha * (z[idx] - w[j]);
            }
            let keep: Vec<usize> = passive
                .iter()
                .copied()
                .filter(|&j| w[j] > 1e-14)
                .collect();
            if keep.len() == passive.len() {
                // numerical stall: drop the smallest weight to make progress
                if let Some(&drop) = passive
                    .iter()
                    .min_by(|&&x, &&y| w[x].total_cmp(&w[y]))
                {
                    passive.retain(|&j| j != drop);
                    w[drop] = 0.0;
                }
            } else {
                passive = keep;
            }
            if passive.is_empty() {
                break;
            }
        }

        let aw = a.mul_vec(&w);
        for i in 0..a.rows {
            residual[i] = b[i] - aw[i];
        }
    }
    w
}

fn least_squares_subset(a: &Mat<f64>, b: &[f64], cols: &[usize]) -> Vec<f64> {
    let sub = Mat::from_cols(cols.iter().map(|&j| a.col(j)).collect());
    let st = sub.transpose();
    let gram = st.mul(&sub);
    // ridge for numerical safety at this scale
    let mut reg = gram;
    for i in 0..reg.rows {
        reg[(i, i)] += 1e-13;
    }
    let rhs = st.mul_vec(&b.to_vec());
    reg.solve(&rhs, 1e-15).unwrap_or_else(|| vec![0.0; cols.len()])
}

/// Equality-constrained refinement on a support: minimise
/// `|sum w_i c_i|` subject to `sum w_i = 1` over the given columns.
fn refine_on_support(centered: &[Vec<f64>], support: &[usize]) -> Option<Vec<f64>> {
    let k = support.len();
    let dim = centered.first()?.len();
    // KKT system for min |C w|^2 s.t. 1' w = 1
    let mut kkt = Mat::zeros(k + 1, k + 1);
    for (r, &i) in support.iter().enumerate() {
        for (c, &j) in support.iter().enumerate() {
            let mut dot = 0.0;
            for d in 0..dim {
                dot += centered[i][d] * centered[j][d];
            }
            kkt[(r, c)] = 2.0 * dot;
        }
        kkt[(r, k)] = 1.0;
        kkt[(k, r)] = 1.0;
    }
    let mut rhs = vec![0.0; k + 1];
    rhs[k] = 1.0;
    let sol = kkt.solve(&rhs, 1e-14)?;
    Some(sol[..k].to_vec())
}

/// Outcome for a single hull target.
#[derive(Clone, Debug, serde::Serialize)]
pub struct HullTargetResult {
    pub covered: bool,
    pub points_used: usize,
    pub residual: f64,
    pub min_weight: f64,
}

/// Express each target 2-form as a convex combination of members of the
/// level-0 set; the constructive witness is the certificate.
pub fn hull_cover_certificate(
    frame: &SlicingFrame<f64>,
    targets: &[AltForm<f64>],
    budget: usize,
    seed: u64,
    eps: f64,
) -> Result<VerifyReport, AmpleError> {
    let tau = frame.restrict(&frame.rho)?;
    if !super::is_ospseudoplectic(&tau, eps.max(tol::RANK_REL))? {
        return Err(AmpleError::DegenerateFrame(
            "restriction is not in the open orbit; the hull certificate needs it".into(),
        ));
    }
    let mut report = VerifyReport::new("hull-cover", "ample-hull-cover", seed, targets.len() as u64);
    report.tolerance("residual", tol::HULL_RESIDUAL);
    report.tolerance("weight_floor", tol::WEIGHT_FLOOR);
    report.set_count("budget", budget as u64);

    use rayon::prelude::*;
    let results: Vec<(usize, HullTargetResult)> = targets
        .par_iter()
        .enumerate()
        .map(|(ti, target)| (ti, cover_one_target(frame, target, budget, seed, ti as u64)))
        .collect();

    let mut covered = 0u64;
    for (ti, r) in results {
        if r.covered {
            covered += 1;
        } else {
            report.fail(json!({
                "target": ti,
                "kind": "budget-exhausted",
                "residual": r.residual,
                "points": r.points_used,
            }));
        }
        report.bump_by("points_total", r.points_used as u64);
    }
    report.set_count("covered", covered);
    Ok(report)
}

fn cover_one_target(
    frame: &SlicingFrame<f64>,
    target: &AltForm<f64>,
    budget: usize,
    seed: u64,
    target_idx: u64,
) -> HullTargetResult {
    // trivial certificate: the target is itself a member
    if let Ok(lambda) = frame.lambda_of(target) {
        if lambda > 0.0 {
            return HullTargetResult {
                covered: true,
                points_used: 1,
                residual: 0.0,
                min_weight: 1.0,
            };
        }
    }

    let mut centered: Vec<Vec<f64>> = Vec::new(); // t_i * d_i as dense vectors
    let mut rng = sample::stream(seed ^ 0x48_55_4c_4c, target_idx);
    let mut result = HullTargetResult {
        covered: false,
        points_used: 0,
        residual: f64::INFINITY,
        min_weight: 0.0,
    };

    'directions: for round in 0..(4 * budget) {
        if centered.len() >= budget {
            break;
        }
        // random unit direction in the 10-dimensional coefficient space
        let mut d = sample::gaussian_vec(&mut rng, 10);
        let n = crate::linalg::norm(&d).max(1e-12);
        d.iter_mut().for_each(|x| *x /= n);
        let dir = nu_from_dense(&d);
        let Ok(poly) = line_poly(frame, target, &dir) else {
            continue;
        };
        let intervals = positive_intervals(&poly);
        for t in interval_picks(&intervals) {
            if centered.len() >= budget {
                break 'directions;
            }
            let nu = target.add(&dir.scale_by(&t));
            let Ok(rho_prime) = frame.shifted(&nu) else { continue };
            let Ok(class) = lambda_invariant(&rho_prime) else { continue };
            if !margin_ok(class.lambda_coeff, &rho_prime) {
                continue;
            }
            centered.push(d.iter().map(|x| x * t).collect());
        }

        // attempt a combination every few rounds once enough points exist
        if centered.len() >= 11 || (round > 8 && centered.len() >= 3) {
            if let Some(r) = try_combination(&centered) {
                result = r;
                if result.covered {
                    break;
                }
            }
        }
    }
    if !result.covered {
        if let Some(r) = try_combination(&centered) {
            result = r;
        }
    }
    result
}

fn try_combination(centered: &[Vec<f64>]) -> Option<HullTargetResult> {
    if centered.is_empty() {
        return None;
    }
    let dim = 10;
    // column-normalised augmented system [c_i / |c_i| ; weight-row]
    let norms: Vec<f64> = centered
        .iter()
        .map(|c| crate::linalg::norm(c).max(1e-12))
        .collect();
    let sum_row_weight = 4.0;
    let a = Mat::from_fn(dim + 1, centered.len(), |i, j| {
        if i < dim {
            centered[j][i] / norms[j]
        } else {
            sum_row_weight / norms[j]
        }
    });
    let mut b = vec![0.0; dim + 1];
    b[dim] = sum_row_weight;
    let alpha = nnls(&a, &b);
    let weights: Vec<f64> = alpha.iter().zip(&norms).map(|(a, n)| a / n).collect();
    let total: f64 = weights.iter().sum();
    if total <= 1e-12 {
        return None;
    }
    let support: Vec<usize> = (0..centered.len())
        .filter(|&j| weights[j] > 1e-13 * total)
        .collect();
    if support.is_empty() {
        return None;
    }
    let refined = refine_on_support(centered, &support)?;
    let mut residual_vec = vec![0.0; dim];
    for (idx, &j) in support.iter().enumerate() {
        for d in 0..dim {
            residual_vec[d] += refined[idx] * centered[j][d];
        }
    }
    let residual = residual_vec.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let min_weight = refined.iter().copied().fold(f64::INFINITY, f64::min);
    let sum_w: f64 = refined.iter().sum();
    let covered = residual < tol::HULL_RESIDUAL
        && min_weight >= tol::WEIGHT_FLOOR
        && (sum_w - 1.0).abs() < 1e-9;
    Some(HullTargetResult {
        covered,
        points_used: support.len(),
        residual,
        min_weight,
    })
}

/// The fixed 100-point target grid: axis monomials scaled by +-1, 2, 4, 8, 16.
pub fn grid_targets() -> Vec<AltForm<f64>> {
    let mut out = Vec::with_capacity(100);
    for axis in 0..10 {
        for scale in [1.0, 2.0, 4.0, 8.0, 16.0] {
            for sign in [1.0, -1.0] {
                let mut dense = vec![0.0; 10];
                dense[axis] = sign * scale;
                out.push(nu_from_dense(&dense));
            }
        }
    }
    out
}

/// Polygonal path search between two members, membership-checked densely
/// along each segment.
pub fn path_connect_certificate(
    frame: &SlicingFrame<f64>,
    xi: Option<&HyperplaneConfig<f64>>,
    nu_a: &AltForm<f64>,
    nu_b: &AltForm<f64>,
    level: u8,
    steps: usize,
    seed: u64,
    eps: f64,
) -> Result<VerifyReport, AmpleError> {
    let mut report =
        VerifyReport::new("path-connect", "member-path-connectivity", seed, 1);
    report.tolerance("member_margin", tol::MEMBER_MARGIN);
    report.set_count("steps_per_segment", steps as u64);

    let member = |nu: &AltForm<f64>| -> bool {
        let Ok(rho_prime) = frame.shifted(nu) else { return false };
        let Ok(class) = lambda_invariant(&rho_prime) else { return false };
        if !margin_ok(class.lambda_coeff, &rho_prime) {
            return false;
        }
        match (level, xi) {
            (0, _) | (_, None) => true,
            (l, Some(config)) => super::in_n_level(frame, config, nu, l, eps)
                .map(|o| o.ok)
                .unwrap_or(false),
        }
    };

    if !member(nu_a) || !member(nu_b) {
        report.fail(json!({ "kind": "endpoint-not-member" }));
        return Ok(report);
    }

    let seg_ok = |x: &AltForm<f64>, y: &AltForm<f64>| -> bool {
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            let p = x.scale_by(&(1.0 - t)).add(&y.scale_by(&t));
            if !member(&p) {
                return false;
            }
        }
        true
    };

    // depth-3 randomized repair: at most 8 segments
    let mut rng = sample::stream(seed ^ 0x50_41_54_48, 0);
    let mut checks = 0usize;
    let scale = nu_a
        .max_magnitude()
        .max(nu_b.max_magnitude())
        .max(1.0);
    match repair_path(&member, &seg_ok, nu_a, nu_b, 3, scale, &mut rng, &mut checks) {
        Some(path) => {
            report.set_count("segments", (path.len() - 1) as u64);
            report.set_count("segment_checks", checks as u64);
        }
        None => {
            report.set_count("segment_checks", checks as u64);
            report.fail(json!({ "kind": "budget-exhausted" }));
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn repair_path(
    member: &dyn Fn(&AltForm<f64>) -> bool,
    seg_ok: &dyn Fn(&AltForm<f64>, &AltForm<f64>) -> bool,
    x: &AltForm<f64>,
    y: &AltForm<f64>,
    depth: u8,
    scale: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
    checks: &mut usize,
) -> Option<Vec<AltForm<f64>>> {
    *checks += 1;
    if *checks > 4000 {
        return None;
    }
    if seg_ok(x, y) {
        return Some(vec![x.clone(), y.clone()]);
    }
    if depth == 0 {
        return None;
    }
    for _ in 0..18 {
        // candidate waypoint: perturbed midpoint, filtered to members
        let mid = x.scale_by(&0.5).add(&y.scale_by(&0.5));
        let jitter = sample::random_form(rng, 5, 2, scale * (0.4 + 0.2 * depth as f64));
        let w = mid.add(&jitter);
        if !member(&w) {
            continue;
        }
        if let Some(first) = repair_path(member, seg_ok, x, &w, depth - 1, scale, rng, checks) {
            if let Some(second) = repair_path(member, seg_ok, &w, y, depth - 1, scale, rng, checks)
            {
                let mut path = first;
                path.extend(second.into_iter().skip(1));
                return Some(path);
            }
        }
    }
    None
}

/// Convenience wrapper: joins `pairs` random member pairs over the frame.
pub fn path_connect_random_pairs(
    frame: &SlicingFrame<f64>,
    pairs: u64,
    steps: usize,
    seed: u64,
    eps: f64,
) -> Result<VerifyReport, AmpleError> {
    let mut report = VerifyReport::new("path-connect", "member-path-connectivity", seed, pairs);
    report.tolerance("member_margin", tol::MEMBER_MARGIN);
    for i in 0..pairs {
        let mut rng = sample::stream(seed, 2 * i + 1);
        let a = sample_n0(frame, &mut rng, 1.0)
            .ok_or(AmpleError::BudgetExhausted { budget: 200 })?;
        let mut rng2 = sample::stream(seed, 2 * i + 2);
        let b = sample_n0(frame, &mut rng2, 1.0)
            .ok_or(AmpleError::BudgetExhausted { budget: 200 })?;
        let sub = path_connect_certificate(frame, None, &a, &b, 0, steps, seed ^ i, eps)?;
        if !sub.pass {
            report.fail(json!({ "pair": i, "kind": "no-path-found" }));
        } else {
            report.bump("joined");
            report.bump_by("segments_total", sub.counts.get("segments").copied().unwrap_or(0));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ample::{decomposable_frame, standard_generic_frame};
    use crate::scalar::Rat;
    use crate::verify::fixtures::mono5;

    #[test]
    fn roots_of_simple_polynomials() {
        // (t - 1)(t + 2) = t^2 + t - 2
        let r = real_roots(&[-2.0, 1.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert!((r[0] + 2.0).abs() < 1e-9 && (r[1] - 1.0).abs() < 1e-9);

        // t^3 - t = t(t-1)(t+1)
        let r3 = real_roots(&[0.0, -1.0, 0.0, 1.0]);
        assert_eq!(r3.len(), 3);
        assert!((r3[0] + 1.0).abs() < 1e-9);
        assert!(r3[1].abs() < 1e-9);
        assert!((r3[2] - 1.0).abs() < 1e-9);

        // no real roots
        assert!(real_roots(&[1.0, 0.0, 1.0]).is_empty());
    }

    #[test]
    fn positivity_intervals_of_a_cubic() {
        // t(t-1)(t+1): positive on (-1, 0) and (1, inf)
        let intervals = positive_intervals(&[0.0, -1.0, 0.0, 1.0]);
        assert_eq!(intervals.len(), 2);
        assert!(intervals[0].0.is_some() && intervals[0].1.is_some());
        assert!(intervals[1].1.is_none());
    }

    #[test]
    fn line_polynomial_is_cubic_for_sliced_directions() {
        let frame = standard_generic_frame::<Rat>().to_f64();
        let mut rng = sample::stream(1, 0);
        let base = sample::random_form(&mut rng, 5, 2, 0.5);
        let dir = sample::random_form(&mut rng, 5, 2, 1.0);
        let poly = line_poly(&frame, &base, &dir).unwrap();
        let scale = poly.iter().fold(0.0_f64, |a, c| a.max(c.abs())).max(1.0);
        assert!(
            poly[4].abs() <= 1e-9 * scale,
            "quartic coefficient {} should vanish",
            poly[4]
        );
        // interpolation reproduces directly computed values
        for t in [-1.5, 0.3, 2.5] {
            let direct = frame.lambda_of(&base.add(&dir.scale_by(&t))).unwrap();
            let interp = horner(&poly, t);
            assert!((direct - interp).abs() < 1e-7 * scale.max(direct.abs()));
        }
    }

    #[test]
    fn nnls_solves_a_small_feasible_system() {
        // columns (1,0), (0,1), (-1,-1): b = (0.2, 0.3) has a nonnegative combo
        let a = Mat::from_cols(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, -1.0]]);
        let w = nnls(&a, &[0.2, 0.3]);
        let out = a.mul_vec(&w);
        assert!((out[0] - 0.2).abs() < 1e-10);
        assert!((out[1] - 0.3).abs() < 1e-10);
        assert!(w.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn hull_covers_the_origin_and_members() {
        let frame = standard_generic_frame::<Rat>().to_f64();
        // origin (a member: the anchor itself is stable) and a non-member target
        let zero = AltForm::zero(5, 2);
        let report = hull_cover_certificate(&frame, &[zero], 64, 5, tol::RANK_REL).unwrap();
        assert!(report.pass, "failures: {:?}", report.failures);

        // an axis target far outside the membership set
        let far = nu_from_dense(&[-9.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let lambda = frame.lambda_of(&far).unwrap();
        let report2 = hull_cover_certificate(&frame, &[far], 64, 5, tol::RANK_REL).unwrap();
        assert!(
            report2.pass,
            "lambda was {lambda}, failures: {:?}",
            report2.failures
        );
    }

    #[test]
    fn hull_rejects_decomposable_frames() {
        let frame = decomposable_frame::<Rat>().to_f64();
        let err = hull_cover_certificate(&frame, &[AltForm::zero(5, 2)], 16, 0, tol::RANK_REL);
        assert!(matches!(err, Err(AmpleError::DegenerateFrame(_))));
    }

    #[test]
    fn trivial_and_short_paths() {
        let frame = standard_generic_frame::<Rat>().to_f64();
        let mut rng = sample::stream(13, 0);
        let a = sample_n0(&frame, &mut rng, 0.8).unwrap();
        // trivial path: identical endpoints
        let r = path_connect_certificate(&frame, None, &a, &a, 0, 32, 1, tol::RANK_REL).unwrap();
        assert!(r.pass);

        let mut rng2 = sample::stream(13, 1);
        let b = sample_n0(&frame, &mut rng2, 0.8).unwrap();
        let r2 = path_connect_certificate(&frame, None, &a, &b, 0, 64, 2, tol::RANK_REL).unwrap();
        assert!(r2.pass, "failures: {:?}", r2.failures);
        assert!(r2.counts["segments"] <= 8);
    }

    #[test]
    fn paths_cannot_cross_between_components() {
        let frame = decomposable_frame::<Rat>().to_f64();
        // members on opposite sides of the wall
        let plus = mono5(&[1, 2]).to_f64();
        let minus = mono5(&[1, 2]).to_f64().scale_by(&-1.0);
        let r = path_connect_certificate(&frame, None, &plus, &minus, 0, 128, 3, tol::RANK_REL)
            .unwrap();
        assert!(!r.pass, "a cross-component path must not exist");
    }
}
