//! Structures derived from a 3-form on oriented R^6.
//!
//! The central object is the twisted endomorphism built from
//! `v -> (v .| rho) ^ rho` via top-degree duality. Its square is always a
//! multiple of the identity; one sixth of the trace of the square is the
//! quadratic invariant whose sign classifies the form. A positive invariant
//! yields a volume normalisation and a para-complex structure whose +1/-1
//! eigenspaces are each rank 3; everything downstream (hyperplane
//! genericity, membership sets, stratum certificates) consumes those
//! eigenspaces or their closed-form first derivatives.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exterior::{contract, pullback, top_dual, wedge, AltForm, ExteriorError, LinearMap, Vector};
use crate::linalg::Mat;
use crate::scalar::Coeff;
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StableError {
    #[error("form is not of stable positive type (invariant sign {0:?})")]
    NotSlType(SlKind),
    #[error("eigenspace extraction degenerated: dim E+ = {0}, dim E- = {1}")]
    EigenspaceDegenerate(usize, usize),
    #[error("volume coefficient is irrational over the exact backend; use floats")]
    IrrationalVolume,
    #[error("argument has components outside the required pure type")]
    WrongType,
    #[error("finite-difference step {0} leaves the stable cone")]
    StepTooLarge(f64),
    #[error("expected a degree {expected} form on R^{ambient}")]
    BadShape { expected: usize, ambient: usize },
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// Endomorphism of R^6 twisted by a top-form coefficient: `v -> Mv (x) t Omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedEndo<K> {
    pub matrix: Mat<K>,
    pub twist: K,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlKind {
    #[serde(rename = "SL-type")]
    SlType,
    #[serde(rename = "degenerate-nonzero")]
    DegenerateNonzero,
    #[serde(rename = "zero-lambda")]
    ZeroLambda,
}

/// Result of the quadratic-invariant classification.
#[derive(Clone, Debug, PartialEq)]
pub struct SlClassification<K> {
    /// Coefficient of the invariant with respect to the squared unit top form.
    pub lambda_coeff: K,
    pub kind: SlKind,
}

/// Para-complex structure of a stable positive 3-form: `I = K / vol` with
/// `I^2 = Id` and three-dimensional eigenspaces for +1 and -1.
#[derive(Clone, Debug)]
pub struct ParaComplex<K> {
    pub vol_coeff: K,
    pub endo: Mat<K>,
    pub e_plus: crate::grass::Subspace<K>,
    pub e_minus: crate::grass::Subspace<K>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl<K: Coeff> ParaComplex<K> {
    pub fn eigenspace(&self, sign: Sign) -> &crate::grass::Subspace<K> {
        match sign {
            Sign::Plus => &self.e_plus,
            Sign::Minus => &self.e_minus,
        }
    }

    /// Projection onto `E_sign` along the opposite eigenspace: `(Id +- I)/2`.
    pub fn eigen_projector(&self, sign: Sign) -> Mat<K> {
        let id = Mat::identity(6);
        let half = K::one() / K::from_int(2);
        match sign {
            Sign::Plus => id.add(&self.endo).scale(&half),
            Sign::Minus => id.sub(&self.endo).scale(&half),
        }
    }

    pub fn to_f64(&self) -> ParaComplex<f64> {
        ParaComplex {
            vol_coeff: self.vol_coeff.to_f64(),
            endo: Mat::from_fn(6, 6, |i, j| self.endo[(i, j)].to_f64()),
            e_plus: self.e_plus.to_f64(),
            e_minus: self.e_minus.to_f64(),
        }
    }
}

fn expect_three_form<K: Coeff>(rho: &AltForm<K>) -> Result<(), StableError> {
    if rho.ambient() != 6 || rho.degree() != 3 {
        return Err(StableError::BadShape {
            expected: 3,
            ambient: 6,
        });
    }
    Ok(())
}

/// The twisted endomorphism: column `i` is the top-degree dual of
/// `(e_i .| rho) ^ rho`.
pub fn k_map<K: Coeff>(rho: &AltForm<K>) -> Result<TwistedEndo<K>, StableError> {
    expect_three_form(rho)?;
    let mut cols = Vec::with_capacity(6);
    for i in 1..=6 {
        let ei = Vector::basis(6, i);
        let five = wedge(&contract(&ei, rho)?, rho)?;
        let (v, _top) = top_dual(&five)?;
        cols.push(v.comps);
    }
    Ok(TwistedEndo {
        matrix: Mat::from_cols(cols),
        twist: K::one(),
    })
}

/// Quadratic invariant: one sixth of the trace of the squared twisted
/// endomorphism, as a coefficient against the squared unit top form.
pub fn lambda_invariant<K: Coeff>(rho: &AltForm<K>) -> Result<SlClassification<K>, StableError> {
    let k = k_map(rho)?;
    Ok(classify_endo(&k))
}

pub fn classify_endo<K: Coeff>(k: &TwistedEndo<K>) -> SlClassification<K> {
    let m2 = k.matrix.mul(&k.matrix);
    let mut trace = K::zero();
    for i in 0..6 {
        trace = trace + m2[(i, i)].clone();
    }
    let lambda = trace / K::from_int(6) * k.twist.clone() * k.twist.clone();
    let kind = if lambda.is_zero() {
        SlKind::ZeroLambda
    } else if lambda.is_positive() {
        SlKind::SlType
    } else {
        SlKind::DegenerateNonzero
    };
    SlClassification {
        lambda_coeff: lambda,
        kind,
    }
}

/// Volume normalisation and eigenspace splitting of a stable positive form.
///
/// Eigenspaces are extracted as column spans of `M +- vol Id`; because the
/// twisted endomorphism squares to `lambda Id` these have rank exactly 3,
/// and over floats the rank decision sits a gap of `2 vol` away from zero.
pub fn para_complex<K: Coeff>(rho: &AltForm<K>, eps: f64) -> Result<ParaComplex<K>, StableError> {
    let k = k_map(rho)?;
    let class = classify_endo(&k);
    if class.kind != SlKind::SlType {
        return Err(StableError::NotSlType(class.kind));
    }
    let vol = class
        .lambda_coeff
        .try_sqrt()
        .ok_or(StableError::IrrationalVolume)?;
    let scaled = k.matrix.scale(&(k.twist.clone() / vol.clone()));
    let id = Mat::identity(6);
    let rank_tol = if K::EXACT {
        0.0
    } else {
        eps.max(tol::RANK_REL) * scaled.max_magnitude().max(1.0)
    };
    let plus_gen = scaled.add(&id);
    let minus_gen = scaled.sub(&id);
    let span_of = |m: &Mat<K>| {
        let vecs: Vec<Vector<K>> = (0..6)
            .map(|j| Vector::new(m.col(j)))
            .filter(|v| v.comps.iter().any(|c| !c.is_negligible(rank_tol)))
            .collect();
        crate::grass::Subspace::span(6, &vecs, eps.max(if K::EXACT { 0.0 } else { tol::RANK_REL }))
    };
    let e_plus = span_of(&plus_gen);
    let e_minus = span_of(&minus_gen);
    if e_plus.dim() != 3 || e_minus.dim() != 3 {
        return Err(StableError::EigenspaceDegenerate(e_plus.dim(), e_minus.dim()));
    }
    Ok(ParaComplex {
        vol_coeff: vol,
        endo: scaled,
        e_plus,
        e_minus,
    })
}

/// All type components of a form with respect to the eigenspace splitting.
///
/// Index `(r, s)` collects terms with `r` factors from the plus eigenspace
/// and `s` from the minus one; the components sum back to the input.
#[derive(Clone, Debug)]
pub struct TypeDecomposition<K> {
    pub degree: usize,
    pub components: std::collections::BTreeMap<(usize, usize), AltForm<K>>,
}

impl<K: Coeff> TypeDecomposition<K> {
    pub fn component(&self, r: usize, s: usize) -> AltForm<K> {
        self.components
            .get(&(r, s))
            .cloned()
            .unwrap_or_else(|| AltForm::zero(6, self.degree))
    }
}

pub fn type_components<K: Coeff>(
    pc: &ParaComplex<K>,
    a: &AltForm<K>,
    eps: f64,
) -> Result<TypeDecomposition<K>, StableError> {
    if a.ambient() != 6 {
        return Err(StableError::BadShape {
            expected: a.degree(),
            ambient: 6,
        });
    }
    let mut cols = pc.e_plus.basis_vectors();
    cols.extend(pc.e_minus.basis_vectors());
    let g = LinearMap::from_cols(cols);
    let g_inv = LinearMap::new(
        g.mat
            .inverse(eps)
            .expect("eigenbasis is invertible by construction"),
    );
    // coordinates of `a` in the adapted basis
    let adapted = pullback(&g, a)?;
    let mut split: std::collections::BTreeMap<(usize, usize), AltForm<K>> = Default::default();
    for (idx, c) in adapted.terms() {
        let r = idx.indices().iter().filter(|&&i| i <= 3).count();
        let s = idx.degree() - r;
        split
            .entry((r, s))
            .or_insert_with(|| AltForm::zero(6, a.degree()))
            .add_term(*idx, c.clone());
    }
    let mut components = std::collections::BTreeMap::new();
    for ((r, s), part) in split {
        // push forward along g^{-1}
        components.insert((r, s), pullback(&g_inv, &part)?);
    }
    Ok(TypeDecomposition {
        degree: a.degree(),
        components,
    })
}

/// Projection of `a` onto type `(r, s)`.
pub fn type_projection<K: Coeff>(
    rho: &AltForm<K>,
    a: &AltForm<K>,
    r: usize,
    s: usize,
    eps: f64,
) -> Result<AltForm<K>, StableError> {
    let pc = para_complex(rho, eps)?;
    type_projection_pc(&pc, a, r, s, eps)
}

pub fn type_projection_pc<K: Coeff>(
    pc: &ParaComplex<K>,
    a: &AltForm<K>,
    r: usize,
    s: usize,
    eps: f64,
) -> Result<AltForm<K>, StableError> {
    if r + s != a.degree() {
        return Err(StableError::BadShape {
            expected: a.degree(),
            ambient: 6,
        });
    }
    Ok(type_components(pc, a, eps)?.component(r, s))
}

/// Inverse of `w -> w .| rho` on the chosen eigenspace: for a pure-type
/// 2-form `a` returns the unique `w` in `E_sign` with `w .| rho = a`.
pub fn kappa<K: Coeff>(
    rho: &AltForm<K>,
    a: &AltForm<K>,
    sign: Sign,
    eps: f64,
) -> Result<Vector<K>, StableError> {
    let pc = para_complex(rho, eps)?;
    kappa_pc(&pc, rho, a, sign, eps)
}

pub fn kappa_pc<K: Coeff>(
    pc: &ParaComplex<K>,
    rho: &AltForm<K>,
    a: &AltForm<K>,
    sign: Sign,
    eps: f64,
) -> Result<Vector<K>, StableError> {
    if a.ambient() != 6 || a.degree() != 2 {
        return Err(StableError::BadShape {
            expected: 2,
            ambient: 6,
        });
    }
    let (r, s) = match sign {
        Sign::Plus => (2, 0),
        Sign::Minus => (0, 2),
    };
    let pure = type_projection_pc(pc, a, r, s, eps)?;
    let scale = a.max_magnitude().max(1.0);
    let impurity = a.sub(&pure).max_magnitude();
    let impure = if K::EXACT {
        impurity != 0.0
    } else {
        impurity > eps.max(tol::RANK_REL) * scale * 10.0
    };
    if impure {
        return Err(StableError::WrongType);
    }
    let basis = pc.eigenspace(sign).basis_vectors();
    let cols: Vec<Vec<K>> = basis
        .iter()
        .map(|w| Ok::<_, StableError>(contract(w, rho)?.to_dense()))
        .collect::<Result<_, _>>()?;
    let a_dense = a.to_dense();
    let system = Mat::from_cols(cols);
    // normal equations: the 15x3 system is full rank and consistent for
    // pure-type input
    let at = system.transpose();
    let gram = at.mul(&system);
    let rhs = at.mul_vec(&a_dense);
    let x = gram
        .solve(&rhs, eps)
        .ok_or(StableError::WrongType)?;
    let residual = {
        let achieved = system.mul_vec(&x);
        achieved
            .iter()
            .zip(&a_dense)
            .map(|(p, q)| (p.clone() - q.clone()).magnitude())
            .fold(0.0, f64::max)
    };
    if K::EXACT {
        if residual != 0.0 {
            return Err(StableError::WrongType);
        }
    } else if residual > eps.max(tol::RANK_REL) * scale * 10.0 {
        return Err(StableError::WrongType);
    }
    let mut w = Vector::zero(6);
    for (xi, b) in x.iter().zip(&basis) {
        w = w.add(&b.scale(xi));
    }
    Ok(w)
}

/// Derivative of the eigenspace map in a 3-form direction, as a homomorphism
/// from the chosen eigenspace to the opposite one, expressed in the
/// para-complex canonical bases.
///
/// Plus: `alpha -> -(Id (x) kappa^-)(pi_{1,2}(alpha))`;
/// minus: `alpha -> (kappa^+ (x) Id)(pi_{2,1}(alpha))`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenHom<K> {
    pub sign: Sign,
    /// 3x3 matrix: columns over the source eigenspace basis, rows over the
    /// target eigenspace basis.
    pub mat: Mat<K>,
}

pub fn d_eigenspace<K: Coeff>(
    rho: &AltForm<K>,
    alpha: &AltForm<K>,
    sign: Sign,
    eps: f64,
) -> Result<EigenHom<K>, StableError> {
    let pc = para_complex(rho, eps)?;
    d_eigenspace_pc(&pc, rho, alpha, sign, eps)
}

pub fn d_eigenspace_pc<K: Coeff>(
    pc: &ParaComplex<K>,
    rho: &AltForm<K>,
    alpha: &AltForm<K>,
    sign: Sign,
    eps: f64,
) -> Result<EigenHom<K>, StableError> {
    expect_three_form(alpha)?;
    let (r, s) = match sign {
        Sign::Plus => (1, 2),
        Sign::Minus => (2, 1),
    };
    let mixed = type_projection_pc(pc, alpha, r, s, eps)?;
    let source = pc.eigenspace(sign).basis_vectors();
    let target = pc.eigenspace(sign.flip());
    let mut cols = Vec::with_capacity(3);
    for u in &source {
        let beta = contract(u, &mixed)?;
        let beta = if K::EXACT { beta } else { beta.chop(1e-13 * alpha.max_magnitude().max(1.0)) };
        let w = if beta.is_zero() {
            Vector::zero(6)
        } else {
            kappa_pc(pc, rho, &beta, sign.flip(), eps)?
        };
        let w = match sign {
            Sign::Plus => w.neg(),
            Sign::Minus => w,
        };
        let coords = target
            .coords_of_vec(&w, eps)
            .ok_or(StableError::EigenspaceDegenerate(3, 3))?;
        cols.push(coords);
    }
    Ok(EigenHom {
        sign,
        mat: Mat::from_cols(cols),
    })
}

trait CoordsOf<K> {
    fn coords_of_vec(&self, v: &Vector<K>, eps: f64) -> Option<Vec<K>>;
}

impl<K: Coeff> CoordsOf<K> for crate::grass::Subspace<K> {
    fn coords_of_vec(&self, v: &Vector<K>, eps: f64) -> Option<Vec<K>> {
        if K::EXACT {
            self.coords_of(v, eps)
        } else {
            // least-squares coordinates; tolerate float impurities
            let b = self.basis_matrix();
            let bt = b.transpose();
            let gram = bt.mul(b);
            gram.solve(&bt.mul_vec(&v.comps), eps.max(tol::RANK_REL))
        }
    }
}

/// One rung of a forward-difference ladder.
#[derive(Clone, Debug, Serialize)]
pub struct FdRung {
    pub h: f64,
    pub deviation: f64,
}

/// Comparison of the closed-form eigenspace derivative against forward
/// differences in graph coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct FdCheckReport {
    pub sign: Sign,
    pub rungs: Vec<FdRung>,
    pub max_deviation: f64,
    /// Least-squares slope of log(deviation) against log(h); `None` when the
    /// deviations sit at the noise floor (e.g. a zero direction).
    pub observed_order: Option<f64>,
    pub analytic_norm: f64,
}

/// Graph-coordinate matrix of `E_sign(rho_pert)` over the splitting of `pc`.
pub fn graph_coords(
    pc: &ParaComplex<f64>,
    rho_pert: &AltForm<f64>,
    sign: Sign,
    eps: f64,
) -> Result<Mat<f64>, StableError> {
    let pc_h = para_complex(rho_pert, eps)?;
    let mut cols = pc.e_plus.basis_vectors();
    cols.extend(pc.e_minus.basis_vectors());
    let t = Mat::from_cols(cols.into_iter().map(|v| v.comps).collect());
    let t_inv = t.inverse(eps.max(tol::RANK_REL)).expect("splitting invertible");
    let q = pc_h.eigenspace(sign).basis_matrix();
    let x = t_inv.mul(q);
    let (top_rows, bot_rows) = match sign {
        Sign::Plus => (0..3, 3..6),
        Sign::Minus => (3..6, 0..3),
    };
    let a = Mat::from_fn(3, 3, |i, j| x[(top_rows.start + i, j)]);
    let b = Mat::from_fn(3, 3, |i, j| x[(bot_rows.start + i, j)]);
    let a_inv = a
        .inverse(eps.max(tol::RANK_REL))
        .ok_or(StableError::EigenspaceDegenerate(3, 3))?;
    Ok(b.mul(&a_inv))
}

/// Forward-difference validation of the eigenspace derivative.
pub fn d_eigenspace_fd_check(
    rho: &AltForm<f64>,
    alpha: &AltForm<f64>,
    sign: Sign,
    h_list: &[f64],
    eps: f64,
) -> Result<FdCheckReport, StableError> {
    let pc = para_complex(rho, eps)?;
    let analytic = d_eigenspace_pc(&pc, rho, alpha, sign, eps)?;
    let analytic_norm = frob(&analytic.mat);
    let mut rungs = Vec::with_capacity(h_list.len());
    for &h in h_list {
        let pert = rho.add(&alpha.scale_by(&h));
        let g = match graph_coords(&pc, &pert, sign, eps) {
            Ok(g) => g,
            Err(StableError::NotSlType(_)) => return Err(StableError::StepTooLarge(h)),
            Err(e) => return Err(e),
        };
        let quotient = g.scale(&(1.0 / h));
        let dev = frob(&quotient.sub(&analytic.mat));
        rungs.push(FdRung { h, deviation: dev });
    }
    let max_deviation = rungs.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let observed_order = fit_order(&rungs);
    Ok(FdCheckReport {
        sign,
        rungs,
        max_deviation,
        observed_order,
        analytic_norm,
    })
}

fn frob(m: &Mat<f64>) -> f64 {
    let mut acc = 0.0;
    for i in 0..m.rows {
        for j in 0..m.cols {
            acc += m[(i, j)] * m[(i, j)];
        }
    }
    acc.sqrt()
}

fn fit_order(rungs: &[FdRung]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rungs
        .iter()
        .filter(|r| r.deviation > 1e-13)
        .map(|r| (r.h.ln(), r.deviation.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::subspace_equal;
    use crate::scalar::{rat, rint, Rat};
    use crate::verify::fixtures::{mono, rho_plus};

    #[test]
    fn k_map_of_reference_form_is_split_identity() {
        let k = k_map(&rho_plus()).unwrap();
        let expected = Mat::from_fn(6, 6, |i, j| {
            if i == j {
                if i < 3 {
                    rint(1)
                } else {
                    rint(-1)
                }
            } else {
                rint(0)
            }
        });
        assert_eq!(k.matrix, expected);
        assert_eq!(k.twist, rint(1));
    }

    #[test]
    fn k_map_of_decomposable_form_vanishes() {
        let k = k_map(&mono(&[1, 2, 3])).unwrap();
        assert_eq!(k.matrix, Mat::zeros(6, 6));
    }

    #[test]
    fn invariant_classification() {
        let c = lambda_invariant(&rho_plus()).unwrap();
        assert_eq!(c.lambda_coeff, rint(1));
        assert_eq!(c.kind, SlKind::SlType);

        let z = lambda_invariant(&mono(&[1, 2, 3])).unwrap();
        assert_eq!(z.lambda_coeff, rint(0));
        assert_eq!(z.kind, SlKind::ZeroLambda);
    }

    #[test]
    fn perturbed_endo_still_squares_to_identity() {
        let rho_t = rho_plus().add(&mono(&[1, 4, 5]));
        let k = k_map(&rho_t).unwrap();
        let m2 = k.matrix.mul(&k.matrix);
        assert_eq!(m2, Mat::identity(6));
    }

    #[test]
    fn eigenspaces_of_reference_form() {
        let pc = para_complex(&rho_plus(), 0.0).unwrap();
        assert_eq!(pc.vol_coeff, rint(1));
        let eplus = crate::grass::Subspace::from_int_rows(
            6,
            &[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]],
            0.0,
        );
        let eminus = crate::grass::Subspace::from_int_rows(
            6,
            &[&[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]],
            0.0,
        );
        assert!(subspace_equal(&pc.e_plus, &eplus, 0.0));
        assert!(subspace_equal(&pc.e_minus, &eminus, 0.0));
    }

    #[test]
    fn eigenspace_of_perturbed_form_tilts() {
        for t in [rat(1, 2), rint(1), rint(2)] {
            let rho_t = rho_plus().add(&mono(&[1, 4, 5]).scale_by(&t));
            let pc = para_complex(&rho_t, 0.0).unwrap();
            let minus_t = rint(0) - t.clone();
            let expected = crate::grass::Subspace::span(
                6,
                &[
                    Vector::new(vec![rint(1), rint(0), rint(0), rint(0), rint(0), minus_t]),
                    Vector::basis(6, 2),
                    Vector::basis(6, 3),
                ],
                0.0,
            );
            assert!(subspace_equal(&pc.e_plus, &expected, 0.0), "t = {t}");
        }
    }

    #[test]
    fn non_stable_forms_are_rejected() {
        assert!(matches!(
            para_complex(&mono(&[1, 2, 3]), 0.0),
            Err(StableError::NotSlType(SlKind::ZeroLambda))
        ));
    }

    #[test]
    fn kappa_inverts_contraction() {
        let rho = rho_plus();
        let pc = para_complex(&rho, 0.0).unwrap();
        let w = kappa_pc(&pc, &rho, &mono(&[2, 3]), Sign::Plus, 0.0).unwrap();
        assert_eq!(w, Vector::basis(6, 1));

        let w2 = kappa_pc(&pc, &rho, &mono(&[1, 3]).neg(), Sign::Plus, 0.0).unwrap();
        assert_eq!(w2, Vector::basis(6, 2));

        let w3 = kappa_pc(&pc, &rho, &mono(&[5, 6]), Sign::Minus, 0.0).unwrap();
        assert_eq!(w3, Vector::basis(6, 4));
    }

    #[test]
    fn kappa_rejects_mixed_type() {
        let rho = rho_plus();
        // theta^14 has one index in each eigenspace
        assert!(matches!(
            kappa(&rho, &mono(&[1, 4]), Sign::Plus, 0.0),
            Err(StableError::WrongType)
        ));
    }

    #[test]
    fn type_projections_match_hand_split() {
        let rho = rho_plus();
        let pc = para_complex(&rho, 0.0).unwrap();
        let a = mono(&[1, 4, 5]);
        assert_eq!(type_projection_pc(&pc, &a, 1, 2, 0.0).unwrap(), a);
        assert!(type_projection_pc(&pc, &a, 2, 1, 0.0).unwrap().is_zero());

        // (theta^3 - theta^6) ^ theta^14 splits as -theta^134 - theta^146
        let dir = wedge(&mono(&[3]).sub(&mono(&[6])), &mono(&[1, 4])).unwrap();
        let p21 = type_projection_pc(&pc, &dir, 2, 1, 0.0).unwrap();
        assert_eq!(p21, mono(&[1, 3, 4]).neg());

        assert_eq!(type_projection_pc(&pc, &rho, 3, 0, 0.0).unwrap(), mono(&[1, 2, 3]));

        // components sum back to the input
        let dec = type_components(&pc, &dir, 0.0).unwrap();
        let mut total = AltForm::zero(6, 3);
        for part in dec.components.values() {
            total = total.add(part);
        }
        assert_eq!(total, dir);
    }

    #[test]
    fn eigenspace_derivative_reference_values() {
        let rho = rho_plus();
        let pc = para_complex(&rho, 0.0).unwrap();

        // plus direction theta^145: -theta^1 (x) e6
        let d = d_eigenspace_pc(&pc, &rho, &mono(&[1, 4, 5]), Sign::Plus, 0.0).unwrap();
        let mut expected = Mat::zeros(3, 3);
        expected[(2, 0)] = rint(-1);
        assert_eq!(d.mat, expected);

        // minus directions (theta^3 - theta^6) ^ theta^14 and ^ theta^15
        let theta = mono(&[3]).sub(&mono(&[6]));
        let d1 = d_eigenspace_pc(
            &pc,
            &rho,
            &wedge(&theta, &mono(&[1, 4])).unwrap(),
            Sign::Minus,
            0.0,
        )
        .unwrap();
        let mut e1 = Mat::zeros(3, 3);
        e1[(1, 0)] = rint(1); // theta^4 (x) e2
        assert_eq!(d1.mat, e1);

        let d2 = d_eigenspace_pc(
            &pc,
            &rho,
            &wedge(&theta, &mono(&[1, 5])).unwrap(),
            Sign::Minus,
            0.0,
        )
        .unwrap();
        let mut e2 = Mat::zeros(3, 3);
        e2[(1, 1)] = rint(1); // theta^5 (x) e2
        assert_eq!(d2.mat, e2);
    }

    #[test]
    fn fd_check_zero_direction_is_exact() {
        let rho = rho_plus().to_f64();
        let zero = AltForm::<f64>::zero(6, 3);
        let report =
            d_eigenspace_fd_check(&rho, &zero, Sign::Plus, &[0.25, 0.125], tol::RANK_REL).unwrap();
        assert!(report.max_deviation < 1e-12);
        assert!(report.observed_order.is_none());
    }

    #[test]
    fn fd_check_reference_direction_hits_the_exact_limit() {
        // the perturbed eigenspace <e1 - t e6, e2, e3> is exactly linear in t,
        // so forward differences agree with -theta^1 (x) e6 at every step
        let rho = rho_plus().to_f64();
        let alpha = mono(&[1, 4, 5]).to_f64();
        let ladder: Vec<f64> = (5..=15).map(|k| 0.5f64.powi(k)).collect();
        let report =
            d_eigenspace_fd_check(&rho, &alpha, Sign::Plus, &ladder, tol::RANK_REL).unwrap();
        assert!((report.analytic_norm - 1.0).abs() < 1e-9);
        assert!(report.max_deviation < 1e-9, "dev {}", report.max_deviation);
    }

    #[test]
    fn fd_check_generic_direction_converges_linearly() {
        let rho = rho_plus()
            .to_f64()
            .add(&mono(&[1, 4, 5]).to_f64().scale_by(&0.25))
            .add(&mono(&[2, 4, 6]).to_f64().scale_by(&0.125));
        let alpha = mono(&[1, 2, 4]).to_f64().add(&mono(&[3, 5, 6]).to_f64());
        let ladder: Vec<f64> = (5..=15).map(|k| 0.5f64.powi(k)).collect();
        let report =
            d_eigenspace_fd_check(&rho, &alpha, Sign::Plus, &ladder, tol::RANK_REL).unwrap();
        match report.observed_order {
            Some(order) => assert!(order >= tol::FD_ORDER_MIN, "observed order {order}"),
            None => assert!(report.max_deviation < 1e-10),
        }
    }

    #[test]
    fn fd_check_rejects_steps_leaving_the_cone() {
        let rho = rho_plus().to_f64();
        // rho - rho crosses the invariant-zero wall at h = 1
        let alpha = rho_plus().to_f64().scale_by(&-1.0);
        let err = d_eigenspace_fd_check(&rho, &alpha, Sign::Plus, &[1.0], tol::RANK_REL);
        assert!(matches!(err, Err(StableError::StepTooLarge(_))));
    }

    #[test]
    fn lambda_of_pulled_back_form_scales_by_squared_determinant() {
        let rho: AltForm<Rat> = rho_plus();
        let g = LinearMap::new(Mat::from_fn(6, 6, |i, j| {
            rint(((3 * i + 5 * j + 1) % 7) as i64 - 3) + if i == j { rint(2) } else { rint(0) }
        }));
        let det = g.det(0.0);
        assert!(!det.is_zero());
        let pulled = pullback(&g, &rho).unwrap();
        let lhs = lambda_invariant(&pulled).unwrap().lambda_coeff;
        let rhs = det.clone() * det * lambda_invariant(&rho).unwrap().lambda_coeff;
        assert_eq!(lhs, rhs);
    }
}
