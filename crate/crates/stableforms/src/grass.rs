//! Linear subspaces of R^n with canonical representatives, hyperplane
//! classification against a para-complex splitting, and genericity of
//! finite hyperplane configurations.
//!
//! Exact subspaces are stored in reduced column echelon form, which makes
//! equality a literal comparison; float subspaces carry an orthonormal
//! basis and compare through principal angles.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exterior::Vector;
use crate::linalg::{orthonormal_span, principal_angles, Mat};
use crate::scalar::Coeff;
use crate::stable::ParaComplex;
use crate::tol;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrassError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("expected a subspace of dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("configuration contains coincident hyperplanes (indices {0} and {1})")]
    DuplicatePlane(usize, usize),
    #[error("hyperplane annihilator is zero")]
    ZeroAnnihilator,
    #[error("subspace literal needs either `basis` or `theta`")]
    EmptyLiteral,
    #[error("scalar: {0}")]
    Scalar(String),
}

/// `k`-dimensional linear subspace of `R^n` with a canonical basis.
///
/// The `orientation` sign records whether the ordered basis handed to the
/// constructor agrees with the canonical representative; comparisons ignore
/// it.
#[derive(Clone, Debug)]
pub struct Subspace<K> {
    n: usize,
    dim: usize,
    basis: Mat<K>,
    orientation: i8,
}

impl<K: Coeff> Subspace<K> {
    /// Span of the given vectors; dependent vectors are dropped.
    pub fn span(n: usize, vectors: &[Vector<K>], eps: f64) -> Self {
        for v in vectors {
            assert_eq!(v.n, n, "vector outside ambient space");
        }
        let (basis, orientation) = canonical_basis(n, vectors, eps);
        Subspace {
            n,
            dim: basis.cols,
            basis,
            orientation,
        }
    }

    pub fn from_int_rows(n: usize, rows: &[&[i64]], eps: f64) -> Self {
        let vecs: Vec<Vector<K>> = rows.iter().map(|r| Vector::from_ints(r)).collect();
        Self::span(n, &vecs, eps)
    }

    /// Hyperplane `ker(theta)` for a non-zero covector.
    pub fn hyperplane(theta: &Vector<K>, eps: f64) -> Result<Self, GrassError> {
        if theta.is_zero() {
            return Err(GrassError::ZeroAnnihilator);
        }
        let row = Mat::from_rows(vec![theta.comps.clone()]);
        let kernel = row.kernel(eps);
        let vecs: Vec<Vector<K>> = kernel.into_iter().map(Vector::new).collect();
        Ok(Self::span(theta.n, &vecs, eps))
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn basis_vectors(&self) -> Vec<Vector<K>> {
        (0..self.dim)
            .map(|j| Vector::new(self.basis.col(j)))
            .collect()
    }

    pub fn basis_matrix(&self) -> &Mat<K> {
        &self.basis
    }

    pub fn is_hyperplane(&self) -> bool {
        self.dim + 1 == self.n
    }

    /// Annihilating covector of a hyperplane, deterministically normalised.
    pub fn annihilator(&self, eps: f64) -> Result<Vector<K>, GrassError> {
        if !self.is_hyperplane() {
            return Err(GrassError::WrongDimension {
                expected: self.n - 1,
                got: self.dim,
            });
        }
        let kernel = self.basis.transpose().kernel(eps);
        let theta = kernel.into_iter().next().ok_or(GrassError::ZeroAnnihilator)?;
        let mut v = Vector::new(theta);
        // scale so the first non-negligible component is +1
        let lead = v
            .comps
            .iter()
            .find(|c| !c.is_negligible(eps))
            .cloned()
            .ok_or(GrassError::ZeroAnnihilator)?;
        let inv = K::one() / lead;
        v = v.scale(&inv);
        Ok(v)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coords_of(&self, v: &Vector<K>, eps: f64) -> Option<Vec<K>> {
        self.basis.solve_consistent(&v.comps, eps)
    }

    pub fn contains_vector(&self, v: &Vector<K>, eps: f64) -> bool {
        if K::EXACT {
            return self.coords_of(v, eps).is_some();
        }
        // float: residual of the orthogonal projection
        let vf: Vec<f64> = v.comps.iter().map(Coeff::to_f64).collect();
        let scale = crate::linalg::norm(&vf).max(1.0);
        let mut res = vf.clone();
        for j in 0..self.dim {
            let q: Vec<f64> = self.basis.col(j).iter().map(Coeff::to_f64).collect();
            let c = crate::linalg::dot(&res, &q);
            for (r, qi) in res.iter_mut().zip(&q) {
                *r -= c * qi;
            }
        }
        crate::linalg::norm(&res) <= eps * scale
    }

    pub fn contains_subspace(&self, other: &Subspace<K>, eps: f64) -> bool {
        other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vector(v, eps))
    }

    pub fn to_f64(&self) -> Subspace<f64> {
        let vecs: Vec<Vector<f64>> = self.basis_vectors().iter().map(Vector::to_f64).collect();
        Subspace::span(self.n, &vecs, tol::RANK_REL)
    }

    /// Maximum principal angle to another subspace of the same dimension
    /// (float measurement; exact inputs are converted).
    pub fn max_principal_angle(&self, other: &Subspace<K>) -> f64 {
        let a = self.float_frame();
        let b = other.float_frame();
        principal_angles(&a, &b)
            .into_iter()
            .fold(0.0_f64, f64::max)
            .max(if self.dim == other.dim { 0.0 } else { std::f64::consts::FRAC_PI_2 })
    }

    fn float_frame(&self) -> Vec<Vec<f64>> {
        let cols: Vec<Vec<f64>> = (0..self.dim)
            .map(|j| self.basis.col(j).iter().map(Coeff::to_f64).collect())
            .collect();
        orthonormal_span(&cols, tol::RANK_REL)
    }
}

fn canonical_basis<K: Coeff>(n: usize, vectors: &[Vector<K>], eps: f64) -> (Mat<K>, i8) {
    if vectors.is_empty() {
        return (Mat::zeros(n, 0), 1);
    }
    if K::EXACT {
        // reduced column echelon form = transposed RREF of the transpose
        let rows = Mat::from_rows(vectors.iter().map(|v| v.comps.clone()).collect());
        let (r, pivots) = rows.rref(eps);
        let cols: Vec<Vec<K>> = (0..pivots.len()).map(|i| r.row(i)).collect();
        let basis = Mat::from_cols(cols);
        let orientation = orientation_sign(&basis, vectors, eps);
        (basis, orientation)
    } else {
        let cols: Vec<Vec<f64>> = vectors
            .iter()
            .map(|v| v.comps.iter().map(Coeff::to_f64).collect())
            .collect();
        let q = orthonormal_span(&cols, eps);
        let qk: Vec<Vec<K>> = q
            .iter()
            .map(|col| col.iter().map(|&x| float_to_k::<K>(x)).collect())
            .collect();
        let basis = Mat::from_cols(qk);
        let orientation = orientation_sign(&basis, vectors, eps);
        (basis, orientation)
    }
}

// Only reachable with K = f64; exact canonicalisation never calls this.
fn float_to_k<K: Coeff>(x: f64) -> K {
    debug_assert!(!K::EXACT);
    let scaled = (x * (1u64 << 53) as f64) as i64;
    K::from_int(scaled) / K::from_int(1i64 << 53)
}

/// Sign of the transition determinant from the constructor's vectors to the
/// canonical basis; `+1` when the input was not an ordered basis.
fn orientation_sign<K: Coeff>(basis: &Mat<K>, vectors: &[Vector<K>], eps: f64) -> i8 {
    if vectors.len() != basis.cols || basis.cols == 0 {
        return 1;
    }
    let given = Mat::from_cols(vectors.iter().map(|v| v.comps.clone()).collect());
    // solve basis * X = given column by column
    let mut x_cols = Vec::with_capacity(basis.cols);
    for j in 0..given.cols {
        match basis.solve_consistent(&given.col(j), eps) {
            Some(c) => x_cols.push(c),
            None => return 1,
        }
    }
    let x = Mat::from_cols(x_cols);
    let d = x.det(eps);
    if d.is_negligible(eps.max(1e-12)) {
        1
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// Equality of subspaces: canonical representatives over the exact backend,
/// maximum principal angle below `eps_sub` over floats.
pub fn subspace_equal<K: Coeff>(a: &Subspace<K>, b: &Subspace<K>, eps_sub: f64) -> bool {
    if a.n != b.n || a.dim != b.dim {
        return false;
    }
    if K::EXACT {
        a.basis == b.basis
    } else {
        a.max_principal_angle(b) < eps_sub
    }
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect<K: Coeff>(u: &Subspace<K>, v: &Subspace<K>, eps: f64) -> Subspace<K> {
    assert_eq!(u.n, v.n, "ambient dimension mismatch");
    if u.dim == 0 || v.dim == 0 {
        return Subspace::span(u.n, &[], eps);
    }
    let neg_v = v.basis.scale(&(K::zero() - K::one()));
    let stacked = u.basis.hcat(&neg_v);
    let kernel = stacked.kernel(eps);
    let vectors: Vec<Vector<K>> = kernel
        .into_iter()
        .map(|k| Vector::new(u.basis.mul_vec(&k[..u.dim].to_vec())))
        .collect();
    Subspace::span(u.n, &vectors, eps)
}

/// Direct-sum span of two subspaces.
pub fn sum<K: Coeff>(u: &Subspace<K>, v: &Subspace<K>, eps: f64) -> Subspace<K> {
    assert_eq!(u.n, v.n);
    let mut vecs = u.basis_vectors();
    vecs.extend(v.basis_vectors());
    Subspace::span(u.n, &vecs, eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperplaneKind {
    /// Meets both eigenspace factors in dimension 2.
    Generic,
    /// Contains the plus eigenspace.
    Plus,
    /// Contains the minus eigenspace.
    Minus,
}

#[derive(Clone, Debug)]
pub struct HyperplaneClass<K> {
    pub kind: HyperplaneKind,
    pub int_plus: Subspace<K>,
    pub int_minus: Subspace<K>,
}

/// Classify a hyperplane against the eigenspace splitting. The three cases
/// are exhaustive on dimensional grounds: a hyperplane meets each rank-3
/// factor in dimension 2 or 3, and cannot contain both.
pub fn classify_hyperplane<K: Coeff>(
    b: &Subspace<K>,
    pc: &ParaComplex<K>,
    eps: f64,
) -> Result<HyperplaneClass<K>, GrassError> {
    if b.dim() != b.ambient() - 1 {
        return Err(GrassError::WrongDimension {
            expected: b.ambient() - 1,
            got: b.dim(),
        });
    }
    let int_plus = intersect(b, &pc.e_plus, eps);
    let int_minus = intersect(b, &pc.e_minus, eps);
    let kind = match (int_plus.dim(), int_minus.dim()) {
        (2, 2) => HyperplaneKind::Generic,
        (3, 2) => HyperplaneKind::Plus,
        (2, 3) => HyperplaneKind::Minus,
        (p, m) => {
            // numerically unreachable for a genuine hyperplane and splitting
            return Err(GrassError::WrongDimension {
                expected: 2,
                got: p.max(m),
            });
        }
    };
    Ok(HyperplaneClass {
        kind,
        int_plus,
        int_minus,
    })
}

/// Finite set of pairwise-distinct hyperplanes.
#[derive(Clone, Debug)]
pub struct HyperplaneConfig<K> {
    planes: Vec<Subspace<K>>,
}

impl<K: Coeff> HyperplaneConfig<K> {
    pub fn new(planes: Vec<Subspace<K>>, eps_sub: f64) -> Result<Self, GrassError> {
        for (i, p) in planes.iter().enumerate() {
            if !p.is_hyperplane() {
                return Err(GrassError::WrongDimension {
                    expected: p.ambient() - 1,
                    got: p.dim(),
                });
            }
            for (j, q) in planes.iter().enumerate().skip(i + 1) {
                if subspace_equal(p, q, eps_sub) {
                    return Err(GrassError::DuplicatePlane(i, j));
                }
            }
        }
        Ok(HyperplaneConfig { planes })
    }

    pub fn planes(&self) -> &[Subspace<K>] {
        &self.planes
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }
}

/// Why a configuration fails to be generic.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GenericityWitness {
    NonGenericPlane { plane: usize, class: HyperplaneKind },
    CoincidingPair { first: usize, second: usize },
}

/// A configuration is generic when every plane is generic and every pair
/// differs in at least one of its two eigenspace intersections.
pub fn config_generic<K: Coeff>(
    xi: &HyperplaneConfig<K>,
    pc: &ParaComplex<K>,
    eps: f64,
    eps_sub: f64,
) -> Result<(bool, Vec<GenericityWitness>), GrassError> {
    let mut witnesses = Vec::new();
    let mut classes = Vec::with_capacity(xi.len());
    for (i, b) in xi.planes().iter().enumerate() {
        let class = classify_hyperplane(b, pc, eps)?;
        if class.kind != HyperplaneKind::Generic {
            witnesses.push(GenericityWitness::NonGenericPlane {
                plane: i,
                class: class.kind,
            });
        }
        classes.push(class);
    }
    for i in 0..xi.len() {
        for j in (i + 1)..xi.len() {
            let same_plus = subspace_equal(&classes[i].int_plus, &classes[j].int_plus, eps_sub);
            let same_minus = subspace_equal(&classes[i].int_minus, &classes[j].int_minus, eps_sub);
            if same_plus && same_minus {
                witnesses.push(GenericityWitness::CoincidingPair { first: i, second: j });
            }
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

/// `dim(E int C)` for a 3-plane against a 4-plane; 1 means transversal.
pub fn stratum_dim<K: Coeff>(e: &Subspace<K>, c: &Subspace<K>, eps: f64) -> usize {
    assert_eq!(e.dim(), 3, "first argument must be a 3-plane");
    assert_eq!(c.dim(), 4, "second argument must be a 4-plane");
    intersect(e, c, eps).dim()
}

// ---------------------------------------------------------------------------
// JSON literals: {"n":6,"basis":[[..],..]} or {"n":6,"theta":[..]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SubspaceLit {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<Vec<String>>,
}

impl<K: Coeff> Serialize for Subspace<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let basis = self
            .basis_vectors()
            .iter()
            .map(|v| v.comps.iter().map(Coeff::render).collect())
            .collect();
        SubspaceLit {
            n: self.n,
            basis: Some(basis),
            theta: None,
        }
        .serialize(serializer)
    }
}

impl<'de, K: Coeff> Deserialize<'de> for Subspace<K> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let lit = SubspaceLit::deserialize(deserializer)?;
        let parse_vec = |comps: &[String]| -> Result<Vector<K>, D::Error> {
            let parsed: Result<Vec<K>, _> = comps.iter().map(|s| K::parse(s)).collect();
            let parsed = parsed.map_err(D::Error::custom)?;
            if parsed.len() != lit.n {
                return Err(D::Error::custom(format!(
                    "vector length {} does not match ambient {}",
                    parsed.len(),
                    lit.n
                )));
            }
            Ok(Vector::new(parsed))
        };
        if let Some(rows) = &lit.basis {
            let vecs: Result<Vec<Vector<K>>, _> = rows.iter().map(|r| parse_vec(r)).collect();
            return Ok(Subspace::span(lit.n, &vecs?, tol::RANK_REL));
        }
        if let Some(theta) = &lit.theta {
            let cov = parse_vec(theta)?;
            return Subspace::hyperplane(&cov, tol::RANK_REL).map_err(D::Error::custom);
        }
        Err(D::Error::custom(GrassError::EmptyLiteral))
    }
}

#[derive(Serialize, Deserialize)]
pub struct ConfigLit {
    pub planes: Vec<serde_json::Value>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, Rat};
    use crate::stable::para_complex;
    use crate::verify::fixtures::rho_plus;

    fn sp(rows: &[&[i64]]) -> Subspace<Rat> {
        Subspace::from_int_rows(6, rows, 0.0)
    }

    #[test]
    fn intersections_match_hand_computations() {
        let u = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0]]);
        let v = sp(&[&[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]]);
        let w = intersect(&u, &v, 0.0);
        let expected = sp(&[&[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0]]);
        assert!(subspace_equal(&w, &expected, tol::SUBSPACE_EQ));

        // generic hyperplane meets <e1,e2,e3> in <e1,e2>
        let b = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        let eplus = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]]);
        let got = intersect(&b, &eplus, 0.0);
        assert!(subspace_equal(
            &got,
            &sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0]]),
            tol::SUBSPACE_EQ
        ));

        // two generic hyperplanes meet in a hand-checked 4-plane
        let bp = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 1, 0, 0, 0, 1]]);
        let c = intersect(&b, &bp, 0.0);
        let expected_c = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 1, 1, 0, 0, 1]]);
        assert!(subspace_equal(&c, &expected_c, tol::SUBSPACE_EQ));
    }

    #[test]
    fn hyperplane_classification_trichotomy() {
        let pc = para_complex(&rho_plus(), 0.0).unwrap();
        let plus = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0]]);
        assert_eq!(
            classify_hyperplane(&plus, &pc, 0.0).unwrap().kind,
            HyperplaneKind::Plus
        );
        let minus = sp(&[&[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]]);
        assert_eq!(
            classify_hyperplane(&minus, &pc, 0.0).unwrap().kind,
            HyperplaneKind::Minus
        );
        let gen = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        let class = classify_hyperplane(&gen, &pc, 0.0).unwrap();
        assert_eq!(class.kind, HyperplaneKind::Generic);
        assert_eq!(class.int_plus.dim(), 2);
        assert_eq!(class.int_minus.dim(), 2);
    }

    #[test]
    fn config_genericity_and_witnesses() {
        let pc = para_complex(&rho_plus(), 0.0).unwrap();
        let b = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        let xi = HyperplaneConfig::new(vec![b.clone()], tol::SUBSPACE_EQ).unwrap();
        let (ok, _) = config_generic(&xi, &pc, 0.0, tol::SUBSPACE_EQ).unwrap();
        assert!(ok);

        // mirrored plane shares both intersections with b
        let b2 = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, -1]]);
        let xi2 = HyperplaneConfig::new(vec![b.clone(), b2], tol::SUBSPACE_EQ).unwrap();
        let (ok2, wit) = config_generic(&xi2, &pc, 0.0, tol::SUBSPACE_EQ).unwrap();
        assert!(!ok2);
        assert_eq!(
            wit,
            vec![GenericityWitness::CoincidingPair { first: 0, second: 1 }]
        );

        // a plus-type plane fails on its own
        let plus = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0]]);
        let xi3 = HyperplaneConfig::new(vec![plus], tol::SUBSPACE_EQ).unwrap();
        let (ok3, wit3) = config_generic(&xi3, &pc, 0.0, tol::SUBSPACE_EQ).unwrap();
        assert!(!ok3);
        assert!(matches!(
            wit3[0],
            GenericityWitness::NonGenericPlane { plane: 0, class: HyperplaneKind::Plus }
        ));
    }

    #[test]
    fn duplicate_planes_rejected() {
        let b = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        let same = sp(&[&[0, 1, 0, 0, 0, 0], &[1, 0, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 1], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 1, 0, 0]]);
        assert!(matches!(
            HyperplaneConfig::new(vec![b, same], tol::SUBSPACE_EQ),
            Err(GrassError::DuplicatePlane(0, 1))
        ));
    }

    #[test]
    fn stratum_dimensions() {
        let e = sp(&[&[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]]);
        let c = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 1, 1, 0, 0, 1]]);
        assert_eq!(stratum_dim(&e, &c, 0.0), 2);

        let e2 = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]]);
        let c2 = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 0, 0]]);
        assert_eq!(stratum_dim(&e2, &c2, 0.0), 3);
    }

    #[test]
    fn equality_is_representation_independent() {
        let a = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0]]);
        let b = sp(&[&[1, 1, 0, 0, 0, 0], &[1, -1, 0, 0, 0, 0]]);
        assert!(subspace_equal(&a, &b, tol::SUBSPACE_EQ));
        let c = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0]]);
        assert!(!subspace_equal(&a, &c, tol::SUBSPACE_EQ));
    }

    #[test]
    fn annihilator_kills_the_plane() {
        let b = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        let theta = b.annihilator(0.0).unwrap();
        for v in b.basis_vectors() {
            let pairing: Rat = theta
                .comps
                .iter()
                .zip(&v.comps)
                .map(|(a, b)| a.clone() * b.clone())
                .fold(rint(0), |acc, x| acc + x);
            assert!(pairing.is_zero());
        }
    }

    #[test]
    fn orientation_reversing_symmetry_preserves_normal_form_plane() {
        // diag(-1,1,-1,-1,1,-1) preserves <e1,e2,e4,e5,e3+e6> and reverses
        // its orientation
        let b = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        let diag = [-1, 1, -1, -1, 1, -1];
        let mapped: Vec<Vector<Rat>> = b
            .basis_vectors()
            .iter()
            .map(|v| {
                Vector::new(
                    v.comps
                        .iter()
                        .zip(diag.iter())
                        .map(|(c, &d)| c.clone() * rint(d))
                        .collect(),
                )
            })
            .collect();
        let image = Subspace::span(6, &mapped, 0.0);
        assert!(subspace_equal(&b, &image, tol::SUBSPACE_EQ));

        // determinant of the restriction in the canonical basis
        let coords: Vec<Vec<Rat>> = mapped
            .iter()
            .map(|v| b.coords_of(v, 0.0).unwrap())
            .collect();
        let m = Mat::from_cols(coords);
        let d = m.det(0.0);
        assert!(!d.is_positive() && !d.is_zero());
    }

    #[test]
    fn subspace_json_round_trip() {
        let b = sp(&[&[1, 0, 0, 0, 0, 0], &[0, 1, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
        let s = serde_json::to_string(&b).unwrap();
        let back: Subspace<Rat> = serde_json::from_str(&s).unwrap();
        assert!(subspace_equal(&b, &back, tol::SUBSPACE_EQ));

        let lit = r#"{"n":6,"theta":["0","0","1","0","0","-1"]}"#;
        let plane: Subspace<Rat> = serde_json::from_str(lit).unwrap();
        assert!(subspace_equal(&plane, &b, tol::SUBSPACE_EQ));
    }
}
