//! Exterior algebra on R^n for small n: sparse alternating forms, wedge,
//! interior product, pullback, evaluation and the top-degree duality.
//!
//! Forms are stored sparsely as `multi-index -> coefficient` with strictly
//! increasing 1-based indices; a multi-index is packed into a bitmask, which
//! makes wedge signs a popcount and keeps the map keys totally ordered.
//! The interior product contracts into the first slot:
//! `(v .| a)(w_2, .., w_k) = a(v, w_2, .., w_k)`, so e.g.
//! `e_2 .| theta^123 = -theta^13`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::Mat;
use crate::scalar::{Coeff, ScalarParseError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExteriorError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("evaluation arity mismatch: degree {degree} form applied to {got} vectors")]
    ArityMismatch { degree: usize, got: usize },
    #[error("multi-index {0:?} not strictly increasing within 1..={1}")]
    BadMultiIndex(Vec<u8>, usize),
    #[error("linear map is {rows}x{cols}, incompatible with ambient {ambient}")]
    MapMismatch {
        rows: usize,
        cols: usize,
        ambient: usize,
    },
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
}

/// Strictly increasing tuple of indices in `1..=n`, packed as a bitmask
/// (bit `i-1` set iff index `i` is present).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_indices(indices: &[u8], n: usize) -> Result<Self, ExteriorError> {
        let mut mask = 0u32;
        let mut prev = 0u8;
        for &i in indices {
            if i == 0 || i as usize > n || i <= prev {
                return Err(ExteriorError::BadMultiIndex(indices.to_vec(), n));
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Ok(MultiIndex(mask))
    }

    pub fn from_mask(mask: u32) -> Self {
        MultiIndex(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<u8> {
        (0..32)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    pub fn contains(self, index: u8) -> bool {
        index >= 1 && self.0 & (1 << (index - 1)) != 0
    }

    /// Full index set `{1, .., n}`.
    pub fn full(n: usize) -> Self {
        MultiIndex((1u32 << n) - 1)
    }

    /// Sign and merged index for `self wedge other`; `None` when an index repeats.
    pub fn merge(self, other: MultiIndex) -> Option<(MultiIndex, i8)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // inversions: pairs (i in self, j in other) with j < i
        let mut inversions = 0u32;
        let mut bits = self.0;
        while bits != 0 {
            let b = bits.trailing_zeros();
            inversions += (other.0 & ((1 << b) - 1)).count_ones();
            bits &= bits - 1;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(self.0 | other.0), sign))
    }

    /// Sign and remaining index for removing `index` in first-slot contraction;
    /// `None` when `index` is absent.
    pub fn remove(self, index: u8) -> Option<(MultiIndex, i8)> {
        if !self.contains(index) {
            return None;
        }
        let bit = 1u32 << (index - 1);
        let before = (self.0 & (bit - 1)).count_ones();
        let sign = if before % 2 == 0 { 1 } else { -1 };
        Some((MultiIndex(self.0 & !bit), sign))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta^{:?}", self.indices())
    }
}

/// Vector in `R^n` with components in the scalar backend.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<K> {
    pub n: usize,
    pub comps: Vec<K>,
}

impl<K: Coeff> Vector<K> {
    pub fn new(comps: Vec<K>) -> Self {
        Vector {
            n: comps.len(),
            comps,
        }
    }

    pub fn zero(n: usize) -> Self {
        Vector {
            n,
            comps: vec![K::zero(); n],
        }
    }

    /// Canonical basis vector `e_i` (1-based).
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n);
        let mut v = Self::zero(n);
        v.comps[i - 1] = K::one();
        v
    }

    pub fn from_ints(vals: &[i64]) -> Self {
        Vector::new(vals.iter().map(|&v| K::from_int(v)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Vector::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, s: &K) -> Self {
        Vector::new(self.comps.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Vector::new(self.comps.iter().map(|a| K::zero() - a.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(K::is_zero)
    }

    pub fn to_f64(&self) -> Vector<f64> {
        Vector::new(self.comps.iter().map(Coeff::to_f64).collect())
    }
}

/// Linear map `R^source -> R^target`, stored as a `target x source` matrix
/// whose columns are the images of the source basis vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearMap<K> {
    pub mat: Mat<K>,
}

impl<K: Coeff> LinearMap<K> {
    pub fn new(mat: Mat<K>) -> Self {
        LinearMap { mat }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            mat: Mat::identity(n),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.mat.cols
    }

    pub fn target_dim(&self) -> usize {
        self.mat.rows
    }

    pub fn from_cols(cols: Vec<Vector<K>>) -> Self {
        LinearMap {
            mat: Mat::from_cols(cols.into_iter().map(|v| v.comps).collect()),
        }
    }

    pub fn apply(&self, v: &Vector<K>) -> Vector<K> {
        Vector::new(self.mat.mul_vec(&v.comps))
    }

    pub fn compose(&self, inner: &Self) -> Self {
        LinearMap {
            mat: self.mat.mul(&inner.mat),
        }
    }

    pub fn det(&self, eps: f64) -> K {
        self.mat.det(eps)
    }
}

/// Sparse alternating `k`-form on `R^n`; zero coefficients are absent.
#[derive(Clone, PartialEq, Debug)]
pub struct AltForm<K> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, K>,
}

impl<K: Coeff> AltForm<K> {
    pub fn zero(n: usize, k: usize) -> Self {
        AltForm {
            n,
            k,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &K)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: MultiIndex) -> K {
        self.coeffs.get(&idx).cloned().unwrap_or_else(K::zero)
    }

    /// Basis monomial `theta^{i1..ik}` with coefficient one.
    pub fn monomial(n: usize, indices: &[u8]) -> Result<Self, ExteriorError> {
        Self::from_terms(n, indices.len(), vec![(indices.to_vec(), K::one())])
    }

    pub fn from_terms(
        n: usize,
        k: usize,
        terms: Vec<(Vec<u8>, K)>,
    ) -> Result<Self, ExteriorError> {
        let mut form = Self::zero(n, k);
        for (indices, c) in terms {
            if indices.len() != k {
                return Err(ExteriorError::DegreeMismatch {
                    expected: k,
                    got: indices.len(),
                });
            }
            let idx = MultiIndex::from_indices(&indices, n)?;
            form.add_term(idx, c);
        }
        Ok(form)
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: K) {
        debug_assert_eq!(idx.degree(), self.k);
        let entry = self.coeffs.entry(idx).or_insert_with(K::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        assert_eq!(self.k, other.k);
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(*idx, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale_by(&(K::zero() - K::one()))
    }

    pub fn scale_by(&self, s: &K) -> Self {
        let mut out = Self::zero(self.n, self.k);
        if s.is_zero() {
            return out;
        }
        for (idx, c) in &self.coeffs {
            out.add_term(*idx, c.clone() * s.clone());
        }
        out
    }

    pub fn to_f64(&self) -> AltForm<f64> {
        let mut out = AltForm::zero(self.n, self.k);
        for (idx, c) in &self.coeffs {
            out.add_term(*idx, c.to_f64());
        }
        out
    }

    /// Coefficient vector over all degree-`k` monomials in lexicographic
    /// (mask) order; used by solvers that treat forms as plain vectors.
    pub fn to_dense(&self) -> Vec<K> {
        basis_masks(self.n, self.k)
            .into_iter()
            .map(|m| self.coeff(MultiIndex::from_mask(m)))
            .collect()
    }

    pub fn from_dense(n: usize, k: usize, dense: &[K]) -> Self {
        let masks = basis_masks(n, k);
        assert_eq!(masks.len(), dense.len());
        let mut out = Self::zero(n, k);
        for (m, c) in masks.into_iter().zip(dense) {
            if !c.is_zero() {
                out.add_term(MultiIndex::from_mask(m), c.clone());
            }
        }
        out
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coeffs
            .values()
            .map(Coeff::magnitude)
            .fold(0.0, f64::max)
    }

    /// Drop terms with `|c| <= eps` (float hygiene after long computations).
    pub fn chop(&self, eps: f64) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for (idx, c) in &self.coeffs {
            if !c.is_negligible(eps) {
                out.add_term(*idx, c.clone());
            }
        }
        out
    }
}

/// All degree-`k` index masks in `1..=n`, ascending as integers.
pub fn basis_masks(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// Wedge product. Degrees add; when they exceed `n` the result is the zero
/// form of that degree.
pub fn wedge<K: Coeff>(a: &AltForm<K>, b: &AltForm<K>) -> Result<AltForm<K>, ExteriorError> {
    if a.n != b.n {
        return Err(ExteriorError::AmbientMismatch(a.n, b.n));
    }
    let mut out = AltForm::zero(a.n, a.k + b.k);
    for (ia, ca) in &a.coeffs {
        for (ib, cb) in &b.coeffs {
            if let Some((idx, sign)) = ia.merge(*ib) {
                let c = ca.clone() * cb.clone();
                out.add_term(idx, if sign > 0 { c } else { K::zero() - c });
            }
        }
    }
    Ok(out)
}

/// Interior product `v .| a`, contracting into the first slot.
pub fn contract<K: Coeff>(v: &Vector<K>, a: &AltForm<K>) -> Result<AltForm<K>, ExteriorError> {
    if v.n != a.n {
        return Err(ExteriorError::AmbientMismatch(v.n, a.n));
    }
    if a.k == 0 {
        return Err(ExteriorError::DegreeMismatch { expected: 1, got: 0 });
    }
    let mut out = AltForm::zero(a.n, a.k - 1);
    for (idx, c) in &a.coeffs {
        for i in idx.indices() {
            let vi = &v.comps[i as usize - 1];
            if vi.is_zero() {
                continue;
            }
            let (rest, sign) = idx.remove(i).expect("index present");
            let term = vi.clone() * c.clone();
            out.add_term(rest, if sign > 0 { term } else { K::zero() - term });
        }
    }
    Ok(out)
}

/// Full antisymmetric multilinear evaluation `a(v_1, .., v_k)`.
pub fn eval<K: Coeff>(a: &AltForm<K>, vs: &[Vector<K>]) -> Result<K, ExteriorError> {
    if vs.len() != a.k {
        return Err(ExteriorError::ArityMismatch {
            degree: a.k,
            got: vs.len(),
        });
    }
    for v in vs {
        if v.n != a.n {
            return Err(ExteriorError::AmbientMismatch(v.n, a.n));
        }
    }
    if a.k == 0 {
        // a 0-form is a scalar
        return Ok(a.coeff(MultiIndex::EMPTY));
    }
    let mut acc = K::zero();
    for (idx, c) in &a.coeffs {
        let rows = idx.indices();
        let minor = Mat::from_fn(a.k, a.k, |r, cidx| {
            vs[cidx].comps[rows[r] as usize - 1].clone()
        });
        acc = acc + c.clone() * minor.det(0.0);
    }
    Ok(acc)
}

/// Pullback `L^* a`: `(L^*a)(v_1,..,v_k) = a(L v_1, .., L v_k)`.
pub fn pullback<K: Coeff>(l: &LinearMap<K>, a: &AltForm<K>) -> Result<AltForm<K>, ExteriorError> {
    if l.target_dim() != a.n {
        return Err(ExteriorError::MapMismatch {
            rows: l.target_dim(),
            cols: l.source_dim(),
            ambient: a.n,
        });
    }
    let m = l.source_dim();
    let k = a.k;
    if k > m {
        return Ok(AltForm::zero(m, k));
    }
    let cols: Vec<Vector<K>> = (0..m)
        .map(|j| Vector::new(l.mat.col(j)))
        .collect();
    let mut out = AltForm::zero(m, k);
    for mask in basis_masks(m, k) {
        let idx = MultiIndex::from_mask(mask);
        let vs: Vec<Vector<K>> = idx
            .indices()
            .into_iter()
            .map(|i| cols[i as usize - 1].clone())
            .collect();
        let c = eval(a, &vs)?;
        if !c.is_zero() {
            out.add_term(idx, c);
        }
    }
    Ok(out)
}

/// Top-degree duality: for a degree `n-1` form `a`, the unique vector `v`
/// with `v .| theta^{1..n} = a`, paired with the unit top form.
pub fn top_dual<K: Coeff>(a: &AltForm<K>) -> Result<(Vector<K>, AltForm<K>), ExteriorError> {
    if a.k + 1 != a.n {
        return Err(ExteriorError::DegreeMismatch {
            expected: a.n.saturating_sub(1),
            got: a.k,
        });
    }
    let full = MultiIndex::full(a.n);
    let mut v = Vector::zero(a.n);
    for i in 1..=a.n as u8 {
        let (rest, sign) = full.remove(i).expect("index in full mask");
        let c = a.coeff(rest);
        if !c.is_zero() {
            v.comps[i as usize - 1] = if sign > 0 { c } else { K::zero() - c };
        }
    }
    let top = AltForm::monomial(a.n, &(1..=a.n as u8).collect::<Vec<_>>())?;
    Ok((v, top))
}

// ---------------------------------------------------------------------------
// JSON literals: {"n":6,"k":3,"terms":[{"idx":[1,2,3],"c":"1"},...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermLit {
    idx: Vec<u8>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct FormLit {
    n: usize,
    k: usize,
    terms: Vec<TermLit>,
}

impl<K: Coeff> Serialize for AltForm<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let lit = FormLit {
            n: self.n,
            k: self.k,
            terms: self
                .coeffs
                .iter()
                .map(|(idx, c)| TermLit {
                    idx: idx.indices(),
                    c: c.render(),
                })
                .collect(),
        };
        lit.serialize(serializer)
    }
}

impl<'de, K: Coeff> Deserialize<'de> for AltForm<K> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let lit = FormLit::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(lit.terms.len());
        for t in lit.terms {
            let c = K::parse(&t.c).map_err(D::Error::custom)?;
            terms.push((t.idx, c));
        }
        AltForm::from_terms(lit.n, lit.k, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rint, Rat};

    fn mono(n: usize, idx: &[u8]) -> AltForm<Rat> {
        AltForm::monomial(n, idx).unwrap()
    }

    #[test]
    fn wedge_disjoint_monomials() {
        let a = mono(6, &[1]);
        let b = mono(6, &[2, 3]);
        assert_eq!(wedge(&a, &b).unwrap(), mono(6, &[1, 2, 3]));
        let c = mono(6, &[1, 2, 3]);
        let d = mono(6, &[4, 5, 6]);
        assert_eq!(wedge(&c, &d).unwrap(), mono(6, &[1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn wedge_with_signs_on_r5() {
        // (theta^23 + theta^45) ^ (theta^123 + theta^145) = 2 theta^12345
        let a = mono(5, &[2, 3]).add(&mono(5, &[4, 5]));
        let b = mono(5, &[1, 2, 3]).add(&mono(5, &[1, 4, 5]));
        let w = wedge(&a, &b).unwrap();
        let expected = mono(5, &[1, 2, 3, 4, 5]).scale_by(&rint(2));
        assert_eq!(w, expected);
    }

    #[test]
    fn wedge_ambient_mismatch_is_error() {
        let a: AltForm<Rat> = mono(5, &[1]);
        let b = mono(6, &[2]);
        assert!(matches!(
            wedge(&a, &b),
            Err(ExteriorError::AmbientMismatch(5, 6))
        ));
    }

    #[test]
    fn wedge_above_top_degree_is_zero() {
        let a = mono(5, &[1, 2, 3]);
        let b = mono(5, &[3, 4, 5]);
        let w = wedge(&a, &b).unwrap();
        assert_eq!(w.degree(), 6);
        assert!(w.is_zero());
    }

    #[test]
    fn contraction_first_slot_signs() {
        let rho = mono(6, &[1, 2, 3]);
        let e1: Vector<Rat> = Vector::basis(6, 1);
        let e2: Vector<Rat> = Vector::basis(6, 2);
        assert_eq!(contract(&e1, &rho).unwrap(), mono(6, &[2, 3]));
        assert_eq!(contract(&e2, &rho).unwrap(), mono(6, &[1, 3]).neg());
        // e4 .| (theta^123 + theta^456) = theta^56
        let rho_plus = mono(6, &[1, 2, 3]).add(&mono(6, &[4, 5, 6]));
        let e4: Vector<Rat> = Vector::basis(6, 4);
        assert_eq!(contract(&e4, &rho_plus).unwrap(), mono(6, &[5, 6]));
    }

    #[test]
    fn contract_degree_zero_is_error() {
        let s = AltForm::<Rat>::from_terms(6, 0, vec![(vec![], rint(3))]).unwrap();
        let v: Vector<Rat> = Vector::basis(6, 1);
        assert!(contract(&v, &s).is_err());
    }

    #[test]
    fn evaluation_matches_coefficients_and_signs() {
        let a = mono(6, &[2, 3]).add(&mono(6, &[4, 5]));
        let e = |i| Vector::<Rat>::basis(6, i);
        assert_eq!(eval(&a, &[e(2), e(3)]).unwrap(), rint(1));
        assert_eq!(eval(&a, &[e(3), e(2)]).unwrap(), rint(-1));
        assert_eq!(eval(&a, &[e(4), e(5)]).unwrap(), rint(1));
        assert_eq!(eval(&a, &[e(1), e(2)]).unwrap(), rint(0));
    }

    #[test]
    fn pullback_identity_inclusion_swap() {
        let rho_plus = mono(6, &[1, 2, 3]).add(&mono(6, &[4, 5, 6]));
        assert_eq!(
            pullback(&LinearMap::identity(6), &rho_plus).unwrap(),
            rho_plus
        );

        // inclusion of <e1..e5>: restriction is theta^123
        let inc = LinearMap::from_cols((1..=5).map(|i| Vector::<Rat>::basis(6, i)).collect());
        assert_eq!(pullback(&inc, &rho_plus).unwrap(), mono(5, &[1, 2, 3]));

        // e1<->e4, e2<->e5, e3<->e6 preserves rho_plus, reverses orientation
        let swap = LinearMap::from_cols(
            [4, 5, 6, 1, 2, 3]
                .iter()
                .map(|&i| Vector::<Rat>::basis(6, i))
                .collect(),
        );
        assert_eq!(pullback(&swap, &rho_plus).unwrap(), rho_plus);
        assert_eq!(swap.det(0.0), rint(-1));
    }

    #[test]
    fn pullback_functorial() {
        let a = mono(6, &[1, 4, 5]).add(&mono(6, &[2, 3, 6]).scale_by(&rint(3)));
        let l = LinearMap::new(Mat::from_fn(6, 6, |i, j| {
            rint(((i * 7 + j * 3) % 5) as i64 - 2)
        }));
        let m = LinearMap::new(Mat::from_fn(6, 6, |i, j| {
            rint(((i * 2 + j * 5) % 7) as i64 - 3)
        }));
        let lm = l.compose(&m);
        let lhs = pullback(&lm, &a).unwrap();
        let rhs = pullback(&m, &pullback(&l, &a).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn top_duality_signs() {
        let a = mono(6, &[2, 3, 4, 5, 6]);
        let (v, top) = top_dual(&a).unwrap();
        assert_eq!(v, Vector::basis(6, 1));
        assert_eq!(top, mono(6, &[1, 2, 3, 4, 5, 6]));

        let b = mono(6, &[1, 2, 3, 5, 6]);
        let (w, _) = top_dual(&b).unwrap();
        assert_eq!(w, Vector::<Rat>::basis(6, 4).neg());

        let z = AltForm::<Rat>::zero(6, 5);
        let (vz, _) = top_dual(&z).unwrap();
        assert!(vz.is_zero());
    }

    #[test]
    fn top_dual_round_trips_with_contract() {
        let a = mono(6, &[1, 2, 3, 4, 6]).scale_by(&rint(5)).add(&mono(6, &[2, 3, 4, 5, 6]));
        let (v, top) = top_dual(&a).unwrap();
        assert_eq!(contract(&v, &top).unwrap(), a);
    }

    #[test]
    fn json_literal_round_trip_is_bit_exact() {
        let form = AltForm::<Rat>::from_terms(
            6,
            3,
            vec![
                (vec![1, 2, 3], rint(1)),
                (vec![4, 5, 6], crate::scalar::rat(-7, 3)),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&form).unwrap();
        let back: AltForm<Rat> = serde_json::from_str(&s).unwrap();
        assert_eq!(form, back);
        let expect = r#"{"n":6,"k":3,"terms":[{"idx":[1,2,3],"c":"1"},{"idx":[4,5,6],"c":"-7/3"}]}"#;
        assert_eq!(s, expect);
    }

    #[test]
    fn bad_multi_index_rejected() {
        assert!(AltForm::<Rat>::from_terms(6, 2, vec![(vec![2, 2], rint(1))]).is_err());
        assert!(AltForm::<Rat>::from_terms(6, 2, vec![(vec![3, 2], rint(1))]).is_err());
        assert!(AltForm::<Rat>::from_terms(6, 2, vec![(vec![0, 2], rint(1))]).is_err());
        assert!(AltForm::<Rat>::from_terms(6, 2, vec![(vec![5, 7], rint(1))]).is_err());
    }
}
