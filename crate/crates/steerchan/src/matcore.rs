//! Dense complex Hermitian and real symmetric matrix utilities: PSD tests,
//! square roots, pseudo-inverses, Schur complements and symplectic forms.
//!
//! These are the numeric currency of the crate. Validation happens at
//! construction: a [`HermitianMatrix`] is guaranteed square, finite and
//! exactly Hermitian (it is symmetrised on input after a `1e-12` check), so
//! the spectral operations below are total except where the mathematical
//! domain genuinely restricts them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::{tol, Error, Result};

/// Dense complex Hermitian matrix.
///
/// Serialises as `{"dim": n, "entries": [[[re, im], ...], ...]}` (row-major),
/// the matrix format used repo-wide.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HermitianWire", into = "HermitianWire")]
pub struct HermitianMatrix {
    mat: DMatrix<C64>,
}

impl HermitianMatrix {
    /// Validates squareness, finiteness and Hermiticity (within `1e-12`),
    /// then symmetrises exactly: `H <- (H + H^dag)/2`.
    pub fn new(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::InvalidInput(format!(
                "expected nonempty square matrix, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let dev = (&mat - mat.adjoint()).norm() / 2.0;
        if dev > tol::HERMITICITY * (1.0 + mat.norm()) {
            return Err(Error::InvalidInput(format!(
                "matrix is not Hermitian: deviation {dev:.3e}"
            )));
        }
        let herm = (&mat + mat.adjoint()).scale(0.5);
        Ok(Self { mat: herm })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    /// Diagonal matrix from real values.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self {
            mat: DMatrix::from_fn(diag.len(), diag.len(), |i, j| {
                if i == j {
                    C64::new(diag[i], 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            }),
        }
    }

    /// Row-major construction from complex entries.
    pub fn from_rows(dim: usize, rows: &[C64]) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} entries, got {}",
                dim * dim,
                rows.len()
            )));
        }
        Self::new(DMatrix::from_fn(dim, dim, |i, j| rows[i * dim + j]))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    /// Trace; real for Hermitian matrices.
    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Eigendecomposition with eigenvalues sorted descending and the
    /// deterministic phase convention (largest-magnitude component of each
    /// eigenvector made real positive).
    pub fn eig_desc(&self) -> (DVector<f64>, DMatrix<C64>) {
        let se = self.mat.clone().symmetric_eigen();
        let d = self.dim();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
        let vals = DVector::from_fn(d, |i, _| se.eigenvalues[order[i]]);
        let mut vecs = DMatrix::zeros(d, d);
        for (k, &src) in order.iter().enumerate() {
            let mut col = se.eigenvectors.column(src).into_owned();
            phase_fix(&mut col);
            vecs.set_column(k, &col);
        }
        (vals, vecs)
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        self.mat
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// `true` iff the smallest eigenvalue is `>= -tol`.
    pub fn is_psd(&self, tolerance: f64) -> bool {
        self.min_eigenvalue() >= -tolerance
    }

    /// Positive-semidefinite square root. Negative eigenvalues within the
    /// PSD tolerance are clipped to zero; larger ones are a domain error.
    pub fn sqrt_psd(&self) -> Result<HermitianMatrix> {
        let (vals, vecs) = self.eig_desc();
        let min = vals[vals.len() - 1];
        if min < -tol::PSD {
            return Err(Error::Domain(format!(
                "matrix is not PSD: min eigenvalue {min:.3e}"
            )));
        }
        Ok(self.rebuild(&vals, &vecs, |x| x.max(0.0).sqrt()))
    }

    /// Moore-Penrose pseudo-inverse of a PSD matrix. Eigenvalues below
    /// `rank_tol * max_eigenvalue` are treated as zero.
    pub fn pinv_psd(&self, rank_tol: f64) -> HermitianMatrix {
        let (vals, vecs) = self.eig_desc();
        let max = vals[0].max(0.0);
        let cut = rank_tol * max;
        self.rebuild(&vals, &vecs, |x| if x > cut && x > 0.0 { 1.0 / x } else { 0.0 })
    }

    /// Schur complement of the lower-right block: for `M = [[A, B*], [B, C]]`
    /// with `A` of size `block_a_dim`, returns `A - B* C^{-1} B`.
    ///
    /// `C` is inverted spectrally; an eigenvalue below `1e-12 * max|eig|`
    /// means `C` is singular and is reported as a domain error.
    pub fn schur_complement(&self, block_a_dim: usize) -> Result<HermitianMatrix> {
        let d = self.dim();
        if block_a_dim == 0 || block_a_dim >= d {
            return Err(Error::InvalidInput(format!(
                "block dimension {block_a_dim} out of range for {d}x{d} matrix"
            )));
        }
        let a = self.mat.view((0, 0), (block_a_dim, block_a_dim)).into_owned();
        let bstar = self
            .mat
            .view((0, block_a_dim), (block_a_dim, d - block_a_dim))
            .into_owned();
        let c = HermitianMatrix {
            mat: self
                .mat
                .view((block_a_dim, block_a_dim), (d - block_a_dim, d - block_a_dim))
                .into_owned(),
        };
        let cinv = c.inverse_checked()?;
        let comp = a - &bstar * cinv * bstar.adjoint();
        // rounding can leave a ~1e-15 anti-Hermitian part; symmetrise
        Ok(HermitianMatrix {
            mat: (&comp + comp.adjoint()).scale(0.5),
        })
    }

    /// Spectral inverse, rejecting eigenvalues below `1e-12 * max|eig|`.
    fn inverse_checked(&self) -> Result<DMatrix<C64>> {
        let (vals, vecs) = self.eig_desc();
        let max = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if max == 0.0 || vals.iter().any(|&v| v.abs() < 1e-12 * max) {
            return Err(Error::Domain(
                "block is singular beyond rank tolerance".into(),
            ));
        }
        Ok(self.rebuild_raw(&vals, &vecs, |x| 1.0 / x))
    }

    fn rebuild(&self, vals: &DVector<f64>, vecs: &DMatrix<C64>, f: impl Fn(f64) -> f64) -> Self {
        HermitianMatrix {
            mat: self.rebuild_raw(vals, vecs, f),
        }
    }

    fn rebuild_raw(
        &self,
        vals: &DVector<f64>,
        vecs: &DMatrix<C64>,
        f: impl Fn(f64) -> f64,
    ) -> DMatrix<C64> {
        let d = self.dim();
        let fd = DMatrix::from_fn(d, d, |i, j| {
            if i == j {
                C64::new(f(vals[i]), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let m = vecs * fd * vecs.adjoint();
        (&m + m.adjoint()).scale(0.5)
    }
}

/// Multiply the vector by a unit phase so its largest-magnitude component is
/// real positive. No-op for the zero vector.
pub(crate) fn phase_fix(v: &mut DVector<C64>) {
    let mut idx = 0;
    let mut best = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let a = z.norm();
        if a > best {
            best = a;
            idx = i;
        }
    }
    if best > 0.0 {
        let phase = v[idx].conj() / best;
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Dense real symmetric matrix; symmetrised exactly on construction.
///
/// Serialises as `{"dim": n, "entries": [[...], ...]}` with plain numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymmetricWire", into = "SymmetricWire")]
pub struct SymmetricMatrix {
    mat: DMatrix<f64>,
}

impl SymmetricMatrix {
    pub fn new(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::InvalidInput(format!(
                "expected nonempty square matrix, got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let dev = (&mat - mat.transpose()).norm() / 2.0;
        if dev > tol::HERMITICITY * (1.0 + mat.norm()) {
            return Err(Error::InvalidInput(format!(
                "matrix is not symmetric: deviation {dev:.3e}"
            )));
        }
        let sym = (&mat + mat.transpose()).scale(0.5);
        Ok(Self { mat: sym })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self {
            mat: DMatrix::from_diagonal(&DVector::from_row_slice(diag)),
        }
    }

    pub fn from_rows(dim: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::InvalidInput(format!(
                "expected {} entries, got {}",
                dim * dim,
                rows.len()
            )));
        }
        Self::new(DMatrix::from_fn(dim, dim, |i, j| rows[i * dim + j]))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.mat
    }

    /// Eigendecomposition with eigenvalues sorted descending; eigenvector
    /// signs fixed so the largest-magnitude component is positive.
    pub fn eig_desc(&self) -> (DVector<f64>, DMatrix<f64>) {
        let se = self.mat.clone().symmetric_eigen();
        let d = self.dim();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
        let vals = DVector::from_fn(d, |i, _| se.eigenvalues[order[i]]);
        let mut vecs = DMatrix::zeros(d, d);
        for (k, &src) in order.iter().enumerate() {
            let mut col = se.eigenvectors.column(src).into_owned();
            let mut idx = 0;
            let mut best = 0.0f64;
            for (i, x) in col.iter().enumerate() {
                if x.abs() > best {
                    best = x.abs();
                    idx = i;
                }
            }
            if col[idx] < 0.0 {
                col.neg_mut();
            }
            vecs.set_column(k, &col);
        }
        (vals, vecs)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.mat
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b))
    }

    pub fn is_psd(&self, tolerance: f64) -> bool {
        self.min_eigenvalue() >= -tolerance
    }

    /// PSD square root with the same clipping convention as the Hermitian
    /// version.
    pub fn sqrt_psd(&self) -> Result<SymmetricMatrix> {
        let (vals, vecs) = self.eig_desc();
        let min = vals[vals.len() - 1];
        if min < -tol::PSD {
            return Err(Error::Domain(format!(
                "matrix is not PSD: min eigenvalue {min:.3e}"
            )));
        }
        Ok(self.rebuild(&vals, &vecs, |x| x.max(0.0).sqrt()))
    }

    /// Spectral inverse; domain error when singular beyond `1e-12` relative.
    pub fn inverse_checked(&self) -> Result<SymmetricMatrix> {
        let (vals, vecs) = self.eig_desc();
        let max = vals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        if max == 0.0 || vals.iter().any(|&v| v.abs() < 1e-12 * max) {
            return Err(Error::Domain("matrix is singular".into()));
        }
        Ok(self.rebuild(&vals, &vecs, |x| 1.0 / x))
    }

    /// View as a complex Hermitian matrix.
    pub fn to_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix {
            mat: self.mat.map(|x| C64::new(x, 0.0)),
        }
    }

    fn rebuild(&self, vals: &DVector<f64>, vecs: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> Self {
        let fd = DMatrix::from_diagonal(&vals.map(&f));
        let m = vecs * fd * vecs.transpose();
        SymmetricMatrix {
            mat: (&m + m.transpose()).scale(0.5),
        }
    }
}

/// The standard symplectic form `Omega = oplus_j [[0, 1], [-1, 0]]` on `N`
/// modes. Satisfies `Omega^2 = -1` and antisymmetry.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    modes: usize,
}

impl SymplecticForm {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidInput("mode count must be positive".into()));
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        2 * self.modes
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |i, j| {
            if i / 2 != j / 2 {
                0.0
            } else if i % 2 == 0 && j % 2 == 1 {
                1.0
            } else if i % 2 == 1 && j % 2 == 0 {
                -1.0
            } else {
                0.0
            }
        })
    }
}

/// Builds `M + i * s * Omega` for a real symmetric `M` (e.g. the uncertainty
/// relation matrix `V + i Omega`).
pub fn add_i_omega(m: &SymmetricMatrix, omega: &DMatrix<f64>, s: f64) -> HermitianMatrix {
    let d = m.dim();
    assert_eq!(omega.nrows(), d, "symplectic form dimension mismatch");
    HermitianMatrix {
        mat: DMatrix::from_fn(d, d, |i, j| C64::new(m.as_matrix()[(i, j)], s * omega[(i, j)])),
    }
}

// Wire formats.

#[derive(Serialize, Deserialize)]
struct HermitianWire {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<HermitianWire> for HermitianMatrix {
    type Error = Error;

    fn try_from(w: HermitianWire) -> Result<Self> {
        if w.entries.len() != w.dim || w.entries.iter().any(|r| r.len() != w.dim) {
            return Err(Error::InvalidInput("matrix entry shape mismatch".into()));
        }
        HermitianMatrix::new(DMatrix::from_fn(w.dim, w.dim, |i, j| {
            C64::new(w.entries[i][j][0], w.entries[i][j][1])
        }))
    }
}

impl From<HermitianMatrix> for HermitianWire {
    fn from(m: HermitianMatrix) -> Self {
        let d = m.dim();
        HermitianWire {
            dim: d,
            entries: (0..d)
                .map(|i| (0..d).map(|j| [m.mat[(i, j)].re, m.mat[(i, j)].im]).collect())
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SymmetricWire {
    dim: usize,
    entries: Vec<Vec<f64>>,
}

impl TryFrom<SymmetricWire> for SymmetricMatrix {
    type Error = Error;

    fn try_from(w: SymmetricWire) -> Result<Self> {
        if w.entries.len() != w.dim || w.entries.iter().any(|r| r.len() != w.dim) {
            return Err(Error::InvalidInput("matrix entry shape mismatch".into()));
        }
        SymmetricMatrix::new(DMatrix::from_fn(w.dim, w.dim, |i, j| w.entries[i][j]))
    }
}

impl From<SymmetricMatrix> for SymmetricWire {
    fn from(m: SymmetricMatrix) -> Self {
        let d = m.dim();
        SymmetricWire {
            dim: d,
            entries: (0..d)
                .map(|i| (0..d).map(|j| m.mat[(i, j)]).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn min_eigenvalue_identity() {
        assert!((HermitianMatrix::identity(2).min_eigenvalue() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_eigenvalue_pauli_y() {
        let m = HermitianMatrix::from_rows(2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
            .unwrap();
        assert!((m.min_eigenvalue() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_eigenvalue_hand_solved() {
        // charpoly of [[2,1],[1,2]]: (2-x)^2 - 1 = 0 -> x in {1, 3}
        let m = HermitianMatrix::from_rows(2, &[c(2., 0.), c(1., 0.), c(1., 0.), c(2., 0.)])
            .unwrap();
        assert!((m.min_eigenvalue() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_finite_rejected() {
        let m = DMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(f64::NAN, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!(matches!(HermitianMatrix::new(m), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = DMatrix::from_fn(2, 2, |i, j| if i < j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(HermitianMatrix::new(m).is_err());
    }

    #[test]
    fn is_psd_cases() {
        assert!(HermitianMatrix::identity(3).is_psd(1e-9));
        // eigenvalues 3 and -1
        let m = HermitianMatrix::from_rows(2, &[c(1., 0.), c(2., 0.), c(2., 0.), c(1., 0.)])
            .unwrap();
        assert!(!m.is_psd(1e-9));
        assert!(HermitianMatrix::zeros(2).is_psd(0.0));
    }

    #[test]
    fn sqrt_psd_diagonal_and_identity() {
        let r = HermitianMatrix::identity(2).sqrt_psd().unwrap();
        assert!((r.as_matrix() - DMatrix::<C64>::identity(2, 2)).norm() < 1e-12);

        let m = HermitianMatrix::from_diagonal(&[4.0, 9.0]);
        let r = m.sqrt_psd().unwrap();
        assert!((r.as_matrix()[(0, 0)].re - 2.0).abs() < 1e-12);
        assert!((r.as_matrix()[(1, 1)].re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let m = HermitianMatrix::from_rows(2, &[c(2., 0.), c(1., 0.), c(1., 0.), c(2., 0.)])
            .unwrap();
        let r = m.sqrt_psd().unwrap();
        let back = r.as_matrix() * r.as_matrix();
        assert!((&back - m.as_matrix()).norm() < 1e-10);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let m = HermitianMatrix::from_rows(2, &[c(1., 0.), c(2., 0.), c(2., 0.), c(1., 0.)])
            .unwrap();
        assert!(matches!(m.sqrt_psd(), Err(Error::Domain(_))));
    }

    #[test]
    fn pinv_psd_rank_deficient() {
        let m = HermitianMatrix::from_diagonal(&[2.0, 0.0]);
        let p = m.pinv_psd(tol::RANK);
        assert!((p.as_matrix()[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!(p.as_matrix()[(1, 1)].norm() < 1e-12);

        let id = HermitianMatrix::identity(4);
        assert!((id.pinv_psd(tol::RANK).as_matrix() - DMatrix::<C64>::identity(4, 4)).norm() < 1e-12);
    }

    #[test]
    fn pinv_residual_full_rank() {
        // fixed full-rank PSD matrix: A A^dag + I
        let a = DMatrix::from_fn(4, 4, |i, j| c((i * 7 + j * 3) as f64 / 10.0, (i as f64 - j as f64) / 5.0));
        let m = HermitianMatrix::new(&a * a.adjoint() + DMatrix::<C64>::identity(4, 4)).unwrap();
        let p = m.pinv_psd(tol::RANK);
        let prod = p.as_matrix() * m.as_matrix();
        assert!((prod - DMatrix::<C64>::identity(4, 4)).norm() < 1e-8);
    }

    #[test]
    fn schur_block_diagonal_returns_a() {
        let m = HermitianMatrix::from_diagonal(&[5.0, 7.0, 2.0, 3.0]);
        let s = m.schur_complement(2).unwrap();
        assert!((s.as_matrix()[(0, 0)].re - 5.0).abs() < 1e-12);
        assert!((s.as_matrix()[(1, 1)].re - 7.0).abs() < 1e-12);
    }

    #[test]
    fn schur_singular_block_rejected() {
        let m = HermitianMatrix::from_diagonal(&[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(m.schur_complement(2), Err(Error::Domain(_))));
    }

    #[test]
    fn symplectic_form_invariants() {
        let om = SymplecticForm::new(3).unwrap();
        let m = om.matrix();
        assert!(((&m * &m) + DMatrix::<f64>::identity(6, 6)).norm() < 1e-14);
        assert!((&m + m.transpose()).norm() < 1e-14);
    }

    #[test]
    fn hermitian_json_round_trip() {
        let m = HermitianMatrix::from_rows(2, &[c(1., 0.), c(0.5, -0.25), c(0.5, 0.25), c(2., 0.)])
            .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"dim\":2"));
        let back: HermitianMatrix = serde_json::from_str(&s).unwrap();
        assert!((back.as_matrix() - m.as_matrix()).norm() < 1e-15);
    }

    #[test]
    fn symmetric_json_plain_numbers() {
        let m = SymmetricMatrix::from_rows(2, &[1.0, 0.5, 0.5, 2.0]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"dim":2,"entries":[[1.0,0.5],[0.5,2.0]]}"#);
        let back: SymmetricMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
