//! Dense symmetric and PSD linear algebra at desk scale.
//!
//! [`SymMatrix`] is the carrier for every PSD operand. Products of symmetric
//! matrices are generally not symmetric, so they live in the general square
//! [`Matrix`]. Eigendecompositions use cyclic Jacobi; singular values of
//! general matrices use one-sided Jacobi, which keeps small singular values
//! accurate.

use std::fmt;

use crate::error::{Error, Result};
use crate::sum::{compensated_sum, CompensatedSum};

/// Maximum number of Jacobi sweeps before the solver gives up.
pub const MAX_SWEEPS: usize = 100;

/// Relative off-diagonal Frobenius threshold for Jacobi convergence.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;

/// Negative eigenvalues down to `-PSD_TOLERANCE * (1 + ‖A‖)` are treated as zero.
pub const PSD_TOLERANCE: f64 = 1e-10;

pub fn psd_tolerance(norm: f64) -> f64 {
    PSD_TOLERANCE * (1.0 + norm)
}

/// Dense real symmetric `n × n` matrix, stored row-major.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymMatrix")
            .field("dim", &self.dim)
            .field("rows", &self.rows())
            .finish()
    }
}

impl SymMatrix {
    /// Builds from a row-major buffer, replacing it with `(A + Aᵀ) / 2`.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimension must be at least 1".into(),
            ));
        }
        if data.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix entries must be finite".into(),
            ));
        }
        let mut m = SymMatrix { dim, data };
        m.symmetrize();
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(dim, data)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    /// `c · I`.
    pub fn scalar(dim: usize, c: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = avg;
                self.data[j * n + i] = avg;
            }
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn trace(&self) -> f64 {
        compensated_sum((0..self.dim).map(|i| self.get(i, i)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scaled(&self, c: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    /// Entrywise sum. Panics on dimension mismatch.
    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &SymMatrix) {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.clone(),
        }
    }

    /// General product `self · other`. Panics on dimension mismatch.
    pub fn mul(&self, other: &SymMatrix) -> Matrix {
        self.to_matrix().mul_sym(other)
    }

    /// Integer power by repeated squaring; `A^0 = I`.
    pub fn pow(&self, k: u32) -> SymMatrix {
        self.to_matrix().pow(k).into_symmetric()
    }

    /// `tr(A^k)` by repeated squaring.
    pub fn trace_pow(&self, k: u32) -> f64 {
        match k {
            0 => self.dim as f64,
            1 => self.trace(),
            _ => {
                let half = self.to_matrix().pow(k / 2);
                if k.is_multiple_of(2) {
                    half.trace_of_product(&half)
                } else {
                    half.mul_sym(self).trace_of_product(&half)
                }
            }
        }
    }

    /// Largest singular value, which for symmetric matrices is the largest `|λ|`.
    pub fn operator_norm(&self) -> Result<f64> {
        Ok(eigh(self)?.spectral_radius())
    }
}

/// Dense general square matrix, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = self.data.chunks(self.dim).collect();
        f.debug_struct("Matrix")
            .field("dim", &self.dim)
            .field("rows", &rows)
            .finish()
    }
}

impl Matrix {
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::Dimension {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Matrix { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Matrix { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Matrix { dim: n, data }
    }

    pub fn trace(&self) -> f64 {
        compensated_sum((0..self.dim).map(|i| self.get(i, i)))
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    fn mul_slices(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                let brow = &b[k * n..(k + 1) * n];
                for (o, &bkj) in row.iter_mut().zip(brow) {
                    *o += aik * bkj;
                }
            }
        }
        out
    }

    /// Product `self · other`. Panics on dimension mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in mul");
        Matrix {
            dim: self.dim,
            data: Self::mul_slices(self.dim, &self.data, &other.data),
        }
    }

    pub fn mul_sym(&self, other: &SymMatrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch in mul");
        Matrix {
            dim: self.dim,
            data: Self::mul_slices(self.dim, &self.data, &other.data),
        }
    }

    pub fn pow(&self, mut k: u32) -> Matrix {
        let mut result = Matrix::identity(self.dim);
        let mut base = self.clone();
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first {
                    base.clone()
                } else {
                    result.mul(&base)
                };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in trace");
        let n = self.dim;
        let mut acc = CompensatedSum::new();
        for i in 0..n {
            for j in 0..n {
                acc.add(self.data[i * n + j] * other.data[j * n + i]);
            }
        }
        acc.value()
    }

    /// Returns `(M + Mᵀ) / 2`.
    pub fn into_symmetric(self) -> SymMatrix {
        let mut s = SymMatrix {
            dim: self.dim,
            data: self.data,
        };
        s.symmetrize();
        s
    }

    /// `self · diag(d) · selfᵀ`.
    pub fn conjugate_diag(&self, d: &[f64]) -> SymMatrix {
        let n = self.dim;
        assert_eq!(d.len(), n);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = CompensatedSum::new();
                for (k, &dk) in d.iter().enumerate() {
                    acc.add(self.data[i * n + k] * dk * self.data[j * n + k]);
                }
                let v = acc.value();
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix { dim: n, data }
    }

    /// Right-multiplies by the Givens rotation acting on columns `i`, `j`.
    pub fn rotate_columns(&mut self, i: usize, j: usize, c: f64, s: f64) {
        let n = self.dim;
        for r in 0..n {
            let a = self.data[r * n + i];
            let b = self.data[r * n + j];
            self.data[r * n + i] = c * a - s * b;
            self.data[r * n + j] = s * a + c * b;
        }
    }

    /// Singular values in nonincreasing order, via one-sided Jacobi.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        let n = self.dim;
        // column-major working copy
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j)).collect())
            .collect();
        let mut converged = n == 1;
        let mut sweeps = 0;
        while !converged && sweeps < MAX_SWEEPS {
            sweeps += 1;
            converged = true;
            for i in 0..n {
                for j in (i + 1)..n {
                    let (alpha, beta, gamma) = cols[i]
                        .iter()
                        .zip(&cols[j])
                        .fold((0.0, 0.0, 0.0), |(a, b, g), (&x, &y)| {
                            (a + x * x, b + y * y, g + x * y)
                        });
                    if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                        continue;
                    }
                    converged = false;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    let (left, right) = cols.split_at_mut(j);
                    for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                        let (a, b) = (*x, *y);
                        *x = c * a - s * b;
                        *y = s * a + c * b;
                    }
                }
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: f64::NAN,
                seed: None,
            });
        }
        let mut sv: Vec<f64> = cols
            .iter()
            .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        Ok(sv)
    }

    pub fn schatten_norm(&self, q: f64) -> Result<f64> {
        validate_schatten_index(q)?;
        Ok(lq_norm(&self.singular_values()?, q))
    }

    pub fn operator_norm(&self) -> Result<f64> {
        Ok(self.singular_values()?.first().copied().unwrap_or(0.0))
    }
}

/// Spectrum and orthonormal eigenvectors of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in nondecreasing order.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.eigenvectors.conjugate_diag(&self.eigenvalues)
    }

    /// `Q f(Λ) Qᵀ`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> SymMatrix {
        let d: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        self.eigenvectors.conjugate_diag(&d)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    pub fn spectral_radius(&self) -> f64 {
        self.min_eigenvalue().abs().max(self.max_eigenvalue().abs())
    }

    /// Errors unless every eigenvalue is at least `-psd_tolerance(‖A‖)`.
    pub fn require_psd(&self) -> Result<()> {
        let tol = psd_tolerance(self.spectral_radius());
        let min = self.min_eigenvalue();
        if min < -tol {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
                tolerance: tol,
            });
        }
        Ok(())
    }

    /// `A^t` with negative eigenvalues clamped to zero. Fails if `A` is not PSD.
    pub fn psd_power(&self, t: f64) -> Result<SymMatrix> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidExponent(format!(
                "power {t} must be finite and nonnegative"
            )));
        }
        self.require_psd()?;
        Ok(self.map(|x| x.max(0.0).powf(t)))
    }
}

/// Cyclic Jacobi eigendecomposition.
pub fn eigh(a: &SymMatrix) -> Result<EigenDecomposition> {
    let n = a.dim;
    let mut m = a.data.clone();
    let mut v = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_TOLERANCE * a.frobenius_norm();
    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut off = off_norm(&m);
    let mut sweeps = 0;
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
                seed: None,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m[r * n + p];
                    let arq = m[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    m[r * n + p] = new_rp;
                    m[p * n + r] = new_rp;
                    m[r * n + q] = new_rq;
                    m[q * n + r] = new_rq;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                v.rotate_columns(p, q, c, s);
            }
        }
        off = off_norm(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let eigenvalues = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + new_col] = v.get(r, old_col);
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: Matrix {
            dim: n,
            data: vectors,
        },
    })
}

/// `A^t` for PSD `A`, clamping slightly negative eigenvalues to zero.
pub fn psd_power(a: &SymMatrix, t: f64) -> Result<SymMatrix> {
    eigh(a)?.psd_power(t)
}

fn validate_schatten_index(q: f64) -> Result<()> {
    if q.is_nan() || q < 1.0 {
        return Err(Error::InvalidExponent(format!(
            "Schatten index {q} must be >= 1"
        )));
    }
    Ok(())
}

/// `(Σ |x_i|^q)^{1/q}`, scaled by the maximum to avoid overflow; `q = ∞` gives the max.
fn lq_norm(values: &[f64], q: f64) -> f64 {
    let max = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 || q.is_infinite() {
        return max;
    }
    let s = compensated_sum(values.iter().map(|x| (x.abs() / max).powf(q)));
    max * s.powf(1.0 / q)
}

/// Schatten `q`-norm of a symmetric matrix; `q = f64::INFINITY` is the operator norm.
pub fn schatten_norm(a: &SymMatrix, q: f64) -> Result<f64> {
    validate_schatten_index(q)?;
    Ok(lq_norm(&eigh(a)?.eigenvalues, q))
}

/// `tr(F_1 F_2 ⋯ F_k)`.
pub fn trace_product(factors: &[SymMatrix]) -> Result<f64> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidParameter("trace_product needs at least one factor".into()))?;
    let n = first.dim;
    if let Some(bad) = factors.iter().find(|f| f.dim != n) {
        return Err(Error::Dimension {
            expected: n,
            found: bad.dim,
        });
    }
    if factors.len() == 1 {
        return Ok(first.trace());
    }
    let (last, init) = factors.split_last().expect("at least two factors");
    let prefix = init[1..]
        .iter()
        .fold(first.to_matrix(), |acc, f| acc.mul_sym(f));
    Ok(prefix.trace_of_product(&last.to_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn diagonal_eigh_is_axis_aligned() {
        let e = eigh(&SymMatrix::diag(&[2.0, 1.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0]);
        assert_eq!(e.eigenvectors.get(1, 0).abs(), 1.0);
        assert_eq!(e.eigenvectors.get(0, 1).abs(), 1.0);
    }

    #[test]
    fn identity_spectrum() {
        let e = eigh(&SymMatrix::identity(3)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn gaussian_seed_7_reconstructs() {
        let mut r = rng::stream(7, &[]);
        let a = rng::gaussian_symmetric(&mut r, 5);
        let e = eigh(&a).unwrap();
        let norm = e.spectral_radius();
        assert!(e.reconstruct().max_abs_diff(&a) <= 1e-10 * (1.0 + norm));
        let qtq = e.eigenvectors.transpose().mul(&e.eigenvectors);
        assert!(qtq.max_abs_diff(&Matrix::identity(5)) <= 1e-10);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn square_root_of_diagonal() {
        let r = psd_power(&SymMatrix::diag(&[4.0, 9.0]), 0.5).unwrap();
        assert!(r.max_abs_diff(&SymMatrix::diag(&[2.0, 3.0])) < 1e-14);
    }

    #[test]
    fn identity_powers() {
        for t in [0.0, 0.3, 1.0, 2.5] {
            let r = psd_power(&SymMatrix::identity(4), t).unwrap();
            assert!(r.max_abs_diff(&SymMatrix::identity(4)) < 1e-14);
        }
    }

    #[test]
    fn psd_power_rejects_indefinite() {
        let err = psd_power(&SymMatrix::diag(&[1.0, -0.5]), 0.5).unwrap_err();
        assert!(matches!(err, Error::NotPsd { .. }));
    }

    #[test]
    fn psd_power_clamps_roundoff_negatives() {
        let r = psd_power(&SymMatrix::diag(&[1.0, -1e-12]), 0.5).unwrap();
        assert_eq!(r.get(1, 1), 0.0);
    }

    #[test]
    fn negative_power_is_rejected() {
        assert!(matches!(
            psd_power(&SymMatrix::identity(2), -1.0),
            Err(Error::InvalidExponent(_))
        ));
    }

    #[test]
    fn schatten_examples() {
        assert!((schatten_norm(&SymMatrix::diag(&[3.0, 4.0]), 2.0).unwrap() - 5.0).abs() < 1e-14);
        assert!((schatten_norm(&SymMatrix::identity(6), 1.0).unwrap() - 6.0).abs() < 1e-14);
        assert_eq!(
            schatten_norm(&SymMatrix::diag(&[-7.0, 2.0]), f64::INFINITY).unwrap(),
            7.0
        );
        assert!(matches!(
            schatten_norm(&SymMatrix::identity(2), 0.5),
            Err(Error::InvalidExponent(_))
        ));
        assert!(schatten_norm(&SymMatrix::identity(2), f64::NAN).is_err());
    }

    #[test]
    fn trace_product_examples() {
        assert_eq!(trace_product(&[SymMatrix::identity(2)]).unwrap(), 2.0);
        let v =
            trace_product(&[SymMatrix::diag(&[1.0, 2.0]), SymMatrix::diag(&[3.0, 4.0])]).unwrap();
        assert_eq!(v, 11.0);
        assert!(matches!(
            trace_product(&[SymMatrix::identity(2), SymMatrix::identity(3)]),
            Err(Error::Dimension { .. })
        ));
        assert!(trace_product(&[]).is_err());
    }

    #[test]
    fn construction_symmetrizes() {
        let m = SymMatrix::from_row_major(2, vec![1.0, 2.0, 4.0, 3.0]).unwrap();
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
        assert!(SymMatrix::from_row_major(0, vec![]).is_err());
        assert!(SymMatrix::from_row_major(2, vec![1.0; 3]).is_err());
    }

    #[test]
    fn singular_values_of_nonsymmetric_product() {
        // [[0, 2], [0, 0]] has singular values 2, 0
        let m = Matrix::from_row_major(2, vec![0.0, 2.0, 0.0, 0.0]).unwrap();
        let sv = m.singular_values().unwrap();
        assert!((sv[0] - 2.0).abs() < 1e-15 && sv[1].abs() < 1e-15);
    }

    #[test]
    fn trace_pow_matches_pow() {
        let mut r = rng::stream(1, &[]);
        let a = rng::random_psd(&mut r, 4, 2.0);
        for k in 0..7 {
            let direct = a.pow(k).trace();
            let fast = a.trace_pow(k);
            assert!(
                (direct - fast).abs() <= 1e-12 * (1.0 + direct.abs()),
                "k={k}"
            );
        }
    }
}
