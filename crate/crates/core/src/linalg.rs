//! Dense complex linear algebra for small Hermitian problems.
//!
//! Matrices here are desk-scale (N up to a few dozen), so everything is a
//! plain row-major `Vec<Complex64>` and the eigensolver is cyclic complex
//! Jacobi, which is accurate to machine precision on Hermitian input.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Relative off-diagonal mass at which the Jacobi iteration stops.
pub const EIG_TOL: f64 = 1e-14;

/// Maximum number of cyclic Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

/// Relative Hermitian asymmetry accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Dense row-major complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// K×N matrix whose k-th row holds the channel from every transmit antenna to
/// receiver k.
pub type ChannelMatrix = ComplexMatrix;

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput(format!(
                "non-finite entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self {
            rows,
            cols,
            data: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// Outer product `v vᴴ`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `‖A − Aᴴ‖_F / ‖A‖_F` (zero for the zero matrix).
    pub fn hermitian_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt() / norm
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The channel Gram matrix `A = HᴴH` with entries `α_ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramMatrix(ComplexMatrix);

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// Wraps an arbitrary Hermitian matrix, mirroring the upper triangle.
    pub fn from_hermitian(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(
                "Gram matrix must be square".into(),
            ));
        }
        let n = m.rows;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                out[(i, j)] = m[(i, j)];
                out[(j, i)] = m[(i, j)].conj();
            }
        }
        Ok(Self(out))
    }
}

/// Eigenpairs of a Hermitian matrix, values sorted in descending order.
#[derive(Clone, Debug)]
pub struct EigDecomposition {
    pub values: Vec<f64>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: ComplexMatrix,
}

impl EigDecomposition {
    pub fn vector(&self, i: usize) -> Vec<Complex64> {
        self.vectors.column(i)
    }

    pub fn max(&self) -> (f64, Vec<Complex64>) {
        (self.values[0], self.vector(0))
    }

    pub fn min(&self) -> (f64, Vec<Complex64>) {
        let last = self.values.len() - 1;
        (self.values[last], self.vector(last))
    }

    /// `Σ λ_i v_i v_iᴴ`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        ComplexMatrix::from_fn(n, n, |r, c| {
            (0..n)
                .map(|k| self.vectors[(r, k)] * self.vectors[(c, k)].conj() * self.values[k])
                .sum()
        })
    }
}

/// `HᴴH`, computed on the upper triangle and mirrored so the result is exactly
/// Hermitian with a real diagonal.
pub fn gram(h: &ChannelMatrix) -> GramMatrix {
    let n = h.cols;
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let mut d = 0.0;
        for k in 0..h.rows {
            d += h[(k, i)].norm_sqr();
        }
        a[(i, i)] = Complex64::new(d, 0.0);
        for j in i + 1..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..h.rows {
                s += h[(k, i)].conj() * h[(k, j)];
            }
            a[(i, j)] = s;
            a[(j, i)] = s.conj();
        }
    }
    GramMatrix(a)
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Iterates until the off-diagonal Frobenius mass is at most `tol · ‖A‖_F`.
/// Eigenvalues come back in descending order; each eigenvector is scaled so
/// that its largest-magnitude entry is real and positive.
pub fn hermitian_eig(a: &ComplexMatrix, tol: f64) -> Result<EigDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "eigen tolerance must be positive, got {tol}"
        )));
    }
    let asymmetry = a.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry });
    }

    let n = a.rows;
    let norm = a.frobenius_norm();
    // Work on the exactly Hermitian part.
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(a[(i, i)].re, 0.0)
        } else {
            0.5 * (a[(i, j)] + a[(j, i)].conj())
        }
    });
    let mut v = ComplexMatrix::identity(n);
    let target = tol * norm;

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::EigNoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(y, y)].re.total_cmp(&m[(x, x)].re));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut vec = v.column(k);
        normalize_phase(&mut vec);
        for (r, z) in vec.into_iter().enumerate() {
            vectors[(r, col)] = z;
        }
    }
    Ok(EigDecomposition { values, vectors })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..m.rows {
        for j in 0..m.cols {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation annihilating `m[p][q]`; accumulates into `v`.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = m[(p, q)];
    let mag = b.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let e = b / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = m.rows;

    // Rotation R with R_pp = c, R_pq = s·e, R_qp = −s·ē, R_qq = c.
    // Columns: M ← M R.
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = c * mkp - s * e.conj() * mkq;
        m[(k, q)] = s * e * mkp + c * mkq;
    }
    // Rows: M ← Rᴴ M.
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = c * mpk - s * e * mqk;
        m[(q, k)] = s * e.conj() * mpk + c * mqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(app - t * mag, 0.0);
    m[(q, q)] = Complex64::new(aqq + t * mag, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * e.conj() * vkq;
        v[(k, q)] = s * e * vkp + c * vkq;
    }
}

/// Rotates `v` so that its largest-magnitude entry is real and positive.
pub fn normalize_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in v.iter().enumerate() {
        let mag = z.norm();
        // Prefer the first index among near-ties so the choice is stable.
        if mag > best_mag * (1.0 + 1e-12) {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag > 0.0 {
        let rot = v[best].conj() / best_mag;
        for z in v.iter_mut() {
            *z *= rot;
        }
        v[best] = Complex64::new(v[best].re, 0.0);
    }
}

/// Sum harvested power `tr(H Q Hᴴ) = Σ_k h_k Q h_kᴴ`.
///
/// The imaginary residue of the trace must be below `1e-10` relative to the
/// magnitude of the terms; it is then discarded.
pub fn sum_harvested(q: &ComplexMatrix, h: &ChannelMatrix) -> Result<f64> {
    let n = h.cols;
    if !q.is_square() || q.rows != n {
        return Err(Error::DimensionMismatch(format!(
            "covariance is {}x{} but channel has {} antennas",
            q.rows, q.cols, n
        )));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for k in 0..h.rows {
        let hk = h.row(k);
        for i in 0..n {
            let hi = hk[i].conj();
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                s += q[(j, i)] * hk[j];
            }
            let term = s * hi;
            magnitude += term.norm();
            total += term;
        }
    }
    debug_assert!(
        total.im.abs() <= 1e-10 * magnitude.max(f64::MIN_POSITIVE),
        "harvested power has imaginary residue {:e}",
        total.im
    );
    Ok(total.re)
}

/// `vᴴ A v` for Hermitian `A` (real part).
pub fn quadratic_form(a: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let av = a.mul_vec(v);
    v.iter().zip(&av).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Power iterations attempted before [`dominant_eigenpair`] falls back to
/// the full Jacobi solve.
pub const POWER_MAX_ITERS: usize = 400;

/// Largest eigenpair of a Hermitian positive semidefinite matrix.
///
/// Power iteration from the column with the largest diagonal, stopped once
/// `‖Av − ρv‖ ≤ tol · ‖A‖_F`. A slow spectral gap or a degenerate start falls
/// back to [`hermitian_eig`]. The vector is phase-normalized like the Jacobi
/// output.
pub fn dominant_eigenpair(a: &ComplexMatrix, tol: f64) -> Result<(f64, Vec<Complex64>)> {
    let full = || hermitian_eig(a, EIG_TOL).map(|e| e.max());
    if !a.is_square() || a.rows < 2 || !(tol > 0.0) || a.hermitian_asymmetry() > HERMITIAN_TOL {
        return full();
    }
    let n = a.rows;
    let norm = a.frobenius_norm();
    let start = (0..n)
        .max_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re))
        .expect("n >= 2");
    let mut v = a.column(start);
    let mut len = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if !(len > 0.0) {
        return full();
    }
    for _ in 0..POWER_MAX_ITERS {
        v.iter_mut().for_each(|z| *z /= len);
        let w = a.mul_vec(&v);
        let rho: f64 = v.iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum();
        let resid = w
            .iter()
            .zip(&v)
            .map(|(y, x)| (y - x * rho).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if resid <= tol * norm && rho > 0.0 {
            normalize_phase(&mut v);
            return Ok((rho, v));
        }
        len = w.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if !(len > 0.0) {
            break;
        }
        v = w;
    }
    full()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.sub(b).frobenius_norm() <= tol
    }

    #[test]
    fn gram_single_row() {
        let h = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)]]);
        let want = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(1.0, 0.0)],
        ]);
        assert_eq!(gram(&h).into_matrix(), want);
    }

    #[test]
    fn gram_identity_and_hadamard() {
        assert_eq!(
            gram(&ComplexMatrix::identity(2)).into_matrix(),
            ComplexMatrix::identity(2)
        );
        let h = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0]);
        let g = gram(&h).into_matrix();
        assert_eq!(g, ComplexMatrix::diag(&[2.0, 2.0]));
        // brute-force product
        assert!(close(&g, &h.conj_transpose().matmul(&h).unwrap(), 0.0));
    }

    #[test]
    fn eig_already_diagonal() {
        let e = hermitian_eig(&ComplexMatrix::diag(&[1.0, 3.0]), EIG_TOL).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0]);
        assert_eq!(e.vector(0), vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(e.vector(1), vec![c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn eig_two_by_two_complex() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(2.0, 0.0)],
        ]);
        let e = hermitian_eig(&a, EIG_TOL).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        for i in 0..2 {
            let v = e.vector(i);
            let av = a.mul_vec(&v);
            let err: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - y * e.values[i]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(
            hermitian_eig(&a, EIG_TOL),
            Err(Error::NotHermitian { .. })
        ));
        let b = ComplexMatrix::from_real(1, 2, &[1.0, 2.0]);
        assert!(matches!(
            hermitian_eig(&b, EIG_TOL),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn eig_zero_and_scalar() {
        let e = hermitian_eig(&ComplexMatrix::zeros(3, 3), EIG_TOL).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = hermitian_eig(&ComplexMatrix::diag(&[-2.5]), EIG_TOL).unwrap();
        assert_eq!(e.values, vec![-2.5]);
    }

    #[test]
    fn phase_convention_largest_entry_real_positive() {
        let mut v = vec![c(0.1, 0.2), c(0.0, -0.9), c(0.3, 0.0)];
        normalize_phase(&mut v);
        assert!(v[1].im == 0.0 && v[1].re > 0.0);
        assert!((v[1].re - 0.9).abs() < 1e-15);
    }

    #[test]
    fn harvested_identity() {
        let n = 4;
        let q = ComplexMatrix::identity(n);
        let h = ComplexMatrix::identity(n);
        assert!((sum_harvested(&q, &h).unwrap() - n as f64).abs() < 1e-15);
    }

    #[test]
    fn harvested_diag_unit_modulus() {
        let p = [0.2, 0.5, 1.3];
        let h = ComplexMatrix::from_fn(2, 3, |k, i| Complex64::from_polar(1.0, (k * 3 + i) as f64));
        let got = sum_harvested(&ComplexMatrix::diag(&p), &h).unwrap();
        let want = 2.0 * p.iter().sum::<f64>();
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn harvested_dimension_mismatch() {
        let h = ComplexMatrix::identity(3);
        assert!(matches!(
            sum_harvested(&ComplexMatrix::identity(2), &h),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn constructor_validates() {
        assert!(ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::new(0, 1, vec![]).is_err());
    }
}
