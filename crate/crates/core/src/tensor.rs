//! Dense complex linear algebra for operators on small tensor-product spaces.
//!
//! Index convention: factor 0 is the most significant digit of a basis index,
//! so for three qubits `|q0 q1 q2>` is basis vector `4*q0 + 2*q1 + q2`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for entrywise matrix comparisons.
pub const DEFAULT_EQ_TOL: f64 = 1e-10;
/// Default gap below which neighbouring eigenvalues are grouped as degenerate.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;
/// Default convergence threshold on the off-diagonal Frobenius mass.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;
/// Hermiticity tolerance accepted by the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Projections shorter than this are discarded during degenerate-basis canonicalization.
const CANONICAL_DISCARD: f64 = 1e-8;
const MAX_SWEEPS: usize = 100;

/// Numerical tolerances shared by the spectral routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Degeneracy grouping gap.
    pub gap: f64,
    /// Jacobi convergence threshold on off-diagonal mass.
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gap: DEFAULT_GAP_TOL,
            eig: DEFAULT_EIG_TOL,
        }
    }
}

/// Dense square complex matrix, stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from a row-major entry vector of length `dim * dim`.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// The rank-1 operator `|v><v|`.
    pub fn projector(ket: &[Complex64]) -> Self {
        Self::outer(ket, ket)
    }

    /// The operator `|u><v|`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of unequal lengths");
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise magnitude of `m - m^dagger`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Entrywise comparison with an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Conjugation `u m u^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product of unequal dimensions");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sum of unequal dimensions");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "difference of unequal dimensions");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Kronecker product; the left factor owns the most significant index.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    ComplexMatrix::from_fn(da * db, |i, j| a[(i / db, j / db)] * b[(i % db, j % db)])
}

/// Kronecker product of a sequence of operators, left to right.
pub fn tensor_product_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1), |acc, f| tensor_product(&acc, f))
}

/// Kronecker product of kets.
pub fn tensor_ket(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
    /// Consecutive index ranges whose eigenvalues differ by less than the gap tolerance.
    pub degeneracy_groups: Vec<Vec<usize>>,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// Rank-1 projectors onto each eigenvector, in eigenvalue order.
    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        (0..self.eigenvalues.len())
            .map(|k| ComplexMatrix::projector(&self.eigenvector(k)))
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy_groups.iter().any(|g| g.len() > 1)
    }

    /// `sum_k lambda_k |v_k><v_k|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * lambda;
                }
            }
        }
        out
    }
}

/// Eigendecomposition with the default convergence threshold.
pub fn hermitian_eig(m: &ComplexMatrix, gap_tol: f64) -> Result<Spectrum> {
    hermitian_eig_with(
        m,
        Tolerances {
            gap: gap_tol,
            ..Tolerances::default()
        },
    )
}

/// Cyclic complex Jacobi diagonalization followed by sorting and
/// canonicalization of degenerate eigenspaces against the computational basis.
pub fn hermitian_eig_with(m: &ComplexMatrix, tol: Tolerances) -> Result<Spectrum> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim;
    // symmetrize so the iteration starts exactly Hermitian
    let mut a = ComplexMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= tol.eig * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]).then(x.cmp(&y)));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| diag[k]).collect();
    let mut vectors: Vec<Vec<Complex64>> = order.iter().map(|&k| v.column(k)).collect();

    let mut degeneracy_groups: Vec<Vec<usize>> = Vec::new();
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        match degeneracy_groups.last_mut() {
            Some(group) if eigenvalues[*group.last().unwrap()] - lambda < tol.gap => group.push(k),
            _ => degeneracy_groups.push(vec![k]),
        }
    }

    for group in &degeneracy_groups {
        if group.len() == 1 {
            fix_phase(&mut vectors[group[0]]);
        } else {
            let span: Vec<Vec<Complex64>> = group.iter().map(|&k| vectors[k].clone()).collect();
            for (&k, canon) in group.iter().zip(canonical_basis(&span)) {
                vectors[k] = canon;
            }
        }
    }

    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| vectors[j][i]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        degeneracy_groups,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Zeroes `a[p][q]` with the unitary `J = [[c, -s], [e^{-i phi} s, e^{-i phi} c]]`
/// acting on the (p, q) plane, where `a[p][q] = |b| e^{i phi}`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let b_abs = b.norm();
    if b_abs < 1e-300 {
        return;
    }
    let phase = b / b_abs;
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let theta = 0.5 * (2.0 * b_abs).atan2(app - aqq);
    let (s, c) = theta.sin_cos();
    let e = phase.conj();
    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(-s, 0.0);
    let j_qp = e * s;
    let j_qq = e * c;

    let n = a.dim;
    // A <- A J
    for i in 0..n {
        let (aip, aiq) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = aip * j_pp + aiq * j_qp;
        a[(i, q)] = aip * j_pq + aiq * j_qq;
        let (vip, viq) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = vip * j_pp + viq * j_qp;
        v[(i, q)] = vip * j_pq + viq * j_qq;
    }
    // A <- J^dagger A
    for j in 0..n {
        let (apj, aqj) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = j_pp.conj() * apj + j_qp.conj() * aqj;
        a[(q, j)] = j_pq.conj() * apj + j_qq.conj() * aqj;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// Rotates a single eigenvector so its largest component is real and positive.
fn fix_phase(v: &mut [Complex64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(pivot) = v.iter().find(|z| z.norm() >= max - 1e-9) {
        let phase = pivot.conj() / pivot.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Projects computational basis vectors, in index order, onto the span of
/// `span` and Gram-Schmidt orthonormalizes them until the span is exhausted.
fn canonical_basis(span: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = span[0].len();
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(span.len());
    for k in 0..n {
        if out.len() == span.len() {
            break;
        }
        // P e_k = sum_v v * conj(v_k)
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        for v in span {
            let c = v[k].conj();
            for (wi, vi) in w.iter_mut().zip(v) {
                *wi += vi * c;
            }
        }
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for u in &out {
                let overlap: Complex64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= ui * overlap;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > CANONICAL_DISCARD {
            out.push(w.into_iter().map(|z| z / norm).collect());
        }
    }
    debug_assert_eq!(out.len(), span.len());
    out
}

/// Trace over every factor not listed in `keep`; kept factors retain their order.
pub fn partial_trace(rho: &ComplexMatrix, factor_dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = factor_dims.iter().product();
    if total != rho.dim {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: rho.dim,
        });
    }
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if let Some(&bad) = kept.iter().find(|&&k| k >= factor_dims.len()) {
        return Err(Error::InvalidLayout(format!(
            "factor index {bad} out of range for {} factors",
            factor_dims.len()
        )));
    }
    let traced: Vec<usize> = (0..factor_dims.len()).filter(|i| !kept.contains(i)).collect();

    let kept_dims: Vec<usize> = kept.iter().map(|&i| factor_dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| factor_dims[i]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let env_dim: usize = traced_dims.iter().product();

    // strides of each factor in the full index
    let mut strides = vec![1usize; factor_dims.len()];
    for i in (0..factor_dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * factor_dims[i + 1];
    }
    let offset = |positions: &[usize], dims: &[usize], mut idx: usize| -> usize {
        let mut off = 0;
        for (pos, &d) in positions.iter().zip(dims).rev() {
            off += (idx % d) * strides[*pos];
            idx /= d;
        }
        off
    };
    let kept_off: Vec<usize> = (0..out_dim).map(|i| offset(&kept, &kept_dims, i)).collect();
    let env_off: Vec<usize> = (0..env_dim).map(|t| offset(&traced, &traced_dims, t)).collect();

    Ok(ComplexMatrix::from_fn(out_dim, |i, j| {
        env_off
            .iter()
            .map(|&e| rho[(kept_off[i] + e, kept_off[j] + e)])
            .sum()
    }))
}
