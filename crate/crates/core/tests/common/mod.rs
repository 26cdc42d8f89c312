#![allow(dead_code)]

use hidcorr::states::{ClassicalStateSpec, DensityMatrix, SubsystemLayout};
use hidcorr::tensor::{self, ComplexMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    (&g + &g.adjoint()).scale(0.5)
}

/// Haar-distributed unitary via Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for u in &cols {
                let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= ui * overlap;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

/// Columns of a random unitary, as kets.
pub fn random_basis(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<Complex64>> {
    let u = random_unitary(rng, dim);
    (0..dim).map(|j| u.column(j)).collect()
}

/// Random full-rank density matrix `G G^dagger / tr`.
pub fn random_density(rng: &mut ChaCha8Rng, layout: SubsystemLayout) -> DensityMatrix {
    let dim = layout.dim();
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    let m = m.scale(1.0 / tr);
    let m = ComplexMatrix::from_fn(dim, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    DensityMatrix::new(m, layout).unwrap()
}

pub fn random_table(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    let flat: Vec<f64> = (0..rows * cols).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let total: f64 = flat.iter().sum();
    let mut table: Vec<Vec<f64>> = flat.chunks(cols).map(|r| r.iter().map(|x| x / total).collect()).collect();
    // force exact unit sum
    let sum: f64 = table.iter().flatten().sum();
    table[0][0] += 1.0 - sum;
    table
}

/// Classical spec on a product of per-factor random bases for party a.
pub fn random_product_basis_spec(rng: &mut ChaCha8Rng) -> ClassicalStateSpec {
    let a1 = random_basis(rng, 2);
    let a2 = random_basis(rng, 2);
    let basis_a = a1
        .iter()
        .flat_map(|x| a2.iter().map(move |y| tensor::tensor_ket(x, y)))
        .collect();
    let basis_b = random_basis(rng, 2);
    let probs = random_table(rng, 4, 2);
    ClassicalStateSpec::new(probs, basis_a, basis_b, SubsystemLayout::qubits(3, 2).unwrap()).unwrap()
}

/// Classical spec with a Haar-random entangled basis on party a.
pub fn random_entangled_basis_spec(rng: &mut ChaCha8Rng) -> ClassicalStateSpec {
    let basis_a = random_basis(rng, 4);
    let basis_b = random_basis(rng, 2);
    let probs = random_table(rng, 4, 2);
    ClassicalStateSpec::new(probs, basis_a, basis_b, SubsystemLayout::qubits(3, 2).unwrap()).unwrap()
}
