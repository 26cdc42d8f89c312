//! Three-qubit classically correlated families whose (1,3) reduction carries
//! measurement-induced disturbance, with closed-form values for each, and a
//! random sampler over classical states on a fixed non-commuting basis.
//!
//! Qubits are factors 0, 1, 2; party a is qubits 0 and 1, party b is qubit 2.
//! The reduction "(1,3)" keeps factors 0 and 2.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlations;
use crate::error::{Error, Result};
use crate::states::{self, ClassicalStateSpec, DensityMatrix, SubsystemLayout};
use crate::tensor::{self, ComplexMatrix, Tolerances};

/// Kept factors of party a and party b for the (1,3) reduction.
pub const KEEP_A: [usize; 1] = [0];
pub const KEEP_B: [usize; 1] = [2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Alpha,
    Gamma,
    Lambda,
}

/// Closed-form values for a family member.
#[derive(Debug, Clone, PartialEq)]
pub struct Analytic {
    pub mutual_info_ab: f64,
    pub mid_13: f64,
    /// Spectrum of the dephased (1,3) reduction, descending.
    pub post_measurement_spectrum: Vec<f64>,
    /// Spectrum of the (1,3) reduction, descending.
    pub reduced_spectrum: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct FamilyPoint {
    pub family: Family,
    pub parameter: f64,
    pub spec: ClassicalStateSpec,
    pub state: DensityMatrix,
    pub analytic: Option<Analytic>,
    /// Parameter where a marginal of the (1,3) reduction becomes degenerate in a
    /// way that breaks the closed form.
    pub degenerate_parameter: bool,
}

impl FamilyPoint {
    fn new(family: Family, parameter: f64, spec: ClassicalStateSpec, analytic: Analytic, degenerate_parameter: bool) -> Self {
        let state = states::build_classical_state(&spec);
        Self {
            family,
            parameter,
            spec,
            state,
            analytic: Some(analytic),
            degenerate_parameter,
        }
    }

    /// The (1,3) reduction.
    pub fn reduced_13(&self) -> DensityMatrix {
        states::reduce(&self.state, &KEEP_A, &KEEP_B).expect("three-qubit layout")
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn qubit(amp0: f64, amp1: f64) -> Vec<Complex64> {
    vec![c(amp0), c(amp1)]
}

fn three_qubits() -> SubsystemLayout {
    SubsystemLayout::qubits(3, 2).expect("valid layout")
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    states::entropy_bits(&[p, 1.0 - p])
}

fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Kets `|00>, |10>, |+1>, |-1>` of party a.
pub fn canonical_kets_a() -> Vec<Vec<Complex64>> {
    let zero = qubit(1.0, 0.0);
    let one = qubit(0.0, 1.0);
    let plus = qubit(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    let minus = qubit(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
    vec![
        tensor::tensor_ket(&zero, &zero),
        tensor::tensor_ket(&one, &zero),
        tensor::tensor_ket(&plus, &one),
        tensor::tensor_ket(&minus, &one),
    ]
}

/// Projectors onto [`canonical_kets_a`].
pub fn canonical_basis_a() -> Vec<ComplexMatrix> {
    canonical_kets_a().iter().map(|k| ComplexMatrix::projector(k)).collect()
}

fn computational_b() -> Vec<Vec<Complex64>> {
    vec![qubit(1.0, 0.0), qubit(0.0, 1.0)]
}

/// Classical state with the given 4x2 table on the canonical party-a basis and
/// the computational basis of qubit 2.
pub fn canonical_spec(probs: Vec<Vec<f64>>) -> Result<ClassicalStateSpec> {
    ClassicalStateSpec::new(probs, canonical_kets_a(), computational_b(), three_qubits())
}

fn check_range(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value, range })
    }
}

/// `alpha |000><000| + (1 - alpha) |101><101|`.
pub fn alpha_spec(alpha: f64) -> Result<ClassicalStateSpec> {
    check_range("alpha", alpha, (0.0..=1.0).contains(&alpha), "[0, 1]")?;
    let zero = qubit(1.0, 0.0);
    let one = qubit(0.0, 1.0);
    let basis_a = vec![
        tensor::tensor_ket(&zero, &zero),
        tensor::tensor_ket(&one, &zero),
        tensor::tensor_ket(&zero, &one),
        tensor::tensor_ket(&one, &one),
    ];
    let mut probs = vec![vec![0.0; 2]; 4];
    probs[0][0] = alpha;
    probs[1][1] = 1.0 - alpha;
    ClassicalStateSpec::new(probs, basis_a, computational_b(), three_qubits())
}

pub fn family_alpha(alpha: f64) -> Result<FamilyPoint> {
    let spec = alpha_spec(alpha)?;
    let analytic = Analytic {
        mutual_info_ab: binary_entropy(alpha),
        mid_13: 0.0,
        post_measurement_spectrum: sorted_desc(vec![alpha, 1.0 - alpha, 0.0, 0.0]),
        reduced_spectrum: sorted_desc(vec![alpha, 1.0 - alpha, 0.0, 0.0]),
    };
    Ok(FamilyPoint::new(Family::Alpha, alpha, spec, analytic, false))
}

/// `1/2 |000><000| + 1/2 |psi 1 1><psi 1 1|` with `psi = cos g |0> + sin g |1>`.
pub fn gamma_spec(gamma: f64) -> Result<ClassicalStateSpec> {
    check_range("gamma", gamma, (0.0..=PI).contains(&gamma), "[0, pi]")?;
    let (s, co) = gamma.sin_cos();
    let zero = qubit(1.0, 0.0);
    let one = qubit(0.0, 1.0);
    let psi = qubit(co, s);
    let psi_perp = qubit(-s, co);
    let basis_a = vec![
        tensor::tensor_ket(&zero, &zero),
        tensor::tensor_ket(&psi, &one),
        tensor::tensor_ket(&one, &zero),
        tensor::tensor_ket(&psi_perp, &one),
    ];
    let mut probs = vec![vec![0.0; 2]; 4];
    probs[0][0] = 0.5;
    probs[1][1] = 0.5;
    ClassicalStateSpec::new(probs, basis_a, computational_b(), three_qubits())
}

/// Parameters where qubit 1's marginal is pure or maximally mixed.
pub fn gamma_is_degenerate(gamma: f64) -> bool {
    [0.0, PI / 2.0, PI].iter().any(|g| (gamma - g).abs() < 1e-9)
}

pub fn family_gamma(gamma: f64) -> Result<FamilyPoint> {
    let spec = gamma_spec(gamma)?;
    let cg = gamma.cos();
    let (hi, lo) = ((1.0 + cg) / 4.0, (1.0 - cg) / 4.0);
    let analytic = Analytic {
        mutual_info_ab: 1.0,
        mid_13: binary_entropy((1.0 + cg) / 2.0),
        post_measurement_spectrum: sorted_desc(vec![hi, hi, lo, lo]),
        reduced_spectrum: vec![0.5, 0.5, 0.0, 0.0],
    };
    Ok(FamilyPoint::new(Family::Gamma, gamma, spec, analytic, gamma_is_degenerate(gamma)))
}

/// Weights `p11 = 1 - 2 lambda`, `p31 = p42 = lambda` on the canonical basis.
pub fn lambda_spec(lambda: f64) -> Result<ClassicalStateSpec> {
    check_range("lambda", lambda, (0.0..0.5).contains(&lambda), "[0, 0.5)")?;
    lambda_spec_unchecked(lambda)
}

fn lambda_spec_unchecked(lambda: f64) -> Result<ClassicalStateSpec> {
    let mut probs = vec![vec![0.0; 2]; 4];
    probs[0][0] = 1.0 - 2.0 * lambda;
    probs[2][0] = lambda;
    probs[3][1] = lambda;
    canonical_spec(probs)
}

/// `sqrt(1 - 4 lambda + 5 lambda^2)`.
pub fn c_lambda(lambda: f64) -> f64 {
    (1.0 - 4.0 * lambda + 5.0 * lambda * lambda).sqrt()
}

/// Closed-form entropy of the (1,3) reduction.
pub fn lambda_reduced_entropy(lambda: f64) -> f64 {
    let cl = c_lambda(lambda);
    -xlog2x(lambda) - xlog2x(0.5 * (1.0 - lambda + cl)) - xlog2x(0.5 * (1.0 - lambda - cl))
}

/// Closed-form entropy of the dephased (1,3) reduction.
pub fn lambda_post_measurement_entropy(lambda: f64) -> f64 {
    let rest = 2.0 - 3.0 * lambda;
    let first = if rest > 0.0 { 0.5 * rest * rest.log2() } else { 0.0 };
    1.0 - first - 1.5 * xlog2x(lambda)
}

fn lambda_analytic(lambda: f64) -> Analytic {
    let cl = c_lambda(lambda);
    Analytic {
        mutual_info_ab: binary_entropy(lambda),
        mid_13: lambda_post_measurement_entropy(lambda) - lambda_reduced_entropy(lambda),
        post_measurement_spectrum: sorted_desc(vec![1.0 - 1.5 * lambda, lambda / 2.0, lambda / 2.0, lambda / 2.0]),
        reduced_spectrum: sorted_desc(vec![0.0, lambda, 0.5 * (1.0 - lambda + cl), 0.5 * (1.0 - lambda - cl)]),
    }
}

pub fn family_lambda(lambda: f64) -> Result<FamilyPoint> {
    let spec = lambda_spec(lambda)?;
    Ok(FamilyPoint::new(Family::Lambda, lambda, spec, lambda_analytic(lambda), false))
}

/// The lambda family evaluated at its excluded endpoint 1/2, where both
/// (1,3) marginals are maximally mixed and MID(1,3) = I(a,b) = 1.
pub fn lambda_limit_point() -> FamilyPoint {
    let spec = lambda_spec_unchecked(0.5).expect("valid endpoint table");
    FamilyPoint::new(Family::Lambda, 0.5, spec, lambda_analytic(0.5), true)
}

pub fn lambda_limit_spec() -> ClassicalStateSpec {
    lambda_limit_point().spec
}

pub fn lambda_limit_state() -> DensityMatrix {
    lambda_limit_point().state
}

/// Pipeline values `(I(a,b), MID(1,3), degenerate_flag)` for a classical spec
/// on the three-qubit layout.
pub fn measure_13(spec: &ClassicalStateSpec) -> (f64, f64, bool) {
    measure_13_with(spec, Tolerances::default())
}

pub fn measure_13_with(spec: &ClassicalStateSpec, tol: Tolerances) -> (f64, f64, bool) {
    let rho = states::build_classical_state(spec);
    let i_ab = correlations::mutual_information_with(&rho, tol);
    let reduced = states::reduce(&rho, &KEEP_A, &KEEP_B).expect("three-qubit layout");
    let out = correlations::mid_with(&reduced, tol);
    (i_ab, out.mid, out.degenerate)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub index: usize,
    pub i_ab: f64,
    pub mid_13: f64,
    pub degenerate: bool,
}

/// Uniform draw from the probability simplex of the given size, via
/// normalized unit-rate exponentials.
pub fn uniform_simplex<R: rand::Rng + ?Sized>(rng: &mut R, size: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..size).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

/// Per-sample random stream: sample `index` always sees the same draws for a
/// given seed, independent of scheduling.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Random 4x2 table on the canonical basis for sample `index`.
pub fn random_canonical_spec(seed: u64, index: usize) -> ClassicalStateSpec {
    let mut rng = sample_rng(seed, index);
    let flat = uniform_simplex(&mut rng, 8);
    let probs = flat.chunks(2).map(|row| row.to_vec()).collect();
    canonical_spec(renormalize(probs)).expect("simplex draw is a valid table")
}

fn renormalize(mut probs: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let total: f64 = probs.iter().flatten().sum();
    for p in probs.iter_mut().flatten() {
        *p /= total;
    }
    probs
}

/// `n` random classical states on the canonical basis, reduced to (1,3).
/// Output is ordered by sample index.
pub fn sample_random_classical(n: usize, seed: u64) -> Result<Vec<Sample>> {
    sample_random_classical_with(n, seed, Tolerances::default())
}

pub fn sample_random_classical_with(n: usize, seed: u64, tol: Tolerances) -> Result<Vec<Sample>> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    Ok((0..n)
        .into_par_iter()
        .map(|index| {
            let (i_ab, mid_13, degenerate) = measure_13_with(&random_canonical_spec(seed, index), tol);
            Sample {
                index,
                i_ab,
                mid_13,
                degenerate,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeBin {
    pub center: f64,
    pub upper_edge: f64,
    pub max_mid: f64,
}

/// Per-bin maximum MID over samples `(I, MID)`, binning `I` evenly over
/// `[0, max(1, max I)]`. Empty bins are omitted.
pub fn mid_upper_envelope(samples: &[(f64, f64)], bins: usize) -> Result<Vec<EnvelopeBin>> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bins == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "bins",
            value: 0.0,
            range: ">= 1",
        });
    }
    let hi = samples.iter().map(|s| s.0).fold(1.0, f64::max);
    let width = hi / bins as f64;
    let mut best: Vec<Option<f64>> = vec![None; bins];
    for &(i, m) in samples {
        let k = ((i.max(0.0) / width) as usize).min(bins - 1);
        best[k] = Some(best[k].map_or(m, |b: f64| b.max(m)));
    }
    Ok(best
        .into_iter()
        .enumerate()
        .filter_map(|(k, m)| {
            m.map(|max_mid| EnvelopeBin {
                center: (k as f64 + 0.5) * width,
                upper_edge: (k as f64 + 1.0) * width,
                max_mid,
            })
        })
        .collect())
}
