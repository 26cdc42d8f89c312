//! Density matrices on bipartite tensor-product spaces, classically correlated
//! state construction, reductions and entropies.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{self, ComplexMatrix, Tolerances, DEFAULT_GAP_TOL};

const HERMITIAN_TOL: f64 = 1e-9;
const PSD_TOL: f64 = 1e-9;
const TRACE_TOL: f64 = 1e-10;
const PROB_TOL: f64 = 1e-12;
const BASIS_TOL: f64 = 1e-10;
/// Eigenvalues below this contribute nothing to an entropy.
const ENTROPY_CUTOFF: f64 = 1e-12;

/// Ordered tensor-factor dimensions plus the cut separating party a from party b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemLayout {
    factor_dims: Vec<usize>,
    cut: usize,
}

impl SubsystemLayout {
    pub fn new(factor_dims: Vec<usize>, cut: usize) -> Result<Self> {
        if factor_dims.contains(&0) {
            return Err(Error::InvalidLayout("factor dimensions must be positive".into()));
        }
        if cut < 1 || cut >= factor_dims.len() {
            return Err(Error::InvalidLayout(format!(
                "cut {cut} must satisfy 1 <= cut < {}",
                factor_dims.len()
            )));
        }
        Ok(Self { factor_dims, cut })
    }

    /// `n` qubits with party a owning the first `cut` of them.
    pub fn qubits(n: usize, cut: usize) -> Result<Self> {
        Self::new(vec![2; n], cut)
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn num_factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    pub fn dim_a(&self) -> usize {
        self.factor_dims[..self.cut].iter().product()
    }

    pub fn dim_b(&self) -> usize {
        self.factor_dims[self.cut..].iter().product()
    }

    pub fn party_a(&self) -> Vec<usize> {
        (0..self.cut).collect()
    }

    pub fn party_b(&self) -> Vec<usize> {
        (self.cut..self.factor_dims.len()).collect()
    }

    /// Factor dimensions of party a alone.
    pub fn dims_a(&self) -> &[usize] {
        &self.factor_dims[..self.cut]
    }

    pub fn dims_b(&self) -> &[usize] {
        &self.factor_dims[self.cut..]
    }
}

/// A validated density matrix together with its bipartite layout.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    layout: SubsystemLayout,
}

impl DensityMatrix {
    /// Validates Hermiticity, positivity and unit trace.
    pub fn new(matrix: ComplexMatrix, layout: SubsystemLayout) -> Result<Self> {
        if matrix.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                expected: layout.dim(),
                found: matrix.dim(),
            });
        }
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {dev:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {} + {}i differs from 1",
                tr.re, tr.im
            )));
        }
        let spectrum = tensor::hermitian_eig(&matrix, DEFAULT_GAP_TOL)?;
        let min = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { matrix, layout })
    }

    /// For states produced by trace- and positivity-preserving maps of valid states.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, layout: SubsystemLayout) -> Self {
        debug_assert_eq!(matrix.dim(), layout.dim());
        Self { matrix, layout }
    }

    pub fn pure(ket: &[Complex64], layout: SubsystemLayout) -> Result<Self> {
        let norm = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidDensityMatrix("zero ket".into()));
        }
        let normalized: Vec<Complex64> = ket.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&normalized), layout)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Reduced operator on party a.
    pub fn marginal_a(&self) -> ComplexMatrix {
        tensor::partial_trace(&self.matrix, self.layout.factor_dims(), &self.layout.party_a())
            .expect("layout validated at construction")
    }

    /// Reduced operator on party b.
    pub fn marginal_b(&self) -> ComplexMatrix {
        tensor::partial_trace(&self.matrix, self.layout.factor_dims(), &self.layout.party_b())
            .expect("layout validated at construction")
    }

    /// Local conjugation `(u_a ⊗ u_b) rho (u_a ⊗ u_b)^dagger`.
    pub fn local_conjugate(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<Self> {
        if u_a.dim() != self.layout.dim_a() || u_b.dim() != self.layout.dim_b() {
            return Err(Error::DimensionMismatch {
                expected: self.layout.dim(),
                found: u_a.dim() * u_b.dim(),
            });
        }
        let u = tensor::tensor_product(u_a, u_b);
        Ok(Self::from_trusted(self.matrix.conjugate_by(&u), self.layout.clone()))
    }
}

/// Probability table `p_mn` over two local orthonormal ket bases.
#[derive(Debug, Clone)]
pub struct ClassicalStateSpec {
    probs: Vec<Vec<f64>>,
    basis_a: Vec<Vec<Complex64>>,
    basis_b: Vec<Vec<Complex64>>,
    layout: SubsystemLayout,
}

impl ClassicalStateSpec {
    /// `probs[m][n]` weights `|a_m><a_m| ⊗ |b_n><b_n|`.
    pub fn new(
        probs: Vec<Vec<f64>>,
        basis_a: Vec<Vec<Complex64>>,
        basis_b: Vec<Vec<Complex64>>,
        layout: SubsystemLayout,
    ) -> Result<Self> {
        validate_basis(&basis_a, layout.dim_a(), "a")?;
        validate_basis(&basis_b, layout.dim_b(), "b")?;
        if probs.len() != basis_a.len() || probs.iter().any(|row| row.len() != basis_b.len()) {
            return Err(Error::InvalidProbabilityTable(format!(
                "table must be {}x{}",
                basis_a.len(),
                basis_b.len()
            )));
        }
        let mut total = 0.0;
        for (m, row) in probs.iter().enumerate() {
            for (n, &p) in row.iter().enumerate() {
                if !p.is_finite() || p < 0.0 {
                    return Err(Error::InvalidProbabilityTable(format!("p[{m}][{n}] = {p}")));
                }
                total += p;
            }
        }
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidProbabilityTable(format!("entries sum to {total}")));
        }
        Ok(Self {
            probs,
            basis_a,
            basis_b,
            layout,
        })
    }

    /// Computational bases on both parties.
    pub fn computational(probs: Vec<Vec<f64>>, layout: SubsystemLayout) -> Result<Self> {
        let basis_a = computational_basis(layout.dim_a());
        let basis_b = computational_basis(layout.dim_b());
        Self::new(probs, basis_a, basis_b, layout)
    }

    pub fn probs(&self) -> &[Vec<f64>] {
        &self.probs
    }

    pub fn basis_a(&self) -> &[Vec<Complex64>] {
        &self.basis_a
    }

    pub fn basis_b(&self) -> &[Vec<Complex64>] {
        &self.basis_b
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    /// Reduced projectors `tr_{a \ keep} |a_m><a_m|`, one per basis element of party a.
    pub fn reduced_projectors_a(&self, keep_a: &[usize]) -> Result<Vec<ComplexMatrix>> {
        check_keep(keep_a, 0, self.layout.cut())?;
        self.basis_a
            .iter()
            .map(|k| tensor::partial_trace(&ComplexMatrix::projector(k), self.layout.dims_a(), keep_a))
            .collect()
    }

    /// Reduced projectors of party b; `keep_b` uses global factor indices.
    pub fn reduced_projectors_b(&self, keep_b: &[usize]) -> Result<Vec<ComplexMatrix>> {
        let cut = self.layout.cut();
        check_keep(keep_b, cut, self.layout.num_factors())?;
        let local: Vec<usize> = keep_b.iter().map(|k| k - cut).collect();
        self.basis_b
            .iter()
            .map(|k| tensor::partial_trace(&ComplexMatrix::projector(k), self.layout.dims_b(), &local))
            .collect()
    }
}

fn computational_basis(dim: usize) -> Vec<Vec<Complex64>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

fn validate_basis(basis: &[Vec<Complex64>], dim: usize, party: &str) -> Result<()> {
    if basis.len() != dim {
        return Err(Error::IncompleteBasis(format!(
            "party {party} needs {dim} kets, got {}",
            basis.len()
        )));
    }
    for (i, ket) in basis.iter().enumerate() {
        if ket.len() != dim {
            return Err(Error::IncompleteBasis(format!(
                "party {party} ket {i} has length {}, expected {dim}",
                ket.len()
            )));
        }
    }
    for i in 0..dim {
        for j in i..dim {
            let overlap: Complex64 = basis[i].iter().zip(&basis[j]).map(|(x, y)| x.conj() * y).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            if (overlap - expected).norm() > BASIS_TOL {
                return Err(Error::IncompleteBasis(format!(
                    "party {party} kets {i},{j} have overlap {overlap}, expected {expected}"
                )));
            }
        }
    }
    Ok(())
}

fn check_keep(keep: &[usize], lo: usize, hi: usize) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    if let Some(&k) = keep.iter().find(|&&k| k < lo || k >= hi) {
        return Err(Error::InvalidLayout(format!(
            "factor {k} is not in the party spanning factors {lo}..{hi}"
        )));
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() || sorted != keep {
        return Err(Error::InvalidLayout(format!(
            "keep set {keep:?} must be strictly increasing"
        )));
    }
    Ok(())
}

/// `rho = sum_mn p_mn |a_m><a_m| ⊗ |b_n><b_n|`.
pub fn build_classical_state(spec: &ClassicalStateSpec) -> DensityMatrix {
    let dim = spec.layout.dim();
    let mut rho = ComplexMatrix::zeros(dim);
    for (m, row) in spec.probs.iter().enumerate() {
        for (n, &p) in row.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let ket = tensor::tensor_ket(&spec.basis_a[m], &spec.basis_b[n]);
            for i in 0..dim {
                let left = ket[i] * p;
                for j in 0..dim {
                    rho[(i, j)] += left * ket[j].conj();
                }
            }
        }
    }
    DensityMatrix::from_trusted(rho, spec.layout.clone())
}

/// Joint state of the kept factors of each party. Indices are global factor
/// indices; `keep_a` must lie in party a and `keep_b` in party b.
pub fn reduce(rho: &DensityMatrix, keep_a: &[usize], keep_b: &[usize]) -> Result<DensityMatrix> {
    let layout = rho.layout();
    check_keep(keep_a, 0, layout.cut())?;
    check_keep(keep_b, layout.cut(), layout.num_factors())?;
    let keep: Vec<usize> = keep_a.iter().chain(keep_b).copied().collect();
    let matrix = tensor::partial_trace(rho.matrix(), layout.factor_dims(), &keep)?;
    let dims = keep.iter().map(|&k| layout.factor_dims()[k]).collect();
    let new_layout = SubsystemLayout::new(dims, keep_a.len())?;
    Ok(DensityMatrix::from_trusted(matrix, new_layout))
}

/// The reduction built term by term as `sum_mn p_mn rho_m^{a_i} ⊗ rho_n^{b_j}`.
pub fn reduce_classical(spec: &ClassicalStateSpec, keep_a: &[usize], keep_b: &[usize]) -> Result<DensityMatrix> {
    let ra = spec.reduced_projectors_a(keep_a)?;
    let rb = spec.reduced_projectors_b(keep_b)?;
    let dim = ra[0].dim() * rb[0].dim();
    let mut out = ComplexMatrix::zeros(dim);
    for (m, row) in spec.probs.iter().enumerate() {
        for (n, &p) in row.iter().enumerate() {
            if p != 0.0 {
                out = &out + &tensor::tensor_product(&ra[m], &rb[n]).scale(p);
            }
        }
    }
    let dims = keep_a
        .iter()
        .chain(keep_b)
        .map(|&k| spec.layout.factor_dims()[k])
        .collect();
    Ok(DensityMatrix::from_trusted(out, SubsystemLayout::new(dims, keep_a.len())?))
}

/// `-sum p log2 p` over the entries above the entropy cutoff.
pub(crate) fn entropy_bits<'a>(values: impl IntoIterator<Item = &'a f64>) -> f64 {
    let s: f64 = values
        .into_iter()
        .filter(|&&p| p > ENTROPY_CUTOFF)
        .map(|&p| -p * p.log2())
        .sum();
    s.max(0.0)
}

/// Von Neumann entropy of a Hermitian operator, in bits.
pub fn operator_entropy(m: &ComplexMatrix) -> f64 {
    operator_entropy_with(m, Tolerances::default())
}

pub fn operator_entropy_with(m: &ComplexMatrix, tol: Tolerances) -> f64 {
    let spectrum = tensor::hermitian_eig_with(m, tol).expect("density operators are Hermitian");
    entropy_bits(&spectrum.eigenvalues)
}

/// `S(rho) = -tr(rho log2 rho)`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    operator_entropy(rho.matrix())
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if p.iter().any(|&x| !x.is_finite() || x < 0.0) {
        return Err(Error::InvalidDistribution(format!("negative or non-finite entry in {p:?}")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > PROB_TOL {
        return Err(Error::InvalidDistribution(format!("entries sum to {total}")));
    }
    Ok(entropy_bits(p))
}

/// Row and column sums of the probability table.
pub fn marginal_distributions(spec: &ClassicalStateSpec) -> (Vec<f64>, Vec<f64>) {
    let pa = spec.probs.iter().map(|row| row.iter().sum()).collect();
    let pb = (0..spec.basis_b.len())
        .map(|n| spec.probs.iter().map(|row| row[n]).sum())
        .collect();
    (pa, pb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_term_gives_pure_state() {
        let layout = SubsystemLayout::qubits(2, 1).unwrap();
        let spec = ClassicalStateSpec::computational(vec![vec![1.0, 0.0], vec![0.0, 0.0]], layout).unwrap();
        let rho = build_classical_state(&spec);
        assert_eq!(rho.matrix(), &ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn alpha_family_expands() {
        let alpha = 0.3;
        let point = families::family_alpha(alpha).unwrap();
        let mut diag = [0.0; 8];
        diag[0b000] = alpha;
        diag[0b101] = 1.0 - alpha;
        assert!(point.state.matrix().approx_eq(&ComplexMatrix::from_real_diagonal(&diag), 1e-15));
    }

    #[test]
    fn lambda_family_matches_hand_expansion() {
        let lambda = 0.25;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let zero = [c(1.0), c(0.0)];
        let one = [c(0.0), c(1.0)];
        let plus = [c(h), c(h)];
        let minus = [c(h), c(-h)];
        let ket = |x: &[Complex64], y: &[Complex64], z: &[Complex64]| tensor::tensor_ket(&tensor::tensor_ket(x, y), z);
        let expected = &(&ComplexMatrix::projector(&ket(&zero, &zero, &zero)).scale(1.0 - 2.0 * lambda)
            + &ComplexMatrix::projector(&ket(&plus, &one, &zero)).scale(lambda))
            + &ComplexMatrix::projector(&ket(&minus, &one, &one)).scale(lambda);
        let rho = build_classical_state(&families::lambda_spec(lambda).unwrap());
        assert!(rho.matrix().approx_eq(&expected, 1e-15));
        // entry <+10|... contributes 1/8 on the (010, 110) coherence
        assert!((rho.matrix()[(0b010, 0b110)].re - lambda / 2.0).abs() < 1e-15);
    }

    #[test]
    fn classical_state_commutes_with_its_projectors() {
        let spec = families::lambda_spec(0.2).unwrap();
        let rho = build_classical_state(&spec);
        for a in spec.basis_a() {
            for b in spec.basis_b() {
                let p = ComplexMatrix::projector(&tensor::tensor_ket(a, b));
                assert!(rho.matrix().commutator(&p).max_abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let layout = SubsystemLayout::qubits(2, 1).unwrap();
        assert!(matches!(
            ClassicalStateSpec::computational(vec![vec![0.6, 0.0], vec![0.0, 0.6]], layout.clone()),
            Err(Error::InvalidProbabilityTable(_))
        ));
        assert!(matches!(
            ClassicalStateSpec::computational(vec![vec![1.5, 0.0], vec![0.0, -0.5]], layout.clone()),
            Err(Error::InvalidProbabilityTable(_))
        ));
        let skewed = vec![vec![c(1.0), c(0.0)], vec![c(0.6), c(0.8)]];
        let comp = vec![vec![c(1.0), c(0.0)], vec![c(0.0), c(1.0)]];
        assert!(matches!(
            ClassicalStateSpec::new(vec![vec![0.5, 0.0], vec![0.0, 0.5]], skewed, comp, layout),
            Err(Error::IncompleteBasis(_))
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let layout = SubsystemLayout::qubits(2, 1).unwrap();
        let unnormalized = ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.5, 0.0]);
        assert!(DensityMatrix::new(unnormalized, layout.clone()).is_err());
        let negative = ComplexMatrix::from_real_diagonal(&[1.1, -0.1, 0.0, 0.0]);
        assert!(DensityMatrix::new(negative, layout.clone()).is_err());
        let wrong_dim = ComplexMatrix::identity(2).scale(0.5);
        assert!(matches!(
            DensityMatrix::new(wrong_dim, layout),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(SubsystemLayout::new(vec![2, 2], 0).is_err());
        assert!(SubsystemLayout::new(vec![2, 2], 2).is_err());
    }

    #[test]
    fn gamma_reduction_by_hand() {
        let gamma = 0.7;
        let rho = families::family_gamma(gamma).unwrap().state;
        let r13 = reduce(&rho, &[0], &[2]).unwrap();
        let psi = [c(gamma.cos()), c(gamma.sin())];
        let one = [c(0.0), c(1.0)];
        let expected = &ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.0])
            + &ComplexMatrix::projector(&tensor::tensor_ket(&psi, &one)).scale(0.5);
        assert!(r13.matrix().approx_eq(&expected, 1e-15));
        assert_eq!(r13.layout().factor_dims(), &[2, 2]);
        assert_eq!(r13.layout().cut(), 1);
    }

    #[test]
    fn lambda_reduction_spectrum() {
        let rho = build_classical_state(&families::lambda_spec(0.25).unwrap());
        let r13 = reduce(&rho, &[0], &[2]).unwrap();
        let eig = tensor::hermitian_eig(r13.matrix(), DEFAULT_GAP_TOL).unwrap().eigenvalues;
        let c_lambda = (5.0f64 / 16.0).sqrt();
        let expected = [0.5 * (0.75 + c_lambda), 0.25, 0.5 * (0.75 - c_lambda), 0.0];
        for (got, want) in eig.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{eig:?}");
        }
        // numpy oracle: {0.6545085, 0.25, 0.0954915, 0}
        assert!((eig[0] - 0.654_508_5).abs() < 1e-7);
        assert!((eig[2] - 0.095_491_5).abs() < 1e-7);

        let rho1 = tensor::partial_trace(r13.matrix(), &[2, 2], &[0]).unwrap();
        let m1 = tensor::hermitian_eig(&rho1, DEFAULT_GAP_TOL).unwrap().eigenvalues;
        assert!((m1[0] - 0.75).abs() < 1e-14 && (m1[1] - 0.25).abs() < 1e-14);
    }

    #[test]
    fn reduce_matches_termwise_reduction() {
        let spec = families::lambda_spec(0.17).unwrap();
        let direct = reduce(&build_classical_state(&spec), &[0], &[2]).unwrap();
        let termwise = reduce_classical(&spec, &[0], &[2]).unwrap();
        assert!(direct.matrix().approx_eq(termwise.matrix(), 1e-14));
    }

    #[test]
    fn reduce_rejects_bad_keep_sets() {
        let rho = families::family_alpha(0.5).unwrap().state;
        assert!(matches!(reduce(&rho, &[], &[2]), Err(Error::EmptyKeepSet)));
        assert!(reduce(&rho, &[2], &[2]).is_err());
        assert!(reduce(&rho, &[0], &[1]).is_err());
    }

    #[test]
    fn entropies() {
        let layout = SubsystemLayout::new(vec![2], 0);
        assert!(layout.is_err());
        let l2 = SubsystemLayout::qubits(2, 1).unwrap();
        let pure = DensityMatrix::pure(&[c(1.0), c(1.0), c(0.0), c(0.0)], l2.clone()).unwrap();
        assert!(von_neumann_entropy(&pure).abs() < 1e-12);
        assert!((operator_entropy(&ComplexMatrix::identity(2).scale(0.5)) - 1.0).abs() < 1e-15);
        let s = operator_entropy(&ComplexMatrix::from_real_diagonal(&[0.625, 0.125, 0.125, 0.125]));
        assert!((s - 1.548_795).abs() < 1e-6);

        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(shannon_entropy(&[0.5, 0.5]).unwrap(), 1.0);
        assert!((shannon_entropy(&[0.25, 0.75]).unwrap() - 0.811_278).abs() < 1e-6);
        assert!(matches!(shannon_entropy(&[0.5, 0.6]), Err(Error::InvalidDistribution(_))));
        assert!(matches!(shannon_entropy(&[1.5, -0.5]), Err(Error::InvalidDistribution(_))));
    }

    #[test]
    fn marginals() {
        let uniform = ClassicalStateSpec::computational(vec![vec![0.125; 2]; 4], SubsystemLayout::qubits(3, 2).unwrap()).unwrap();
        assert_eq!(marginal_distributions(&uniform), (vec![0.25; 4], vec![0.5, 0.5]));

        let (pa, pb) = marginal_distributions(&families::lambda_spec(0.25).unwrap());
        assert_eq!(pa, vec![0.5, 0.0, 0.25, 0.25]);
        assert_eq!(pb, vec![0.75, 0.25]);

        let diag = ClassicalStateSpec::computational(
            vec![vec![0.3, 0.0], vec![0.0, 0.7]],
            SubsystemLayout::qubits(2, 1).unwrap(),
        )
        .unwrap();
        let (pa, pb) = marginal_distributions(&diag);
        assert_eq!(pa, pb);
    }
}
