//! Correlation measures on bipartite density matrices: mutual information,
//! local dephasing, measurement-induced disturbance (MID) and the symmetric
//! discord, plus the inequality chain that bounds the MID of a reduction of a
//! classically correlated state.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::{self, NelderMeadOptions};
use crate::states::{self, ClassicalStateSpec, DensityMatrix};
use crate::tensor::{self, ComplexMatrix, Tolerances};

/// Slack allowed on every inequality check.
pub const BOUND_SLACK: f64 = 1e-8;
/// Slack on `M_S <= M`, the accuracy of the discord optimizer.
pub const DISCORD_SLACK: f64 = 1e-6;
const MEASUREMENT_TOL: f64 = 1e-10;
const COMMUTATOR_TOL: f64 = 1e-10;

/// Where a measurement pair came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    MarginalEigenprojectors,
    BlochParameterized {
        theta_a: f64,
        phi_a: f64,
        theta_b: f64,
        phi_b: f64,
    },
}

/// A complete bi-local projective measurement `{P_m^a ⊗ P_n^b}`.
#[derive(Debug, Clone)]
pub struct MeasurementPair {
    projectors_a: Vec<ComplexMatrix>,
    projectors_b: Vec<ComplexMatrix>,
    provenance: Provenance,
}

impl MeasurementPair {
    pub fn new(
        projectors_a: Vec<ComplexMatrix>,
        projectors_b: Vec<ComplexMatrix>,
        provenance: Provenance,
    ) -> Result<Self> {
        validate_projectors(&projectors_a, "a")?;
        validate_projectors(&projectors_b, "b")?;
        Ok(Self {
            projectors_a,
            projectors_b,
            provenance,
        })
    }

    /// Rank-1 projectors onto the (canonicalized) eigenvectors of both
    /// marginals. The flag reports whether either marginal is degenerate, in
    /// which case the measurement depends on the canonicalization convention.
    pub fn from_marginals(rho: &DensityMatrix, tol: Tolerances) -> Result<(Self, bool)> {
        let spec_a = tensor::hermitian_eig_with(&rho.marginal_a(), tol)?;
        let spec_b = tensor::hermitian_eig_with(&rho.marginal_b(), tol)?;
        let degenerate = spec_a.is_degenerate() || spec_b.is_degenerate();
        let pair = Self {
            projectors_a: spec_a.projectors(),
            projectors_b: spec_b.projectors(),
            provenance: Provenance::MarginalEigenprojectors,
        };
        Ok((pair, degenerate))
    }

    /// Qubit measurements along `±n(theta, phi)` on each side.
    pub fn bloch(theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> Self {
        let [ua, va] = bloch_kets(theta_a, phi_a);
        let [ub, vb] = bloch_kets(theta_b, phi_b);
        Self {
            projectors_a: vec![ComplexMatrix::projector(&ua), ComplexMatrix::projector(&va)],
            projectors_b: vec![ComplexMatrix::projector(&ub), ComplexMatrix::projector(&vb)],
            provenance: Provenance::BlochParameterized {
                theta_a,
                phi_a,
                theta_b,
                phi_b,
            },
        }
    }

    pub fn projectors_a(&self) -> &[ComplexMatrix] {
        &self.projectors_a
    }

    pub fn projectors_b(&self) -> &[ComplexMatrix] {
        &self.projectors_b
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

fn validate_projectors(set: &[ComplexMatrix], party: &str) -> Result<()> {
    let Some(first) = set.first() else {
        return Err(Error::IncompleteBasis(format!("party {party}: no projectors")));
    };
    let dim = first.dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for (i, p) in set.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        if !(p * p).approx_eq(p, MEASUREMENT_TOL) || !p.is_hermitian(MEASUREMENT_TOL) {
            return Err(Error::IncompleteBasis(format!("party {party}: element {i} is not a projector")));
        }
        for (j, q) in set.iter().enumerate().skip(i + 1) {
            if (p * q).max_abs() > MEASUREMENT_TOL {
                return Err(Error::IncompleteBasis(format!(
                    "party {party}: elements {i} and {j} are not orthogonal"
                )));
            }
        }
        sum = &sum + p;
    }
    if !sum.approx_eq(&ComplexMatrix::identity(dim), MEASUREMENT_TOL) {
        return Err(Error::IncompleteBasis(format!("party {party}: projectors do not sum to identity")));
    }
    Ok(())
}

/// Eigenkets of `n·sigma` with eigenvalues +1 and -1.
fn bloch_kets(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    [
        [Complex64::new(c, 0.0), e * s],
        [-e.conj() * s, Complex64::new(c, 0.0)],
    ]
}

/// `I(a,b) = S(a) + S(b) - S(a,b)`, in bits.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    mutual_information_with(rho, Tolerances::default())
}

pub fn mutual_information_with(rho: &DensityMatrix, tol: Tolerances) -> f64 {
    let sa = states::operator_entropy_with(&rho.marginal_a(), tol);
    let sb = states::operator_entropy_with(&rho.marginal_b(), tol);
    let sab = states::operator_entropy_with(rho.matrix(), tol);
    sa + sb - sab
}

/// Post-measurement state `sum_mn P_mn rho P_mn` of an unread measurement.
pub fn dephase(rho: &DensityMatrix, meas: &MeasurementPair) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let (da, db) = (meas.projectors_a[0].dim(), meas.projectors_b[0].dim());
    if da != layout.dim_a() || db != layout.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: layout.dim(),
            found: da * db,
        });
    }
    let mut out = ComplexMatrix::zeros(layout.dim());
    for pa in &meas.projectors_a {
        for pb in &meas.projectors_b {
            let p = tensor::tensor_product(pa, pb);
            out = &out + &(&(&p * rho.matrix()) * &p);
        }
    }
    Ok(DensityMatrix::from_trusted(out, layout.clone()))
}

/// MID together with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidOutcome {
    pub mid: f64,
    pub mutual_info: f64,
    pub classical_mutual_info: f64,
    pub degenerate: bool,
}

/// `M(a,b) = I(a,b) - I_C(a,b)` where `I_C` is the mutual information of the
/// state dephased in the marginal eigenbases. Returns `(mid, degenerate_flag)`.
pub fn mid(rho: &DensityMatrix) -> (f64, bool) {
    let out = mid_with(rho, Tolerances::default());
    (out.mid, out.degenerate)
}

pub fn mid_with(rho: &DensityMatrix, tol: Tolerances) -> MidOutcome {
    let (meas, degenerate) =
        MeasurementPair::from_marginals(rho, tol).expect("marginals of a density matrix are Hermitian");
    let post = dephase(rho, &meas).expect("marginal projectors match the layout");
    let mutual_info = mutual_information_with(rho, tol);
    let classical_mutual_info = mutual_information_with(&post, tol);
    MidOutcome {
        mid: mutual_info - classical_mutual_info,
        mutual_info,
        classical_mutual_info,
        degenerate,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DiscordOptions {
    /// Grid points per Bloch angle.
    pub grid: usize,
    pub refine: NelderMeadOptions,
    pub tol: Tolerances,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self {
            grid: 24,
            refine: NelderMeadOptions::default(),
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordOutcome {
    pub value: f64,
    /// `(theta_a, phi_a, theta_b, phi_b)` of the best measurement found.
    pub angles: [f64; 4],
}

/// Symmetric discord of a two-qubit state: the minimum of `I - I'` over pairs
/// of local rank-1 projective measurements along Bloch directions.
pub fn symmetric_discord(rho: &DensityMatrix, opts: &DiscordOptions) -> Result<DiscordOutcome> {
    let layout = rho.layout();
    if layout.dim_a() != 2 || layout.dim_b() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "symmetric discord needs single-qubit parties, got {}x{}",
            layout.dim_a(),
            layout.dim_b()
        )));
    }
    if opts.grid < 2 {
        return Err(Error::UnsupportedDimension("discord grid needs at least 2 points per angle".into()));
    }
    let mutual_info = mutual_information_with(rho, opts.tol);
    let objective = DiscordObjective::new(rho.matrix(), mutual_info);
    let f = |x: &[f64]| objective.eval(x[0], x[1], x[2], x[3]);

    let g = opts.grid;
    let thetas: Vec<f64> = (0..g).map(|k| PI * k as f64 / (g - 1) as f64).collect();
    let phis: Vec<f64> = (0..g).map(|k| 2.0 * PI * k as f64 / g as f64).collect();
    let coarse = optimize::grid_minimum(f, &[thetas.clone(), phis.clone(), thetas, phis]);

    let step_theta = 0.5 * PI / (g - 1) as f64;
    let step_phi = PI / g as f64;
    let refined = optimize::nelder_mead(
        f,
        &coarse.point,
        &[step_theta, step_phi, step_theta, step_phi],
        &opts.refine,
    );
    let best = if refined.value < coarse.value { refined } else { coarse };
    Ok(DiscordOutcome {
        value: best.value,
        angles: [best.point[0], best.point[1], best.point[2], best.point[3]],
    })
}

/// `I - I'` for Bloch-parameterized qubit measurements, using outcome
/// probabilities directly: the dephased state is diagonal in the measured
/// product basis, so its mutual information is that of the outcome table.
struct DiscordObjective {
    rho: [[Complex64; 4]; 4],
    mutual_info: f64,
}

impl DiscordObjective {
    fn new(rho: &ComplexMatrix, mutual_info: f64) -> Self {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = rho[(i, j)];
            }
        }
        Self { rho: m, mutual_info }
    }

    fn eval(&self, theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> f64 {
        let ka = bloch_kets(theta_a, phi_a);
        let kb = bloch_kets(theta_b, phi_b);
        let mut table = [[0.0; 2]; 2];
        for (i, u) in ka.iter().enumerate() {
            for (j, w) in kb.iter().enumerate() {
                let ket = [u[0] * w[0], u[0] * w[1], u[1] * w[0], u[1] * w[1]];
                let mut p = 0.0;
                for r in 0..4 {
                    let row: Complex64 = self.rho[r].iter().zip(&ket).map(|(x, k)| x * k).sum();
                    p += (ket[r].conj() * row).re;
                }
                table[i][j] = p.max(0.0);
            }
        }
        let pa = [table[0][0] + table[0][1], table[1][0] + table[1][1]];
        let pb = [table[0][0] + table[1][0], table[0][1] + table[1][1]];
        let joint = [table[0][0], table[0][1], table[1][0], table[1][1]];
        let post_mi = states::entropy_bits(&pa) + states::entropy_bits(&pb) - states::entropy_bits(&joint);
        self.mutual_info - post_mi
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

impl BoundCheck {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::with_slack(name, lhs, rhs, BOUND_SLACK)
    }

    pub fn with_slack(name: impl Into<String>, lhs: f64, rhs: f64, slack: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            satisfied: lhs <= rhs + slack,
        }
    }

    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Evaluates, for the reduction of a classical state onto the kept factors,
///
/// `M(ai,bj) <= I(ai,bj) <= min{I(ai,b), I(a,bj)} <= I(a,b) <= min{H(a),H(b)}`
///
/// and `M(ai,bj) <= min{S(ai), S(bj)}`.
pub fn check_bounds(spec: &ClassicalStateSpec, keep_a: &[usize], keep_b: &[usize]) -> Result<Vec<BoundCheck>> {
    let rho = states::build_classical_state(spec);
    let layout = spec.layout();
    let all_a = layout.party_a();
    let all_b = layout.party_b();

    let reduced = states::reduce(&rho, keep_a, keep_b)?;
    let m = mid(&reduced).0;
    let i_ij = mutual_information(&reduced);
    let i_ib = mutual_information(&states::reduce(&rho, keep_a, &all_b)?);
    let i_aj = mutual_information(&states::reduce(&rho, &all_a, keep_b)?);
    let i_ab = mutual_information(&rho);
    let (pa, pb) = states::marginal_distributions(spec);
    let h_a = states::entropy_bits(&pa);
    let h_b = states::entropy_bits(&pb);
    let s_i = states::operator_entropy(&reduced.marginal_a());
    let s_j = states::operator_entropy(&reduced.marginal_b());

    Ok(vec![
        BoundCheck::new("M(ai,bj) <= I(ai,bj)", m, i_ij),
        BoundCheck::new("I(ai,bj) <= min{I(ai,b),I(a,bj)}", i_ij, i_ib.min(i_aj)),
        BoundCheck::new("min{I(ai,b),I(a,bj)} <= I(a,b)", i_ib.min(i_aj), i_ab),
        BoundCheck::new("I(a,b) <= min{H(a),H(b)}", i_ab, h_a.min(h_b)),
        BoundCheck::new("M(ai,bj) <= min{S(ai),S(bj)}", m, s_i.min(s_j)),
    ])
}

/// True when the reduced projectors of each party pairwise commute, which is
/// sufficient (not necessary) for the reduction to be classical.
pub fn commutation_classicality(spec: &ClassicalStateSpec, keep_a: &[usize], keep_b: &[usize]) -> Result<bool> {
    let ra = spec.reduced_projectors_a(keep_a)?;
    let rb = spec.reduced_projectors_b(keep_b)?;
    Ok(pairwise_commuting(&ra) && pairwise_commuting(&rb))
}

fn pairwise_commuting(ops: &[ComplexMatrix]) -> bool {
    ops.iter().enumerate().all(|(i, x)| {
        ops[i + 1..]
            .iter()
            .all(|y| x.commutator(y).max_abs() < COMMUTATOR_TOL)
    })
}

/// Summary of the correlations of one bipartite state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub mutual_info: f64,
    pub classical_mutual_info: f64,
    pub mid: f64,
    pub symmetric_discord: Option<f64>,
    pub degenerate_marginal_flag: bool,
    pub bound_checks: Vec<BoundCheck>,
}

impl CorrelationReport {
    /// MID-based report with the generic bounds `M <= I` and `M <= min{S(a),S(b)}`.
    /// The discord is filled in only when `discord` is given and both parties are qubits.
    pub fn for_state(rho: &DensityMatrix, discord: Option<&DiscordOptions>, tol: Tolerances) -> Result<Self> {
        let outcome = mid_with(rho, tol);
        let symmetric_discord = match discord {
            Some(opts) => Some(symmetric_discord(rho, opts)?.value),
            None => None,
        };
        let sa = states::operator_entropy_with(&rho.marginal_a(), tol);
        let sb = states::operator_entropy_with(&rho.marginal_b(), tol);
        let mut bound_checks = vec![
            BoundCheck::new("M(a,b) <= I(a,b)", outcome.mid, outcome.mutual_info),
            BoundCheck::new("M(a,b) <= min{S(a),S(b)}", outcome.mid, sa.min(sb)),
        ];
        if let Some(ms) = symmetric_discord {
            if !outcome.degenerate {
                bound_checks.push(BoundCheck::with_slack("M_S(a,b) <= M(a,b)", ms, outcome.mid, DISCORD_SLACK));
            }
        }
        Ok(Self {
            mutual_info: outcome.mutual_info,
            classical_mutual_info: outcome.classical_mutual_info,
            mid: outcome.mid,
            symmetric_discord,
            degenerate_marginal_flag: outcome.degenerate,
            bound_checks,
        })
    }

    pub fn all_satisfied(&self) -> bool {
        self.bound_checks.iter().all(|b| b.satisfied)
    }
}
