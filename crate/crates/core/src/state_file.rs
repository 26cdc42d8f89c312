//! JSON state files.
//!
//! ```json
//! {"dense": {"dims": [2, 2], "cut": 1, "entries": [[0.5, 0.0], [0.0, 0.0], ...]}}
//! {"classical": {"dims": [2, 2, 2], "cut": 2,
//!                "probs": [[0.5, 0.0], ...],
//!                "basis_a": [[[1.0, 0.0], [0.0, 0.0], ...], ...],
//!                "basis_b": [[[1.0, 0.0], [0.0, 0.0]], ...]}}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; dense entries are row-major.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{self, ClassicalStateSpec, DensityMatrix, SubsystemLayout};
use crate::tensor::ComplexMatrix;

type Pair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum StateFile {
    Dense {
        dims: Vec<usize>,
        cut: usize,
        entries: Vec<Pair>,
    },
    Classical {
        dims: Vec<usize>,
        cut: usize,
        probs: Vec<Vec<f64>>,
        basis_a: Vec<Vec<Pair>>,
        basis_b: Vec<Vec<Pair>>,
    },
}

/// A validated state file.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Dense(DensityMatrix),
    Classical(ClassicalStateSpec),
}

impl LoadedState {
    pub fn density(&self) -> DensityMatrix {
        match self {
            LoadedState::Dense(rho) => rho.clone(),
            LoadedState::Classical(spec) => states::build_classical_state(spec),
        }
    }

    pub fn layout(&self) -> &SubsystemLayout {
        match self {
            LoadedState::Dense(rho) => rho.layout(),
            LoadedState::Classical(spec) => spec.layout(),
        }
    }
}

fn to_complex(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn to_pair(z: &Complex64) -> Pair {
    [z.re, z.im]
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state files serialize")
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        StateFile::Dense {
            dims: rho.layout().factor_dims().to_vec(),
            cut: rho.layout().cut(),
            entries: rho.matrix().as_slice().iter().map(to_pair).collect(),
        }
    }

    pub fn from_spec(spec: &ClassicalStateSpec) -> Self {
        let kets = |basis: &[Vec<Complex64>]| basis.iter().map(|k| k.iter().map(to_pair).collect()).collect();
        StateFile::Classical {
            dims: spec.layout().factor_dims().to_vec(),
            cut: spec.layout().cut(),
            probs: spec.probs().to_vec(),
            basis_a: kets(spec.basis_a()),
            basis_b: kets(spec.basis_b()),
        }
    }

    /// Checks every invariant, reporting the first violation.
    pub fn validate(&self) -> Result<LoadedState> {
        match self {
            StateFile::Dense { dims, cut, entries } => {
                let layout = SubsystemLayout::new(dims.clone(), *cut)?;
                let dim = layout.dim();
                let data = entries.iter().map(to_complex).collect();
                let matrix = ComplexMatrix::from_row_major(dim, data)?;
                Ok(LoadedState::Dense(DensityMatrix::new(matrix, layout)?))
            }
            StateFile::Classical {
                dims,
                cut,
                probs,
                basis_a,
                basis_b,
            } => {
                let layout = SubsystemLayout::new(dims.clone(), *cut)?;
                let kets = |basis: &[Vec<Pair>]| basis.iter().map(|k| k.iter().map(to_complex).collect()).collect();
                let spec = ClassicalStateSpec::new(probs.clone(), kets(basis_a), kets(basis_b), layout)?;
                Ok(LoadedState::Classical(spec))
            }
        }
    }
}

/// Parses and validates a state document.
pub fn load_str(text: &str) -> Result<LoadedState> {
    StateFile::parse(text)?.validate()
}

pub fn load_path(path: &Path) -> Result<LoadedState> {
    load_str(&std::fs::read_to_string(path)?)
}
