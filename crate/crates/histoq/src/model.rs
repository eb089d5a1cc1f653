//! The JSON model file read by `histoq classify`.
//!
//! ```json
//! {
//!   "name": "optional description",
//!   "state": [[re, im], ...],
//!   "normalize": false,
//!   "hamiltonian": [[[re, im], ...], ...],
//!   "decompositions": [
//!     { "time": 1.0,
//!       "projectors": [ { "label": "A", "vectors": [[[re, im], ...]] },
//!                       { "label": "B", "matrix": [[[re, im], ...], ...] } ] }
//!   ]
//! }
//! ```
//!
//! `hamiltonian` defaults to zero. A decomposition listing a single
//! projector is completed with its complement, labelled with a bar.
//! Decompositions are listed earliest first with strictly increasing
//! times; the history set is every chain through them.

use std::path::Path;

use histoq_core::hilbert::{
    full_chain_set, make_projector, Hamiltonian, HistorySet, Matrix, ProjectiveDecomposition, Projector, StateVector,
};
use histoq_core::C64;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// `[re, im]`
#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
pub struct Complex(pub f64, pub f64);

impl From<Complex> for C64 {
    fn from(c: Complex) -> Self {
        C64::new(c.0, c.1)
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default)]
    pub name: Option<String>,
    pub state: Vec<Complex>,
    #[serde(default)]
    pub normalize: bool,
    #[serde(default)]
    pub hamiltonian: Option<Vec<Vec<Complex>>>,
    pub decompositions: Vec<DecompositionSpec>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DecompositionSpec {
    pub time: f64,
    pub projectors: Vec<ProjectorSpec>,
}

/// Exactly one of `vectors` (spanning set, re-orthonormalized) or `matrix`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProjectorSpec {
    pub label: String,
    #[serde(default)]
    pub vectors: Option<Vec<Vec<Complex>>>,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<Complex>>>,
}

/// A parsed and validated model.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: Option<String>,
    pub psi: StateVector,
    pub hamiltonian: Hamiltonian,
    pub decompositions: Vec<(ProjectiveDecomposition, f64)>,
    pub set: HistorySet,
}

fn to_c64(v: &[Complex]) -> Vec<C64> {
    v.iter().map(|&c| c.into()).collect()
}

fn matrix(rows: &[Vec<Complex>]) -> CliResult<Matrix> {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| to_c64(r)).collect();
    Ok(Matrix::from_rows(&rows)?)
}

impl ProjectorSpec {
    fn build(&self) -> CliResult<Projector> {
        match (&self.vectors, &self.matrix) {
            (Some(vs), None) => {
                let vs: Vec<Vec<C64>> = vs.iter().map(|v| to_c64(v)).collect();
                Ok(make_projector(&vs)?)
            }
            (None, Some(m)) => Ok(Projector::from_matrix(matrix(m)?)?),
            _ => Err(CliError::Config("give exactly one of \"vectors\" or \"matrix\"".into())),
        }
    }
}

impl DecompositionSpec {
    fn build(&self, at: &str) -> CliResult<ProjectiveDecomposition> {
        let projectors = self
            .projectors
            .iter()
            .enumerate()
            .map(|(i, p)| p.build().map_err(|e| e.context(&format!("{at}.projectors[{i}]"))))
            .collect::<CliResult<Vec<_>>>()?;
        let d = match projectors.len() {
            0 => return Err(CliError::Config(format!("{at}.projectors: empty"))),
            1 => ProjectiveDecomposition::binary(projectors.into_iter().next().expect("one"), &self.projectors[0].label),
            _ => ProjectiveDecomposition::new(projectors, self.projectors.iter().map(|p| p.label.clone()).collect()),
        };
        d.map_err(|e| CliError::from(e).context(at))
    }
}

impl ModelFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::Config(format!("model file field '{path}': {inner}"))
        })
    }

    pub fn build(&self) -> CliResult<Model> {
        let amplitudes = to_c64(&self.state);
        let psi = if self.normalize { StateVector::normalized(amplitudes) } else { StateVector::new(amplitudes) }
            .map_err(|e| CliError::from(e).context("state"))?;
        let hamiltonian = match &self.hamiltonian {
            Some(rows) => {
                Hamiltonian::new(matrix(rows).map_err(|e| e.context("hamiltonian"))?)
                    .map_err(|e| CliError::from(e).context("hamiltonian"))?
            }
            None => Hamiltonian::zero(psi.dim()),
        };
        if hamiltonian.dim() != psi.dim() {
            return Err(CliError::Config(format!(
                "hamiltonian: dimension {} does not match state dimension {}",
                hamiltonian.dim(),
                psi.dim()
            )));
        }
        if self.decompositions.is_empty() {
            return Err(CliError::Config("decompositions: at least one is required".into()));
        }
        let decompositions = self
            .decompositions
            .iter()
            .enumerate()
            .map(|(i, d)| d.build(&format!("decompositions[{i}]")).map(|p| (p, d.time)))
            .collect::<CliResult<Vec<_>>>()?;
        let set = full_chain_set(&decompositions, &hamiltonian).map_err(|e| CliError::from(e).context("decompositions"))?;
        Ok(Model { name: self.name.clone(), psi, hamiltonian, decompositions, set })
    }
}

pub fn load_model(path: &Path) -> CliResult<Model> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read model file {}: {e}", path.display())))?;
    ModelFile::parse(&text)?.build()
}
