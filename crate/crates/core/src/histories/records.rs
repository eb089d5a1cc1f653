use alloc::string::String;
use alloc::vec::Vec;

use crate::hilbert::linalg::{inner, norm, Matrix, C64};
use crate::hilbert::{candidate_probability, ClassOperator, HistorySet, ProjectiveDecomposition, Projector, StateVector};
use crate::{Error, Result};

/// Branches shorter than this get no record of their own.
pub const BRANCH_EXISTENCE_THRESHOLD: f64 = 1e-12;

/// A projective decomposition aligned index-for-index with a history set.
#[derive(Clone, Debug, PartialEq)]
pub struct RecordSet {
    decomposition: ProjectiveDecomposition,
}

impl RecordSet {
    pub fn new(decomposition: ProjectiveDecomposition) -> Self {
        RecordSet { decomposition }
    }

    /// Records `|Ψ̂_α><Ψ̂_α|` built from the normalized branches of `set`.
    ///
    /// Branches are orthonormalized in order (so a non-orthogonal set still
    /// yields a valid decomposition, which then fails [`verify_records`]).
    /// Branches that vanish, or are dependent on earlier ones, get a zero
    /// row. The projector onto the complement of all branches is merged
    /// into the first zero row, or into the last row if there is none, so
    /// the records are exhaustive with the same cardinality as the set.
    pub fn from_branches(psi: &StateVector, set: &HistorySet) -> Result<Self> {
        let dim = set.dim();
        let mut basis: Vec<Vec<C64>> = Vec::new();
        let mut rows: Vec<Matrix> = Vec::with_capacity(set.len());
        let mut first_empty = None;
        for (i, c) in set.members().iter().enumerate() {
            let mut w = c.matrix().apply(psi.amplitudes());
            let original = norm(&w);
            if original > BRANCH_EXISTENCE_THRESHOLD {
                for _pass in 0..2 {
                    for q in &basis {
                        let overlap = inner(q, &w);
                        for (wi, qi) in w.iter_mut().zip(q) {
                            *wi -= overlap * qi;
                        }
                    }
                }
                let residual = norm(&w);
                if residual > 1e-10 * original {
                    let q: Vec<C64> = w.iter().map(|x| x / residual).collect();
                    rows.push(Matrix::outer(&q, &q));
                    basis.push(q);
                    continue;
                }
            }
            first_empty.get_or_insert(i);
            rows.push(Matrix::zeros(dim));
        }
        let mut span = Matrix::zeros(dim);
        for q in &basis {
            span = &span + &Matrix::outer(q, q);
        }
        let complement = &Matrix::identity(dim) - &span;
        let target = first_empty.unwrap_or(rows.len() - 1);
        rows[target] = &rows[target] + &complement;

        let projectors = rows
            .into_iter()
            .map(|m| Projector::from_matrix(m.hermitian_part()))
            .collect::<Result<Vec<_>>>()?;
        let labels: Vec<String> = set.labels().to_vec();
        Ok(RecordSet { decomposition: ProjectiveDecomposition::new(projectors, labels)? })
    }

    pub fn decomposition(&self) -> &ProjectiveDecomposition {
        &self.decomposition
    }

    pub fn len(&self) -> usize {
        self.decomposition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decomposition.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecordReport {
    /// `max ||R_β C_α|Ψ> - δ_βα C_α|Ψ>||`
    pub max_residual: f64,
    pub witness: (usize, usize),
    pub pass: bool,
    /// When the records pass: `max |p(α) - Re <Ψ|R_α|Ψ>|`.
    pub probability_residual: Option<f64>,
    /// When the records pass: every `p(α)` lies in `[-tol, 1 + tol]`.
    pub probabilities_in_range: Option<bool>,
}

/// Checks that `R` records `S` exactly and, if it does, that the history
/// probabilities equal the record probabilities.
pub fn verify_records(psi: &StateVector, set: &HistorySet, records: &RecordSet, tol: f64) -> Result<RecordReport> {
    if records.len() != set.len() {
        return Err(Error::DimensionMismatch { expected: set.len(), found: records.len() });
    }
    let branches: Vec<Vec<C64>> = set.members().iter().map(|c| c.matrix().apply(psi.amplitudes())).collect();
    let mut max_residual = 0.0f64;
    let mut witness = (0, 0);
    for (beta, r) in records.decomposition.projectors().iter().enumerate() {
        for (alpha, b) in branches.iter().enumerate() {
            let mut image = r.matrix().apply(b);
            if alpha == beta {
                for (x, y) in image.iter_mut().zip(b) {
                    *x -= y;
                }
            }
            let res = norm(&image);
            if res > max_residual {
                max_residual = res;
                witness = (beta, alpha);
            }
        }
    }
    let pass = max_residual < tol;
    let (probability_residual, probabilities_in_range) = if pass {
        let mut worst = 0.0f64;
        let mut in_range = true;
        for (c, r) in set.members().iter().zip(records.decomposition.projectors()) {
            let p = candidate_probability(psi, c)?;
            let pr = candidate_probability(psi, &ClassOperator::opaque(r.matrix().clone()))?;
            worst = worst.max((p - pr).abs());
            in_range &= (-tol..=1.0 + tol).contains(&p);
        }
        (Some(worst), Some(in_range))
    } else {
        (None, None)
    };
    Ok(RecordReport { max_residual, witness, pass, probability_residual, probabilities_in_range })
}
