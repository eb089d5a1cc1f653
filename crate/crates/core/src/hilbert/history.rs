use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::Matrix;
use super::space::{heisenberg_projector, Hamiltonian, ProjectiveDecomposition};
use crate::{Error, Result};

/// Largest history set `full_chain_set` builds unless told otherwise.
pub const DEFAULT_SET_CAP: usize = 1_000_000;

const EXHAUSTIVE_TOL: f64 = 1e-10;

/// One projection in a chain: which decomposition (position in the chain),
/// which alternative and when.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub decomposition: usize,
    pub alternative: usize,
    pub time: f64,
}

/// How a class operator was built.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// Events listed earliest first; the matrix has the latest event leftmost.
    Chain(Vec<Event>),
    /// The same events multiplied in the opposite order (earliest leftmost).
    ReversedChain(Vec<Event>),
    Sum(Vec<Provenance>),
    Opaque,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassOperator {
    matrix: Matrix,
    provenance: Provenance,
}

impl ClassOperator {
    pub fn opaque(matrix: Matrix) -> Self {
        ClassOperator { matrix, provenance: Provenance::Opaque }
    }

    pub fn identity(dim: usize) -> Self {
        ClassOperator { matrix: Matrix::identity(dim), provenance: Provenance::Chain(Vec::new()) }
    }

    /// Sum of class operators: the coarse-grained class operator.
    pub fn sum(members: &[&ClassOperator]) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyInput("class operators to sum"))?;
        let dim = first.dim();
        let mut m = Matrix::zeros(dim);
        for c in members {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
            m = &m + &c.matrix;
        }
        let provenance = if members.len() == 1 {
            first.provenance.clone()
        } else {
            Provenance::Sum(members.iter().map(|c| c.provenance.clone()).collect())
        };
        Ok(ClassOperator { matrix: m, provenance })
    }

    /// `self · other`, with `self` the later factor.
    pub fn then_after(&self, other: &ClassOperator) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(ClassOperator::opaque(&self.matrix * &other.matrix))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_chain(&self) -> bool {
        matches!(self.provenance, Provenance::Chain(_) | Provenance::ReversedChain(_))
    }
}

/// One step of a chain history.
#[derive(Clone, Copy, Debug)]
pub struct ChainStep<'a> {
    pub decomposition: &'a ProjectiveDecomposition,
    pub alternative: usize,
    pub time: f64,
}

impl<'a> ChainStep<'a> {
    pub fn new(decomposition: &'a ProjectiveDecomposition, alternative: usize, time: f64) -> Self {
        ChainStep { decomposition, alternative, time }
    }
}

fn chain_factors(steps: &[ChainStep<'_>], h: &Hamiltonian) -> Result<(Vec<Matrix>, Vec<Event>)> {
    let dim = h.dim();
    let mut factors = Vec::with_capacity(steps.len());
    let mut events = Vec::with_capacity(steps.len());
    for (i, step) in steps.iter().enumerate() {
        if i > 0 && !(step.time > steps[i - 1].time) {
            return Err(Error::TimesNotIncreasing { index: i });
        }
        if step.decomposition.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: step.decomposition.dim() });
        }
        let p = step.decomposition.get(step.alternative)?;
        factors.push(heisenberg_projector(p, h, step.time)?.matrix().clone());
        events.push(Event { decomposition: i, alternative: step.alternative, time: step.time });
    }
    Ok((factors, events))
}

/// `P^n(t_n) ··· P^1(t_1)` for steps given earliest first.
pub fn chain_class_operator(steps: &[ChainStep<'_>], h: &Hamiltonian) -> Result<ClassOperator> {
    let (factors, events) = chain_factors(steps, h)?;
    let mut m = Matrix::identity(h.dim());
    for f in &factors {
        m = f * &m;
    }
    Ok(ClassOperator { matrix: m, provenance: Provenance::Chain(events) })
}

/// The same chain multiplied in reverse, `P^1(t_1) ··· P^n(t_n)`.
pub fn reversed_chain_class_operator(steps: &[ChainStep<'_>], h: &Hamiltonian) -> Result<ClassOperator> {
    let (factors, events) = chain_factors(steps, h)?;
    let mut m = Matrix::identity(h.dim());
    for f in &factors {
        m = &m * f;
    }
    Ok(ClassOperator { matrix: m, provenance: Provenance::ReversedChain(events) })
}

/// Exhaustive set of class operators with labels.
#[derive(Clone, Debug, PartialEq)]
pub struct HistorySet {
    members: Vec<ClassOperator>,
    labels: Vec<String>,
}

impl HistorySet {
    /// Checks `Σ C_α = I` within `1e-10`.
    pub fn new(members: Vec<ClassOperator>, labels: Vec<String>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyInput("history set members"))?;
        if labels.len() != members.len() {
            return Err(Error::LabelCount { expected: members.len(), found: labels.len() });
        }
        let dim = first.dim();
        let mut sum = Matrix::zeros(dim);
        for c in &members {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
            sum = &sum + c.matrix();
        }
        let residual = sum.max_abs_diff(&Matrix::identity(dim));
        if residual > EXHAUSTIVE_TOL {
            return Err(Error::NotExhaustive { residual });
        }
        Ok(HistorySet { members, labels })
    }

    /// Members labelled `0, 1, 2, ...`.
    pub fn unlabelled(members: Vec<ClassOperator>) -> Result<Self> {
        let labels = (0..members.len()).map(|i| format!("{i}")).collect();
        Self::new(members, labels)
    }

    pub fn members(&self) -> &[ClassOperator] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn exhaustiveness_residual(&self) -> f64 {
        let mut sum = Matrix::zeros(self.dim());
        for c in &self.members {
            sum = &sum + c.matrix();
        }
        sum.max_abs_diff(&Matrix::identity(self.dim()))
    }

    /// Position of a member by label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Every chain through the given decompositions (earliest first), at most
/// [`DEFAULT_SET_CAP`] members.
pub fn full_chain_set(decompositions: &[(ProjectiveDecomposition, f64)], h: &Hamiltonian) -> Result<HistorySet> {
    full_chain_set_with_cap(decompositions, h, DEFAULT_SET_CAP)
}

/// Members are ordered lexicographically with the latest decomposition the
/// most significant digit; labels read latest first, e.g. `(Φ,A,B)`.
pub fn full_chain_set_with_cap(
    decompositions: &[(ProjectiveDecomposition, f64)],
    h: &Hamiltonian,
    cap: usize,
) -> Result<HistorySet> {
    if decompositions.is_empty() {
        return Err(Error::EmptyInput("decompositions"));
    }
    let dim = h.dim();
    let mut size: usize = 1;
    for (i, (d, t)) in decompositions.iter().enumerate() {
        if d.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: d.dim() });
        }
        if i > 0 && !(*t > decompositions[i - 1].1) {
            return Err(Error::TimesNotIncreasing { index: i });
        }
        size = size.saturating_mul(d.len());
        if size > cap {
            return Err(Error::SetTooLarge { size, cap });
        }
    }

    let heisenberg: Vec<Vec<Matrix>> = decompositions
        .iter()
        .map(|(d, t)| {
            d.projectors()
                .iter()
                .map(|p| heisenberg_projector(p, h, *t).map(|q| q.matrix().clone()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // Build products latest first so that shared prefixes (latest events)
    // are multiplied once per prefix.
    struct Partial {
        matrix: Matrix,
        alternatives: Vec<usize>, // latest first
    }
    let mut partials = vec![Partial { matrix: Matrix::identity(dim), alternatives: Vec::new() }];
    for level in (0..decompositions.len()).rev() {
        let mut next = Vec::with_capacity(partials.len() * heisenberg[level].len());
        for partial in &partials {
            for (alt, p) in heisenberg[level].iter().enumerate() {
                let mut alternatives = partial.alternatives.clone();
                alternatives.push(alt);
                next.push(Partial { matrix: &partial.matrix * p, alternatives });
            }
        }
        partials = next;
    }

    let n = decompositions.len();
    let mut members = Vec::with_capacity(partials.len());
    let mut labels = Vec::with_capacity(partials.len());
    for partial in partials {
        let mut events = Vec::with_capacity(n);
        for level in 0..n {
            events.push(Event {
                decomposition: level,
                alternative: partial.alternatives[n - 1 - level],
                time: decompositions[level].1,
            });
        }
        let names: Vec<&str> = partial
            .alternatives
            .iter()
            .enumerate()
            .map(|(k, &alt)| decompositions[n - 1 - k].0.labels()[alt].as_str())
            .collect();
        labels.push(format!("({})", names.join(",")));
        members.push(ClassOperator { matrix: partial.matrix, provenance: Provenance::Chain(events) });
    }
    HistorySet::new(members, labels)
}
