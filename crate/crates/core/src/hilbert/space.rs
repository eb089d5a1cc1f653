use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::linalg::{inner, norm, orthonormalize, HermitianEigen, Matrix, C64};
use crate::{Error, Result};

const STATE_NORM_TOL: f64 = 1e-12;
const OPERATOR_TOL: f64 = 1e-12;

/// A unit vector in `C^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Accepts amplitudes that are already normalized to within `1e-12`.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyInput("state amplitudes"));
        }
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(StateVector { amplitudes })
    }

    /// Rescales to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyInput("state amplitudes"));
        }
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        for a in &mut amplitudes {
            *a /= n;
        }
        Ok(StateVector { amplitudes })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// `|Ψ><Ψ|`
    pub fn projector(&self) -> Projector {
        Projector { matrix: Matrix::outer(&self.amplitudes, &self.amplitudes), rank: 1 }
    }

    /// `Ψ ⊗ other`
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                out.push(a * b);
            }
        }
        StateVector { amplitudes: out }
    }
}

/// Orthogonal projector: Hermitian and idempotent.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector {
    matrix: Matrix,
    rank: usize,
}

impl Projector {
    /// Validates a matrix against the projector invariants.
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        let herm = matrix.hermiticity_residual();
        if herm > OPERATOR_TOL {
            return Err(Error::NotHermitian { residual: herm });
        }
        let idem = (&matrix * &matrix).max_abs_diff(&matrix);
        if idem > OPERATOR_TOL {
            return Err(Error::NotProjector { residual: idem });
        }
        let rank = matrix.trace().re.round().max(0.0) as usize;
        Ok(Projector { matrix, rank })
    }

    pub fn identity(dim: usize) -> Self {
        Projector { matrix: Matrix::identity(dim), rank: dim }
    }

    pub fn zero(dim: usize) -> Self {
        Projector { matrix: Matrix::zeros(dim), rank: 0 }
    }

    /// Projector onto a subset of the computational basis.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        let mut m = Matrix::zeros(dim);
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, len: dim });
            }
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        Projector::from_matrix(m)
    }

    /// `I - P`
    pub fn complement(&self) -> Projector {
        let n = self.dim();
        Projector { matrix: &Matrix::identity(n) - &self.matrix, rank: n - self.rank }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

/// Orthogonal projector onto the span of `basis_vectors`.
pub fn make_projector(basis_vectors: &[Vec<C64>]) -> Result<Projector> {
    let basis = orthonormalize(basis_vectors)?;
    let dim = basis[0].len();
    let mut m = Matrix::zeros(dim);
    for q in &basis {
        m = &m + &Matrix::outer(q, q);
    }
    Ok(Projector { matrix: m.hermitian_part(), rank: basis.len() })
}

/// Exhaustive, exclusive set of projectors at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveDecomposition {
    projectors: Vec<Projector>,
    labels: Vec<String>,
}

impl ProjectiveDecomposition {
    pub fn new(projectors: Vec<Projector>, labels: Vec<String>) -> Result<Self> {
        let first = projectors.first().ok_or(Error::EmptyInput("decomposition projectors"))?;
        let dim = first.dim();
        if labels.len() != projectors.len() {
            return Err(Error::LabelCount { expected: projectors.len(), found: labels.len() });
        }
        let mut sum = Matrix::zeros(dim);
        for p in &projectors {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            sum = &sum + p.matrix();
        }
        let residual = sum.max_abs_diff(&Matrix::identity(dim));
        if residual > OPERATOR_TOL {
            return Err(Error::NotExhaustive { residual });
        }
        for i in 0..projectors.len() {
            for j in i + 1..projectors.len() {
                let r = (projectors[i].matrix() * projectors[j].matrix()).max_abs();
                if r > OPERATOR_TOL {
                    return Err(Error::NotExclusive { first: i, second: j, residual: r });
                }
            }
        }
        Ok(ProjectiveDecomposition { projectors, labels })
    }

    /// `{I}` labelled "I".
    pub fn trivial(dim: usize) -> Self {
        ProjectiveDecomposition { projectors: alloc::vec![Projector::identity(dim)], labels: alloc::vec![String::from("I")] }
    }

    /// `{P, I - P}`; the complement label defaults to `label` with a bar.
    pub fn binary(p: Projector, label: &str) -> Result<Self> {
        let bar = format!("{label}\u{304}");
        let c = p.complement();
        Self::new(alloc::vec![p, c], alloc::vec![String::from(label), bar])
    }

    /// One rank-1 projector per vector of an orthonormal basis, labelled by index.
    pub fn from_basis(vectors: &[Vec<C64>]) -> Result<Self> {
        let basis = orthonormalize(vectors)?;
        if basis.len() != basis[0].len() {
            return Err(Error::NotExhaustive { residual: (basis[0].len() - basis.len()) as f64 });
        }
        let projectors = basis.iter().map(|q| Projector { matrix: Matrix::outer(q, q), rank: 1 }).collect();
        let labels = (0..basis.len()).map(|i| format!("{i}")).collect();
        Self::new(projectors, labels)
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn projectors(&self) -> &[Projector] {
        &self.projectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, index: usize) -> Result<&Projector> {
        self.projectors.get(index).ok_or(Error::IndexOutOfRange { index, len: self.projectors.len() })
    }
}

/// Time-independent Hermitian Hamiltonian with its eigenbasis cached.
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    matrix: Matrix,
    eigen: HermitianEigen,
}

impl Hamiltonian {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let residual = matrix.hermiticity_residual();
        if residual > OPERATOR_TOL * matrix.max_abs().max(1.0) {
            return Err(Error::NotHermitian { residual });
        }
        let eigen = matrix.eigh();
        Ok(Hamiltonian { matrix, eigen })
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(Matrix::zeros(dim)).expect("zero matrix is Hermitian")
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `e^{-iHt}`
    pub fn propagator(&self, t: f64) -> Matrix {
        self.eigen.map(|l| C64::from_polar(1.0, -l * t))
    }
}

/// `e^{iHt} P e^{-iHt}`
pub fn heisenberg_projector(p: &Projector, h: &Hamiltonian, t: f64) -> Result<Projector> {
    if p.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: p.dim() });
    }
    if t == 0.0 || h.is_zero() {
        return Ok(p.clone());
    }
    let u = h.propagator(t);
    let evolved = &(&u.adjoint() * p.matrix()) * &u;
    Ok(Projector { matrix: evolved.hermitian_part(), rank: p.rank })
}
