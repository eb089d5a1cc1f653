use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::hilbert::{candidate_probability, ClassOperator, HistorySet, StateVector};
use crate::{Error, Result};

/// Default threshold for [`verify_sum_rules`].
pub const SUM_RULE_TOL: f64 = 1e-10;

/// Disjoint blocks of member indices covering `0..len`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    labels: Vec<String>,
    len: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, labels: Vec<String>, len: usize) -> Result<Self> {
        if blocks.len() != labels.len() {
            return Err(Error::LabelCount { expected: blocks.len(), found: labels.len() });
        }
        let mut seen = vec![false; len];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &i in block {
                if i >= len {
                    return Err(Error::InvalidPartition(format!("index {i} out of range for {len} members")));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("index {i} appears twice")));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("index {i} is not covered")));
        }
        Ok(Partition { blocks, labels, len })
    }

    /// Blocks labelled by number.
    pub fn unlabelled(blocks: Vec<Vec<usize>>, len: usize) -> Result<Self> {
        let labels = (0..blocks.len()).map(|i| format!("{i}")).collect();
        Self::new(blocks, labels, len)
    }

    pub fn singletons(len: usize) -> Self {
        Partition {
            blocks: (0..len).map(|i| vec![i]).collect(),
            labels: (0..len).map(|i| format!("{i}")).collect(),
            len,
        }
    }

    pub fn single_block(len: usize) -> Self {
        Partition { blocks: vec![(0..len).collect()], labels: vec![String::from("all")], len }
    }

    /// Groups members by a key, blocks ordered by first appearance.
    pub fn by_key<K: PartialEq>(keys: &[K], label: impl Fn(&K) -> String) -> Self {
        let mut distinct: Vec<&K> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            match distinct.iter().position(|d| *d == k) {
                Some(b) => blocks[b].push(i),
                None => {
                    distinct.push(k);
                    blocks.push(vec![i]);
                }
            }
        }
        let labels = distinct.iter().map(|k| label(k)).collect();
        Partition { blocks, labels, len: keys.len() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn member_count(&self) -> usize {
        self.len
    }
}

fn check_partition(set: &HistorySet, part: &Partition) -> Result<()> {
    if part.len != set.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} members, set has {}",
            part.len,
            set.len()
        )));
    }
    Ok(())
}

/// Sums the class operators in each block.
pub fn coarse_grain(set: &HistorySet, part: &Partition) -> Result<HistorySet> {
    check_partition(set, part)?;
    let members = part
        .blocks
        .iter()
        .map(|block| {
            let ops: Vec<&ClassOperator> = block.iter().map(|&i| &set.members()[i]).collect();
            ClassOperator::sum(&ops)
        })
        .collect::<Result<Vec<_>>>()?;
    HistorySet::new(members, part.labels.clone())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumRuleReport {
    /// `|p̄(ᾱ) - Σ_{α∈ᾱ} p(α)|` per block.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Compares candidate probabilities of the coarse-grained set with sums of
/// the fine-grained ones.
pub fn verify_sum_rules(psi: &StateVector, set: &HistorySet, part: &Partition, tol: f64) -> Result<SumRuleReport> {
    let coarse = coarse_grain(set, part)?;
    let fine: Vec<f64> =
        set.members().iter().map(|c| candidate_probability(psi, c)).collect::<Result<_>>()?;
    let mut residuals = Vec::with_capacity(part.blocks.len());
    for (block, c) in part.blocks.iter().zip(coarse.members()) {
        let summed: f64 = block.iter().map(|&i| fine[i]).sum();
        residuals.push((candidate_probability(psi, c)? - summed).abs());
    }
    let max_residual = residuals.iter().fold(0.0f64, |m, &r| m.max(r));
    Ok(SumRuleReport { residuals, max_residual, pass: max_residual < tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{full_chain_set, Hamiltonian, Matrix, ProjectiveDecomposition, Projector};

    fn small_set() -> (StateVector, HistorySet) {
        let psi = StateVector::from_real(&[0.3, -0.5, 0.8]).unwrap();
        let a = ProjectiveDecomposition::binary(Projector::basis(3, &[0]).unwrap(), "A").unwrap();
        let b = ProjectiveDecomposition::binary(Projector::basis(3, &[2]).unwrap(), "B").unwrap();
        let h = Hamiltonian::new(Matrix::from_fn(3, |i, j| crate::C64::new(1.0 / (1 + i + j) as f64, 0.0))).unwrap();
        (psi, full_chain_set(&[(a, 0.0), (b, 1.3)], &h).unwrap())
    }

    #[test]
    fn single_block_gives_identity() {
        let (psi, set) = small_set();
        let coarse = coarse_grain(&set, &Partition::single_block(set.len())).unwrap();
        assert_eq!(coarse.len(), 1);
        assert!(coarse.members()[0].matrix().max_abs_diff(&Matrix::identity(3)) < 1e-12);
        let report = verify_sum_rules(&psi, &set, &Partition::single_block(set.len()), SUM_RULE_TOL).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn singletons_reproduce_the_set() {
        let (_, set) = small_set();
        let coarse = coarse_grain(&set, &Partition::singletons(set.len())).unwrap();
        for (a, b) in coarse.members().iter().zip(set.members()) {
            assert_eq!(a.matrix(), b.matrix());
        }
    }

    #[test]
    fn invalid_partitions_are_rejected() {
        assert!(Partition::unlabelled(vec![vec![0, 1], vec![1, 2]], 3).is_err());
        assert!(Partition::unlabelled(vec![vec![0, 1]], 3).is_err());
        assert!(Partition::unlabelled(vec![vec![0, 1, 2], vec![]], 3).is_err());
        let (_, set) = small_set();
        assert!(coarse_grain(&set, &Partition::singletons(3)).is_err());
    }

    #[test]
    fn grouping_by_key() {
        let p = Partition::by_key(&['x', 'y', 'x', 'z'], |c| format!("{c}"));
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1], vec![3]]);
        assert_eq!(p.labels(), &["x", "y", "z"]);
    }
}
