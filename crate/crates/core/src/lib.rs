//! Radial reduction of the Dirac equation on spherically symmetric manifolds.
//!
//! A manifold is described by a warp function φ(r) through the metric
//! dr² + φ(r)² dω². The Dirac operator restricted to a partial wave subspace
//! becomes a 2×2 radial system; conjugating by the weight σ = r/φ maps it to
//! the flat radial Dirac operator plus the bounded potential k(1/φ − 1/r).
//! The crate discretizes these operators, evolves them unitarily, and measures
//! weighted space-time norms, invariance properties, and fixed-point
//! contraction on the resulting dynamics.

pub mod angular;
pub mod clifford;
pub mod config;
pub mod evolve;
pub mod experiments;
pub mod field;
pub mod linalg;
pub mod manifold;
pub mod nonlinear;
pub mod norms;
pub mod radial_ops;

pub use num_complex::Complex64 as C64;

/// Uniform staggered radial grid on (0, R_max]: nodes r_i = (i + 1/2)·Δr.
///
/// The half-cell offset keeps 1/r and 1/φ finite at every node and makes the
/// midpoint rule exact enough for the O(Δr²) accuracy targeted everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    n: usize,
    dr: f64,
}

impl RadialGrid {
    pub fn new(n: usize, dr: f64) -> Self {
        assert!(n > 0, "grid needs at least one node");
        assert!(dr > 0.0 && dr.is_finite(), "grid spacing must be positive");
        Self { n, dr }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dr(&self) -> f64 {
        self.dr
    }

    pub fn node(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.dr
    }

    pub fn r_max(&self) -> f64 {
        self.n as f64 * self.dr
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Grid with half the spacing and twice the node count (same R_max).
    pub fn refined(&self) -> Self {
        Self::new(2 * self.n, 0.5 * self.dr)
    }
}

/// Label (j, m_j, k_j) of a two-dimensional partial wave subspace.
///
/// Half-integers are stored doubled so the type stays exact: `two_j` is odd
/// and positive, `two_mj` is odd with |two_mj| ≤ two_j, and k = ±(j + 1/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialWaveIndex {
    two_j: u32,
    two_mj: i32,
    k: i32,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("j must be a positive half-integer: two_j = {0} is even or zero")]
    BadJ(u32),
    #[error("m_j must be a half-integer with |m_j| <= j: two_mj = {0}, two_j = {1}")]
    BadMj(i32, u32),
    #[error("k must be ±(j + 1/2): k = {0}, two_j = {1}")]
    BadK(i32, u32),
}

impl PartialWaveIndex {
    pub fn new(two_j: u32, two_mj: i32, k: i32) -> Result<Self, IndexError> {
        if two_j % 2 == 0 || two_j == 0 {
            return Err(IndexError::BadJ(two_j));
        }
        if two_mj.rem_euclid(2) == 0 || two_mj.unsigned_abs() > two_j {
            return Err(IndexError::BadMj(two_mj, two_j));
        }
        let lambda = (two_j as i32 + 1) / 2;
        if k != lambda && k != -lambda {
            return Err(IndexError::BadK(k, two_j));
        }
        Ok(Self { two_j, two_mj, k })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn two_mj(&self) -> i32 {
        self.two_mj
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn mj(&self) -> f64 {
        self.two_mj as f64 / 2.0
    }

    /// Angular eigenvalue λ_j = j + 1/2 = |k|.
    pub fn lambda(&self) -> u32 {
        (self.two_j + 1) / 2
    }

    /// Block label n assigning each (j, k) to a unique P_n = H_{n-1/2} ⊕ H_{n+1/2}.
    ///
    /// n = |k| for k > 0 and n = |k| − 1 for k < 0, so every P_n holds exactly
    /// the pair {(j = n − 1/2, k = n), (j = n + 1/2, k = −(n + 1))} and the
    /// values |k| over P_n are {n, n + 1}.
    pub fn n_block(&self) -> u32 {
        let lam = self.lambda();
        if self.k > 0 {
            lam
        } else {
            lam - 1
        }
    }

    /// All valid indices with j ≤ two_j_max/2, in lexicographic order.
    pub fn enumerate_up_to(two_j_max: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut two_j = 1;
        while two_j <= two_j_max {
            let lambda = (two_j as i32 + 1) / 2;
            let mut two_mj = -(two_j as i32);
            while two_mj <= two_j as i32 {
                for k in [-lambda, lambda] {
                    out.push(Self { two_j, two_mj, k });
                }
                two_mj += 2;
            }
            two_j += 2;
        }
        out
    }
}

impl std::fmt::Display for PartialWaveIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(j={}/2, mj={}/2, k={})", self.two_j, self.two_mj, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_nodes_are_staggered() {
        let g = RadialGrid::new(4, 0.5);
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes, vec![0.25, 0.75, 1.25, 1.75]);
        assert_eq!(g.r_max(), 2.0);
        assert!(nodes[0] > 0.0);
    }

    #[test]
    fn index_validation() {
        assert!(PartialWaveIndex::new(1, 1, 1).is_ok());
        assert!(PartialWaveIndex::new(1, 1, -1).is_ok());
        assert!(PartialWaveIndex::new(2, 1, 1).is_err());
        assert!(PartialWaveIndex::new(1, 3, 1).is_err());
        assert!(PartialWaveIndex::new(1, 1, 2).is_err());
        assert!(PartialWaveIndex::new(3, -1, -2).is_ok());
        assert!(PartialWaveIndex::new(3, 0, 2).is_err());
    }

    #[test]
    fn block_labels_partition_disjointly() {
        // P_n holds |k| ∈ {n, n+1} through (j = n - 1/2, k = n) and
        // (j = n + 1/2, k = -(n+1)).
        let idx = PartialWaveIndex::enumerate_up_to(9);
        for i in &idx {
            let n = i.n_block();
            assert!(i.lambda() == n || i.lambda() == n + 1);
            if i.k() > 0 {
                assert_eq!(i.k(), n as i32);
            } else {
                assert_eq!(i.k(), -(n as i32 + 1));
            }
        }
        // j = 1/2 spans exactly blocks 0 and 1.
        let half: Vec<u32> = idx
            .iter()
            .filter(|i| i.two_j() == 1)
            .map(|i| i.n_block())
            .collect();
        assert!(half.contains(&0) && half.contains(&1));
        assert!(half.iter().all(|&n| n <= 1));
    }
}
