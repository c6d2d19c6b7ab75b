//! Small dense/structured linear algebra kernels used by the radial
//! discretizations: a symmetric tridiagonal eigensolver (implicit-shift QL
//! with eigenvector accumulation) and a block-tridiagonal complex solver for
//! Cayley time steps.

use crate::C64;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum LinalgError {
    #[error("QL iteration failed to converge at row {0}")]
    NoConvergence(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Eigendecomposition of a real symmetric tridiagonal matrix.
///
/// `eigenvalues` are ascending; `eigenvectors[k]` is the unit eigenvector for
/// `eigenvalues[k]` (stored row-wise, length n each).
#[derive(Debug, Clone)]
pub struct TridiagEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

/// Implicit-shift QL on a symmetric tridiagonal matrix with diagonal `diag`
/// and subdiagonal `sub` (`sub[i]` couples rows i and i+1).
pub fn tridiag_eigen(diag: &[f64], sub: &[f64]) -> Result<TridiagEigen, LinalgError> {
    let n = diag.len();
    assert_eq!(sub.len(), n.saturating_sub(1));
    let mut d = diag.to_vec();
    // e[i] couples rows i and i+1; e[n-1] is workspace.
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(sub);
    // z[i][k]: i-th component of the k-th eigenvector, accumulated from I.
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find the first negligible subdiagonal element at or after l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(LinalgError::NoConvergence(l));
            }
            // Form the implicit shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // Accumulate the rotation into the eigenvector matrix.
                for row in z.iter_mut() {
                    f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // Sort ascending, carrying eigenvectors along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|i| z[i][k]).collect())
        .collect();
    Ok(TridiagEigen {
        eigenvalues,
        eigenvectors,
    })
}

impl TridiagEigen {
    /// Applies f(T) to a complex vector through the eigenbasis.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64, x: &[C64]) -> Vec<C64> {
        let n = self.eigenvalues.len();
        assert_eq!(x.len(), n);
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (lam, q) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let mut coeff = C64::new(0.0, 0.0);
            for (qi, xi) in q.iter().zip(x) {
                coeff += qi * xi;
            }
            let scale = f(*lam);
            for (o, qi) in out.iter_mut().zip(q) {
                *o += coeff * scale * qi;
            }
        }
        out
    }
}

/// 2×2 complex matrix stored row-major; the block unit of the radial solver.
pub type Block2 = [[C64; 2]; 2];

fn block_mul(a: &Block2, b: &Block2) -> Block2 {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn block_inv(a: &Block2) -> Block2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let inv = C64::new(1.0, 0.0) / det;
    [
        [a[1][1] * inv, -a[0][1] * inv],
        [-a[1][0] * inv, a[0][0] * inv],
    ]
}

fn block_apply(a: &Block2, v: [C64; 2]) -> [C64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

/// LU-style factorization of a block-tridiagonal matrix with constant
/// off-diagonal blocks `B` (super) and `C` (sub), as arises from
/// I + i·λ·H with H block-tridiagonal Hermitian.
///
/// For that family every leading principal submatrix has singular values
/// ≥ 1, so the unpivoted block recursion S_i = D_i − C·S_{i−1}⁻¹·B never
/// meets an ill-conditioned pivot block.
#[derive(Debug, Clone)]
pub struct BlockTridiagFactor {
    inv_pivots: Vec<Block2>,
    sup: Block2,
    sub: Block2,
}

impl BlockTridiagFactor {
    pub fn new(diag: &[Block2], sup: Block2, sub: Block2) -> Self {
        let mut inv_pivots = Vec::with_capacity(diag.len());
        let mut s = diag[0];
        inv_pivots.push(block_inv(&s));
        for d in &diag[1..] {
            let t = block_mul(&sub, &block_mul(inv_pivots.last().unwrap(), &sup));
            s = *d;
            for i in 0..2 {
                for j in 0..2 {
                    s[i][j] -= t[i][j];
                }
            }
            inv_pivots.push(block_inv(&s));
        }
        Self {
            inv_pivots,
            sup,
            sub,
        }
    }

    /// Solves M x = rhs in place; `rhs` holds n blocks of 2 entries.
    pub fn solve(&self, rhs: &mut [C64]) {
        let n = self.inv_pivots.len();
        assert_eq!(rhs.len(), 2 * n);
        // Forward sweep: y_i = S_i^{-1} (b_i - C y_{i-1}).
        let mut prev = [C64::new(0.0, 0.0); 2];
        for i in 0..n {
            let mut b = [rhs[2 * i], rhs[2 * i + 1]];
            if i > 0 {
                let cb = block_apply(&self.sub, prev);
                b[0] -= cb[0];
                b[1] -= cb[1];
            }
            let y = block_apply(&self.inv_pivots[i], b);
            rhs[2 * i] = y[0];
            rhs[2 * i + 1] = y[1];
            prev = y;
        }
        // Back substitution: x_i = y_i - S_i^{-1} B x_{i+1}.
        for i in (0..n.saturating_sub(1)).rev() {
            let next = [rhs[2 * (i + 1)], rhs[2 * (i + 1) + 1]];
            let corr = block_apply(&self.inv_pivots[i], block_apply(&self.sup, next));
            rhs[2 * i] -= corr[0];
            rhs[2 * i + 1] -= corr[1];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::{DMatrix, SymmetricEigen};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tridiag_matches_dense_eigen() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 5, 40] {
            let diag: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let sub: Vec<f64> = (0..n - 1.min(n)).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let eig = tridiag_eigen(&diag, &sub).unwrap();

            let mut dense = DMatrix::zeros(n, n);
            for i in 0..n {
                dense[(i, i)] = diag[i];
                if i + 1 < n {
                    dense[(i, i + 1)] = sub[i];
                    dense[(i + 1, i)] = sub[i];
                }
            }
            let mut reference = SymmetricEigen::new(dense.clone())
                .eigenvalues
                .iter()
                .copied()
                .collect::<Vec<f64>>();
            reference.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in eig.eigenvalues.iter().zip(&reference) {
                assert_relative_eq!(a, b, epsilon = 1e-10, max_relative = 1e-10);
            }
            // Residual check A q = lambda q.
            for (lam, q) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
                let qv = DMatrix::from_column_slice(n, 1, q);
                let res = (&dense * &qv - qv.scale(*lam)).norm();
                assert!(res < 1e-10, "residual {res}");
            }
        }
    }

    #[test]
    fn tridiag_function_application() {
        let diag = vec![2.0, 3.0, 5.0];
        let sub = vec![0.0, 0.0];
        let eig = tridiag_eigen(&diag, &sub).unwrap();
        let x = vec![C64::new(1.0, 1.0); 3];
        let y = eig.apply_function(|l| l * l, &x);
        assert_relative_eq!(y[0].re, 4.0, epsilon = 1e-12);
        assert_relative_eq!(y[2].re, 25.0, epsilon = 1e-12);
    }

    #[test]
    fn block_solver_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 37;
        // Random Hermitian-like setup: I + i*lam*H with H block-tridiagonal symmetric real.
        let lam = 0.3;
        let i_unit = C64::new(0.0, 1.0);
        let a = rng.gen_range(0.5..2.0);
        let sup_re = [[0.0, -a], [a, 0.0]];
        let mut diag = Vec::new();
        let mut h_diag = Vec::new();
        for _ in 0..n {
            let m = rng.gen_range(-1.0..1.0);
            let k = rng.gen_range(-3.0..3.0);
            h_diag.push([[m, k], [k, -m]]);
            let mut d = [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]; 2];
            d[1] = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
            for r in 0..2 {
                for c in 0..2 {
                    d[r][c] += i_unit * lam * h_diag.last().unwrap()[r][c];
                }
            }
            diag.push(d);
        }
        let mut sup = [[C64::new(0.0, 0.0); 2]; 2];
        let mut sub = [[C64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                sup[r][c] = i_unit * lam * sup_re[r][c];
                sub[r][c] = i_unit * lam * (-sup_re[r][c]);
            }
        }
        let factor = BlockTridiagFactor::new(&diag, sup, sub);
        let x_true: Vec<C64> = (0..2 * n)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        // rhs = M x.
        let mut rhs = vec![C64::new(0.0, 0.0); 2 * n];
        for i in 0..n {
            let xi = [x_true[2 * i], x_true[2 * i + 1]];
            let mut acc = block_apply(&diag[i], xi);
            if i > 0 {
                let xm = [x_true[2 * (i - 1)], x_true[2 * (i - 1) + 1]];
                let t = block_apply(&sub, xm);
                acc[0] += t[0];
                acc[1] += t[1];
            }
            if i + 1 < n {
                let xp = [x_true[2 * (i + 1)], x_true[2 * (i + 1) + 1]];
                let t = block_apply(&sup, xp);
                acc[0] += t[0];
                acc[1] += t[1];
            }
            rhs[2 * i] = acc[0];
            rhs[2 * i + 1] = acc[1];
        }
        factor.solve(&mut rhs);
        for (a, b) in rhs.iter().zip(&x_true) {
            assert!((a - b).norm() < 1e-10);
        }
    }
}
