//! The fixed 4×4 Dirac matrix algebra in the Dirac representation, the Pauli
//! matrices, and the change of basis that relabels the radial direction from
//! σ₁ to σ₃ so the angular operator takes its diagonalizable form.
//!
//! Every matrix here has entries with dyadic real and imaginary parts, so the
//! algebraic identities (anticommutators, conjugations, unitarity) hold
//! exactly in floating point and are tested with equality, not tolerances.

use crate::C64;

/// 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMatrix(pub [[C64; 4]; 4]);

/// 2×2 complex matrix, row-major (Pauli data).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliMatrix(pub [[C64; 2]; 2]);

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

const Z: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

impl SpinMatrix {
    pub fn zeros() -> Self {
        SpinMatrix([[Z; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn mul(&self, rhs: &SpinMatrix) -> SpinMatrix {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Z;
                for l in 0..4 {
                    acc += self.0[i][l] * rhs.0[l][j];
                }
                out.0[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, rhs: &SpinMatrix) -> SpinMatrix {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> SpinMatrix {
        let mut out = *self;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] *= s;
            }
        }
        out
    }

    pub fn adjoint(&self) -> SpinMatrix {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn anticommutator(&self, rhs: &SpinMatrix) -> SpinMatrix {
        self.mul(rhs).add(&rhs.mul(self))
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_anti_hermitian(&self) -> bool {
        *self == self.adjoint().scale(-ONE)
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()) == Self::identity()
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [Z; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.0[i][j] * v[j];
            }
        }
        out
    }

    /// Embeds 2×2 blocks [[a, b], [c, d]] into a 4×4 matrix.
    pub fn from_blocks(a: &PauliMatrix, b: &PauliMatrix, cc: &PauliMatrix, d: &PauliMatrix) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a.0[i][j];
                m.0[i][j + 2] = b.0[i][j];
                m.0[i + 2][j] = cc.0[i][j];
                m.0[i + 2][j + 2] = d.0[i][j];
            }
        }
        m
    }
}

impl PauliMatrix {
    pub fn zeros() -> Self {
        PauliMatrix([[Z; 2]; 2])
    }
}

/// σ₀ = I₂, σ₁, σ₂, σ₃.
pub fn pauli_matrices() -> [PauliMatrix; 4] {
    [
        PauliMatrix([[ONE, Z], [Z, ONE]]),
        PauliMatrix([[Z, ONE], [ONE, Z]]),
        PauliMatrix([[Z, -I], [I, Z]]),
        PauliMatrix([[ONE, Z], [Z, -ONE]]),
    ]
}

/// The standard Dirac matrices: β = diag(I₂, −I₂), αᵏ with σₖ on the
/// anti-diagonal blocks, γ⁰ = β, γᵏ = γ⁰αₖ.
#[derive(Debug, Clone)]
pub struct DiracMatrices {
    pub beta: SpinMatrix,
    pub alpha: [SpinMatrix; 3],
    pub gamma: [SpinMatrix; 4],
    pub pauli: [PauliMatrix; 4],
}

pub fn standard_matrices() -> DiracMatrices {
    let pauli = pauli_matrices();
    let zero2 = PauliMatrix::zeros();
    let neg_id2 = PauliMatrix([[-ONE, Z], [Z, -ONE]]);
    let beta = SpinMatrix::from_blocks(&pauli[0], &zero2, &zero2, &neg_id2);
    let alpha = [
        SpinMatrix::from_blocks(&zero2, &pauli[1], &pauli[1], &zero2),
        SpinMatrix::from_blocks(&zero2, &pauli[2], &pauli[2], &zero2),
        SpinMatrix::from_blocks(&zero2, &pauli[3], &pauli[3], &zero2),
    ];
    let gamma = [
        beta,
        beta.mul(&alpha[0]),
        beta.mul(&alpha[1]),
        beta.mul(&alpha[2]),
    ];
    DiracMatrices {
        beta,
        alpha,
        gamma,
        pauli,
    }
}

/// The unitary change of basis U with Uα₁U* = α₃, Uα₂U* = α₁, Uα₃U* = α₂
/// and UβU* = β.
///
/// Commuting with β forces U = diag(V, V) with V a 2×2 unitary, and the
/// cyclic relabeling of the Pauli matrices forces V to be the 120° spin
/// rotation about (1,1,1)/√3 — the entries have modulus 1/√2, so no signed
/// permutation matrix can do this job. The entries ±(1±i)/2 are dyadic and
/// all conjugation identities hold exactly.
pub fn permutation_rotation() -> SpinMatrix {
    // V = exp(+i(π/3)·(σ₁+σ₂+σ₃)/√3) = (I + i(σ₁+σ₂+σ₃))/2.
    let v = PauliMatrix([
        [c(0.5, 0.5), c(0.5, 0.5)],
        [c(-0.5, 0.5), c(0.5, -0.5)],
    ]);
    let zero2 = PauliMatrix::zeros();
    SpinMatrix::from_blocks(&v, &zero2, &zero2, &v)
}

/// A scalar test function of (r, θ, φ) with analytic first derivatives,
/// used to probe first-order operators pointwise.
#[derive(Clone, Copy)]
pub struct TestFunction {
    pub value: fn(f64, f64, f64) -> C64,
    pub dr: fn(f64, f64, f64) -> C64,
    pub dtheta: fn(f64, f64, f64) -> C64,
    pub dphi: fn(f64, f64, f64) -> C64,
}

/// A small family of smooth, 2π-periodic-in-φ probes.
pub fn test_functions() -> Vec<TestFunction> {
    vec![
        TestFunction {
            value: |r, t, _| c((-(r - 2.0) * (r - 2.0)).exp() * t.cos(), 0.0),
            dr: |r, t, _| c(-2.0 * (r - 2.0) * (-(r - 2.0) * (r - 2.0)).exp() * t.cos(), 0.0),
            dtheta: |r, t, _| c(-(-(r - 2.0) * (r - 2.0)).exp() * t.sin(), 0.0),
            dphi: |_, _, _| Z,
        },
        TestFunction {
            value: |r, t, p| C64::from_polar(r.sin() * t.sin(), p),
            dr: |r, t, p| C64::from_polar(r.cos() * t.sin(), p),
            dtheta: |r, t, p| C64::from_polar(r.sin() * t.cos(), p),
            dphi: |r, t, p| C64::from_polar(r.sin() * t.sin(), p) * I,
        },
        TestFunction {
            value: |r, t, p| c(r * t.sin() * (2.0 * p).cos(), r * r * t.cos()),
            dr: |r, t, p| c(t.sin() * (2.0 * p).cos(), 2.0 * r * t.cos()),
            dtheta: |r, t, p| c(r * t.cos() * (2.0 * p).cos(), -r * r * t.sin()),
            dphi: |r, t, p| c(-2.0 * r * t.sin() * (2.0 * p).sin(), 0.0),
        },
    ]
}

/// Applies the spherically reduced Dirac operator
/// H = mβ − iα'₁(∂_r + φ'/φ) + (1/φ)[α'₂(−i)(∂_θ + cotθ/2) + α'₃(−i/sinθ)∂_φ]
/// to a ℂ⁴ test spinor at one point, where α'ₖ = UαₖU* are the relabeled
/// matrices.
fn apply_reduced_dirac(
    alpha_p: &[SpinMatrix; 3],
    beta: &SpinMatrix,
    mass: f64,
    warp: &crate::manifold::Warp,
    components: &[TestFunction; 4],
    r: f64,
    theta: f64,
    phi_angle: f64,
) -> [C64; 4] {
    let phi_r = warp.phi(r);
    let log_deriv = warp.dphi(r) / phi_r;
    let cot = theta.cos() / theta.sin();
    let mut value = [Z; 4];
    let mut d_radial = [Z; 4];
    let mut d_theta = [Z; 4];
    let mut d_phi = [Z; 4];
    for (i, f) in components.iter().enumerate() {
        value[i] = (f.value)(r, theta, phi_angle);
        d_radial[i] = (f.dr)(r, theta, phi_angle) + log_deriv * value[i];
        d_theta[i] = (f.dtheta)(r, theta, phi_angle) + 0.5 * cot * value[i];
        d_phi[i] = (f.dphi)(r, theta, phi_angle) / theta.sin();
    }
    let mut out = beta.apply(&value);
    for o in &mut out {
        *o *= mass;
    }
    let t1 = alpha_p[0].apply(&d_radial);
    let t2 = alpha_p[1].apply(&d_theta);
    let t3 = alpha_p[2].apply(&d_phi);
    for i in 0..4 {
        out[i] += -I * t1[i] + (-I / phi_r) * (t2[i] + t3[i]);
    }
    out
}

/// Verifies that in the relabeled basis the reduced Dirac operator has block
/// form [[m, A], [A, −m]]: diagonal blocks ±m·I₂ and equal off-diagonal
/// blocks. Returns the largest violation over a family of test spinors and
/// sample points.
pub fn block_structure_residual(warp: &crate::manifold::Warp, mass: f64) -> f64 {
    let mats = standard_matrices();
    let u = permutation_rotation();
    let u_adj = u.adjoint();
    let alpha_p = [
        u.mul(&mats.alpha[0]).mul(&u_adj),
        u.mul(&mats.alpha[1]).mul(&u_adj),
        u.mul(&mats.alpha[2]).mul(&u_adj),
    ];
    let probes = test_functions();
    let zero = TestFunction {
        value: |_, _, _| Z,
        dr: |_, _, _| Z,
        dtheta: |_, _, _| Z,
        dphi: |_, _, _| Z,
    };
    let samples = [
        (1.3, 0.7, 0.4),
        (2.0, 1.9, 2.7),
        (3.1, 2.4, 5.5),
        (0.8, 1.1, 1.0),
    ];
    let mut worst: f64 = 0.0;
    for f in &probes {
        for g in &probes {
            // Upper-pair spinor (f, g, 0, 0) and its lower-pair twin.
            let upper = [*f, *g, zero, zero];
            let lower = [zero, zero, *f, *g];
            for &(r, theta, phi_angle) in &samples {
                let hu = apply_reduced_dirac(&alpha_p, &mats.beta, mass, warp, &upper, r, theta, phi_angle);
                let hl = apply_reduced_dirac(&alpha_p, &mats.beta, mass, warp, &lower, r, theta, phi_angle);
                let fv = (f.value)(r, theta, phi_angle);
                let gv = (g.value)(r, theta, phi_angle);
                // Diagonal blocks: ±m·I₂.
                worst = worst.max((hu[0] - mass * fv).norm());
                worst = worst.max((hu[1] - mass * gv).norm());
                worst = worst.max((hl[2] + mass * fv).norm());
                worst = worst.max((hl[3] + mass * gv).norm());
                // Off-diagonal blocks equal: A from the lower output of the
                // upper probe must match the upper output of the lower probe.
                worst = worst.max((hu[2] - hl[0]).norm());
                worst = worst.max((hu[3] - hl[1]).norm());
            }
        }
    }
    worst
}
