//! Partial wave bases on the sphere: the eigenspinors of the sphere Dirac
//! operator, the four-spinor bases of the 2D subspaces H_{j,m_j,k_j},
//! projection and synthesis between pointwise fields and coefficient maps,
//! and dyadic band projectors over the P_n blocks.
//!
//! Everything is expressed through the local rotation R₁ = e^{iσ₂θ/2}e^{iσ₃φ/2}:
//! the rotated-frame objects R₁*E^± are finite combinations of standard
//! spherical harmonics of degrees j ∓ 1/2, which is what gets evaluated and
//! projected on the quadrature.

pub mod harmonics;

use crate::field::{RadialSpinor, Representation, SpinorField};
use crate::{PartialWaveIndex, RadialGrid, C64};
use harmonics::{gauss_legendre, spherical_harmonic, spherical_harmonic_dtheta};

const ZERO: C64 = C64::new(0.0, 0.0);
const IM: C64 = C64::new(0.0, 1.0);

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AngularError {
    #[error("quadrature degree {degree} too coarse for two_j = {two_j}; need degree >= two_j + 1")]
    QuadratureTooCoarse { degree: u32, two_j: u32 },
    #[error(transparent)]
    Harmonic(#[from] harmonics::HarmonicError),
    #[error(transparent)]
    Index(#[from] crate::IndexError),
}

/// Product quadrature on S²: Gauss–Legendre in cosθ × uniform in φ.
///
/// Integrates products of spherical harmonics exactly (up to round-off) as
/// long as both degrees are ≤ `degree`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    degree: u32,
    nodes: Vec<SphereNode>,
}

#[derive(Debug, Clone, Copy)]
pub struct SphereNode {
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
}

impl SphereQuadrature {
    pub fn with_degree(degree: u32) -> Self {
        let n_theta = degree as usize + 1;
        let n_phi = 2 * degree as usize + 2;
        let (x, w) = gauss_legendre(n_theta);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi);
        for (xi, wi) in x.iter().zip(&w) {
            let theta = xi.acos();
            for kp in 0..n_phi {
                nodes.push(SphereNode {
                    theta,
                    phi: kp as f64 * dphi,
                    weight: wi * dphi,
                });
            }
        }
        Self { degree, nodes }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nodes(&self) -> &[SphereNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// A ℂ²-valued function on the sphere given as a finite combination of
/// spherical harmonics per component.
#[derive(Debug, Clone)]
pub struct SpinorHarmonics {
    pub comps: [Vec<(u32, i32, C64)>; 2],
}

impl SpinorHarmonics {
    fn map_terms(&self, f: impl Fn(u32, i32, f64, f64) -> C64, theta: f64, phi: f64) -> [C64; 2] {
        let mut out = [ZERO; 2];
        for (c, terms) in out.iter_mut().zip(&self.comps) {
            for &(l, m, coeff) in terms {
                *c += coeff * f(l, m, theta, phi);
            }
        }
        out
    }

    pub fn eval(&self, theta: f64, phi: f64) -> [C64; 2] {
        self.map_terms(
            |l, m, t, p| spherical_harmonic(l, m, t, p).expect("terms in range"),
            theta,
            phi,
        )
    }

    pub fn eval_dtheta(&self, theta: f64, phi: f64) -> [C64; 2] {
        self.map_terms(
            |l, m, t, p| spherical_harmonic_dtheta(l, m, t, p).expect("terms in range"),
            theta,
            phi,
        )
    }

    pub fn eval_dphi(&self, theta: f64, phi: f64) -> [C64; 2] {
        self.map_terms(
            |l, m, t, p| {
                IM * m as f64 * spherical_harmonic(l, m, t, p).expect("terms in range")
            },
            theta,
            phi,
        )
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.clone();
        for comp in &mut out.comps {
            for term in comp {
                term.2 *= s;
            }
        }
        out
    }

    /// a·x + b·y, merging term lists componentwise.
    pub fn combine(a: C64, x: &Self, b: C64, y: &Self) -> Self {
        let mut comps: [Vec<(u32, i32, C64)>; 2] = [Vec::new(), Vec::new()];
        for i in 0..2 {
            for &(l, m, c) in &x.comps[i] {
                comps[i].push((l, m, a * c));
            }
            for &(l, m, c) in &y.comps[i] {
                comps[i].push((l, m, b * c));
            }
        }
        Self { comps }
    }

    /// Maximal harmonic degree appearing in the terms.
    pub fn max_degree(&self) -> u32 {
        self.comps
            .iter()
            .flatten()
            .map(|&(l, _, _)| l)
            .max()
            .unwrap_or(0)
    }
}

/// The rotated-frame pair [R₁*E⁺, R₁*E⁻] of the subspace (j, m_j):
///
///   R₁*E⁺ = ( √((j+m)/2j)·Y_{j⁻,m⁻},      √((j−m)/2j)·Y_{j⁻,m⁺} )
///   R₁*E⁻ = ( √((j−m+1)/(2j+2))·Y_{j⁺,m⁻}, −√((j+m+1)/(2j+2))·Y_{j⁺,m⁺} )
///
/// with j^± = j ± 1/2, m^± = m_j ± 1/2; terms with vanishing coefficient are
/// dropped (they would carry out-of-range orders).
pub fn rotated_e_pair(two_j: u32, two_mj: i32) -> [SpinorHarmonics; 2] {
    let tj = two_j as i32;
    let l_minus = (two_j - 1) / 2;
    let l_plus = (two_j + 1) / 2;
    let m_lo = (two_mj - 1) / 2;
    let m_hi = (two_mj + 1) / 2;
    let push = |v: &mut Vec<(u32, i32, C64)>, l: u32, m: i32, c2: f64, sign: f64| {
        if c2 > 0.0 {
            v.push((l, m, C64::new(sign * c2.sqrt(), 0.0)));
        }
    };
    let mut e_plus = [Vec::new(), Vec::new()];
    push(
        &mut e_plus[0],
        l_minus,
        m_lo,
        (tj + two_mj) as f64 / (2 * tj) as f64,
        1.0,
    );
    push(
        &mut e_plus[1],
        l_minus,
        m_hi,
        (tj - two_mj) as f64 / (2 * tj) as f64,
        1.0,
    );
    let mut e_minus = [Vec::new(), Vec::new()];
    push(
        &mut e_minus[0],
        l_plus,
        m_lo,
        (tj - two_mj + 2) as f64 / (2 * (tj + 2)) as f64,
        1.0,
    );
    push(
        &mut e_minus[1],
        l_plus,
        m_hi,
        (tj + two_mj + 2) as f64 / (2 * (tj + 2)) as f64,
        -1.0,
    );
    [
        SpinorHarmonics { comps: e_plus },
        SpinorHarmonics { comps: e_minus },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaBranch {
    Plus,
    Minus,
}

/// Rotated-frame eigenspinor R₁*Γ^± of the sphere Dirac operator, normalized
/// so that −iσ₃Γ^± = ±Γ^∓ pointwise:
///
///   Γ^± = e^{iπ/4}·(E⁺ ± i·E⁻)/√2.
///
/// The E^± themselves are the chirality components (σ₃-eigenvectors), which
/// the operator swaps; the eigenvectors are these balanced combinations.
pub fn gamma_eigenspinor(two_j: u32, two_mj: i32, branch: GammaBranch) -> SpinorHarmonics {
    let [e_plus, e_minus] = rotated_e_pair(two_j, two_mj);
    let phase = C64::from_polar(1.0 / 2.0_f64.sqrt(), std::f64::consts::FRAC_PI_4);
    let sign = match branch {
        GammaBranch::Plus => IM,
        GammaBranch::Minus => -IM,
    };
    SpinorHarmonics::combine(phase, &e_plus, phase * sign, &e_minus)
}

/// Which ℂ⁴ half a basis element occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisBranch {
    FMinus,
    FPlus,
    GPlus,
    GMinus,
}

/// One ℂ⁴-valued basis element of a partial wave subspace.
#[derive(Debug, Clone)]
pub struct AngularBasisElement {
    pub index: PartialWaveIndex,
    pub branch: BasisBranch,
    pub slot: Slot,
    pub spinor: SpinorHarmonics,
}

impl AngularBasisElement {
    pub fn eval(&self, theta: f64, phi: f64) -> [C64; 4] {
        let two = self.spinor.eval(theta, phi);
        match self.slot {
            Slot::Upper => [two[0], two[1], ZERO, ZERO],
            Slot::Lower => [ZERO, ZERO, two[0], two[1]],
        }
    }
}

/// The ordered orthonormal pair spanning H_{j,m_j,k_j}.
///
/// For k > 0 the pair is (F⁻, F⁺) = (i·(R₁*E⁻, 0), i·(0, R₁*E⁺)); for k < 0
/// it is (G⁺, G⁻) = (i·(R₁*E⁺, 0), i·(0, −R₁*E⁻)). The common phase i makes
/// the j = 1/2 first elements coincide with the explicit four-spinors of the
/// invariance lemma while leaving the radial 2×2 operator in its standard
/// form; β acts as (+, −) on the pair in every case.
pub fn four_spinor_basis(index: PartialWaveIndex) -> [AngularBasisElement; 2] {
    let [e_plus, e_minus] = rotated_e_pair(index.two_j(), index.two_mj());
    if index.k() > 0 {
        [
            AngularBasisElement {
                index,
                branch: BasisBranch::FMinus,
                slot: Slot::Upper,
                spinor: e_minus.scaled(IM),
            },
            AngularBasisElement {
                index,
                branch: BasisBranch::FPlus,
                slot: Slot::Lower,
                spinor: e_plus.scaled(IM),
            },
        ]
    } else {
        [
            AngularBasisElement {
                index,
                branch: BasisBranch::GPlus,
                slot: Slot::Upper,
                spinor: e_plus.scaled(IM),
            },
            AngularBasisElement {
                index,
                branch: BasisBranch::GMinus,
                slot: Slot::Lower,
                spinor: e_minus.scaled(-IM),
            },
        ]
    }
}

/// Basis element values tabulated on a quadrature, for synthesis and
/// projection loops. Built once and shared read-only.
#[derive(Debug, Clone)]
pub struct BasisTable {
    entries: Vec<BasisEntry>,
    n_nodes: usize,
    degree: u32,
}

#[derive(Debug, Clone)]
struct BasisEntry {
    index: PartialWaveIndex,
    slot: Slot,
    /// ℂ² values of the slot spinor at each node.
    values: Vec<[C64; 2]>,
}

impl BasisTable {
    pub fn new(indices: &[PartialWaveIndex], quad: &SphereQuadrature) -> Result<Self, AngularError> {
        let mut entries = Vec::with_capacity(indices.len() * 2);
        for &index in indices {
            if quad.degree() < index.two_j() + 1 {
                return Err(AngularError::QuadratureTooCoarse {
                    degree: quad.degree(),
                    two_j: index.two_j(),
                });
            }
            for element in four_spinor_basis(index) {
                let values = quad
                    .nodes()
                    .iter()
                    .map(|n| element.spinor.eval(n.theta, n.phi))
                    .collect();
                entries.push(BasisEntry {
                    index,
                    slot: element.slot,
                    values,
                });
            }
        }
        Ok(Self {
            entries,
            n_nodes: quad.len(),
            degree: quad.degree(),
        })
    }

    pub fn indices(&self) -> Vec<PartialWaveIndex> {
        let mut out: Vec<_> = self.entries.iter().map(|e| e.index).collect();
        out.dedup();
        out
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// Pointwise ℂ⁴ samples of a field on grid × quadrature nodes, r-major.
/// The radial values inherit the representation of the field they came from.
#[derive(Debug, Clone)]
pub struct FieldSamples {
    pub grid: RadialGrid,
    pub rep: Representation,
    pub n_nodes: usize,
    pub values: Vec<[C64; 4]>,
}

impl FieldSamples {
    pub fn zeros(grid: RadialGrid, rep: Representation, n_nodes: usize) -> Self {
        Self {
            grid,
            rep,
            n_nodes,
            values: vec![[ZERO; 4]; grid.len() * n_nodes],
        }
    }

    #[inline]
    pub fn at(&self, i_r: usize, node: usize) -> &[C64; 4] {
        &self.values[i_r * self.n_nodes + node]
    }

    #[inline]
    pub fn at_mut(&mut self, i_r: usize, node: usize) -> &mut [C64; 4] {
        &mut self.values[i_r * self.n_nodes + node]
    }
}

/// Evaluates a coefficient field pointwise on the quadrature nodes.
pub fn synthesize(
    field: &SpinorField,
    table: &BasisTable,
    quad: &SphereQuadrature,
) -> FieldSamples {
    assert_eq!(table.n_nodes, quad.len());
    let grid = field.grid();
    let n = grid.len();
    let mut samples = FieldSamples::zeros(grid, field.rep(), quad.len());
    for entry in &table.entries {
        let Some(mode) = field.mode(&entry.index) else {
            continue;
        };
        let (off0, off1) = match entry.slot {
            Slot::Upper => (0, 1),
            Slot::Lower => (2, 3),
        };
        // First table entry of an index is the first branch element.
        let coeffs = if matches!(entry.slot, Slot::Upper) {
            &mode.plus
        } else {
            &mode.minus
        };
        for i_r in 0..n {
            let c = coeffs[i_r];
            if c == ZERO {
                continue;
            }
            let row = &mut samples.values[i_r * quad.len()..(i_r + 1) * quad.len()];
            for (v, b) in row.iter_mut().zip(&entry.values) {
                v[off0] += c * b[0];
                v[off1] += c * b[1];
            }
        }
    }
    samples
}

/// Projects pointwise samples onto one partial wave subspace, returning the
/// two radial coefficient profiles.
pub fn project(
    samples: &FieldSamples,
    index: PartialWaveIndex,
    quad: &SphereQuadrature,
) -> Result<RadialSpinor, AngularError> {
    if quad.degree() < index.two_j() + 1 {
        return Err(AngularError::QuadratureTooCoarse {
            degree: quad.degree(),
            two_j: index.two_j(),
        });
    }
    let elements = four_spinor_basis(index);
    let n = samples.grid.len();
    let mut out = RadialSpinor::zeros(n, samples.rep);
    for (which, element) in elements.iter().enumerate() {
        let values: Vec<[C64; 2]> = quad
            .nodes()
            .iter()
            .map(|nd| element.spinor.eval(nd.theta, nd.phi))
            .collect();
        let (off0, off1) = match element.slot {
            Slot::Upper => (0, 1),
            Slot::Lower => (2, 3),
        };
        let dest = if which == 0 { &mut out.plus } else { &mut out.minus };
        for (i_r, d) in dest.iter_mut().enumerate() {
            let mut acc = ZERO;
            let row = &samples.values[i_r * samples.n_nodes..(i_r + 1) * samples.n_nodes];
            for ((v, b), nd) in row.iter().zip(&values).zip(quad.nodes()) {
                acc += nd.weight * (b[0].conj() * v[off0] + b[1].conj() * v[off1]);
            }
            *d = acc;
        }
    }
    Ok(out)
}

/// Projects samples over a whole index set into a coefficient field.
pub fn project_all(
    samples: &FieldSamples,
    indices: &[PartialWaveIndex],
    quad: &SphereQuadrature,
) -> Result<SpinorField, AngularError> {
    let mut field = SpinorField::new(samples.rep, samples.grid);
    for &index in indices {
        field.insert(index, project(samples, index, quad)?);
    }
    Ok(field)
}

/// Keeps the modes of the dyadic band: level ℓ ≥ 0 retains block labels
/// n ∈ [2^ℓ, 2^{ℓ+1}); level −1 retains n = 0.
pub fn band_projector(field: &SpinorField, level: i32) -> SpinorField {
    assert!(level >= -1, "dyadic level must be >= -1");
    field.filter(|idx| {
        let n = idx.n_block();
        if level == -1 {
            n == 0
        } else {
            let lo = 1u32 << level;
            n >= lo && n < 2 * lo
        }
    })
}

/// Number of dyadic levels needed to cover block labels up to n_max.
pub fn band_levels(n_max: u32) -> Vec<i32> {
    let mut levels = vec![-1];
    let mut level = 0;
    while (1u32 << level) <= n_max {
        levels.push(level);
        level += 1;
    }
    levels
}

type Mat2 = [[C64; 2]; 2];

fn apply2(m: &Mat2, v: [C64; 2]) -> [C64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// R₁ = e^{iσ₂θ/2}·e^{iσ₃φ/2} and its angular derivatives.
fn r1_matrices(theta: f64, phi: f64) -> (Mat2, Mat2, Mat2) {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let ep = C64::from_polar(1.0, phi / 2.0);
    let em = C64::from_polar(1.0, -phi / 2.0);
    let a = [[C64::new(c, 0.0), C64::new(s, 0.0)], [C64::new(-s, 0.0), C64::new(c, 0.0)]];
    let r1 = [[a[0][0] * ep, a[0][1] * em], [a[1][0] * ep, a[1][1] * em]];
    // ∂θ R₁ = (iσ₂/2)·R₁ with iσ₂ = [[0, 1], [−1, 0]].
    let dthe = [
        [0.5 * r1[1][0], 0.5 * r1[1][1]],
        [-0.5 * r1[0][0], -0.5 * r1[0][1]],
    ];
    // ∂φ R₁ = A·(iσ₃/2)·B: scale columns of A by ±i/2 before the φ phases.
    let half_i = C64::new(0.0, 0.5);
    let dphi = [
        [a[0][0] * half_i * ep, -a[0][1] * half_i * em],
        [a[1][0] * half_i * ep, -a[1][1] * half_i * em],
    ];
    (r1, dthe, dphi)
}

/// Applies the sphere Dirac operator −iσ₁(∂_θ + cotθ/2) − i(σ₂/sinθ)∂_φ to
/// Γ = R₁·v at one point, differentiating the harmonic content of v
/// spectrally and the rotation analytically.
fn sphere_dirac_apply(v_sum: &SpinorHarmonics, theta: f64, phi: f64) -> [C64; 2] {
    let v = v_sum.eval(theta, phi);
    let vt = v_sum.eval_dtheta(theta, phi);
    let vp = v_sum.eval_dphi(theta, phi);
    let (r1, r1_t, r1_p) = r1_matrices(theta, phi);
    let g = apply2(&r1, v);
    let gt = {
        let a = apply2(&r1_t, v);
        let b = apply2(&r1, vt);
        [a[0] + b[0], a[1] + b[1]]
    };
    let gp = {
        let a = apply2(&r1_p, v);
        let b = apply2(&r1, vp);
        [a[0] + b[0], a[1] + b[1]]
    };
    let cot = theta.cos() / theta.sin();
    let sin = theta.sin();
    let w = [gt[0] + 0.5 * cot * g[0], gt[1] + 0.5 * cot * g[1]];
    // −iσ₁w = (−i w₁, −i w₀); −iσ₂u = (−u₁, u₀).
    [
        -IM * w[1] - gp[1] / sin,
        -IM * w[0] + gp[0] / sin,
    ]
}

/// Value of Γ^± = R₁·(R₁*Γ^±) at a point.
pub fn gamma_value(v_sum: &SpinorHarmonics, theta: f64, phi: f64) -> [C64; 2] {
    let (r1, _, _) = r1_matrices(theta, phi);
    apply2(&r1, v_sum.eval(theta, phi))
}

/// L²(S²) residual of the eigenvalue equation for the sphere Dirac operator:
/// ‖(OP ∓ λ_j)Γ^±‖ with λ_j = j + 1/2.
pub fn angular_dirac_eigencheck(
    two_j: u32,
    two_mj: i32,
    branch: GammaBranch,
    quad: &SphereQuadrature,
) -> Result<f64, AngularError> {
    let index_check = PartialWaveIndex::new(two_j, two_mj, (two_j as i32 + 1) / 2)?;
    let lambda = index_check.lambda() as f64;
    let sign = match branch {
        GammaBranch::Plus => 1.0,
        GammaBranch::Minus => -1.0,
    };
    let v_sum = gamma_eigenspinor(two_j, two_mj, branch);
    let mut acc = 0.0;
    for node in quad.nodes() {
        let lhs = sphere_dirac_apply(&v_sum, node.theta, node.phi);
        let target = gamma_value(&v_sum, node.theta, node.phi);
        let d0 = lhs[0] - sign * lambda * target[0];
        let d1 = lhs[1] - sign * lambda * target[1];
        acc += node.weight * (d0.norm_sqr() + d1.norm_sqr());
    }
    Ok(acc.sqrt())
}

/// L²(S²) inner product of two ℂ⁴ basis elements by quadrature.
pub fn basis_inner(
    a: &AngularBasisElement,
    b: &AngularBasisElement,
    quad: &SphereQuadrature,
) -> C64 {
    let mut acc = ZERO;
    for node in quad.nodes() {
        let va = a.eval(node.theta, node.phi);
        let vb = b.eval(node.theta, node.phi);
        let mut dot = ZERO;
        for (x, y) in va.iter().zip(&vb) {
            dot += x.conj() * y;
        }
        acc += node.weight * dot;
    }
    acc
}
