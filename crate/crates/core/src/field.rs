//! Radial spinor profiles and fields as coefficient maps over partial wave
//! indices.
//!
//! A field is stored by its two radial coefficient profiles per mode, in one
//! of three interchangeable radial representations:
//!
//! * `CurvedG` — profiles g on L²(φ² dr), the natural coordinates on the
//!   manifold;
//! * `FlatG`   — profiles g on L²(r² dr), the weighted (σ-conjugated) flat
//!   coordinates;
//! * `W`       — measure-flattened profiles on L²(dr): w = φ·g (curved) or
//!   w = r·g (flat). All discrete operators act here, where the derivative
//!   stencil is skew-symmetric and norms are plain ℓ².

use crate::manifold::Warp;
use crate::{PartialWaveIndex, RadialGrid, C64};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    CurvedG,
    FlatG,
    W,
}

/// Two complex radial profiles on a grid: coefficients of the first and
/// second basis element of one partial wave subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSpinor {
    pub plus: Vec<C64>,
    pub minus: Vec<C64>,
    pub rep: Representation,
}

impl RadialSpinor {
    pub fn zeros(n: usize, rep: Representation) -> Self {
        Self {
            plus: vec![C64::new(0.0, 0.0); n],
            minus: vec![C64::new(0.0, 0.0); n],
            rep,
        }
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.plus
            .iter()
            .chain(self.minus.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Node weight of the measure attached to this representation.
    fn measure_weight(rep: Representation, warp: &Warp, r: f64) -> f64 {
        match rep {
            Representation::W => 1.0,
            Representation::CurvedG => warp.phi(r).powi(2),
            Representation::FlatG => r * r,
        }
    }

    pub fn norm_sq(&self, warp: &Warp, grid: &RadialGrid) -> f64 {
        assert_eq!(self.len(), grid.len());
        let mut acc = 0.0;
        for (i, r) in grid.nodes().enumerate() {
            let w = Self::measure_weight(self.rep, warp, r) * grid.dr();
            acc += (self.plus[i].norm_sqr() + self.minus[i].norm_sqr()) * w;
        }
        acc
    }

    pub fn norm(&self, warp: &Warp, grid: &RadialGrid) -> f64 {
        self.norm_sq(warp, grid).sqrt()
    }

    /// Converts between representations by pointwise scaling. The flattening
    /// factor is φ(r) for the curved measure and r for the flat one, so w-
    /// profiles agree with φg and rg respectively and all conversions are
    /// exact node-by-node.
    pub fn convert_to(&self, rep: Representation, warp: &Warp, grid: &RadialGrid) -> RadialSpinor {
        if rep == self.rep {
            return self.clone();
        }
        let flatten = |from: Representation, r: f64| -> f64 {
            match from {
                Representation::W => 1.0,
                Representation::CurvedG => warp.phi(r),
                Representation::FlatG => r,
            }
        };
        let mut out = RadialSpinor::zeros(self.len(), rep);
        for (i, r) in grid.nodes().enumerate() {
            let scale = flatten(self.rep, r) / flatten(rep, r);
            out.plus[i] = self.plus[i] * scale;
            out.minus[i] = self.minus[i] * scale;
        }
        out
    }

    pub fn scale(&mut self, s: C64) {
        for z in self.plus.iter_mut().chain(self.minus.iter_mut()) {
            *z *= s;
        }
    }

    pub fn axpy(&mut self, a: C64, other: &RadialSpinor) {
        assert_eq!(self.rep, other.rep);
        for (x, y) in self.plus.iter_mut().zip(&other.plus) {
            *x += a * y;
        }
        for (x, y) in self.minus.iter_mut().zip(&other.minus) {
            *x += a * y;
        }
    }
}

/// A finite map from partial wave indices to radial spinors, all on one grid
/// and in one representation. BTreeMap keeps mode iteration deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    rep: Representation,
    grid: RadialGrid,
    modes: BTreeMap<PartialWaveIndex, RadialSpinor>,
}

impl SpinorField {
    pub fn new(rep: Representation, grid: RadialGrid) -> Self {
        Self {
            rep,
            grid,
            modes: BTreeMap::new(),
        }
    }

    pub fn rep(&self) -> Representation {
        self.rep
    }

    pub fn grid(&self) -> RadialGrid {
        self.grid
    }

    pub fn insert(&mut self, index: PartialWaveIndex, spinor: RadialSpinor) {
        assert_eq!(spinor.rep, self.rep, "representation mismatch");
        assert_eq!(spinor.len(), self.grid.len(), "grid length mismatch");
        self.modes.insert(index, spinor);
    }

    pub fn mode(&self, index: &PartialWaveIndex) -> Option<&RadialSpinor> {
        self.modes.get(index)
    }

    pub fn mode_mut(&mut self, index: &PartialWaveIndex) -> Option<&mut RadialSpinor> {
        self.modes.get_mut(index)
    }

    pub fn indices(&self) -> impl Iterator<Item = &PartialWaveIndex> {
        self.modes.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PartialWaveIndex, &RadialSpinor)> {
        self.modes.iter()
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = (&PartialWaveIndex, &mut RadialSpinor)> {
        self.modes.iter_mut()
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.modes.values().all(|s| s.is_finite())
    }

    pub fn norm_sq(&self, warp: &Warp) -> f64 {
        self.modes
            .values()
            .map(|s| s.norm_sq(warp, &self.grid))
            .sum()
    }

    pub fn norm(&self, warp: &Warp) -> f64 {
        self.norm_sq(warp).sqrt()
    }

    pub fn convert_to(&self, rep: Representation, warp: &Warp) -> SpinorField {
        let mut out = SpinorField::new(rep, self.grid);
        for (idx, s) in &self.modes {
            out.insert(*idx, s.convert_to(rep, warp, &self.grid));
        }
        out
    }

    /// Linear combination self + a·other; modes missing on either side count
    /// as zero.
    pub fn axpy(&mut self, a: C64, other: &SpinorField) {
        assert_eq!(self.rep, other.rep);
        assert_eq!(self.grid, other.grid);
        for (idx, s) in &other.modes {
            match self.modes.get_mut(idx) {
                Some(mine) => mine.axpy(a, s),
                None => {
                    let mut copy = s.clone();
                    copy.scale(a);
                    self.modes.insert(*idx, copy);
                }
            }
        }
    }

    pub fn scale(&mut self, s: C64) {
        for m in self.modes.values_mut() {
            m.scale(s);
        }
    }

    pub fn difference(&self, other: &SpinorField) -> SpinorField {
        let mut out = self.clone();
        out.axpy(C64::new(-1.0, 0.0), other);
        out
    }

    /// Restriction to the modes accepted by the predicate.
    pub fn filter(&self, keep: impl Fn(&PartialWaveIndex) -> bool) -> SpinorField {
        let mut out = SpinorField::new(self.rep, self.grid);
        for (idx, s) in &self.modes {
            if keep(idx) {
                out.insert(*idx, s.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn representation_conversions_preserve_norm() {
        let grid = RadialGrid::new(64, 0.05);
        let warp = Warp::Hyperbolic;
        let mut s = RadialSpinor::zeros(64, Representation::W);
        for (i, r) in grid.nodes().enumerate() {
            s.plus[i] = C64::new((-(r - 1.0) * (r - 1.0)).exp(), 0.3 * r);
            s.minus[i] = C64::new(0.1, r.cos());
        }
        let n0 = s.norm(&warp, &grid);
        for rep in [Representation::CurvedG, Representation::FlatG] {
            let converted = s.convert_to(rep, &warp, &grid);
            assert_relative_eq!(converted.norm(&warp, &grid), n0, epsilon = 1e-12);
            let back = converted.convert_to(Representation::W, &warp, &grid);
            for i in 0..64 {
                assert!((back.plus[i] - s.plus[i]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn field_axpy_and_filter() {
        let grid = RadialGrid::new(8, 0.1);
        let idx1 = PartialWaveIndex::new(1, 1, 1).unwrap();
        let idx2 = PartialWaveIndex::new(3, 1, 2).unwrap();
        let mut f = SpinorField::new(Representation::W, grid);
        let mut s = RadialSpinor::zeros(8, Representation::W);
        s.plus[0] = C64::new(1.0, 0.0);
        f.insert(idx1, s.clone());
        let mut g = SpinorField::new(Representation::W, grid);
        g.insert(idx2, s);
        f.axpy(C64::new(2.0, 0.0), &g);
        assert_eq!(f.len(), 2);
        assert_eq!(f.mode(&idx2).unwrap().plus[0], C64::new(2.0, 0.0));
        let only1 = f.filter(|i| i.two_j() == 1);
        assert_eq!(only1.len(), 1);
    }
}
