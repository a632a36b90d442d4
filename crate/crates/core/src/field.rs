//! Sampled field states and the grids they live on.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::specfun::QuadratureGrid;

/// z-direction grid: quadrature nodes plus the structure needed to
/// differentiate sampled data on them.
#[derive(Clone, Debug)]
pub struct ZGrid {
    pub quad: QuadratureGrid,
    pub kind: ZGridKind,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZGridKind {
    /// Composite Gauss-Legendre panels (graded near the origin);
    /// derivative by the per-panel spectral differentiation matrix.
    /// `edges` has one more entry than there are panels.
    CompositeGl { nodes_per_panel: usize, edges: Vec<f64> },
    /// Uniform staggered nodes z_j = (j − 1/2) h (never touching z = 0);
    /// derivative by central finite differences. This is the layout the
    /// finite-difference oracle uses.
    UniformStaggered,
}

/// Geometric subdivision depth of the panel touching z = 0.
const ORIGIN_GRADE_LEVELS: usize = 8;

impl ZGrid {
    pub fn composite_gl(domain_end: f64, max_panel_width: f64, nodes_per_panel: usize) -> Result<Self> {
        let (quad, edges) = crate::specfun::composite_gauss_legendre_graded(
            domain_end,
            max_panel_width,
            nodes_per_panel,
            ORIGIN_GRADE_LEVELS,
        )?;
        Ok(ZGrid { quad, kind: ZGridKind::CompositeGl { nodes_per_panel, edges } })
    }

    pub fn uniform_staggered(domain_end: f64, n: usize) -> Result<Self> {
        if !(domain_end > 0.0) || n == 0 {
            return Err(Error::domain("ZGrid", "need positive extent and node count"));
        }
        let h = domain_end / n as f64;
        let nodes: Vec<f64> = (0..n).map(|j| (j as f64 + 0.5) * h).collect();
        let weights = vec![h; n];
        Ok(ZGrid {
            quad: QuadratureGrid { nodes, weights, domain_end },
            kind: ZGridKind::UniformStaggered,
        })
    }

    pub fn len(&self) -> usize {
        self.quad.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quad.is_empty()
    }

    pub fn spacing(&self) -> Option<f64> {
        match self.kind {
            ZGridKind::UniformStaggered => Some(self.quad.domain_end / self.quad.len() as f64),
            ZGridKind::CompositeGl { .. } => None,
        }
    }
}

/// Uniform radial grid for radially symmetric transverse data.
///
/// Interior nodes r_i = i·h, i = 1..dst_size−1, h = r_max/dst_size; the
/// substitution χ = rΦ turns the 3D radial Laplacian into ∂_r² with
/// Dirichlet walls at r = 0 and r = r_max, which the type-I discrete sine
/// transform diagonalises exactly (wavenumbers k_j = jπ/r_max).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialGrid {
    pub r_max: f64,
    pub dst_size: usize,
}

impl RadialGrid {
    pub fn new(r_max: f64, dst_size: usize) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) || dst_size < 4 {
            return Err(Error::domain("RadialGrid", "need r_max > 0 and dst_size >= 4"));
        }
        Ok(RadialGrid { r_max, dst_size })
    }

    pub fn h(&self) -> f64 {
        self.r_max / self.dst_size as f64
    }

    pub fn n_nodes(&self) -> usize {
        self.dst_size - 1
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.h();
        (1..self.dst_size).map(|i| i as f64 * h).collect()
    }

    pub fn wavenumber(&self, j: usize) -> f64 {
        (j + 1) as f64 * std::f64::consts::PI / self.r_max
    }
}

/// Transverse description of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TransverseGrid {
    /// No x dependence; `k` is a fixed transverse wavenumber entering the
    /// dispersion relation ω² = k² + m² (0 for a pure 1+1D study).
    Independent { k: f64 },
    /// Radially symmetric data in x ∈ ℝ³.
    Radial(RadialGrid),
}

impl TransverseGrid {
    pub fn n_cols(&self) -> usize {
        match self {
            TransverseGrid::Independent { .. } => 1,
            TransverseGrid::Radial(g) => g.n_nodes(),
        }
    }
}

/// Field Φ and velocity ∂_tΦ sampled on a (z × transverse) grid at time t.
///
/// Layout: `phi[[iz, ir]]`; x-independent states have a single column.
#[derive(Clone, Debug)]
pub struct FieldState {
    pub t: f64,
    pub transverse: TransverseGrid,
    pub z: ZGrid,
    pub phi: Array2<f64>,
    pub dphi: Array2<f64>,
}

impl FieldState {
    pub fn new(
        t: f64,
        transverse: TransverseGrid,
        z: ZGrid,
        phi: Array2<f64>,
        dphi: Array2<f64>,
    ) -> Result<Self> {
        let s = FieldState { t, transverse, z, phi, dphi };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let want = (self.z.len(), self.transverse.n_cols());
        if self.phi.dim() != want || self.dphi.dim() != want {
            return Err(Error::shape(
                "FieldState",
                format!("arrays {:?}/{:?}, grids want {:?}", self.phi.dim(), self.dphi.dim(), want),
            ));
        }
        if self.phi.iter().chain(self.dphi.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { op: "FieldState", msg: "field sample".into() });
        }
        Ok(())
    }

    /// Fill from pointwise functions Φ₀(r, z), Φ₁(r, z); x-independent
    /// states are sampled with r = 0.
    pub fn from_functions(
        transverse: TransverseGrid,
        z: ZGrid,
        phi0: impl Fn(f64, f64) -> f64,
        phi1: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let r_nodes: Vec<f64> = match &transverse {
            TransverseGrid::Independent { .. } => vec![0.0],
            TransverseGrid::Radial(g) => g.nodes(),
        };
        let n_z = z.len();
        let n_r = r_nodes.len();
        let mut phi = Array2::zeros((n_z, n_r));
        let mut dphi = Array2::zeros((n_z, n_r));
        for (iz, &zv) in z.quad.nodes.iter().enumerate() {
            for (ir, &rv) in r_nodes.iter().enumerate() {
                phi[[iz, ir]] = phi0(rv, zv);
                dphi[[iz, ir]] = phi1(rv, zv);
            }
        }
        FieldState::new(0.0, transverse, z, phi, dphi)
    }

    /// Weighted L² norm² of Φ over the full measure (4π r² dr dz for radial,
    /// dz for x-independent).
    pub fn l2_mass(&self) -> f64 {
        self.weighted_mass(|_, _| 1.0)
    }

    /// Σ w(r, z)·measure·|Φ|² with the geometric measure folded in.
    pub fn weighted_mass(&self, weight: impl Fn(f64, f64) -> f64) -> f64 {
        let mut terms = Vec::with_capacity(self.phi.len());
        match &self.transverse {
            TransverseGrid::Independent { .. } => {
                for (iz, &z) in self.z.quad.nodes.iter().enumerate() {
                    let wz = self.z.quad.weights[iz];
                    let v = self.phi[[iz, 0]];
                    terms.push(wz * weight(0.0, z) * v * v);
                }
            }
            TransverseGrid::Radial(g) => {
                let h = g.h();
                let nodes = g.nodes();
                for (iz, &z) in self.z.quad.nodes.iter().enumerate() {
                    let wz = self.z.quad.weights[iz];
                    for (ir, &r) in nodes.iter().enumerate() {
                        let v = self.phi[[iz, ir]];
                        terms.push(4.0 * std::f64::consts::PI * h * r * r * wz * weight(r, z) * v * v);
                    }
                }
            }
        }
        crate::util::pairwise_sum(&terms)
    }

    /// max over the grid of weight(r,z)·|Φ(r,z)|.
    pub fn weighted_sup(&self, weight: impl Fn(f64, f64) -> f64) -> f64 {
        let mut sup = 0.0f64;
        let r_nodes: Vec<f64> = match &self.transverse {
            TransverseGrid::Independent { .. } => vec![0.0],
            TransverseGrid::Radial(g) => g.nodes(),
        };
        for (iz, &z) in self.z.quad.nodes.iter().enumerate() {
            for (ir, &r) in r_nodes.iter().enumerate() {
                sup = sup.max(weight(r, z) * self.phi[[iz, ir]].abs());
            }
        }
        sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staggered_grid_weights_sum_to_extent() {
        let g = ZGrid::uniform_staggered(4.0, 100).unwrap();
        let s: f64 = g.quad.weights.iter().sum();
        assert!((s - 4.0).abs() < 1e-12);
        assert!(g.quad.nodes[0] > 0.0);
        assert!((g.quad.nodes[0] - 0.02).abs() < 1e-15);
    }

    #[test]
    fn radial_l2_mass_of_unit_ball_indicator() {
        // Φ = 1 on r <= 1 (smoothly 0 beyond) integrates to ~4π/3 in 3D
        let z = ZGrid::uniform_staggered(1.0, 50).unwrap();
        let r = RadialGrid::new(4.0, 512).unwrap();
        let s = FieldState::from_functions(
            TransverseGrid::Radial(r),
            z,
            |rv, _| if rv <= 1.0 { 1.0 } else { 0.0 },
            |_, _| 0.0,
        )
        .unwrap();
        let m = s.l2_mass();
        let expect = 4.0 * std::f64::consts::PI / 3.0;
        assert!((m - expect).abs() / expect < 0.02, "{m} vs {expect}");
    }

    #[test]
    fn shape_mismatch_rejected() {
        let z = ZGrid::uniform_staggered(1.0, 8).unwrap();
        let bad = Array2::zeros((7, 1));
        let ok = Array2::zeros((8, 1));
        assert!(FieldState::new(0.0, TransverseGrid::Independent { k: 0.0 }, z, bad, ok).is_err());
    }
}
