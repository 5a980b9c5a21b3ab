//! Radial discretization of R^N for real N > 2: cell-centered grid, quadrature
//! against the measure omega_N r^{N-1} dr, a conservative radial Laplacian that
//! is exactly self-adjoint with respect to the grid weights, and the norms used
//! throughout the laboratory.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::exponents::ModelParams;

/// Cell-centered radial grid. Node i sits at r_i = (i + 1/2) dr, so no sample
/// ever touches r = 0 and the singular coupling r^{-b} stays finite.
#[derive(Debug)]
pub struct RadialGrid {
    pub n: usize,
    pub r_max: f64,
    pub dim: f64,
    pub dr: f64,
    /// Surface measure of the unit sphere: 2 pi^{N/2} / Gamma(N/2).
    pub omega: f64,
    nodes: Vec<f64>,
    /// Quadrature weights w_i = omega * r_i^{N-1} * dr.
    weights: Vec<f64>,
    /// Face couplings g_{i+1/2} of the flux-form Laplacian, i = 0..n-1; the
    /// face at index n-1 is the outer Dirichlet wall.
    coupling: Vec<f64>,
}

impl RadialGrid {
    pub fn new(n: usize, r_max: f64, dim: f64) -> Result<Arc<Self>> {
        if n < 16 {
            return Err(CoreError::InvalidParameter(format!(
                "node count n = {n} must be at least 16"
            )));
        }
        if !(r_max > 0.0) {
            return Err(CoreError::InvalidParameter(format!(
                "domain radius r_max = {r_max} must be positive"
            )));
        }
        if !(dim > 2.0) {
            return Err(CoreError::InvalidParameter(format!(
                "dimension N = {dim} must exceed 2"
            )));
        }
        let dr = r_max / n as f64;
        let omega = 2.0 * std::f64::consts::PI.powf(dim / 2.0) / libm::tgamma(dim / 2.0);
        let nodes: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dr).collect();
        let weights: Vec<f64> = nodes
            .iter()
            .map(|&r| omega * r.powf(dim - 1.0) * dr)
            .collect();

        // Face coupling chosen so that the flux-form operator is exactly
        // symmetric in the weighted inner product and reproduces
        // Laplacian(r^2) = 2N at every cell: g_{i+1/2} = N dr S_i / r_{i+1/2}
        // with S_i the prefix sum of r_k^{N-1}. Away from the origin this is
        // the face area r_{i+1/2}^{N-1} up to O(dr^2).
        let mut coupling = Vec::with_capacity(n);
        let mut prefix = 0.0;
        for i in 0..n {
            prefix += nodes[i].powf(dim - 1.0);
            let face = (i as f64 + 1.0) * dr;
            coupling.push(dim * dr * prefix / face);
        }

        Ok(Arc::new(Self {
            n,
            r_max,
            dim,
            dr,
            omega,
            nodes,
            weights,
            coupling,
        }))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn coupling(&self) -> &[f64] {
        &self.coupling
    }

    /// Quadrature of real samples against omega r^{N-1} dr.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.n, "sample count does not match the grid");
        f.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }

    /// The tridiagonal coefficients of the radial Laplacian in flux form:
    /// (L u)_i = [g_i (u_{i+1} - u_i) - g_{i-1} (u_i - u_{i-1})] / (r_i^{N-1} dr^2),
    /// with a zero-flux inner face (even reflection across the origin) and a
    /// homogeneous Dirichlet ghost value beyond r_max.
    pub fn laplacian_stencil(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        for i in 0..n {
            let c = self.weights[i] / (self.omega * self.dr); // r_i^{N-1}
            let scale = 1.0 / (c * self.dr * self.dr);
            let g_lo = if i == 0 { 0.0 } else { self.coupling[i - 1] };
            let g_hi = self.coupling[i];
            if i > 0 {
                sub[i] = g_lo * scale;
            }
            if i + 1 < n {
                sup[i] = g_hi * scale;
            }
            diag[i] = -(g_lo + g_hi) * scale;
        }
        (sub, diag, sup)
    }
}

/// Complex samples of a radial function on a shared grid.
#[derive(Debug, Clone)]
pub struct RadialField {
    pub grid: Arc<RadialGrid>,
    pub values: Vec<Complex64>,
}

impl RadialField {
    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); grid.n];
        Self { grid, values }
    }

    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self { grid, values }
    }

    pub fn from_real_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn same_grid(&self, other: &RadialField) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid)
            || (self.grid.n == other.grid.n
                && self.grid.r_max == other.grid.r_max
                && self.grid.dim == other.grid.dim)
    }

    /// Squared L^2 norm (the mass integrand).
    pub fn l2_norm_sq(&self) -> f64 {
        self.values
            .iter()
            .zip(self.grid.weights())
            .map(|(u, w)| u.norm_sqr() * w)
            .sum()
    }

    /// Squared gradient norm via the face differences; identical to
    /// <-Lu, u> for the flux-form Laplacian, hence nonnegative.
    pub fn grad_norm_sq(&self) -> f64 {
        let g = self.grid.coupling();
        let n = self.grid.n;
        let scale = self.grid.omega / self.grid.dr;
        let mut acc = 0.0;
        for i in 0..n - 1 {
            acc += g[i] * (self.values[i + 1] - self.values[i]).norm_sqr();
        }
        acc += g[n - 1] * self.values[n - 1].norm_sqr(); // Dirichlet wall
        acc * scale
    }

    /// Node-centered radial derivative: centered differences with the even
    /// reflection at the origin and the Dirichlet ghost at the wall.
    pub fn radial_derivative(&self) -> Vec<Complex64> {
        let n = self.grid.n;
        let two_dr = 2.0 * self.grid.dr;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let lo = if i == 0 { self.values[0] } else { self.values[i - 1] };
            let hi = if i + 1 == n {
                Complex64::new(0.0, 0.0)
            } else {
                self.values[i + 1]
            };
            out.push((hi - lo) / two_dr);
        }
        out
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|u| u.norm()).fold(0.0, f64::max)
    }
}

/// Apply the radial Laplacian u'' + (N-1) u'/r in its conservative form.
pub fn radial_laplacian(u: &RadialField) -> RadialField {
    let grid = &u.grid;
    let g = grid.coupling();
    let n = grid.n;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let c = grid.weights()[i] / (grid.omega * grid.dr);
        let scale = 1.0 / (c * grid.dr * grid.dr);
        let flux_hi = if i + 1 < n {
            g[i] * (u.values[i + 1] - u.values[i])
        } else {
            g[i] * (-u.values[i])
        };
        let flux_lo = if i == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            g[i - 1] * (u.values[i] - u.values[i - 1])
        };
        out.push((flux_hi - flux_lo) * scale);
    }
    RadialField {
        grid: Arc::clone(grid),
        values: out,
    }
}

/// Norm report for a field under given model parameters.
#[derive(Debug, Clone, Copy)]
pub struct NormReport {
    pub l2: f64,
    pub grad_l2: f64,
    pub h1: f64,
    /// L^{p+1} norm.
    pub lp1: f64,
    /// The weighted integral \int r^{-b} |u|^{p+1} (not a norm; enters the energy).
    pub weighted_lp1: f64,
    /// Sup norm over the exterior region {r >= tail_radius}.
    pub sup_tail: f64,
}

/// All norms used by the diagnostics, plus the exterior sup-norm beyond
/// `tail_radius`.
pub fn norms(u: &RadialField, params: &ModelParams, tail_radius: f64) -> NormReport {
    let grid = &u.grid;
    let p1 = params.p + 1.0;
    let mut l2_sq = 0.0;
    let mut lp1_int = 0.0;
    let mut weighted = 0.0;
    let mut sup_tail = 0.0;
    for ((u, &w), &r) in u.values.iter().zip(grid.weights()).zip(grid.nodes()) {
        let amp = u.norm();
        l2_sq += amp * amp * w;
        let amp_p1 = amp.powf(p1);
        lp1_int += amp_p1 * w;
        weighted += amp_p1 * r.powf(-params.b) * w;
        if r >= tail_radius && amp > sup_tail {
            sup_tail = amp;
        }
    }
    let grad_sq = u.grad_norm_sq();
    NormReport {
        l2: l2_sq.sqrt(),
        grad_l2: grad_sq.sqrt(),
        h1: (l2_sq + grad_sq).sqrt(),
        lp1: lp1_int.powf(1.0 / p1),
        weighted_lp1: weighted,
        sup_tail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn surface_measure_values() {
        let g3 = RadialGrid::new(64, 10.0, 3.0).unwrap();
        assert!((g3.omega - 4.0 * PI).abs() < 1e-12);
        let g4 = RadialGrid::new(64, 10.0, 4.0).unwrap();
        assert!((g4.omega - 2.0 * PI * PI).abs() < 1e-12);
        // N = 2.5: 2 pi^{1.25} / Gamma(1.25), evaluated independently
        let g25 = RadialGrid::new(64, 10.0, 2.5).unwrap();
        assert!((g25.omega - 9.228_821_642_162_403).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(RadialGrid::new(8, 10.0, 3.0).is_err());
        assert!(RadialGrid::new(64, -1.0, 3.0).is_err());
        assert!(RadialGrid::new(64, 10.0, 2.0).is_err());
    }

    #[test]
    fn ball_volume_and_linearity() {
        let grid = RadialGrid::new(4096, 40.0, 3.0).unwrap();
        let ones = vec![1.0; grid.n];
        let vol = grid.integrate(&ones);
        let exact = grid.omega * grid.r_max.powf(3.0) / 3.0;
        assert!((vol - exact).abs() / exact < 1e-7);
        // indicator of r <= 1: staircase error is O(dr)
        let ind: Vec<f64> = grid.nodes().iter().map(|&r| f64::from(r <= 1.0)).collect();
        let ball = grid.integrate(&ind);
        assert!((ball - 4.0 * PI / 3.0).abs() < 4.0 * PI * grid.dr);
        assert!(grid.integrate(&vec![0.0; grid.n]).abs() == 0.0);
    }

    #[test]
    fn quadrature_is_second_order_on_aligned_balls() {
        // integrate 1 over r <= r_max/2 (a cell-aligned radius) at two
        // resolutions; the error must drop by 4 within 20%.
        let err_at = |n: usize| {
            let grid = RadialGrid::new(n, 20.0, 3.5).unwrap();
            let half = grid.r_max / 2.0;
            let ind: Vec<f64> = grid.nodes().iter().map(|&r| f64::from(r < half)).collect();
            let exact = grid.omega * half.powf(3.5) / 3.5;
            (grid.integrate(&ind) - exact).abs()
        };
        let ratio = err_at(256) / err_at(512);
        assert!((ratio - 4.0).abs() < 0.8, "ratio = {ratio}");
    }

    #[test]
    fn gaussian_mass_matches_closed_form() {
        let grid = RadialGrid::new(4096, 16.0, 3.0).unwrap();
        let u = RadialField::from_real_fn(grid, |r| (-r * r / 2.0).exp());
        assert!((u.l2_norm_sq() - PI.powf(1.5)).abs() < 1e-6);
    }

    #[test]
    fn gaussian_gradient_matches_closed_form() {
        let grid = RadialGrid::new(4096, 16.0, 3.0).unwrap();
        let u = RadialField::from_real_fn(grid, |r| (-r * r / 2.0).exp());
        let exact = 1.5 * PI.powf(1.5);
        assert!((u.grad_norm_sq() - exact).abs() / exact < 1e-5);
    }

    #[test]
    fn norms_report_gaussian_values() {
        let grid = RadialGrid::new(4096, 16.0, 3.0).unwrap();
        let params = ModelParams::new(3.0, 0.0, 3.0).unwrap();
        let u = RadialField::from_real_fn(grid, |r| (-r * r / 2.0).exp());
        let rep = norms(&u, &params, 1.0);
        // \int |u|^4 = pi^{3/2} / (2 sqrt 2)
        let quartic = PI.powf(1.5) / (2.0 * 2.0_f64.sqrt());
        assert!((rep.lp1.powi(4) - quartic).abs() < 1e-6);
        assert!((rep.weighted_lp1 - quartic).abs() < 1e-6);
        assert!((rep.h1.powi(2) - (PI.powf(1.5) + 1.5 * PI.powf(1.5))).abs() < 1e-4);
        // sup over {r >= 1} sits at the first node past 1, half a cell off
        assert!((rep.sup_tail - (-0.5_f64).exp()).abs() < 2e-3);
        let zero = RadialField::zeros(u.grid.clone());
        let zrep = norms(&zero, &params, 1.0);
        assert_eq!(zrep.l2, 0.0);
        assert_eq!(zrep.weighted_lp1, 0.0);
    }

    #[test]
    fn laplacian_exact_on_quadratics() {
        let grid = RadialGrid::new(512, 10.0, 2.7).unwrap();
        let u = RadialField::from_real_fn(grid, |r| r * r);
        let lap = radial_laplacian(&u);
        for i in 0..u.grid.n - 1 {
            assert!(
                (lap.values[i].re - 2.0 * 2.7).abs() < 1e-9,
                "cell {i}: {}",
                lap.values[i].re
            );
        }
        // constants are annihilated away from the Dirichlet wall
        let c = RadialField::from_real_fn(u.grid.clone(), |_| 1.0);
        let lc = radial_laplacian(&c);
        for i in 0..u.grid.n - 1 {
            assert!(lc.values[i].norm() < 1e-12);
        }
    }

    #[test]
    fn laplacian_second_order_on_gaussian() {
        // error against (r^2 - 3) e^{-r^2/2} in the weighted L^2 norm drops by
        // ~4 when dr is halved
        let err_at = |n: usize| {
            let grid = RadialGrid::new(n, 16.0, 3.0).unwrap();
            let u = RadialField::from_real_fn(grid, |r| (-r * r / 2.0).exp());
            let lap = radial_laplacian(&u);
            let mut acc = 0.0;
            for (i, &r) in u.grid.nodes().iter().enumerate() {
                let exact = (r * r - 3.0) * (-r * r / 2.0).exp();
                acc += (lap.values[i].re - exact).powi(2) * u.grid.weights()[i];
            }
            acc.sqrt()
        };
        let (e1, e2) = (err_at(1024), err_at(2048));
        assert!(e2 < 1e-4, "coarse error {e2}");
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.8, "ratio = {ratio}");
    }

    #[test]
    fn laplacian_self_adjoint_for_rough_fields() {
        let grid = RadialGrid::new(1024, 20.0, 2.5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut mk = || {
            let mut f = RadialField::zeros(grid.clone());
            for i in grid.n / 8..(7 * grid.n) / 8 {
                f.values[i] = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
            f
        };
        let u = mk();
        let v = mk();
        let lu = radial_laplacian(&u);
        let lv = radial_laplacian(&v);
        let dot = |a: &RadialField, b: &RadialField| -> Complex64 {
            a.values
                .iter()
                .zip(&b.values)
                .zip(grid.weights())
                .map(|((x, y), &w)| x * y.conj() * w)
                .sum()
        };
        let defect = (dot(&lu, &v) - dot(&u, &lv)).norm();
        let bound = 1e-10 * u.l2_norm_sq().sqrt() * v.l2_norm_sq().sqrt();
        assert!(defect <= bound, "defect {defect} vs bound {bound}");
    }

    #[test]
    fn weighted_integral_finite_for_singular_coupling() {
        // r^{-b} |u|^{p+1} stays integrable for b < 2 on the cell-centered grid
        let grid = RadialGrid::new(256, 10.0, 4.5).unwrap();
        let params = ModelParams::new(4.5, 1.9, 1.9).unwrap();
        let u = RadialField::from_real_fn(grid, |r| (-r).exp());
        let rep = norms(&u, &params, 1.0);
        assert!(rep.weighted_lp1.is_finite() && rep.weighted_lp1 > 0.0);
    }
}
