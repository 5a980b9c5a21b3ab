//! Ground states of the stationary equation Δφ - φ + r^{-b} φ^p = 0.
//!
//! The primary solver shoots on the radial ODE
//!     φ'' + (N-1) φ'/r = φ - r^{-b} |φ|^{p-1} φ,   φ'(0) = 0,
//! bisecting the central amplitude between "solution crosses zero" and
//! "solution stays positive". The returned profile is glued from the forward
//! shot and a backward integration of the decaying tail (started from the
//! modified-Bessel asymptotics at r_max), which keeps the seam free of the
//! growing-mode contamination that forward shooting accumulates.
//!
//! A second, independent route — a renormalization fixed point iterating
//! φ <- s^{p/(p-1)} (1 - Δ)^{-1}[r^{-b} φ^p] — cross-checks the profile.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::exponents::ModelParams;
use crate::grid::{norms, RadialField, RadialGrid};
use crate::tridiag;

/// Computed ground state with its derived threshold quantities.
#[derive(Debug, Clone)]
pub struct GroundState {
    /// The profile Q (real, positive) sampled on the grid nodes.
    pub q: RadialField,
    /// M[Q] = ∫ Q^2.
    pub mass: f64,
    /// E[Q] = (1/2)∫|∇Q|^2 - (1/(p+1))∫ r^{-b} Q^{p+1}.
    pub energy: f64,
    /// ||∇Q||_{L^2}.
    pub grad_norm: f64,
    /// M[Q]^{(1-s_c)/s_c} E[Q].
    pub me_threshold: f64,
    /// ||Q||_{L^2}^{(1-s_c)/s_c} ||∇Q||_{L^2}.
    pub grad_threshold: f64,
    /// Central amplitude Q(0+) found by the bisection.
    pub shoot_value: f64,
    /// Weighted L^2 norm of the per-cell flux defect of the stationary equation.
    pub residual: f64,
}

const AMP_LO: f64 = 1e-3;
const AMP_HI: f64 = 1e3;
/// Fraction of the central amplitude at which the forward shot hands over to
/// the backward tail integration.
const TAIL_SWITCH: f64 = 3e-5;
/// Local error target of the embedded step-doubling RK4.
const ODE_TOL: f64 = 1e-13;

const GAUSS_X: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GAUSS_W: [f64; 4] = [
    0.347_854_845_137_453_86,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_86,
];

/// Near-origin expansion φ = φ0 (1 + a1 r^{2-b} + a2 r^2 + a3 r^{4-2b}).
/// The coefficients balance the leading orders of the ODE; the r^0 matching
/// picks up extra terms when the singular ladder collides with r^2 (b = 1) or
/// with the constant term (b = 0).
struct SeriesStart {
    amp: f64,
    a1: f64,
    a2: f64,
    a3: f64,
    b: f64,
}

impl SeriesStart {
    fn new(params: &ModelParams, amp: f64) -> Self {
        let (n, b, p) = (params.dim, params.b, params.p);
        let cp = amp.powf(p - 1.0);
        let (a1, a2, a3);
        if b == 0.0 {
            a1 = 0.0;
            a2 = (1.0 - cp) / (2.0 * n);
            a3 = 0.0;
        } else {
            a1 = -cp / ((2.0 - b) * (n - b));
            if (b - 1.0).abs() < 1e-12 {
                a2 = (1.0 - p * cp * a1) / (2.0 * n);
                a3 = 0.0;
            } else {
                a2 = 1.0 / (2.0 * n);
                a3 = if b > 1.0 {
                    let e = 4.0 - 2.0 * b;
                    -p * cp * a1 / (e * (e + n - 2.0))
                } else {
                    0.0
                };
            }
        }
        Self { amp, a1, a2, a3, b }
    }

    fn eval(&self, r: f64) -> (f64, f64) {
        let b = self.b;
        let phi = self.amp
            * (1.0 + self.a1 * r.powf(2.0 - b) + self.a2 * r * r
                + self.a3 * r.powf(4.0 - 2.0 * b));
        let dphi = self.amp
            * (self.a1 * (2.0 - b) * r.powf(1.0 - b)
                + 2.0 * self.a2 * r
                + self.a3 * (4.0 - 2.0 * b) * r.powf(3.0 - 2.0 * b));
        (phi, dphi)
    }

    /// ∫_0^{rs} (φ - r^{-b} φ^p) r^{N-1} dr to the same truncation order.
    fn defect_integral(&self, params: &ModelParams, rs: f64) -> f64 {
        let (n, b, p) = (params.dim, params.b, params.p);
        let amp_p = self.amp.powf(p);
        let lin = self.amp
            * (rs.powf(n) / n
                + self.a1 * rs.powf(n + 2.0 - b) / (n + 2.0 - b)
                + self.a2 * rs.powf(n + 2.0) / (n + 2.0));
        let nl = amp_p
            * (rs.powf(n - b) / (n - b)
                + p * self.a1 * rs.powf(n + 2.0 - 2.0 * b) / (n + 2.0 - 2.0 * b)
                + p * self.a2 * rs.powf(n + 2.0 - b) / (n + 2.0 - b));
        lin - nl
    }
}

struct Shooter<'a> {
    params: &'a ModelParams,
    r_max: f64,
}

#[derive(Clone, Copy, PartialEq)]
enum Fate {
    Crossed,
    Positive,
}

impl<'a> Shooter<'a> {
    fn rhs(&self, r: f64, phi: f64, dphi: f64) -> (f64, f64) {
        let p = self.params;
        let nl = r.powf(-p.b) * phi.abs().powf(p.p - 1.0) * phi;
        (dphi, phi - nl - (p.dim - 1.0) * dphi / r)
    }

    fn rk4(&self, r: f64, y: (f64, f64), h: f64) -> (f64, f64) {
        let k1 = self.rhs(r, y.0, y.1);
        let k2 = self.rhs(r + 0.5 * h, y.0 + 0.5 * h * k1.0, y.1 + 0.5 * h * k1.1);
        let k3 = self.rhs(r + 0.5 * h, y.0 + 0.5 * h * k2.0, y.1 + 0.5 * h * k2.1);
        let k4 = self.rhs(r + h, y.0 + h * k3.0, y.1 + h * k3.1);
        (
            y.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            y.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        )
    }

    /// One accepted step of step-doubling RK4 with local extrapolation.
    /// Returns the new state and the step actually taken; adjusts `h` in place.
    fn controlled_step(&self, r: f64, y: (f64, f64), h: &mut f64, scale: f64) -> ((f64, f64), f64) {
        loop {
            let h0 = *h;
            let big = self.rk4(r, y, h0);
            let half = self.rk4(r, y, 0.5 * h0);
            let two = self.rk4(r + 0.5 * h0, half, 0.5 * h0);
            let err = ((big.0 - two.0).abs() + (big.1 - two.1).abs()) / 15.0;
            let tol = ODE_TOL * (y.0.abs() + y.1.abs() + scale);
            if err <= tol || h0.abs() < 1e-14 * (r.abs() + 1.0) {
                let refined = (
                    two.0 + (two.0 - big.0) / 15.0,
                    two.1 + (two.1 - big.1) / 15.0,
                );
                let grow = if err > 0.0 {
                    (tol / err).powf(0.2).clamp(0.5, 4.0)
                } else {
                    4.0
                };
                *h = h0 * 0.9 * grow;
                return (refined, h0);
            }
            *h = h0 * 0.9 * (tol / err).powf(0.2).max(0.1);
        }
    }

    /// March from (r0, y0) to r1 (either direction), landing exactly on each
    /// target radius in order and reporting the state there. `scale` sets the
    /// absolute floor of the error control.
    fn march(
        &self,
        r0: f64,
        y0: (f64, f64),
        r1: f64,
        scale: f64,
        targets: &[f64],
        mut on_target: impl FnMut(usize, (f64, f64)),
        mut stop: impl FnMut(f64, (f64, f64)) -> bool,
    ) -> (f64, (f64, f64)) {
        let dir = (r1 - r0).signum();
        let mut r = r0;
        let mut y = y0;
        let mut h = dir * 1e-3 * (r0.abs().max(1e-6));
        let mut next = 0usize;
        while (r1 - r) * dir > 1e-14 * r1.abs() {
            let mut cap = r1;
            if next < targets.len() {
                cap = targets[next];
            }
            if (cap - r) * dir <= 1e-14 * (r.abs() + 1.0) {
                // already at this target
                if next < targets.len() {
                    on_target(next, y);
                    next += 1;
                }
                continue;
            }
            if (r + h - cap) * dir > 0.0 {
                h = cap - r;
            }
            let (y_new, taken) = self.controlled_step(r, y, &mut h, scale);
            r += taken;
            y = y_new;
            if next < targets.len() && (r - targets[next]).abs() <= 1e-13 * (r.abs() + 1.0) {
                on_target(next, y);
                next += 1;
            }
            if stop(r, y) {
                break;
            }
        }
        (r, y)
    }

    /// Classify the shot at a given amplitude: does the solution cross zero?
    fn probe(&self, amp: f64, r_start: f64) -> Fate {
        let series = SeriesStart::new(self.params, amp);
        let y0 = series.eval(r_start);
        let cap = 1.5 * amp + 1.0;
        let mut fate = Fate::Positive;
        self.march(
            r_start,
            y0,
            self.r_max,
            amp,
            &[],
            |_, _| {},
            |_, y| {
                if y.0 <= 0.0 {
                    fate = Fate::Crossed;
                    true
                } else {
                    y.0 > cap && y.1 > 0.0
                }
            },
        );
        fate
    }
}

/// Decaying solution of the linearized tail equation u'' + (N-1)u'/r - u = 0,
/// from the large-r asymptotics of the modified Bessel function: two
/// correction orders beyond e^{-r} r^{-(N-1)/2}.
fn tail_asymptotic(dim: f64, r: f64) -> (f64, f64) {
    let m = (dim - 1.0) / 2.0;
    let nu2 = (dim - 2.0) * (dim - 2.0);
    let c1 = (nu2 - 1.0) / 8.0;
    let c2 = (nu2 - 1.0) * (nu2 - 9.0) / 128.0;
    let series = 1.0 + c1 / r + c2 / (r * r);
    let dseries = -c1 / (r * r) - 2.0 * c2 / (r * r * r);
    let base = (-r).exp() * r.powf(-m);
    let value = base * series;
    let deriv = base * (dseries - series * (1.0 + m / r));
    (value, deriv)
}

/// Storage for the final high-accuracy shot: values at nodes, derivatives at
/// faces, and values at the Gauss points of every cell.
struct Profile {
    nodes: Vec<f64>,
    dphi_face: Vec<f64>,
    phi_face: Vec<f64>,
    gauss: Vec<f64>,
    gauss_r: Vec<f64>,
}

enum TargetKind {
    Node(usize),
    Face(usize),
    Gauss(usize),
}

fn build_targets(grid: &RadialGrid, r_start: f64) -> (Vec<f64>, Vec<TargetKind>) {
    let n = grid.n;
    let dr = grid.dr;
    let mut entries: Vec<(f64, TargetKind)> = Vec::with_capacity(6 * n);
    for i in 0..n {
        entries.push(((i as f64 + 0.5) * dr, TargetKind::Node(i)));
    }
    for i in 1..=n {
        entries.push((i as f64 * dr, TargetKind::Face(i)));
    }
    for cell in 0..n {
        let lo = if cell == 0 { r_start } else { cell as f64 * dr };
        let hi = (cell + 1) as f64 * dr;
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for (j, &x) in GAUSS_X.iter().enumerate() {
            entries.push((mid + half * x, TargetKind::Gauss(4 * cell + j)));
        }
    }
    entries.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let radii = entries.iter().map(|e| e.0).collect();
    let kinds = entries.into_iter().map(|e| e.1).collect();
    (radii, kinds)
}

fn record(profile: &mut Profile, kind: &TargetKind, y: (f64, f64)) {
    match kind {
        TargetKind::Node(i) => profile.nodes[*i] = y.0,
        TargetKind::Face(i) => {
            profile.phi_face[*i] = y.0;
            profile.dphi_face[*i] = y.1;
        }
        TargetKind::Gauss(k) => profile.gauss[*k] = y.0,
    }
}

/// Shooting solver for the ground state.
///
/// The bisection runs until the amplitude bracket collapses to machine
/// precision, the profile is assembled from the forward shot glued to a
/// two-pass backward tail, and the residual is the weighted L^2 norm of the
/// per-cell defect of the integrated (flux) form of the equation. Errors with
/// `ResolutionTooCoarse` if that residual exceeds `tol * ||Q||`.
pub fn solve_ground_state(
    params: &ModelParams,
    grid: &Arc<RadialGrid>,
    tol: f64,
) -> Result<GroundState> {
    if !params.intercritical {
        return Err(CoreError::InvalidParameter(
            "ground-state solver requires intercritical parameters".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(CoreError::InvalidParameter("tol must be positive".into()));
    }
    let shooter = Shooter {
        params,
        r_max: grid.r_max,
    };
    let r_start = grid.dr / 128.0;

    // Bracket the critical amplitude on a geometric scan.
    let mut lo = AMP_LO;
    let mut fate_lo = shooter.probe(lo, r_start);
    let mut hi = lo;
    let mut bracket = None;
    while hi < AMP_HI {
        hi *= 1.25;
        let fate_hi = shooter.probe(hi, r_start);
        if fate_lo == Fate::Positive && fate_hi == Fate::Crossed {
            bracket = Some((lo, hi));
            break;
        }
        lo = hi;
        fate_lo = fate_hi;
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        CoreError::NoConvergence(format!(
            "no crossing/positive bracket in amplitudes [{AMP_LO}, {AMP_HI}]"
        ))
    })?;

    // Bisect to machine precision: the tail handover depends on it.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match shooter.probe(mid, r_start) {
            Fate::Crossed => hi = mid,
            Fate::Positive => lo = mid,
        }
    }
    let amp = 0.5 * (lo + hi);

    // Final forward pass with target landings, stopping at the tail handover.
    let n = grid.n;
    let mut profile = Profile {
        nodes: vec![0.0; n],
        dphi_face: vec![0.0; n + 1],
        phi_face: vec![0.0; n + 1],
        gauss: vec![0.0; 4 * n],
        gauss_r: vec![0.0; 4 * n],
    };
    let (radii, kinds) = build_targets(grid, r_start);
    for (k, kind) in kinds.iter().enumerate() {
        if let TargetKind::Gauss(g) = kind {
            profile.gauss_r[*g] = radii[k];
        }
    }
    let series = SeriesStart::new(params, amp);
    let y0 = series.eval(r_start);
    let switch_level = TAIL_SWITCH * amp;
    let mut last_face = 0usize;
    {
        let profile = &mut profile;
        let last_face = &mut last_face;
        shooter.march(
            r_start,
            y0,
            grid.r_max,
            amp,
            &radii,
            |k, y| {
                record(profile, &kinds[k], y);
                if let TargetKind::Face(i) = kinds[k] {
                    if y.0 > switch_level {
                        *last_face = i;
                    }
                }
            },
            |_, y| y.0 <= 0.0 || y.0 < switch_level || y.1 > 0.0,
        );
    }

    if last_face >= 1 && last_face + 1 < n {
        // Backward tail: two passes; the first calibrates the amplitude of the
        // asymptotic seed, the second records. Backward integration of the
        // decaying branch is stable, so the seed error only enters through the
        // (tiny) mismatch of the asymptotic series at r_max.
        let r_m = last_face as f64 * grid.dr;
        let phi_m = profile.phi_face[last_face];
        let (k_m, _) = tail_asymptotic(params.dim, r_m);
        let mut amp_tail = phi_m / k_m;
        let (k_max, dk_max) = tail_asymptotic(params.dim, grid.r_max);
        let (_, y_end) = shooter.march(
            grid.r_max,
            (amp_tail * k_max, amp_tail * dk_max),
            r_m,
            phi_m.abs(),
            &[],
            |_, _| {},
            |_, _| false,
        );
        amp_tail *= phi_m / y_end.0;

        let mut back_targets: Vec<(f64, usize)> = radii
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > r_m + 1e-13)
            .map(|(k, &r)| (r, k))
            .collect();
        back_targets.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        let back_radii: Vec<f64> = back_targets.iter().map(|t| t.0).collect();
        let profile = &mut profile;
        shooter.march(
            grid.r_max,
            (amp_tail * k_max, amp_tail * dk_max),
            r_m,
            phi_m.abs(),
            &back_radii,
            |k, y| record(profile, &kinds[back_targets[k].1], y),
            |_, _| false,
        );
    }

    // Per-cell flux defect of (r^{N-1} φ')' = r^{N-1}(φ - r^{-b} φ^p).
    let dim = params.dim;
    let dr = grid.dr;
    let mut resid_sq = 0.0;
    for cell in 0..n {
        let f_lo = cell as f64 * dr;
        let f_hi = (cell + 1) as f64 * dr;
        let flux_hi = f_hi.powf(dim - 1.0) * profile.dphi_face[cell + 1];
        let flux_lo = if cell == 0 {
            0.0
        } else {
            f_lo.powf(dim - 1.0) * profile.dphi_face[cell]
        };
        let lo = if cell == 0 { r_start } else { f_lo };
        let half = 0.5 * (f_hi - lo);
        let mut integral = if cell == 0 {
            series.defect_integral(params, r_start)
        } else {
            0.0
        };
        for j in 0..4 {
            let r = profile.gauss_r[4 * cell + j];
            let phi = profile.gauss[4 * cell + j];
            let nl = r.powf(-params.b) * phi.abs().powf(params.p - 1.0) * phi;
            integral += GAUSS_W[j] * half * (phi - nl) * r.powf(dim - 1.0);
        }
        let volume = (f_hi.powf(dim) - f_lo.powf(dim)) / dim;
        let rho = (flux_hi - flux_lo - integral) / volume;
        resid_sq += grid.omega * volume * rho * rho;
    }
    let residual = resid_sq.sqrt();

    let q = RadialField {
        grid: Arc::clone(grid),
        values: profile.nodes.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
    };
    let rep = norms(&q, params, grid.r_max);
    let mass = rep.l2 * rep.l2;
    let energy = 0.5 * rep.grad_l2 * rep.grad_l2 - rep.weighted_lp1 / (params.p + 1.0);
    let l2 = rep.l2;
    if residual > tol * l2 {
        return Err(CoreError::ResolutionTooCoarse {
            n,
            target: tol * l2,
            achieved: residual,
        });
    }
    let kappa = (1.0 - params.s_c) / params.s_c;
    Ok(GroundState {
        q,
        mass,
        energy,
        grad_norm: rep.grad_l2,
        me_threshold: mass.powf(kappa) * energy,
        grad_threshold: mass.powf(0.5 * kappa) * rep.grad_l2,
        shoot_value: amp,
        residual,
    })
}

/// Normalized residuals of the two integral identities obtained by pairing the
/// stationary equation with φ and with r ∂_r φ:
///   (i)  ∫|∇Q|^2 + ∫Q^2 - ∫ r^{-b} Q^{p+1} = 0,
///   (ii) (N-2)/2 ∫|∇Q|^2 + N/2 ∫Q^2 - (N-b)/(p+1) ∫ r^{-b} Q^{p+1} = 0.
pub fn pohozaev_residuals(gs: &GroundState, params: &ModelParams) -> (f64, f64) {
    pohozaev_of_field(&gs.q, params)
}

/// Same residuals for an arbitrary real field (used to confirm the identities
/// fail off the solution).
pub fn pohozaev_of_field(q: &RadialField, params: &ModelParams) -> (f64, f64) {
    let rep = norms(q, params, q.grid.r_max);
    let g = rep.grad_l2 * rep.grad_l2;
    let m = rep.l2 * rep.l2;
    let w = rep.weighted_lp1;
    let (n, b, p) = (params.dim, params.b, params.p);
    let first = (g + m - w) / g.max(m).max(w);
    let c1 = 0.5 * (n - 2.0);
    let c2 = 0.5 * n;
    let c3 = (n - b) / (p + 1.0);
    let second = (c1 * g + c2 * m - c3 * w) / (c1 * g).max(c2 * m).max(c3 * w);
    (first, second)
}

/// The two scale-invariant threshold quantities of the ground state.
pub fn threshold_constants(gs: &GroundState, params: &ModelParams) -> (f64, f64) {
    let kappa = (1.0 - params.s_c) / params.s_c;
    (
        gs.mass.powf(kappa) * gs.energy,
        gs.mass.powf(0.5 * kappa) * gs.grad_norm,
    )
}

/// Independent ground-state route: renormalized fixed-point iteration
///   φ_{k+1} = s_k^{p/(p-1)} (1 - Δ)^{-1}[r^{-b} φ_k^p],
///   s_k = <φ_k, (1-Δ) φ_k> / <φ_k, r^{-b} φ_k^p>,
/// on the same grid operator as the evolution code. Converges to the
/// discrete bound state; the shooting profile must agree with it.
pub fn renormalized_ground_state(
    params: &ModelParams,
    grid: &Arc<RadialGrid>,
    max_iter: usize,
) -> Result<RadialField> {
    let n = grid.n;
    let (sub_l, diag_l, sup_l) = grid.laplacian_stencil();
    let sub: Vec<f64> = sub_l.iter().map(|v| -v).collect();
    let diag: Vec<f64> = diag_l.iter().map(|v| 1.0 - v).collect();
    let sup: Vec<f64> = sup_l.iter().map(|v| -v).collect();

    let inv_rb: Vec<f64> = grid.nodes().iter().map(|&r| r.powf(-params.b)).collect();
    let mut phi: Vec<f64> = grid.nodes().iter().map(|&r| 2.0 * (-r * r).exp()).collect();
    let mut rhs = vec![0.0; n];
    let mut scratch = vec![0.0; n];

    for iter in 0..max_iter {
        for i in 0..n {
            rhs[i] = inv_rb[i] * phi[i].abs().powf(params.p - 1.0) * phi[i];
        }
        // <φ, (1-Δ)φ> = mass + grad^2 via the shared stencil
        let field = RadialField {
            grid: Arc::clone(grid),
            values: phi.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        };
        let num = field.l2_norm_sq() + field.grad_norm_sq();
        let den: f64 = phi
            .iter()
            .zip(&rhs)
            .zip(grid.weights())
            .map(|((p, f), w)| p * f * w)
            .sum();
        if den.abs() < 1e-300 {
            return Err(CoreError::NoConvergence(
                "renormalization denominator vanished".into(),
            ));
        }
        let s = num / den;
        tridiag::solve_real(&sub, &diag, &sup, &mut rhs, &mut scratch)?;
        let gamma = params.p / (params.p - 1.0);
        let factor = s.powf(gamma);
        let mut diff: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..n {
            let next = factor * rhs[i];
            diff = diff.max((next - phi[i]).abs());
            scale = scale.max(next.abs());
            phi[i] = next;
        }
        if (s - 1.0).abs() < 5e-14 && diff < 1e-12 * scale && iter > 4 {
            return Ok(RadialField {
                grid: Arc::clone(grid),
                values: phi.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            });
        }
    }
    Err(CoreError::NoConvergence(format!(
        "renormalization did not converge within {max_iter} iterations"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(n_dim: f64, b: f64, p: f64, n: usize, r_max: f64) -> (ModelParams, GroundState) {
        let params = ModelParams::new(n_dim, b, p).unwrap();
        let grid = RadialGrid::new(n, r_max, n_dim).unwrap();
        let gs = solve_ground_state(&params, &grid, 1e-8).unwrap();
        (params, gs)
    }

    #[test]
    fn homogeneous_cubic_profile() {
        let (params, gs) = solve(3.0, 0.0, 3.0, 2048, 20.0);
        // classical 3d cubic amplitude
        assert!(
            (gs.shoot_value - 2.2062).abs() < 2e-3,
            "Q(0) = {}",
            gs.shoot_value
        );
        assert!(gs.energy > 0.0);
        assert!(gs.residual <= 1e-8 * gs.mass.sqrt());
        // positive and nonincreasing
        let vals: Vec<f64> = gs.q.values.iter().map(|v| v.re).collect();
        assert!(vals.iter().all(|&v| v > 0.0));
        for w in vals.windows(2) {
            assert!(w[1] <= w[0] + 1e-12 * gs.shoot_value);
        }
        // exponential-decay proxy over the last decade of the grid
        let grid = &gs.q.grid;
        let i1 = (0.8 * grid.n as f64) as usize;
        let i2 = (0.9 * grid.n as f64) as usize;
        let rate = (vals[i1] / vals[i2]).ln() / (grid.nodes()[i2] - grid.nodes()[i1]);
        assert!(rate > 0.5, "tail decay rate {rate}");
        let (r1, r2) = pohozaev_residuals(&gs, &params);
        assert!(r1.abs() < 1e-3 && r2.abs() < 1e-3, "({r1}, {r2})");
    }

    #[test]
    fn pohozaev_fails_off_solution() {
        let (params, gs) = solve(3.0, 0.0, 3.0, 1024, 16.0);
        let mut doubled = gs.q.clone();
        for v in &mut doubled.values {
            *v *= 2.0;
        }
        let (r1, _) = pohozaev_of_field(&doubled, &params);
        assert!(r1.abs() > 1e-2);
    }

    #[test]
    fn pohozaev_residuals_shrink_with_resolution() {
        let params = ModelParams::new(3.0, 0.0, 3.0).unwrap();
        let res_at = |n: usize| {
            let grid = RadialGrid::new(n, 16.0, 3.0).unwrap();
            let gs = solve_ground_state(&params, &grid, 1e-8).unwrap();
            let (r1, r2) = pohozaev_residuals(&gs, &params);
            r1.abs().max(r2.abs())
        };
        let ratio = res_at(1024) / res_at(2048);
        assert!(ratio > 2.5 && ratio < 5.5, "ratio {ratio}");
    }

    #[test]
    fn singular_coupling_profile() {
        let (params, gs) = solve(3.0, 1.0, 2.0, 2048, 20.0);
        assert!(gs.energy > 0.0);
        assert!(gs.residual <= 1e-8 * gs.mass.sqrt());
        assert!(gs.q.values.iter().all(|v| v.re > 0.0));
        let (r1, r2) = pohozaev_residuals(&gs, &params);
        assert!(r1.abs() < 1e-3 && r2.abs() < 1e-3, "({r1}, {r2})");
        let _ = params;
    }

    #[test]
    fn threshold_scaling_algebra() {
        let (params, gs) = solve(3.0, 1.0, 2.0, 1024, 16.0);
        let (me, grad) = threshold_constants(&gs, &params);
        assert!(me > 0.0 && grad > 0.0);
        // u0 = c Q has gradient quantity c^{1/s_c} times the threshold
        let c: f64 = 0.5;
        let mut scaled = gs.q.clone();
        for v in &mut scaled.values {
            *v *= c;
        }
        let rep = norms(&scaled, &params, scaled.grid.r_max);
        let kappa = (1.0 - params.s_c) / params.s_c;
        let val = (rep.l2 * rep.l2).powf(0.5 * kappa) * rep.grad_l2;
        let expected = c.powf(1.0 / params.s_c) * grad;
        assert!((val - expected).abs() < 1e-10 * grad.max(1.0));
    }

    #[test]
    fn renormalization_agrees_with_shooting() {
        let params = ModelParams::new(3.0, 0.0, 3.0).unwrap();
        let grid = RadialGrid::new(2048, 20.0, 3.0).unwrap();
        let gs = solve_ground_state(&params, &grid, 1e-8).unwrap();
        let fixed = renormalized_ground_state(&params, &grid, 5000).unwrap();
        let mut diff: f64 = 0.0;
        for (a, b) in gs.q.values.iter().zip(&fixed.values) {
            diff = diff.max((a.re - b.re).abs());
        }
        assert!(diff / gs.shoot_value < 1e-3, "L-inf gap {diff}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let grid = RadialGrid::new(256, 16.0, 4.0).unwrap();
        let non_intercritical = ModelParams::new(4.0, 1.0, 2.0).unwrap();
        assert!(solve_ground_state(&non_intercritical, &grid, 1e-8).is_err());
        let params = ModelParams::new(4.0, 1.0, 2.2).unwrap();
        assert!(solve_ground_state(&params, &grid, 0.0).is_err());
    }
}

/// Temporary diagnostic hook.
pub fn debug_probe(params: &ModelParams, grid: &Arc<RadialGrid>, amp: f64) -> bool {
    let shooter = Shooter { params, r_max: grid.r_max };
    matches!(shooter.probe(amp, grid.dr / 128.0), Fate::Crossed)
}
