//! Exponent arithmetic for the radial INLS model `i u_t + Δu + |x|^{-b}|u|^{p-1} u = 0`:
//! the critical scaling index, admissible space-time exponent pairs, the
//! inhomogeneous Hölder exponent families, and the constants entering the
//! scattering criterion. Everything here is pure arithmetic on (N, b, p).

use crate::error::{CoreError, Result};

/// Model triple (N, b, p) together with the derived indices and the small
/// apertures used by the admissible-range bookkeeping.
///
/// Invariants enforced at construction: `N > 2`, `0 <= b < min(N/2, 2)`,
/// `p > 1`, `0 <= theta < p - 1`, `delta > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Spatial dimension, real-valued (the radial reduction makes it a parameter).
    pub dim: f64,
    /// Decay exponent of the coupling |x|^{-b}.
    pub b: f64,
    /// Nonlinearity power.
    pub p: f64,
    /// Critical scaling index s_c = N/2 - (2-b)/(p-1).
    pub s_c: f64,
    /// Critical Sobolev exponent 2N/(N-2).
    pub p_star: f64,
    /// Small interpolation exponent of the inhomogeneous Hölder estimates
    /// (zero when b = 0).
    pub theta: f64,
    /// Small aperture by which open-range memberships are tightened.
    pub delta: f64,
    /// True iff 1 + (4-2b)/N < p < 1 + (4-2b)/(N-2).
    pub intercritical: bool,
}

const DEFAULT_DELTA: f64 = 0.05;
const DEFAULT_THETA: f64 = 1e-3;

impl ModelParams {
    /// Build params with the default apertures (delta = 0.05; theta = 0 for
    /// b = 0 and 1e-3 otherwise).
    pub fn new(dim: f64, b: f64, p: f64) -> Result<Self> {
        let theta = if b == 0.0 {
            0.0
        } else {
            DEFAULT_THETA.min(0.5 * (p - 1.0))
        };
        Self::with_apertures(dim, b, p, DEFAULT_DELTA, theta)
    }

    /// Build params with explicit apertures.
    pub fn with_apertures(dim: f64, b: f64, p: f64, delta: f64, theta: f64) -> Result<Self> {
        if !dim.is_finite() || dim <= 2.0 {
            return Err(CoreError::InvalidParameter(format!(
                "dimension N = {dim} must satisfy N > 2"
            )));
        }
        if !b.is_finite() || b < 0.0 || b >= (dim / 2.0).min(2.0) {
            return Err(CoreError::InvalidParameter(format!(
                "decay exponent b = {b} must satisfy 0 <= b < min(N/2, 2)"
            )));
        }
        if !p.is_finite() || p <= 1.0 {
            return Err(CoreError::InvalidParameter(format!(
                "nonlinearity power p = {p} must exceed 1"
            )));
        }
        if !(delta > 0.0) || delta >= 1.0 {
            return Err(CoreError::InvalidParameter(format!(
                "aperture delta = {delta} must lie in (0, 1)"
            )));
        }
        if theta < 0.0 || theta >= p - 1.0 {
            return Err(CoreError::InvalidParameter(format!(
                "interpolation exponent theta = {theta} must satisfy 0 <= theta < p - 1"
            )));
        }
        let s_c = critical_index(dim, b, p)?;
        let lo = 1.0 + (4.0 - 2.0 * b) / dim;
        let hi = 1.0 + (4.0 - 2.0 * b) / (dim - 2.0);
        Ok(Self {
            dim,
            b,
            p,
            s_c,
            p_star: 2.0 * dim / (dim - 2.0),
            theta,
            delta,
            intercritical: lo < p && p < hi,
        })
    }

    /// Intercritical test via the explicit double inequality on p. Agrees with
    /// `0 < s_c < 1` to machine precision.
    pub fn intercritical_check(&self) -> bool {
        let lo = 1.0 + (4.0 - 2.0 * self.b) / self.dim;
        let hi = 1.0 + (4.0 - 2.0 * self.b) / (self.dim - 2.0);
        lo < self.p && self.p < hi
    }

    fn require_intercritical(&self) -> Result<()> {
        if !self.intercritical {
            return Err(CoreError::InvalidParameter(format!(
                "(N, b, p) = ({}, {}, {}) is not intercritical (s_c = {})",
                self.dim, self.b, self.p, self.s_c
            )));
        }
        Ok(())
    }
}

/// Critical scaling index s_c = N/2 - (2-b)/(p-1).
pub fn critical_index(dim: f64, b: f64, p: f64) -> Result<f64> {
    if p <= 1.0 {
        return Err(CoreError::InvalidParameter(format!(
            "critical index undefined for p = {p} <= 1"
        )));
    }
    Ok(dim / 2.0 - (2.0 - b) / (p - 1.0))
}

/// Dimension-dependent upper bound on b below which the local theory is known:
/// N/3 for N <= 3 and 2 otherwise.
pub fn b_star(dim: f64) -> f64 {
    if dim <= 3.0 {
        dim / 3.0
    } else {
        2.0
    }
}

/// The scaling relation defect 2/q - (N/2 - N/r - s), with 1/infinity = 0.
/// A pair is admissible at regularity s exactly when the defect vanishes.
pub fn admissibility_defect(q: f64, r: f64, s: f64, dim: f64) -> Result<f64> {
    if q == 2.0 && r.is_infinite() && dim == 2.0 {
        return Err(CoreError::InvalidParameter(
            "the pair (q, r, N) = (2, inf, 2) is excluded".into(),
        ));
    }
    if q <= 0.0 || r <= 0.0 {
        return Err(CoreError::InvalidParameter(format!(
            "exponents must be positive, got (q, r) = ({q}, {r})"
        )));
    }
    Ok(2.0 / q - dim / 2.0 + dim / r + s)
}

/// A space-time exponent pair tagged with its regularity index and the stored
/// scaling defect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub defect: f64,
}

impl ExponentPair {
    pub fn new(q: f64, r: f64, s: f64, dim: f64) -> Result<Self> {
        let defect = admissibility_defect(q, r, s, dim)?;
        Ok(Self { q, r, s, defect })
    }

    /// Membership in the admissible family at regularity `s`, with the open
    /// range bounds tightened by the aperture `delta`:
    /// for s = 0 the range is 2 + delta <= r <= p* - delta, and for s != 0 the
    /// bounds 2N/(N - 2|s|) and 2N/(N-2) are tightened by delta on both sides.
    /// Requires the scaling defect to vanish (within `tol`).
    pub fn in_admissible_range(&self, dim: f64, delta: f64, tol: f64) -> bool {
        if self.defect.abs() > tol {
            return false;
        }
        let p_star = 2.0 * dim / (dim - 2.0);
        let r_lo = if self.s == 0.0 {
            2.0 + delta
        } else {
            2.0 * dim / (dim - 2.0 * self.s.abs()) + delta
        };
        let r_hi = p_star - delta;
        if !(r_lo <= self.r && self.r <= r_hi) {
            return false;
        }
        if self.s > 0.0 {
            // time exponent range quantified by the same aperture
            self.q > 2.0 / (1.0 - self.s) && self.q <= 1.0 / delta
        } else {
            self.q >= 1.0
        }
    }
}

/// The seven exponents of the inhomogeneous Hölder estimates.
///
/// The hat/tilde family pivots on the space exponent `r_hat`; the bar family
/// pivots on `r_bar` and serves the gradient estimate. All five derived pairs
/// satisfy their scaling relations exactly:
/// (q_hat, r_hat) at s = 0, (a_hat, r_hat) at s = s_c, (a_tilde, r_hat) at
/// s = -s_c, (q_bar, r_bar) at s = 0, (a_bar, r_bar) at s = s_c.
#[derive(Debug, Clone, Copy)]
pub struct GuzmanExponents {
    pub q_hat: f64,
    pub r_hat: f64,
    pub a_tilde: f64,
    pub a_hat: f64,
    pub q_bar: f64,
    pub r_bar: f64,
    pub a_bar: f64,
}

/// Compute the seven exponents from (N, b, p, theta).
///
/// Closed forms; the numerators of q_hat and r_hat carry the factor
/// (p + 1 - theta) so that all admissibility relations and the Hölder time
/// splittings
///   1/a_tilde' = (p - theta)/a_hat,
///   1/q_hat'   = (p - 1 - theta)/a_hat + 1/q_hat,
///   1/2        = (p - 1 - theta)/a_bar + 1/q_bar
/// hold identically in theta. At theta = 0 they reduce to the familiar
/// homogeneous-case values.
pub fn guzman_exponents(params: &ModelParams) -> Result<GuzmanExponents> {
    params.require_intercritical()?;
    let (n, b, p, th) = (params.dim, params.b, params.p, params.theta);

    let d_hat_q = (p - 1.0) * (n * (p - 1.0) + 2.0 * b) - th * (n * (p - 1.0) - 4.0 + 2.0 * b);
    let d_hat_r = (p - 1.0) * (n - b) - th * (2.0 - b);
    let d_tilde =
        (p - 1.0) * (n * (p - th) - 2.0 + 2.0 * b) - (4.0 - 2.0 * b) * (1.0 - th);
    let d_energy = 4.0 - 2.0 * b - (n - 2.0) * (p - 1.0);
    let d_bar_q =
        (p - 1.0) * (n * (p - 1.0) + 2.0 * b - 2.0) - th * (n * (p - 1.0) - 4.0 + 2.0 * b);
    let d_bar_r = (p - 1.0) * (n + 2.0 - 2.0 * b) - th * (4.0 - 2.0 * b);

    for (name, d) in [
        ("q_hat", d_hat_q),
        ("r_hat", d_hat_r),
        ("a_tilde", d_tilde),
        ("a_hat", d_energy),
        ("q_bar", d_bar_q),
        ("r_bar", d_bar_r),
    ] {
        if d.abs() < 1e-12 {
            return Err(CoreError::InvalidParameter(format!(
                "denominator of {name} vanishes for (N, b, p, theta) = ({n}, {b}, {p}, {th})"
            )));
        }
    }

    Ok(GuzmanExponents {
        q_hat: 4.0 * (p - 1.0) * (p + 1.0 - th) / d_hat_q,
        r_hat: n * (p - 1.0) * (p + 1.0 - th) / d_hat_r,
        a_tilde: 2.0 * (p - 1.0) * (p + 1.0 - th) / d_tilde,
        a_hat: 2.0 * (p - 1.0) * (p + 1.0 - th) / d_energy,
        q_bar: 4.0 * (p - 1.0) * (p - th) / d_bar_q,
        r_bar: 2.0 * n * (p - 1.0) * (p - th) / d_bar_r,
        a_bar: 4.0 * (p - 1.0) * (p - th) / d_energy,
    })
}

impl GuzmanExponents {
    /// The five pairs together with their regularity indices and defects.
    pub fn admissible_pairs(&self, params: &ModelParams) -> Result<[ExponentPair; 5]> {
        let n = params.dim;
        let sc = params.s_c;
        Ok([
            ExponentPair::new(self.q_hat, self.r_hat, 0.0, n)?,
            ExponentPair::new(self.a_hat, self.r_hat, sc, n)?,
            ExponentPair::new(self.a_tilde, self.r_hat, -sc, n)?,
            ExponentPair::new(self.q_bar, self.r_bar, 0.0, n)?,
            ExponentPair::new(self.a_bar, self.r_bar, sc, n)?,
        ])
    }
}

/// The constants (alpha, gamma) controlling the epsilon-power gained by the
/// scattering criterion:
///   alpha = delta (2 + delta) / ((p* - delta)(p* - 2)),
///   gamma = min{ delta (p - theta) / ((p* - delta)(p* - 2)), alpha (N - 2)/4 }.
/// Both are strictly positive for valid parameters.
pub fn scattering_constants(params: &ModelParams) -> (f64, f64) {
    let (n, p_star, d, th) = (params.dim, params.p_star, params.delta, params.theta);
    let denom = (p_star - d) * (p_star - 2.0);
    let alpha = d * (2.0 + d) / denom;
    let gamma = (d * (params.p - th) / denom).min(alpha * (n - 2.0) / 4.0);
    (alpha, gamma)
}

/// The L^2-admissible pair (c, d) used to interpolate the distant-past Duhamel
/// term: given (q, r) admissible at s_c with q > 2/(1 - s_c),
///   1/c = (1/(1-s_c)) [1/q - delta s_c],
///   1/d = (1/(1-s_c)) [1/r - s_c (N - 2 - 4 delta)/(2N)].
pub fn distant_past_pair(q: f64, r: f64, params: &ModelParams) -> Result<ExponentPair> {
    params.require_intercritical()?;
    let sc = params.s_c;
    let delta = params.delta;
    let input = ExponentPair::new(q, r, sc, params.dim)?;
    if input.defect.abs() > 1e-9 {
        return Err(CoreError::InvalidParameter(format!(
            "(q, r) = ({q}, {r}) is not admissible at s_c = {sc} (defect {:.3e})",
            input.defect
        )));
    }
    if q <= 2.0 / (1.0 - sc) {
        return Err(CoreError::InvalidParameter(format!(
            "time exponent q = {q} must exceed 2/(1 - s_c) = {}",
            2.0 / (1.0 - sc)
        )));
    }
    let c_inv = (1.0 / (1.0 - sc)) * (1.0 / q - delta * sc);
    let d_inv =
        (1.0 / (1.0 - sc)) * (1.0 / r - sc * (params.dim - 2.0 - 4.0 * delta) / (2.0 * params.dim));
    let pair = ExponentPair::new(1.0 / c_inv, 1.0 / d_inv, 0.0, params.dim)?;
    if !(pair.q > 2.0 && pair.q.is_finite()) {
        return Err(CoreError::InvalidParameter(format!(
            "derived pair has c = {} outside (2, inf)",
            pair.q
        )));
    }
    Ok(pair)
}
