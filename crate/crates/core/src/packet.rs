//! Single-particle kinematics on the non-commutative plane.
//!
//! The plane carries [x1, x2] = i theta eps_12 with eps_12 = +1. A Gaussian
//! packet of momentum spread alpha centered at position `a` with mean
//! momentum p0/2 has the 4x4 variance matrix of [`single_particle_nc_variance`]
//! in the basis (x1, x2, p1, p2); the linear map [`m_matrix`] re-expresses it
//! in commuting observables x_i = xbar_i + (theta/2) eps_ik p_k.

use crate::basis::BasisDescriptor;
use crate::error::{CoreError, Result};
use crate::symplectic::{partial_transpose, symplectic_spectrum, VarianceMatrix};
use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

/// Levi-Civita alternating array with eps_12 = +1, as a matrix.
pub fn epsilon() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Non-commutative plane parameter (units of length^2); theta = 0 is the
/// commutative plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NCPlaneParams {
    pub theta: f64,
}

impl NCPlaneParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta >= 0.0) {
            return Err(CoreError::InvalidParameter(format!("theta must be >= 0, got {theta}")));
        }
        Ok(Self { theta })
    }
}

/// Gaussian wave-packet data. The packet is located at `a`, carries mean
/// momentum p0/2, and its momentum-space phase vector is
/// b_i = a_i + theta eps_ik p0_k / 4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavePacketParams {
    pub alpha: f64,
    pub a: [f64; 2],
    pub p0: [f64; 2],
    pub theta: f64,
}

impl WavePacketParams {
    pub fn new(alpha: f64, a: [f64; 2], p0: [f64; 2], theta: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(CoreError::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
        }
        if !(theta >= 0.0) {
            return Err(CoreError::InvalidParameter(format!("theta must be >= 0, got {theta}")));
        }
        Ok(Self { alpha, a, p0, theta })
    }

    /// Phase vector b_i = a_i + theta eps_ik p0_k / 4.
    pub fn b(&self) -> [f64; 2] {
        [
            self.a[0] + self.theta * self.p0[1] / 4.0,
            self.a[1] - self.theta * self.p0[0] / 4.0,
        ]
    }
}

/// The 4x4 linear map from NC coordinates (x1,x2,p1,p2) to commuting
/// observables; upper-triangular with unit diagonal, identity at theta = 0.
pub fn m_matrix(theta: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(4, 4);
    m[(0, 3)] = theta / 2.0;
    m[(1, 2)] = -theta / 2.0;
    m
}

/// Two-particle version: one copy of [`m_matrix`] per particle.
pub fn m2_matrix(theta: f64) -> DMatrix<f64> {
    let m = m_matrix(theta);
    let mut m2 = DMatrix::zeros(8, 8);
    m2.view_mut((0, 0), (4, 4)).copy_from(&m);
    m2.view_mut((4, 4), (4, 4)).copy_from(&m);
    m2
}

/// Variance matrix of the packet in the NC-coordinate basis (x1,x2,p1,p2).
/// Independent of `a` and `p0` (second moments are mean-subtracted).
pub fn single_particle_nc_variance(packet: &WavePacketParams) -> Result<VarianceMatrix> {
    let (alpha, theta) = (packet.alpha, packet.theta);
    let xx = theta * theta * alpha / 8.0 + 1.0 / (2.0 * alpha);
    let pp = alpha / 2.0;
    let c = theta * alpha / 4.0;
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            xx, 0.0, 0.0, -c, //
            0.0, xx, c, 0.0, //
            0.0, c, pp, 0.0, //
            -c, 0.0, 0.0, pp,
        ],
    );
    VarianceMatrix::new(m, BasisDescriptor::single_particle_2d())
}

/// Congruence V -> M V M^T (4x4) or M2 V M2^T (8x8) re-expressing
/// NC-coordinate covariances in commuting observables. The basis labels are
/// retained; only their interpretation changes.
pub fn nc_to_effective(vbar: &VarianceMatrix, theta: f64) -> Result<VarianceMatrix> {
    let m = match vbar.dim() {
        4 => m_matrix(theta),
        8 => m2_matrix(theta),
        d => return Err(CoreError::DimensionMismatch { expected: 4, got: d }),
    };
    VarianceMatrix::new_symmetrized(&m * vbar.matrix() * m.transpose(), vbar.basis().clone())
}

/// Space-space and phase-space uncertainty products of the packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Uncertainties {
    /// Delta x1 * Delta x2 = theta^2 alpha / 8 + 1/(2 alpha)
    pub xx: f64,
    /// Delta x1 * Delta p1 = sqrt(theta^2 alpha^2 / 16 + 1/4)
    pub xp: f64,
}

pub fn uncertainties(packet: &WavePacketParams) -> Result<Uncertainties> {
    let (alpha, theta) = (packet.alpha, packet.theta);
    Ok(Uncertainties {
        xx: theta * theta * alpha / 8.0 + 1.0 / (2.0 * alpha),
        xp: (theta * theta * alpha * alpha / 16.0 + 0.25).sqrt(),
    })
}

fn golden_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Minimizer of the space-space uncertainty over the packet spread:
/// alpha0 = 2/theta with minimum theta/2. A golden-section search on
/// log(alpha) cross-checks the closed form to 1e-6 relative.
pub fn minimize_xx_uncertainty(theta: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0) {
        return Err(CoreError::InvalidParameter(format!(
            "theta must be > 0 for an interior minimum (infimum 0 as alpha -> inf at theta = 0); got {theta}"
        )));
    }
    let xx = |alpha: f64| theta * theta * alpha / 8.0 + 1.0 / (2.0 * alpha);
    let lo = (1e-6 / theta).ln();
    let hi = (1e6 / theta).ln();
    let log_alpha = golden_min(|l| xx(l.exp()), lo, hi, 1e-10);
    let alpha_num = log_alpha.exp();
    let alpha0 = 2.0 / theta;
    let rel = ((alpha_num - alpha0) / alpha0).abs();
    if rel > 1e-6 {
        return Err(CoreError::ConsistencyError {
            context: "space-space uncertainty minimizer vs closed form".into(),
            deviation: rel,
        });
    }
    Ok((alpha0, theta / 2.0))
}

/// Smallest symplectic eigenvalue of the partial transpose of the effective
/// commutative single-particle matrix, the two axes treated as two modes.
/// Equals 1 for every theta and alpha.
pub fn single_particle_ppt(packet: &WavePacketParams) -> Result<f64> {
    let vbar = single_particle_nc_variance(packet)?;
    let vc = nc_to_effective(&vbar, packet.theta)?;
    // reinterpret axes as modes: (x1,x2,p1,p2) of one particle becomes
    // (x^(1), x^(2), p^(1), p^(2)) of two fictitious particles
    let two_modes = BasisDescriptor::new(vec![
        crate::basis::CoordLabel::position(1, 1),
        crate::basis::CoordLabel::position(2, 1),
        crate::basis::CoordLabel::momentum(1, 1),
        crate::basis::CoordLabel::momentum(2, 1),
    ])?;
    let relabeled = VarianceMatrix::new(vc.matrix().clone(), two_modes)?;
    let pt = partial_transpose(&relabeled, 2)?;
    Ok(symplectic_spectrum(&pt)?.min())
}
