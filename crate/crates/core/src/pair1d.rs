//! Symmetrized pair of 1D Gaussian packets (commutative dynamics).
//!
//! Two packets of momentum spreads alpha, beta and relative momentum scale
//! p0 are symmetrized into Psi = N1 (psi1 x psi2 + psi2 x psi1). Results are
//! exposed in the reduced coordinates eta = alpha/beta, zeta = p0^2/beta;
//! beta = 1 is the canonical internal scale.

use crate::basis::BasisDescriptor;
use crate::error::{CoreError, Result};
use crate::symplectic::VarianceMatrix;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Parameters of the symmetrized 1D pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pair1DParams {
    pub alpha: f64,
    pub beta: f64,
    /// Relative momentum scale; the packets carry mean momenta +-p0/2.
    pub p0: f64,
}

impl Pair1DParams {
    pub fn new(alpha: f64, beta: f64, p0: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(CoreError::InvalidParameter(format!(
                "spreads must be positive, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self { alpha, beta, p0 })
    }

    /// Reduced coordinates with beta = 1: alpha = eta, p0 = sqrt(zeta).
    pub fn from_eta_zeta(eta: f64, zeta: f64) -> Result<Self> {
        if !(eta > 0.0) || !(zeta >= 0.0) {
            return Err(CoreError::InvalidParameter(format!("need eta>0, zeta>=0; got {eta}, {zeta}")));
        }
        Self::new(eta, 1.0, zeta.sqrt())
    }

    pub fn eta(&self) -> f64 {
        self.alpha / self.beta
    }

    pub fn zeta(&self) -> f64 {
        self.p0 * self.p0 / self.beta
    }

    /// Squared normalization N1^2 = [2(1 + 2 sqrt(ab) e^{-p0^2/(a+b)}/(a+b))]^-1.
    pub fn n1_squared(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        let s = a + b;
        1.0 / (2.0 * (1.0 + 2.0 * (a * b).sqrt() * (-self.p0 * self.p0 / s).exp() / s))
    }
}

/// The four independent matrix entries (v11, v22, v13, v24).
///
/// v22 and v24 are the raw second momentum moments of the symmetrized state;
/// they coincide with the mean-subtracted covariances exactly when p0 = 0 or
/// alpha = beta (elsewhere the state carries a residual momentum mean and
/// the raw moments exceed the covariances by that mean squared).
pub fn entries(params: &Pair1DParams) -> (f64, f64, f64, f64) {
    let (a, b, p0) = (params.alpha, params.beta, params.p0);
    let n1sq = params.n1_squared();
    let s = a + b;
    let e = (-p0 * p0 / s).exp();
    let rt = (a * b).sqrt();
    let v11 = n1sq * (s / (2.0 * a * b) + 4.0 * rt * e / (s * s) * (1.0 - p0 * p0 / s));
    let v13 = n1sq * 4.0 * p0 * p0 * rt * e / (s * s * s);
    let v22 = n1sq
        * (s / 2.0
            + p0 * p0 / 2.0
            + 4.0 * rt * e / s * (a * b / s + p0 * p0 * (b - a) * (b - a) / (4.0 * s * s)));
    let v24 = n1sq * (-p0 * p0 / 2.0 + p0 * p0 * rt * (b - a) * (b - a) * e / (s * s * s));
    (v11, v22, v13, v24)
}

/// 4x4 variance matrix in the interleaved basis (x^(1), p^(1), x^(2), p^(2)).
pub fn variance_1d_pair(params: &Pair1DParams) -> Result<VarianceMatrix> {
    let (v11, v22, v13, v24) = entries(params);
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            v11, 0.0, v13, 0.0, //
            0.0, v22, 0.0, v24, //
            v13, 0.0, v11, 0.0, //
            0.0, v24, 0.0, v22,
        ],
    );
    VarianceMatrix::new(m, BasisDescriptor::interleaved_1d_pair())
}

/// Closed form for the smallest symplectic eigenvalue of the partial
/// transpose, as a function of (eta, zeta).
pub fn nu_ppt_closed_form(eta: f64, zeta: f64) -> f64 {
    let e = (-zeta / (1.0 + eta)).exp();
    let cube = (1.0 + eta).powi(3);
    let pref = (1.0 + eta) / (1.0 + eta + 2.0 * eta.sqrt() * e);
    let a1 = (1.0 + eta) / (2.0 * eta) + 4.0 * eta.sqrt() * (1.0 + eta - 2.0 * zeta) * e / cube;
    let a2 = (1.0 + eta) / 2.0
        + eta.sqrt() * (2.0 * zeta * (1.0 - eta) * (1.0 - eta) + 4.0 * eta * (1.0 + eta)) * e / cube;
    pref * a1.sqrt() * a2.sqrt()
}

/// Smallest symplectic eigenvalue of the partially transposed pair.
///
/// Evaluates both branch candidates 2 sqrt((v11 -+ v13)(v22 +- v24)), takes
/// the smaller, and checks it against the (eta, zeta) closed form; a
/// disagreement beyond 1e-9 is an internal-consistency error.
pub fn nu_ppt_1d(params: &Pair1DParams) -> Result<f64> {
    let (v11, v22, v13, v24) = entries(params);
    let cand1 = 2.0 * ((v11 - v13) * (v22 + v24)).max(0.0).sqrt();
    let cand2 = 2.0 * ((v11 + v13) * (v22 - v24)).max(0.0).sqrt();
    let nu = cand1.min(cand2);
    let closed = nu_ppt_closed_form(params.eta(), params.zeta());
    let dev = (nu - closed).abs();
    if dev > 1e-9 * closed.max(1.0) {
        return Err(CoreError::ConsistencyError {
            context: "PT branch minimum vs (eta, zeta) closed form".into(),
            deviation: dev,
        });
    }
    Ok(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{is_physical_commutative, partial_transpose, symplectic_spectrum};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn separable_point() {
        let p = Pair1DParams::from_eta_zeta(1.0, 0.0).unwrap();
        assert_relative_eq!(nu_ppt_1d(&p).unwrap(), 1.0, epsilon = 1e-12);
        let (v11, v22, v13, v24) = entries(&p);
        assert_relative_eq!(v11, 0.5, epsilon = 1e-15);
        assert_relative_eq!(v22, 0.5, epsilon = 1e-15);
        assert_eq!(v13, 0.0);
        assert_eq!(v24, 0.0);
    }

    #[test]
    fn zero_momentum_kills_cross_entries() {
        for eta in [0.3, 1.0, 4.2] {
            let p = Pair1DParams::from_eta_zeta(eta, 0.0).unwrap();
            let (_, _, v13, v24) = entries(&p);
            assert_eq!(v13, 0.0);
            assert_eq!(v24, 0.0);
        }
    }

    #[test]
    fn unequal_spreads_point() {
        // eta=4, zeta=0: v11 = 0.2625, v22 = 1.05, nu = 1.05 (exceeds 1)
        let p = Pair1DParams::from_eta_zeta(4.0, 0.0).unwrap();
        let (v11, v22, _, _) = entries(&p);
        assert_relative_eq!(v11, 0.2625, epsilon = 1e-14);
        assert_relative_eq!(v22, 1.05, epsilon = 1e-14);
        assert_relative_eq!(nu_ppt_1d(&p).unwrap(), 1.05, epsilon = 1e-12);
    }

    #[test]
    fn derived_entangled_point() {
        let p = Pair1DParams::from_eta_zeta(1.0, 2.0).unwrap();
        let nu = nu_ppt_1d(&p).unwrap();
        assert_relative_eq!(nu, 0.67981, epsilon = 1e-4);
        // exact value sqrt((1 - e^-1)/(1 + e^-1))
        let e1 = (-1.0f64).exp();
        assert_relative_eq!(nu, ((1.0 - e1) / (1.0 + e1)).sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn closed_form_matches_matrix_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let eta = rng.gen_range(0.2..5.0);
            let zeta = rng.gen_range(0.0..10.0);
            let p = Pair1DParams::from_eta_zeta(eta, zeta).unwrap();
            let v = variance_1d_pair(&p).unwrap();
            let pt = partial_transpose(&v, 2).unwrap();
            let pipeline = symplectic_spectrum(&pt).unwrap().min();
            assert_relative_eq!(nu_ppt_closed_form(eta, zeta), pipeline, epsilon = 1e-10);
        }
    }

    #[test]
    fn untransposed_matrix_is_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..100 {
            let eta = rng.gen_range(0.2..5.0);
            let zeta = rng.gen_range(0.0..10.0);
            let p = Pair1DParams::from_eta_zeta(eta, zeta).unwrap();
            let v = variance_1d_pair(&p).unwrap();
            let (_, margin) = is_physical_commutative(&v).unwrap();
            assert!(margin >= -1e-9, "margin {margin} at eta={eta} zeta={zeta}");
        }
    }

    #[test]
    fn relabeling_symmetry() {
        // swapping which packet carries alpha vs beta: nu(eta, zeta) = nu(1/eta, zeta/eta)
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let eta = rng.gen_range(0.2..5.0);
            let zeta = rng.gen_range(0.0..10.0);
            let a = nu_ppt_closed_form(eta, zeta);
            let b = nu_ppt_closed_form(1.0 / eta, zeta / eta);
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn pt_spectrum_min_derived_point() {
        // exported matrix at (eta=1, zeta=2), PT spectrum minimum ~ 0.6798
        let p = Pair1DParams::from_eta_zeta(1.0, 2.0).unwrap();
        let v = variance_1d_pair(&p).unwrap();
        let pt = partial_transpose(&v, 2).unwrap();
        assert_relative_eq!(symplectic_spectrum(&pt).unwrap().min(), 0.6798, epsilon = 1e-4);
        // the untransposed matrix at (eta=2, zeta=1) is physical
        let p = Pair1DParams::from_eta_zeta(2.0, 1.0).unwrap();
        let v = variance_1d_pair(&p).unwrap();
        assert!(is_physical_commutative(&v).unwrap().0);
    }
}
