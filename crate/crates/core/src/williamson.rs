//! Williamson normal form and the two-step standard-form reduction of an
//! 8x8 two-particle variance matrix.
//!
//! Step I applies one Williamson transformation per particle, scaling each
//! single-particle block to g * I per axis. Step II co-rotates the two
//! particles' axis sectors by SO(2) angles chosen to diagonalize the three
//! cross-correlation blocks. Rotations (rather than general Sp(2) elements)
//! are required so the g * I blocks survive Step II.

use crate::basis::BasisDescriptor;
use crate::error::{CoreError, Result};
use crate::symplectic::{build_omega, VarianceMatrix};
use nalgebra::{DMatrix, Matrix2};

/// The ten parameters of the two-particle standard form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardFormParams {
    pub g_a: f64,
    pub g_b: f64,
    pub g_c: f64,
    pub g_d: f64,
    pub m_a: f64,
    pub m_b: f64,
    pub m_c: f64,
    pub m_d: f64,
    pub q_a: f64,
    pub q_b: f64,
}

impl StandardFormParams {
    /// Assemble the 8x8 standard form in the axis-interleaved pair basis.
    pub fn assemble(&self) -> VarianceMatrix {
        let mut m = DMatrix::zeros(8, 8);
        let d = [self.g_a, self.g_a, self.g_b, self.g_b, self.g_c, self.g_c, self.g_d, self.g_d];
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        let cross = [
            (0, 4, self.m_a),
            (1, 5, self.m_c),
            (2, 6, self.m_b),
            (3, 7, self.m_d),
            (0, 6, self.q_a),
            (2, 4, self.q_a),
            (1, 7, self.q_b),
            (3, 5, self.q_b),
        ];
        for (i, j, v) in cross {
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
        VarianceMatrix::new(m, BasisDescriptor::pair_axis_interleaved_2d())
            .expect("standard form is symmetric by construction")
    }
}

/// Symmetric inverse square root via the eigendecomposition.
fn sym_inv_sqrt(v: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = v.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(CoreError::NotPositiveDefinite { min_eig: min });
    }
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| 1.0 / x.sqrt()));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// Williamson transformation of a positive-definite matrix in a basis with
/// conjugate pairs adjacent (x, p, x, p, ...).
///
/// Returns (S, d) with S symplectic, S V S^T = diag(d_1, d_1, d_2, d_2, ...)
/// and d ascending. The symplectic eigenvalues are nu_j = 2 d_j.
pub fn williamson(v: &DMatrix<f64>, omega: &DMatrix<f64>) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let n = v.nrows();
    let half = n / 2;
    let w = sym_inv_sqrt(v)?;
    // antisymmetric kernel; its invariant 2-planes carry the frequencies
    let m = &w * omega * &w;
    let m2 = &m * &m; // symmetric, negative semi-definite
    let eig = m2.clone().symmetric_eigen();
    // eigenvalues are -mu_j^2, doubly degenerate
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    // group into pairs ascending in -lambda (descending mu); we want d = 1/mu ascending,
    // i.e. mu descending, i.e. lambda = -mu^2 ascending.
    let mut q = DMatrix::zeros(n, n);
    let mut mus = Vec::with_capacity(half);
    let mut used = vec![false; n];
    let mut col = 0;
    for &i in &order {
        if used[i] || col == n {
            continue;
        }
        // candidate u from this eigencolumn, orthogonalized against chosen columns
        let mut u = eig.eigenvectors.column(i).clone_owned();
        for c in 0..col {
            let proj = q.column(c).dot(&u);
            u -= q.column(c) * proj;
        }
        let norm = u.norm();
        if norm < 1e-8 {
            used[i] = true;
            continue;
        }
        u /= norm;
        let mv = &m * &u;
        // recompute the frequency from the vector itself; exact on eigenspaces
        // and self-correcting under near-degeneracy
        let mu = mv.norm();
        if mu <= 1e-14 {
            return Err(CoreError::NotPositiveDefinite { min_eig: 0.0 });
        }
        let v2 = -mv / mu;
        q.set_column(col, &u);
        q.set_column(col + 1, &v2);
        mus.push(mu);
        col += 2;
        used[i] = true;
        // partner eigencolumns are absorbed by the orthogonalization above
    }
    if col != n {
        // fill skipped duplicates (already represented); this happens when the
        // Gram step above consumed a degenerate partner column
        return Err(CoreError::ReductionFailed { residual: (n - col) as f64 });
    }
    // scale: S = D Q^T W, D = diag(1/sqrt(mu_j) x2)
    let mut dvec = Vec::with_capacity(n);
    for &mu in &mus {
        dvec.push(1.0 / mu.sqrt());
        dvec.push(1.0 / mu.sqrt());
    }
    let dmat = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(dvec));
    let s = &dmat * q.transpose() * &w;
    let ds: Vec<f64> = mus.iter().map(|mu| 1.0 / mu).collect();
    Ok((s, ds))
}

fn rot(phi: f64) -> Matrix2<f64> {
    Matrix2::new(phi.cos(), -phi.sin(), phi.sin(), phi.cos())
}

fn offdiag_residual(v: &DMatrix<f64>, phi3: f64, phi4: f64) -> f64 {
    let r3 = rot(phi3);
    let r4 = rot(phi4);
    let gx = v.fixed_view::<2, 2>(0, 4).clone_owned();
    let gxy = v.fixed_view::<2, 2>(0, 6).clone_owned();
    let gyx = v.fixed_view::<2, 2>(2, 4).clone_owned();
    let gy = v.fixed_view::<2, 2>(2, 6).clone_owned();
    let a = r3 * gx * r3.transpose();
    let b = r3 * gxy * r4.transpose();
    let b2 = r4 * gyx * r3.transpose();
    let c = r4 * gy * r4.transpose();
    a[(0, 1)].powi(2)
        + a[(1, 0)].powi(2)
        + b[(0, 1)].powi(2)
        + b[(1, 0)].powi(2)
        + b2[(0, 1)].powi(2)
        + b2[(1, 0)].powi(2)
        + c[(0, 1)].powi(2)
        + c[(1, 0)].powi(2)
        // the standard form also requires the two cross-axis blocks to agree
        + (b[(0, 0)] - b2[(0, 0)]).powi(2)
        + (b[(1, 1)] - b2[(1, 1)]).powi(2)
}

fn golden_angle<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..120 {
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

/// Two-step reduction of an 8x8 variance matrix (axis-interleaved pair basis)
/// to the ten-parameter standard form.
pub fn standard_form(v: &VarianceMatrix) -> Result<StandardFormParams> {
    if v.dim() != 8 {
        return Err(CoreError::DimensionMismatch { expected: 8, got: v.dim() });
    }
    let m = v.matrix();
    let single = BasisDescriptor::new(vec![
        crate::basis::CoordLabel::position(1, 1),
        crate::basis::CoordLabel::momentum(1, 1),
        crate::basis::CoordLabel::position(1, 2),
        crate::basis::CoordLabel::momentum(1, 2),
    ])?;
    let omega4 = build_omega(&single)?.matrix().clone();

    // Step I: Williamson per particle.
    let v11 = m.view((0, 0), (4, 4)).clone_owned();
    let v22 = m.view((4, 4), (4, 4)).clone_owned();
    let (s1, _) = williamson(&v11, &omega4)?;
    let (s2, _) = williamson(&v22, &omega4)?;
    let mut s = DMatrix::zeros(8, 8);
    s.view_mut((0, 0), (4, 4)).copy_from(&s1);
    s.view_mut((4, 4), (4, 4)).copy_from(&s2);
    let vp = (&s * m * s.transpose() + (&s * m * s.transpose()).transpose()) * 0.5;

    // Step II: co-rotate the axis sectors to diagonalize the cross blocks.
    // Coordinate descent with golden sections, started from a coarse grid.
    let mut best = (0.0f64, 0.0f64);
    let mut best_val = f64::INFINITY;
    let steps = 60;
    for i in 0..steps {
        for j in 0..steps {
            let p3 = std::f64::consts::PI * i as f64 / steps as f64;
            let p4 = std::f64::consts::PI * j as f64 / steps as f64;
            let val = offdiag_residual(&vp, p3, p4);
            if val < best_val {
                best_val = val;
                best = (p3, p4);
            }
        }
    }
    let (mut p3, mut p4) = best;
    for _ in 0..30 {
        let w = std::f64::consts::PI / steps as f64;
        p3 = golden_angle(|x| offdiag_residual(&vp, x, p4), p3 - w, p3 + w);
        p4 = golden_angle(|x| offdiag_residual(&vp, p3, x), p4 - w, p4 + w);
    }
    let residual = offdiag_residual(&vp, p3, p4).sqrt();
    let scale = vp.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1.0);
    if residual > 1e-7 * scale {
        return Err(CoreError::ReductionFailed { residual });
    }
    let r3 = rot(p3);
    let r4 = rot(p4);
    let mut r = DMatrix::zeros(8, 8);
    for (offset, rr) in [(0, &r3), (2, &r4), (4, &r3), (6, &r4)] {
        r.view_mut((offset, offset), (2, 2)).copy_from(rr);
    }
    let vf = (&r * &vp * r.transpose() + (&r * &vp * r.transpose()).transpose()) * 0.5;

    Ok(StandardFormParams {
        g_a: 0.5 * (vf[(0, 0)] + vf[(1, 1)]),
        g_b: 0.5 * (vf[(2, 2)] + vf[(3, 3)]),
        g_c: 0.5 * (vf[(4, 4)] + vf[(5, 5)]),
        g_d: 0.5 * (vf[(6, 6)] + vf[(7, 7)]),
        m_a: vf[(0, 4)],
        m_c: vf[(1, 5)],
        m_b: vf[(2, 6)],
        m_d: vf[(3, 7)],
        q_a: 0.5 * (vf[(0, 6)] + vf[(2, 4)]),
        q_b: 0.5 * (vf[(1, 7)] + vf[(3, 5)]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{random_spd, symplectic_spectrum};
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn williamson_diagonalizes_random_spd() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let single = BasisDescriptor::pair_axis_interleaved_2d();
        let omega4 = build_omega(&BasisDescriptor::new(single.entries()[..4].to_vec()).unwrap())
            .unwrap()
            .matrix()
            .clone();
        for _ in 0..25 {
            let v = random_spd(4, &mut rng);
            let (s, d) = williamson(&v, &omega4).unwrap();
            // symplectic
            let resid = &s * &omega4 * s.transpose() - &omega4;
            assert!(resid.iter().all(|x| x.abs() < 1e-9), "S not symplectic");
            // diagonal with paired entries
            let w = &s * &v * s.transpose();
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert!(w[(i, j)].abs() < 1e-8, "off-diagonal {} at ({i},{j})", w[(i, j)]);
                    }
                }
            }
            assert_relative_eq!(w[(0, 0)], d[0], max_relative = 1e-8);
            assert_relative_eq!(w[(1, 1)], d[0], max_relative = 1e-8);
            assert_relative_eq!(w[(2, 2)], d[1], max_relative = 1e-8);
            assert_relative_eq!(w[(3, 3)], d[1], max_relative = 1e-8);
        }
    }

    #[test]
    fn standard_form_reads_off_when_already_standard() {
        let params = StandardFormParams {
            g_a: 1.2,
            g_b: 0.9,
            g_c: 1.2,
            g_d: 0.9,
            m_a: 0.21,
            m_b: 0.13,
            m_c: -0.17,
            m_d: -0.11,
            q_a: 0.0,
            q_b: 0.0,
        };
        let v = params.assemble();
        let got = standard_form(&v).unwrap();
        // the reduction may re-mix degenerate sectors; compare invariant products
        assert_relative_eq!(got.g_a * got.g_b, params.g_a * params.g_b, max_relative = 1e-7);
        assert_relative_eq!(got.m_a * got.m_c, params.m_a * params.m_c, max_relative = 1e-6);
        assert_relative_eq!(got.m_b * got.m_d, params.m_b * params.m_d, max_relative = 1e-6);
        let s1 = symplectic_spectrum(&v).unwrap();
        let s2 = symplectic_spectrum(&got.assemble()).unwrap();
        for (a, b) in s1.values().iter().zip(s2.values()) {
            assert_relative_eq!(a, b, max_relative = 1e-8);
        }
    }

    #[test]
    fn standard_form_block_diagonal_input() {
        // two independent particles: all cross parameters vanish
        let mut m = DMatrix::zeros(8, 8);
        for (i, v) in [1.1, 1.1, 0.8, 0.8, 1.3, 1.3, 0.7, 0.7].iter().enumerate() {
            m[(i, i)] = *v;
        }
        let v = VarianceMatrix::new(m, BasisDescriptor::pair_axis_interleaved_2d()).unwrap();
        let p = standard_form(&v).unwrap();
        assert!(p.m_a.abs() < 1e-9);
        assert!(p.m_b.abs() < 1e-9);
        assert!(p.m_c.abs() < 1e-9);
        assert!(p.m_d.abs() < 1e-9);
        assert!(p.q_a.abs() < 1e-9);
        assert!(p.q_b.abs() < 1e-9);
    }
}
