//! Basis-aware symplectic linear algebra.
//!
//! The symplectic spectrum of a variance matrix V is the set of moduli of
//! the eigenvalues of 2i*Omega*V; with hbar = 1 a matrix is a bona fide
//! quantum variance matrix iff every symplectic eigenvalue is >= 1,
//! equivalently V + i*Omega >= 0.

use crate::basis::{BasisDescriptor, CoordKind, CoordLabel};
use crate::error::{CoreError, Result};
use nalgebra::DMatrix;

/// Absolute symmetry tolerance accepted by [`VarianceMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Relative tolerance for pairing the eigenvalue moduli of 2*Omega*V.
pub const PAIRING_TOL: f64 = 1e-9;
/// Margin dead band of the physicality test.
pub const PHYSICALITY_TOL: f64 = 1e-9;
/// Deviation allowed in `S Omega S^T = Omega` checks.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// The antisymmetric form encoding the canonical commutators in a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    matrix: DMatrix<f64>,
    basis: BasisDescriptor,
}

impl SymplecticForm {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn basis(&self) -> &BasisDescriptor {
        &self.basis
    }
}

/// Build Omega for a basis: +1 at (position, momentum) of each canonical
/// pair, antisymmetric completion, zero elsewhere.
pub fn build_omega(basis: &BasisDescriptor) -> Result<SymplecticForm> {
    let n = basis.len();
    let mut m = DMatrix::zeros(n, n);
    for (i, e) in basis.entries().iter().enumerate() {
        if e.kind == CoordKind::Position {
            let partner = CoordLabel::momentum(e.particle, e.axis);
            let j = basis
                .index_of(partner)
                .ok_or_else(|| CoreError::BasisMalformed(format!("unpaired label {e}")))?;
            m[(i, j)] = 1.0;
            m[(j, i)] = -1.0;
        }
    }
    Ok(SymplecticForm { matrix: m, basis: basis.clone() })
}

/// Real symmetric matrix of symmetrized second moments, tagged with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceMatrix {
    matrix: DMatrix<f64>,
    basis: BasisDescriptor,
}

impl VarianceMatrix {
    /// Validates squareness, basis dimension and symmetry (1e-12 absolute).
    pub fn new(matrix: DMatrix<f64>, basis: BasisDescriptor) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() != basis.len() {
            return Err(CoreError::DimensionMismatch { expected: basis.len(), got: matrix.nrows() });
        }
        let mut dev: f64 = 0.0;
        for i in 0..matrix.nrows() {
            for j in (i + 1)..matrix.ncols() {
                dev = dev.max((matrix[(i, j)] - matrix[(j, i)]).abs());
            }
        }
        if dev > SYMMETRY_TOL {
            return Err(CoreError::NonSymmetric { max_deviation: dev });
        }
        Ok(Self { matrix, basis })
    }

    /// Symmetrizes (M + M^T)/2 before validating; for results of congruences
    /// whose round-off would otherwise trip the strict symmetry gate.
    pub fn new_symmetrized(matrix: DMatrix<f64>, basis: BasisDescriptor) -> Result<Self> {
        let sym = (&matrix + matrix.transpose()) * 0.5;
        Self::new(sym, basis)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn basis(&self) -> &BasisDescriptor {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Re-express in another ordering of the same labels.
    pub fn permuted_to(&self, target: &BasisDescriptor) -> Result<Self> {
        let p = self.basis.permutation_to(target)?;
        Self::new(&p * &self.matrix * p.transpose(), target.clone())
    }
}

/// Multiset of symplectic eigenvalues, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }
}

/// Symplectic spectrum of V: moduli of the eigenvalues of 2*Omega*V
/// (purely imaginary pairs +-(i nu_j)), merged and sorted ascending.
pub fn symplectic_spectrum(v: &VarianceMatrix) -> Result<SymplecticSpectrum> {
    let omega = build_omega(v.basis())?;
    let m = omega.matrix() * v.matrix() * 2.0;
    let eig = m.complex_eigenvalues();
    let mut mods: Vec<f64> = eig.iter().map(|z| z.norm()).collect();
    mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut values = Vec::with_capacity(mods.len() / 2);
    for pair in mods.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        let gap = (b - a).abs();
        let tol = PAIRING_TOL * b.max(1.0e-12) + 1.0e-12;
        if gap > tol {
            return Err(CoreError::SpectrumPairing { gap, value: b });
        }
        values.push(0.5 * (a + b));
    }
    Ok(SymplecticSpectrum { values })
}

/// Momentum-sign flip of one particle: returns Lambda * V * Lambda.
pub fn partial_transpose(v: &VarianceMatrix, particle: usize) -> Result<VarianceMatrix> {
    if !v.basis().has_particle(particle) {
        return Err(CoreError::UnknownParticle(particle));
    }
    let signs: Vec<f64> = v
        .basis()
        .entries()
        .iter()
        .map(|e| if e.kind == CoordKind::Momentum && e.particle == particle { -1.0 } else { 1.0 })
        .collect();
    let mut m = v.matrix().clone();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            m[(i, j)] *= signs[i] * signs[j];
        }
    }
    VarianceMatrix::new(m, v.basis().clone())
}

/// Physicality test: margin = min_j nu_j - 1; physical iff margin >= -1e-9.
pub fn is_physical_commutative(v: &VarianceMatrix) -> Result<(bool, f64)> {
    let spec = symplectic_spectrum(v)?;
    let margin = spec.min() - 1.0;
    Ok((margin >= -PHYSICALITY_TOL, margin))
}

/// Congruence V -> S V S^T after checking S Omega S^T = Omega to 1e-10.
pub fn symplectic_congruence(v: &VarianceMatrix, s: &DMatrix<f64>) -> Result<VarianceMatrix> {
    let omega = build_omega(v.basis())?;
    if s.nrows() != v.dim() || s.ncols() != v.dim() {
        return Err(CoreError::DimensionMismatch { expected: v.dim(), got: s.nrows() });
    }
    let resid = s * omega.matrix() * s.transpose() - omega.matrix();
    let dev = resid.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if dev > SYMPLECTIC_TOL {
        return Err(CoreError::NonSymplectic { deviation: dev });
    }
    VarianceMatrix::new_symmetrized(s * v.matrix() * s.transpose(), v.basis().clone())
}

/// Smallest eigenvalue of the Hermitian matrix V + i*Omega, computed through
/// the real symmetric embedding [[V, -Omega], [Omega, V]].
pub fn v_plus_i_omega_min_eig(v: &VarianceMatrix) -> Result<f64> {
    let omega = build_omega(v.basis())?;
    let n = v.dim();
    let mut e = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            e[(i, j)] = v.matrix()[(i, j)];
            e[(n + i, n + j)] = v.matrix()[(i, j)];
            e[(i, n + j)] = -omega.matrix()[(i, j)];
            e[(n + i, j)] = omega.matrix()[(i, j)];
        }
    }
    let eig = e.symmetric_eigen();
    Ok(eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min))
}

/// Minus branch of the two-mode eigenvalue quadratic:
/// nu_-^2 = 2*Delta - 2*sqrt(Delta^2 - 4 det4).
pub fn min_branch(delta: f64, det4: f64) -> f64 {
    let disc = (delta * delta - 4.0 * det4).max(0.0);
    (2.0 * delta - 2.0 * disc.sqrt()).max(0.0).sqrt()
}

/// Plus branch counterpart of [`min_branch`].
pub fn max_branch(delta: f64, det4: f64) -> f64 {
    let disc = (delta * delta - 4.0 * det4).max(0.0);
    (2.0 * delta + 2.0 * disc.sqrt()).max(0.0).sqrt()
}

/// Determinant invariants of an 8x8 particle-blocked variance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockInvariants {
    pub det_alpha_a: f64,
    pub det_alpha_b: f64,
    pub det_beta_a: f64,
    pub det_beta_b: f64,
    pub det_gamma_a: f64,
    pub det_gamma_b: f64,
    pub det_delta_a: f64,
    pub det_delta_b: f64,
    pub delta_x: f64,
    pub delta_y: f64,
}

/// Index map declaring which rows/columns span the x- and y-axis sectors
/// of an 8x8 two-particle matrix, ordered (x^(1), p^(1), x^(2), p^(2)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisPairing {
    pub x: [usize; 4],
    pub y: [usize; 4],
}

impl AxisPairing {
    /// Pairing for the particle-blocked ordering (x1,x2,p1,p2 | x1,x2,p1,p2).
    pub fn pair_blocked() -> Self {
        Self { x: [0, 2, 4, 6], y: [1, 3, 5, 7] }
    }
}

fn det2(m: &DMatrix<f64>, r: [usize; 2], c: [usize; 2]) -> f64 {
    m[(r[0], c[0])] * m[(r[1], c[1])] - m[(r[0], c[1])] * m[(r[1], c[0])]
}

fn det4(m: &DMatrix<f64>, idx: [usize; 4]) -> f64 {
    let mut s = DMatrix::zeros(4, 4);
    for (i, &ri) in idx.iter().enumerate() {
        for (j, &cj) in idx.iter().enumerate() {
            s[(i, j)] = m[(ri, cj)];
        }
    }
    s.determinant()
}

/// All determinant invariants plus both Delta combinations.
///
/// With `pt_convention` the gamma determinants enter Delta with a minus sign,
/// matching the partial-transpose form Delta(V~) = det(alpha) + det(beta) - 2 det(gamma).
pub fn block_invariants(
    v: &VarianceMatrix,
    pairing: AxisPairing,
    pt_convention: bool,
) -> Result<BlockInvariants> {
    if v.dim() != 8 {
        return Err(CoreError::DimensionMismatch { expected: 8, got: v.dim() });
    }
    let m = v.matrix();
    let sgn = if pt_convention { -1.0 } else { 1.0 };
    let [x1, px1, x2, px2] = pairing.x;
    let [y1, py1, y2, py2] = pairing.y;
    let det_alpha_a = det2(m, [x1, px1], [x1, px1]);
    let det_beta_a = det2(m, [x2, px2], [x2, px2]);
    let det_gamma_a = det2(m, [x1, px1], [x2, px2]);
    let det_alpha_b = det2(m, [y1, py1], [y1, py1]);
    let det_beta_b = det2(m, [y2, py2], [y2, py2]);
    let det_gamma_b = det2(m, [y1, py1], [y2, py2]);
    let det_delta_a = det4(m, pairing.x);
    let det_delta_b = det4(m, pairing.y);
    Ok(BlockInvariants {
        det_alpha_a,
        det_alpha_b,
        det_beta_a,
        det_beta_b,
        det_gamma_a,
        det_gamma_b,
        det_delta_a,
        det_delta_b,
        delta_x: det_alpha_a + det_beta_a + sgn * 2.0 * det_gamma_a,
        delta_y: det_alpha_b + det_beta_b + sgn * 2.0 * det_gamma_b,
    })
}

/// Exponential of a small matrix by scaling and squaring with a Taylor core.
pub fn matrix_exp(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.iter().fold(0.0f64, |acc, x| acc.max(x.abs())) * n as f64;
    let k = norm.log2().ceil().max(0.0) as u32 + 4;
    let scaled = a / 2f64.powi(k as i32);
    let mut term = DMatrix::identity(n, n);
    let mut sum = DMatrix::identity(n, n);
    for i in 1..24 {
        term = &term * &scaled / i as f64;
        sum += &term;
    }
    let mut result = sum;
    for _ in 0..k {
        result = &result * result.clone();
    }
    result
}

/// Random symplectic matrix exp(Omega H) with H symmetric, entries ~ scale.
pub fn random_symplectic<R: rand::Rng>(
    basis: &BasisDescriptor,
    scale: f64,
    rng: &mut R,
) -> Result<DMatrix<f64>> {
    let n = basis.len();
    let omega = build_omega(basis)?;
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let val = (rng.gen::<f64>() * 2.0 - 1.0) * scale;
            h[(i, j)] = val;
            h[(j, i)] = val;
        }
    }
    Ok(matrix_exp(&(omega.matrix() * h)))
}

/// Random symmetric positive-definite matrix A A^T + eps I.
pub fn random_spd<R: rand::Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen::<f64>() * 2.0 - 1.0);
    &a * a.transpose() + DMatrix::identity(n, n) * 0.1
}
