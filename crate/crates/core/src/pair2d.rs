//! Symmetrized pair of planar Gaussian packets (commutative dynamics).
//!
//! Two identical packets of spread alpha centered at +-a with a = (a1, 0)
//! are symmetrized; the 8x8 variance matrix is block-diagonal per axis and
//! the y-sector is exactly separable.

use crate::basis::BasisDescriptor;
use crate::error::{CoreError, Result};
use crate::symplectic::VarianceMatrix;
use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

/// Planar pair parameters; the second separation component is fixed to 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pair2DParams {
    pub alpha: f64,
    pub a1: f64,
}

impl Pair2DParams {
    pub fn new(alpha: f64, a1: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(CoreError::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
        }
        Ok(Self { alpha, a1 })
    }

    /// Dimensionless separation u = alpha a1^2.
    pub fn u(&self) -> f64 {
        self.alpha * self.a1 * self.a1
    }

    /// N2^2 = 1 / (2 (1 + e^{-2 alpha a1^2})).
    pub fn n2_squared(&self) -> f64 {
        1.0 / (2.0 * (1.0 + (-2.0 * self.u()).exp()))
    }
}

/// The 2x2 blocks (A, C, E, G); B and D vanish for this family.
pub struct Pair2DBlocks {
    pub a: Matrix2<f64>,
    pub c: Matrix2<f64>,
    pub e: Matrix2<f64>,
    pub g: Matrix2<f64>,
}

pub fn blocks(params: &Pair2DParams) -> Pair2DBlocks {
    let (alpha, a1) = (params.alpha, params.a1);
    let n2 = params.n2_squared();
    let k = (-2.0 * params.u()).exp();
    let a = Matrix2::new(
        n2 * (2.0 * a1 * a1 + (1.0 + k) / alpha),
        0.0,
        0.0,
        n2 * (1.0 + k) / alpha,
    );
    let c = Matrix2::new(-2.0 * n2 * a1 * a1, 0.0, 0.0, 0.0);
    let e = Matrix2::new(
        n2 * (alpha + (alpha - 2.0 * a1 * a1 * alpha * alpha) * k),
        0.0,
        0.0,
        n2 * alpha * (1.0 + k),
    );
    let g = Matrix2::new(2.0 * n2 * a1 * a1 * alpha * alpha * k, 0.0, 0.0, 0.0);
    Pair2DBlocks { a, c, e, g }
}

/// Assemble an 8x8 particle-blocked matrix from 2x2 blocks laid out as
/// rows (x^(1), p^(1), x^(2), p^(2)) of 2-vectors.
pub fn assemble_blocked(
    a: &Matrix2<f64>,
    b: &Matrix2<f64>,
    c: &Matrix2<f64>,
    d: &Matrix2<f64>,
    e: &Matrix2<f64>,
    g: &Matrix2<f64>,
) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(8, 8);
    let bt = b.transpose();
    let ct = c.transpose();
    let dt = d.transpose();
    let gt = g.transpose();
    let put = |m: &mut DMatrix<f64>, r: usize, cc: usize, blk: &Matrix2<f64>| {
        for i in 0..2 {
            for j in 0..2 {
                m[(r + i, cc + j)] = blk[(i, j)];
            }
        }
    };
    put(&mut m, 0, 0, a);
    put(&mut m, 0, 2, b);
    put(&mut m, 0, 4, c);
    put(&mut m, 0, 6, d);
    put(&mut m, 2, 0, &bt);
    put(&mut m, 2, 2, e);
    put(&mut m, 2, 4, &dt);
    put(&mut m, 2, 6, g);
    put(&mut m, 4, 0, &ct);
    put(&mut m, 4, 2, d);
    put(&mut m, 4, 4, a);
    put(&mut m, 4, 6, b);
    put(&mut m, 6, 0, &dt);
    put(&mut m, 6, 2, &gt);
    put(&mut m, 6, 4, &bt);
    put(&mut m, 6, 6, e);
    m
}

/// 8x8 variance matrix in the particle-blocked basis (x1,x2,p1,p2 | ...).
pub fn variance_2d_pair(params: &Pair2DParams) -> Result<VarianceMatrix> {
    let bl = blocks(params);
    let z = Matrix2::zeros();
    VarianceMatrix::new(
        assemble_blocked(&bl.a, &z, &bl.c, &z, &bl.e, &bl.g),
        BasisDescriptor::pair_blocked_2d(),
    )
}

/// Closed-form smallest PT symplectic eigenvalue of the x-sector, a function
/// of u = alpha a1^2 only.
pub fn nu_ppt_x_closed_form(u: f64) -> f64 {
    let k = (-2.0 * u).exp();
    (((1.0 + (1.0 - 4.0 * u) * k) / (1.0 + k)).max(0.0)).sqrt()
}

/// PT branch eigenvalues (nu_x, nu_y); nu_y = 1 exactly for this family.
pub fn nu_ppt_2d(params: &Pair2DParams) -> (f64, f64) {
    (nu_ppt_x_closed_form(params.u()), 1.0)
}
