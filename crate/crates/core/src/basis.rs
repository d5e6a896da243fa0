//! Phase-space basis descriptors.
//!
//! Every variance matrix in this crate is tagged with an ordered list of
//! coordinate labels. Matrix conventions (the symplectic form, partial
//! transposition, block extraction) are derived from the labels rather than
//! from implicit index arithmetic, so the several orderings used by the
//! state families can coexist without sign errors.

use crate::error::{CoreError, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Position or momentum character of a phase-space coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoordKind {
    Position,
    Momentum,
}

/// One phase-space coordinate: kind, owning particle and spatial axis
/// (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordLabel {
    pub kind: CoordKind,
    pub particle: usize,
    pub axis: usize,
}

impl CoordLabel {
    pub fn position(particle: usize, axis: usize) -> Self {
        Self { kind: CoordKind::Position, particle, axis }
    }

    pub fn momentum(particle: usize, axis: usize) -> Self {
        Self { kind: CoordKind::Momentum, particle, axis }
    }

    /// Parse the compact form used in file headers, e.g. `x1@2` or `p2@1`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || CoreError::Parse(format!("bad coordinate label '{s}'"));
        let (head, particle) = s.split_once('@').ok_or_else(bad)?;
        let kind = match head.as_bytes().first() {
            Some(b'x') => CoordKind::Position,
            Some(b'p') => CoordKind::Momentum,
            _ => return Err(bad()),
        };
        let axis: usize = head[1..].parse().map_err(|_| bad())?;
        let particle: usize = particle.parse().map_err(|_| bad())?;
        if axis == 0 || particle == 0 {
            return Err(bad());
        }
        Ok(Self { kind, particle, axis })
    }
}

impl fmt::Display for CoordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            CoordKind::Position => 'x',
            CoordKind::Momentum => 'p',
        };
        write!(f, "{}{}@{}", k, self.axis, self.particle)
    }
}

/// Ordered list of phase-space coordinates fixing all matrix conventions.
///
/// Invariants: each (particle, axis) pair appears exactly once as a position
/// and exactly once as a momentum; the length is even.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDescriptor {
    entries: Vec<CoordLabel>,
}

impl BasisDescriptor {
    pub fn new(entries: Vec<CoordLabel>) -> Result<Self> {
        if entries.is_empty() || entries.len() % 2 != 0 {
            return Err(CoreError::BasisMalformed(format!(
                "length {} is not a positive even number",
                entries.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            if !seen.insert((e.kind, e.particle, e.axis)) {
                return Err(CoreError::BasisMalformed(format!("duplicate label {e}")));
            }
        }
        for e in &entries {
            let partner = CoordLabel {
                kind: match e.kind {
                    CoordKind::Position => CoordKind::Momentum,
                    CoordKind::Momentum => CoordKind::Position,
                },
                ..*e
            };
            if !seen.contains(&(partner.kind, partner.particle, partner.axis)) {
                return Err(CoreError::BasisMalformed(format!("unpaired label {e}")));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[CoordLabel] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of canonical pairs (modes).
    pub fn n_modes(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn index_of(&self, label: CoordLabel) -> Option<usize> {
        self.entries.iter().position(|e| *e == label)
    }

    pub fn has_particle(&self, particle: usize) -> bool {
        self.entries.iter().any(|e| e.particle == particle)
    }

    /// Permutation matrix P with (P v)_target = v_self, i.e. `P * M * P^T`
    /// re-expresses a matrix from this ordering in `target` ordering.
    pub fn permutation_to(&self, target: &BasisDescriptor) -> Result<DMatrix<f64>> {
        if self.len() != target.len() {
            return Err(CoreError::DimensionMismatch { expected: self.len(), got: target.len() });
        }
        let mut p = DMatrix::zeros(self.len(), self.len());
        for (j, e) in self.entries.iter().enumerate() {
            let i = target
                .index_of(*e)
                .ok_or_else(|| CoreError::BasisMalformed(format!("label {e} missing in target")))?;
            p[(i, j)] = 1.0;
        }
        Ok(p)
    }

    /// Single 1D mode: (x, p).
    pub fn single_mode() -> Self {
        Self::new(vec![CoordLabel::position(1, 1), CoordLabel::momentum(1, 1)]).unwrap()
    }

    /// Two 1D particles, interleaved: (x^(1), p^(1), x^(2), p^(2)).
    pub fn interleaved_1d_pair() -> Self {
        Self::new(vec![
            CoordLabel::position(1, 1),
            CoordLabel::momentum(1, 1),
            CoordLabel::position(2, 1),
            CoordLabel::momentum(2, 1),
        ])
        .unwrap()
    }

    /// One planar particle, positions first: (x1, x2, p1, p2).
    pub fn single_particle_2d() -> Self {
        Self::new(vec![
            CoordLabel::position(1, 1),
            CoordLabel::position(1, 2),
            CoordLabel::momentum(1, 1),
            CoordLabel::momentum(1, 2),
        ])
        .unwrap()
    }

    /// Two planar particles, particle-blocked with positions first:
    /// (x1,x2,p1,p2 | x1,x2,p1,p2).
    pub fn pair_blocked_2d() -> Self {
        let mut v = Vec::with_capacity(8);
        for particle in 1..=2 {
            v.push(CoordLabel::position(particle, 1));
            v.push(CoordLabel::position(particle, 2));
            v.push(CoordLabel::momentum(particle, 1));
            v.push(CoordLabel::momentum(particle, 2));
        }
        Self::new(v).unwrap()
    }

    /// Two planar particles, axis-interleaved within each particle:
    /// (x1,p1,x2,p2 | x1,p1,x2,p2).
    pub fn pair_axis_interleaved_2d() -> Self {
        let mut v = Vec::with_capacity(8);
        for particle in 1..=2 {
            for axis in 1..=2 {
                v.push(CoordLabel::position(particle, axis));
                v.push(CoordLabel::momentum(particle, axis));
            }
        }
        Self::new(v).unwrap()
    }
}
