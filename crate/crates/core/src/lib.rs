//! Symplectic analysis of bipartite Gaussian states on commutative and
//! non-commutative planes.
//!
//! The crate provides, in layers:
//!
//! * basis-aware symplectic linear algebra — symplectic forms, spectra,
//!   congruences, partial transposition, physicality tests and the
//!   two-particle standard-form reduction ([`basis`], [`symplectic`],
//!   [`williamson`]);
//! * single-particle kinematics on the non-commutative plane — wave-packet
//!   variance matrices, the linear map to effective commutative
//!   coordinates, and uncertainty products ([`packet`]);
//! * the commutative benchmark families: the symmetrized 1D pair and the
//!   planar 2D pair ([`pair1d`], [`pair2d`]);
//! * the twisted two-particle state on the non-commutative plane with its
//!   theta-dependent physicality bound and entanglement verdict
//!   ([`ncpair`]);
//! * an independent Gauss-Hermite quadrature oracle for every matrix
//!   element ([`oracle`]);
//! * file formats, figure data generation and verification batteries
//!   ([`io`], [`figures`], [`verify`]).

pub mod basis;
pub mod error;
pub mod figures;
pub mod io;
pub mod measures;
pub mod ncpair;
pub mod oracle;
pub mod packet;
pub mod pair1d;
pub mod pair2d;
pub mod symplectic;
pub mod verify;
pub mod williamson;

pub use basis::{BasisDescriptor, CoordKind, CoordLabel};
pub use error::{CoreError, Result};
pub use symplectic::{SymplecticForm, SymplecticSpectrum, VarianceMatrix};
