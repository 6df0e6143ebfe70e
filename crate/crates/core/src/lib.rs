//! Bent Boolean functions and the distance to their duals.
//!
//! The crate builds bent functions from partial spreads (including Dillon's
//! `PS_ap` class over the Desarguesian spread), from the Maiorana-McFarland
//! construction and from the symmetric family, computes Walsh-Hadamard
//! spectra, duals and normalized Rayleigh quotients under either the standard
//! dot product or the trace form of GF(2^k) x GF(2^k), and checks the closed
//! forms for `dist(f, dual f)` against exhaustive enumeration.
//!
//! Truth tables are indexed little-endian: `x_1` is the least significant bit
//! of the point index. Functions on GF(2^k) x GF(2^k) use the index
//! `bits(x) + 2^k * bits(y)`.

pub mod analysis;
pub mod boolfun;
pub mod error;
pub mod field;
pub mod spectral;
pub mod spreads;

pub use boolfun::{AnfPoly, Permutation, TruthTable};
pub use error::{Error, FieldError, Result};
pub use field::{FieldCtx, GfElem};
pub use spectral::{BinaryMatrix, DualityClass, DualityTag, Pairing, WalshSpectrum};
pub use spreads::{PartialSpread, SpreadLine, SpreadSelection};
