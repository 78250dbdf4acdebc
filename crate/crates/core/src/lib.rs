//! Virtual knot mosaics.
//!
//! A virtual n-mosaic is an n×n grid of the eleven standard tiles together
//! with a pairwise identification of the 4n boundary edges. The glued square
//! is a closed orientable surface carrying a knot or link diagram. This crate
//! computes genus and Gauss codes, bracket based fingerprints, the move
//! calculus, the braid compiler, and exhaustive sweeps over small mosaics.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod braid;
pub mod catalog;
pub mod invariants;
pub mod moves;
pub mod poly;
pub mod search;
pub mod surface;
pub mod tiles;
pub mod trace;

pub use invariants::Fingerprint;
pub use poly::Laurent;
pub use surface::{BoundaryPairing, VirtualMosaic};
pub use tiles::{Dir, MosaicGrid, Tile};
pub use trace::{CanonicalCode, GaussCode, Passage, Token};
