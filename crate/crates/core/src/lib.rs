//! Combinatorics of sigma-conjugacy classes meeting Iwahori double cosets.
//!
//! The crate models an unramified reductive group purely through its based
//! root datum together with a diagram automorphism `delta`. On top of that it
//! provides the extended affine Weyl group `X_*(T) ⋊ W`, Newton and Kottwitz
//! points of its elements, `(J, w, delta)`-alcove certificates, the minimal
//! Newton stratum of a double coset `IxI`, virtual dimensions, and an
//! independent Deligne-Lusztig reduction engine that enumerates the full set
//! of classes meeting `IxI` together with the dimensions of the corresponding
//! affine Deligne-Lusztig varieties.
//!
//! Everything is exact: lattice data is integral and Newton points are
//! arbitrary-precision rationals.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod affine;
pub mod alcove;
pub mod error;
pub mod lang;
pub mod lattice;
pub mod oracle;
pub mod root_datum;
pub mod sigma;
pub mod weyl;

pub use affine::{AffineElt, AlcoveOffsets, CyclicShift, ShrunkenStatus};
pub use alcove::AlcoveCertificate;
pub use error::{Error, Result};
pub use lang::{Field, Series};
pub use lattice::{CochVec, Pi1Element, Q};
pub use oracle::{Budget, ReductionResult, Reducer, StrataRow, StrataTable};
pub use root_datum::{DatumSpec, Levi, Level, RootDatum};
pub use sigma::SigmaClass;
pub use weyl::WeylElt;
