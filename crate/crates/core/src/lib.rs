//! Plane maps with three vertices and three faces, the 2-coloured maps
//! obtained by deleting one edge of their quadrangulations, and the cyclic
//! incidence structure between the two catalogs.
//!
//! ```
//! use ribbonmap::catalog::{build_m33, build_m446};
//!
//! let m33 = build_m33();
//! assert_eq!(m33.len(), 23);
//! assert_eq!(build_m446(&m33)?.len(), 40);
//! # Ok::<(), ribbonmap::Error>(())
//! ```
//!
//! The guide in `book/` walks through each stage.

pub mod canon;
pub mod census;
pub mod compare;
pub mod catalog;
pub mod error;
pub mod export;
pub mod golden;
pub mod map;
pub mod orders;
pub mod perm;
pub mod quad;

pub use canon::{canonical_code, canonical_form, colored_canonical_code, colored_canonical_form, CanonicalCode};
pub use error::{Error, Result};
pub use map::{Color, ColoredMap, Counts, MapRecord, OrientedMap};
pub use perm::Permutation;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../book/src/canon.md")]
    mod canon {}
    #[doc = include_str!("../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../book/src/quad.md")]
    mod quad {}
    #[doc = include_str!("../book/src/orders.md")]
    mod orders {}
    #[doc = include_str!("../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../book/src/compare.md")]
    mod compare {}
    #[doc = include_str!("../book/src/cli.md")]
    mod cli {}
}
