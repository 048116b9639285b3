//! Exact verification kernels for circulant Hadamard matrices.
//!
//! A circulant Hadamard matrix of order `n` is determined by its first row, a
//! ±1 sequence whose periodic autocorrelation vanishes off zero. This crate
//! checks that condition several independent ways and keeps every check in
//! exact arithmetic:
//!
//! * [`seqcore`]: sequences, autocorrelation, the circulant matrix, exact
//!   eigenvalues and the order/weight necessary conditions;
//! * [`cyclotomic`]: `ℤ[ω_n]` with a canonical zero test modulo `Φ_n`, and the
//!   first-quadrant real basis `{1, 2cos(2πℓ/n)}` with its rank diagnostics;
//! * [`spectra`]: pair-difference tables `N_ℓ^k` over the `−1` positions and
//!   the basis coefficients they determine;
//! * [`numtheory`]: extended Euclid, linear congruences and the `n = 4t²`
//!   congruence analysis;
//! * [`search`]: exhaustive, weight-constrained and pruned enumeration, the
//!   ground truth for everything above.
//!
//! ```
//! use chm_core::seqcore::Sequence;
//!
//! let row: Sequence = "-+++".parse().unwrap();
//! assert!(row.is_circulant_hadamard());
//! assert!(row.circulant().is_hadamard());
//! assert!(row.has_flat_spectrum());
//! ```

pub mod cyclotomic;
pub mod numtheory;
pub mod search;
pub mod seqcore;
pub mod spectra;

pub use cyclotomic::{CycloElement, QuadrantBasisVector};
pub use search::{SearchConfig, SearchReport, Strategy};
pub use seqcore::Sequence;
pub use spectra::{IndexSet, NTable};

// Book chapters are compiled as doctests so their snippets stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/congruences.md")]
    mod congruences {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
