//! A laboratory for finite order theory: Scott closed families, the
//! consistent Hoare powerdomain `H_c(P)`, F-Scott closure systems over
//! ∨↑-semilattices, and exhaustive checks of their structure theorems on
//! every poset up to a size bound.
//!
//! On a finite poset every subset that is directed has a greatest element,
//! so Scott closed sets are the lower sets and Scott continuous maps are the
//! monotone ones. The library never assumes either fact; both are computed
//! from the general definitions and compared in the test suite.

pub mod enumeration;
pub mod error;
pub mod family;
pub mod hoare;
pub mod io;
pub mod map;
pub mod poset;
pub mod semilattice;
pub mod subset;
pub mod suite;

pub use enumeration::{are_isomorphic, canonical_form, CanonicalForm, SemilatticeCatalog};
pub use error::{Error, Result};
pub use family::{gamma, gamma0, SetFamily};
pub use hoare::{gamma_c, ConsistentHoare, Refutation, SupVerdict, WitnessCert};
pub use map::PosetMap;
pub use poset::FinitePoset;
pub use semilattice::{cl_f, gamma_f, ClosureSteps, FClosureSystem, VSemilattice};
pub use subset::SubsetBits;
