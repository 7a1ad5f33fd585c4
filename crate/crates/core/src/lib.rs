//! Exact computational tools for minimal rank-2 Kac-Moody groups over
//! finite fields: root combinatorics, certified structure-constant signs,
//! free-product unipotent normal forms, the action on the (q+1)-regular
//! tree, and covolume arithmetic for lattices acting on it.

pub mod error;
pub mod ffield;
pub mod lattice;
pub mod laurent;
pub mod lie;
pub mod root_datum;
pub mod tree;
pub mod unipotent;

pub use error::{Error, Result};
pub use ffield::{Fq, FqElem};
pub use root_datum::{EpsilonPair, Gcm, Root, RootClass, RootDatum, WeylWord};
pub use unipotent::{Syllable, TorsionClass, UWord};
