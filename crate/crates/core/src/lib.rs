//! Dual representations of λ-term families.
//!
//! Each family pairs a base type restricted by a decidable filter with a
//! structured algebraic type whose values are exactly the filtered ones:
//!
//! | family | base | filter | structured |
//! |---|---|---|---|
//! | closable skeletons | [`Motzkin`] | [`motzkin::is_closable`] | [`Closable`] |
//! | uniquely closable skeletons | [`Motzkin`] | [`motzkin::is_ucs`] | [`Ucs`] |
//! | m-open terms | [`Lmt`] | [`lambda::is_open`] | [`OpenTerm`] |
//!
//! [`family`] checks the converters of any such pairing, [`gen`] draws seeded
//! random members, and [`props`] checks the labeling characterizations as
//! exhaustive suites.

pub mod cli;
pub mod closable;
pub mod dynamic;
pub mod error;
pub mod family;
pub mod gen;
pub mod lambda;
pub mod motzkin;
pub mod props;
mod syntax;
pub mod ucs;

pub use closable::{Closable, ClosableFamily};
pub use error::{Error, Path, Result, Step};
pub use family::{Family, ParamFamily, Validated};
pub use gen::Rng;
pub use lambda::{Lmt, OpenFamilies, OpenFamily, OpenTerm};
pub use motzkin::Motzkin;
pub use ucs::{ClosedAbove, Ucs, UcsFamily};
