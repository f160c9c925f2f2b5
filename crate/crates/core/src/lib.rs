//! Equivariant quantum K-theory Chevalley formulas for flag manifolds of
//! types A and C, computed exactly through the quantum alcove model.
//!
//! The G/B engine in [`chevalley::gb`] is the reference; the closed-form
//! parabolic evaluators are checked against its projection in [`verify`].

pub mod alcove;
pub mod chevalley;
pub mod error;
pub mod qbg;
pub mod ring;
pub mod verify;
pub mod weyl;

pub use alcove::{AdmissibleSubset, ChainKind, LabeledChain, WtOrder};
pub use error::{Error, Result};
pub use chevalley::{CaseLabel, ClosedForm};
pub use qbg::{EdgeKind, QbgGraph};
pub use ring::{NovikovMonomial, SchubertCombo, WeightLaurent};
pub use weyl::{CorootVector, Family, GroupDescriptor, Parabolic, PositiveRoot, Weight, WeylElement};
pub use verify::{ReportRow, Suite, SuiteConfig};
