//! Toolkit for the pure logic of necessitation N and its extensions
//! NA_{m,n} and N⁺A_{m,n}: formula parsing, model checking over
//! formula-indexed relational models, frame-property verification,
//! Hilbert proof checking with the Ros□ rule, and a certificate-producing
//! decision procedure.

pub mod countermodels;
pub mod decide;
pub mod formula;
pub mod proofs;
pub mod semantics;

pub use formula::{Formula, LogicId, ParseError};
pub use semantics::{DefaultPolicy, ExtensionalModel, IntensionalModel, Model, WorldId};
