//! The sequential effect algebra E₀ over truncated integer polynomials, in
//! which `f(0, 0, 1)` has two distinct `n`-th roots, together with a generic
//! axiom harness that checks sequential effect algebra laws over bounded
//! windows.

pub mod certificate;
pub mod element;
pub mod error;
pub mod expr;
pub mod harness;
pub mod poly;
pub mod sea;
pub mod text;
pub mod window;

pub use certificate::{certify, library_version, Relation, RootCertificate, Verdict};
pub use element::{enumerate_roots, Branch, Element, OplusOutcome};
pub use error::{AlgebraError, HarnessError, ParseError};
pub use expr::eval;
pub use harness::{check_axiom, check_lemma1, full_suite, run_suite, AxiomId, CheckReport, Harness, Limits, SuiteReport};
pub use poly::{map_f, map_f3, map_g, map_g3, oracle_full_product, AlgebraConfig, Int, TruncPoly};
pub use sea::{E0Instance, FuzzyInterval, MutantE0, Mutation, SeaInstance};
pub use text::{parse_element, parse_poly};
pub use window::{SampleWindow, WindowMode};
