//! Exact-arithmetic symbolic engine for bicrossed-product Hopf algebras.
//!
//! The crate builds double crossed sums of matched pairs of Lie algebras,
//! lifts finite-dimensional Lie module-comodules to the bicrossed product
//! Hopf algebra `F ▸◂ U`, verifies every (stable) anti-Yetter–Drinfeld and
//! Yetter–Drinfeld axiom as an executable checker, and evaluates the
//! Chevalley–Eilenberg / perturbed Koszul differentials as well as the
//! Hopf-cyclic (co)cyclic operators — all over exact rationals.
//!
//! Module map:
//! - [`exactnum`]: exact rationals and sparse rational linear algebra;
//! - [`liealg`]: Lie algebras, matched pairs, Lie-level (co)modules/checkers;
//! - [`hopfalg`]: PBW enveloping algebras, polynomial Hopf algebras, and the
//!   bicrossed product with its full structure maps;
//! - [`saydmod`]: module/comodule data over the bicrossed product and the
//!   YD/AYD/stability checkers plus lifting and character twisting;
//! - [`liecohomology`]: perturbed Koszul complexes, filtrations, and exact
//!   periodic cohomology;
//! - [`cyclichom`]: the cocyclic module, the bicocyclic complex, total
//!   complex, Alexander–Whitney and Ψ transport, and the weight grading;
//! - [`session`]: the declarative input format, built-in fixtures, and the
//!   commands behind the `hopfcyc` binary.

pub mod cyclichom;
pub mod exactnum;
pub mod hopfalg;
pub mod liealg;
pub mod liecohomology;
pub mod report;
pub mod saydmod;
pub mod session;
