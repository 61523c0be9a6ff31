//! Finite category theory, executable.
//!
//! Categories, functors, natural transformations, limits and colimits,
//! adjunctions, monads and comonads are represented as concrete data over
//! named finite carriers, and every law is an exhaustively checkable
//! assertion with counterexample witnesses.

pub mod adjunction;
pub mod category;
pub mod cli;
pub mod finset;
pub mod functor;
pub mod monad;
pub mod monoid;
pub mod order;
pub mod quiver;
pub mod universal;
pub mod yoneda;

pub use category::{classify_morphism, core_groupoid, delooping, FinCategory, MorphismClass};
pub use finset::{FinFunction, FinSet};
pub use functor::{FinFunctor, NatTrans};
pub use monoid::MonoidTable;
