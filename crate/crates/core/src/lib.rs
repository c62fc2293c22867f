//! Exact finite models of ordered compact spaces.
//!
//! Finite posets stand in for ordered compact Hausdorff spaces (every finite
//! poset carries the discrete topology, which is compact and makes the order
//! closed). On top of them the crate provides limits and colimits of finite
//! diagrams, the Vietoris monad of upper sets with its coalgebras, the algebra
//! of monotone `[0,1]`-valued maps with its operations, the countable
//! operation `δ` on eventually simple sequences, and finite metric spaces with
//! their specialisation orders.
//!
//! All arithmetic is exact over the rationals.

pub mod dual;
pub mod enumerate;
pub mod format;
pub mod gen;
pub mod metric;
pub mod poscomp;
pub mod poset;
pub mod quantale;
pub mod seq;
pub mod vietoris;

pub use poset::{FinPoset, MonoMap};
pub use quantale::Rat01;
