//! Exact random-walk statistics on trees.
//!
//! The crate computes hitting, joining and meeting times, Kemeny's constant and
//! barycenters over arbitrary-precision integers and rationals, generates the
//! path/star/lever/broom/double-broom families together with a ledger of their
//! closed forms, runs the constructive leaf-moving transforms that drive trees
//! towards the extremal families, and audits every closed form and extremal
//! claim against exhaustive enumeration and independent oracles.
//!
//! Loops over enumerated trees, hitting-profile columns and Monte Carlo walks
//! run on rayon when the `parallel` feature is enabled (the default). Every
//! such loop also has a sequential path selected through [`Exec`].

pub mod audit;
pub mod cli;
pub mod exact;
mod exec;
pub mod families;
pub mod transforms;
pub mod tree;
pub mod walk;

pub use exact::{ExactInt, ExactRational};
pub use exec::Exec;
pub use tree::{Tree, TreeError, VertexId};
