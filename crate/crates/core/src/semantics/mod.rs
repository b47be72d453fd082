//! Explicit possible-worlds semantics.
//!
//! Everything here works by enumeration over a finite model and serves as the
//! reference against which the program-level operations are checked.

mod eval;
pub mod export;
mod induced;
mod model;
mod ops;

pub use induced::{
    extract_program, induced_model, induced_order, models_equal, relation_pairs,
    world_description, DEFAULT_WORLD_CAP,
};
pub use model::{AgentModel, Preorder, Valuation, World, WorldId};
