//! Mental-state engine for BDI agents.
//!
//! Agent programs keep knowledge as a set of propositional formulas and
//! beliefs and desires as stratified bases; intentions are adopted plans.
//! [`program`] answers queries and checks coherence on programs directly,
//! [`dynamics`] changes them, and [`semantics`] provides the possible-worlds
//! models those operations are meant to agree with.

pub mod agentfile;
pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod plans;
pub mod program;
pub mod semantics;
pub mod syntax;

pub use dynamics::{DynamicsConfig, IntentionFilter, Operation};
pub use error::{Error, ParseError, Result};
pub use plans::{Plan, PlanId, PlanLibrary};
pub use program::{AgentProgram, Attitude, CoherenceReport, Condition, StratifiedBase};
pub use semantics::{AgentModel, Preorder, Valuation, WorldId};
pub use syntax::{parse_formula, print_formula, Formula, Vocabulary};
