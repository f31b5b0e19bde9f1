//! Cartan-Eilenberg E2 pages and the scripted vanishing chains.

pub mod ce;

pub use ce::{
    ce_e2_algebras, ce_e2_comodule_first, ce_e2_comodule_second, inner_ext_modules, tensor_module, tor_modules, E2Page,
    E2Source, NormalSequence,
};
pub mod vanishing;

pub use vanishing::{
    run_vanishing_chain, CheckOutcome, ScenarioId, ScenarioReport, VanishingScenario, SCENARIO_MAX_S,
};
