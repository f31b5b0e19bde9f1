//! Finite algebras over F2, minimal resolutions, Ext and Coext charts.

pub mod algebra;
pub mod ext;
pub mod resolution;
pub mod socle;

pub use algebra::{build_an, poincare_check, FDAlgebra, PoincareReport};
pub use ext::{
    cobar_coext, coext, doubling_regrade_check, ext, ext_from_resolution, hom_space, DoublingReport, ExtChart,
};
pub use resolution::{generator_table, lift_chain_map, ChainMap, Resolution};
pub use socle::{
    injective_embed_stage, module_socle, quotient_module, socle_scan, socle_scan_with_table, InjectiveStage, SocleReport,
};
