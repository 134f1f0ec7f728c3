//! `GL2(Z/N)`, the coset space `P(Z/N)\GL2(Z/N)`, torsion divisors and the
//! horospherical map with everything built on top of it.

mod divisor;
mod formulas;
mod group;
mod isom;
mod kernel;
pub mod linalg;

pub use divisor::Divisor;
pub use formulas::{
    dir_l_coefficients, hodge_coefficients, Cyclotomic, CyclotomicCombo, FormalCombination,
    LiCombo, Polylog, RegulatorFormula, Symbol,
};
pub use group::{
    act, coset_representatives, group_tables, nonzero_points, GroupTables, ModMatrix, TorsionPoint,
};
pub use isom::{
    horospherical, horospherical_value, is_in_isom_minus_infinity, phi_infinity, psi_u,
    residue_consistency_check, torsion_residue, ConsistencyCheck, IsomFunction,
};
pub use kernel::{kernel_basis, surjectivity_report, SurjectivityReport};
