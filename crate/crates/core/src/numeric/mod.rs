//! Arbitrary-precision evaluation of polylogarithms at roots of unity and the
//! numeric regulator checks.

mod elementary;
mod fixed;
mod regulator;
mod zeta;

pub use elementary::{cos_sin_2pi, pi, root_of_unity};
pub use fixed::{BigComplex, BigReal};
pub use regulator::{
    embeddings, kernel_relation_residual, proj_mod_rk, regulator_value, verify_cor144, Cor144Check,
    EmbeddingIndex, KernelResidual, NumericReport,
};
pub use zeta::{
    hurwitz_zeta, li_at_root_of_unity, plan, working_bits, Estimate, EulerMaclaurinPlan,
};
