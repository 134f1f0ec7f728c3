//! The free Lie algebra on two generators truncated at degree `D`, its
//! metabelian quotients, and the residue computation at torsion points.

mod assoc;
mod element;
mod hall;
mod quotient;
mod residue;
mod sym;
mod word;

pub use assoc::AssocElement;
pub use element::{ad_exp, ad_series, bch, bracket, LieElement};
pub use hall::{hall_basis, parse_bracket, HallWord, Word};
pub use quotient::{
    check_polbar_ideal, quotient_reduce, to_pol, to_polbar, PolBarElement, PolElement, QuotientTag,
    Reduced,
};
pub use residue::{
    closed_form_residue, residue_at_torsion, u_tilde, u_tilde_invariance_check, verify_c310,
    verify_c39, C310Identity, LieCheck, ResidueReport,
};
pub use sym::{mu_dual, pr_project, SymTensor};
pub use word::{log_of_word, monodromy_t, GroupWord, Loop};
