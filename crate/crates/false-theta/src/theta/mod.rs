//! False theta functions, modular completions, and Eichler-type integrals.

pub mod eichler;
pub mod false_theta;
pub mod lattice;
pub mod psi;

pub use eichler::{
    eichler_eta3, eichler_eta3_series, eichler_f_cusp, eichler_f_from_tau, error_kernel,
    estar_principal, eta3_at, f_unary_at, principal_part_defect, php_residual, quantum_residual,
    selfdual_residual, verify_lemma41,
};
pub use false_theta::{
    f_false, f_hat, f_unary, multiplier_matrix, multiplier_psi, FalseThetaParams,
};
pub use lattice::LatticePair;
pub use psi::{
    big_psi, big_psi_hat, chi_factor, chi_factor_matrix, psi_false, psi_hat,
    verify_elliptic_shift, verify_jacobi_s, verify_jacobi_t, verify_rank1_modular,
};
