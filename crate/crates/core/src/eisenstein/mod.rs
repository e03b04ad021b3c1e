//! The Siegel Eisenstein family on the doubled group.

pub mod coeffs;
pub mod gamma;
pub mod measure;
pub mod params;

pub use coeffs::{
    classical_coeff, congruence_check, family_coeff, improved_coeff, improved_coeff_parts,
    CongruenceReport, ImprovedParts,
};
pub use gamma::{
    const_b2g, gamma_g, gamma_g_exact, gamma_g_standard, gamma_identities_check, prefactor_a,
    prefactor_a_star, GammaIdentityReport, Prefactor, SymConst,
};
pub use measure::{measure_eval, psd_matrices, QExp2};
pub use params::EisParams;
