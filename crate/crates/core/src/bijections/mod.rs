//! Executable bijections: `Gamma_n` and `BME_n` on `(k, l)` partitions,
//! `Theta^(l)` insertion, barred inversion sequences and Lehmer codes.

mod barred;
mod bme;
mod theta;

pub use barred::{barred_to_lhp, lhp_to_barred, BarredInvSeq};
pub use bme::{
    bme, bme_bijectivity_check, bme_inv, bme_inv_mults, bme_parts, gamma, gamma_inv, BmeImage, BmeReport,
    PartMultiplicity,
};
pub use theta::{theta, theta_bijectivity_check, theta_bme_probe, theta_parts, ProbeReport, ThetaReport};

pub use crate::statistics::{invseq_to_perm, perm_to_invseq};
