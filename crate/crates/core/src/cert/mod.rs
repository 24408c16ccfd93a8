//! Verdicts, certificates, matrix norms and the verification harness.

mod harness;
mod matrix;
mod tolerances;
mod verdict;

pub use harness::{
    star_tdz_inequality_check, verify_probe, verify_tdz_certificate, CertificationReport,
    NormedAlgebra, StarTdzEntry, StarTdzReport, WitnessProbe, WitnessSample, WitnessSource,
    DECAY_CRITERION,
};
pub use matrix::{operator_norm, power_iteration_norm, OperatorMatrix};
pub use tolerances::Tolerances;
pub use verdict::{Annihilator, Certificate, InverseWitness, Side, Tri, Verdict, WitnessGenerator};
