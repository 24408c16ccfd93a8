//! Decide whether concrete elements of a few Banach algebras are zero divisors,
//! topological divisors of zero, or invertible, and emit certificates that the
//! [`cert`] harness checks independently.
//!
//! * [`disk`]: polynomials in the disk algebra `A(D)`.
//! * [`linf`]: `L^inf` over atomic measure spaces.
//! * [`mult`]: multiplication operators `M_h` on `L^p`.
//! * [`compose_lp`]: composition operators `C_phi` on `l^p` for self-maps of `N`.
//! * [`hardy`]: truncated composition operators on the Hardy space.

pub mod cert;
pub mod compose_lp;
pub mod disk;
pub mod error;
pub mod hardy;
pub mod linf;
pub mod mult;

pub use error::{Error, Result};
