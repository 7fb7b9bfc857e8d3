//! Binomial coefficients, Catalan numbers and the characteristic-p identities
//! relating them.
//!
//! Exact big-integer arithmetic is the reference path; Lucas' theorem is the
//! fast path for residues.

mod binom;
mod catalan;
mod identities;

pub use binom::{binom_ext, binom_mod_p, reduce_mod};
pub use catalan::{catalan, catalan_mod, catalan_mod_via_congruence};
pub use identities::{
    power_sum_poly, verify_binomial_reduction, verify_catalan_congruence, verify_catalan_identity,
    verify_char0_identity, verify_power_sum, verify_tower_relation, verify_trinomial_and_sum,
    verify_zero_window, CatalanCheck, IdentityCheck,
};
