//! Straight-line programs and the root counts of the `h_n` families.

pub mod expand;
pub mod families;
pub mod padic;
pub mod program;
pub mod real;

pub use expand::{expand, MAX_EXPANDED_DEGREE};
pub use families::{gen_hnk, gen_logistic, HnkFamily};
pub use padic::{count_slp_roots_padic, PadicRootCert, SlpRootReport};
pub use program::{slp_eval, slp_trace, Instr, Op, Slp, SlpBuilder, ONE, X};
pub use real::{certify_no_real_roots, logistic_report, LogisticReport, NoRealRootsCertificate};
