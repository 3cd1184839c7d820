//! Extremal fewnomial systems and their certification.

pub mod block;
pub mod lemma;
pub mod poonen;
pub mod system;
pub mod verify;

pub use system::{
    back_substitute, betas, circuit_column, circuit_null_vector, eliminate_r_n, gen_g_eps, SparseSystem,
};
pub use verify::{sweep_eps, verify_family, RootReport, Status, SweepReport, VerificationReport};
pub use lemma::{lemma_tri_certificate, lemma_triangles, LemmaCertificate};
pub use block::{certify_block_system, gen_block_system, BlockReport};
pub use poonen::{gen_poonen_rk, poonen_compare, poonen_report, PoonenVariant};
