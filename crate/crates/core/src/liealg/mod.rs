//! Classical-limit Lie algebras: ḡ, its double loop algebras and their
//! universal central extensions.

mod mry;
mod simple;
mod uce;

pub use mry::{eval_lie_word, mry_psi, verify_t_relations_in_uce, LieWord, MryModel};
pub use simple::{build_simple, GVec, SimpleLie};
pub use uce::{check_uce_jacobi, ev_g, kappa, omega_reduce, pi_project, random_uce, uce_bracket, v_dv, v_t_dt, Central, LoopElem, RingTag, UceElem, UceKey};
