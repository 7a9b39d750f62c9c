//! Complex gamma and hypergeometric building blocks.

pub mod gamma;
pub mod hyp2f1;
pub mod hyp3f2;

pub use gamma::{gamma, gamma_product, gamma_ratio, ln_gamma_pos, log_gamma, pochhammer, pochhammer_real};
pub use hyp2f1::hyp2f1;
pub use hyp3f2::{hyp3f2_unit, Hyp3F2Sum};
