#![no_std]
extern crate alloc;

pub mod cartan;
pub mod error;
pub mod freealg;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub mod morphisms;
pub mod report;
pub mod dist;
pub mod phi;
pub mod liealg;
pub mod limitphi;
pub mod completion;
