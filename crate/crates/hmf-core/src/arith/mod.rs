//! Exact arithmetic building blocks shared by the algebraic modules.

pub mod enumerate;
pub mod hnf;
pub mod int;
pub mod parse;
pub mod poly;
pub mod poly_fp;
pub mod qmat;

pub use int::Q;
