pub mod algebra;
pub mod azu;
pub mod bord2;
pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod frob;
pub mod inv;
pub mod par;
pub mod report;
pub mod suite;
pub mod tang;

pub use error::{Error, Result};
