//! Distribution-free bounds on expected subgraph counts in hidden-variable
//! random graphs, from mean / MAD / range degree information only, plus the
//! extremal three-point graph generator and exact motif counting to validate
//! the bounds against simulated and real edge lists.

pub mod ambiguity;
pub mod bounds;
pub mod error;
pub mod graphgen;
pub mod kernels;
pub mod motifs;
pub mod patterns;

pub use error::{Error, Result};
