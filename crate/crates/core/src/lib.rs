pub mod error;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod rng;
pub mod sampling;
pub mod recovery;
pub mod contraction;
pub mod packing;
pub mod sparsifier;
pub mod monmat;
pub mod mincut;
pub mod cli;
