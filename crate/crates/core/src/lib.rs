pub mod algebra;
pub mod curves;
pub mod jobs;
pub mod mundet;
pub mod potentials;
pub mod stability;
