//! Fixtures, random instances, special families and verification campaigns.

pub mod campaign;
pub mod fixtures;
pub mod random;
pub mod registry;
pub mod special;
