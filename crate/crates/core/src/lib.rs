pub mod error;
pub mod omega_poly;
pub mod zterm;
pub mod sword;
pub mod normalizer;
pub mod lcp;
pub mod finite_epigroups;
pub mod decider;
