//! Exact finite-algebra workbench: finite rings as index tables, their
//! endomorphisms and right modules, bounded skew polynomial / Laurent /
//! truncated-series extensions, and decision procedures for a family of
//! annihilator and semicommutativity conditions.

pub mod catalog;
pub mod defs;
pub mod error;
pub mod finmod;
pub mod finring;
pub mod properties;
pub mod skewpoly;
pub mod theorems;
