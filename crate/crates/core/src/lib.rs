//! Braid closures to quadratic fields: braid words, Artin representation
//! and link groups, cluster-algebra mutation, stationary AF-algebra data and
//! real quadratic number fields, composed in [`functor`].

pub mod af;
pub mod artin;
pub mod braid;
pub mod cluster;
pub mod functor;
pub mod numfield;
