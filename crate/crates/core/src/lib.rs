//! Tambara functors over finite groups: the bispan category, levelwise-finite and
//! Burnside functors, Tambara ideals, prime spectra, nilradicals and kilpotence.

pub mod axioms;
pub mod bispan;
pub mod burnside;
pub mod corpus;
pub mod evaluate;
pub mod files;
pub mod functor;
pub mod group;
pub mod gset;
pub mod ideal;
pub mod lattice;
pub mod random;
pub mod ring;
pub mod spectrum;
