pub mod action;
pub mod builder;
pub mod combinatorics;
pub mod error;
pub mod family;
pub mod hypergraph;
pub mod random;
pub mod rational;
pub mod realize;
pub mod search;
mod subsets;
pub mod verify;

pub use action::{ActionSpec, Group};
pub use builder::{
    build_lnr_hypergraph, construct, construct_base, hypergraph_to_base, lift_to_uniform,
    Construction,
};
pub use combinatorics::{
    base_size, binomial, closed_form, closed_form_large, closed_form_mid, find_min_l, lower_bound,
    m_value, witness_valid, ClosedForm, Witness,
};
pub use error::{Error, Result};
pub use family::{BaseFamily, FamilyDocument};
pub use hypergraph::{are_isomorphic, Hypergraph, NeighborhoodIndex};
pub use random::random_irrepeating;
pub use rational::ExactRational;
pub use realize::nearly_regular_uniform;
