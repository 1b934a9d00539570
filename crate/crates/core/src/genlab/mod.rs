//! Instance generators: planted hierarchical community structure and the
//! graph/formula constructions used to probe modularity and expansion.

mod constructions;
mod planted;

pub use constructions::{
    default_charges, disjoint_copies, random_kcnf, ring_of_cliques, rooted_clique_product,
    tseitin, RingOfCliques, RootedProduct, TSEITIN_MAX_DEGREE,
};
pub use planted::{generate, GenParams, PlantedInstance, PlantedNode, PlantedTree};
