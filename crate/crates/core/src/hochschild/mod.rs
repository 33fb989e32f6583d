//! The normalized Hochschild complex, Connes' operator, shuffle and cyclic
//! shuffle products, and chains in `k[u] ⊗ C_*(A)` and its completions.

mod chain;
mod perms;
mod uchain;

pub use chain::{boundary_b, connes_b, BarWord, Chain, ChainElement};
pub use perms::{act, act_inverse, cyclic_shuffles, shuffles, Permutation};
pub use uchain::{
    cyclic_shuffle_product, mu_chain, mu_chain_clipped, shuffle_product, tower_boundary, Theory,
    UChain,
};
