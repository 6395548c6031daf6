//! Combinatorial and numerical shadows of quantum affine algebras:
//! q-characters, cluster mutation, Baxter TQ and QQ relations, the sl2
//! quantum Grothendieck ring, truncation-parameter combinatorics and an XXZ
//! spin-chain bench.

pub mod cartan;
pub mod cluster;
pub mod lattice;
pub mod laurent;
pub mod qchar;
pub mod qgroth;
pub mod relations;
pub mod truncation;
pub mod vars;
pub mod xxz;

pub use cartan::{CartanData, CartanType};
pub use laurent::{Laurent, Monomial};
pub use vars::{PsiWeight, YLaurent, YMonomial};
