//! Exact counting and uniform random generation of finitely generated
//! subgroups of the modular group PSL2(Z) = <a, b | a^2 = b^3 = 1>.
//!
//! Subgroups are represented by their Stallings graphs ([`graph::Graph`]).
//! [`counting`] gives exact big-integer counts by combinatorial type and by
//! isomorphism type, [`sampler`] draws uniformly among them, and
//! [`silhouette`] rewrites a cyclically reduced graph to its normal form.
//! [`oracle`] is a brute-force enumerator used to check all of the above.

pub mod cli;
pub mod counting;
pub mod graph;
pub mod io;
pub mod moves;
pub mod oracle;
pub mod sampler;
pub mod silhouette;
pub mod types;
pub mod words;
