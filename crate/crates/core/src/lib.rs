//! Exact combinatorics of simple 3-polytopes and the multigraded cohomology
//! of their moment-angle manifolds.
//!
//! The crate provides:
//!
//! - validated combinatorial polytopes with canonical forms and isomorphism
//!   testing ([`polytope`], [`rotation`]);
//! - the construction toolbox: cuts, full truncation, medial graphs and
//!   edge-twists ([`construct`], [`planar`]);
//! - k-belt enumeration, polytope classification and the separable circuit
//!   conditions ([`belts`]);
//! - the bigraded Betti tables and ring structure of `H*(Z_P)` with the
//!   rank invariants used by the rigidity criteria ([`homology`],
//!   [`cohomology`]);
//! - colorings, characteristic maps and face-ring presentations of the
//!   canonical small covers and quasitoric manifolds ([`toric`]);
//! - invariant fingerprints and corpus experiments ([`rigidity`],
//!   [`corpus`]);
//! - text and planar-code serialization ([`codec`]) and brute-force
//!   reference implementations used by the verification suites
//!   ([`reference`]).

pub mod belts;
pub mod codec;
pub mod cohomology;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod jsonout;
pub mod planar;
pub mod polytope;
pub mod reference;
pub mod rigidity;
pub mod rotation;
pub mod scalar;
pub mod subset;
pub mod toric;

pub use error::{PolyError, Result};
pub use planar::{GeneralPolytope3, PlanarGraph, QuadGraph};
pub use polytope::{NerveComplex, SimplePolytope3};
pub use subset::OmegaSubset;
