//! Suspension splittings and gauge-group decompositions for orientable
//! closed 4-manifolds with free, odd cyclic, or mixed free-product
//! fundamental groups, with homology cross-checks and gcd-based
//! classification of the resulting homotopy types.

pub mod arith;
pub mod classifier;
pub mod cli;
pub mod decomposer;
pub mod homology;
pub mod manifold;
pub mod syntax;
pub mod terms;

pub use classifier::{
    classify, classify_base, count_types, rule_for, Answer, ClassBase, ClassRule, EquivalenceVerdict, LieGroup, Scope,
};
pub use decomposer::{
    decompose, decompose_as_mixed, gauge_from_suspension, suspension_of_spec, CaseUsed, Decomposition,
};
pub use homology::{
    chain_homology, homology_of_manifold, homology_of_term, smith_normal_form, suspend, GradedAbelianGroup, IntMatrix,
};
pub use manifold::{
    classify_pi1, connected_sum, stabilize, validate, CyclicFactor, ManifoldSpec, Pi1Class, Pi1Descriptor,
};
pub use terms::{map_space, normalize, wedge, GaugeBase, GaugeExpr, LoopFactor, SpaceTerm, Stabilization};
