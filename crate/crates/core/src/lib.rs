//! Root-system and Weyl-group combinatorics for `SO(n,n) ⊂ SO(n+1,n+1)`
//! (types `D_n ⊂ D_{n+1}`), critical sets of the degree-`2n` L-functions of
//! `GL_1 × SO(n,n)`, and an exhaustive verifier relating criticality, an
//! integer inequality, and Kostant representatives.
//!
//! All arithmetic is exact over `i64`; `ρ` of type D is integral so no
//! fractions appear.

pub mod cli;
pub mod critical;
pub mod error;
pub mod lemma;
pub mod parabolic;
pub mod rootdata;
pub mod weyl;

pub use critical::{
    cohomological_degree, critical_set_rankin_selberg, critical_set_so, is_critical_twisted,
    ratio_argument_map, SoWeight, TwistData,
};
pub use error::{Error, Result};
pub use lemma::{
    check_condition_1, check_condition_2, check_condition_3, verify_equivalence, DWindow,
    LemmaInstance, LemmaReport, SweepConfig, SweepReport,
};
pub use parabolic::{KostantRepSet, Parabolic};
pub use rootdata::{RootSystem, Weight};
pub use weyl::{WeylElement, DEFAULT_ENUMERATION_CEILING};
