//! Exhaustive search over `𝒦(n, 2, t)` at small `n`, closed-form bounds, and
//! inspectors for the Perron vector of tented complexes.

pub mod asymptotic;
pub mod bounds;
pub mod enumerate;
pub mod inspect;
pub mod profile;
pub mod search;

pub use asymptotic::{asymptotic_check, AsymptoticRow, AsymptoticTable};
pub use bounds::{binomial, facet_bound, spectral_bound, telescoping_identity};
pub use enumerate::{enumerate_pure2, MAX_SEARCH_N};
pub use inspect::{detect_apex, proof_inspector, Apex, InspectorReport};
pub use profile::{perron_profile, PerronProfile, ProfileClass, ProfileRow};
pub use search::{
    max_facets_search, max_spectral_search, reference_complex, SearchMode, SearchOptions, SearchReport,
};
