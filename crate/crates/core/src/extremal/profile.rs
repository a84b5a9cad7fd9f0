//! Measured Perron vector of a tented complex against its first-order predictions.
//!
//! With `f` scaled so the largest boundary sum is 1 and apex `u`:
//!
//! * edge `G` avoiding `u`: `f(G) ≈ 1/(2n−3) + 3 d_{M_u}(G) / (4n²)`
//! * edge `{u, x}`: `f ≈ 1/2 − 1/(4n)`
//! * triangle `F` avoiding `u`: `f(∂F) ≈ 3/(2n−3) + 3 |N^d(F)| / (4n²)`
//!
//! where `M_u` is the set of triangles avoiding `u` and `d_{M_u}(G)` counts
//! those containing `G`.

use serde::{Deserialize, Serialize};

use super::inspect::detect_apex;
use crate::chains::boundary_sums;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::spectra::{perron_vector, Normalization, SpectralOptions};

/// Smallest `n` for which the predictions are meaningful.
pub const PROFILE_MIN_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileClass {
    NonApexEdge,
    ApexEdge,
    MuFace,
}

impl ProfileClass {
    pub const ALL: [ProfileClass; 3] = [ProfileClass::NonApexEdge, ProfileClass::ApexEdge, ProfileClass::MuFace];

    pub fn name(self) -> &'static str {
        match self {
            ProfileClass::NonApexEdge => "non_apex_edge",
            ProfileClass::ApexEdge => "apex_edge",
            ProfileClass::MuFace => "mu_face",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub class: ProfileClass,
    pub face: Face,
    pub measured: f64,
    pub predicted: f64,
}

impl ProfileRow {
    pub fn relative_deviation(&self) -> f64 {
        ((self.measured - self.predicted) / self.predicted).abs()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronProfile {
    pub n: usize,
    pub apex: u32,
    pub q1: f64,
    pub rows: Vec<ProfileRow>,
}

impl PerronProfile {
    /// Largest relative deviation within a class; zero when the class is empty.
    pub fn max_deviation(&self, class: ProfileClass) -> f64 {
        self.rows.iter().filter(|r| r.class == class).map(ProfileRow::relative_deviation).fold(0.0, f64::max)
    }

    pub fn max_deviation_overall(&self) -> f64 {
        self.rows.iter().map(ProfileRow::relative_deviation).fold(0.0, f64::max)
    }
}

pub fn perron_profile(k: &SimplicialComplex, opts: &SpectralOptions) -> Result<PerronProfile> {
    k.ensure_pure()?;
    let n = k.n_vertices();
    if n < PROFILE_MIN_N {
        return Err(Error::BadParams(format!("perron profile needs n >= {PROFILE_MIN_N}, got {n}")));
    }
    let apex = detect_apex(k).ok_or(Error::NoApex)?.vertex;
    let opts = opts.clone().with_normalization(Normalization::MaxBoundarySumOne);
    let perron = perron_vector(k, 1, &opts)?;
    let f = &perron.vector;
    let sums = boundary_sums(k, 1, f)?;
    let nf = n as f64;
    let n2 = 4.0 * nf * nf;

    let mut rows = Vec::new();
    for (e, edge) in k.faces(1).iter().enumerate() {
        let (class, predicted) = if edge.contains(apex) {
            (ProfileClass::ApexEdge, 0.5 - 1.0 / (4.0 * nf))
        } else {
            let d_mu = k.coface_indices(1, e).iter().filter(|&&c| !k.faces(2)[c as usize].contains(apex)).count();
            (ProfileClass::NonApexEdge, 1.0 / (2.0 * nf - 3.0) + 3.0 * d_mu as f64 / n2)
        };
        rows.push(ProfileRow { class, face: edge.clone(), measured: f[e], predicted });
    }
    for (c, tri) in k.faces(2).iter().enumerate() {
        if tri.contains(apex) {
            continue;
        }
        let nd = k.down_neighbor_indices(2, c).len();
        rows.push(ProfileRow {
            class: ProfileClass::MuFace,
            face: tri.clone(),
            measured: sums[c],
            predicted: 3.0 / (2.0 * nf - 3.0) + 3.0 * nd as f64 / n2,
        });
    }
    Ok(PerronProfile { n, apex, q1: perron.value, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{simplex_skeleton, tent_plus_common_edge, tented};

    #[test]
    fn added_face_of_one_hole_tent() {
        let p = perron_profile(&tent_plus_common_edge(100, 1).unwrap(), &SpectralOptions::default()).unwrap();
        let mu: Vec<_> = p.rows.iter().filter(|r| r.class == ProfileClass::MuFace).collect();
        assert_eq!(mu.len(), 1);
        // {1,2,3} meets {0,1,2}, {0,1,3}, {0,2,3}
        assert!((mu[0].predicted - (3.0 / 197.0 + 9.0 / 40000.0)).abs() < 1e-15);
        assert!(mu[0].relative_deviation() < 0.2);
        assert!(p.max_deviation(ProfileClass::ApexEdge) < 0.02);
        assert_eq!(p.rows.iter().filter(|r| r.class == ProfileClass::ApexEdge).count(), 99);
    }

    #[test]
    fn requires_apex_and_size() {
        assert_eq!(perron_profile(&simplex_skeleton(20, 1).unwrap(), &SpectralOptions::default()), Err(Error::NoApex));
        let k = SimplicialComplex::from_facets(
            20,
            (0..18u32).map(|i| Face::new([i, i + 1, i + 2]).unwrap()).collect(),
            true,
        )
        .unwrap();
        assert_eq!(perron_profile(&k, &SpectralOptions::default()), Err(Error::NoApex));
        assert!(matches!(perron_profile(&tented(10, 2).unwrap(), &SpectralOptions::default()), Err(Error::BadParams(_))));
    }
}
