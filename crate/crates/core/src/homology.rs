//! Exact Betti numbers and basic holes.
//!
//! Betti numbers come from exact ranks of the signed boundary matrices;
//! the Hodge Laplacian kernel dimension is only a floating-point cross-check.

use serde::{Deserialize, Serialize};

use crate::chains::{laplacian, signed_boundary, LaplacianKind};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rank::{has_full_support, sparse_rank, ColumnEchelon, SparseCol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    /// `β_0, .., β_dim`
    pub betti: Vec<usize>,
    /// `Σ (-1)^i |S_i|`
    pub euler: i64,
    /// `rank ∂_i` for `i = 0..=dim`, with `rank ∂_0 = 0`.
    pub ranks: Vec<usize>,
    pub face_counts: Vec<usize>,
}

impl BettiProfile {
    /// `Σ (-1)^i β_i`; always equal to [`BettiProfile::euler`].
    pub fn euler_from_betti(&self) -> i64 {
        alternating_sum(&self.betti)
    }
}

fn alternating_sum(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn boundary_columns(k: &SimplicialComplex, i: usize) -> Result<Vec<SparseCol>> {
    Ok(signed_boundary(k, i)?.columns())
}

/// Exact rank of `∂_i`; zero outside `1..=dim`.
pub fn boundary_rank(k: &SimplicialComplex, i: usize) -> usize {
    if i == 0 || i > k.dim() {
        return 0;
    }
    let cols = boundary_columns(k, i).expect("dimension checked");
    sparse_rank(k.face_count(i - 1), &cols)
}

pub fn betti_profile(k: &SimplicialComplex) -> BettiProfile {
    let dim = k.dim();
    let face_counts = k.f_vector();
    let ranks: Vec<usize> = (0..=dim).map(|i| boundary_rank(k, i)).collect();
    let betti: Vec<usize> = (0..=dim)
        .map(|i| {
            let next = if i < dim { ranks[i + 1] } else { 0 };
            face_counts[i] - ranks[i] - next
        })
        .collect();
    let profile = BettiProfile { euler: alternating_sum(&face_counts), betti, ranks, face_counts };
    debug_assert_eq!(profile.euler, profile.euler_from_betti());
    profile
}

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    alternating_sum(&k.f_vector())
}

/// Number of eigenvalues of `L_i = L_i^up + L_i^down` below `zero_tol`.
pub fn hodge_betti(k: &SimplicialComplex, i: usize, zero_tol: f64) -> Result<usize> {
    let l = laplacian(k, i, LaplacianKind::LFull)?.to_dense()?;
    let eig = l.symmetric_eigen();
    let upper = 100.0 * zero_tol;
    let mut zeros = 0;
    for &v in eig.eigenvalues.iter() {
        if v < zero_tol {
            zeros += 1;
        } else if v < upper {
            return Err(Error::SpectrumAmbiguous { value: v, tol: zero_tol, upper });
        }
    }
    Ok(zeros)
}

/// `β_r` of a pure r-complex after deleting each facet, by recomputing ranks.
fn top_betti_after_each_removal(k: &SimplicialComplex) -> Vec<usize> {
    let r = k.dim();
    let cols = boundary_columns(k, r).expect("r >= 1");
    (0..cols.len())
        .map(|skip| {
            let rest: Vec<SparseCol> =
                cols.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, c)| c.clone()).collect();
            rest.len() - sparse_rank(k.face_count(r - 1), &rest)
        })
        .collect()
}

/// True iff `β_r(K) = 1` and removing any single facet kills the hole.
///
/// With a one-dimensional kernel spanned by `z`, removing facet `F` leaves a
/// cycle exactly when `z(F) = 0`, so the check reduces to the support of `z`.
pub fn is_basic_hole(k: &SimplicialComplex) -> Result<bool> {
    k.ensure_pure()?;
    let r = k.dim();
    if r == 0 {
        return Ok(false);
    }
    let cols = boundary_columns(k, r)?;
    let mut ech = ColumnEchelon::with_kernel();
    for c in &cols {
        if ech.push(c.clone()).is_err() {
            let beta = cols.len() - boundary_rank(k, r);
            return Ok(beta == 1 && top_betti_after_each_removal(k).iter().all(|&b| b == 0));
        }
    }
    if ech.kernel().len() != 1 {
        return Ok(false);
    }
    Ok(has_full_support(&ech.kernel()[0], cols.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicHoleReport {
    /// The complex is (r-1)-path connected.
    pub path_connected: bool,
    /// Every (r-1)-face lies in at least two facets.
    pub min_degree_at_least_two: bool,
    pub min_degree: usize,
    /// Removing any one facet leaves the complex (r-1)-path connected.
    pub connected_after_removal: bool,
    pub disconnecting_facets: Vec<Face>,
}

impl BasicHoleReport {
    pub fn all_pass(&self) -> bool {
        self.path_connected && self.min_degree_at_least_two && self.connected_after_removal
    }
}

pub fn check_basic_hole_properties(k: &SimplicialComplex) -> Result<BasicHoleReport> {
    if !is_basic_hole(k)? {
        return Err(Error::NotBasicHole);
    }
    let r = k.dim();
    let path_connected = k.is_path_connected(r - 1);
    let min_degree = (0..k.face_count(r - 1)).map(|g| k.coface_indices(r - 1, g).len()).min().unwrap_or(0);
    let mut disconnecting = Vec::new();
    for f in k.facets() {
        let rest = k.without_facet(f)?;
        if !rest.is_path_connected(r - 1) {
            disconnecting.push(f.clone());
        }
    }
    Ok(BasicHoleReport {
        path_connected,
        min_degree_at_least_two: min_degree >= 2,
        min_degree,
        connected_after_removal: disconnecting.is_empty(),
        disconnecting_facets: disconnecting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::bareiss_rank;

    fn face(v: &[u32]) -> Face {
        Face::new(v.iter().copied()).unwrap()
    }

    fn complex(n: usize, facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, facets.iter().map(|f| face(f)).collect(), false).unwrap()
    }

    fn delta4() -> SimplicialComplex {
        complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn rhombic5() -> SimplicialComplex {
        complex(5, &[&[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[0, 1, 4], &[0, 2, 4], &[1, 2, 4]])
    }

    fn tented5() -> SimplicialComplex {
        let mut f = Vec::new();
        for a in 1..5u32 {
            for b in a + 1..5 {
                f.push(face(&[0, a, b]));
            }
        }
        SimplicialComplex::from_facets(5, f, true).unwrap()
    }

    #[test]
    fn sphere_profiles() {
        let p = betti_profile(&delta4());
        assert_eq!(p.betti, vec![1, 0, 1]);
        assert_eq!(p.euler, 2);
        assert_eq!(betti_profile(&rhombic5()).betti, vec![1, 0, 1]);
    }

    #[test]
    fn rank_of_delta4_boundary_matches_dense_oracle() {
        let k = delta4();
        assert_eq!(boundary_rank(&k, 2), 3);
        assert_eq!(bareiss_rank(&signed_boundary(&k, 2).unwrap().to_dense_int()), 3);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&delta4()), 2);
        assert_eq!(euler_characteristic(&complex(3, &[&[0, 1, 2]])), 1);
    }

    #[test]
    fn hodge_examples() {
        assert_eq!(hodge_betti(&delta4(), 2, 1e-8).unwrap(), 1);
        assert_eq!(hodge_betti(&complex(3, &[&[0, 1, 2]]), 0, 1e-8).unwrap(), 1);
    }

    #[test]
    fn hodge_ambiguity_is_reported() {
        // L_2 of Δ_4 has nonzero eigenvalue 4; a tolerance band covering it is ambiguous
        let r = hodge_betti(&delta4(), 2, 0.05);
        assert!(matches!(r, Err(Error::SpectrumAmbiguous { .. })));
    }

    #[test]
    fn basic_holes() {
        assert!(is_basic_hole(&delta4()).unwrap());
        assert!(is_basic_hole(&rhombic5()).unwrap());
        assert!(!is_basic_hole(&tented5()).unwrap());
        assert!(check_basic_hole_properties(&delta4()).unwrap().all_pass());
        assert!(check_basic_hole_properties(&rhombic5()).unwrap().all_pass());
        assert_eq!(check_basic_hole_properties(&tented5()), Err(Error::NotBasicHole));
    }

    #[test]
    fn kernel_support_matches_brute_force_removal() {
        // Δ_4 plus a tent over one of its edges: β_2 = 1 but the extra facet is not on the hole
        let k = complex(5, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[0, 1, 4]]);
        assert_eq!(betti_profile(&k).betti[2], 1);
        let brute = top_betti_after_each_removal(&k);
        assert!(!brute.iter().all(|&b| b == 0));
        assert!(!is_basic_hole(&k).unwrap());
    }

    #[test]
    fn mixed_dimension_profile() {
        // triangle plus a dangling edge and an isolated vertex
        let k = complex(5, &[&[0, 1, 2], &[2, 3]]);
        let p = betti_profile(&k);
        assert_eq!(p.betti, vec![2, 0, 0]);
        assert_eq!(p.euler, p.euler_from_betti());
        assert!(matches!(is_basic_hole(&k), Err(Error::NotPure { .. })));
    }
}
