mod common;

use common::{any_complex, any_pure2, face};
use proptest::prelude::*;
use simplex_spectra::chains::signed_boundary;
use simplex_spectra::homology::{betti_profile, euler_characteristic, hodge_betti, is_basic_hole};
use simplex_spectra::SimplicialComplex;

/// Rank over the rationals by fraction-free elimination on `i128`.
fn rational_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            let (a, b) = (m[rank][c], m[r][c]);
            for j in 0..cols {
                m[r][j] = a * m[r][j] - b * m[rank][j];
            }
            let g = m[r].iter().fold(0i128, |g, &x| num_gcd(g, x.abs()));
            if g > 1 {
                m[r].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

fn oracle_rank(k: &SimplicialComplex, i: usize) -> usize {
    if i == 0 || i > k.dim() {
        return 0;
    }
    let d = signed_boundary(k, i).unwrap().to_dense_int();
    rational_rank(d.into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect())
}

proptest! {
    #[test]
    fn euler_matches_alternating_betti(k in any_complex(8, 5)) {
        let p = betti_profile(&k);
        prop_assert_eq!(p.euler, p.euler_from_betti());
        prop_assert_eq!(p.euler, euler_characteristic(&k));
    }

    #[test]
    fn betti_numbers_match_rational_ranks(k in any_complex(8, 5)) {
        let p = betti_profile(&k);
        for i in 0..=k.dim() {
            let want = k.face_count(i) - oracle_rank(&k, i) - oracle_rank(&k, i + 1);
            prop_assert_eq!(p.betti[i], want);
        }
    }

    #[test]
    fn hodge_kernel_agrees_with_exact_betti(k in any_complex(8, 4)) {
        let p = betti_profile(&k);
        for i in 0..=k.dim() {
            prop_assert_eq!(hodge_betti(&k, i, 1e-8).unwrap(), p.betti[i]);
        }
    }

    #[test]
    fn top_betti_of_pure_2_complexes(k in any_pure2(7)) {
        let p = betti_profile(&k);
        prop_assert_eq!(p.betti[2], k.face_count(2) - oracle_rank(&k, 2));
    }
}

#[test]
fn spheres_and_holes() {
    let sphere = simplex_spectra::families::delta_sphere(2).unwrap();
    assert_eq!(betti_profile(&sphere).betti, vec![1, 0, 1]);
    assert!(is_basic_hole(&sphere).unwrap());

    // triangular bipyramid with one extra triangle glued along an edge: the sphere is still a hole
    // but not every facet lies on it
    let mut facets = simplex_spectra::families::rhombic(2).unwrap().facets().to_vec();
    facets.push(face(&[0, 1, 5]));
    let k = SimplicialComplex::from_facets(6, facets, true).unwrap();
    assert_eq!(betti_profile(&k).betti, vec![1, 0, 1]);
    assert!(!is_basic_hole(&k).unwrap());
}
