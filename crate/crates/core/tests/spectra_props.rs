mod common;

use common::{any_pure2, face};
use proptest::prelude::*;
use simplex_spectra::extremal::enumerate_pure2;
use simplex_spectra::families::{tented, tent_plus_common_edge};
use simplex_spectra::homology::betti_profile;
use simplex_spectra::spectra::{perron_vector, spectral_radius};
use simplex_spectra::{Normalization, SimplicialComplex, SpectralOptions};

fn q1(k: &SimplicialComplex) -> f64 {
    spectral_radius(k, 1, &SpectralOptions::default()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Removing a facet never raises the spectral radius.
    #[test]
    fn radius_is_monotone_under_facet_removal(k in any_pure2(7), pick in any::<prop::sample::Index>()) {
        let facet = pick.get(k.facets()).clone();
        let smaller = k.without_facet(&facet).unwrap();
        if smaller.dim() == 2 {
            prop_assert!(q1(&smaller) <= q1(&k) + 1e-9);
        }
    }

    #[test]
    fn perron_vector_is_nonnegative_eigenvector(k in any_pure2(7)) {
        if !k.is_path_connected(1) {
            prop_assert!(perron_vector(&k, 1, &SpectralOptions::default()).is_err());
            return Ok(());
        }
        let opts = SpectralOptions::default().with_normalization(Normalization::MaxBoundarySumOne);
        let r = perron_vector(&k, 1, &opts).unwrap();
        prop_assert!(r.vector.iter().all(|&x| x >= -1e-12));
        let max_sum = k.faces(2).iter().enumerate()
            .map(|(j, _)| k.boundary_indices(2, j).iter().map(|&e| r.vector[e as usize]).sum::<f64>())
            .fold(0.0, f64::max);
        prop_assert!((max_sum - 1.0).abs() < 1e-9);
    }
}

#[test]
fn tented_radius_is_closed_form() {
    for n in 4..=30 {
        assert!((q1(&tented(n, 2).unwrap()) - (2 * n - 3) as f64).abs() < 1e-8, "n = {n}");
    }
}

#[test]
fn nested_chain_of_added_triangles() {
    let n = 8;
    let mut last = q1(&tented(n, 2).unwrap());
    for t in 1..=n - 3 {
        let next = q1(&tent_plus_common_edge(n, t).unwrap());
        assert!(next > last, "t = {t}: {next} <= {last}");
        last = next;
    }
}

/// Among acyclic pure 2-complexes on `[n]` the radius `2n − 3` is attained
/// exactly by the tented complexes.
#[test]
fn tent_is_the_unique_acyclic_maximizer() {
    for n in 4..=5 {
        let bound = (2 * n - 3) as f64;
        let mut attained = 0;
        for k in enumerate_pure2(n, false).unwrap() {
            if betti_profile(&k).betti[2] != 0 {
                continue;
            }
            let q = spectral_radius(&k, 1, &SpectralOptions::default().with_method(simplex_spectra::spectra::Method::Dense)).unwrap().value;
            assert!(q <= bound + 1e-8, "n = {n}: {q} for {:?}", k.facets());
            if q > bound - 1e-8 {
                let apex_everywhere = (0..n as u32).any(|x| k.facets().iter().all(|f| f.contains(x)));
                assert!(apex_everywhere && k.facets().len() == (n - 1) * (n - 2) / 2, "{:?}", k.facets());
                attained += 1;
            }
        }
        assert_eq!(attained, n, "one tent per apex choice at n = {n}");
    }
}

#[test]
fn hand_computed_radii() {
    // a single triangle: Q_up = J_3
    let k = SimplicialComplex::from_facets(3, vec![face(&[0, 1, 2])], true).unwrap();
    assert!((q1(&k) - 3.0).abs() < 1e-10);
    // two triangles on a common edge: the shared edge doubles the boundary sum
    let k = SimplicialComplex::from_facets(4, vec![face(&[0, 1, 2]), face(&[0, 1, 3])], true).unwrap();
    assert!((q1(&k) - 4.0).abs() < 1e-10);
}
