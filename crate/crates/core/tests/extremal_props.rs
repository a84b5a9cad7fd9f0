mod common;

use common::{any_pure2, k_subsets};
use proptest::prelude::*;
use simplex_spectra::extremal::{
    binomial, enumerate_pure2, facet_bound, max_facets_search, max_spectral_search, proof_inspector, spectral_bound,
    telescoping_identity, SearchOptions,
};
use simplex_spectra::homology::betti_profile;
use simplex_spectra::spectra::{spectral_radius, Method};
use simplex_spectra::{Error, SpectralOptions};

/// Triangle sets on `[n]` covering every vertex (and every edge when `full`), by brute force.
fn brute_count(n: u32, full: bool) -> usize {
    let verts: Vec<u32> = (0..n).collect();
    let tris = k_subsets(&verts, 3);
    let edges = k_subsets(&verts, 2);
    (1u32..1 << tris.len())
        .filter(|m| {
            let chosen: Vec<&Vec<u32>> = (0..tris.len()).filter(|j| m & (1 << j) != 0).map(|j| &tris[j]).collect();
            let vertices_ok = verts.iter().all(|v| chosen.iter().any(|t| t.contains(v)));
            let edges_ok = !full || edges.iter().all(|e| chosen.iter().any(|t| t.contains(&e[0]) && t.contains(&e[1])));
            vertices_ok && edges_ok
        })
        .count()
}

#[test]
fn enumeration_counts() {
    for n in 4..=5 {
        for full in [false, true] {
            assert_eq!(enumerate_pure2(n, full).unwrap().count(), brute_count(n as u32, full), "n = {n}, full = {full}");
        }
    }
    assert_eq!(enumerate_pure2(5, false).unwrap().count(), 958);
    assert_eq!(enumerate_pure2(5, true).unwrap().count(), 388);
    assert!(matches!(enumerate_pure2(7, false).map(|_| ()), Err(Error::TooLarge { n: 7, .. })));
}

#[test]
fn every_complex_respects_both_bounds() {
    let dense = SpectralOptions::default().with_method(Method::Dense);
    for k in enumerate_pure2(5, false).unwrap() {
        let t = betti_profile(&k).betti[2] as u64;
        assert!(k.face_count(2) as u128 <= facet_bound(5, 2, t), "{:?}", k.facets());
        let q = spectral_radius(&k, 1, &dense).unwrap().value;
        assert!(q <= spectral_bound(5, 2, t) + 1e-9, "{q} for {:?}", k.facets());
    }
}

#[test]
fn binomials_and_telescoping() {
    for n in 1..=14u32 {
        for r in 0..=n {
            let verts: Vec<u32> = (0..n).collect();
            assert_eq!(binomial(n as u64, r as u64), k_subsets(&verts, r as usize).len() as u128);
        }
    }
    for n in 2..=60u64 {
        for r in 1..n {
            assert_eq!(telescoping_identity(n, r), 1, "n = {n}, r = {r}");
        }
    }
}

#[test]
fn searches_at_six_vertices() {
    let opts = SearchOptions::default();
    let facets = max_facets_search(6, 1, &opts).unwrap();
    assert_eq!(facets.max_facets, 11);
    assert!(facets.reference_is_witness && facets.bound_violations.is_empty());

    let spectral = max_spectral_search(6, 1, &opts).unwrap();
    let q = spectral.max_q1.unwrap();
    assert!(q > 9.0 && q <= spectral_bound(6, 2, 1) + 1e-9, "{q}");
    assert!(spectral.contract_holds());
    assert!(spectral.bound_violations.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inspector_partitions_are_consistent(k in any_pure2(8)) {
        prop_assume!(k.is_path_connected(1));
        let r = proof_inspector(&k, &SpectralOptions::default()).unwrap();
        prop_assert_eq!(r.a, r.n - 3);
        prop_assert_eq!(r.a0 + r.a1 + r.a2 + r.a3, r.a);
        prop_assert_eq!(r.a_le1, r.a0 + r.a1);
        prop_assert_eq!(r.a2_u + r.a2_v + r.a2_w, r.a2);
        prop_assert_eq!(r.t, betti_profile(&k).betti[2]);

        let avoid = k.faces(2).iter().filter(|f| !f.contains(r.m_vertex)).count();
        prop_assert_eq!(r.m_u, avoid);
        prop_assert!(r.m_u_vw.iter().all(|f| f.contains(r.v) && f.contains(r.w) && !f.contains(r.m_vertex)));

        let tris = k.faces(2);
        let s: usize = tris.iter()
            .filter(|g| g.intersection_len(&r.f0) == 2)
            .map(|g| tris.iter().filter(|h| h.intersection_len(g) == 2).count())
            .sum();
        prop_assert_eq!(r.s, s);
    }
}
