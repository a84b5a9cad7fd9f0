#![allow(dead_code)]

use proptest::prelude::*;
use simplex_spectra::{Face, SimplicialComplex};

pub fn face(v: &[u32]) -> Face {
    Face::new(v.iter().copied()).unwrap()
}

/// Arbitrary complexes on up to `max_n` vertices with faces of 1 to `max_len` vertices.
pub fn any_complex(max_n: u32, max_len: usize) -> impl Strategy<Value = SimplicialComplex> {
    (3..=max_n).prop_flat_map(move |n| {
        let verts: Vec<u32> = (0..n).collect();
        proptest::collection::vec(proptest::sample::subsequence(verts, 1..=max_len.min(n as usize)), 1..10)
            .prop_map(move |fs| SimplicialComplex::from_facets(n as usize, fs.iter().map(|f| face(f)).collect(), false).unwrap())
    })
}

/// Pure 2-complexes covering every vertex of `[n]`.
pub fn any_pure2(max_n: u32) -> impl Strategy<Value = SimplicialComplex> {
    (4..=max_n).prop_flat_map(|n| {
        let verts: Vec<u32> = (0..n).collect();
        proptest::collection::vec(proptest::sample::subsequence(verts, 3), 1..14).prop_filter_map(
            "every vertex covered",
            move |fs| {
                let facets: Vec<Face> = fs.iter().map(|f| face(f)).collect();
                let covered: std::collections::BTreeSet<u32> =
                    facets.iter().flat_map(|f| f.vertices().to_vec()).collect();
                (covered.len() == n as usize).then(|| SimplicialComplex::from_facets(n as usize, facets, true).unwrap())
            },
        )
    })
}

/// All subsets of size `k` of `v`, by brute force.
pub fn k_subsets(v: &[u32], k: usize) -> Vec<Vec<u32>> {
    (0u32..1 << v.len())
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..v.len()).filter(|&j| m & (1 << j) != 0).map(|j| v[j]).collect())
        .collect()
}

/// Isomorphism by trying every permutation of the vertex set.
pub fn brute_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    if a.n_vertices() != b.n_vertices() || a.facets().len() != b.facets().len() {
        return false;
    }
    let n = a.n_vertices();
    let target: std::collections::BTreeSet<Face> = b.facets().iter().cloned().collect();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    permute(&mut perm, 0, &mut |p| a.facets().iter().all(|f| target.contains(&f.relabel(p))))
}

fn permute(p: &mut Vec<u32>, k: usize, found: &mut dyn FnMut(&[u32]) -> bool) -> bool {
    if k == p.len() {
        return found(p);
    }
    for j in k..p.len() {
        p.swap(k, j);
        if permute(p, k + 1, found) {
            return true;
        }
        p.swap(k, j);
    }
    false
}
