use super::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the brute-force permutation search.
pub const MAX_ISO_VERTICES: usize = 10;

fn check_size(k: &SimplicialComplex) -> Result<()> {
    if k.n_vertices() > MAX_ISO_VERTICES {
        return Err(Error::TooLarge { n: k.n_vertices(), max: MAX_ISO_VERTICES });
    }
    Ok(())
}

/// Lexicographically least sorted facet list over all vertex relabelings.
pub fn canonical_form(k: &SimplicialComplex) -> Result<Vec<Face>> {
    check_size(k)?;
    let n = k.n_vertices();
    let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
    let mut best: Vec<Face> = k.facets().to_vec();
    let mut scratch: Vec<Face> = Vec::with_capacity(best.len());

    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let mut i = 0;
    loop {
        scratch.clear();
        scratch.extend(k.facets().iter().map(|f| f.relabel(&perm)));
        scratch.sort_unstable();
        if scratch < best {
            std::mem::swap(&mut best, &mut scratch);
        }
        // advance to the next permutation
        loop {
            if i >= n {
                return Ok(best);
            }
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                c[i] += 1;
                i = 0;
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn is_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<bool> {
    check_size(a)?;
    check_size(b)?;
    if a.n_vertices() != b.n_vertices()
        || a.facets().len() != b.facets().len()
        || a.f_vector() != b.f_vector()
        || a.facet_degree_sequence() != b.facet_degree_sequence()
    {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(n: usize, facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            n,
            facets.iter().map(|f| Face::new(f.iter().copied()).unwrap()).collect(),
            true,
        )
        .unwrap()
    }

    fn tented_with_apex(n: u32, apex: u32) -> SimplicialComplex {
        let others: Vec<u32> = (0..n).filter(|&v| v != apex).collect();
        let mut facets = Vec::new();
        for (x, &a) in others.iter().enumerate() {
            for &b in &others[x + 1..] {
                facets.push(Face::new([apex, a, b]).unwrap());
            }
        }
        SimplicialComplex::from_facets(n as usize, facets, true).unwrap()
    }

    #[test]
    fn relabeled_tents_are_isomorphic() {
        let a = tented_with_apex(5, 0);
        let b = tented_with_apex(5, 4);
        assert!(is_isomorphic(&a, &b).unwrap());
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn delta4_is_not_a_tent() {
        let d = complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert!(!is_isomorphic(&d, &tented_with_apex(4, 0)).unwrap());
    }

    #[test]
    fn canonical_form_of_path() {
        // two triangles sharing an edge: least form puts the shared edge first
        let k = complex(4, &[&[1, 2, 3], &[0, 2, 3]]);
        let c = canonical_form(&k).unwrap();
        assert_eq!(c, vec![Face::new([0, 1, 2]).unwrap(), Face::new([0, 1, 3]).unwrap()]);
    }

    #[test]
    fn too_large() {
        let k = complex(11, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]]);
        assert!(matches!(canonical_form(&k), Err(Error::TooLarge { .. })));
    }
}
