//! Apex detection and the counting quantities around the maximal boundary face.
//!
//! The inspector takes the Perron vector `f` of `Q_1^up` scaled so that the
//! largest boundary sum `f(∂F)` is 1, fixes a triangle `F₀ = {u, v, w}`
//! attaining it, and sorts the vertices outside `F₀` by how many of their
//! triangles are down neighbors of `F₀`. The three inequalities it evaluates
//! are only known to hold for global maximizers at large `n`, so verdicts are
//! labels, not proofs or refutations.

use serde::{Deserialize, Serialize};

use crate::chains::boundary_sums;
use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::betti_profile;
use crate::spectra::{perron_vector, Normalization, SpectralOptions};

/// Boundary sums within this distance of the maximum tie for `F₀`.
pub const F0_TIE_TOL: f64 = 1e-9;

pub const HYPOTHESIS: &str = "K is a global maximizer of q1 over K(n,2,t) and n is large";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Apex {
    pub vertex: Vertex,
    /// More than one vertex qualifies; `vertex` is the smallest.
    pub multiple: bool,
}

/// Every vertex `u` with `{u} ∪ e ∈ S_2(K)` for every pair `e` of other vertices.
pub fn apexes(k: &SimplicialComplex) -> Vec<Vertex> {
    let n = k.n_vertices();
    if k.dim() != 2 || n < 3 {
        return Vec::new();
    }
    let needed = (n - 1) * (n - 2) / 2;
    let mut count = vec![0usize; n];
    for f in k.faces(2) {
        for &v in f.vertices() {
            count[v as usize] += 1;
        }
    }
    (0..n).filter(|&v| count[v] == needed).map(|v| v as Vertex).collect()
}

pub fn detect_apex(k: &SimplicialComplex) -> Option<Apex> {
    let all = apexes(k);
    all.first().map(|&vertex| Apex { vertex, multiple: all.len() > 1 })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl Inequality {
    fn less(lhs: f64, rhs: f64) -> Self {
        Inequality { lhs, rhs, holds: lhs < rhs }
    }

    fn less_eq(lhs: f64, rhs: f64) -> Self {
        Inequality { lhs, rhs, holds: lhs <= rhs }
    }

    fn greater(lhs: f64, rhs: f64) -> Self {
        Inequality { lhs, rhs, holds: lhs > rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InspectorReport {
    pub n: usize,
    /// `β_2(K)`
    pub t: usize,
    pub q1: f64,
    pub f0: Face,
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    pub apex: Option<Apex>,
    /// Vertex whose missing faces define `M_u`: the apex if any, else `u`.
    pub m_vertex: Vertex,
    pub a: usize,
    pub a0: usize,
    pub a1: usize,
    pub a2: usize,
    pub a3: usize,
    pub a_le1: usize,
    pub a2_u: usize,
    pub a2_v: usize,
    pub a2_w: usize,
    /// Triangles avoiding `m_vertex`.
    pub m_u: usize,
    /// Those of `M_u` containing the edge `F₀ ∖ {u}`.
    pub m_u_vw: Vec<Face>,
    /// `Σ_{F₁ ∈ N^d(F₀)} |N^d(F₁)|`
    pub s: usize,
    /// `S > 4|𝒜|² − 6t`
    pub nd2f0: Inequality,
    /// `S ≤ 4|𝒜|² − 2|𝒜||𝒜_{≤1}| + |𝒜_3|(|𝒜_3| + 2|𝒜_{≤1}|) + 4t`, lowered by
    /// `2(|𝒜_2| − 1)` when `𝒜_2^v` is nonempty.
    pub upper: Inequality,
    /// `|M_u| < 5t² + 10t`
    pub mu_upper: Inequality,
    pub hypothesis: String,
}

impl InspectorReport {
    /// `(quantity, value)` pairs in a fixed order.
    pub fn rows(&self) -> Vec<(&'static str, String)> {
        let verdict = |i: &Inequality| i.holds.to_string();
        vec![
            ("n", self.n.to_string()),
            ("t", self.t.to_string()),
            ("q1", format!("{:.12}", self.q1)),
            ("F0", self.f0.to_string()),
            ("u", self.u.to_string()),
            ("v", self.v.to_string()),
            ("w", self.w.to_string()),
            ("apex", self.apex.map_or("none".into(), |a| a.vertex.to_string())),
            ("apex_multiple", self.apex.is_some_and(|a| a.multiple).to_string()),
            ("A", self.a.to_string()),
            ("A0", self.a0.to_string()),
            ("A1", self.a1.to_string()),
            ("A2", self.a2.to_string()),
            ("A3", self.a3.to_string()),
            ("A_le1", self.a_le1.to_string()),
            ("A2_u", self.a2_u.to_string()),
            ("A2_v", self.a2_v.to_string()),
            ("A2_w", self.a2_w.to_string()),
            ("M_u", self.m_u.to_string()),
            ("M_u_vw", self.m_u_vw.len().to_string()),
            ("S", self.s.to_string()),
            ("nd2f0_rhs", self.nd2f0.rhs.to_string()),
            ("nd2f0_holds", verdict(&self.nd2f0)),
            ("upper_rhs", self.upper.rhs.to_string()),
            ("upper_holds", verdict(&self.upper)),
            ("mu_upper_rhs", self.mu_upper.rhs.to_string()),
            ("mu_upper_holds", verdict(&self.mu_upper)),
            ("hypothesis", self.hypothesis.clone()),
        ]
    }
}

/// Index of `F₀`: the lexicographically least triangle whose boundary sum is
/// within [`F0_TIE_TOL`] of the maximum.
fn select_f0(sums: &[f64]) -> usize {
    let max = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    sums.iter().position(|&s| s >= max - F0_TIE_TOL).expect("nonempty")
}

pub fn proof_inspector(k: &SimplicialComplex, opts: &SpectralOptions) -> Result<InspectorReport> {
    k.ensure_pure()?;
    if k.dim() != 2 {
        return Err(Error::BadParams(format!("inspector needs a pure 2-complex, got dimension {}", k.dim())));
    }
    let opts = opts.clone().with_normalization(Normalization::MaxBoundarySumOne);
    let perron = perron_vector(k, 1, &opts)?;
    let sums = boundary_sums(k, 1, &perron.vector)?;
    let f0_idx = select_f0(&sums);
    let f0 = k.faces(2)[f0_idx].clone();
    let n = k.n_vertices();
    let t = betti_profile(k).betti[2];
    let fv = f0.vertices();

    // |N^d(F₀, x)| and, for x with exactly two, the F₀ vertex opposite the missing pair
    let mut level = vec![0usize; n];
    let mut missing_opposite = vec![None; n];
    let outside: Vec<Vertex> = (0..n as Vertex).filter(|x| !f0.contains(*x)).collect();
    for &x in &outside {
        let mut missing = None;
        for (j, &opp) in fv.iter().enumerate() {
            let tri = f0.omit(j).with_vertex(x).expect("x outside F0");
            if k.contains(&tri) {
                level[x as usize] += 1;
            } else {
                missing = Some(opp);
            }
        }
        if level[x as usize] == 2 {
            missing_opposite[x as usize] = missing;
        }
    }
    let a2_of = |c: Vertex| outside.iter().filter(|&&x| missing_opposite[x as usize] == Some(c)).count();

    let apex = detect_apex(k);
    let apex_in_f0 = apexes(k).into_iter().find(|&a| f0.contains(a));
    let mut labels: Vec<Vertex> = fv.to_vec();
    // descending |𝒜_2^x|, ties by vertex id; an apex inside F₀ goes first
    labels.sort_by_key(|&c| (Some(c) != apex_in_f0, std::cmp::Reverse(a2_of(c)), c));
    let (u, v, w) = (labels[0], labels[1], labels[2]);
    let m_vertex = apex.map_or(u, |a| apex_in_f0.unwrap_or(a.vertex));

    let count_level = |i: usize| outside.iter().filter(|&&x| level[x as usize] == i).count();
    let (a0, a1, a2, a3) = (count_level(0), count_level(1), count_level(2), count_level(3));
    let a = outside.len();
    let a_le1 = a0 + a1;

    let m_faces: Vec<&Face> = k.faces(2).iter().filter(|f| !f.contains(m_vertex)).collect();
    let m_u_vw: Vec<Face> = m_faces.iter().filter(|f| f.contains(v) && f.contains(w)).map(|&f| f.clone()).collect();

    let s: usize = k.down_neighbor_indices(2, f0_idx).iter().map(|&g| k.down_neighbor_indices(2, g).len()).sum();

    let (af, tf) = (a as f64, t as f64);
    let a2_v = a2_of(v);
    let mut upper_rhs = 4.0 * af * af - 2.0 * af * a_le1 as f64 + a3 as f64 * (a3 as f64 + 2.0 * a_le1 as f64) + 4.0 * tf;
    if a2_v > 0 {
        upper_rhs -= 2.0 * (a2 as f64 - 1.0);
    }

    Ok(InspectorReport {
        n,
        t,
        q1: perron.value,
        f0,
        u,
        v,
        w,
        apex,
        m_vertex,
        a,
        a0,
        a1,
        a2,
        a3,
        a_le1,
        a2_u: a2_of(u),
        a2_v,
        a2_w: a2_of(w),
        m_u: m_faces.len(),
        m_u_vw,
        s,
        nd2f0: Inequality::greater(s as f64, 4.0 * af * af - 6.0 * tf),
        upper: Inequality::less_eq(s as f64, upper_rhs),
        mu_upper: Inequality::less(m_faces.len() as f64, 5.0 * tf * tf + 10.0 * tf),
        hypothesis: HYPOTHESIS.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{delta_sphere, tent_plus_common_edge, tented};

    fn face(v: &[u32]) -> Face {
        Face::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn apex_detection() {
        assert_eq!(detect_apex(&tent_plus_common_edge(8, 3).unwrap()), Some(Apex { vertex: 0, multiple: false }));
        let two = SimplicialComplex::from_facets(6, vec![face(&[0, 1, 2]), face(&[3, 4, 5])], true).unwrap();
        assert_eq!(detect_apex(&two), None);
        assert_eq!(detect_apex(&delta_sphere(2).unwrap()), Some(Apex { vertex: 0, multiple: true }));
        assert_eq!(apexes(&delta_sphere(2).unwrap()), vec![0, 1, 2, 3]);
    }

    #[test]
    fn tent_with_one_hole() {
        let r = proof_inspector(&tent_plus_common_edge(6, 1).unwrap(), &SpectralOptions::default()).unwrap();
        assert_eq!(r.f0, face(&[0, 1, 2]));
        assert_eq!((r.u, r.t), (0, 1));
        assert_eq!(r.a, 3);
        assert_eq!(r.a3, 1);
        assert_eq!(r.a_le1, 0);
        assert_eq!(r.a2, 2);
        assert_eq!(r.a2_u, 2);
        assert_eq!(r.m_u, 1);
        assert_eq!(r.m_u_vw, vec![face(&[1, 2, 3])]);
        assert!(r.mu_upper.holds);
        assert_eq!(r.a_le1 + r.a2 + r.a3, r.n - 3);
        assert_eq!(r.a2_u + r.a2_v + r.a2_w, r.a2);
    }

    #[test]
    fn tents_with_several_holes() {
        for (n, t) in [(8, 2), (9, 4), (10, 7)] {
            let r = proof_inspector(&tent_plus_common_edge(n, t).unwrap(), &SpectralOptions::default()).unwrap();
            assert_eq!(r.t, t);
            assert_eq!(r.a3, t, "n={n} t={t}");
            assert_eq!(r.m_u, t);
            assert_eq!(r.m_u_vw.len(), t);
            assert!(r.mu_upper.holds);
        }
    }

    #[test]
    fn boundary_of_tetrahedron() {
        let r = proof_inspector(&delta_sphere(2).unwrap(), &SpectralOptions::default()).unwrap();
        assert_eq!(r.a, 1);
        assert_eq!(r.a3, 1);
        // brute force: F₀ has 3 down neighbors, each with 3 down neighbors
        let k = delta_sphere(2).unwrap();
        let f0 = k.index_of(&r.f0).unwrap();
        let brute: usize = k.faces(2)
            .iter()
            .filter(|g| g.intersection_len(&r.f0) == 2)
            .map(|g| k.faces(2).iter().filter(|h| h.intersection_len(g) == 2).count())
            .sum();
        assert_eq!(brute, 9);
        assert_eq!(r.s, brute);
        assert_eq!(k.down_neighbor_indices(2, f0).len(), 3);
        assert_eq!(r.upper.rhs, 9.0);
        assert!(r.upper.holds);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let two = SimplicialComplex::from_facets(6, vec![face(&[0, 1, 2]), face(&[3, 4, 5])], true).unwrap();
        assert!(matches!(proof_inspector(&two, &SpectralOptions::default()), Err(Error::NotPathConnected(1))));
    }

    #[test]
    fn tent_without_holes_partitions() {
        let r = proof_inspector(&tented(7, 2).unwrap(), &SpectralOptions::default()).unwrap();
        assert_eq!(r.a_le1 + r.a2 + r.a3, 4);
        assert_eq!(r.m_u, 0);
    }
}
