//! Generators for the named complexes and random pure 2-complexes.
//!
//! Labels are fixed: the apex of every tented complex is vertex `0` and the
//! common edge of the added triangles is `{1, 2}`.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::betti_profile;
use crate::rng;

pub const APEX: Vertex = 0;
/// Largest vertex count for [`random_pure2`].
pub const RANDOM_MAX_N: usize = 12;
pub const RANDOM_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SimplexSkeleton,
    Tented,
    TentPlusCommonEdge,
    TentPlusFaces,
    DeltaSphere,
    Rhombic,
    RandomPure2,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('-', "_").as_str() {
            "simplex_skeleton" => Family::SimplexSkeleton,
            "tented" => Family::Tented,
            "tent_plus_common_edge" => Family::TentPlusCommonEdge,
            "tent_plus_faces" => Family::TentPlusFaces,
            "delta_sphere" => Family::DeltaSphere,
            "rhombic" => Family::Rhombic,
            "random_pure2" => Family::RandomPure2,
            other => return Err(Error::BadParams(format!("unknown family `{other}`"))),
        })
    }
}

/// A family name together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub seed: Option<u64>,
    pub added: Vec<Face>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec { family, n: None, r: None, t: None, seed: None, added: Vec::new() }
    }

    fn need(v: Option<usize>, name: &str, family: Family) -> Result<usize> {
        v.ok_or_else(|| Error::BadParams(format!("{family:?} needs --{name}")))
    }

    pub fn build(&self) -> Result<SimplicialComplex> {
        let f = self.family;
        match f {
            Family::SimplexSkeleton => {
                simplex_skeleton(Self::need(self.n, "n", f)?, Self::need(self.r, "r", f)?)
            }
            Family::Tented => tented(Self::need(self.n, "n", f)?, self.r.unwrap_or(2)),
            Family::TentPlusCommonEdge => {
                tent_plus_common_edge(Self::need(self.n, "n", f)?, Self::need(self.t, "t", f)?)
            }
            Family::TentPlusFaces => tent_plus_faces(Self::need(self.n, "n", f)?, &self.added),
            Family::DeltaSphere => delta_sphere(self.r.unwrap_or(2)),
            Family::Rhombic => rhombic(self.r.unwrap_or(2)),
            Family::RandomPure2 => random_pure2(Self::need(self.n, "n", f)?, self.t, self.seed.unwrap_or(0)),
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `vertices`, lexicographic.
fn subsets(vertices: &[Vertex], k: usize) -> Vec<Face> {
    let mut out = Vec::with_capacity(binomial(vertices.len(), k));
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 || k > vertices.len() {
        return out;
    }
    loop {
        out.push(Face::new(idx.iter().map(|&i| vertices[i])).expect("distinct"));
        let mut j = k;
        while j > 0 && idx[j - 1] == vertices.len() - k + j - 1 {
            j -= 1;
        }
        if j == 0 {
            return out;
        }
        idx[j - 1] += 1;
        for l in j..k {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

fn range(n: usize) -> Vec<Vertex> {
    (0..n as Vertex).collect()
}

/// `Δ_n^{(r)}`: every (r+1)-subset of `[n]`.
pub fn simplex_skeleton(n: usize, r: usize) -> Result<SimplicialComplex> {
    if n < r + 1 {
        return Err(Error::BadParams(format!("simplex skeleton needs n >= r + 1 (n={n}, r={r})")));
    }
    SimplicialComplex::from_facets(n, subsets(&range(n), r + 1), true)
}

/// `T_n^r`: every (r+1)-subset of `[n]` containing the apex `0`.
pub fn tented(n: usize, r: usize) -> Result<SimplicialComplex> {
    if r == 0 || n < r + 1 {
        return Err(Error::BadParams(format!("tented complex needs r >= 1 and n >= r + 1 (n={n}, r={r})")));
    }
    let rest: Vec<Vertex> = (1..n as Vertex).collect();
    let facets = subsets(&rest, r).into_iter().map(|f| f.with_vertex(APEX).expect("apex not in rest")).collect();
    SimplicialComplex::from_facets(n, facets, true)
}

/// `Δ_{r+2}^{(r)}`, the boundary of the (r+1)-simplex.
pub fn delta_sphere(r: usize) -> Result<SimplicialComplex> {
    if r == 0 {
        return Err(Error::BadParams("delta sphere needs r >= 1".into()));
    }
    simplex_skeleton(r + 2, r)
}

/// `◇_{r+3}^{(r)}`: suspension of `Δ_{r+1}^{(r-1)}` with apexes `r+1` and `r+2`.
pub fn rhombic(r: usize) -> Result<SimplicialComplex> {
    if r == 0 {
        return Err(Error::BadParams("rhombic complex needs r >= 1".into()));
    }
    let base = range(r + 1);
    let mut facets = Vec::with_capacity(2 * (r + 1));
    for apex in [r as Vertex + 1, r as Vertex + 2] {
        for f in subsets(&base, r) {
            facets.push(f.with_vertex(apex).expect("apex outside base"));
        }
    }
    SimplicialComplex::from_facets(r + 3, facets, true)
}

/// `T_n^{2,t}`: `T_n^2` plus the facets `{1, 2, x}` for `x = 3..t+2`.
pub fn tent_plus_common_edge(n: usize, t: usize) -> Result<SimplicialComplex> {
    if t < 1 || n < 4 || t > n - 3 {
        return Err(Error::BadParams(format!("T_n^(2,t) needs 1 <= t <= n - 3 (n={n}, t={t})")));
    }
    let base = tented(n, 2)?;
    let mut facets = base.facets().to_vec();
    for x in 3..(t + 3) as Vertex {
        facets.push(Face::new([1, 2, x]).expect("distinct"));
    }
    SimplicialComplex::from_facets(n, facets, true)
}

/// `T_n^2` plus arbitrary triangles avoiding the apex; `β_2` is checked to equal
/// the number of added triangles.
pub fn tent_plus_faces(n: usize, added: &[Face]) -> Result<SimplicialComplex> {
    let base = tented(n, 2)?;
    let mut facets = base.facets().to_vec();
    let mut seen = std::collections::HashSet::new();
    for f in added {
        if f.len() != 3 {
            return Err(Error::BadParams(format!("added face {f} is not a triangle")));
        }
        if f.max_vertex() as usize >= n {
            return Err(Error::BadVertexId { vertex: f.max_vertex(), n });
        }
        if f.contains(APEX) {
            return Err(Error::FaceContainsApex(f.clone()));
        }
        if !seen.insert(f.clone()) {
            return Err(Error::DuplicateFace(f.clone()));
        }
        facets.push(f.clone());
    }
    let k = SimplicialComplex::from_facets(n, facets, true)?;
    let got = betti_profile(&k).betti[2];
    if got != added.len() {
        return Err(Error::BettiMismatch { expected: added.len(), got });
    }
    Ok(k)
}

/// A uniformly random set of triangles on `[n]` that covers every vertex,
/// optionally conditioned on `β_2 = target_t` by rejection.
pub fn random_pure2(n: usize, target_t: Option<usize>, seed: u64) -> Result<SimplicialComplex> {
    if !(3..=RANDOM_MAX_N).contains(&n) {
        return Err(Error::BadParams(format!("random_pure2 needs 3 <= n <= {RANDOM_MAX_N}, got {n}")));
    }
    let triangles = subsets(&range(n), 3);
    let mut rng = rng::stream(seed, 0);
    for _ in 0..RANDOM_BUDGET {
        let chosen: Vec<Face> = triangles.iter().filter(|_| rng.random::<bool>()).cloned().collect();
        let mut covered = vec![false; n];
        for f in &chosen {
            for &v in f.vertices() {
                covered[v as usize] = true;
            }
        }
        if chosen.is_empty() || !covered.iter().all(|&c| c) {
            continue;
        }
        let k = SimplicialComplex::from_facets(n, chosen, true)?;
        match target_t {
            Some(t) if betti_profile(&k).betti[2] != t => continue,
            _ => return Ok(k),
        }
    }
    Err(Error::BudgetExhausted(RANDOM_BUDGET))
}
