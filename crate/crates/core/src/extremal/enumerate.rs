//! Exhaustive enumeration of pure 2-complexes on `[n]` as triangle bitmasks.
//!
//! Bit `j` of a mask selects the `j`-th triangle of `[n]` in lexicographic
//! order. With `full_skeleton` a mask is admissible when its triangles cover
//! every edge of `[n]`; otherwise when they cover every vertex.

use rayon::prelude::*;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Largest `n` the exhaustive search accepts.
pub const MAX_SEARCH_N: usize = 6;

/// Triangles, edges and incidence of the full 2-skeleton on `[n]`.
#[derive(Clone, Debug)]
pub struct TriangleSpace {
    pub n: usize,
    pub triangles: Vec<[Vertex; 3]>,
    /// Edge indices of each triangle in boundary order (omit vertex 0, 1, 2).
    pub tri_edges: Vec<[usize; 3]>,
    pub edges: Vec<[Vertex; 2]>,
    pub tri_edge_mask: Vec<u32>,
    pub tri_vertex_mask: Vec<u32>,
    /// For every vertex permutation of `[n]`, the induced map on triangle indices.
    perm_maps: Vec<Vec<u8>>,
}

impl TriangleSpace {
    pub fn new(n: usize) -> Self {
        let mut edges = Vec::new();
        let mut edge_index = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in a + 1..n {
                edge_index[a][b] = edges.len();
                edges.push([a as Vertex, b as Vertex]);
            }
        }
        let mut triangles = Vec::new();
        let mut tri_edges = Vec::new();
        let mut tri_edge_mask = Vec::new();
        let mut tri_vertex_mask = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triangles.push([a as Vertex, b as Vertex, c as Vertex]);
                    let e = [edge_index[b][c], edge_index[a][c], edge_index[a][b]];
                    tri_edges.push(e);
                    tri_edge_mask.push(e.iter().fold(0u32, |m, &x| m | (1 << x)));
                    tri_vertex_mask.push((1 << a) | (1 << b) | (1 << c));
                }
            }
        }
        let index = |t: [usize; 3]| {
            let mut t = t;
            t.sort_unstable();
            triangles.iter().position(|x| x.map(|v| v as usize) == t).expect("triangle of [n]") as u8
        };
        let perm_maps = if n <= MAX_SEARCH_N {
            permutations(n)
                .iter()
                .map(|p| triangles.iter().map(|t| index(t.map(|v| p[v as usize]))).collect())
                .collect()
        } else {
            Vec::new()
        };
        TriangleSpace { n, triangles, tri_edges, edges, tri_edge_mask, tri_vertex_mask, perm_maps }
    }

    /// The relabeled mask whose sorted facet list is lexicographically least.
    ///
    /// For masks of equal weight, the lexicographically smaller index list is
    /// the one holding the lowest differing bit, so the least list maximizes
    /// the bit-reversed mask.
    pub fn canonical_mask(&self, mask: u32) -> u32 {
        assert!(!self.perm_maps.is_empty(), "canonical masks need n <= {MAX_SEARCH_N}");
        self.perm_maps
            .iter()
            .map(|map| bits(mask).fold(0u32, |m, j| m | (1 << map[j])))
            .max_by_key(|m| m.reverse_bits())
            .expect("identity permutation")
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn all_edges(&self) -> u32 {
        ((1u64 << self.edges.len()) - 1) as u32
    }

    pub fn all_vertices(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn is_admissible(&self, mask: u32, full_skeleton: bool) -> bool {
        if mask == 0 {
            return false;
        }
        let (cover, target) = if full_skeleton {
            (self.covered_edges(mask), self.all_edges())
        } else {
            (self.covered_vertices(mask), self.all_vertices())
        };
        cover == target
    }

    pub fn covered_edges(&self, mask: u32) -> u32 {
        bits(mask).fold(0, |m, j| m | self.tri_edge_mask[j])
    }

    pub fn covered_vertices(&self, mask: u32) -> u32 {
        bits(mask).fold(0, |m, j| m | self.tri_vertex_mask[j])
    }

    pub fn facets(&self, mask: u32) -> Vec<Face> {
        bits(mask).map(|j| Face::new(self.triangles[j]).expect("distinct")).collect()
    }

    pub fn complex(&self, mask: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.n, self.facets(mask), true).expect("admissible masks are pure")
    }

    /// Dense `Q_1^up` over all edges of `[n]`; edges outside the complex give zero rows.
    pub fn q_up_matrix(&self, mask: u32) -> nalgebra::DMatrix<f64> {
        let m = self.edges.len();
        let mut q = nalgebra::DMatrix::zeros(m, m);
        for j in bits(mask) {
            for &a in &self.tri_edges[j] {
                for &b in &self.tri_edges[j] {
                    q[(a, b)] += 1.0;
                }
            }
        }
        q
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |j| mask & (1 << j) != 0)
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_SEARCH_N {
        return Err(Error::TooLarge { n, max: MAX_SEARCH_N });
    }
    if n < 3 {
        return Err(Error::BadParams(format!("a pure 2-complex needs n >= 3, got {n}")));
    }
    Ok(())
}

/// Every admissible complex in ascending mask order.
pub fn enumerate_pure2(n: usize, full_skeleton: bool) -> Result<impl Iterator<Item = SimplicialComplex>> {
    check_n(n)?;
    let space = TriangleSpace::new(n);
    let total: u64 = 1 << space.n_triangles();
    Ok((1..total).map(|m| m as u32).filter(move |&m| space.is_admissible(m, full_skeleton)).map({
        let space = TriangleSpace::new(n);
        move |m| space.complex(m)
    }))
}

/// Incremental fraction-free echelon for the signed boundary columns of
/// triangles over at most 32 edge rows. Push and pop are exact inverses, so a
/// depth-first walk can share one instance.
#[derive(Clone, Debug)]
struct SmallEchelon {
    /// `pivot_of[row]`: index into `cols` of the stored column whose lowest nonzero is `row`.
    pivot_of: [i8; 32],
    cols: Vec<([i64; 32], usize)>,
    /// Whether each push added a stored column.
    log: Vec<bool>,
}

impl SmallEchelon {
    fn new() -> Self {
        SmallEchelon { pivot_of: [-1; 32], cols: Vec::new(), log: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.cols.len()
    }

    fn push(&mut self, edges: &[usize; 3]) {
        let mut v = [0i64; 32];
        v[edges[0]] = 1;
        v[edges[1]] = -1;
        v[edges[2]] = 1;
        loop {
            let Some(low) = (0..32).rev().find(|&r| v[r] != 0) else {
                self.log.push(false);
                return;
            };
            let p = self.pivot_of[low];
            if p < 0 {
                self.pivot_of[low] = self.cols.len() as i8;
                self.cols.push((v, low));
                self.log.push(true);
                return;
            }
            let (b, _) = &self.cols[p as usize];
            let (pv, cv) = (b[low], v[low]);
            let g = gcd(pv, cv);
            let (x, y) = (pv / g, cv / g);
            let mut content = 0;
            for r in 0..=low {
                v[r] = x * v[r] - y * b[r];
                content = gcd(content, v[r]);
            }
            if content > 1 {
                v[..=low].iter_mut().for_each(|e| *e /= content);
            }
        }
    }

    fn pop(&mut self) {
        if self.log.pop().expect("pop after push") {
            let (_, low) = self.cols.pop().expect("logged column");
            self.pivot_of[low] = -1;
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An admissible complex reached by the walk.
#[derive(Clone, Copy, Debug)]
pub struct Candidate {
    pub mask: u32,
    pub facets: usize,
    pub beta2: usize,
}

/// Visits every admissible mask with `β_2 <= max_beta2`, in parallel over
/// `workers` threads. Since `β_2` never decreases as triangles are added,
/// branches exceeding the cap are pruned. Returns one accumulator per
/// prefix task, in task order.
pub fn walk<A, M, V>(
    space: &TriangleSpace,
    full_skeleton: bool,
    max_beta2: usize,
    workers: usize,
    make: M,
    visit: V,
) -> Result<Vec<A>>
where
    A: Send,
    M: Fn() -> A + Sync,
    V: Fn(&mut A, Candidate) + Sync,
{
    check_n(space.n)?;
    let nt = space.n_triangles();
    let prefix_bits = nt.min(6);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::BadParams(format!("thread pool: {e}")))?;

    // suffix coverage for pruning: what triangles j.. can still cover
    let mut suffix_edges = vec![0u32; nt + 1];
    let mut suffix_vertices = vec![0u32; nt + 1];
    for j in (0..nt).rev() {
        suffix_edges[j] = suffix_edges[j + 1] | space.tri_edge_mask[j];
        suffix_vertices[j] = suffix_vertices[j + 1] | space.tri_vertex_mask[j];
    }
    let ctx = WalkCtx { space, full_skeleton, max_beta2, suffix_edges, suffix_vertices };

    let tasks: Vec<u32> = (0..(1u32 << prefix_bits)).collect();
    let out = pool.install(|| {
        tasks
            .par_iter()
            .map(|&prefix| {
                let mut acc = make();
                let mut ech = SmallEchelon::new();
                let mut count = 0;
                for j in 0..prefix_bits {
                    if prefix & (1 << j) != 0 {
                        ech.push(&space.tri_edges[j]);
                        count += 1;
                    }
                }
                if count - ech.rank() <= max_beta2 {
                    ctx.dfs(prefix_bits, prefix, count, &mut ech, &mut acc, &visit);
                }
                acc
            })
            .collect()
    });
    Ok(out)
}

struct WalkCtx<'a> {
    space: &'a TriangleSpace,
    full_skeleton: bool,
    max_beta2: usize,
    suffix_edges: Vec<u32>,
    suffix_vertices: Vec<u32>,
}

impl WalkCtx<'_> {
    fn dfs<A, V: Fn(&mut A, Candidate)>(
        &self,
        j: usize,
        mask: u32,
        count: usize,
        ech: &mut SmallEchelon,
        acc: &mut A,
        visit: &V,
    ) {
        let s = self.space;
        let reachable = if self.full_skeleton {
            (s.covered_edges(mask) | self.suffix_edges[j]) == s.all_edges()
        } else {
            (s.covered_vertices(mask) | self.suffix_vertices[j]) == s.all_vertices()
        };
        if !reachable {
            return;
        }
        if j == s.n_triangles() {
            if s.is_admissible(mask, self.full_skeleton) {
                visit(acc, Candidate { mask, facets: count, beta2: count - ech.rank() });
            }
            return;
        }
        self.dfs(j + 1, mask, count, ech, acc, visit);
        ech.push(&s.tri_edges[j]);
        if count + 1 - ech.rank() <= self.max_beta2 {
            self.dfs(j + 1, mask | (1 << j), count + 1, ech, acc, visit);
        }
        ech.pop();
    }
}
