//! Pure simplicial complexes on a dense vertex set and their neighbor structure.
//!
//! A complex is stored by its facets. Every face of every dimension is derived
//! by closure and kept in lexicographic order; a face's index in `S_i(K)` is its
//! rank in that order and is the row/column index used by every operator built
//! on top of the complex.

mod face;
pub mod io;
mod iso;

use std::collections::{BTreeMap, HashMap, HashSet};

pub use face::{Face, Vertex};
pub use iso::{canonical_form, is_isomorphic, MAX_ISO_VERTICES};

use crate::error::{Error, Result};

/// Compressed adjacency list.
#[derive(Clone, Debug, Default)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    fn row(&self, k: usize) -> &[u32] {
        &self.targets[self.offsets[k]..self.offsets[k + 1]]
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    facets: Vec<Face>,
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    /// `boundary[i]`: for each i-face, the indices of its (i-1)-faces in omitted-vertex order
    /// (stride `i + 1`). Empty for `i = 0`.
    boundary: Vec<Vec<u32>>,
    /// `cofaces[i]`: for each i-face, the indices of the (i+1)-faces containing it.
    cofaces: Vec<Csr>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Builds the complex on vertices `0..n` generated by `facets`.
    ///
    /// Input faces contained in another input face are dropped. Vertices of
    /// `0..n` that no facet touches become 0-dimensional facets, so with
    /// `require_pure` every vertex must be covered.
    pub fn from_facets(n: usize, facets: Vec<Face>, require_pure: bool) -> Result<Self> {
        if facets.is_empty() || n == 0 {
            return Err(Error::Empty);
        }
        for f in &facets {
            if f.max_vertex() as usize >= n {
                return Err(Error::BadVertexId { vertex: f.max_vertex(), n });
            }
        }

        let mut input = facets;
        input.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        input.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(input.len());
        // Subfaces of already-kept (larger or equal) facets.
        let mut covered: HashSet<Face> = HashSet::new();
        for f in input {
            if covered.contains(&f) {
                continue;
            }
            covered.extend(f.subfaces());
            kept.push(f);
        }
        for v in 0..n as Vertex {
            let vf = Face::new([v]).expect("singleton");
            if covered.insert(vf.clone()) {
                kept.push(vf);
            }
        }
        kept.sort_unstable();

        if require_pure {
            let dims: std::collections::BTreeSet<usize> = kept.iter().map(Face::dim).collect();
            if dims.len() > 1 {
                return Err(Error::NotPure { dims: dims.into_iter().collect() });
            }
        }

        let dim = kept.iter().map(Face::dim).max().expect("nonempty");
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); dim + 1];
        for f in covered {
            by_dim[f.dim()].push(f);
        }
        Ok(Self::from_closed(n, kept, by_dim))
    }

    fn from_closed(n: usize, facets: Vec<Face>, mut faces: Vec<Vec<Face>>) -> Self {
        for s in &mut faces {
            s.sort_unstable();
        }
        let index: Vec<HashMap<Face, usize>> = faces
            .iter()
            .map(|s| s.iter().cloned().enumerate().map(|(k, f)| (f, k)).collect())
            .collect();

        let mut boundary = vec![Vec::new()];
        for i in 1..faces.len() {
            let mut table = Vec::with_capacity(faces[i].len() * (i + 1));
            for f in &faces[i] {
                for g in f.boundary() {
                    table.push(index[i - 1][&g] as u32);
                }
            }
            boundary.push(table);
        }

        let mut cofaces = Vec::with_capacity(faces.len());
        for i in 0..faces.len() {
            let count = faces[i].len();
            let mut deg = vec![0usize; count];
            if i + 1 < faces.len() {
                for &b in &boundary[i + 1] {
                    deg[b as usize] += 1;
                }
            }
            let mut offsets = Vec::with_capacity(count + 1);
            offsets.push(0);
            for d in &deg {
                offsets.push(offsets.last().unwrap() + d);
            }
            let mut fill = offsets.clone();
            let mut targets = vec![0u32; *offsets.last().unwrap()];
            if i + 1 < faces.len() {
                let stride = i + 2;
                for (c, chunk) in boundary[i + 1].chunks(stride).enumerate() {
                    for &b in chunk {
                        targets[fill[b as usize]] = c as u32;
                        fill[b as usize] += 1;
                    }
                }
            }
            cofaces.push(Csr { offsets, targets });
        }

        SimplicialComplex { n_vertices: n, facets, faces, index, boundary, cofaces }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.dim() == self.dim())
    }

    /// Fails with `NotPure` unless every facet has the top dimension.
    pub fn ensure_pure(&self) -> Result<()> {
        if self.is_pure() {
            Ok(())
        } else {
            let dims: std::collections::BTreeSet<usize> = self.facets.iter().map(Face::dim).collect();
            Err(Error::NotPure { dims: dims.into_iter().collect() })
        }
    }

    /// `S_i(K)` in lexicographic order; empty above the top dimension.
    pub fn faces(&self, i: usize) -> &[Face] {
        self.faces.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_count(&self, i: usize) -> usize {
        self.faces(i).len()
    }

    /// Face counts `|S_0|, .., |S_dim|`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, f: &Face) -> Option<usize> {
        self.index.get(f.dim())?.get(f).copied()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.index_of(f).is_some()
    }

    fn require(&self, f: &Face) -> Result<usize> {
        self.index_of(f).ok_or_else(|| Error::FaceNotInComplex(f.clone()))
    }

    /// Indices in `S_{i-1}` of the boundary faces of the `k`-th i-face, ordered by omitted position.
    pub fn boundary_indices(&self, i: usize, k: usize) -> &[u32] {
        if i == 0 {
            return &[];
        }
        &self.boundary[i][k * (i + 1)..(k + 1) * (i + 1)]
    }

    /// Flat boundary table of dimension `i` with stride `i + 1`.
    pub fn boundary_table(&self, i: usize) -> &[u32] {
        self.boundary.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Indices in `S_{i+1}` of the faces containing the `k`-th i-face.
    pub fn coface_indices(&self, i: usize, k: usize) -> &[u32] {
        match self.cofaces.get(i) {
            Some(c) => c.row(k),
            None => &[],
        }
    }

    /// `d_K(F)`: the number of faces one dimension up containing `f`.
    pub fn face_degree(&self, f: &Face) -> Result<usize> {
        let k = self.require(f)?;
        Ok(self.coface_indices(f.dim(), k).len())
    }

    /// Down neighbor indices of the `k`-th i-face, ascending.
    pub fn down_neighbor_indices(&self, i: usize, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &b in self.boundary_indices(i, k) {
            for &c in self.coface_indices(i - 1, b as usize) {
                if c as usize != k {
                    out.push(c as usize);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `N^d(F)`: faces of the same dimension sharing a codimension-1 face with `f`.
    pub fn down_neighbors(&self, f: &Face) -> Result<Vec<Face>> {
        let k = self.require(f)?;
        let i = f.dim();
        if i == 0 {
            return Err(Error::DimensionOutOfRange { dim: 0, lo: 1, hi: self.dim() });
        }
        Ok(self
            .down_neighbor_indices(i, k)
            .into_iter()
            .map(|c| self.faces[i][c].clone())
            .collect())
    }

    /// `N^d(F, x)`: the down neighbors of `f` that contain `x`.
    pub fn down_neighbors_via_vertex(&self, f: &Face, x: Vertex) -> Result<Vec<Face>> {
        self.require(f)?;
        if x as usize >= self.n_vertices {
            return Err(Error::BadVertexId { vertex: x, n: self.n_vertices });
        }
        if f.contains(x) {
            return Err(Error::VertexInFace { vertex: x, face: f.clone() });
        }
        let mut out: Vec<Face> = f
            .boundary()
            .filter_map(|g| g.with_vertex(x).ok())
            .filter(|h| self.contains(h))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Up neighbor indices of the `k`-th i-face, ascending.
    pub fn up_neighbor_indices(&self, i: usize, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &c in self.coface_indices(i, k) {
            for &b in self.boundary_indices(i + 1, c as usize) {
                if b as usize != k {
                    out.push(b as usize);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `N^u(F)`: faces of the same dimension lying with `f` in a common face one dimension up.
    pub fn up_neighbors(&self, f: &Face) -> Result<Vec<Face>> {
        let k = self.require(f)?;
        let i = f.dim();
        Ok(self
            .up_neighbor_indices(i, k)
            .into_iter()
            .map(|c| self.faces[i][c].clone())
            .collect())
    }

    /// Whether the up-neighbor graph on `S_i(K)` is connected. Vacuously true
    /// with at most one i-face.
    pub fn is_path_connected(&self, i: usize) -> bool {
        let count = self.face_count(i);
        if count <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(count);
        for chunk in self.boundary_table(i + 1).chunks(i + 2) {
            for w in chunk.windows(2) {
                uf.union(w[0] as usize, w[1] as usize);
            }
        }
        uf.components() == 1
    }

    /// The subcomplex of faces of dimension at most `r`.
    pub fn skeleton(&self, r: usize) -> SimplicialComplex {
        if r >= self.dim() {
            return self.clone();
        }
        let mut facets: Vec<Face> = self.faces[r].clone();
        facets.extend(self.facets.iter().filter(|f| f.dim() < r).cloned());
        facets.sort_unstable();
        Self::from_closed(self.n_vertices, facets, self.faces[..=r].to_vec())
    }

    /// The complex with one facet removed. Its proper faces are kept, so the
    /// result may fail to be pure.
    pub fn without_facet(&self, facet: &Face) -> Result<SimplicialComplex> {
        if !self.facets.contains(facet) {
            return Err(Error::FaceNotInComplex(facet.clone()));
        }
        let mut rest: Vec<Face> = self.facets.iter().filter(|f| *f != facet).cloned().collect();
        rest.extend(facet.boundary());
        SimplicialComplex::from_facets(self.n_vertices, rest, false)
    }

    /// Vertex degrees in the top dimension, used as a cheap isomorphism invariant.
    pub(crate) fn facet_degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n_vertices];
        for f in &self.facets {
            for &v in f.vertices() {
                deg[v as usize] += 1;
            }
        }
        deg.sort_unstable();
        deg
    }

    /// Facets grouped by dimension, for summaries.
    pub fn facet_dimensions(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.facets {
            *m.entry(f.dim()).or_insert(0) += 1;
        }
        m
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
