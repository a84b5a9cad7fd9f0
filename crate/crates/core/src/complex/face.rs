use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An `i`-face: a strictly increasing list of `i + 1` vertex ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Face(SmallVec<[Vertex; 4]>);

impl Face {
    /// Builds a face from vertices in any order. Repeated vertices are an error.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Result<Self> {
        let mut v: SmallVec<[Vertex; 4]> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptyFace);
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(w[0]));
        }
        Ok(Face(v))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max_vertex(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    /// The face with its `j`-th vertex (ascending order) omitted.
    /// Panics on a 0-face.
    pub fn omit(&self, j: usize) -> Face {
        assert!(self.0.len() > 1, "a vertex has no codimension-1 faces");
        let mut v = self.0.clone();
        v.remove(j);
        Face(v)
    }

    /// The boundary faces, in order of the omitted position.
    pub fn boundary(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.len()).filter(|_| self.len() > 1).map(move |j| self.omit(j))
    }

    pub fn with_vertex(&self, x: Vertex) -> Result<Face> {
        Face::new(self.0.iter().copied().chain(std::iter::once(x)))
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn intersection_len(&self, other: &Face) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    /// All nonempty subsets of the face, including the face itself.
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let k = self.len();
        (1u32..(1u32 << k)).map(move |mask| {
            Face(
                (0..k)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| self.0[b])
                    .collect(),
            )
        })
    }

    /// Relabels the vertices through `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[Vertex]) -> Face {
        let mut v: SmallVec<[Vertex; 4]> = self.0.iter().map(|&x| perm[x as usize]).collect();
        v.sort_unstable();
        Face(v)
    }
}

impl TryFrom<Vec<Vertex>> for Face {
    type Error = Error;

    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Face::new(v)
    }
}

impl From<Face> for Vec<Vertex> {
    fn from(f: Face) -> Self {
        f.0.into_vec()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
