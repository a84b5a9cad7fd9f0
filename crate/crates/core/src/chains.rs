//! Boundary maps and Laplace operators.
//!
//! Faces are oriented by ascending vertex ids, so the signed boundary of
//! `{v_0 < .. < v_i}` is `sum_j (-1)^j {v_0, .., ^v_j, .., v_i}`. The signless
//! boundary has the same support with all entries `1`.
//!
//! Explicit operators are sparse with rows and columns in lexicographic face
//! order. `Q_i^up` additionally has a matrix-free path that never
//! materializes the matrix, used for large complexes.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Largest basis for which a dense matrix is ever materialized.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMatrix {
    dim: usize,
    signed: bool,
    rows: Vec<Face>,
    cols: Vec<Face>,
    /// `(row, col, value)`, sorted by row then column.
    entries: Vec<(usize, usize, i8)>,
}

fn check_boundary_dim(k: &SimplicialComplex, i: usize) -> Result<()> {
    if i == 0 || i > k.dim() {
        return Err(Error::DimensionOutOfRange { dim: i, lo: 1, hi: k.dim() });
    }
    Ok(())
}

fn boundary(k: &SimplicialComplex, i: usize, signed: bool) -> Result<BoundaryMatrix> {
    check_boundary_dim(k, i)?;
    let mut entries = Vec::with_capacity(k.face_count(i) * (i + 1));
    for c in 0..k.face_count(i) {
        for (j, &r) in k.boundary_indices(i, c).iter().enumerate() {
            let v = if signed && j % 2 == 1 { -1 } else { 1 };
            entries.push((r as usize, c, v));
        }
    }
    entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
    Ok(BoundaryMatrix {
        dim: i,
        signed,
        rows: k.faces(i - 1).to_vec(),
        cols: k.faces(i).to_vec(),
        entries,
    })
}

/// Matrix of `∂_i` from i-chains to (i-1)-chains.
pub fn signed_boundary(k: &SimplicialComplex, i: usize) -> Result<BoundaryMatrix> {
    boundary(k, i, true)
}

/// Matrix of the signless boundary map: the support of `∂_i` with all entries `1`.
pub fn signless_boundary(k: &SimplicialComplex, i: usize) -> Result<BoundaryMatrix> {
    boundary(k, i, false)
}

impl BoundaryMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn rows(&self) -> &[Face] {
        &self.rows
    }

    pub fn cols(&self) -> &[Face] {
        &self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i8)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense_int(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.n_cols()]; self.n_rows()];
        for &(r, c, v) in &self.entries {
            m[r][c] = v as i64;
        }
        m
    }

    /// Columns as sparse `(row, value)` lists, rows ascending.
    pub fn columns(&self) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![Vec::new(); self.n_cols()];
        for &(r, c, v) in &self.entries {
            cols[c].push((r, v as i64));
        }
        cols
    }

    pub fn row_sums(&self) -> Vec<i64> {
        let mut s = vec![0; self.n_rows()];
        for &(r, _, v) in &self.entries {
            s[r] += v as i64;
        }
        s
    }

    pub fn col_sums(&self) -> Vec<i64> {
        let mut s = vec![0; self.n_cols()];
        for &(_, c, v) in &self.entries {
            s[c] += v as i64;
        }
        s
    }

    /// Nonzero entries of the integer product `self · rhs`.
    pub fn compose(&self, rhs: &BoundaryMatrix) -> Result<Vec<(usize, usize, i64)>> {
        if self.n_cols() != rhs.n_rows() {
            return Err(Error::LengthMismatch { expected: self.n_cols(), got: rhs.n_rows() });
        }
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.n_cols()];
        for &(r, c, v) in &self.entries {
            by_row[c].push((r, v as i64));
        }
        let mut acc: std::collections::BTreeMap<(usize, usize), i64> = Default::default();
        for &(mid, c, v) in &rhs.entries {
            for &(r, w) in &by_row[mid] {
                *acc.entry((r, c)).or_insert(0) += w * v as i64;
            }
        }
        Ok(acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect())
    }

    /// Triplet dump: header `rows cols nnz`, then one `i j value` line per entry.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n_rows(), self.n_cols(), self.nnz());
        for &(r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v}").unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LaplacianKind {
    /// `∂_{i+1} ∂_{i+1}^*`
    LUp,
    /// `∂_i^* ∂_i`
    LDown,
    /// `L_up + L_down`
    LFull,
    /// signless `∂̄_{i+1} ∂̄_{i+1}^*`
    QUp,
    /// signless `∂̄_i^* ∂̄_i`
    QDown,
}

impl LaplacianKind {
    pub fn is_signless(self) -> bool {
        matches!(self, LaplacianKind::QUp | LaplacianKind::QDown)
    }
}

/// Symmetric sparse matrix in compressed row form.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseSym {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSym {
    fn from_triplets(n: usize, mut t: Vec<(usize, usize, f64)>) -> Self {
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(t.len());
        let mut vals: Vec<f64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(c);
                vals.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        // drop cancelled entries
        let mut m = SparseSym { n, row_ptr, cols, vals };
        m.prune();
        m
    }

    fn prune(&mut self) {
        let mut row_ptr = vec![0usize; self.n + 1];
        let mut cols = Vec::with_capacity(self.cols.len());
        let mut vals = Vec::with_capacity(self.vals.len());
        for r in 0..self.n {
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.vals[p] != 0.0 {
                    cols.push(self.cols[p]);
                    vals.push(self.vals[p]);
                }
            }
            row_ptr[r + 1] = cols.len();
        }
        self.row_ptr = row_ptr;
        self.cols = cols;
        self.vals = vals;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(p) => self.vals[span.start + p],
            Err(_) => 0.0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |p| (r, self.cols[p], self.vals[p]))
        })
    }

    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        for r in 0..self.n {
            let mut s = 0.0;
            for p in self.row_ptr[r]..self.row_ptr[r + 1] {
                s += self.vals[p] * x[self.cols[p]];
            }
            out[r] = s;
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.n, self.nnz());
        for (r, c, v) in self.iter() {
            writeln!(out, "{r} {c} {v}").unwrap();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub enum Backing<'a> {
    Explicit(SparseSym),
    /// `Q_i^up` applied through the face incidence of the complex.
    MatrixFree(&'a SimplicialComplex),
}

/// A Laplace operator on the real vector space with basis `S_i(K)`.
#[derive(Clone, Debug)]
pub struct LaplacianOperator<'a> {
    kind: LaplacianKind,
    dim: usize,
    size: usize,
    backing: Backing<'a>,
}

fn check_kind_dim(k: &SimplicialComplex, i: usize, kind: LaplacianKind) -> Result<()> {
    let top = k.dim();
    let (lo, hi) = match kind {
        LaplacianKind::LUp | LaplacianKind::QUp => (0, top.saturating_sub(1)),
        LaplacianKind::LDown | LaplacianKind::QDown => (1, top),
        LaplacianKind::LFull => (0, top),
    };
    let up_invalid = matches!(kind, LaplacianKind::LUp | LaplacianKind::QUp) && top == 0;
    if i < lo || i > hi || up_invalid {
        return Err(Error::DimensionOutOfRange { dim: i, lo, hi });
    }
    Ok(())
}

fn sign(signed: bool, j: usize) -> f64 {
    if signed && j % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Triplets of `B B^*` where `B` is the boundary of dimension `i + 1`.
fn up_triplets(k: &SimplicialComplex, i: usize, signed: bool, out: &mut Vec<(usize, usize, f64)>) {
    for c in 0..k.face_count(i + 1) {
        let b = k.boundary_indices(i + 1, c);
        for (ja, &a) in b.iter().enumerate() {
            for (jb, &bb) in b.iter().enumerate() {
                out.push((a as usize, bb as usize, sign(signed, ja) * sign(signed, jb)));
            }
        }
    }
}

/// Triplets of `B^* B` where `B` is the boundary of dimension `i`.
fn down_triplets(k: &SimplicialComplex, i: usize, signed: bool, out: &mut Vec<(usize, usize, f64)>) {
    let mut incident: Vec<Vec<(usize, f64)>> = vec![Vec::new(); k.face_count(i - 1)];
    for a in 0..k.face_count(i) {
        for (j, &g) in k.boundary_indices(i, a).iter().enumerate() {
            incident[g as usize].push((a, sign(signed, j)));
        }
    }
    for list in &incident {
        for &(a, sa) in list {
            for &(b, sb) in list {
                out.push((a, b, sa * sb));
            }
        }
    }
}

/// Explicit sparse Laplace operator of the requested kind on `S_i(K)`.
pub fn laplacian(k: &SimplicialComplex, i: usize, kind: LaplacianKind) -> Result<LaplacianOperator<'static>> {
    check_kind_dim(k, i, kind)?;
    let mut t = Vec::new();
    let signed = !kind.is_signless();
    let top = k.dim();
    match kind {
        LaplacianKind::LUp | LaplacianKind::QUp => up_triplets(k, i, signed, &mut t),
        LaplacianKind::LDown | LaplacianKind::QDown => down_triplets(k, i, signed, &mut t),
        LaplacianKind::LFull => {
            if i < top {
                up_triplets(k, i, true, &mut t);
            }
            if i >= 1 {
                down_triplets(k, i, true, &mut t);
            }
        }
    }
    let size = k.face_count(i);
    Ok(LaplacianOperator { kind, dim: i, size, backing: Backing::Explicit(SparseSym::from_triplets(size, t)) })
}

/// `Q_i^up` as a matrix-free operator over the complex's incidence tables.
pub fn q_up_operator(k: &SimplicialComplex, i: usize) -> Result<LaplacianOperator<'_>> {
    check_kind_dim(k, i, LaplacianKind::QUp)?;
    Ok(LaplacianOperator { kind: LaplacianKind::QUp, dim: i, size: k.face_count(i), backing: Backing::MatrixFree(k) })
}

impl LaplacianOperator<'_> {
    pub fn kind(&self) -> LaplacianKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn backing(&self) -> &Backing<'_> {
        &self.backing
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.size];
        self.apply_into(x, &mut out)?;
        Ok(out)
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        if x.len() != self.size {
            return Err(Error::LengthMismatch { expected: self.size, got: x.len() });
        }
        if out.len() != self.size {
            return Err(Error::LengthMismatch { expected: self.size, got: out.len() });
        }
        match &self.backing {
            Backing::Explicit(m) => m.mul_vec(x, out),
            Backing::MatrixFree(k) => q_up_kernel(k, self.dim, x, out),
        }
        Ok(())
    }

    pub fn entry(&self, r: usize, c: usize) -> f64 {
        match &self.backing {
            Backing::Explicit(m) => m.get(r, c),
            Backing::MatrixFree(k) => {
                let i = self.dim;
                let mut s = 0.0;
                for &cf in k.coface_indices(i, r) {
                    if k.boundary_indices(i + 1, cf as usize).contains(&(c as u32)) {
                        s += 1.0;
                    }
                }
                s
            }
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.size).map(|r| self.entry(r, r)).collect()
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        if self.size > DENSE_LIMIT {
            return Err(Error::DenseTooLarge { size: self.size, limit: DENSE_LIMIT });
        }
        match &self.backing {
            Backing::Explicit(m) => Ok(m.to_dense()),
            Backing::MatrixFree(_) => {
                let mut m = DMatrix::zeros(self.size, self.size);
                let mut e = vec![0.0; self.size];
                let mut col = vec![0.0; self.size];
                for c in 0..self.size {
                    e[c] = 1.0;
                    self.apply_into(&e, &mut col)?;
                    e[c] = 0.0;
                    for r in 0..self.size {
                        m[(r, c)] = col[r];
                    }
                }
                Ok(m)
            }
        }
    }

    pub fn sparse(&self) -> Option<&SparseSym> {
        match &self.backing {
            Backing::Explicit(m) => Some(m),
            Backing::MatrixFree(_) => None,
        }
    }
}

/// `out(F) = sum over (i+1)-faces F̄ ⊃ F of f(∂F̄)`.
pub(crate) fn q_up_kernel(k: &SimplicialComplex, i: usize, f: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    let stride = i + 2;
    for chunk in k.boundary_table(i + 1).chunks(stride) {
        let s: f64 = chunk.iter().map(|&g| f[g as usize]).sum();
        for &g in chunk {
            out[g as usize] += s;
        }
    }
}

/// [`q_up_kernel`] with Neumaier-compensated accumulation into each output entry.
pub(crate) fn q_up_kernel_compensated(k: &SimplicialComplex, i: usize, f: &[f64], out: &mut [f64], carry: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    carry.iter_mut().for_each(|v| *v = 0.0);
    let stride = i + 2;
    for chunk in k.boundary_table(i + 1).chunks(stride) {
        let s: f64 = chunk.iter().map(|&g| f[g as usize]).sum();
        for &g in chunk {
            let (sum, c) = (&mut out[g as usize], &mut carry[g as usize]);
            let t = *sum + s;
            *c += if sum.abs() >= s.abs() { (*sum - t) + s } else { (s - t) + *sum };
            *sum = t;
        }
    }
    out.iter_mut().zip(carry.iter()).for_each(|(v, c)| *v += c);
}

fn check_len(k: &SimplicialComplex, i: usize, v: &[f64]) -> Result<()> {
    if i > k.dim() {
        return Err(Error::DimensionOutOfRange { dim: i, lo: 0, hi: k.dim() });
    }
    if v.len() != k.face_count(i) {
        return Err(Error::LengthMismatch { expected: k.face_count(i), got: v.len() });
    }
    Ok(())
}

/// Matrix-free `Q_i^up f`. At the top dimension the result is zero.
pub fn apply_q_up(k: &SimplicialComplex, i: usize, f: &[f64]) -> Result<Vec<f64>> {
    check_len(k, i, f)?;
    let mut out = vec![0.0; f.len()];
    q_up_kernel(k, i, f, &mut out);
    Ok(out)
}

/// Matrix-free `Q_i^down g` for `i >= 1`.
pub fn apply_q_down(k: &SimplicialComplex, i: usize, g: &[f64]) -> Result<Vec<f64>> {
    check_len(k, i, g)?;
    if i == 0 {
        return Err(Error::DimensionOutOfRange { dim: 0, lo: 1, hi: k.dim() });
    }
    let mut low = vec![0.0; k.face_count(i - 1)];
    for (c, chunk) in k.boundary_table(i).chunks(i + 1).enumerate() {
        for &b in chunk {
            low[b as usize] += g[c];
        }
    }
    Ok(k.boundary_table(i)
        .chunks(i + 1)
        .map(|chunk| chunk.iter().map(|&b| low[b as usize]).sum())
        .collect())
}

/// `f(∂F̄) = sum_{G ∈ ∂F̄} f(G)` for every (i+1)-face.
pub fn boundary_sums(k: &SimplicialComplex, i: usize, f: &[f64]) -> Result<Vec<f64>> {
    check_len(k, i, f)?;
    Ok(k.boundary_table(i + 1)
        .chunks(i + 2)
        .map(|chunk| chunk.iter().map(|&g| f[g as usize]).sum())
        .collect())
}

/// `sum_{F̄ ∈ S_{i+1}} f(∂F̄) g(∂F̄)`, equal to `⟨Q_i^up f, g⟩`.
pub fn quadratic_form(k: &SimplicialComplex, i: usize, f: &[f64], g: &[f64]) -> Result<f64> {
    let bf = boundary_sums(k, i, f)?;
    let bg = boundary_sums(k, i, g)?;
    Ok(bf.iter().zip(&bg).map(|(a, b)| a * b).sum())
}
