//! Exact integer rank.
//!
//! Two fraction-free eliminations:
//!
//! * [`bareiss_rank`]: dense Bareiss elimination. Runs in checked `i128` and
//!   restarts in arbitrary precision if an intermediate overflows.
//! * [`ColumnEchelon`]: sparse column-by-column reduction keyed on the lowest
//!   nonzero row, with every reduced column divided by its content. Columns
//!   can be added one at a time, which is what the search loops need.
//!
//! No floating point is involved anywhere; ranks are exact over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Rank of a dense integer matrix given as rows.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    match bareiss_i128(m) {
        Some(r) => r,
        None => bareiss_big(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()),
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&p| a[p][c] != 0) else { continue };
        a.swap(r, p);
        let piv = a[r][c];
        for i in r + 1..n_rows {
            let lead = a[i][c];
            for j in c + 1..n_cols {
                let num = piv.checked_mul(a[i][j])?.checked_sub(lead.checked_mul(a[r][j])?)?;
                debug_assert_eq!(num % prev, 0, "Bareiss division must be exact");
                a[i][j] = num / prev;
            }
            a[i][c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&p| !a[p][c].is_zero()) else { continue };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..n_rows {
            let lead = a[i][c].clone();
            for j in c + 1..n_cols {
                let num = &piv * &a[i][j] - &lead * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Overflow inside the `i64` sparse reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Sparse column vector: `(row, value)` with rows strictly increasing and no zeros.
pub type SparseCol = Vec<(usize, i64)>;

fn content(v: &SparseCol) -> i64 {
    v.iter().fold(0i64, |g, &(_, x)| g.gcd(&x))
}

/// `a·x - b·y` on sparse columns.
fn lin_comb(a: i64, x: &SparseCol, b: i64, y: &SparseCol) -> Result<SparseCol, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (row, v) = match (x.get(i), y.get(j)) {
            (Some(&(rx, vx)), Some(&(ry, _))) if rx < ry => {
                i += 1;
                (rx, a.checked_mul(vx).ok_or(Overflow)?)
            }
            (Some(&(rx, _)), Some(&(ry, vy))) if ry < rx => {
                j += 1;
                (ry, b.checked_mul(vy).ok_or(Overflow)?.checked_neg().ok_or(Overflow)?)
            }
            (Some(&(rx, vx)), Some(&(_, vy))) => {
                i += 1;
                j += 1;
                let p = a.checked_mul(vx).ok_or(Overflow)?;
                let q = b.checked_mul(vy).ok_or(Overflow)?;
                (rx, p.checked_sub(q).ok_or(Overflow)?)
            }
            (Some(&(rx, vx)), None) => {
                i += 1;
                (rx, a.checked_mul(vx).ok_or(Overflow)?)
            }
            (None, Some(&(ry, vy))) => {
                j += 1;
                (ry, b.checked_mul(vy).ok_or(Overflow)?.checked_neg().ok_or(Overflow)?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((row, v));
        }
    }
    Ok(out)
}

/// Incremental fraction-free column echelon form.
///
/// Each stored column has a distinct lowest row. When `track` is set, every
/// column also carries its expression as an integer combination of the input
/// columns, which yields kernel vectors for dependent columns.
#[derive(Clone, Debug, Default)]
pub struct ColumnEchelon {
    pivots: std::collections::HashMap<usize, usize>,
    stored: Vec<SparseCol>,
    history: Vec<SparseCol>,
    track: bool,
    added: usize,
    kernel: Vec<SparseCol>,
}

impl ColumnEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon that records a kernel vector for every dependent column.
    pub fn with_kernel() -> Self {
        ColumnEchelon { track: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.stored.len()
    }

    pub fn columns_added(&self) -> usize {
        self.added
    }

    /// Kernel basis collected so far, as combinations of input column indices.
    pub fn kernel(&self) -> &[SparseCol] {
        &self.kernel
    }

    /// Reduces `col` against the stored columns. Returns whether it was independent.
    pub fn push(&mut self, mut col: SparseCol) -> Result<bool, Overflow> {
        let id = self.added;
        self.added += 1;
        let mut hist: SparseCol = if self.track { vec![(id, 1)] } else { Vec::new() };
        while let Some(&(low, v)) = col.last() {
            let Some(&p) = self.pivots.get(&low) else {
                self.pivots.insert(low, self.stored.len());
                self.stored.push(col);
                if self.track {
                    self.history.push(hist);
                }
                return Ok(true);
            };
            let pv = self.stored[p].last().unwrap().1;
            let g = pv.gcd(&v);
            let (a, b) = (pv / g, v / g);
            col = lin_comb(a, &col, b, &self.stored[p])?;
            if self.track {
                hist = lin_comb(a, &hist, b, &self.history[p])?;
            }
            let mut c = content(&col);
            if self.track {
                c = c.gcd(&content(&hist));
            }
            if c > 1 {
                col.iter_mut().for_each(|(_, x)| *x /= c);
                hist.iter_mut().for_each(|(_, x)| *x /= c);
            }
        }
        if self.track {
            let c = content(&hist);
            if c > 1 {
                hist.iter_mut().for_each(|(_, x)| *x /= c);
            }
            self.kernel.push(hist);
        }
        Ok(false)
    }
}

/// Rank of a sparse integer matrix given by columns. Falls back to dense
/// arbitrary-precision Bareiss if the sparse reduction overflows.
pub fn sparse_rank(n_rows: usize, cols: &[SparseCol]) -> usize {
    let mut ech = ColumnEchelon::new();
    for c in cols {
        if ech.push(c.clone()).is_err() {
            let mut dense = vec![vec![0i64; cols.len()]; n_rows];
            for (j, c) in cols.iter().enumerate() {
                for &(r, v) in c {
                    dense[r][j] = v;
                }
            }
            return bareiss_big(
                dense.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
            );
        }
    }
    ech.rank()
}

/// True when every entry of the kernel vector is nonzero.
pub fn has_full_support(v: &SparseCol, len: usize) -> bool {
    v.len() == len && v.iter().all(|&(_, x)| x != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian elimination over exact fractions `(num, den)` in i128.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<(i128, i128)>> =
            rows.iter().map(|r| r.iter().map(|&v| (v as i128, 1i128)).collect()).collect();
        fn norm((n, d): (i128, i128)) -> (i128, i128) {
            let g = n.gcd(&d).max(1);
            let s = if d < 0 { -1 } else { 1 };
            (s * n / g, s * d / g)
        }
        let n_rows = a.len();
        let n_cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..n_cols {
            let Some(p) = (r..n_rows).find(|&p| a[p][c].0 != 0) else { continue };
            a.swap(r, p);
            for i in r + 1..n_rows {
                if a[i][c].0 == 0 {
                    continue;
                }
                let (pn, pd) = a[r][c];
                let (ln, ld) = a[i][c];
                // factor = lead / piv
                let f = norm((ln * pd, ld * pn));
                for j in c..n_cols {
                    let (xn, xd) = a[r][j];
                    let prod = norm((f.0 * xn, f.1 * xd));
                    let (yn, yd) = a[i][j];
                    a[i][j] = norm((yn * prod.1 - prod.0 * yd, yd * prod.1));
                }
            }
            r += 1;
        }
        r
    }

    fn cols_of(rows: &[Vec<i64>]) -> Vec<SparseCol> {
        let n_cols = rows.first().map_or(0, Vec::len);
        (0..n_cols)
            .map(|j| rows.iter().enumerate().filter(|(_, r)| r[j] != 0).map(|(i, r)| (i, r[j])).collect())
            .collect()
    }

    #[test]
    fn small_known_ranks() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(bareiss_rank(&m), 2);
        assert_eq!(rational_rank(&m), 2);
        assert_eq!(sparse_rank(3, &cols_of(&m)), 2);
        assert_eq!(bareiss_rank(&[]), 0);
        assert_eq!(bareiss_rank(&[vec![0, 0]]), 0);
    }

    #[test]
    fn big_fallback_agrees() {
        let m = vec![vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8], vec![9, 7, 9, 3]];
        let big = bareiss_big(m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
        assert_eq!(big, bareiss_rank(&m));
        assert_eq!(big, rational_rank(&m));
    }

    #[test]
    fn kernel_of_dependent_column() {
        // c2 = c0 + c1
        let cols = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (1, 2), (2, 1)]];
        let mut e = ColumnEchelon::with_kernel();
        for c in cols {
            e.push(c).unwrap();
        }
        assert_eq!(e.rank(), 2);
        let k = &e.kernel()[0];
        let sign = k[0].1.signum();
        let k: Vec<_> = k.iter().map(|&(i, v)| (i, v * sign)).collect();
        assert_eq!(k, vec![(0, 1), (1, 1), (2, -1)]);
        assert!(has_full_support(&e.kernel()[0], 3));
    }

    proptest::proptest! {
        #[test]
        fn eliminations_agree(rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 6), 1..7)) {
            let oracle = rational_rank(&rows);
            proptest::prop_assert_eq!(bareiss_rank(&rows), oracle);
            proptest::prop_assert_eq!(sparse_rank(rows.len(), &cols_of(&rows)), oracle);
        }
    }
}
