//! Closed-form extremal bounds for complexes in `𝒦(n, r, t)`.

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Largest facet count of an r-complex on `n` vertices with `β_r = t`:
/// `C(n-1, r) + t`.
pub fn facet_bound(n: u64, r: u64, t: u64) -> u128 {
    binomial(n - 1, r) + t as u128
}

/// Upper bound on the signless Laplacian spectral radius `𝔮_{r-1}`:
/// `rn - r² + t + 1`.
pub fn spectral_bound(n: u64, r: u64, t: u64) -> f64 {
    (r * n) as f64 - (r * r) as f64 + t as f64 + 1.0
}

/// `Σ_{i=1}^{r} (-1)^{i+1} C(n,i) + (-1)^{r+2} C(n-1,r)`, which equals 1 whenever `1 <= r < n`.
pub fn telescoping_identity(n: u64, r: u64) -> i128 {
    let mut s: i128 = 0;
    for i in 1..=r {
        let c = binomial(n, i) as i128;
        s += if i % 2 == 1 { c } else { -c };
    }
    let last = binomial(n - 1, r) as i128;
    s + if r.is_multiple_of(2) { last } else { -last }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(facet_bound(5, 2, 1), 7);
        assert_eq!(spectral_bound(6, 2, 2), 11.0);
        for n in 3..12 {
            assert_eq!(facet_bound(n, 2, 0), binomial(n - 1, 2));
        }
        assert_eq!(spectral_bound(6, 2, 0), 9.0);
    }

    #[test]
    fn telescoping_holds() {
        for n in 2..=30 {
            for r in 1..n {
                assert_eq!(telescoping_identity(n, r), 1, "n={n} r={r}");
            }
        }
    }
}
