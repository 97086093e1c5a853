//! Binomial coefficients, colexicographic ranking of r-subsets and subset
//! enumeration.
//!
//! Subsets are sorted slices of 1-based vertex labels. The colex rank of
//! `{c_1 < c_2 < ... < c_r}` is `sum_i C(c_i - 1, i)`, so the subsets of
//! `{1..n}` occupy exactly the ranks `0..C(n, r)` and the rank of a subset
//! does not depend on `n`.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of subsets of an `n`-set with at most `k` elements (including the
/// empty set), saturating.
pub fn subsets_up_to(n: u64, k: u64) -> u64 {
    (0..=k.min(n)).fold(0u64, |acc, i| acc.saturating_add(binomial(n, i)))
}

/// Colex rank of a sorted subset of 1-based labels.
pub fn colex_rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(v as u64 - 1, i as u64 + 1))
        .sum()
}

/// Inverse of [`colex_rank`] for subsets of size `r`.
pub fn colex_unrank(mut rank: u64, r: usize) -> Vec<usize> {
    let mut out = vec![0usize; r];
    for i in (1..=r).rev() {
        // largest c with C(c, i) <= rank
        let mut lo = i as u64 - 1;
        let mut hi = lo + 1;
        while binomial(hi, i as u64) <= rank {
            lo = hi;
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if binomial(mid, i as u64) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rank -= binomial(lo, i as u64);
        out[i - 1] = lo as usize + 1;
    }
    out
}

/// Lexicographic iterator over the `k`-subsets of a list of items.
pub struct Combinations<T> {
    items: Vec<T>,
    idx: Vec<usize>,
    done: bool,
}

impl<T: Copy> Combinations<T> {
    pub fn new(items: impl Into<Vec<T>>, k: usize) -> Self {
        let items = items.into();
        Combinations {
            done: k > items.len(),
            items,
            idx: (0..k).collect(),
        }
    }
}

impl<T: Copy> Iterator for Combinations<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.items[i]).collect();
        let k = self.idx.len();
        let n = self.items.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Combinations<usize> {
    Combinations::new((1..=n).collect::<Vec<_>>(), k)
}
