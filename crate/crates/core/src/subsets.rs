//! k-subsets of {0, .., n-1} in colexicographic order, with ranking.

/// Binomial coefficient as `u64`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Iterator over the `k`-subsets of `{0, .., n-1}` as sorted index vectors,
/// in colex order: `{0,1}, {0,2}, {1,2}, {0,3}, ...`.
#[derive(Debug, Clone)]
pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let k = next.len();
        // advance the lowest position that can move up without colliding
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { next[i + 1] } else { self.n };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                self.current = Some(next);
                return Some(out);
            }
            i += 1;
        }
        Some(out)
    }
}

/// Position of a sorted subset in colex order (combinatorial number system).
pub fn colex_rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s as u64, i as u64 + 1) as usize)
        .sum()
}

/// Sorted indices of `bits` (bit i set means i is in the set).
pub fn mask_to_subset(bits: u64) -> Vec<usize> {
    (0..64).filter(|i| bits >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(12, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(30, 15), 155_117_520);
    }

    #[test]
    fn colex_order_and_ranks() {
        let all: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
        for (i, s) in Subsets::new(9, 4).enumerate() {
            assert_eq!(colex_rank(&s), i);
        }
        assert_eq!(Subsets::new(5, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Subsets::new(2, 3).count(), 0);
    }

    #[test]
    fn counts_match_bitmask_enumeration() {
        for n in 0..=8usize {
            for k in 0..=n {
                let brute = (0u64..1 << n).filter(|b| b.count_ones() as usize == k).count();
                assert_eq!(Subsets::new(n, k).count(), brute);
                assert_eq!(binomial(n as u64, k as u64) as usize, brute);
            }
        }
    }
}
