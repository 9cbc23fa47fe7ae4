//! Basis of the exterior power of an n-dimensional space, indexed by p-subsets in
//! colex order.

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n: usize,
    p: usize,
    subsets: Vec<u32>,
    table: Vec<Vec<u64>>,
}

impl ExteriorBasis {
    pub fn new(n: usize, p: usize) -> Self {
        let table: Vec<Vec<u64>> = (0..=n)
            .map(|i| {
                (0..=p.max(1))
                    .map(|j| binomial(i as i64, j as i64))
                    .collect()
            })
            .collect();
        let count = binomial(n as i64, p as i64) as usize;
        let mut subsets = Vec::with_capacity(count * p);
        if p <= n {
            let mut cur: Vec<u32> = (0..p as u32).collect();
            loop {
                subsets.extend_from_slice(&cur);
                // colex successor: bump the first index that can move
                let mut j = 0;
                while j < p {
                    let limit = if j + 1 < p { cur[j + 1] } else { n as u32 };
                    if cur[j] + 1 < limit {
                        break;
                    }
                    j += 1;
                }
                if j == p {
                    break;
                }
                cur[j] += 1;
                for (t, x) in cur.iter_mut().enumerate().take(j) {
                    *x = t as u32;
                }
            }
            if p == 0 {
                subsets.clear();
            }
        }
        ExteriorBasis {
            n,
            p,
            subsets,
            table,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        if self.p > self.n {
            0
        } else {
            binomial(self.n as i64, self.p as i64) as usize
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn subset(&self, idx: usize) -> &[u32] {
        &self.subsets[idx * self.p..(idx + 1) * self.p]
    }

    /// Colex rank of a strictly increasing subset of size `p`.
    pub fn rank(&self, subset: &[u32]) -> usize {
        debug_assert_eq!(subset.len(), self.p);
        subset
            .iter()
            .enumerate()
            .map(|(j, &i)| self.table[i as usize][j + 1])
            .sum::<u64>() as usize
    }

    /// Rank of `subset` with its position `skip` removed (subset has size p + 1).
    pub fn rank_without(&self, subset: &[u32], skip: usize) -> usize {
        let mut r = 0u64;
        let mut j = 0;
        for (t, &i) in subset.iter().enumerate() {
            if t == skip {
                continue;
            }
            r += self.table[i as usize][j + 1];
            j += 1;
        }
        r as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn colex_order_small() {
        let b = ExteriorBasis::new(4, 2);
        let all: Vec<Vec<u32>> = (0..b.len()).map(|i| b.subset(i).to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(ExteriorBasis::new(3, 0).len(), 1);
        assert_eq!(ExteriorBasis::new(3, 4).len(), 0);
        assert_eq!(ExteriorBasis::new(0, 0).len(), 1);
        assert_eq!(binomial(5, -1), 0);
        assert_eq!(binomial(10, 5), 252);
    }

    proptest! {
        #[test]
        fn rank_inverts_enumeration(n in 1usize..12, p in 1usize..6) {
            let b = ExteriorBasis::new(n, p);
            prop_assert_eq!(b.len() as u64, binomial(n as i64, p as i64));
            for i in 0..b.len() {
                let s = b.subset(i);
                prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(b.rank(s), i);
            }
        }
    }
}
