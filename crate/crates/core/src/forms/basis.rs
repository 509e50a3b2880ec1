//! Combinatorial index tables for the standard basis e^I of Λ^p(R^n).
//!
//! A multi-index I = (i₁ < … < iₚ) is stored as a bitmask; within each
//! degree the masks are ranked in lexicographic order of their index tuples.

use std::sync::OnceLock;

pub const MAX_DIM: usize = 16;

#[derive(Debug)]
pub struct Table {
    pub n: usize,
    /// `masks[p][r]` is the mask with rank `r` in degree `p`.
    pub masks: Vec<Vec<u32>>,
    /// Rank of a mask inside its own degree.
    pub rank: Vec<u32>,
}

impl Table {
    fn build(n: usize) -> Self {
        let mut masks = vec![Vec::new(); n + 1];
        for p in 0..=n {
            let mut idx: Vec<usize> = (0..p).collect();
            loop {
                masks[p].push(idx.iter().fold(0u32, |m, &i| m | (1 << i)));
                // next combination in lexicographic order
                let mut k = p;
                while k > 0 && idx[k - 1] == n - p + k - 1 {
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
                idx[k - 1] += 1;
                for l in k..p {
                    idx[l] = idx[l - 1] + 1;
                }
            }
        }
        let mut rank = vec![0u32; 1 << n];
        for deg in &masks {
            for (r, &m) in deg.iter().enumerate() {
                rank[m as usize] = r as u32;
            }
        }
        Table { n, masks, rank }
    }

    #[inline]
    pub fn len(&self, p: usize) -> usize {
        if p > self.n {
            0
        } else {
            self.masks[p].len()
        }
    }

    #[inline]
    pub fn rank_of(&self, mask: u32) -> usize {
        self.rank[mask as usize] as usize
    }
}

static TABLES: [OnceLock<Table>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];

pub fn table(n: usize) -> &'static Table {
    assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
    TABLES[n].get_or_init(|| Table::build(n))
}

pub fn binomial(n: usize, p: usize) -> usize {
    if p > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..p {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Sign of e^k ∧ e^I relative to e^{I∪k}: (−1)^{#{i∈I : i<k}}.
#[inline]
pub fn insert_sign(mask: u32, k: usize) -> f64 {
    if (mask & ((1u32 << k) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of e^I ∧ e^J relative to e^{I∪J}, for disjoint I, J.
#[inline]
pub fn wedge_sign(a: u32, b: u32) -> f64 {
    let mut inv = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn indices(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

pub fn mask_of(idx: &[usize]) -> u32 {
    idx.iter().fold(0u32, |m, &i| m | (1 << i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_binomial() {
        let t = table(8);
        for p in 0..=8 {
            assert_eq!(t.len(p), binomial(8, p));
        }
    }

    #[test]
    fn lexicographic_order() {
        let t = table(4);
        let got: Vec<Vec<usize>> = t.masks[2].iter().map(|&m| indices(m)).collect();
        assert_eq!(
            got,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        for (r, &m) in t.masks[2].iter().enumerate() {
            assert_eq!(t.rank_of(m), r);
        }
    }

    #[test]
    fn wedge_sign_counts_inversions() {
        // e^2 ∧ e^1 = −e^{12}
        assert_eq!(wedge_sign(0b10, 0b01), -1.0);
        assert_eq!(wedge_sign(0b01, 0b10), 1.0);
        // e^{13} ∧ e^2 = −e^{123}
        assert_eq!(wedge_sign(0b101, 0b010), -1.0);
        assert_eq!(insert_sign(0b101, 1), -1.0);
    }
}
