//! Independent difference counting over mixed-radix encodings.
#![allow(dead_code)]

use std::collections::HashSet;

use difforge::algebra::{AbelianGroup, Element};
use difforge::differences::{RelativeDifferenceFamily, StrongDifferenceFamily};

/// Mixed-radix digits, most significant first: cyclic factors, then the
/// additive coordinates of the field.
pub fn radices(g: &AbelianGroup) -> Vec<u32> {
    let mut r = g.cyclic_orders().to_vec();
    if let Some(f) = g.field() {
        r.extend(std::iter::repeat_n(f.p(), f.e() as usize));
    }
    r
}

pub fn oracle_sub(r: &[u32], a: u32, b: u32) -> u32 {
    let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
    for &m in r.iter().rev() {
        out += ((a % m + m - b % m) % m) * scale;
        scale *= m;
        a /= m;
        b /= m;
    }
    out
}

/// Multiplicity of every group element in the multiset of differences.
pub fn oracle_counts(g: &AbelianGroup, blocks: &[Vec<Element>]) -> Vec<u32> {
    let r = radices(g);
    let order = r.iter().product::<u32>() as usize;
    let mut count = vec![0u32; order];
    for b in blocks {
        for (i, &x) in b.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if i != j {
                    count[oracle_sub(&r, x, y) as usize] += 1;
                }
            }
        }
    }
    count
}

pub fn oracle_sdf(s: &StrongDifferenceFamily) -> bool {
    s.blocks.iter().all(|b| b.len() == s.k) && oracle_counts(&s.group, &s.blocks).iter().all(|&c| c == s.mu)
}

pub fn oracle_df(df: &RelativeDifferenceFamily) -> bool {
    let count = oracle_counts(&df.group, &df.blocks);
    let forbidden: HashSet<_> = df.forbidden.iter().copied().collect();
    df.blocks.iter().all(|b| b.len() == df.k)
        && count.iter().enumerate().all(|(x, &c)| c == if forbidden.contains(&(x as u32)) { 0 } else { df.lambda })
}
