//! Group divisible designs and BIBDs: development of difference families,
//! recursive constructions and automorphism checks.

mod construct;
mod perm;
mod rotational;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

pub use construct::{delete_points, develop, fill_groups, inflate_by_weight, td_from_mols};
pub use perm::{cycle_structure, is_automorphism, is_r_rotational, Permutation};
pub use rotational::{relabel_rotational, rotational_bibd, RotationalBibd};

/// Point label; a design on `v` points uses `0..v`.
pub type Point = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DesignKind {
    Gdd,
    Bibd,
}

/// Point set `0..points`, a partition into groups, and blocks, all stored
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub points: u32,
    pub groups: Vec<Vec<Point>>,
    pub blocks: Vec<Vec<Point>>,
    pub kind: DesignKind,
}

fn canonical(mut sets: Vec<Vec<Point>>) -> Vec<Vec<Point>> {
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    sets
}

impl Design {
    /// Canonicalizes; the kind is `Bibd` exactly when all groups are singletons.
    pub fn new(points: u32, groups: Vec<Vec<Point>>, blocks: Vec<Vec<Point>>) -> Self {
        let groups = canonical(groups);
        let kind = if groups.iter().all(|g| g.len() == 1) { DesignKind::Bibd } else { DesignKind::Gdd };
        Design { points, groups, blocks: canonical(blocks), kind }
    }

    /// All-singleton groups.
    pub fn bibd(points: u32, blocks: Vec<Vec<Point>>) -> Self {
        Self::new(points, (0..points).map(|x| vec![x]).collect(), blocks)
    }

    /// Block size → number of blocks.
    pub fn block_sizes(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.len()).or_insert(0) += 1;
        }
        m
    }

    /// Group size → number of groups.
    pub fn group_type(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for g in &self.groups {
            *m.entry(g.len()).or_insert(0) += 1;
        }
        m
    }

    /// Exponential notation, largest groups first: `"13^6 6^1"`.
    pub fn type_string(&self) -> String {
        self.group_type().iter().rev().map(|(g, u)| format!("{g}^{u}")).collect::<Vec<_>>().join(" ")
    }

    /// Distinct block sizes.
    pub fn k_set(&self) -> Vec<usize> {
        self.block_sizes().into_keys().collect()
    }
}

/// Why a design failed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignViolation {
    Pair { a: Point, b: Point, count: u32, expected: u32 },
    BlockSize { block: usize, size: usize },
    RepeatedPoint { block: usize, point: Point },
    PointOutOfRange { point: Point },
    Groups(String),
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignViolation::Pair { a, b, count, expected } => {
                write!(f, "pair ({a},{b}): count {count}, expected {expected}")
            }
            DesignViolation::BlockSize { block, size } => write!(f, "block {block} has size {size}"),
            DesignViolation::RepeatedPoint { block, point } => write!(f, "block {block} repeats point {point}"),
            DesignViolation::PointOutOfRange { point } => write!(f, "point {point} out of range"),
            DesignViolation::Groups(msg) => write!(f, "groups: {msg}"),
        }
    }
}

pub type DesignVerdict = std::result::Result<(), DesignViolation>;

/// Group index of every point, or why the groups fail to partition.
fn group_index(d: &Design) -> std::result::Result<Vec<usize>, DesignViolation> {
    let mut idx = vec![usize::MAX; d.points as usize];
    for (i, g) in d.groups.iter().enumerate() {
        if g.is_empty() {
            return Err(DesignViolation::Groups(format!("group {i} is empty")));
        }
        for &x in g {
            if x >= d.points {
                return Err(DesignViolation::PointOutOfRange { point: x });
            }
            if idx[x as usize] != usize::MAX {
                return Err(DesignViolation::Groups(format!("point {x} lies in two groups")));
            }
            idx[x as usize] = i;
        }
    }
    if let Some(x) = idx.iter().position(|&i| i == usize::MAX) {
        return Err(DesignViolation::Groups(format!("point {x} lies in no group")));
    }
    Ok(idx)
}

/// Pair coverage: every pair in distinct groups lies in exactly one block,
/// no pair inside a group lies in any block. Block sizes must lie in `sizes`
/// (unchecked when `sizes` is empty).
pub fn verify_gdd(d: &Design, sizes: &[usize]) -> DesignVerdict {
    let v = d.points as usize;
    let group_of = group_index(d)?;
    for (i, b) in d.blocks.iter().enumerate() {
        if b.len() < 2 || (!sizes.is_empty() && !sizes.contains(&b.len())) {
            return Err(DesignViolation::BlockSize { block: i, size: b.len() });
        }
        let mut s = b.clone();
        s.sort_unstable();
        if let Some(&x) = s.iter().find(|&&x| x >= d.points) {
            return Err(DesignViolation::PointOutOfRange { point: x });
        }
        if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignViolation::RepeatedPoint { block: i, point: w[0] });
        }
    }
    // Upper-triangular counts, saturating at 255.
    let counts = d
        .blocks
        .par_chunks(64)
        .fold(
            || vec![0u8; v * v],
            |mut acc, chunk| {
                for b in chunk {
                    for (i, &x) in b.iter().enumerate() {
                        for &y in &b[i + 1..] {
                            let (a, c) = if x < y { (x, y) } else { (y, x) };
                            let cell = &mut acc[a as usize * v + c as usize];
                            *cell = cell.saturating_add(1);
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u8; v * v],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = x.saturating_add(y);
                }
                a
            },
        );
    for a in 0..v {
        for b in a + 1..v {
            let expected = u32::from(group_of[a] != group_of[b]);
            let count = counts[a * v + b] as u32;
            if count != expected {
                return Err(DesignViolation::Pair { a: a as Point, b: b as Point, count, expected });
            }
        }
    }
    Ok(())
}

/// `(v, k, 1)`-BIBD check: singleton groups and [`verify_gdd`].
pub fn verify_bibd(d: &Design, k: usize) -> DesignVerdict {
    if d.groups.iter().any(|g| g.len() != 1) {
        return Err(DesignViolation::Groups("a BIBD has singleton groups".into()));
    }
    verify_gdd(d, &[k])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Design {
        let base = [0u32, 1, 3];
        Design::bibd(7, (0..7).map(|i| base.iter().map(|&x| (x + i) % 7).collect()).collect())
    }

    #[test]
    fn fano_plane_is_a_bibd() {
        let d = fano();
        assert_eq!(d.kind, DesignKind::Bibd);
        assert_eq!(verify_bibd(&d, 3), Ok(()));
        assert_eq!(d.type_string(), "1^7");
    }

    #[test]
    fn dropped_block_names_an_uncovered_pair() {
        let mut d = fano();
        d.blocks.remove(0);
        let err = verify_bibd(&d, 3).unwrap_err();
        assert_eq!(err.to_string(), "pair (0,1): count 0, expected 1");
    }

    #[test]
    fn duplicated_block_names_a_doubled_pair() {
        let mut d = fano();
        d.blocks.push(d.blocks[0].clone());
        match verify_bibd(&d, 3).unwrap_err() {
            DesignViolation::Pair { count: 2, expected: 1, .. } => {}
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn pair_inside_a_group_is_rejected() {
        let d = Design::new(
            4,
            vec![vec![0, 1], vec![2, 3]],
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![0, 1]],
        );
        assert_eq!(verify_gdd(&d, &[2]), Err(DesignViolation::Pair { a: 0, b: 1, count: 1, expected: 0 }));
    }

    #[test]
    fn malformed_groups_and_blocks() {
        let d = Design::new(3, vec![vec![0, 1]], vec![]);
        assert!(matches!(verify_gdd(&d, &[]), Err(DesignViolation::Groups(_))));
        let d = Design { points: 2, groups: vec![vec![0], vec![1]], blocks: vec![vec![1, 1]], kind: DesignKind::Bibd };
        assert!(matches!(verify_gdd(&d, &[]), Err(DesignViolation::RepeatedPoint { .. })));
        assert!(matches!(verify_bibd(&fano(), 4), Err(DesignViolation::BlockSize { .. })));
    }
}
