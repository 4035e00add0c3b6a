//! Ordered-difference multisets and the verifiers for strong and relative
//! difference families.

mod pattern;
mod relabel;

use std::fmt;

use crate::algebra::{AbelianGroup, Element};
use crate::error::{Error, Result};

pub use pattern::{
    infer_type2_pattern, infer_type4_pattern, pattern_check_type2, pattern_check_type4, Type2Pattern, Type4Pattern,
};
pub use relabel::{to_cyclic, to_product};

/// A base block: an ordered list of group elements, repetition allowed.
pub type Block = Vec<Element>;

/// Multiplicities of group elements, indexed by element.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferenceList {
    counts: Vec<u32>,
    total: u64,
}

impl fmt::Debug for DifferenceList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter().filter(|&(_, c)| c > 0)).finish()
    }
}

impl DifferenceList {
    pub fn zeros(order: u32) -> Self {
        DifferenceList { counts: vec![0; order as usize], total: 0 }
    }

    pub fn count(&self, x: Element) -> u32 {
        self.counts.get(x as usize).copied().unwrap_or(0)
    }

    /// Total number of differences, with multiplicity.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, u32)> + '_ {
        self.counts.iter().enumerate().map(|(x, &c)| (x as Element, c))
    }

    /// Elements with positive multiplicity.
    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.iter().filter(|&(_, c)| c > 0).map(|(x, _)| x)
    }

    pub fn insert(&mut self, x: Element) {
        self.counts[x as usize] += 1;
        self.total += 1;
    }

    pub fn merge(&mut self, other: &DifferenceList) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
    }

    /// True when every element has the same multiplicity `mu`.
    pub fn is_uniform(&self, mu: u32) -> bool {
        self.counts.iter().all(|&c| c == mu)
    }
}

fn check_elements(group: &AbelianGroup, block: &[Element]) -> Result<()> {
    if let Some(&x) = block.iter().find(|&&x| !group.contains(x)) {
        return Err(Error::ElementOutOfRange(vec![x as i64]));
    }
    Ok(())
}

/// All `k(k-1)` ordered differences `b_i - b_j`, `i ≠ j` by position.
pub fn delta_block(group: &AbelianGroup, block: &[Element]) -> Result<DifferenceList> {
    if block.len() < 2 {
        return Err(Error::BlockTooSmall(block.len()));
    }
    check_elements(group, block)?;
    let mut out = DifferenceList::zeros(group.order());
    accumulate(group, block, &mut out);
    Ok(out)
}

fn accumulate(group: &AbelianGroup, block: &[Element], out: &mut DifferenceList) {
    for (i, &a) in block.iter().enumerate() {
        for (j, &b) in block.iter().enumerate() {
            if i != j {
                out.insert(group.sub(a, b));
            }
        }
    }
}

/// Multiset union of the block difference lists.
pub fn delta_family(group: &AbelianGroup, blocks: &[Block]) -> Result<DifferenceList> {
    let mut out = DifferenceList::zeros(group.order());
    for b in blocks {
        if b.len() < 2 {
            return Err(Error::BlockTooSmall(b.len()));
        }
        check_elements(group, b)?;
        accumulate(group, b, &mut out);
    }
    Ok(out)
}

/// Why a family failed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `element` occurs `observed` times instead of `expected`.
    Multiplicity {
        element: Vec<i64>,
        observed: u64,
        expected: u64,
    },
    BlockSize {
        block: usize,
        size: usize,
        expected: usize,
    },
    RepeatedElement {
        block: usize,
        element: Vec<i64>,
    },
    OutOfRange {
        block: usize,
    },
    /// The counting identity between parameters and block count fails.
    Parameters {
        lhs: u64,
        rhs: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Multiplicity { element, observed, expected } => {
                write!(f, "element {element:?}: count {observed}, expected {expected}")
            }
            Violation::BlockSize { block, size, expected } => {
                write!(f, "block {block} has size {size}, expected {expected}")
            }
            Violation::RepeatedElement { block, element } => {
                write!(f, "block {block} repeats element {element:?}")
            }
            Violation::OutOfRange { block } => write!(f, "block {block} leaves the group"),
            Violation::Parameters { lhs, rhs } => {
                write!(f, "parameter identity fails: {lhs} != {rhs}")
            }
        }
    }
}

/// Outcome of a verifier: `Ok(())` or the first violation found.
pub type Verdict = std::result::Result<(), Violation>;

/// `(G, k, μ)` strong difference family with optional pattern partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDifferenceFamily {
    pub group: AbelianGroup,
    pub blocks: Vec<Block>,
    pub k: usize,
    pub mu: u32,
    pub type2: Option<Type2Pattern>,
    pub type4: Option<Type4Pattern>,
}

impl StrongDifferenceFamily {
    pub fn new(group: AbelianGroup, blocks: Vec<Block>, k: usize, mu: u32) -> Self {
        StrongDifferenceFamily { group, blocks, k, mu, type2: None, type4: None }
    }

    pub fn with_type2(mut self, pattern: Type2Pattern) -> Self {
        self.type2 = Some(pattern);
        self
    }

    pub fn with_type4(mut self, pattern: Type4Pattern) -> Self {
        self.type4 = Some(pattern);
        self
    }

    /// Number of base blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Checks `ΔΣ = μG`.
pub fn verify_sdf(s: &StrongDifferenceFamily) -> Verdict {
    for (i, b) in s.blocks.iter().enumerate() {
        if b.len() != s.k || b.len() < 2 {
            return Err(Violation::BlockSize { block: i, size: b.len(), expected: s.k });
        }
        if b.iter().any(|&x| !s.group.contains(x)) {
            return Err(Violation::OutOfRange { block: i });
        }
    }
    let lhs = s.mu as u64 * s.group.order() as u64;
    let rhs = (s.k * (s.k - 1) * s.blocks.len()) as u64;
    let delta = delta_family(&s.group, &s.blocks).expect("blocks checked above");
    for (x, c) in delta.iter() {
        if c != s.mu {
            return Err(Violation::Multiplicity {
                element: s.group.to_tuple(x),
                observed: c as u64,
                expected: s.mu as u64,
            });
        }
    }
    debug_assert_eq!(lhs, rhs);
    Ok(())
}

/// `(G, N, k, λ)` relative difference family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeDifferenceFamily {
    pub group: AbelianGroup,
    pub forbidden: Vec<Element>,
    pub blocks: Vec<Block>,
    pub k: usize,
    pub lambda: u32,
}

impl RelativeDifferenceFamily {
    pub fn new(group: AbelianGroup, forbidden: Vec<Element>, blocks: Vec<Block>, k: usize, lambda: u32) -> Self {
        let mut forbidden = forbidden;
        forbidden.sort_unstable();
        forbidden.dedup();
        RelativeDifferenceFamily { group, forbidden, blocks, k, lambda }
    }

    /// DF over `G × F_q` relative to `G × {0}`.
    pub fn over_field_extension(group: AbelianGroup, blocks: Vec<Block>, k: usize) -> Self {
        let forbidden = field_fiber_subgroup(&group);
        Self::new(group, forbidden, blocks, k, 1)
    }
}

/// `G × {0}` inside `G × F_q`, or `{0}` when there is no field factor.
pub fn field_fiber_subgroup(group: &AbelianGroup) -> Vec<Element> {
    group.base().elements().map(|g| group.join(g, 0)).collect()
}

/// Checks that `n` is a subgroup of `group`.
pub fn is_subgroup(group: &AbelianGroup, n: &[Element]) -> bool {
    if n.is_empty() || n.iter().any(|&x| !group.contains(x)) {
        return false;
    }
    let mut member = vec![false; group.order() as usize];
    for &x in n {
        member[x as usize] = true;
    }
    member[0] && n.iter().all(|&a| n.iter().all(|&b| member[group.sub(a, b) as usize]))
}

/// Checks `Δ𝔅 = λ(G ∖ N)`; errors when `N` is not a subgroup.
pub fn verify_relative_df(d: &RelativeDifferenceFamily) -> Result<Verdict> {
    if !is_subgroup(&d.group, &d.forbidden) {
        return Err(Error::Precondition("forbidden set is not a subgroup".into()));
    }
    let mut delta = DifferenceList::zeros(d.group.order());
    for (i, b) in d.blocks.iter().enumerate() {
        if b.len() != d.k || b.len() < 2 {
            return Ok(Err(Violation::BlockSize { block: i, size: b.len(), expected: d.k }));
        }
        if b.iter().any(|&x| !d.group.contains(x)) {
            return Ok(Err(Violation::OutOfRange { block: i }));
        }
        let mut sorted = b.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Ok(Err(Violation::RepeatedElement { block: i, element: d.group.to_tuple(w[0]) }));
        }
        accumulate(&d.group, b, &mut delta);
    }
    let mut in_n = vec![false; d.group.order() as usize];
    for &x in &d.forbidden {
        in_n[x as usize] = true;
    }
    for (x, c) in delta.iter() {
        let expected = if in_n[x as usize] { 0 } else { d.lambda };
        if c != expected {
            return Ok(Err(Violation::Multiplicity {
                element: d.group.to_tuple(x),
                observed: c as u64,
                expected: expected as u64,
            }));
        }
    }
    Ok(Ok(()))
}

/// Sorted copy of a set-valued block.
pub fn canonical_block(block: &[Element]) -> Block {
    let mut b = block.to_vec();
    b.sort_unstable();
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn z(n: u32) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn brute(n: u32, block: &[u32]) -> HashMap<u32, u32> {
        let mut m = HashMap::new();
        for i in 0..block.len() {
            for j in 0..block.len() {
                if i != j {
                    *m.entry((block[i] + n - block[j]) % n).or_default() += 1;
                }
            }
        }
        m
    }

    #[test]
    fn delta_block_examples() {
        let d = delta_block(&z(2), &[0, 0, 1, 1, 1]).unwrap();
        assert_eq!((d.count(0), d.count(1)), (8, 12));
        let d = delta_block(&z(7), &[0, 1, 3]).unwrap();
        assert!((1..7).all(|x| d.count(x) == 1));
        assert_eq!(d.count(0), 0);
        let d = delta_block(&z(9), &[4, 4]).unwrap();
        assert_eq!(d.count(0), 2);
        assert_eq!(d.total(), 2);
        assert!(matches!(delta_block(&z(5), &[1]), Err(Error::BlockTooSmall(1))));
    }

    #[test]
    fn delta_family_examples() {
        let g = z(2);
        let d = delta_family(&g, &[vec![0, 0, 1, 1, 1], vec![0, 1, 1, 1, 1]]).unwrap();
        assert_eq!((d.count(0), d.count(1)), (20, 20));
        let d = delta_family(&z(5), &[vec![0, 1, 1, 4, 4]]).unwrap();
        assert!(d.is_uniform(4));
        let single = delta_family(&z(11), &[vec![0, 3, 4, 9]]).unwrap();
        assert_eq!(single, delta_block(&z(11), &[0, 3, 4, 9]).unwrap());
        let b = [0, 2, 2, 9, 12];
        let d = delta_block(&z(13), &b).unwrap();
        for (x, c) in brute(13, &b) {
            assert_eq!(d.count(x), c);
        }
    }

    #[test]
    fn sdf_verdicts() {
        let s = StrongDifferenceFamily::new(z(2), vec![vec![0, 0, 1, 1, 1], vec![0, 1, 1, 1, 1]], 5, 20);
        assert_eq!(verify_sdf(&s), Ok(()));
        let bad = StrongDifferenceFamily::new(z(3), vec![vec![0, 1]], 2, 1);
        assert_eq!(verify_sdf(&bad), Err(Violation::Multiplicity { element: vec![0], observed: 0, expected: 1 }));
    }

    #[test]
    fn relative_df_verdicts() {
        let df = RelativeDifferenceFamily::new(z(4), vec![0, 2], vec![vec![0, 1]], 2, 1);
        assert_eq!(verify_relative_df(&df).unwrap(), Ok(()));
        let not_sub = RelativeDifferenceFamily::new(z(4), vec![0, 1], vec![vec![0, 1]], 2, 1);
        assert!(verify_relative_df(&not_sub).is_err());
        let rep = RelativeDifferenceFamily::new(z(7), vec![0], vec![vec![0, 1, 1]], 3, 1);
        assert!(matches!(verify_relative_df(&rep).unwrap(), Err(Violation::RepeatedElement { .. })));
        let fano = RelativeDifferenceFamily::new(z(7), vec![0], vec![vec![0, 1, 3]], 3, 1);
        assert_eq!(verify_relative_df(&fano).unwrap(), Ok(()));
    }

    #[test]
    fn subgroups() {
        let g = z(12);
        assert!(is_subgroup(&g, &[0, 4, 8]));
        assert!(!is_subgroup(&g, &[0, 4]));
        assert!(!is_subgroup(&g, &[4, 8]));
    }
}
