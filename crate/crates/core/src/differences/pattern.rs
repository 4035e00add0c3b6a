//! The block partitions under which an SDF is of type 2 or of type 4.

use std::collections::BTreeMap;

use super::{Block, StrongDifferenceFamily};
use crate::algebra::{AbelianGroup, Element};
use crate::error::{Error, Result};

/// Partition `Σ = Σ1 ∪ Σ2 ∪ Σ3` into block indices.
///
/// `sigma3` lists indices in consecutive pairs of equal blocks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Type2Pattern {
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub sigma3: Vec<usize>,
}

/// The distinguished block and `Σ2` in consecutive quadruples of equal
/// blocks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Type4Pattern {
    pub distinguished: usize,
    pub sigma2: Vec<usize>,
}

/// Shape `[x1, δ+x1, x2, δ+x2, …]`, with a leading `0` for odd length.
/// Returns `(δ, [x1, x2, …])`.
pub(crate) fn type2_shape(group: &AbelianGroup, block: &[Element]) -> Option<(Element, Vec<Element>)> {
    let body = if block.len() % 2 == 1 {
        if block[0] != 0 {
            return None;
        }
        &block[1..]
    } else {
        block
    };
    if body.is_empty() {
        return None;
    }
    let delta = group.sub(body[1], body[0]);
    let mut xs = Vec::with_capacity(body.len() / 2);
    for pair in body.chunks(2) {
        if group.sub(pair[1], pair[0]) != delta {
            return None;
        }
        xs.push(pair[0]);
    }
    Some((delta, xs))
}

/// Shape `[x1, x1, -x1, -x1, …]`, with a leading `0` when `k ≡ 1 (mod 4)`.
/// Returns `[x1, x2, …]`.
pub(crate) fn type4_shape(group: &AbelianGroup, block: &[Element]) -> Option<Vec<Element>> {
    let body = match block.len() % 4 {
        0 => block,
        1 if block[0] == 0 => &block[1..],
        _ => return None,
    };
    if body.is_empty() {
        return None;
    }
    let mut xs = Vec::with_capacity(body.len() / 4);
    for quad in body.chunks(4) {
        let x = quad[0];
        let nx = group.neg(x);
        if quad[1] != x || quad[2] != nx || quad[3] != nx {
            return None;
        }
        xs.push(x);
    }
    Some(xs)
}

fn differences<'a>(group: &'a AbelianGroup, xs: &'a [Element]) -> impl Iterator<Item = Element> + 'a {
    xs.iter().enumerate().flat_map(move |(i, &a)| {
        xs.iter().enumerate().filter(move |&(j, _)| j != i).map(move |(_, &b)| group.sub(a, b))
    })
}

fn sorted(block: &[Element]) -> Block {
    let mut b = block.to_vec();
    b.sort_unstable();
    b
}

fn check_partition(n: usize, parts: &[&[usize]]) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in parts.iter().flat_map(|p| p.iter()) {
        if i >= n {
            return Err(Error::Pattern(format!("block index {i} out of range")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Pattern(format!("block {i} assigned twice")));
        }
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(Error::Pattern(format!("block {i} is not assigned")));
    }
    Ok(())
}

fn check_equal_runs(s: &StrongDifferenceFamily, idx: &[usize], run: usize, what: &str) -> Result<()> {
    if !idx.len().is_multiple_of(run) {
        return Err(Error::Pattern(format!("{what} size {} is not a multiple of {run}", idx.len())));
    }
    for chunk in idx.chunks(run) {
        let first = sorted(&s.blocks[chunk[0]]);
        if chunk[1..].iter().any(|&j| sorted(&s.blocks[j]) != first) {
            return Err(Error::Pattern(format!("{what} blocks {chunk:?} are not equal")));
        }
    }
    Ok(())
}

/// Checks the type-2 partition attached to `s`.
pub fn pattern_check_type2(s: &StrongDifferenceFamily) -> Result<()> {
    let p = s.type2.as_ref().ok_or(Error::MissingPattern)?;
    let g = &s.group;
    if s.blocks.iter().any(|b| b.len() != s.k) {
        return Err(Error::Pattern("blocks of unequal size".into()));
    }
    check_partition(s.blocks.len(), &[&p.sigma1, &p.sigma2, &p.sigma3])?;
    for &i in &p.sigma1 {
        let (delta, xs) = type2_shape(g, &s.blocks[i])
            .ok_or_else(|| Error::Pattern(format!("block {i} does not have the paired shape")))?;
        if !g.is_involution_or_zero(delta) {
            return Err(Error::Pattern(format!("block {i}: shift is not an involution or zero")));
        }
        if differences(g, &xs).any(|d| g.is_involution_or_zero(d)) {
            return Err(Error::Pattern(format!("block {i}: base points differ by an involution or zero")));
        }
    }
    for &i in &p.sigma2 {
        if differences(g, &s.blocks[i]).any(|d| !g.is_involution_or_zero(d)) {
            return Err(Error::Pattern(format!("block {i}: difference outside involutions and zero")));
        }
    }
    check_equal_runs(s, &p.sigma3, 2, "sigma3")?;
    for &i in &p.sigma3 {
        if differences(g, &s.blocks[i]).any(|d| g.is_involution_or_zero(d)) {
            return Err(Error::Pattern(format!("block {i}: repeated block has an involution or zero difference")));
        }
    }
    Ok(())
}

/// Checks the type-4 partition attached to `s`.
pub fn pattern_check_type4(s: &StrongDifferenceFamily) -> Result<()> {
    let p = s.type4.as_ref().ok_or(Error::MissingPattern)?;
    let g = &s.group;
    if g.order().is_multiple_of(2) {
        return Err(Error::Pattern("group order is even".into()));
    }
    if s.k % 4 > 1 {
        return Err(Error::Pattern(format!("k = {} is not 0 or 1 mod 4", s.k)));
    }
    if s.blocks.iter().any(|b| b.len() != s.k) {
        return Err(Error::Pattern("blocks of unequal size".into()));
    }
    check_partition(s.blocks.len(), &[&[p.distinguished], &p.sigma2])?;
    let xs = type4_shape(g, &s.blocks[p.distinguished])
        .ok_or_else(|| Error::Pattern("distinguished block does not have the ±x shape".into()))?;
    let signed: Vec<Element> = xs.iter().flat_map(|&x| [x, g.neg(x)]).collect();
    if signed.contains(&0) || differences(g, &signed).any(|d| d == 0) {
        return Err(Error::Pattern("distinguished block: ±x list has a zero difference".into()));
    }
    check_equal_runs(s, &p.sigma2, 4, "sigma2")?;
    for &i in &p.sigma2 {
        if differences(g, &s.blocks[i]).any(|d| d == 0) {
            return Err(Error::Pattern(format!("block {i} has a zero difference")));
        }
    }
    Ok(())
}

/// Pairs indices of equal blocks into runs of `run`, in first-seen order.
fn group_runs(s: &StrongDifferenceFamily, idx: &[usize], run: usize) -> Option<Vec<usize>> {
    let mut classes: BTreeMap<Block, Vec<usize>> = BTreeMap::new();
    let mut order = Vec::new();
    for &i in idx {
        let key = sorted(&s.blocks[i]);
        let e = classes.entry(key.clone()).or_default();
        if e.is_empty() {
            order.push(key);
        }
        e.push(i);
    }
    let mut out = Vec::with_capacity(idx.len());
    for key in order {
        let members = &classes[&key];
        if !members.len().is_multiple_of(run) {
            return None;
        }
        out.extend(members);
    }
    Some(out)
}

/// Finds a type-2 partition that keeps the stored element order.
pub fn infer_type2_pattern(s: &StrongDifferenceFamily) -> Option<Type2Pattern> {
    let g = &s.group;
    let mut p = Type2Pattern::default();
    let mut rest = Vec::new();
    for (i, b) in s.blocks.iter().enumerate() {
        if b.len() < 2 {
            return None;
        }
        if differences(g, b).all(|d| g.is_involution_or_zero(d)) {
            p.sigma2.push(i);
        } else if type2_shape(g, b).is_some_and(|(delta, xs)| {
            g.is_involution_or_zero(delta) && differences(g, &xs).all(|d| !g.is_involution_or_zero(d))
        }) {
            p.sigma1.push(i);
        } else {
            rest.push(i);
        }
    }
    p.sigma3 = group_runs(s, &rest, 2)?;
    let mut probe = s.clone();
    probe.type2 = Some(p);
    pattern_check_type2(&probe).ok()?;
    probe.type2
}

/// Finds a type-4 partition that keeps the stored element order.
pub fn infer_type4_pattern(s: &StrongDifferenceFamily) -> Option<Type4Pattern> {
    let g = &s.group;
    for (i, b) in s.blocks.iter().enumerate() {
        if type4_shape(g, b).is_none() {
            continue;
        }
        let rest: Vec<usize> = (0..s.blocks.len()).filter(|&j| j != i).collect();
        let Some(sigma2) = group_runs(s, &rest, 4) else {
            continue;
        };
        let mut probe = s.clone();
        probe.type4 = Some(Type4Pattern { distinguished: i, sigma2 });
        if pattern_check_type4(&probe).is_ok() {
            return probe.type4;
        }
    }
    None
}

impl Type2Pattern {
    /// `(δ, x-list)` of each `Σ1` block, in `sigma1` order.
    pub fn sigma1_shapes(&self, s: &StrongDifferenceFamily) -> Result<Vec<(Element, Vec<Element>)>> {
        self.sigma1
            .iter()
            .map(|&i| {
                type2_shape(&s.group, &s.blocks[i])
                    .ok_or_else(|| Error::Pattern(format!("block {i} does not have the paired shape")))
            })
            .collect()
    }
}

impl Type4Pattern {
    /// The `x` values of the distinguished block.
    pub fn base_points(&self, s: &StrongDifferenceFamily) -> Result<Vec<Element>> {
        type4_shape(&s.group, &s.blocks[self.distinguished])
            .ok_or_else(|| Error::Pattern("distinguished block does not have the ±x shape".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z10_5_12() -> StrongDifferenceFamily {
        let g = AbelianGroup::cyclic(10).unwrap();
        let blocks = vec![
            vec![0, 3, 3, 7, 7],
            vec![0, 0, 0, 5, 5],
            vec![0, 9, 6, 7, 8],
            vec![0, 9, 6, 7, 8],
            vec![0, 8, 4, 6, 7],
            vec![0, 8, 4, 6, 7],
        ];
        StrongDifferenceFamily::new(g, blocks, 5, 12)
    }

    fn z45_5_4() -> StrongDifferenceFamily {
        let g = AbelianGroup::cyclic(45).unwrap();
        let mut blocks = vec![vec![0, 1, 1, 44, 44]];
        blocks.extend(std::iter::repeat_n(vec![0, 3, 7, 13, 30], 4));
        blocks.extend(std::iter::repeat_n(vec![0, 5, 14, 26, 34], 4));
        StrongDifferenceFamily::new(g, blocks, 5, 4)
    }

    #[test]
    fn type2_table_partition() {
        let s = z10_5_12().with_type2(Type2Pattern { sigma1: vec![0], sigma2: vec![1], sigma3: vec![2, 3, 4, 5] });
        pattern_check_type2(&s).unwrap();
        assert_eq!(infer_type2_pattern(&s), s.type2);
        let shapes = s.type2.as_ref().unwrap().sigma1_shapes(&s).unwrap();
        assert_eq!(shapes, vec![(0, vec![3, 7])]);
    }

    #[test]
    fn type2_rejections() {
        let base = z10_5_12();
        assert!(matches!(pattern_check_type2(&base), Err(Error::MissingPattern)));
        let swapped =
            base.clone().with_type2(Type2Pattern { sigma1: vec![1], sigma2: vec![0], sigma3: vec![2, 3, 4, 5] });
        assert!(pattern_check_type2(&swapped).is_err());
        let unpaired = base.with_type2(Type2Pattern { sigma1: vec![0], sigma2: vec![1], sigma3: vec![2, 4, 3, 5] });
        assert!(pattern_check_type2(&unpaired).is_err());
    }

    #[test]
    fn type4_example() {
        let s = z45_5_4().with_type4(Type4Pattern { distinguished: 0, sigma2: (1..9).collect() });
        pattern_check_type4(&s).unwrap();
        assert_eq!(infer_type4_pattern(&s), s.type4);
        assert_eq!(s.type4.as_ref().unwrap().base_points(&s).unwrap(), vec![1]);
    }

    #[test]
    fn type4_multiplicity_three_fails() {
        let mut s = z45_5_4();
        s.blocks[4] = vec![0, 5, 14, 26, 34];
        let s = s.with_type4(Type4Pattern { distinguished: 0, sigma2: (1..9).collect() });
        assert!(pattern_check_type4(&s).is_err());
        assert_eq!(infer_type4_pattern(&s), None);
    }

    #[test]
    fn type4_needs_odd_order() {
        let g = AbelianGroup::cyclic(10).unwrap();
        let s = StrongDifferenceFamily::new(g, vec![vec![1, 1, 9, 9]], 4, 4)
            .with_type4(Type4Pattern { distinguished: 0, sigma2: vec![] });
        assert!(pattern_check_type4(&s).is_err());
    }
}
