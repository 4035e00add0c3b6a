//! Parameterized SDF families built from cyclotomy and difference sets.

use std::sync::Arc;

use crate::algebra::{is_prime, prime_power, AbelianGroup, Element, FiniteField};
use crate::differences::{
    delta_block, infer_type2_pattern, verify_sdf, Block, StrongDifferenceFamily, Type2Pattern, Type4Pattern,
};
use crate::error::{Error, Result};

fn odd_field(p: u32) -> Result<Arc<FiniteField>> {
    if p.is_multiple_of(2) {
        return Err(Error::Precondition(format!("{p} is even")));
    }
    Ok(Arc::new(FiniteField::of_order(p)?))
}

fn repeat(xs: &[Element], m: usize) -> Block {
    xs.iter().flat_map(|&x| std::iter::repeat_n(x, m)).collect()
}

fn checked(s: StrongDifferenceFamily) -> Result<StrongDifferenceFamily> {
    verify_sdf(&s).map_err(|v| Error::Invalid(format!("generated family fails verification: {v}")))?;
    Ok(s)
}

fn single_sigma1(n: usize) -> Type2Pattern {
    Type2Pattern { sigma1: (0..n).collect(), ..Default::default() }
}

/// `{0} ∪ 2C_0^{2,p}` over `F_p`. For `p ≡ 1 (mod 4)` the squares are
/// listed as `x, x, -x, -x` so that the block also has the type-4 shape.
pub fn paley_sdf_1(p: u32) -> Result<StrongDifferenceFamily> {
    let f = odd_field(p)?;
    let squares = f.cyclotomic_class(2, 0)?;
    let mut block = vec![0];
    if p % 4 == 1 {
        let mut used = vec![false; p as usize];
        for &x in &squares {
            if !used[x as usize] {
                let y = f.neg(x);
                used[x as usize] = true;
                used[y as usize] = true;
                block.extend([x, x, y, y]);
            }
        }
    } else {
        block.extend(repeat(&squares, 2));
    }
    let mut s = StrongDifferenceFamily::new(AbelianGroup::of_field(f), vec![block], p as usize, p - 1)
        .with_type2(single_sigma1(1));
    if p % 4 == 1 {
        s = s.with_type4(Type4Pattern { distinguished: 0, sigma2: vec![] });
    }
    checked(s)
}

/// `2({0} ∪ C_0^{2,p})` over `F_p`, `p ≡ 3 (mod 4)`.
pub fn paley_sdf_2(p: u32) -> Result<StrongDifferenceFamily> {
    if p % 4 != 3 {
        return Err(Error::Congruence(format!("{p} is not 3 mod 4")));
    }
    let f = odd_field(p)?;
    let mut base = vec![0];
    base.extend(f.cyclotomic_class(2, 0)?);
    let s = StrongDifferenceFamily::new(AbelianGroup::of_field(f), vec![repeat(&base, 2)], p as usize + 1, p + 1)
        .with_type2(single_sigma1(1));
    checked(s)
}

/// `[2({0} ∪ C_0^{2,p}), 2({0} ∪ C_1^{2,p})]` over `F_p`.
pub fn paley_sdf_3(p: u32) -> Result<StrongDifferenceFamily> {
    let f = odd_field(p)?;
    let blocks = (0..2)
        .map(|i| {
            let mut base = vec![0];
            base.extend(f.cyclotomic_class(2, i)?);
            Ok(repeat(&base, 2))
        })
        .collect::<Result<Vec<_>>>()?;
    let s = StrongDifferenceFamily::new(AbelianGroup::of_field(f), blocks, p as usize + 1, 2 * p + 2)
        .with_type2(single_sigma1(2));
    checked(s)
}

/// Checks that `set` is a `(v, |set|, λ)` difference set in `group`.
fn is_difference_set(group: &AbelianGroup, set: &[Element], lambda: u32) -> Result<bool> {
    let d = delta_block(group, set)?;
    Ok(group.elements().all(|x| d.count(x) == if x == 0 { 0 } else { lambda }))
}

fn complement(group: &AbelianGroup, set: &[Element]) -> Vec<Element> {
    let mut member = vec![false; group.order() as usize];
    for &x in set {
        member[x as usize] = true;
    }
    group.elements().filter(|&x| !member[x as usize]).collect()
}

/// `2D` for the complement `D` of the twin prime power difference set
/// `(C_0 × C_0) ∪ (C_1 × C_1) ∪ (F_p × {0})` in `F_p × F_{p+2}`.
///
/// `F_p` is carried additively as `Z_r^f` for `p = r^f`, which matches the
/// field encoding digit for digit.
pub fn twin_prime_sdf(p: u32) -> Result<StrongDifferenceFamily> {
    let (r, f) = prime_power(p as u64).ok_or(Error::NotPrimePower(p as u64))?;
    if p <= 2 || prime_power(p as u64 + 2).is_none() {
        return Err(Error::Precondition(format!("{p} and {} are not twin prime powers", p + 2)));
    }
    let fp = odd_field(p)?;
    let fq = Arc::new(FiniteField::of_order(p + 2)?);
    let group = AbelianGroup::product(&vec![r as u32; f as usize])?.with_field(fq.clone())?;
    // Field encodings of F_p coincide with the integer encoding of Z_r^f.
    let mut d0 = Vec::new();
    for i in 0..2 {
        for &a in &fp.cyclotomic_class(2, i)? {
            for &b in &fq.cyclotomic_class(2, i)? {
                d0.push(group.join(a, b));
            }
        }
    }
    d0.extend((0..p).map(|a| group.join(a, 0)));
    let n = p * (p + 2);
    if d0.len() as u32 != (n - 1) / 2 || !is_difference_set(&group, &d0, (n - 3) / 4)? {
        return Err(Error::Invalid("twin prime power set is not a difference set".into()));
    }
    let d = complement(&group, &d0);
    let s = StrongDifferenceFamily::new(group, vec![repeat(&d, 2)], n as usize + 1, n + 1).with_type2(single_sigma1(1));
    checked(s)
}

/// Trace of `x` from `GF(p^d)` down to `GF(p)`.
fn trace(f: &FiniteField, p: u32, d: u32, x: Element) -> Element {
    let mut acc = 0;
    let mut y = x;
    for _ in 0..d {
        acc = f.add(acc, y);
        y = f.pow(y, p as u64);
    }
    acc
}

/// `p·D` for the complement `D` of the Singer difference set
/// `{log x mod v : Tr(x) = 0}` in `Z_v`, `v = (p^d - 1)/(p - 1)`.
pub fn singer_sdf(p: u32, d: u32) -> Result<StrongDifferenceFamily> {
    if prime_power(p as u64).is_none() {
        return Err(Error::NotPrimePower(p as u64));
    }
    if d < 3 {
        return Err(Error::Precondition(format!("d = {d} < 3")));
    }
    let q = (p as u64)
        .checked_pow(d)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or(Error::FieldTooLarge { q: u64::MAX, limit: u32::MAX as u64 })?;
    let f = FiniteField::of_order(q as u32)?;
    let q = q as u32;
    let v = (q - 1) / (p - 1);
    let mut set: Vec<Element> = f
        .nonzero()
        .filter(|&x| trace(&f, p, d, x) == 0)
        .map(|x| f.discrete_log(x).map(|l| l % v))
        .collect::<Result<_>>()?;
    set.sort_unstable();
    set.dedup();
    let group = AbelianGroup::cyclic(v)?;
    let lambda = (q / p / p - 1) / (p - 1);
    if set.len() as u32 != (q / p - 1) / (p - 1) || !is_difference_set(&group, &set, lambda)? {
        return Err(Error::Invalid("trace-zero set is not a Singer difference set".into()));
    }
    let comp = complement(&group, &set);
    let mut s = StrongDifferenceFamily::new(group, vec![repeat(&comp, p as usize)], q as usize, q * (p - 1));
    s.type2 = infer_type2_pattern(&s);
    checked(s)
}

/// The `(Z_4, 4, 6p)`-SDF family for an odd prime `p > 3`.
pub fn z4_4_6p(p: u32) -> Result<StrongDifferenceFamily> {
    if p <= 3 || !is_prime(p as u64) {
        return Err(Error::Precondition(format!("{p} is not a prime greater than 3")));
    }
    let p = p as usize;
    let mut blocks: Vec<Block> = Vec::new();
    blocks.extend(std::iter::repeat_n(vec![0, 1, 2, 3], (3 * p - 9) / 2));
    blocks.extend(std::iter::repeat_n(vec![0, 0, 0, 0], (p - 5) / 2));
    blocks.extend(std::iter::repeat_n(vec![0, 1, 1, 1], 2));
    blocks.extend(std::iter::repeat_n(vec![0, 0, 1, 2], 3));
    blocks.push(vec![0, 0, 0, 1]);
    blocks.push(vec![0, 0, 0, 2]);
    checked(StrongDifferenceFamily::new(AbelianGroup::cyclic(4)?, blocks, 4, 6 * p as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differences::{delta_family, pattern_check_type2, pattern_check_type4};

    /// Independent count of ordered differences over `Z_n`.
    fn cyclic_counts(n: u32, blocks: &[Block]) -> Vec<u32> {
        let mut c = vec![0; n as usize];
        for b in blocks {
            for (i, &x) in b.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    if i != j {
                        c[((x + n - y) % n) as usize] += 1;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn paley_first_type() {
        let s = paley_sdf_1(5).unwrap();
        assert_eq!(s.blocks, vec![vec![0, 1, 1, 4, 4]]);
        assert_eq!(cyclic_counts(5, &s.blocks), vec![4; 5]);
        pattern_check_type2(&s).unwrap();
        pattern_check_type4(&s).unwrap();
        let s = paley_sdf_1(9).unwrap();
        assert_eq!((s.group.order(), s.k, s.mu), (9, 9, 8));
        let d = delta_family(&s.group, &s.blocks).unwrap();
        assert!(s.group.elements().all(|x| d.count(x) == 8));
        assert!(paley_sdf_1(7).unwrap().type4.is_none());
        assert!(paley_sdf_1(4).is_err());
        assert!(paley_sdf_1(15).is_err());
    }

    #[test]
    fn paley_second_and_third_type() {
        let s = paley_sdf_2(7).unwrap();
        assert_eq!(s.blocks, vec![vec![0, 0, 1, 1, 2, 2, 4, 4]]);
        assert_eq!(cyclic_counts(7, &s.blocks), vec![8; 7]);
        pattern_check_type2(&s).unwrap();
        assert!(matches!(paley_sdf_2(5), Err(Error::Congruence(_))));
        let s = paley_sdf_3(5).unwrap();
        assert_eq!(s.blocks.len(), 2);
        assert!(s.blocks.iter().all(|b| b.len() == 6));
        assert_eq!(cyclic_counts(5, &s.blocks), vec![12; 5]);
    }

    #[test]
    fn twin_primes() {
        let s = twin_prime_sdf(3).unwrap();
        assert_eq!((s.group.order(), s.k, s.mu), (15, 16, 16));
        // Z_3 × F_5 is cyclic of order 15 with x = 5a + b ↦ CRT.
        let to_cyclic = |x: u32| (10 * (x / 5) + 6 * (x % 5)) % 15;
        let blocks: Vec<Block> = s.blocks.iter().map(|b| b.iter().map(|&x| to_cyclic(x)).collect()).collect();
        assert_eq!(cyclic_counts(15, &blocks), vec![16; 15]);
        let s = twin_prime_sdf(5).unwrap();
        assert_eq!((s.group.order(), s.k, s.mu), (35, 36, 36));
        let s = twin_prime_sdf(7).unwrap();
        assert_eq!((s.group.order(), s.k, s.mu), (63, 64, 64));
        assert!(twin_prime_sdf(13).is_err());
        assert!(twin_prime_sdf(2).is_err());
    }

    #[test]
    fn singer() {
        let s = singer_sdf(2, 3).unwrap();
        assert_eq!((s.group.order(), s.k, s.mu), (7, 8, 8));
        assert_eq!(cyclic_counts(7, &s.blocks), vec![8; 7]);
        let mut distinct = s.blocks[0].clone();
        distinct.dedup();
        assert_eq!(distinct.len(), 4);
        let s = singer_sdf(3, 3).unwrap();
        assert_eq!((s.group.order(), s.k, s.mu), (13, 27, 54));
        assert_eq!(cyclic_counts(13, &s.blocks), vec![54; 13]);
        assert!(singer_sdf(2, 2).is_err());
        assert!(singer_sdf(6, 3).is_err());
        assert!(singer_sdf(4, 3).is_ok());
    }

    #[test]
    fn z4_family() {
        for p in [5, 7, 11, 13, 17] {
            let s = z4_4_6p(p).unwrap();
            assert_eq!(cyclic_counts(4, &s.blocks), vec![6 * p; 4]);
        }
        assert!(z4_4_6p(3).is_err());
        assert!(z4_4_6p(9).is_err());
    }
}
