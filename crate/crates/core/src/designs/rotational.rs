use std::collections::BTreeMap;

use super::{
    cycle_structure, develop, fill_groups, is_automorphism, is_r_rotational, verify_bibd, Design, Permutation, Point,
};
use crate::algebra::is_prime;
use crate::differences::{to_product, RelativeDifferenceFamily};
use crate::error::{Error, Result};

/// An r-rotational `(30q+1, 6, 1)`-BIBD on `Z_30 × Z_q ∪ {∞}`, point
/// `(x, i)` labelled `x·q + i` and `∞ = 30q`.
#[derive(Clone, Debug)]
pub struct RotationalBibd {
    pub design: Design,
    /// `(x, i) ↦ (x + r, i)`.
    pub alpha: Permutation,
    /// `(x, i) ↦ (x, i + 1)`.
    pub beta: Permutation,
    /// `α ∘ β`, the rotational automorphism.
    pub gamma: Permutation,
}

/// Relabels a design on `v = n·L + 1` points so that `rho`, with one fixed
/// point and `n` cycles of length `L`, becomes `x ↦ x + n` on `Z_{v-1}`
/// fixing `∞ = v - 1`. Returns the relabelled design.
pub fn relabel_rotational(d: &Design, rho: &Permutation, n: usize) -> Result<Design> {
    let v = d.points as usize;
    if n == 0 || v < 2 || !(v - 1).is_multiple_of(n) {
        return Err(Error::Precondition(format!("{n} does not divide {}", v.saturating_sub(1))));
    }
    if !is_r_rotational(d, rho, n)? {
        return Err(Error::Precondition(format!("{rho} is not an {n}-rotational automorphism")));
    }
    let mut label = vec![0 as Point; v];
    let mut j = 0;
    for c in rho.cycles() {
        if c.len() == 1 {
            label[c[0] as usize] = (v - 1) as Point;
            continue;
        }
        // ρ(c_t) = c_{t+1} goes to j + n·t ↦ j + n·(t+1).
        for (t, &x) in c.iter().enumerate() {
            label[x as usize] = (j + n * t) as Point;
        }
        j += 1;
    }
    let blocks = d.blocks.iter().map(|b| b.iter().map(|&x| label[x as usize]).collect()).collect();
    let groups = d.groups.iter().map(|g| g.iter().map(|&x| label[x as usize]).collect()).collect();
    Ok(Design::new(d.points, groups, blocks))
}

/// Develops a `(Z_30 × Z_q, Z_30 × {0}, 6, 1)`-DF, fills every group plus
/// ∞ with a copy `ℬ_i = ℬ_0 + (0, i)` of `bibd31` aligned so that `rho`
/// acts as `x ↦ x + r`, and returns the design with `γ = α ∘ β`.
pub fn rotational_bibd(
    q: u32,
    r: u32,
    df: &RelativeDifferenceFamily,
    bibd31: &Design,
    rho: &Permutation,
) -> Result<RotationalBibd> {
    if !is_prime(q as u64) || q % 6 != 1 {
        return Err(Error::Precondition(format!("q = {q} must be a prime congruent to 1 mod 6")));
    }
    if r != 6 && r != 10 {
        return Err(Error::Precondition(format!("r = {r} must be 6 or 10")));
    }
    let df = if df.group.is_cyclic() { to_product(df, 30)? } else { df.clone() };
    let shape_ok = match (df.group.cyclic_orders(), df.group.field()) {
        (&[30], Some(f)) => f.order() == q && f.e() == 1,
        (&[30, m], None) => m == q,
        _ => false,
    };
    if !shape_ok || df.k != 6 || df.lambda != 1 {
        return Err(Error::Precondition(format!("expected a (Z_30 x Z_{q}, Z_30 x {{0}}, 6, 1)-DF, got {}", df.group)));
    }
    let n_expected: Vec<u32> = (0..30).map(|g| g * q).collect();
    if df.forbidden != n_expected {
        return Err(Error::Precondition("forbidden subgroup must be Z_30 x {0}".into()));
    }
    if bibd31.points != 31 {
        return Err(Error::Precondition("bibd31 must have 31 points".into()));
    }
    if let Err(v) = verify_bibd(bibd31, 6) {
        return Err(Error::Precondition(format!("bibd31 is not a (31,6,1)-BIBD: {v}")));
    }
    if !is_automorphism(bibd31, rho)? {
        return Err(Error::Precondition(format!("{rho} is not an automorphism of bibd31")));
    }
    let b0 = relabel_rotational(bibd31, rho, r as usize)?;

    let gdd = develop(&df)?;
    // Canonical group i is Z_30 × {i} = {x·q + i}, listed in increasing x.
    let fillers: BTreeMap<usize, Design> = (0..q as usize).map(|i| (i, b0.clone())).collect();
    debug_assert!(gdd.groups.iter().enumerate().all(|(i, g)| g[0] as usize == i && g.len() == 30));
    let design = fill_groups(&gdd, &fillers, true)?;

    let v = 30 * q + 1;
    let inf = 30 * q;
    let map = |f: &dyn Fn(u32, u32) -> (u32, u32)| -> Result<Permutation> {
        let img = (0..v)
            .map(|p| {
                if p == inf {
                    inf
                } else {
                    let (x, i) = f(p / q, p % q);
                    x * q + i
                }
            })
            .collect();
        Permutation::from_images(img)
    };
    let alpha = map(&|x, i| ((x + r) % 30, i))?;
    let beta = map(&|x, i| (x, (i + 1) % q))?;
    let gamma = alpha.compose(&beta)?;
    if design.blocks.len() as u32 != v * (v - 1) / 30 {
        return Err(Error::Invalid(format!("{} blocks, expected {}", design.blocks.len(), v * (v - 1) / 30)));
    }
    for (name, p) in [("alpha", &alpha), ("beta", &beta)] {
        if !is_automorphism(&design, p)? {
            return Err(Error::Invalid(format!("{name} is not an automorphism")));
        }
    }
    if !is_r_rotational(&design, &gamma, r as usize)? {
        return Err(Error::Invalid(format!("gamma has cycle structure {:?}", cycle_structure(&gamma))));
    }
    Ok(RotationalBibd { design, alpha, beta, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AbelianGroup;

    fn bibd31() -> Design {
        let df = RelativeDifferenceFamily::new(
            AbelianGroup::cyclic(31).unwrap(),
            vec![0],
            vec![vec![0, 1, 3, 8, 12, 18]],
            6,
            1,
        );
        develop(&df).unwrap()
    }

    #[test]
    fn multiplier_relabels_to_a_shift() {
        // x ↦ 5x on Z_31 has order 3 and fixes 0 only.
        let d = bibd31();
        let rho = Permutation::from_images((0..31).map(|x| 5 * x % 31).collect()).unwrap();
        assert_eq!(cycle_structure(&rho), [vec![1], vec![3; 10]].concat());
        let rd = relabel_rotational(&d, &rho, 10).unwrap();
        assert_eq!(verify_bibd(&rd, 6), Ok(()));
        let shift =
            Permutation::from_images((0..31).map(|x| if x == 30 { 30 } else { (x + 10) % 30 }).collect()).unwrap();
        assert!(is_automorphism(&rd, &shift).unwrap());
        assert!(relabel_rotational(&d, &rho, 6).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        let d = bibd31();
        let rho = Permutation::identity(31);
        let g = AbelianGroup::cyclic(210).unwrap();
        let df = RelativeDifferenceFamily::new(g, (0..30).map(|x| 7 * x).collect(), vec![], 6, 1);
        assert!(rotational_bibd(5, 6, &df, &d, &rho).is_err());
        assert!(rotational_bibd(7, 5, &df, &d, &rho).is_err());
        assert!(rotational_bibd(7, 6, &df, &d, &rho).is_err());
    }
}
