use std::collections::BTreeMap;

use super::{verify_gdd, Design, DesignKind, Point};
use crate::algebra::is_prime;
use crate::differences::{verify_relative_df, RelativeDifferenceFamily};
use crate::error::{Error, Result};

/// `Dev(𝔅)`: points are the elements of `G`, groups the cosets of `N`, and
/// blocks all translates of the base blocks.
pub fn develop(df: &RelativeDifferenceFamily) -> Result<Design> {
    if let Err(v) = verify_relative_df(df)? {
        return Err(Error::Invalid(format!("cannot develop an unverified family: {v}")));
    }
    let g = &df.group;
    let mut coset_of = vec![u32::MAX; g.order() as usize];
    let mut groups = Vec::new();
    for x in g.elements() {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let coset: Vec<Point> = df.forbidden.iter().map(|&n| g.add(x, n)).collect();
        for &y in &coset {
            coset_of[y as usize] = groups.len() as u32;
        }
        groups.push(coset);
    }
    let mut blocks = Vec::with_capacity(df.blocks.len() * g.order() as usize);
    for b in &df.blocks {
        for t in g.elements() {
            blocks.push(b.iter().map(|&x| g.add(x, t)).collect());
        }
    }
    Ok(Design::new(g.order(), groups, blocks))
}

/// `TD(k, n)` from the Latin squares `L_m(i, j) = m·i + j` over `Z_n`:
/// point `(i, x)` is `i·n + x`, group `i` is `{i} × Z_n`.
pub fn td_from_mols(k: u32, n: u32) -> Result<Design> {
    if !is_prime(n as u64) {
        return Err(Error::NotPrime(n as u64));
    }
    if k < 2 || k > n + 1 {
        return Err(Error::Precondition(format!("need 2 <= k <= n + 1, got k = {k}, n = {n}")));
    }
    let groups = (0..k).map(|i| (0..n).map(|x| i * n + x).collect()).collect();
    let mut blocks = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            let mut block: Vec<Point> = (0..k.min(n)).map(|i| i * n + (a + b * i) % n).collect();
            if k == n + 1 {
                block.push(n * n + b);
            }
            blocks.push(block);
        }
    }
    Ok(Design::new(k * n, groups, blocks))
}

/// Removes `removed` and relabels the remaining points in increasing order.
/// Blocks inside `removed` disappear; any other block must keep two points.
pub fn delete_points(d: &Design, removed: &[Point]) -> Result<Design> {
    let mut gone = vec![false; d.points as usize];
    for &x in removed {
        if x >= d.points {
            return Err(Error::Invalid(format!("point {x} out of range")));
        }
        gone[x as usize] = true;
    }
    let mut label = vec![Point::MAX; d.points as usize];
    let mut next = 0;
    for x in 0..d.points as usize {
        if !gone[x] {
            label[x] = next;
            next += 1;
        }
    }
    let relabel = |s: &Vec<Point>| -> Vec<Point> {
        s.iter().filter(|&&x| !gone[x as usize]).map(|&x| label[x as usize]).collect()
    };
    let mut blocks = Vec::with_capacity(d.blocks.len());
    for (i, b) in d.blocks.iter().enumerate() {
        let nb = relabel(b);
        if nb.is_empty() {
            continue;
        }
        if nb.len() < 2 {
            return Err(Error::Precondition(format!("block {i} would shrink to {} points", nb.len())));
        }
        blocks.push(nb);
    }
    let groups = d.groups.iter().map(relabel).filter(|g| !g.is_empty()).collect();
    Ok(Design::new(next, groups, blocks))
}

/// Weights every point by `w`: point `x` becomes `x·w + j` for `j < w`.
/// Each master block of size `k` is replaced by the ingredient for `k`,
/// its `t`-th group (in canonical order) sent to the `t`-th point of the
/// block.
pub fn inflate_by_weight(master: &Design, w: u32, ingredient: &dyn Fn(usize) -> Option<Design>) -> Result<Design> {
    if w == 0 {
        return Err(Error::Precondition("weight must be positive".into()));
    }
    let mut cache: BTreeMap<usize, Design> = BTreeMap::new();
    for k in master.k_set() {
        let ing = ingredient(k).ok_or_else(|| Error::Precondition(format!("no ingredient for block size {k}")))?;
        let shape_ok = ing.groups.len() == k && ing.groups.iter().all(|g| g.len() == w as usize);
        if !shape_ok {
            return Err(Error::Precondition(format!("ingredient for k = {k} is not of type {w}^{k}")));
        }
        if let Err(v) = verify_gdd(&ing, &[]) {
            return Err(Error::Precondition(format!("ingredient for k = {k} fails verification: {v}")));
        }
        cache.insert(k, ing);
    }
    let groups =
        master.groups.iter().map(|g| g.iter().flat_map(|&x| (0..w).map(move |j| x * w + j)).collect()).collect();
    let mut blocks = Vec::new();
    for b in &master.blocks {
        let ing = &cache[&b.len()];
        // Ingredient point → (group position, index within group).
        let mut place = vec![(0usize, 0u32); ing.points as usize];
        for (t, g) in ing.groups.iter().enumerate() {
            for (j, &x) in g.iter().enumerate() {
                place[x as usize] = (t, j as u32);
            }
        }
        for ib in &ing.blocks {
            blocks.push(
                ib.iter()
                    .map(|&x| {
                        let (t, j) = place[x as usize];
                        b[t] * w + j
                    })
                    .collect(),
            );
        }
    }
    let out = Design::new(master.points * w, groups, blocks);
    let sizes: Vec<usize> = out.k_set();
    if let Err(v) = verify_gdd(&out, &sizes) {
        return Err(Error::Invalid(format!("inflated design fails verification: {v}")));
    }
    Ok(out)
}

/// Fills groups of `d`. `fillers[i]` is a design on `0..|G_i|` (plus the
/// point `|G_i|` standing for ∞ when `add_infinity`), its point `j` sent to
/// the `j`-th point of group `i`. With ∞ every group must be filled by a
/// BIBD and ∞ becomes point `d.points`.
pub fn fill_groups(d: &Design, fillers: &BTreeMap<usize, Design>, add_infinity: bool) -> Result<Design> {
    if let Some(&i) = fillers.keys().find(|&&i| i >= d.groups.len()) {
        return Err(Error::Invalid(format!("no group {i}")));
    }
    if add_infinity && fillers.len() != d.groups.len() {
        return Err(Error::Precondition("adding ∞ requires a filler for every group".into()));
    }
    let inf = d.points;
    let mut groups = Vec::new();
    let mut blocks = d.blocks.clone();
    for (i, g) in d.groups.iter().enumerate() {
        let Some(f) = fillers.get(&i) else {
            groups.push(g.clone());
            continue;
        };
        let want = g.len() as u32 + u32::from(add_infinity);
        if f.points != want {
            return Err(Error::Precondition(format!("filler for group {i} has {} points, expected {want}", f.points)));
        }
        if add_infinity && f.kind != DesignKind::Bibd {
            return Err(Error::Precondition(format!("filler for group {i} must be a BIBD")));
        }
        if let Err(v) = verify_gdd(f, &[]) {
            return Err(Error::Precondition(format!("filler for group {i} fails verification: {v}")));
        }
        let map = |x: Point| if x as usize == g.len() { inf } else { g[x as usize] };
        blocks.extend(f.blocks.iter().map(|b| b.iter().map(|&x| map(x)).collect::<Vec<_>>()));
        groups.extend(
            f.groups
                .iter()
                .filter(|fg| !(add_infinity && fg[0] as usize == g.len()))
                .map(|fg| fg.iter().map(|&x| map(x)).collect::<Vec<_>>()),
        );
    }
    let points = d.points + u32::from(add_infinity);
    if add_infinity {
        groups.push(vec![inf]);
    }
    let out = Design::new(points, groups, blocks);
    let sizes = out.k_set();
    if let Err(v) = verify_gdd(&out, &sizes) {
        return Err(Error::Invalid(format!("filled design fails verification: {v}")));
    }
    Ok(out)
}
