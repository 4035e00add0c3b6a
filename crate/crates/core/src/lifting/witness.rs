use std::sync::Arc;

use crate::algebra::{AbelianGroup, Element, FiniteField};
use crate::differences::{delta_family, verify_relative_df, Block, RelativeDifferenceFamily, StrongDifferenceFamily};
use crate::error::{Error, Result};

/// Concrete blocks over `G × F_q` claimed to witness a type-d SDF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCollection {
    pub group: AbelianGroup,
    pub blocks: Vec<Block>,
    pub type_d: u32,
}

impl WitnessCollection {
    /// `base` must not already contain a field factor.
    pub fn new(base: &AbelianGroup, field: Arc<FiniteField>, blocks: Vec<Block>, type_d: u32) -> Result<Self> {
        let group = base.with_field(field)?;
        Ok(WitnessCollection { group, blocks, type_d })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.group.field().expect("witness groups carry a field factor")
    }

    /// Number of base elements `|G|`.
    fn base_order(&self) -> u32 {
        self.group.order() / self.field().order()
    }

    /// `μ` recovered from the difference count.
    pub fn mu(&self) -> Option<u32> {
        let total: u64 = self.blocks.iter().map(|b| (b.len() * b.len().saturating_sub(1)) as u64).sum();
        let n = self.base_order() as u64;
        total.is_multiple_of(n).then(|| (total / n) as u32)
    }

    /// Projection of every block onto `G`, each block sorted.
    pub fn projection(&self) -> Vec<Block> {
        self.blocks
            .iter()
            .map(|b| {
                let mut p: Block = b.iter().map(|&x| self.group.split(x).0).collect();
                p.sort_unstable();
                p
            })
            .collect()
    }

    /// `L_g` for every `g`, or `None` when some fiber over `g` is not a union
    /// of whole cosets of `C_0^{(q-1)/d}` (or contains a zero difference).
    ///
    /// Each coset is represented by its element of least discrete log.
    pub fn coset_factors(&self, d: u32) -> Option<Vec<Vec<Element>>> {
        let f = self.field();
        let q = f.order();
        if d == 0 || !(q - 1).is_multiple_of(d) {
            return None;
        }
        let cosets = (q - 1) / d;
        let n = self.base_order() as usize;
        let mut counts = vec![vec![0u32; q as usize]; n];
        let delta = delta_family(&self.group, &self.blocks).ok()?;
        for (x, c) in delta.iter() {
            let (g, y) = self.group.split(x);
            counts[g as usize][y as usize] += c;
        }
        let mut out = Vec::with_capacity(n);
        for fiber in counts {
            if fiber[0] != 0 {
                return None;
            }
            let mut lg = Vec::new();
            for c in 0..cosets {
                let rep = f.omega_pow(c as i64);
                let m = fiber[rep as usize];
                for j in 1..d {
                    if fiber[f.omega_pow((c + j * cosets) as i64) as usize] != m {
                        return None;
                    }
                }
                lg.extend(std::iter::repeat_n(rep, m as usize));
            }
            out.push(lg);
        }
        Some(out)
    }
}

fn sorted_blocks(blocks: &[Block]) -> Vec<Block> {
    let mut out: Vec<Block> = blocks
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    out.sort();
    out
}

/// Whether `w` projects onto `s` and every fiber factors as
/// `C_0^{(q-1)/d} · L_g` with `|L_g| = μ/d`.
pub fn verify_type_witness(w: &WitnessCollection, s: &StrongDifferenceFamily, d: u32) -> bool {
    if w.group.cyclic_orders() != s.group.cyclic_orders() {
        return false;
    }
    if sorted_blocks(&w.projection()) != sorted_blocks(&s.blocks) {
        return false;
    }
    if d == 0 || !s.mu.is_multiple_of(d) {
        return false;
    }
    let Some(factors) = w.coset_factors(d) else {
        return false;
    };
    let want = (s.mu / d) as usize;
    factors.iter().all(|lg| lg.len() == want)
}

/// Default `S`: the least-encoded element of each coset of
/// `C_0^{(q-1)/d}` inside `C_0^{μ/d}`, sorted by encoding.
pub fn default_representatives(field: &FiniteField, mu: u32, d: u32) -> Result<Vec<Element>> {
    let q = field.order();
    check_lift_params(q, mu, d)?;
    let r = mu / d;
    let cosets = (q - 1) / d;
    let mut best: Vec<Option<Element>> = vec![None; cosets as usize];
    for t in 0..(q - 1) / r {
        let e = (r * t) as i64;
        let x = field.omega_pow(e);
        let c = (r * t % cosets) as usize;
        if best[c].is_none_or(|b| x < b) {
            best[c] = Some(x);
        }
    }
    let mut s: Vec<Element> = best.into_iter().flatten().collect();
    s.sort_unstable();
    Ok(s)
}

fn check_lift_params(q: u32, mu: u32, d: u32) -> Result<()> {
    if d == 0 || !mu.is_multiple_of(d) {
        return Err(Error::Precondition(format!("d = {d} does not divide mu = {mu}")));
    }
    if !(q - 1).is_multiple_of(mu) {
        return Err(Error::Congruence(format!("q = {q} is not 1 mod {mu}")));
    }
    Ok(())
}

/// Whether `s` is a system of representatives for `C_0^{(q-1)/d}` in
/// `C_0^{μ/d}`.
pub fn is_lift_transversal(field: &FiniteField, mu: u32, d: u32, s: &[Element]) -> bool {
    let q = field.order();
    if check_lift_params(q, mu, d).is_err() || s.len() as u32 != (q - 1) / mu {
        return false;
    }
    let r = mu / d;
    let cosets = (q - 1) / d;
    let mut seen = vec![false; cosets as usize];
    for &x in s {
        let Ok(l) = field.discrete_log(x) else {
            return false;
        };
        if l % r != 0 || std::mem::replace(&mut seen[(l % cosets) as usize], true) {
            return false;
        }
    }
    true
}

/// `[C·(1,s) : s ∈ S, C ∈ w]` with the default `S`.
pub fn lift_to_df(w: &WitnessCollection, d: u32) -> Result<RelativeDifferenceFamily> {
    let mu = w.mu().ok_or_else(|| Error::Precondition("difference count is not a multiple of |G|".into()))?;
    let s = default_representatives(w.field(), mu, d)?;
    lift_to_df_with(w, d, &s)
}

/// Lift with an explicit transversal `s`, validated first.
pub fn lift_to_df_with(w: &WitnessCollection, d: u32, s: &[Element]) -> Result<RelativeDifferenceFamily> {
    let f = w.field().clone();
    let mu = w.mu().ok_or_else(|| Error::Precondition("difference count is not a multiple of |G|".into()))?;
    check_lift_params(f.order(), mu, d)?;
    let factors = w
        .coset_factors(d)
        .ok_or_else(|| Error::Precondition(format!("fibers do not factor through C_0^((q-1)/{d})")))?;
    let r = mu / d;
    if let Some(g) = factors.iter().position(|lg| !f.is_system_of_representatives(r, lg)) {
        return Err(Error::Precondition(format!("L_{g} is not a system of representatives for C_0^{r}")));
    }
    if !is_lift_transversal(&f, mu, d, s) {
        return Err(Error::Precondition(format!("{s:?} is not a transversal of C_0^((q-1)/{d}) in C_0^{r}")));
    }
    let k = w.blocks.first().map_or(0, Vec::len);
    let mut blocks = Vec::with_capacity(s.len() * w.blocks.len());
    for &m in s {
        for b in &w.blocks {
            blocks.push(
                b.iter()
                    .map(|&x| {
                        let (g, y) = w.group.split(x);
                        w.group.join(g, f.mul(y, m))
                    })
                    .collect(),
            );
        }
    }
    let df = RelativeDifferenceFamily::over_field_extension(w.group.clone(), blocks, k);
    if let Err(v) = verify_relative_df(&df)? {
        return Err(Error::Invalid(format!("lifted family fails verification: {v}")));
    }
    Ok(df)
}
