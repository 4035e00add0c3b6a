//! Optical orthogonal codes with `λ = 1`: cyclic codewords whose
//! differences are pairwise distinct.

mod search;

pub use search::{
    search_ooc_exhaustive, search_relative_df_exhaustive, DfSearch, OocSearch, SearchOptions, SearchOutcome,
    SearchReport, DEFAULT_SEARCH_BUDGET,
};

use crate::differences::{to_cyclic, verify_relative_df, RelativeDifferenceFamily};
use crate::error::{Error, Result};

/// A `(v, k, 1)`-OOC; codewords are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpticalOrthogonalCode {
    pub v: u32,
    pub k: usize,
    pub codewords: Vec<Vec<u32>>,
}

impl OpticalOrthogonalCode {
    pub fn new(v: u32, k: usize, codewords: Vec<Vec<u32>>) -> Self {
        let codewords = codewords
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        OpticalOrthogonalCode { v, k, codewords }
    }
}

/// Outcome of [`verify_ooc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OocReport {
    pub valid: bool,
    /// First difference seen twice, or a codeword defect.
    pub defect: Option<String>,
    /// `Z_v` minus all covered differences; always contains 0.
    pub missing: Vec<u32>,
}

/// Difference coverage of the codewords, counting each ordered pair.
fn coverage(c: &OpticalOrthogonalCode) -> std::result::Result<Vec<u32>, String> {
    let v = c.v as usize;
    let mut count = vec![0u32; v];
    for (i, w) in c.codewords.iter().enumerate() {
        if w.len() != c.k {
            return Err(format!("codeword {i} has weight {}, expected {}", w.len(), c.k));
        }
        if let Some(&x) = w.iter().find(|&&x| x >= c.v) {
            return Err(format!("codeword {i} contains {x} outside Z_{}", c.v));
        }
        for &a in w {
            for &b in w {
                if a != b {
                    count[((a + c.v - b) % c.v) as usize] += 1;
                }
            }
        }
    }
    Ok(count)
}

pub fn verify_ooc(c: &OpticalOrthogonalCode) -> OocReport {
    let count = match coverage(c) {
        Ok(x) => x,
        Err(defect) => return OocReport { valid: false, defect: Some(defect), missing: vec![] },
    };
    let defect = if count[0] > 0 {
        Some("a codeword repeats a position".to_string())
    } else {
        count.iter().position(|&n| n > 1).map(|d| format!("difference {d} occurs {} times", count[d]))
    };
    let missing = (0..c.v).filter(|&d| count[d as usize] == 0 || d == 0).collect();
    OocReport { valid: defect.is_none(), defect, missing }
}

/// Verified, and the nonzero uncovered differences number at most `k(k-1)`.
pub fn is_optimal_ooc(c: &OpticalOrthogonalCode) -> bool {
    let kk = c.k * c.k.saturating_sub(1);
    let report = verify_ooc(c);
    report.valid && (c.v as usize).saturating_sub(1) - kk * c.codewords.len() <= kk
}

/// Cyclic `(gv, g, k, 1)`-DF read as a `(gv, k, 1)`-OOC; products
/// `Z_h × Z_q` are first sent through the CRT map. The missing set must be
/// exactly the forbidden subgroup.
pub fn ooc_from_relative_df(df: &RelativeDifferenceFamily) -> Result<OpticalOrthogonalCode> {
    let df = to_cyclic(df)?;
    if df.lambda != 1 {
        return Err(Error::Precondition(format!("lambda = {} != 1", df.lambda)));
    }
    if let Err(v) = verify_relative_df(&df)? {
        return Err(Error::Invalid(format!("family fails verification: {v}")));
    }
    let c = OpticalOrthogonalCode::new(df.group.order(), df.k, df.blocks.clone());
    let report = verify_ooc(&c);
    if !report.valid || report.missing != df.forbidden {
        return Err(Error::Invalid("missing differences differ from the forbidden subgroup".into()));
    }
    Ok(c)
}

/// DF base blocks together with `v·c` for every filler codeword `c`, where
/// `v = |G| / |N|`. The output is verified and checked optimal.
pub fn compose_ooc(df: &RelativeDifferenceFamily, filler: &OpticalOrthogonalCode) -> Result<OpticalOrthogonalCode> {
    let base = ooc_from_relative_df(df)?;
    let g = df.forbidden.len() as u32;
    if filler.v != g {
        return Err(Error::Precondition(format!("filler has length {}, the subgroup has order {g}", filler.v)));
    }
    if filler.k != base.k && !filler.codewords.is_empty() {
        return Err(Error::Precondition(format!("filler weight {} != {}", filler.k, base.k)));
    }
    if !is_optimal_ooc(&OpticalOrthogonalCode { k: base.k, ..filler.clone() }) {
        return Err(Error::Precondition("filler is not an optimal OOC".into()));
    }
    let v = base.v / g;
    let mut codewords = base.codewords.clone();
    codewords.extend(filler.codewords.iter().map(|c| c.iter().map(|&x| v * x).collect()));
    let out = OpticalOrthogonalCode::new(base.v, base.k, codewords);
    // Coverage must be (Z_gv ∖ vZ_g) ⊎ v·Δ(filler).
    let filler_missing = verify_ooc(filler).missing;
    let report = verify_ooc(&out);
    let want: Vec<u32> = filler_missing.iter().map(|&d| v * d).collect();
    if !report.valid || report.missing != want {
        return Err(Error::Invalid(format!("composed code fails verification: {:?}", report.defect)));
    }
    if !is_optimal_ooc(&out) {
        return Err(Error::Invalid("composed code is not optimal".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AbelianGroup;

    #[test]
    fn single_codeword_fillers() {
        let c = OpticalOrthogonalCode::new(35, 6, vec![vec![0, 1, 3, 7, 12, 20]]);
        let r = verify_ooc(&c);
        assert!(r.valid);
        assert_eq!(r.missing.len(), 5);
        assert_eq!(r.missing[0], 0);
        assert!(is_optimal_ooc(&c));
        let c = OpticalOrthogonalCode::new(63, 8, vec![vec![0, 1, 3, 7, 15, 20, 31, 41]]);
        assert!(is_optimal_ooc(&c));
    }

    #[test]
    fn repeated_difference() {
        let c = OpticalOrthogonalCode::new(7, 3, vec![vec![0, 1, 2]]);
        let r = verify_ooc(&c);
        assert!(!r.valid);
        assert_eq!(r.defect.as_deref(), Some("difference 1 occurs 2 times"));
        assert!(!is_optimal_ooc(&c));
        assert!(!verify_ooc(&OpticalOrthogonalCode::new(7, 3, vec![vec![0, 1]])).valid);
        assert!(!verify_ooc(&OpticalOrthogonalCode::new(7, 2, vec![vec![0, 9]])).valid);
    }

    #[test]
    fn trivial_df_to_ooc() {
        let df = RelativeDifferenceFamily::new(AbelianGroup::cyclic(4).unwrap(), vec![0, 2], vec![vec![0, 1]], 2, 1);
        let c = ooc_from_relative_df(&df).unwrap();
        assert_eq!(verify_ooc(&c).missing, vec![0, 2]);
        // The empty (2,2,1)-OOC is optimal: one missing nonzero difference.
        let out = compose_ooc(&df, &OpticalOrthogonalCode::new(2, 2, vec![])).unwrap();
        assert_eq!(out.codewords, vec![vec![0, 1]]);
        assert!(is_optimal_ooc(&out));
    }

    #[test]
    fn product_df_goes_through_crt() {
        let g = AbelianGroup::product(&[3, 5]).unwrap();
        // (Z_15, 5Z_15, 3, 1)-DF {0,1,4},{0,2,8} pushed to Z_3 × Z_5.
        let to = |x: u32| (x % 3) * 5 + x % 5;
        let blocks =
            vec![vec![0, 1, 4], vec![0, 2, 8]].into_iter().map(|b: Vec<u32>| b.into_iter().map(to).collect()).collect();
        let df = RelativeDifferenceFamily::new(g, vec![0, 5, 10], blocks, 3, 1);
        let c = ooc_from_relative_df(&df).unwrap();
        assert_eq!(c.v, 15);
        assert_eq!(verify_ooc(&c).missing, vec![0, 5, 10]);
        let err = compose_ooc(&df, &OpticalOrthogonalCode::new(5, 3, vec![vec![0, 1, 2]]));
        assert!(err.is_err());
    }
}
