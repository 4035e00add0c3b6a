//! Transcribed objects. Every builder returns the payload unverified; the
//! loader in the parent module checks each one.

use std::sync::Arc;

use super::{EntryKind, Payload};
use crate::algebra::{AbelianGroup, Element, FiniteField};
use crate::differences::{
    infer_type2_pattern, infer_type4_pattern, Block, RelativeDifferenceFamily, StrongDifferenceFamily,
};
use crate::error::{Error, Result};
use crate::format::{DesignFile, FieldSpec};
use crate::lifting::WitnessCollection;
use crate::ooc::OpticalOrthogonalCode;

pub(super) struct Spec {
    pub id: String,
    pub kind: EntryKind,
    pub provenance: &'static str,
    pub declared_type: Option<u32>,
    pub build: Box<dyn Fn() -> Result<Payload> + Send + Sync>,
}

fn spec(
    id: impl Into<String>,
    kind: EntryKind,
    provenance: &'static str,
    declared_type: Option<u32>,
    build: impl Fn() -> Result<Payload> + Send + Sync + 'static,
) -> Spec {
    Spec { id: id.into(), kind, provenance, declared_type, build: Box::new(build) }
}

type Rows = &'static [(usize, &'static [i64])];

fn cyclic_sdf(n: u32, k: usize, mu: u32, rows: Rows) -> Result<StrongDifferenceFamily> {
    let g = AbelianGroup::cyclic(n)?;
    let mut blocks = Vec::new();
    for &(m, b) in rows {
        let block: Block = b.iter().map(|&x| g.from_tuple(&[x])).collect::<Result<_>>()?;
        blocks.extend(std::iter::repeat_n(block, m));
    }
    Ok(StrongDifferenceFamily::new(g, blocks, k, mu))
}

#[derive(Clone, Copy)]
enum Annotate {
    None,
    Type2,
    Type4,
}

fn sdf_payload(n: u32, k: usize, mu: u32, rows: Rows, annotate: Annotate) -> Result<Payload> {
    let mut s = cyclic_sdf(n, k, mu, rows)?;
    let missing = |t: u32| Error::Pattern(format!("no type-{t} partition of the stored blocks"));
    match annotate {
        Annotate::None => {}
        Annotate::Type2 => s.type2 = Some(infer_type2_pattern(&s).ok_or_else(|| missing(2))?),
        Annotate::Type4 => s.type4 = Some(infer_type4_pattern(&s).ok_or_else(|| missing(4))?),
    }
    Ok(Payload::File(DesignFile::from_sdf(&s)))
}

const WORKED: &str = "worked example";
const TYPE2_TABLE: &str = "type-2 table, computer search";
const TYPE4_TABLE: &str = "type-4 table";
const LITERATURE: &str = "literature table; type label is metadata only";

#[rustfmt::skip]
fn sdfs() -> Vec<Spec> {
    use Annotate::*;
    let t = |id: &str, prov, d, n, k, mu, rows: Rows, a| {
        spec(format!("sdf/{id}"), EntryKind::Sdf, prov, Some(d), move || sdf_payload(n, k, mu, rows, a))
    };
    vec![
        t("z2-5-20", WORKED, 2, 2, 5, 20, &[(1, &[0, 0, 1, 1, 1]), (1, &[0, 1, 1, 1, 1])], Type2),
        t("z10-5-12", WORKED, 2, 10, 5, 12, &[(1, &[0, 3, 3, 7, 7]), (1, &[0, 0, 0, 5, 5]), (2, &[0, 9, 6, 7, 8]), (2, &[0, 8, 4, 6, 7])], Type2),
        t("z45-5-4", WORKED, 4, 45, 5, 4, &[(1, &[0, 1, 1, -1, -1]), (4, &[0, 3, 7, 13, 30]), (4, &[0, 5, 14, 26, 34])], Type4),
        t("z12-5-20", TYPE2_TABLE, 2, 12, 5, 20, &[(1, &[0, 0, 0, 6, 6]), (1, &[0, 0, 0, 0, 6]), (2, &[0, 1, 2, 3, 4]), (2, &[0, 1, 2, 4, 5]), (2, &[0, 1, 3, 5, 8]), (2, &[0, 1, 4, 5, 8]), (2, &[0, 2, 4, 7, 9])], Type2),
        t("z25-6-6", TYPE2_TABLE, 2, 25, 6, 6, &[(1, &[0, 0, 5, 5, 14, 14]), (2, &[0, 1, 2, 3, 6, 18]), (2, &[0, 2, 8, 12, 15, 19])], Type2),
        t("z30-6-6", TYPE2_TABLE, 2, 30, 6, 6, &[(1, &[0, 0, 6, 6, 16, 16]), (1, &[0, 15, 3, 18, 7, 22]), (2, &[0, 1, 2, 3, 8, 21]), (2, &[0, 2, 5, 9, 13, 18])], Type2),
        t("z35-6-6", TYPE2_TABLE, 2, 35, 6, 6, &[(1, &[0, 0, 8, 8, 18, 18]), (2, &[0, 1, 2, 3, 5, 15]), (2, &[0, 3, 7, 14, 23, 29]), (2, &[0, 4, 9, 17, 23, 28])], Type2),
        t("z45-6-6", TYPE2_TABLE, 2, 45, 6, 6, &[(1, &[0, 0, 10, 10, 26, 26]), (2, &[0, 1, 3, 11, 17, 31]), (2, &[0, 4, 9, 22, 30, 37]), (4, &[0, 1, 3, 7, 12, 25])], Type2),
        t("z5-6-12", TYPE2_TABLE, 2, 5, 6, 12, &[(1, &[0, 0, 1, 1, 2, 2]), (1, &[0, 0, 2, 2, 4, 4])], Type2),
        t("z15-6-12", TYPE2_TABLE, 2, 15, 6, 12, &[(1, &[0, 0, 3, 3, 8, 8]), (1, &[0, 0, 4, 4, 9, 9]), (2, &[0, 1, 2, 3, 4, 7]), (2, &[0, 1, 2, 4, 8, 10])], Type2),
        t("z35-7-6", TYPE2_TABLE, 2, 35, 7, 6, &[(1, &[0, 7, 7, 17, 17, 30, 30]), (2, &[0, 1, 2, 3, 5, 21, 29]), (2, &[0, 3, 9, 13, 17, 24, 29])], Type2),
        t("z49-7-6", TYPE2_TABLE, 2, 49, 7, 6, &[(1, &[0, 4, 4, 16, 16, 36, 36]), (2, &[0, 1, 3, 20, 28, 38, 43]), (4, &[0, 1, 3, 27, 31, 36, 42])], Type2),
        t("z21-7-12", TYPE2_TABLE, 2, 21, 7, 12, &[(1, &[0, 5, 5, 10, 10, 17, 17]), (1, &[0, 3, 3, 9, 9, 17, 17]), (2, &[0, 1, 2, 3, 4, 5, 11]), (2, &[0, 1, 3, 7, 11, 13, 16])], Type2),
        t("z63-8-8", TYPE4_TABLE, 4, 63, 8, 8, &[(1, &[20, 20, -20, -20, 29, 29, -29, -29]), (4, &[0, 1, 3, 7, 19, 34, 42, 53]), (4, &[0, 1, 4, 6, 26, 36, 43, 51])], Type4),
        t("z81-9-8", TYPE4_TABLE, 4, 81, 9, 8, &[(1, &[0, 4, 4, -4, -4, 37, 37, -37, -37]), (4, &[0, 1, 4, 6, 17, 18, 38, 63, 72]), (4, &[0, 2, 7, 27, 30, 38, 53, 59, 69])], Type4),
        t("lit/z9-4-8", LITERATURE, 2, 9, 4, 8, &[(1, &[0, 0, 5, 5]), (1, &[0, 0, 3, 3]), (4, &[0, 1, 3, 8])], None),
        t("lit/z12-4-4", LITERATURE, 2, 12, 4, 4, &[(1, &[0, 0, 5, 5]), (1, &[0, 2, 6, 8]), (1, &[0, 1, 3, 4]), (1, &[0, 8, 9, 11])], None),
        t("lit/z4-5-20", LITERATURE, 2, 4, 5, 20, &[(1, &[0, 0, 1, 1, 2]), (1, &[0, 0, 0, 1, 2]), (1, &[3, 3, 2, 2, 1]), (1, &[3, 3, 3, 2, 1])], None),
        t("lit/z20-5-12", LITERATURE, 2, 20, 5, 12, &[(6, &[0, 1, 3, 9, 14]), (2, &[0, 1, 4, 5, 8]), (2, &[0, 1, 5, 13, 18]), (1, &[0, 2, 2, 18, 18]), (1, &[0, 0, 0, 10, 10])], None),
        t("lit/z45-9-8", LITERATURE, 2, 45, 9, 8, &[(1, &[0, 2, 2, 15, 15, 23, 23, 33, 33]), (2, &[0, 1, 4, 5, 6, 7, 13, 22, 33]), (2, &[0, 2, 5, 11, 21, 25, 28, 36, 40])], None),
        t("lit/z125-6-6", LITERATURE, 2, 125, 6, 6, &[
            (1, &[0, 0, 19, 19, 71, 71]), (2, &[0, 10, 28, 51, 78, 97]), (2, &[0, 3, 62, 75, 86, 110]), (2, &[0, 5, 12, 58, 70, 112]),
            (2, &[0, 7, 27, 44, 70, 96]), (2, &[0, 1, 42, 93, 85, 45]), (2, &[0, 1, 100, 104, 109, 88]), (2, &[0, 1, 90, 81, 21, 32]),
            (2, &[0, 3, 16, 40, 46, 50]), (2, &[0, 2, 7, 29, 35, 68]), (2, &[0, 2, 8, 57, 102, 116]), (2, &[0, 2, 22, 32, 36, 96]),
            (2, &[0, 8, 23, 38, 72, 86]),
        ], None),
        t("lit/z4-4-12-type3", LITERATURE, 3, 4, 4, 12, &[(3, &[0, 0, 1, 3]), (1, &[0, 2, 2, 2])], None),
        t("lit/z4-4-18", LITERATURE, 3, 4, 4, 18, &[(3, &[0, 1, 2, 3]), (2, &[0, 0, 0, 1]), (1, &[0, 0, 0, 2])], None),
        t("lit/z6-4-8", LITERATURE, 4, 6, 4, 8, &[(1, &[0, 0, 1, 1]), (1, &[0, 0, 2, 2]), (2, &[0, 1, 3, 4])], None),
        t("lit/z45-5-4", LITERATURE, 4, 45, 5, 4, &[(4, &[0, 2, 5, 12, 23]), (4, &[0, 1, 14, 20, 29]), (1, &[0, 4, 4, -4, -4])], None),
        t("lit/z119-8-8", LITERATURE, 4, 119, 8, 8, &[
            (1, &[20, 20, -20, -20, 29, 29, -29, -29]), (4, &[0, 1, 42, 28, 101, 97, 94, 114]), (4, &[0, 1, 12, 23, 41, 85, 104, 106]),
            (4, &[0, 2, 5, 17, 37, 47, 68, 76]), (4, &[0, 4, 10, 38, 54, 62, 86, 93]),
        ], None),
        t("lit/z2-3-12", LITERATURE, 6, 2, 3, 12, &[(1, &[0, 0, 0]), (3, &[1, 1, 0])], None),
        t("lit/z4-4-12-type6", LITERATURE, 6, 4, 4, 12, &[(3, &[0, 0, 1, 2]), (1, &[0, 0, 0, 1])], None),
        t("lit/z8-4-6", LITERATURE, 6, 8, 4, 6, &[(3, &[0, 1, 3, 5]), (1, &[0, 0, 0, 1])], None),
        t("lit/z6-7-56", LITERATURE, 7, 6, 7, 56, &[(7, &[0, 1, 2, 3, 4, 5, 5]), (1, &[0, 0, 0, 0, 0, 0, 0])], None),
    ]
}

/// Cyclic DF over `Z_{hq}` relative to `qZ_{hq}`: the `fixed` blocks plus
/// `b·m^i` for every `orbit` block `b` and `0 ≤ i < reps`.
fn cyclic_df(h: u32, q: u32, k: usize, fixed: &[&[u32]], orbit: &[&[u32]], m: u32, reps: u32) -> Result<Payload> {
    let n = h * q;
    let g = AbelianGroup::cyclic(n)?;
    let mut blocks: Vec<Block> = fixed.iter().map(|b| b.to_vec()).collect();
    for b in orbit {
        let mut t = 1u64;
        for _ in 0..reps {
            blocks.push(b.iter().map(|&x| (x as u64 * t % n as u64) as Element).collect());
            t = t * m as u64 % n as u64;
        }
    }
    let forbidden = (0..h).map(|i| i * q).collect();
    Ok(Payload::File(DesignFile::from_df(&RelativeDifferenceFamily::new(g, forbidden, blocks, k, 1))))
}

/// `Z_h × F_q` for prime `q`, with points given as `(g, y)` integer pairs.
fn product_group(h: u32, q: u32) -> Result<AbelianGroup> {
    AbelianGroup::cyclic(h)?.with_field(Arc::new(FiniteField::prime(q)?))
}

fn pairs(g: &AbelianGroup, pts: &[(i64, i64)]) -> Result<Block> {
    let q = g.field().map_or(1, |f| f.order()) as i64;
    pts.iter().map(|&(a, y)| g.from_tuple(&[a, y.rem_euclid(q)])).collect()
}

fn scale(g: &AbelianGroup, b: &[Element], s: Element) -> Block {
    let f = g.field().expect("field factor");
    b.iter()
        .map(|&x| {
            let (a, y) = g.split(x);
            g.join(a, f.mul(y, s))
        })
        .collect()
}

fn product_df(h: u32, q: u32, k: usize, parts: &[(&[(i64, i64)], Vec<Element>)]) -> Result<Payload> {
    let g = product_group(h, q)?;
    let mut blocks = Vec::new();
    for (pts, mults) in parts {
        let b = pairs(&g, pts)?;
        blocks.extend(mults.iter().map(|&s| scale(&g, &b, s)));
    }
    Ok(Payload::File(DesignFile::from_df(&RelativeDifferenceFamily::over_field_extension(g, blocks, k))))
}

fn class0(q: u32, d: u32) -> Result<Vec<Element>> {
    FiniteField::prime(q)?.cyclotomic_class(d, 0)
}

const SMALL_Q: &str = "explicit DF for a small exceptional q";

#[rustfmt::skip]
fn dfs() -> Vec<Spec> {
    let d = |id: &str, prov, f: fn() -> Result<Payload>| spec(format!("df/{id}"), EntryKind::Df, prov, None, f);
    vec![
        d("10x13-5", SMALL_Q, || product_df(10, 13, 5, &[
            (&[(0, 0), (3, 1), (3, 12), (7, 3), (7, 10)], vec![1]),
            (&[(0, 0), (0, 1), (0, 4), (5, 3), (5, 8)], vec![1]),
            (&[(0, 0), (9, 4), (6, 10), (7, 5), (8, 6)], class0(13, 6)?),
            (&[(0, 0), (8, 2), (4, 7), (6, 12), (7, 9)], class0(13, 6)?),
        ])),
        d("30x7-6", SMALL_Q, || cyclic_df(30, 7, 6, &[&[0, 11, 30, 111, 131, 171], &[0, 12, 27, 73, 148, 165]], &[&[0, 1, 3, 25, 34, 128], &[0, 5, 37, 43, 53, 139]], 29, 2)),
        d("5x37-6", SMALL_Q, || cyclic_df(5, 37, 6, &[&[0, 4, 38, 95, 102, 138], &[0, 12, 29, 79, 109, 165]], &[&[0, 1, 3, 11, 42, 123], &[0, 5, 19, 77, 145, 169]], 26, 2)),
        d("15x13-6", SMALL_Q, || cyclic_df(15, 13, 6, &[], &[&[0, 1, 3, 8, 18, 89], &[0, 4, 42, 105, 141, 155]], 16, 3)),
        d("35x7-6", SMALL_Q, || cyclic_df(35, 7, 6, &[&[0, 10, 30, 85, 130, 195]], &[&[0, 1, 3, 54, 158, 167], &[0, 4, 22, 93, 118, 201]], 116, 3)),
        d("45x7-6", SMALL_Q, || cyclic_df(45, 7, 6, &[], &[&[0, 1, 3, 11, 61, 244], &[0, 4, 29, 135, 171, 278], &[0, 5, 23, 78, 125, 164]], 16, 3)),
        d("21x13-7", SMALL_Q, || cyclic_df(21, 13, 7, &[], &[&[0, 1, 3, 9, 88, 116, 135], &[0, 4, 37, 86, 127, 204, 211]], 16, 3)),
        d("63x41-8", SMALL_Q, || product_df(63, 41, 8, &[
            (&[(20, 0), (20, 1), (-20, 7), (-20, 35), (29, 5), (29, 37), (-29, 18), (-29, 24)], class0(41, 8)?),
            (&[(0, 0), (1, 1), (3, 7), (7, 4), (19, 2), (34, 3), (42, 6), (53, 27)], class0(41, 2)?),
            (&[(0, 0), (1, 3), (4, 2), (6, 1), (26, 8), (36, 29), (43, 36), (51, 15)], class0(41, 2)?),
        ])),
        d("2x41-5", WORKED, || product_df(2, 41, 5, &[
            (&[(0, 0), (0, 1), (1, 2), (1, 8), (1, 13)], vec![1, 9]),
            (&[(0, 0), (1, 3), (1, 5), (1, 17), (1, 25)], vec![1, 9]),
        ])),
    ]
}

fn witness_payload(w: WitnessCollection) -> Payload {
    Payload::File(DesignFile::from_witness(&w))
}

/// Blocks over `Z_h × F_q` from `(g, y)` pairs, each block followed by its
/// images under the listed field multipliers.
fn prime_witness(h: u32, q: u32, d: u32, parts: &[(&[(i64, i64)], &[i64])]) -> Result<Payload> {
    let g = product_group(h, q)?;
    let mut blocks = Vec::new();
    for (pts, mults) in parts {
        let b = pairs(&g, pts)?;
        blocks.extend(mults.iter().map(|&s| scale(&g, &b, s.rem_euclid(q as i64) as Element)));
    }
    Ok(witness_payload(WitnessCollection { group: g, blocks, type_d: d }))
}

/// A field entry `±ω^e`, or `±1` for `e = 0`.
#[derive(Clone, Copy)]
struct Pow(i64, i64);

/// The type-2 witness for `(Z_30, 6, 6)` over `GF(p^2)`: `C_4 = -C_3`,
/// `C_6 = -C_5`. Entries `(g, sign, e)` stand for `(g, sign·ω^e)`;
/// `None` is the field zero.
fn gf_witness(p: u32, modulus: &[i64], rows: &[[(i64, Option<Pow>); 6]; 4]) -> Result<Payload> {
    let f = Arc::new(FiniteField::new(p, 2, Some(modulus))?);
    let g = AbelianGroup::cyclic(30)?.with_field(f.clone())?;
    let value = |e: Option<Pow>| match e {
        None => 0,
        Some(Pow(sign, e)) => {
            let x = f.omega_pow(e);
            if sign < 0 {
                f.neg(x)
            } else {
                x
            }
        }
    };
    let mut blocks = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let b: Block = row.iter().map(|&(a, e)| g.join(a.rem_euclid(30) as u32, value(e))).collect();
        if i >= 2 {
            blocks.push(b.clone());
            blocks.push(scale(&g, &b, f.neg(1)));
        } else {
            blocks.push(b);
        }
    }
    Ok(witness_payload(WitnessCollection { group: g, blocks, type_d: 2 }))
}

fn gf_rows(e: [i64; 12]) -> [[(i64, Option<Pow>); 6]; 4] {
    let one = Some(Pow(1, 0));
    let p = |e| Some(Pow(1, e));
    let m = |e| Some(Pow(-1, e));
    [
        [(0, one), (0, Some(Pow(-1, 0))), (6, p(e[0])), (6, m(e[0])), (16, p(e[1])), (16, m(e[1]))],
        [(0, one), (15, Some(Pow(-1, 0))), (3, p(e[2])), (18, m(e[2])), (7, p(e[3])), (22, m(e[3]))],
        [(0, None), (1, one), (2, p(e[4])), (3, p(e[5])), (8, p(e[6])), (21, p(e[7]))],
        [(0, None), (2, one), (5, p(e[8])), (9, p(e[9])), (13, p(e[10])), (18, p(e[11]))],
    ]
}

#[rustfmt::skip]
fn witnesses() -> Vec<Spec> {
    let w = |id: &str, d, f: fn() -> Result<Payload>| spec(format!("witness/{id}"), EntryKind::Witness, WORKED, Some(d), f);
    vec![
        w("z2-f41", 2, || prime_witness(2, 41, 2, &[
            (&[(0, 0), (0, 1), (1, 2), (1, 8), (1, 13)], &[1]),
            (&[(0, 0), (1, 3), (1, 5), (1, 17), (1, 25)], &[1]),
        ])),
        w("z10-f13", 2, || prime_witness(10, 13, 2, &[
            (&[(0, 0), (3, 1), (3, 12), (7, 3), (7, 10)], &[1]),
            (&[(0, 0), (0, 1), (0, 4), (5, 3), (5, 8)], &[1]),
            (&[(0, 0), (9, 4), (6, 10), (7, 5), (8, 6)], &[1, -1]),
            (&[(0, 0), (8, 2), (4, 7), (6, 12), (7, 9)], &[1, -1]),
        ])),
        // ξ = 2 is a primitive fourth root of unity in F_5.
        w("z45-f5", 4, || prime_witness(45, 5, 4, &[
            (&[(0, 0), (1, 1), (1, -1), (-1, 2), (-1, -2)], &[1]),
            (&[(0, 0), (3, 1), (7, 2), (13, 3), (30, 4)], &[1, 2, -1, -2]),
            (&[(0, 0), (5, 1), (14, 2), (26, 3), (34, 4)], &[1, 2, -1, -2]),
        ])),
        w("z30-f25", 2, || gf_witness(5, &[2, -1, 1], &gf_rows([13, 11, 16, 5, 20, 22, 18, 12, 6, 19, 14, 4]))),
        w("z30-f49", 2, || gf_witness(7, &[3, -1, 1], &gf_rows([40, 26, 13, 5, 8, 24, 21, 10, 34, 32, 2, 8]))),
    ]
}

pub(super) const BIBD_BASE: [u32; 6] = [0, 1, 3, 8, 12, 18];
pub(super) const AUT_ORDER3: &str =
    "(1 13 6)(2 23 29)(3 25 20)(4 5 30)(7 26 28)(8 16 19)(9 17 10)(11 24 15)(12 21 27)(14 22 18)";
pub(super) const AUT_ORDER5: &str =
    "(0 18 29 7 22)(1 25 26 16 19)(2 11 28 9 24)(3 4 27 12 20)(5 6 8 17 13)(10 15 14 21 30)";

fn ooc_payload(v: u32, k: usize, words: &[&[u32]]) -> Payload {
    Payload::File(DesignFile::from_ooc(&OpticalOrthogonalCode::new(v, k, words.iter().map(|w| w.to_vec()).collect())))
}

fn others() -> Vec<Spec> {
    const PLANE: &str = "projective plane of order 5, developed over Z_31";
    const FILLER: &str = "OOC filler table";
    let mut out = vec![
        spec("bibd/31-6-1", EntryKind::Bibd, PLANE, None, || {
            let g = AbelianGroup::cyclic(31)?;
            let df = RelativeDifferenceFamily::new(g, vec![0], vec![BIBD_BASE.to_vec()], 6, 1);
            Ok(Payload::File(DesignFile::from_df(&df)))
        }),
        spec("aut/31-6-1-order3", EntryKind::Automorphism, PLANE, None, || {
            Ok(Payload::Permutation { points: 31, cycles: AUT_ORDER3.into() })
        }),
        spec("aut/31-6-1-order5", EntryKind::Automorphism, PLANE, None, || {
            Ok(Payload::Permutation { points: 31, cycles: AUT_ORDER5.into() })
        }),
        spec("poly/gf25", EntryKind::PrimitivePoly, "x^2 - x + 2 over F_5", None, || {
            Ok(Payload::Polynomial(FieldSpec { p: 5, e: 2, modulus: vec![2, 4, 1] }))
        }),
        spec("poly/gf49", EntryKind::PrimitivePoly, "x^2 - x + 3 over F_7", None, || {
            Ok(Payload::Polynomial(FieldSpec { p: 7, e: 2, modulus: vec![3, 6, 1] }))
        }),
    ];
    for (g, k) in [(2, 5), (10, 5), (12, 5), (5, 6), (15, 6), (25, 6), (30, 6), (21, 7), (35, 7)] {
        out.push(spec(format!("ooc/filler-{g}-{k}"), EntryKind::OocFiller, FILLER, None, move || {
            Ok(ooc_payload(g, k, &[]))
        }));
    }
    let words: [(u32, usize, &'static [u32]); 4] = [
        (35, 6, &[0, 1, 3, 7, 12, 20]),
        (45, 6, &[0, 1, 3, 7, 12, 20]),
        (49, 7, &[0, 1, 3, 7, 27, 35, 40]),
        (63, 8, &[0, 1, 3, 7, 15, 20, 31, 41]),
    ];
    for (g, k, w) in words {
        out.push(spec(format!("ooc/filler-{g}-{k}"), EntryKind::OocFiller, FILLER, None, move || {
            Ok(ooc_payload(g, k, &[w]))
        }));
    }
    out
}

pub(super) fn all() -> Vec<Spec> {
    let mut v = sdfs();
    v.extend(dfs());
    v.extend(witnesses());
    v.extend(others());
    v
}
