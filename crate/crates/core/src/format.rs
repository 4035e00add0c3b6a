//! JSON design files. Elements are integer tuples: cyclic coordinates
//! first, then the field encoding.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AbelianGroup, Element, FiniteField};
use crate::designs::{verify_bibd, verify_gdd, Design};
use crate::differences::{
    field_fiber_subgroup, pattern_check_type2, pattern_check_type4, verify_relative_df, verify_sdf, Block,
    RelativeDifferenceFamily, StrongDifferenceFamily, Type2Pattern, Type4Pattern,
};
use crate::error::{Error, Result};
use crate::lifting::{verify_type_witness, WitnessCollection};
use crate::ooc::{verify_ooc, OpticalOrthogonalCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FileKind {
    Sdf,
    Df,
    Witness,
    Gdd,
    Bibd,
    Ooc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    /// Ascending coefficients of the monic modulus.
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cyclic_orders: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Params {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_d: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type2Spec {
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
    pub sigma3: Vec<usize>,
    /// `δ` of each `Σ1` block, in `sigma1` order.
    #[serde(default)]
    pub delta: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type4Spec {
    pub distinguished: usize,
    pub sigma2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PatternSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type2: Option<Type2Spec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type4: Option<Type4Spec>,
}

type Tuple = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub kind: FileKind,
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<Tuple>>,
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternSpec>,
    /// Point partition of a GDD; absent means singletons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<Tuple>>>,
    pub blocks: Vec<Vec<Tuple>>,
    /// Missing differences of an OOC, emitted for reference only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missing: Option<Vec<Tuple>>,
}

fn group_spec(g: &AbelianGroup) -> GroupSpec {
    GroupSpec {
        cyclic_orders: g.cyclic_orders().to_vec(),
        field: g.field().map(|f| FieldSpec { p: f.p(), e: f.e(), modulus: f.modulus().to_vec() }),
    }
}

fn tuples(g: &AbelianGroup, xs: &[Element]) -> Vec<Tuple> {
    xs.iter().map(|&x| g.to_tuple(x)).collect()
}

fn point_tuples(xs: &[u32]) -> Vec<Tuple> {
    xs.iter().map(|&x| vec![x as i64]).collect()
}

fn sorted_sets(mut sets: Vec<Vec<Tuple>>) -> Vec<Vec<Tuple>> {
    for s in &mut sets {
        s.sort();
    }
    sets.sort();
    sets
}

impl GroupSpec {
    pub fn build(&self) -> Result<AbelianGroup> {
        let base = AbelianGroup::product(&self.cyclic_orders)?;
        match &self.field {
            None => Ok(base),
            Some(f) => {
                let m: Vec<i64> = f.modulus.iter().map(|&c| c as i64).collect();
                base.with_field(Arc::new(FiniteField::new(f.p, f.e, Some(&m))?))
            }
        }
    }
}

impl DesignFile {
    pub fn from_sdf(s: &StrongDifferenceFamily) -> Self {
        let g = &s.group;
        let pattern = (s.type2.is_some() || s.type4.is_some()).then(|| PatternSpec {
            type2: s.type2.as_ref().map(|p| Type2Spec {
                sigma1: p.sigma1.clone(),
                sigma2: p.sigma2.clone(),
                sigma3: p.sigma3.clone(),
                delta: p.sigma1_shapes(s).map(|v| v.iter().map(|(d, _)| g.to_tuple(*d)).collect()).unwrap_or_default(),
            }),
            type4: s.type4.as_ref().map(|p| Type4Spec { distinguished: p.distinguished, sigma2: p.sigma2.clone() }),
        });
        DesignFile {
            kind: FileKind::Sdf,
            group: group_spec(g),
            forbidden: None,
            params: Params { k: s.k, mu: Some(s.mu), ..Default::default() },
            pattern,
            groups: None,
            blocks: s.blocks.iter().map(|b| tuples(g, b)).collect(),
            missing: None,
        }
    }

    pub fn from_df(d: &RelativeDifferenceFamily) -> Self {
        let g = &d.group;
        DesignFile {
            kind: FileKind::Df,
            group: group_spec(g),
            forbidden: Some(tuples(g, &d.forbidden)),
            params: Params { k: d.k, lambda: Some(d.lambda), ..Default::default() },
            pattern: None,
            groups: None,
            blocks: sorted_sets(d.blocks.iter().map(|b| tuples(g, b)).collect()),
            missing: None,
        }
    }

    pub fn from_witness(w: &WitnessCollection) -> Self {
        let g = &w.group;
        DesignFile {
            kind: FileKind::Witness,
            group: group_spec(g),
            forbidden: None,
            params: Params {
                k: w.blocks.first().map_or(0, Vec::len),
                mu: w.mu(),
                type_d: Some(w.type_d),
                ..Default::default()
            },
            pattern: None,
            groups: None,
            blocks: w.blocks.iter().map(|b| tuples(g, b)).collect(),
            missing: None,
        }
    }

    pub fn from_design(d: &Design, k: usize) -> Self {
        let bibd = d.groups.iter().all(|g| g.len() == 1);
        DesignFile {
            kind: if bibd { FileKind::Bibd } else { FileKind::Gdd },
            group: GroupSpec { cyclic_orders: vec![d.points], field: None },
            forbidden: None,
            params: Params { k, lambda: Some(1), ..Default::default() },
            pattern: None,
            groups: (!bibd).then(|| sorted_sets(d.groups.iter().map(|g| point_tuples(g)).collect())),
            blocks: sorted_sets(d.blocks.iter().map(|b| point_tuples(b)).collect()),
            missing: None,
        }
    }

    pub fn from_ooc(c: &OpticalOrthogonalCode) -> Self {
        let report = verify_ooc(c);
        DesignFile {
            kind: FileKind::Ooc,
            group: GroupSpec { cyclic_orders: vec![c.v], field: None },
            forbidden: None,
            params: Params { k: c.k, lambda: Some(1), ..Default::default() },
            pattern: None,
            groups: None,
            blocks: sorted_sets(c.codewords.iter().map(|w| point_tuples(w)).collect()),
            missing: report.valid.then(|| point_tuples(&report.missing)),
        }
    }

    fn elements(&self, g: &AbelianGroup, xs: &[Tuple]) -> Result<Vec<Element>> {
        xs.iter().map(|t| g.from_tuple(t)).collect()
    }

    fn element_blocks(&self, g: &AbelianGroup) -> Result<Vec<Block>> {
        self.blocks.iter().map(|b| self.elements(g, b)).collect()
    }

    fn expect_kind(&self, kind: FileKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Invalid(format!("expected a {kind:?} file, found {:?}", self.kind)));
        }
        Ok(())
    }

    pub fn to_sdf(&self) -> Result<StrongDifferenceFamily> {
        self.expect_kind(FileKind::Sdf)?;
        let g = self.group.build()?;
        let mu = self.params.mu.ok_or_else(|| Error::Invalid("sdf needs params.mu".into()))?;
        let mut s = StrongDifferenceFamily::new(g.clone(), self.element_blocks(&g)?, self.params.k, mu);
        if let Some(p) = &self.pattern {
            if let Some(t2) = &p.type2 {
                s.type2 = Some(Type2Pattern {
                    sigma1: t2.sigma1.clone(),
                    sigma2: t2.sigma2.clone(),
                    sigma3: t2.sigma3.clone(),
                });
            }
            if let Some(t4) = &p.type4 {
                s.type4 = Some(Type4Pattern { distinguished: t4.distinguished, sigma2: t4.sigma2.clone() });
            }
        }
        Ok(s)
    }

    pub fn to_df(&self) -> Result<RelativeDifferenceFamily> {
        self.expect_kind(FileKind::Df)?;
        let g = self.group.build()?;
        let forbidden = match &self.forbidden {
            Some(f) => self.elements(&g, f)?,
            None if g.field().is_some() => field_fiber_subgroup(&g),
            None => vec![0],
        };
        let lambda = self.params.lambda.unwrap_or(1);
        Ok(RelativeDifferenceFamily::new(g.clone(), forbidden, self.element_blocks(&g)?, self.params.k, lambda))
    }

    pub fn to_witness(&self) -> Result<WitnessCollection> {
        self.expect_kind(FileKind::Witness)?;
        let g = self.group.build()?;
        if g.field().is_none() {
            return Err(Error::Invalid("witness group needs a field factor".into()));
        }
        let d = self.params.type_d.ok_or_else(|| Error::Invalid("witness needs params.type_d".into()))?;
        Ok(WitnessCollection { group: g.clone(), blocks: self.element_blocks(&g)?, type_d: d })
    }

    fn point_lists(&self, v: u32, sets: &[Vec<Tuple>]) -> Result<Vec<Vec<u32>>> {
        sets.iter()
            .map(|s| {
                s.iter()
                    .map(|t| match t.as_slice() {
                        &[x] if x >= 0 && (x as u64) < v as u64 => Ok(x as u32),
                        _ => Err(Error::ElementOutOfRange(t.clone())),
                    })
                    .collect()
            })
            .collect()
    }

    fn points(&self) -> Result<u32> {
        match (self.group.cyclic_orders.as_slice(), &self.group.field) {
            (&[v], None) => Ok(v),
            _ => Err(Error::Invalid("point files use a single cyclic order".into())),
        }
    }

    pub fn to_design(&self) -> Result<Design> {
        if !matches!(self.kind, FileKind::Gdd | FileKind::Bibd) {
            return Err(Error::Invalid(format!("expected a gdd or bibd file, found {:?}", self.kind)));
        }
        let v = self.points()?;
        let blocks = self.point_lists(v, &self.blocks)?;
        Ok(match &self.groups {
            Some(gs) => Design::new(v, self.point_lists(v, gs)?, blocks),
            None => Design::bibd(v, blocks),
        })
    }

    pub fn to_ooc(&self) -> Result<OpticalOrthogonalCode> {
        self.expect_kind(FileKind::Ooc)?;
        let v = self.points()?;
        Ok(OpticalOrthogonalCode::new(v, self.params.k, self.point_lists(v, &self.blocks)?))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One key per line and one block per line, keys in declaration order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("design files serialize");
        let Value::Object(map) = value else { unreachable!() };
        let order = ["kind", "group", "forbidden", "params", "pattern", "groups", "blocks", "missing"];
        let mut out = String::from("{\n");
        let present: Vec<&str> = order.iter().copied().filter(|k| map.contains_key(*k)).collect();
        for (i, key) in present.iter().enumerate() {
            let v = &map[*key];
            out.push_str(&format!("  \"{key}\": "));
            match v {
                Value::Array(items) if matches!(*key, "groups" | "blocks") && !items.is_empty() => {
                    out.push_str("[\n");
                    for (j, item) in items.iter().enumerate() {
                        out.push_str("    ");
                        out.push_str(&item.to_string());
                        out.push_str(if j + 1 < items.len() { ",\n" } else { "\n" });
                    }
                    out.push_str("  ]");
                }
                _ => out.push_str(&v.to_string()),
            }
            out.push_str(if i + 1 < present.len() { ",\n" } else { "\n" });
        }
        out.push_str("}\n");
        out
    }
}

/// Verification verdict of a design file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileVerdict {
    pub ok: bool,
    pub detail: String,
}

impl FileVerdict {
    fn from_result<E: std::fmt::Display>(r: std::result::Result<(), E>, what: &str) -> Self {
        match r {
            Ok(()) => FileVerdict { ok: true, detail: format!("{what} verified") },
            Err(e) => FileVerdict { ok: false, detail: format!("{what} fails: {e}") },
        }
    }
}

/// Runs the verifier matching the file kind. Errors mean malformed input.
pub fn verify_file(f: &DesignFile) -> Result<FileVerdict> {
    Ok(match f.kind {
        FileKind::Sdf => {
            let s = f.to_sdf()?;
            let name = format!("({}, {}, {})-SDF", s.group, s.k, s.mu);
            let mut v = FileVerdict::from_result(verify_sdf(&s), &name);
            if v.ok && s.type2.is_some() {
                v = FileVerdict::from_result(pattern_check_type2(&s), &format!("{name} with type-2 pattern"));
            }
            if v.ok && s.type4.is_some() {
                v = FileVerdict::from_result(pattern_check_type4(&s), &format!("{name} with type-4 pattern"));
            }
            v
        }
        FileKind::Df => {
            let d = f.to_df()?;
            let name = format!("({}, |N| = {}, {}, {})-DF", d.group, d.forbidden.len(), d.k, d.lambda);
            FileVerdict::from_result(verify_relative_df(&d)?, &name)
        }
        FileKind::Witness => {
            let w = f.to_witness()?;
            let k = f.params.k;
            let mu = w.mu().ok_or_else(|| Error::Invalid("difference count is not a multiple of |G|".into()))?;
            if f.params.mu.is_some_and(|m| m != mu) {
                return Ok(FileVerdict { ok: false, detail: format!("declared mu differs from {mu}") });
            }
            let s = StrongDifferenceFamily::new(w.group.base(), w.projection(), k, mu);
            if let Err(e) = verify_sdf(&s) {
                return Ok(FileVerdict { ok: false, detail: format!("projection is not an SDF: {e}") });
            }
            let ok = verify_type_witness(&w, &s, w.type_d);
            FileVerdict {
                ok,
                detail: format!(
                    "type-{} witness over {} {}",
                    w.type_d,
                    w.group,
                    if ok { "verified" } else { "fails the coset factoring" }
                ),
            }
        }
        FileKind::Gdd | FileKind::Bibd => {
            let d = f.to_design()?;
            let k = f.params.k;
            let r = if f.kind == FileKind::Bibd { verify_bibd(&d, k) } else { verify_gdd(&d, &[k]) };
            FileVerdict::from_result(r, &format!("{}-GDD of type {}", k, d.type_string()))
        }
        FileKind::Ooc => {
            let c = f.to_ooc()?;
            let r = verify_ooc(&c);
            if !r.valid {
                FileVerdict {
                    ok: false,
                    detail: format!("({}, {}, 1)-OOC fails: {}", c.v, c.k, r.defect.unwrap_or_default()),
                }
            } else {
                FileVerdict {
                    ok: true,
                    detail: format!("({}, {}, 1)-OOC verified, {} missing differences", c.v, c.k, r.missing.len()),
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differences::infer_type2_pattern;

    #[test]
    fn sdf_round_trip() {
        let g = AbelianGroup::cyclic(10).unwrap();
        let blocks = vec![
            vec![0, 3, 3, 7, 7],
            vec![0, 0, 0, 5, 5],
            vec![0, 9, 6, 7, 8],
            vec![0, 9, 6, 7, 8],
            vec![0, 8, 4, 6, 7],
            vec![0, 8, 4, 6, 7],
        ];
        let mut s = StrongDifferenceFamily::new(g, blocks, 5, 12);
        s.type2 = infer_type2_pattern(&s);
        let f = DesignFile::from_sdf(&s);
        let text = f.to_json();
        let back = DesignFile::from_json(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json(), text);
        assert_eq!(back.to_sdf().unwrap(), s);
        assert!(verify_file(&back).unwrap().ok);
        assert!(text.contains("\"delta\":[[0]]"));
    }

    #[test]
    fn df_over_extension_field() {
        let f = Arc::new(FiniteField::new(5, 2, Some(&[2, -1, 1])).unwrap());
        let g = AbelianGroup::product(&[]).unwrap().with_field(f).unwrap();
        let file = DesignFile::from_df(&RelativeDifferenceFamily::over_field_extension(g, vec![vec![0, 1]], 2));
        let text = file.to_json();
        assert!(text.contains("\"modulus\":[2,4,1]"));
        let back = DesignFile::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(!verify_file(&back).unwrap().ok);
    }

    #[test]
    fn malformed_inputs() {
        assert!(DesignFile::from_json("{").is_err());
        let text = r#"{"kind":"sdf","group":{"cyclic_orders":[5]},"params":{"k":2},"blocks":[[[0],[1]]]}"#;
        let f = DesignFile::from_json(text).unwrap();
        assert!(verify_file(&f).is_err());
        let text = r#"{"kind":"ooc","group":{"cyclic_orders":[7]},"params":{"k":3},"blocks":[[[0],[1],[3]]]}"#;
        let f = DesignFile::from_json(text).unwrap();
        assert!(verify_file(&f).unwrap().ok);
    }
}
