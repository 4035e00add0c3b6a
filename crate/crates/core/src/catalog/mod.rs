//! Embedded designs, each verified once when the catalog is first read.

mod data;
mod generators;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

pub use generators::{paley_sdf_1, paley_sdf_2, paley_sdf_3, singer_sdf, twin_prime_sdf, z4_4_6p};

use crate::algebra::FiniteField;
use crate::designs::{develop, is_automorphism, verify_bibd, Design, Permutation};
use crate::differences::{RelativeDifferenceFamily, StrongDifferenceFamily};
use crate::error::{Error, Result};
use crate::format::{verify_file, DesignFile, FieldSpec};
use crate::lifting::WitnessCollection;
use crate::ooc::{is_optimal_ooc, OpticalOrthogonalCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryKind {
    Sdf,
    Df,
    Witness,
    OocFiller,
    Bibd,
    Automorphism,
    PrimitivePoly,
}

impl EntryKind {
    pub const ALL: [EntryKind; 7] = [
        EntryKind::Sdf,
        EntryKind::Df,
        EntryKind::Witness,
        EntryKind::OocFiller,
        EntryKind::Bibd,
        EntryKind::Automorphism,
        EntryKind::PrimitivePoly,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Sdf => "sdf",
            EntryKind::Df => "df",
            EntryKind::Witness => "witness",
            EntryKind::OocFiller => "ooc_filler",
            EntryKind::Bibd => "bibd",
            EntryKind::Automorphism => "automorphism",
            EntryKind::PrimitivePoly => "primitive_poly",
        }
    }
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for EntryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EntryKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown entry kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    File(DesignFile),
    /// Cycle notation on `0..points`.
    Permutation {
        points: u32,
        cycles: String,
    },
    Polynomial(FieldSpec),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: EntryKind,
    pub payload: Payload,
    pub provenance: &'static str,
    /// Type label `d`. Only labels backed by a pattern annotation or a
    /// witness are checked; see [`CatalogEntry::type_checked`].
    pub declared_type: Option<u32>,
}

impl CatalogEntry {
    pub fn file(&self) -> Option<&DesignFile> {
        match &self.payload {
            Payload::File(f) => Some(f),
            _ => None,
        }
    }

    fn need_file(&self) -> Result<&DesignFile> {
        self.file().ok_or_else(|| Error::Invalid(format!("{} has no design file payload", self.id)))
    }

    pub fn sdf(&self) -> Result<StrongDifferenceFamily> {
        self.need_file()?.to_sdf()
    }

    /// The DF payload; for `bibd/…` the base block over `Z_v`.
    pub fn df(&self) -> Result<RelativeDifferenceFamily> {
        self.need_file()?.to_df()
    }

    pub fn witness(&self) -> Result<WitnessCollection> {
        self.need_file()?.to_witness()
    }

    pub fn ooc(&self) -> Result<OpticalOrthogonalCode> {
        self.need_file()?.to_ooc()
    }

    /// The developed BIBD of a `bibd/…` entry.
    pub fn design(&self) -> Result<Design> {
        develop(&self.df()?)
    }

    pub fn permutation(&self) -> Result<Permutation> {
        match &self.payload {
            Payload::Permutation { points, cycles } => Permutation::parse_cycles(cycles, *points),
            _ => Err(Error::Invalid(format!("{} is not a permutation", self.id))),
        }
    }

    pub fn field(&self) -> Result<FiniteField> {
        match &self.payload {
            Payload::Polynomial(f) => {
                let m: Vec<i64> = f.modulus.iter().map(|&c| c as i64).collect();
                FiniteField::new(f.p, f.e, Some(&m))
            }
            _ => Err(Error::Invalid(format!("{} is not a polynomial", self.id))),
        }
    }

    /// Whether the declared type is machine-checked: a pattern annotation
    /// for SDFs, the coset factoring for witnesses.
    pub fn type_checked(&self) -> bool {
        match (&self.payload, self.declared_type) {
            (Payload::File(f), Some(_)) => f.pattern.is_some() || self.kind == EntryKind::Witness,
            _ => false,
        }
    }

    /// JSON export: design files as they are, other payloads as small
    /// objects.
    pub fn to_json(&self) -> String {
        match &self.payload {
            Payload::File(f) => f.to_json(),
            Payload::Permutation { points, cycles } => {
                format!("{}\n", serde_json::json!({ "points": points, "cycles": cycles }))
            }
            Payload::Polynomial(f) => format!("{}\n", serde_json::json!(f)),
        }
    }
}

/// A catalog slot: the entry, or why it failed to build or verify.
struct Slot {
    id: String,
    entry: std::result::Result<Arc<CatalogEntry>, String>,
}

fn check(e: &CatalogEntry) -> std::result::Result<(), String> {
    let ok_or = |r: Result<bool>, what: &str| match r {
        Ok(true) => Ok(()),
        Ok(false) => Err(what.to_string()),
        Err(err) => Err(err.to_string()),
    };
    match e.kind {
        EntryKind::Sdf | EntryKind::Df | EntryKind::Witness => {
            let v = verify_file(e.need_file().map_err(|x| x.to_string())?).map_err(|x| x.to_string())?;
            if v.ok {
                Ok(())
            } else {
                Err(v.detail)
            }
        }
        EntryKind::OocFiller => ok_or(e.ooc().map(|c| is_optimal_ooc(&c)), "filler is not an optimal OOC"),
        EntryKind::Bibd => {
            let k = e.df().map_err(|x| x.to_string())?.k;
            let d = e.design().map_err(|x| x.to_string())?;
            verify_bibd(&d, k).map_err(|v| v.to_string())
        }
        EntryKind::Automorphism => {
            let d = bibd_31().map_err(|x| x.to_string())?;
            ok_or(e.permutation().and_then(|p| is_automorphism(&d, &p)), "not an automorphism of the (31,6,1)-BIBD")
        }
        EntryKind::PrimitivePoly => e.field().map(|_| ()).map_err(|x| x.to_string()),
    }
}

fn bibd_31() -> Result<Design> {
    let g = crate::algebra::AbelianGroup::cyclic(31)?;
    develop(&RelativeDifferenceFamily::new(g, vec![0], vec![data::BIBD_BASE.to_vec()], 6, 1))
}

fn slots() -> &'static [Slot] {
    static SLOTS: OnceLock<Vec<Slot>> = OnceLock::new();
    SLOTS.get_or_init(|| {
        data::all()
            .into_par_iter()
            .map(|s| {
                let entry = (s.build)().map_err(|e| e.to_string()).and_then(|payload| {
                    let e = CatalogEntry {
                        id: s.id.clone(),
                        kind: s.kind,
                        payload,
                        provenance: s.provenance,
                        declared_type: s.declared_type,
                    };
                    check(&e)?;
                    Ok(Arc::new(e))
                });
                Slot { id: s.id, entry }
            })
            .collect()
    })
}

/// The stored, verified entry. Entries that failed verification at load
/// are reported as errors.
pub fn catalog_get(id: &str) -> Result<Arc<CatalogEntry>> {
    let slot = slots().iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
    slot.entry.clone().map_err(|why| Error::Invalid(format!("catalog entry {id} failed verification: {why}")))
}

/// Verified entries of the given kind, or of every kind, in catalog order.
pub fn catalog_list(kind: Option<EntryKind>) -> Vec<Arc<CatalogEntry>> {
    slots().iter().filter_map(|s| s.entry.as_ref().ok()).filter(|e| kind.is_none_or(|k| e.kind == k)).cloned().collect()
}

/// Every id with its load failure, if any.
pub fn catalog_status() -> Vec<(String, Option<String>)> {
    slots().iter().map(|s| (s.id.clone(), s.entry.as_ref().err().cloned())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differences::verify_sdf;

    #[test]
    fn every_entry_verifies() {
        let failed: Vec<_> = catalog_status().into_iter().filter(|(_, e)| e.is_some()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(catalog_list(Some(EntryKind::Df)).len(), 9);
        assert_eq!(catalog_list(Some(EntryKind::OocFiller)).len(), 13);
        assert_eq!(catalog_list(Some(EntryKind::Witness)).len(), 5);
    }

    #[test]
    fn spot_checks() {
        let s = catalog_get("sdf/z12-5-20").unwrap().sdf().unwrap();
        assert_eq!(&s.blocks[..2], &[vec![0, 0, 0, 6, 6], vec![0, 0, 0, 0, 6]]);
        assert!(s.type2.is_some());
        let b = catalog_get("bibd/31-6-1").unwrap();
        assert_eq!(b.df().unwrap().blocks, vec![vec![0, 1, 3, 8, 12, 18]]);
        assert_eq!(b.design().unwrap().blocks.len(), 31);
        let c = catalog_get("ooc/filler-63-8").unwrap().ooc().unwrap();
        assert_eq!(c.codewords, vec![vec![0, 1, 3, 7, 15, 20, 31, 41]]);
        assert!(matches!(catalog_get("sdf/nope"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn witnesses_project_onto_their_sdfs() {
        for (w, s) in [
            ("witness/z2-f41", "sdf/z2-5-20"),
            ("witness/z10-f13", "sdf/z10-5-12"),
            ("witness/z45-f5", "sdf/z45-5-4"),
            ("witness/z30-f25", "sdf/z30-6-6"),
            ("witness/z30-f49", "sdf/z30-6-6"),
        ] {
            let w = catalog_get(w).unwrap().witness().unwrap();
            let s = catalog_get(s).unwrap().sdf().unwrap();
            assert!(crate::lifting::verify_type_witness(&w, &s, w.type_d), "{w:?}");
        }
    }

    #[test]
    fn table_types() {
        for e in catalog_list(Some(EntryKind::Sdf)) {
            let s = e.sdf().unwrap();
            verify_sdf(&s).unwrap();
            if e.provenance.starts_with("type-2") {
                assert!(s.type2.is_some(), "{}", e.id);
            }
            if e.provenance.starts_with("type-4") {
                assert!(s.type4.is_some(), "{}", e.id);
            }
            if e.id.starts_with("sdf/lit/") {
                assert!(!e.type_checked());
            }
        }
    }

    #[test]
    fn automorphisms_and_fields() {
        let p = catalog_get("aut/31-6-1-order3").unwrap().permutation().unwrap();
        let mut want = vec![1];
        want.extend([3; 10]);
        assert_eq!(crate::designs::cycle_structure(&p), want);
        let f = catalog_get("poly/gf49").unwrap().field().unwrap();
        assert_eq!(f.order(), 49);
        assert!(catalog_get("poly/gf25").unwrap().sdf().is_err());
    }

    #[test]
    fn kinds_parse() {
        for k in EntryKind::ALL {
            assert_eq!(k.as_str().parse::<EntryKind>().unwrap(), k);
        }
        assert!("table".parse::<EntryKind>().is_err());
    }
}
