mod common;

use std::sync::Arc;

use proptest::prelude::*;

use difforge::algebra::{AbelianGroup, Element, FiniteField};
use difforge::catalog::{catalog_get, catalog_list, EntryKind};
use difforge::designs::{develop, verify_gdd, Design};
use difforge::differences::{
    delta_block, verify_relative_df, verify_sdf, RelativeDifferenceFamily, StrongDifferenceFamily,
};
use difforge::format::DesignFile;
use difforge::lifting::{build_type2_template, build_type4_template, evaluate, fix_permutation, qbound};
use difforge::ooc::{search_ooc_exhaustive, verify_ooc, OpticalOrthogonalCode, SearchOptions, SearchOutcome};

use common::{oracle_df, oracle_sdf};

const FIELDS: [(u32, u32); 9] = [(7, 1), (13, 1), (41, 1), (2, 3), (3, 2), (5, 2), (7, 2), (3, 3), (2, 5)];

fn field(i: usize) -> FiniteField {
    let (p, e) = FIELDS[i % FIELDS.len()];
    FiniteField::new(p, e, None).unwrap()
}

fn group_with(orders: &[u32], f: Option<usize>) -> AbelianGroup {
    let g = AbelianGroup::product(orders).unwrap();
    match f {
        Some(i) => g.with_field(Arc::new(field(i))).unwrap(),
        None => g,
    }
}

fn arb_group() -> impl Strategy<Value = AbelianGroup> {
    (prop::collection::vec(2u32..9, 1..3), prop::option::of(0usize..FIELDS.len()))
        .prop_map(|(orders, f)| group_with(&orders, f))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_and_logs(i in 0usize..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 && b != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            let la = f.discrete_log(a).unwrap() as u64;
            let lb = f.discrete_log(b).unwrap() as u64;
            let lab = f.discrete_log(f.mul(a, b)).unwrap() as u64;
            prop_assert_eq!(lab, (la + lb) % (q as u64 - 1));
            prop_assert_eq!(f.omega_pow(la as i64), a);
        }
    }

    #[test]
    fn delta_is_symmetric_and_translation_invariant(
        g in arb_group(),
        raw in prop::collection::vec(any::<u32>(), 2..7),
        shift in any::<u32>(),
    ) {
        let n = g.order();
        let block: Vec<Element> = raw.iter().map(|x| x % n).collect();
        let d = delta_block(&g, &block).unwrap();
        prop_assert_eq!(d.total(), (block.len() * (block.len() - 1)) as u64);
        for x in g.elements() {
            prop_assert_eq!(d.count(x), d.count(g.neg(x)));
        }
        let moved: Vec<Element> = block.iter().map(|&x| g.add(x, shift % n)).collect();
        prop_assert!(delta_block(&g, &moved).unwrap() == d);
        let oracle = common::oracle_counts(&g, &[block]);
        prop_assert!(g.elements().all(|x| d.count(x) == oracle[x as usize]));
    }

    #[test]
    fn tuples_round_trip(g in arb_group(), x in any::<u32>()) {
        let x = x % g.order();
        prop_assert_eq!(g.from_tuple(&g.to_tuple(x)).unwrap(), x);
    }

    #[test]
    fn qbound_grows(d in 1u32..40, m in 2u32..30) {
        let here = qbound(d, m);
        prop_assert!(here.cmp_exact(&qbound(d, m + 1)).is_lt());
        prop_assert!(here.cmp_exact(&qbound(d + 1, m)).is_lt());
        prop_assert!(here.to_f64() <= qbound(d, m + 1).to_f64());
    }

    #[test]
    fn fix_permutation_is_valid(alpha in (5usize..10).prop_flat_map(|r| Just((0..r).collect::<Vec<_>>()).prop_shuffle()), a in 0usize..10) {
        let r = alpha.len();
        let a = a % r;
        let pi = fix_permutation(r, a, &alpha).unwrap();
        let mut sorted = pi.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..r).collect::<Vec<_>>());
        for x in 0..r {
            prop_assert!(alpha[x] == x || (pi[alpha[x]] + r - pi[x]) % r != a);
        }
    }

    #[test]
    fn ooc_verdict_matches_oracle(v in 10u32..80, words in prop::collection::vec(prop::collection::btree_set(0u32..80, 3), 1..4)) {
        let codewords: Vec<Vec<u32>> = words.into_iter().map(|w| w.into_iter().map(|x| x % v).collect()).collect();
        prop_assume!(codewords.iter().all(|w| { let mut s = w.clone(); s.sort(); s.dedup(); s.len() == 3 }));
        let c = OpticalOrthogonalCode::new(v, 3, codewords.clone());
        let mut count = vec![0u32; v as usize];
        for w in &c.codewords {
            for &a in w {
                for &b in w {
                    if a != b {
                        count[((a + v - b) % v) as usize] += 1;
                    }
                }
            }
        }
        let report = verify_ooc(&c);
        prop_assert_eq!(report.valid, count.iter().all(|&n| n <= 1));
        if report.valid {
            let missing: Vec<u32> = (0..v).filter(|&x| count[x as usize] == 0).collect();
            prop_assert_eq!(report.missing, missing);
        }
    }

    #[test]
    fn ooc_search_results_are_sound(v in 13u32..60, k in 3usize..5) {
        let r = search_ooc_exhaustive(v, k, 1, &SearchOptions { node_budget: Some(1_000_000), threads: 1 }).unwrap();
        match r.outcome {
            SearchOutcome::Found(w) => prop_assert!(verify_ooc(&OpticalOrthogonalCode::new(v, k, vec![w])).valid),
            // A Golomb ruler of length at most k^2 fits once v exceeds twice that.
            _ => prop_assert!(v as usize <= 2 * k * k),
        }
    }
}

fn sdf_ids() -> Vec<String> {
    catalog_list(Some(EntryKind::Sdf)).iter().map(|e| e.id.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sdf_mutation_agrees_with_oracle(i in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), y in any::<u32>()) {
        let ids = sdf_ids();
        let mut s: StrongDifferenceFamily = catalog_get(&ids[i.index(ids.len())]).unwrap().sdf().unwrap();
        let bi = b.index(s.blocks.len());
        let ji = j.index(s.k);
        let n = s.group.order();
        s.blocks[bi][ji] = (s.blocks[bi][ji] + 1 + y % (n - 1)) % n;
        prop_assert_eq!(verify_sdf(&s).is_ok(), oracle_sdf(&s));
    }

    #[test]
    fn df_mutation_is_caught(i in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), y in any::<u32>()) {
        let dfs = catalog_list(Some(EntryKind::Df));
        let mut df: RelativeDifferenceFamily = dfs[i.index(dfs.len())].df().unwrap();
        let bi = b.index(df.blocks.len());
        let ji = j.index(df.k);
        let n = df.group.order();
        let new = (df.blocks[bi][ji] + 1 + y % (n - 1)) % n;
        prop_assume!(!df.blocks[bi].contains(&new));
        df.blocks[bi][ji] = new;
        prop_assert!(verify_relative_df(&df).unwrap().is_err());
        prop_assert!(!oracle_df(&df));
    }

    #[test]
    fn template_fibers_match_differences(i in 0usize..6, seed in prop::collection::vec(1u32..10_000, 64)) {
        let (id, q) = [("sdf/z10-5-12", 13u32), ("sdf/z2-5-20", 41), ("sdf/z30-6-6", 19), ("sdf/z35-7-6", 13), ("sdf/z63-8-8", 73), ("sdf/z45-5-4", 5)][i];
        let s = catalog_get(id).unwrap().sdf().unwrap();
        let f = Arc::new(FiniteField::of_order(q).unwrap());
        let t = if s.type4.is_some() { build_type4_template(&s, &f).unwrap() } else { build_type2_template(&s).unwrap() };
        let values: Vec<Element> = seed.iter().take(t.variables.len()).map(|v| 1 + v % (q - 1)).collect();
        prop_assume!(values.len() == t.variables.len());
        let w = evaluate(&t, f.clone(), &values).unwrap();
        let mut want: Vec<Vec<Element>> = s.blocks.iter().map(|b| { let mut b = b.clone(); b.sort_unstable(); b }).collect();
        let mut got = w.projection();
        want.sort();
        got.sort();
        prop_assert_eq!(got, want);
        prop_assert_eq!(w.mu(), Some(s.mu));
        let xi = if t.type_d == 4 { f.primitive_fourth_root().unwrap() } else { 0 };
        let mut fibers = vec![Vec::new(); s.group.order() as usize];
        for b in &w.blocks {
            for (x, &a) in b.iter().enumerate() {
                for (y, &c) in b.iter().enumerate() {
                    if x != y {
                        let (g, v) = w.group.split(w.group.sub(a, c));
                        fibers[g as usize].push(v);
                    }
                }
            }
        }
        for (g, lg) in t.constraint_map.iter().enumerate() {
            prop_assert_eq!(lg.len(), t.fiber_size());
            let mut expanded: Vec<Element> = lg
                .iter()
                .flat_map(|l| t.units.units().iter().map(|&u| l.scale(u).eval(&f, xi, &values)).collect::<Vec<_>>())
                .collect();
            expanded.sort_unstable();
            fibers[g].sort_unstable();
            prop_assert_eq!(&expanded, &fibers[g]);
        }
    }
}

fn gdd_2x41() -> Design {
    develop(&catalog_get("df/2x41-5").unwrap().df().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn design_mutation_is_caught(b in any::<prop::sample::Index>(), j in 0usize..5, p in any::<u32>(), drop in any::<bool>()) {
        let mut d = gdd_2x41();
        prop_assert!(verify_gdd(&d, &[5]).is_ok());
        let bi = b.index(d.blocks.len());
        if drop {
            d.blocks.remove(bi);
        } else {
            let new = p % d.points;
            prop_assume!(!d.blocks[bi].contains(&new));
            d.blocks[bi][j] = new;
        }
        prop_assert!(verify_gdd(&d, &[5]).is_err());
    }
}

#[test]
fn fields_of_equal_order_are_isomorphic() {
    for (a, b) in [("poly/gf25", (5, 2)), ("poly/gf49", (7, 2))] {
        let fa = catalog_get(a).unwrap().field().unwrap();
        let fb = FiniteField::new(b.0, b.1, None).unwrap();
        let m = fa.modulus();
        let root = fb
            .nonzero()
            .find(|&r| {
                let mut acc = 0;
                for &c in m.iter().rev() {
                    acc = fb.add(fb.mul(acc, r), fb.from_int(c as i64));
                }
                acc == 0
            })
            .expect("modulus has a root");
        let phi = |x: Element| {
            fa.coordinates(x).iter().rev().fold(0, |acc, &c| fb.add(fb.mul(acc, root), fb.from_int(c as i64)))
        };
        let mut image: Vec<Element> = (0..fa.order()).map(phi).collect();
        for x in 0..fa.order() {
            for y in 0..fa.order() {
                assert_eq!(phi(fa.add(x, y)), fb.add(phi(x), phi(y)));
                assert_eq!(phi(fa.mul(x, y)), fb.mul(phi(x), phi(y)));
            }
        }
        image.sort_unstable();
        assert_eq!(image, (0..fb.order()).collect::<Vec<_>>());
    }
}

#[test]
fn catalog_files_round_trip() {
    for e in catalog_list(None) {
        let Some(f) = e.file() else { continue };
        let text = f.to_json();
        let back = DesignFile::from_json(&text).unwrap();
        assert_eq!(&back, f, "{}", e.id);
        assert_eq!(back.to_json(), text);
        if e.kind == EntryKind::Sdf {
            let s = back.to_sdf().unwrap();
            assert_eq!(&DesignFile::from_sdf(&s), f, "{}", e.id);
        }
    }
}
