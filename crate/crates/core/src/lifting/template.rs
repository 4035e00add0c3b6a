use std::collections::BTreeMap;

use super::forms::{Gaussian, LinearForm, UnitGroup};
use crate::algebra::{Element, FiniteField};
use crate::differences::{pattern_check_type2, pattern_check_type4, StrongDifferenceFamily};
use crate::error::{Error, Result};

/// A point `(g, f)` of `G × F_q` with symbolic second coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPoint {
    pub g: Element,
    pub form: LinearForm,
}

/// Variable `y_{block, index}`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Variable {
    pub block: usize,
    pub index: usize,
}

/// Symbolic lift of a type-2 or type-4 SDF into `G × F_q`.
///
/// `constraint_map[g]` is `L_g`, the fiber of differences over `g` with the
/// unit group factored out, each form stored as its canonical orbit
/// representative.
#[derive(Clone, Debug)]
pub struct WitnessTemplate {
    pub source: StrongDifferenceFamily,
    pub type_d: u32,
    pub units: UnitGroup,
    pub symbolic_blocks: Vec<Vec<SymbolicPoint>>,
    pub variables: Vec<Variable>,
    pub constraint_map: Vec<Vec<LinearForm>>,
    /// Type 4: ids of `y_{1,1}, …, y_{1,r}` in the distinguished block.
    pub distinguished_vars: Vec<usize>,
}

impl WitnessTemplate {
    pub fn variable_names(&self) -> Vec<String> {
        self.variables.iter().map(|v| format!("y{},{}", v.block, v.index)).collect()
    }

    /// Size every `L_g` must have.
    pub fn fiber_size(&self) -> usize {
        (self.source.mu / self.type_d) as usize
    }

    /// Renders `L_g` with variable names, one line per `g`.
    pub fn describe_constraints(&self) -> String {
        let names = self.variable_names();
        let mut out = String::new();
        for (g, lg) in self.constraint_map.iter().enumerate() {
            let forms: Vec<String> = lg.iter().map(|f| f.display(&names).to_string()).collect();
            let label = self.source.group.to_tuple(g as Element);
            out.push_str(&format!("L{label:?} = {{{}}}\n", forms.join(", ")));
        }
        out
    }
}

struct Builder {
    variables: Vec<Variable>,
}

impl Builder {
    fn fresh(&mut self, block: usize, count: usize) -> Vec<LinearForm> {
        (1..=count)
            .map(|index| {
                self.variables.push(Variable { block, index });
                LinearForm::var(self.variables.len() - 1)
            })
            .collect()
    }
}

fn scaled(block: &[SymbolicPoint], u: Gaussian) -> Vec<SymbolicPoint> {
    block.iter().map(|p| SymbolicPoint { g: p.g, form: p.form.scale(u) }).collect()
}

fn fresh_block(b: &mut Builder, s: &StrongDifferenceFamily, i: usize, label: usize) -> Vec<SymbolicPoint> {
    let forms = b.fresh(label, s.k);
    s.blocks[i].iter().zip(forms).map(|(&g, form)| SymbolicPoint { g, form }).collect()
}

/// Symbolic blocks for a type-2 SDF.
pub fn build_type2_template(s: &StrongDifferenceFamily) -> Result<WitnessTemplate> {
    pattern_check_type2(s)?;
    let p = s.type2.as_ref().expect("checked");
    let shapes: BTreeMap<usize, (Element, Vec<Element>)> = p.sigma1.iter().copied().zip(p.sigma1_shapes(s)?).collect();
    let in_sigma2: Vec<bool> = (0..s.len()).map(|i| p.sigma2.contains(&i)).collect();
    let partner: BTreeMap<usize, usize> = p.sigma3.chunks(2).map(|c| (c[0], c[1])).collect();

    let mut b = Builder { variables: Vec::new() };
    let mut blocks: Vec<Option<Vec<SymbolicPoint>>> = vec![None; s.len()];
    let mut label = 0;
    for i in 0..s.len() {
        if blocks[i].is_some() {
            continue;
        }
        label += 1;
        if let Some((delta, xs)) = shapes.get(&i) {
            let ys = b.fresh(label, xs.len());
            let mut pts = Vec::with_capacity(s.k);
            if s.k % 2 == 1 {
                pts.push(SymbolicPoint { g: 0, form: LinearForm::zero() });
            }
            for (&x, y) in xs.iter().zip(ys) {
                pts.push(SymbolicPoint { g: x, form: y.clone() });
                pts.push(SymbolicPoint { g: s.group.add(*delta, x), form: y.scale(Gaussian::ONE.neg()) });
            }
            blocks[i] = Some(pts);
        } else if in_sigma2[i] {
            blocks[i] = Some(fresh_block(&mut b, s, i, label));
        } else {
            let j = partner[&i];
            let c = fresh_block(&mut b, s, i, label);
            blocks[j] = Some(scaled(&c, Gaussian::ONE.neg()));
            blocks[i] = Some(c);
        }
    }
    let blocks: Vec<_> = blocks.into_iter().map(Option::unwrap).collect();
    finish(s, 2, UnitGroup::Sign, blocks, b.variables, Vec::new())
}

/// Symbolic blocks for a type-4 SDF over a field with `q ≡ 1 (mod 4)`.
pub fn build_type4_template(s: &StrongDifferenceFamily, field: &FiniteField) -> Result<WitnessTemplate> {
    field.primitive_fourth_root()?;
    pattern_check_type4(s)?;
    let p = s.type4.as_ref().expect("checked");
    if s.mu as usize != 4 * (s.k / 4) {
        return Err(Error::Pattern(format!("mu = {} but 4*floor(k/4) = {}", s.mu, 4 * (s.k / 4))));
    }
    let xs = p.base_points(s)?;
    let mut b = Builder { variables: Vec::new() };
    let mut blocks: Vec<Option<Vec<SymbolicPoint>>> = vec![None; s.len()];

    let ys = b.fresh(p.distinguished + 1, xs.len());
    let distinguished_vars: Vec<usize> = (0..xs.len()).collect();
    let xi = Gaussian::XI;
    let mut pts = Vec::with_capacity(s.k);
    if s.k % 4 == 1 {
        pts.push(SymbolicPoint { g: 0, form: LinearForm::zero() });
    }
    for (&x, y) in xs.iter().zip(ys) {
        let nx = s.group.neg(x);
        pts.push(SymbolicPoint { g: x, form: y.clone() });
        pts.push(SymbolicPoint { g: x, form: y.scale(Gaussian::ONE.neg()) });
        pts.push(SymbolicPoint { g: nx, form: y.scale(xi) });
        pts.push(SymbolicPoint { g: nx, form: y.scale(xi.neg()) });
    }
    blocks[p.distinguished] = Some(pts);

    for quad in p.sigma2.chunks(4) {
        let c = fresh_block(&mut b, s, quad[0], quad[0] + 1);
        for (t, &u) in [xi, Gaussian::ONE.neg(), xi.neg()].iter().enumerate() {
            blocks[quad[t + 1]] = Some(scaled(&c, u));
        }
        blocks[quad[0]] = Some(c);
    }
    let blocks: Vec<_> = blocks.into_iter().map(Option::unwrap).collect();
    finish(s, 4, UnitGroup::Fourth, blocks, b.variables, distinguished_vars)
}

fn finish(
    s: &StrongDifferenceFamily,
    type_d: u32,
    units: UnitGroup,
    symbolic_blocks: Vec<Vec<SymbolicPoint>>,
    variables: Vec<Variable>,
    distinguished_vars: Vec<usize>,
) -> Result<WitnessTemplate> {
    let constraint_map = factor_fibers(s, units, &symbolic_blocks)?;
    let want = (s.mu / type_d) as usize;
    if let Some((g, lg)) = constraint_map.iter().enumerate().find(|(_, lg)| lg.len() != want) {
        return Err(Error::Pattern(format!("factoring fails: |L_{g}| = {} but mu/{type_d} = {want}", lg.len())));
    }
    Ok(WitnessTemplate {
        source: s.clone(),
        type_d,
        units,
        symbolic_blocks,
        variables,
        constraint_map,
        distinguished_vars,
    })
}

/// Expands all symbolic differences and divides each fiber by `U`.
fn factor_fibers(
    s: &StrongDifferenceFamily,
    units: UnitGroup,
    blocks: &[Vec<SymbolicPoint>],
) -> Result<Vec<Vec<LinearForm>>> {
    let n = s.group.order() as usize;
    let mut fibers: Vec<BTreeMap<LinearForm, Vec<usize>>> = vec![BTreeMap::new(); n];
    let unit_index = |u: Gaussian| units.units().iter().position(|&w| w == u).expect("unit");
    for block in blocks {
        for (i, a) in block.iter().enumerate() {
            for (j, b) in block.iter().enumerate() {
                if i == j {
                    continue;
                }
                let g = s.group.sub(a.g, b.g);
                let f = a.form.sub(&b.form);
                if f.is_zero() {
                    return Err(Error::Pattern(format!("factoring fails: zero difference over g = {g}")));
                }
                let (rep, u) = f.canonical(units);
                fibers[g as usize].entry(rep).or_insert_with(|| vec![0; units.order()])[unit_index(u)] += 1;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for (g, fiber) in fibers.into_iter().enumerate() {
        let mut lg = Vec::new();
        for (rep, counts) in fiber {
            if counts.iter().any(|&c| c != counts[0]) {
                return Err(Error::Pattern(format!(
                    "factoring fails: fiber over g = {g} is not a union of unit orbits"
                )));
            }
            lg.extend(std::iter::repeat_n(rep, counts[0]));
        }
        out.push(lg);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AbelianGroup;
    use crate::differences::{Type2Pattern, Type4Pattern};

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
        StrongDifferenceFamily::new(g, blocks, 5, 12).with_type2(Type2Pattern {
            sigma1: vec![0],
            sigma2: vec![1],
            sigma3: vec![2, 3, 4, 5],
        })
    }

    /// Parses `"y1,1 - y2,3"`-style forms against the template's names.
    fn parse(t: &WitnessTemplate, text: &str) -> LinearForm {
        let names = t.variable_names();
        let toks: Vec<&str> = text.split_whitespace().collect();
        let mut terms = vec![("+", toks[0])];
        terms.extend(toks[1..].chunks(2).map(|c| (c[0], c[1])));
        let mut f = LinearForm::zero();
        for (sign, term) in terms {
            let (coef, name) = match term.strip_prefix('2') {
                Some(rest) => (2, rest),
                None => (1, term),
            };
            let v = names.iter().position(|n| n == name).unwrap();
            let c = if sign == "-" { -coef } else { coef };
            f = f.add(&LinearForm::from_terms([(v, Gaussian::new(c, 0))]));
        }
        f.canonical(t.units).0
    }

    #[test]
    fn z10_template_matches_printed_lists() {
        let t = build_type2_template(&z10_5_12()).unwrap();
        assert_eq!(t.symbolic_blocks.len(), 6);
        let printed = [
            "2y1,1 | 2y1,2 | y2,1 - y2,2 | y2,1 - y2,3 | y2,3 - y2,2 | y2,4 - y2,5",
            "y3,2 - y3,1 | y3,2 - y3,5 | y3,5 - y3,4 | y3,4 - y3,3 | y4,2 - y4,5 | y4,5 - y4,4",
            "y3,1 - y3,5 | y3,5 - y3,3 | y3,2 - y3,4 | y4,1 - y4,2 | y4,2 - y4,4 | y4,4 - y4,3",
            "y1,1 | y1,2 | y3,4 - y3,1 | y3,2 - y3,3 | y4,1 - y4,5 | y4,5 - y4,3",
            "y1,2 - y1,1 | y1,2 + y1,1 | y4,4 - y4,1 | y4,1 - y4,3 | y4,3 - y4,2 | y3,3 - y3,1",
            "y2,4 - y2,1 | y2,4 - y2,2 | y2,4 - y2,3 | y2,5 - y2,1 | y2,5 - y2,2 | y2,5 - y2,3",
        ];
        for (g, line) in printed.iter().enumerate() {
            let mut want: Vec<LinearForm> = line.split(" | ").map(|f| parse(&t, f)).collect();
            want.sort();
            assert_eq!(t.constraint_map[g], want, "L_{g}");
            assert_eq!(t.constraint_map[(10 - g) % 10], want, "L_-{g}");
        }
    }

    #[test]
    fn projection_and_counts() {
        let s = z10_5_12();
        let t = build_type2_template(&s).unwrap();
        for (sym, block) in t.symbolic_blocks.iter().zip(&s.blocks) {
            let mut a: Vec<_> = sym.iter().map(|p| p.g).collect();
            let mut b = block.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        let total: usize = t.constraint_map.iter().map(Vec::len).sum();
        assert_eq!(total * 2, s.len() * s.k * (s.k - 1));
    }

    #[test]
    fn z2_5_20_all_sigma2() {
        let g = AbelianGroup::cyclic(2).unwrap();
        let s = StrongDifferenceFamily::new(g, vec![vec![0, 0, 1, 1, 1], vec![0, 1, 1, 1, 1]], 5, 20)
            .with_type2(Type2Pattern { sigma1: vec![], sigma2: vec![0, 1], sigma3: vec![] });
        let t = build_type2_template(&s).unwrap();
        assert_eq!(t.symbolic_blocks.len(), 2);
        assert!(t.constraint_map.iter().all(|lg| lg.len() == 10));
    }

    #[test]
    fn odd_sigma1_with_nonzero_shift_fails_to_factor() {
        // [0, x, δ+x] with δ ≠ 0 sends y and -y to different fibers.
        let g = AbelianGroup::cyclic(3).unwrap();
        let s = StrongDifferenceFamily::new(g, vec![vec![0, 1, 2]], 3, 2).with_type2(Type2Pattern {
            sigma1: vec![0],
            sigma2: vec![],
            sigma3: vec![],
        });
        if crate::differences::pattern_check_type2(&s).is_ok() {
            assert!(matches!(build_type2_template(&s), Err(Error::Pattern(m)) if m.contains("factoring")));
        }
    }

    #[test]
    fn type4_only_sdf_rejected_by_type2_builder() {
        let g = AbelianGroup::cyclic(45).unwrap();
        let mut blocks = vec![vec![0, 1, 1, 44, 44]];
        blocks.extend(std::iter::repeat_n(vec![0, 3, 7, 13, 30], 4));
        blocks.extend(std::iter::repeat_n(vec![0, 5, 14, 26, 34], 4));
        let s = StrongDifferenceFamily::new(g, blocks, 5, 4)
            .with_type4(Type4Pattern { distinguished: 0, sigma2: (1..9).collect() });
        assert!(build_type2_template(&s).is_err());
        let f13 = FiniteField::prime(13).unwrap();
        let t = build_type4_template(&s, &f13).unwrap();
        assert_eq!(t.symbolic_blocks.len(), 9);
        assert!(t.constraint_map.iter().all(|lg| lg.len() == 1));
        assert_eq!(t.variables[1], Variable { block: 2, index: 1 });
        assert_eq!(t.variables[6], Variable { block: 6, index: 1 });
        let f7 = FiniteField::prime(7).unwrap();
        assert!(matches!(build_type4_template(&s, &f7), Err(Error::Congruence(_))));
    }
}
