use std::fmt;

use crate::algebra::{Element, FiniteField};

/// `re + im·ξ` with `ξ² = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: i32,
    pub im: i32,
}

impl Gaussian {
    pub const ONE: Gaussian = Gaussian { re: 1, im: 0 };
    pub const XI: Gaussian = Gaussian { re: 0, im: 1 };

    pub const fn new(re: i32, im: i32) -> Self {
        Gaussian { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }

    pub fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }

    pub fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    /// The rotation `u·self` with `re > 0, im ≥ 0` among the four units
    /// `u ∈ {±1, ±ξ}`, together with `u`.
    fn normalize4(self) -> (Gaussian, Gaussian) {
        let mut u = Gaussian::ONE;
        let mut c = self;
        for _ in 0..4 {
            if c.re > 0 && c.im >= 0 {
                return (c, u);
            }
            c = c.mul(Gaussian::XI);
            u = u.mul(Gaussian::XI);
        }
        (self, Gaussian::ONE)
    }

    pub fn eval(self, field: &FiniteField, xi: Element) -> Element {
        let re = field.from_int(self.re as i64);
        let im = field.from_int(self.im as i64);
        field.add(re, field.mul(im, xi))
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (r, 0) => write!(f, "{r}"),
            (0, 1) => write!(f, "ξ"),
            (0, -1) => write!(f, "-ξ"),
            (0, i) => write!(f, "{i}ξ"),
            (r, i) if i > 0 => write!(f, "({r}+{i}ξ)"),
            (r, i) => write!(f, "({r}{i}ξ)"),
        }
    }
}

/// Unit group factored out of each fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitGroup {
    /// `{±1}`
    Sign,
    /// `{±1, ±ξ}`
    Fourth,
}

impl UnitGroup {
    pub fn units(self) -> &'static [Gaussian] {
        const SIGN: [Gaussian; 2] = [Gaussian::new(1, 0), Gaussian::new(-1, 0)];
        const FOURTH: [Gaussian; 4] =
            [Gaussian::new(1, 0), Gaussian::new(0, 1), Gaussian::new(-1, 0), Gaussian::new(0, -1)];
        match self {
            UnitGroup::Sign => &SIGN,
            UnitGroup::Fourth => &FOURTH,
        }
    }

    pub fn order(self) -> usize {
        self.units().len()
    }
}

/// `Σ c_v · y_v` over variable ids, sorted by variable, zero terms removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearForm {
    terms: Vec<(usize, Gaussian)>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn var(v: usize) -> Self {
        LinearForm { terms: vec![(v, Gaussian::ONE)] }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Gaussian)>) -> Self {
        let mut f = LinearForm::zero();
        for (v, c) in terms {
            f = f.add(&LinearForm { terms: vec![(v, c)] });
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(usize, Gaussian)] {
        &self.terms
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|&(v, _)| v)
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let a = self.terms.get(i);
            let b = o.terms.get(j);
            match (a, b) {
                (Some(&(va, ca)), Some(&(vb, cb))) if va == vb => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((va, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(va, ca)), Some(&(vb, _))) if va < vb => {
                    out.push((va, ca));
                    i += 1;
                }
                (Some(&t), None) => {
                    out.push(t);
                    i += 1;
                }
                (_, Some(&t)) => {
                    out.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        LinearForm { terms: out }
    }

    pub fn scale(&self, u: Gaussian) -> LinearForm {
        LinearForm { terms: self.terms.iter().map(|&(v, c)| (v, c.mul(u))).filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        self.add(&o.scale(Gaussian::ONE.neg()))
    }

    /// Sum of coefficients; forms with zero sum are translation invariant.
    pub fn coefficient_sum(&self) -> Gaussian {
        self.terms.iter().fold(Gaussian::new(0, 0), |acc, &(_, c)| acc.add(c))
    }

    /// Orbit representative under `units`, and the unit `u` with
    /// `self = u · representative`.
    pub fn canonical(&self, units: UnitGroup) -> (LinearForm, Gaussian) {
        let Some(&(_, lead)) = self.terms.first() else {
            return (self.clone(), Gaussian::ONE);
        };
        let u = match units {
            UnitGroup::Sign => {
                if lead.re > 0 || (lead.re == 0 && lead.im > 0) {
                    Gaussian::ONE
                } else {
                    Gaussian::ONE.neg()
                }
            }
            UnitGroup::Fourth => lead.normalize4().1,
        };
        // u·lead is normalized, so self = u⁻¹ · (u·self).
        let rep = self.scale(u);
        let inv = match (u.re, u.im) {
            (1, 0) => Gaussian::ONE,
            (-1, 0) => Gaussian::ONE.neg(),
            (0, 1) => Gaussian::new(0, -1),
            _ => Gaussian::XI,
        };
        (rep, inv)
    }

    pub fn eval(&self, field: &FiniteField, xi: Element, values: &[Element]) -> Element {
        self.terms.iter().fold(0, |acc, &(v, c)| field.add(acc, field.mul(c.eval(field, xi), values[v])))
    }

    /// Renders with the supplied variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        FormDisplay { form: self, names }
    }
}

struct FormDisplay<'a> {
    form: &'a LinearForm,
    names: &'a [String],
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(v, c)) in self.form.terms.iter().enumerate() {
            let name = &self.names[v];
            let (sign, mag) = if c.re < 0 || (c.re == 0 && c.im < 0) { ("-", c.neg()) } else { ("+", c) };
            if i > 0 || sign == "-" {
                write!(f, "{}", if i > 0 { format!(" {sign} ") } else { sign.to_string() })?;
            }
            if mag == Gaussian::ONE {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
        }
        Ok(())
    }
}
