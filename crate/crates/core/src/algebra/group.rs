use std::fmt;
use std::sync::Arc;

use super::FiniteField;
use crate::error::{Error, Result};

/// A group element, stored as its mixed-radix index in `[0, |G|)`.
pub type Element = u32;

/// `Z_{n1} × … × Z_{nt}`, optionally times the additive group of `F_q`.
///
/// Indices are mixed radix with the last cyclic factor varying fastest and
/// the field part least significant, so `(g, y)` in `G × F_q` has index
/// `g·q + y` with `y` the field encoding.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    cyclic: Vec<u32>,
    field: Option<Arc<FiniteField>>,
    radix: Vec<u32>,
    order: u32,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.cyclic.iter().map(|n| format!("Z{n}")).collect();
        if let Some(fld) = &self.field {
            parts.push(format!("F{}", fld.order()));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("×"))
    }
}

impl AbelianGroup {
    pub fn cyclic(n: u32) -> Result<Self> {
        Self::product(&[n])
    }

    pub fn product(orders: &[u32]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Invalid("cyclic factor orders must be positive".into()));
        }
        let order = orders
            .iter()
            .try_fold(1u32, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::Invalid("group order overflows u32".into()))?;
        Ok(AbelianGroup { cyclic: orders.to_vec(), field: None, radix: orders.to_vec(), order })
    }

    /// The additive group of a field on its own.
    pub fn of_field(field: Arc<FiniteField>) -> Self {
        Self::product(&[]).unwrap().with_field(field).unwrap()
    }

    /// `self × (F_q, +)`.
    pub fn with_field(&self, field: Arc<FiniteField>) -> Result<Self> {
        if self.field.is_some() {
            return Err(Error::Invalid("group already has a field factor".into()));
        }
        let order =
            self.order.checked_mul(field.order()).ok_or_else(|| Error::Invalid("group order overflows u32".into()))?;
        let mut radix = self.cyclic.clone();
        radix.extend(std::iter::repeat_n(field.p(), field.e() as usize));
        Ok(AbelianGroup { cyclic: self.cyclic.clone(), field: Some(field), radix, order })
    }

    /// The cyclic part without the field factor.
    pub fn base(&self) -> AbelianGroup {
        AbelianGroup::product(&self.cyclic).unwrap()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn cyclic_orders(&self) -> &[u32] {
        &self.cyclic
    }

    pub fn field(&self) -> Option<&Arc<FiniteField>> {
        self.field.as_ref()
    }

    pub fn is_cyclic(&self) -> bool {
        self.field.is_none() && self.cyclic.len() <= 1
    }

    pub fn contains(&self, x: Element) -> bool {
        x < self.order
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn zero(&self) -> Element {
        0
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        if self.radix.len() == 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &n in self.radix.iter().rev() {
            let d = (a % n + b % n) % n;
            out += d * place;
            a /= n;
            b /= n;
            place *= n;
        }
        out
    }

    pub fn neg(&self, a: Element) -> Element {
        if self.radix.len() == 1 {
            return if a == 0 { 0 } else { self.order - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for &n in self.radix.iter().rev() {
            out += ((n - a % n) % n) * place;
            a /= n;
            place *= n;
        }
        out
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// `m·x` for an integer `m`.
    pub fn scale(&self, m: i64, x: Element) -> Element {
        let mut out = 0;
        let mut place = 1;
        let mut x = x;
        for &n in self.radix.iter().rev() {
            let d = ((x % n) as i64 * m).rem_euclid(n as i64) as u32;
            out += d * place;
            x /= n;
            place *= n;
        }
        out
    }

    /// True for `0` and for elements of order 2.
    pub fn is_involution_or_zero(&self, x: Element) -> bool {
        self.add(x, x) == 0
    }

    /// Exponent of the group (lcm of the digit moduli).
    pub fn exponent(&self) -> u64 {
        self.radix.iter().fold(1u64, |acc, &n| acc / super::gcd(acc, n as u64) * n as u64)
    }

    /// Splits an element of `G × F_q` into (base index, field encoding).
    pub fn split(&self, x: Element) -> (Element, Element) {
        match &self.field {
            Some(f) => (x / f.order(), x % f.order()),
            None => (x, 0),
        }
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(&self, g: Element, y: Element) -> Element {
        match &self.field {
            Some(f) => g * f.order() + y,
            None => g,
        }
    }

    /// Tuple form: cyclic coordinates, then the field encoding if present.
    pub fn to_tuple(&self, x: Element) -> Vec<i64> {
        let (mut g, y) = self.split(x);
        let mut coords = vec![0i64; self.cyclic.len()];
        for (i, &n) in self.cyclic.iter().enumerate().rev() {
            coords[i] = (g % n) as i64;
            g /= n;
        }
        if self.field.is_some() {
            coords.push(y as i64);
        }
        coords
    }

    /// Parses a tuple; cyclic coordinates are reduced, the field encoding
    /// must already lie in `[0, q)`.
    pub fn from_tuple(&self, coords: &[i64]) -> Result<Element> {
        let want = self.cyclic.len() + usize::from(self.field.is_some());
        if coords.len() != want {
            return Err(Error::ElementOutOfRange(coords.to_vec()));
        }
        let mut g = 0u32;
        for (&c, &n) in coords.iter().zip(&self.cyclic) {
            g = g * n + c.rem_euclid(n as i64) as u32;
        }
        let y = match &self.field {
            Some(f) => {
                let y = coords[want - 1];
                if y < 0 || y >= f.order() as i64 {
                    return Err(Error::ElementOutOfRange(coords.to_vec()));
                }
                y as u32
            }
            None => 0,
        };
        Ok(self.join(g, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_arithmetic() {
        let g = AbelianGroup::cyclic(10).unwrap();
        assert_eq!(g.add(7, 5), 2);
        assert_eq!(g.sub(3, 7), 6);
        assert_eq!(g.neg(0), 0);
        assert!(g.is_involution_or_zero(5));
        assert!(!g.is_involution_or_zero(3));
        assert_eq!(g.scale(-1, 3), 7);
    }

    #[test]
    fn product_with_field_encoding() {
        let f = Arc::new(FiniteField::new(5, 2, Some(&[2, -1, 1])).unwrap());
        let g = AbelianGroup::cyclic(30).unwrap().with_field(f.clone()).unwrap();
        assert_eq!(g.order(), 750);
        let x = g.from_tuple(&[6, 13]).unwrap();
        assert_eq!(g.split(x), (6, 13));
        assert_eq!(g.to_tuple(x), vec![6, 13]);
        let y = g.from_tuple(&[-6, 1]).unwrap();
        let s = g.add(x, y);
        assert_eq!(g.split(s), (0, f.add(13, 1)));
        assert!(g.from_tuple(&[0, 25]).is_err());
        assert_eq!(g.exponent(), 30);
    }

    #[test]
    fn inverse_and_zero() {
        let g = AbelianGroup::product(&[2, 3, 4]).unwrap();
        for a in g.elements() {
            assert_eq!(g.add(a, g.neg(a)), 0);
            for b in g.elements() {
                assert_eq!(g.add(a, b), g.add(b, a));
                assert_eq!(g.sub(g.add(a, b), b), a);
            }
        }
    }
}
