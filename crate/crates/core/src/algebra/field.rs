use std::fmt;

use super::{is_prime, Element};
use crate::error::{Error, Result};

/// Largest field order accepted unless a caller raises the limit.
pub const DEFAULT_MAX_FIELD_ORDER: u32 = 1 << 20;

/// The finite field `GF(p^e)` with a fixed primitive element and eagerly
/// built discrete-log tables.
///
/// Elements are encoded as `Σ c_i p^i` where `(c_0, …, c_{e-1})` are the
/// coordinates in the polynomial basis `1, x, …, x^{e-1}`.
#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    omega: Element,
    exp: Vec<Element>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl std::hash::Hash for FiniteField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.e.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("omega", &self.omega)
            .finish()
    }
}

impl FiniteField {
    /// Builds `GF(p^e)`.
    ///
    /// `modulus` lists ascending coefficients of a monic degree-`e`
    /// polynomial; entries are reduced mod `p`. Without one, the
    /// lexicographically least primitive polynomial is used (prime fields
    /// use the least primitive root).
    pub fn new(p: u32, e: u32, modulus: Option<&[i64]>) -> Result<Self> {
        Self::with_limit(p, e, modulus, DEFAULT_MAX_FIELD_ORDER)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, e) = super::prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        Self::new(p as u32, e, None)
    }

    pub fn with_limit(p: u32, e: u32, modulus: Option<&[i64]>, max_order: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > max_order as u64 {
            return Err(Error::FieldTooLarge { q, limit: max_order as u64 });
        }
        let q = q as u32;

        if let Some(coeffs) = modulus {
            if coeffs.len() != e as usize + 1 {
                return Err(Error::InvalidModulus(format!(
                    "expected {} coefficients for degree {e}, got {}",
                    e + 1,
                    coeffs.len()
                )));
            }
            let reduced: Vec<u32> = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
            if reduced[e as usize] != 1 {
                return Err(Error::InvalidModulus("polynomial is not monic".into()));
            }
            let tables = if e == 1 { prime_tables(p, (p - reduced[0]) % p) } else { ext_tables(p, e, q, &reduced) };
            return match tables {
                Some((exp, log)) => Ok(Self::assemble(p, e, q, reduced, exp, log)),
                None => Err(Error::NotPrimitive { p, modulus: reduced }),
            };
        }

        if e == 1 {
            for g in 1..p.max(2) {
                if let Some((exp, log)) = prime_tables(p, g) {
                    let m = vec![(p - g) % p, 1];
                    return Ok(Self::assemble(p, e, q, m, exp, log));
                }
            }
            // p = 2: the only nonzero element generates the trivial group
            let (exp, log) = prime_tables(p, 1).expect("GF(2) is cyclic");
            return Ok(Self::assemble(p, e, q, vec![1, 1], exp, log));
        }

        // Lexicographic order on (c_0, c_1, …, c_{e-1}), c_0 most significant.
        let count = q;
        for n in 0..count {
            let mut cand = vec![0u32; e as usize + 1];
            let mut t = n;
            for i in (0..e as usize).rev() {
                cand[i] = t % p;
                t /= p;
            }
            cand[e as usize] = 1;
            if cand[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = ext_tables(p, e, q, &cand) {
                return Ok(Self::assemble(p, e, q, cand, exp, log));
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    fn assemble(p: u32, e: u32, q: u32, modulus: Vec<u32>, exp: Vec<u32>, log: Vec<u32>) -> Self {
        let omega = if q == 2 { 1 } else { exp[1] };
        FiniteField { p, e, q, modulus, omega, exp, log }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn omega(&self) -> Element {
        self.omega
    }

    pub fn contains(&self, x: Element) -> bool {
        x < self.q
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Element) -> Element {
        if self.e == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n as u64;
        self.exp[s as usize]
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a == 0 {
            return Err(Error::ZeroLog);
        }
        let n = self.q - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// `ω^i` for any integer exponent.
    pub fn omega_pow(&self, i: i64) -> Element {
        let n = (self.q - 1) as i64;
        self.exp[i.rem_euclid(n) as usize]
    }

    pub fn pow(&self, a: Element, n: u64) -> Element {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (n % m)) % m) as usize]
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Element {
        n.rem_euclid(self.p as i64) as Element
    }

    pub fn discrete_log(&self, x: Element) -> Result<u32> {
        if x == 0 || x >= self.q {
            return Err(Error::ZeroLog);
        }
        Ok(self.log[x as usize])
    }

    fn check_divisor(&self, d: u32) -> Result<()> {
        if d == 0 || !(self.q - 1).is_multiple_of(d) {
            return Err(Error::NotDivisor { d: d as u64, n: (self.q - 1) as u64 });
        }
        Ok(())
    }

    /// `C_i^{d,q} = ω^i · C_0^{d,q}`, listed by ascending exponent.
    pub fn cyclotomic_class(&self, d: u32, i: u32) -> Result<Vec<Element>> {
        self.check_divisor(d)?;
        if i >= d {
            return Err(Error::ClassIndex { index: i, d });
        }
        let size = (self.q - 1) / d;
        Ok((0..size).map(|j| self.exp[(i + d * j) as usize]).collect())
    }

    /// Index of the cyclotomic class of order `d` containing `x`.
    pub fn coset_index(&self, d: u32, x: Element) -> Result<u32> {
        self.check_divisor(d)?;
        Ok(self.discrete_log(x)? % d)
    }

    /// Whether `reps` meets each class `C_i^{d,q}` exactly once.
    pub fn is_system_of_representatives(&self, d: u32, reps: &[Element]) -> bool {
        if d == 0 || !(self.q - 1).is_multiple_of(d) || reps.len() != d as usize {
            return false;
        }
        let mut seen = vec![false; d as usize];
        for &x in reps {
            let Ok(c) = self.coset_index(d, x) else {
                return false;
            };
            if std::mem::replace(&mut seen[c as usize], true) {
                return false;
            }
        }
        true
    }

    /// `ω^{(q-1)/4}`, a primitive fourth root of unity.
    pub fn primitive_fourth_root(&self) -> Result<Element> {
        if !(self.q - 1).is_multiple_of(4) {
            return Err(Error::Congruence(format!("q = {} is not 1 mod 4", self.q)));
        }
        Ok(self.exp[((self.q - 1) / 4) as usize])
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Element> + '_ {
        1..self.q
    }

    /// Polynomial coordinates `(c_0, …, c_{e-1})` of an element.
    pub fn coordinates(&self, x: Element) -> Vec<u32> {
        let mut x = x;
        (0..self.e)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }
}

fn prime_tables(p: u32, g: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = p - 1;
    if p == 2 {
        return (g == 1).then(|| (vec![1], vec![u32::MAX, 0]));
    }
    if g == 0 || g >= p {
        return None;
    }
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![u32::MAX; p as usize];
    let mut x = 1u64;
    for i in 0..n {
        if i > 0 && x == 1 {
            return None;
        }
        exp.push(x as u32);
        log[x as usize] = i;
        x = x * g as u64 % p as u64;
    }
    (x == 1).then_some((exp, log))
}

/// Powers of `x` modulo `modulus`; `None` unless `x` has order `q - 1`.
fn ext_tables(p: u32, e: u32, q: u32, modulus: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = q - 1;
    let e = e as usize;
    let mut exp = Vec::with_capacity(n as usize);
    let mut log = vec![u32::MAX; q as usize];
    let mut coords = vec![0u32; e];
    coords[0] = 1;
    let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    for i in 0..n {
        let enc = encode(&coords);
        if enc == 0 || (i > 0 && enc == 1) {
            return None;
        }
        exp.push(enc);
        log[enc as usize] = i;
        // multiply by x: x^e = -Σ m_i x^i
        let top = coords[e - 1];
        for j in (1..e).rev() {
            coords[j] = coords[j - 1];
        }
        coords[0] = 0;
        if top != 0 {
            for j in 0..e {
                let sub = (top as u64 * modulus[j] as u64 % p as u64) as u32;
                coords[j] = (coords[j] + p - sub) % p;
            }
        }
    }
    (encode(&coords) == 1).then_some((exp, log))
}
