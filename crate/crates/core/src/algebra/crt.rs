use super::{gcd, mod_inverse};
use crate::error::{Error, Result};

/// The isomorphism `Z_h × Z_q → Z_{hq}` for coprime `h` and `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrtIso {
    h: u32,
    q: u32,
    h_inv_mod_q: u32,
}

pub fn crt_iso(h: u32, q: u32) -> Result<CrtIso> {
    CrtIso::new(h, q)
}

impl CrtIso {
    pub fn new(h: u32, q: u32) -> Result<Self> {
        let g = gcd(h as u64, q as u64);
        if g != 1 || h == 0 || q == 0 {
            return Err(Error::NotCoprime { a: h as u64, b: q as u64, gcd: g });
        }
        let h_inv_mod_q = if q == 1 { 0 } else { mod_inverse(h as u64, q as u64).unwrap() as u32 };
        Ok(CrtIso { h, q, h_inv_mod_q })
    }

    pub fn modulus(&self) -> u32 {
        self.h * self.q
    }

    /// The unique `x` with `x ≡ a (mod h)` and `x ≡ b (mod q)`.
    pub fn forward(&self, a: u32, b: u32) -> u32 {
        let (h, q) = (self.h as u64, self.q as u64);
        let a = a as u64 % h;
        let b = b as u64 % q;
        let t = ((b + q - a % q) % q) * self.h_inv_mod_q as u64 % q;
        (a + h * t) as u32
    }

    pub fn backward(&self, x: u32) -> (u32, u32) {
        (x % self.h, x % self.q)
    }
}
