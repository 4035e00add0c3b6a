use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};

use crate::algebra::{Element, FiniteField};
use crate::error::Result;

/// `Q(d, m) = ((U + √R) / 2)²` with `R = U² + 4d^{m-1}m`, kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBound {
    pub d: u32,
    pub m: u32,
    pub u: BigUint,
    pub radicand: BigUint,
}

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Requires `d ≥ 1` and `m ≥ 1`.
pub fn qbound(d: u32, m: u32) -> QBound {
    assert!(d >= 1 && m >= 1, "qbound needs d, m >= 1");
    let dm1 = BigUint::from(d - 1);
    let mut u = BigUint::from(0u32);
    for h in 1..=m {
        u += binomial(m, h) * dm1.pow(h) * BigUint::from(h - 1);
    }
    let radicand = &u * &u + BigUint::from(4u32) * BigUint::from(d).pow(m - 1) * BigUint::from(m);
    QBound { d, m, u, radicand }
}

/// Sign of `A + B√R`.
fn sign_with_root(a: &BigInt, b: &BigInt, r: &BigUint) -> Ordering {
    let zero = BigInt::from(0);
    let root_term_zero = b.sign() == Sign::NoSign || r.bits() == 0;
    let sa = a.cmp(&zero);
    if root_term_zero {
        return sa;
    }
    let sb = b.cmp(&zero);
    if sa != Ordering::Less && sb == Ordering::Greater {
        return Ordering::Greater;
    }
    if sa != Ordering::Greater && sb == Ordering::Less {
        return Ordering::Less;
    }
    // Opposite signs: compare A² with B²R.
    let a2 = a * a;
    let b2r = b * b * BigInt::from(r.clone());
    match sa {
        Ordering::Greater => a2.cmp(&b2r),
        _ => b2r.cmp(&a2),
    }
}

impl QBound {
    pub fn to_f64(&self) -> f64 {
        let u = self.u.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
        let r = self.radicand.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
        let s = (u + r.sqrt()) / 2.0;
        s * s
    }

    /// `Q` itself when it is an integer.
    pub fn exact_integer(&self) -> Option<BigUint> {
        // 4Q = U² + R + 2U√R
        let zero = BigUint::from(0u32);
        let four = BigUint::from(4u32);
        let root = self.radicand.sqrt();
        let four_q = if self.u == zero {
            self.radicand.clone()
        } else if &root * &root == self.radicand {
            &self.u * &self.u + &self.radicand + BigUint::from(2u32) * &self.u * root
        } else {
            return None;
        };
        (&four_q % &four == zero).then(|| four_q / four)
    }

    /// Exact comparison of `Q` with an integer.
    pub fn cmp_int(&self, n: u64) -> Ordering {
        // 4Q = U² + R + 2U√R
        let u = BigInt::from(self.u.clone());
        let a = &u * &u + BigInt::from(self.radicand.clone()) - BigInt::from(4u64) * BigInt::from(n);
        sign_with_root(&a, &(BigInt::from(2) * u), &self.radicand)
    }

    /// Whether `q > Q(d, m)`.
    pub fn is_exceeded_by(&self, q: u64) -> bool {
        self.cmp_int(q) == Ordering::Less
    }

    /// Exact comparison of two bounds.
    pub fn cmp_exact(&self, other: &QBound) -> Ordering {
        // Compare U1 + √R1 with U2 + √R2, both nonnegative.
        let diff = BigInt::from(self.u.clone()) - BigInt::from(other.u.clone());
        // lhs = diff + √R1, compared with √R2 ≥ 0.
        let lhs_sign = sign_with_root(&diff, &BigInt::from(1), &self.radicand);
        if lhs_sign != Ordering::Greater {
            return if lhs_sign == Ordering::Equal && other.radicand.bits() == 0 {
                Ordering::Equal
            } else {
                Ordering::Less
            };
        }
        // Both sides positive: compare diff² + R1 + 2·diff·√R1 with R2.
        let r1 = BigInt::from(self.radicand.clone());
        let a = &diff * &diff + &r1 - BigInt::from(other.radicand.clone());
        sign_with_root(&a, &(BigInt::from(2) * diff), &self.radicand)
    }
}

impl fmt::Display for QBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q({}, {}) = ((U + sqrt({}))/2)^2 ~ {:.6} with U = {}",
            self.d,
            self.m,
            self.radicand,
            self.to_f64(),
            self.u
        )
    }
}

/// `{x : x - b_i ∈ C_{β_i}^{d,q}}`.
pub fn cyclotomic_solutions(field: &FiniteField, d: u32, b: &[Element], beta: &[u32]) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    'x: for x in 0..field.order() {
        for (&bi, &ci) in b.iter().zip(beta) {
            let y = field.sub(x, bi);
            if y == 0 || field.coset_index(d, y)? != ci % d {
                continue 'x;
            }
        }
        out.push(x);
    }
    Ok(out)
}
