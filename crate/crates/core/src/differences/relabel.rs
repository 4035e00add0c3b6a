use crate::algebra::{crt_iso, AbelianGroup, Element};
use crate::error::{Error, Result};

use super::RelativeDifferenceFamily;

fn map_family(
    df: &RelativeDifferenceFamily,
    group: AbelianGroup,
    f: impl Fn(Element) -> Element,
) -> RelativeDifferenceFamily {
    let blocks = df.blocks.iter().map(|b| b.iter().map(|&x| f(x)).collect()).collect();
    let forbidden = df.forbidden.iter().map(|&x| f(x)).collect();
    RelativeDifferenceFamily::new(group, forbidden, blocks, df.k, df.lambda)
}

/// `Z_{hq} → Z_h × Z_q` by `x ↦ (x mod h, x mod q)`; requires `gcd(h, q) = 1`.
pub fn to_product(df: &RelativeDifferenceFamily, h: u32) -> Result<RelativeDifferenceFamily> {
    let n = df.group.order();
    if !df.group.is_cyclic() || h == 0 || !n.is_multiple_of(h) {
        return Err(Error::Precondition(format!("{} is not cyclic of order divisible by {h}", df.group)));
    }
    let q = n / h;
    crt_iso(h, q)?;
    let group = AbelianGroup::product(&[h, q])?;
    Ok(map_family(df, group, |x| (x % h) * q + x % q))
}

/// `Z_h × Z_q → Z_{hq}` via the Chinese remainder map. Accepts two cyclic
/// factors, or one cyclic factor times a prime field.
pub fn to_cyclic(df: &RelativeDifferenceFamily) -> Result<RelativeDifferenceFamily> {
    let g = &df.group;
    if g.is_cyclic() {
        return Ok(df.clone());
    }
    let (h, q) = match (g.cyclic_orders(), g.field()) {
        (&[h], Some(f)) if f.e() == 1 => (h, f.order()),
        (&[h, q], None) => (h, q),
        _ => return Err(Error::Precondition(format!("{g} has no cyclic form Z_h × Z_q"))),
    };
    let iso = crt_iso(h, q)?;
    let group = AbelianGroup::cyclic(h * q)?;
    Ok(map_family(df, group, |x| iso.forward(x / q, x % q)))
}
