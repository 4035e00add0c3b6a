use std::collections::HashSet;
use std::fmt;

use super::{Design, Point};
use crate::error::{Error, Result};

/// Bijection of `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<Point>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Cycle notation without fixed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: u32) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub fn from_images(image: Vec<Point>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::Invalid(format!("{image:?} is not a bijection of 0..{n}")));
            }
        }
        Ok(Permutation { image })
    }

    /// Parses `"(1 13 6)(2 23 29)…"` on `0..n`; unlisted points are fixed.
    /// Entries may be separated by spaces or commas.
    pub fn parse_cycles(text: &str, n: u32) -> Result<Self> {
        let mut image: Vec<Point> = (0..n).collect();
        let mut seen = vec![false; n as usize];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::Invalid(format!("malformed cycle notation near `{rest}`")))?;
            let cycle: Vec<Point> = body
                .0
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<Point>().map_err(|_| Error::Invalid(format!("bad point `{s}`"))))
                .collect::<Result<_>>()?;
            for &x in &cycle {
                if x >= n {
                    return Err(Error::Invalid(format!("point {x} out of range 0..{n}")));
                }
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::Invalid(format!("point {x} occurs twice")));
                }
            }
            for (i, &x) in cycle.iter().enumerate() {
                image[x as usize] = cycle[(i + 1) % cycle.len()];
            }
            rest = body.1.trim_start();
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> u32 {
        self.image.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, x: Point) -> Point {
        self.image[x as usize]
    }

    pub fn images(&self) -> &[Point] {
        &self.image
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::Invalid(format!("composing permutations on {} and {} points", self.len(), other.len())));
        }
        Ok(Permutation { image: other.image.iter().map(|&x| self.image[x as usize]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y as usize] = x as Point;
        }
        Permutation { image: inv }
    }

    /// All cycles including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut seen = vec![false; self.image.len()];
        let mut out = Vec::new();
        for s in 0..self.image.len() {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x as Point);
                x = self.image[x] as usize;
            }
            out.push(c);
        }
        out
    }
}

/// Cycle lengths in ascending order, fixed points included as 1.
pub fn cycle_structure(p: &Permutation) -> Vec<usize> {
    let mut lens: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
    lens.sort_unstable();
    lens
}

fn image_set(p: &Permutation, set: &[Point]) -> Vec<Point> {
    let mut s: Vec<Point> = set.iter().map(|&x| p.apply(x)).collect();
    s.sort_unstable();
    s
}

/// Whether `p` maps blocks onto blocks and groups onto groups.
pub fn is_automorphism(d: &Design, p: &Permutation) -> Result<bool> {
    if p.len() != d.points {
        return Err(Error::Invalid(format!("permutation on {} points, design on {}", p.len(), d.points)));
    }
    let blocks: HashSet<Vec<Point>> = d.blocks.iter().map(|b| sorted(b)).collect();
    if blocks.len() != d.blocks.len() {
        return Err(Error::Invalid("repeated blocks".into()));
    }
    if !d.blocks.iter().all(|b| blocks.contains(&image_set(p, b))) {
        return Ok(false);
    }
    let groups: HashSet<Vec<Point>> = d.groups.iter().map(|g| sorted(g)).collect();
    Ok(d.groups.iter().all(|g| groups.contains(&image_set(p, g))))
}

fn sorted(s: &[Point]) -> Vec<Point> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s
}

/// Automorphism with one fixed point and `r` cycles of length `(v-1)/r`.
pub fn is_r_rotational(d: &Design, p: &Permutation, r: usize) -> Result<bool> {
    let v = d.points as usize;
    if r == 0 || v < 2 || !(v - 1).is_multiple_of(r) {
        return Ok(false);
    }
    let mut want = vec![1];
    want.extend(std::iter::repeat_n((v - 1) / r, r));
    want.sort_unstable();
    Ok(cycle_structure(p) == want && is_automorphism(d, p)?)
}
