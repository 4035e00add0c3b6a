//! Relabeling `π` of `Z_r` with `π(α(x)) - π(x) ≠ a` for every `x` moved by
//! a permutation `α`, for `r ≥ 5`.

use crate::error::{Error, Result};

/// Whether `pi` satisfies the inequality for every non-fixed point of `alpha`.
pub fn satisfies(r: usize, a: usize, alpha: &[usize], pi: &[usize]) -> bool {
    let a = a % r;
    (0..r).all(|x| alpha[x] == x || (pi[alpha[x]] + r - pi[x]) % r != a)
}

fn is_permutation(r: usize, p: &[usize]) -> bool {
    let mut seen = vec![false; r];
    p.len() == r && p.iter().all(|&x| x < r && !std::mem::replace(&mut seen[x], true))
}

/// Cycles of `alpha` of length at least 2, longest first.
fn nontrivial_cycles(alpha: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; alpha.len()];
    let mut cycles = Vec::new();
    for s in 0..alpha.len() {
        if seen[s] || alpha[s] == s {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = alpha[x];
        }
        cycles.push(c);
    }
    cycles.sort_by_key(|c| std::cmp::Reverse(c.len()));
    cycles
}

pub fn fix_permutation(r: usize, a: usize, alpha: &[usize]) -> Result<Vec<usize>> {
    if r < 5 {
        return Err(Error::Precondition(format!("r = {r} < 5")));
    }
    if !is_permutation(r, alpha) {
        return Err(Error::Invalid(format!("{alpha:?} is not a permutation of Z_{r}")));
    }
    let a = a % r;
    if a == 0 {
        return Ok((0..r).collect());
    }
    let cycles = nontrivial_cycles(alpha);
    let mut pi = vec![usize::MAX; r];
    if 2 * a == r {
        case_half(r, &cycles, &mut pi);
    } else {
        case_general(r, a, &cycles, &mut pi);
    }
    let mut used = vec![false; r];
    for &l in pi.iter().filter(|&&l| l != usize::MAX) {
        used[l] = true;
    }
    let mut free = (0..r).filter(|&l| !used[l]);
    for l in pi.iter_mut().filter(|l| **l == usize::MAX) {
        *l = free.next().expect("labels suffice");
    }
    debug_assert!(satisfies(r, a, alpha, &pi));
    Ok(pi)
}

/// `a = r/2`: cycles on consecutive labels, except that a cycle of length
/// `r/2 + 1` skips label `l₁ - 1`, which then opens the next cycle.
fn case_half(r: usize, cycles: &[Vec<usize>], pi: &mut [usize]) {
    let mut next = 0;
    let mut rest = cycles;
    if let Some(first) = cycles.first().filter(|c| c.len() == r / 2 + 1) {
        let l1 = first.len();
        for (t, &x) in first.iter().enumerate() {
            pi[x] = if t + 1 < l1 { t } else { l1 };
        }
        rest = &cycles[1..];
        if let Some(second) = rest.first() {
            pi[second[0]] = l1 - 1;
            for (t, &x) in second.iter().enumerate().skip(1) {
                pi[x] = l1 + t;
            }
            next = l1 + second.len();
            rest = &rest[1..];
        } else {
            next = l1 + 1;
        }
    }
    for c in rest {
        for &x in c {
            pi[x] = next;
            next += 1;
        }
    }
}

/// `a ∉ {0, r/2}`: 2-cycles go to pairs `{u, v}` with `v - u ≠ ±a`; the
/// remaining labels are ordered along the reversed `x ↦ x + a` paths and
/// cycles, and longer cycles go to consecutive positions in that order.
fn case_general(r: usize, a: usize, cycles: &[Vec<usize>], pi: &mut [usize]) {
    let twos: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() == 2).collect();
    let longer: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() > 2).collect();
    let matching =
        avoiding_matching(r, a, twos.len()).expect("complement of a union of cycles of length >= 3 has the matching");
    let mut taken = vec![false; r];
    for (c, &(u, v)) in twos.iter().zip(&matching) {
        pi[c[0]] = u;
        pi[c[1]] = v;
        taken[u] = true;
        taken[v] = true;
    }

    let mut order = Vec::with_capacity(r);
    let mut visited = taken.clone();
    // Paths start where the predecessor is taken; what remains are whole cycles.
    for s in 0..r {
        if visited[s] || !taken[(s + r - a) % r] {
            continue;
        }
        let mut path = Vec::new();
        let mut x = s;
        while !taken[x] && !visited[x] {
            visited[x] = true;
            path.push(x);
            x = (x + a) % r;
        }
        order.extend(path.into_iter().rev());
    }
    for s in 0..r {
        if visited[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !visited[x] {
            visited[x] = true;
            cyc.push(x);
            x = (x + a) % r;
        }
        order.extend(cyc.into_iter().rev());
    }

    let mut next = 0;
    for c in longer {
        for &x in c {
            pi[x] = order[next];
            next += 1;
        }
    }
}

/// `count` disjoint pairs `{u, v}` of `Z_r` with `v - u ∉ {a, -a}`.
fn avoiding_matching(r: usize, a: usize, count: usize) -> Option<Vec<(usize, usize)>> {
    fn go(r: usize, a: usize, count: usize, used: &mut [bool], out: &mut Vec<(usize, usize)>) -> bool {
        if out.len() == count {
            return true;
        }
        let Some(u) = (0..r).find(|&u| !used[u]) else {
            return false;
        };
        used[u] = true;
        for v in u + 1..r {
            let diff = (v + r - u) % r;
            if used[v] || diff == a || diff == r - a {
                continue;
            }
            used[v] = true;
            out.push((u, v));
            if go(r, a, count, used, out) {
                return true;
            }
            out.pop();
            used[v] = false;
        }
        // Leave u unmatched if enough vertices remain.
        let remaining = used.iter().filter(|&&b| !b).count();
        if remaining >= 2 * (count - out.len()) && go(r, a, count, used, out) {
            return true;
        }
        used[u] = false;
        false
    }
    let mut used = vec![false; r];
    let mut out = Vec::new();
    go(r, a, count, &mut used, &mut out).then_some(out)
}

/// Exhaustive search over all `r!` relabelings; a test oracle for small `r`.
pub fn brute_force_fix_permutation(r: usize, a: usize, alpha: &[usize]) -> Option<Vec<usize>> {
    let mut pi: Vec<usize> = (0..r).collect();
    loop {
        if satisfies(r, a, alpha, &pi) {
            return Some(pi);
        }
        if !next_permutation(&mut pi) {
            return None;
        }
    }
}

/// Lexicographic successor; false after the last permutation.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_permutations(r: usize) -> Vec<Vec<usize>> {
        let mut p: Vec<usize> = (0..r).collect();
        let mut out = vec![p.clone()];
        while next_permutation(&mut p) {
            out.push(p.clone());
        }
        out
    }

    #[test]
    fn zero_shift_is_identity() {
        let alpha = vec![1, 2, 3, 4, 0];
        assert_eq!(fix_permutation(5, 0, &alpha).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn half_shift_with_long_cycle() {
        // r = 6, a = 3, one 4-cycle.
        let alpha = vec![1, 2, 3, 0, 4, 5];
        let pi = fix_permutation(6, 3, &alpha).unwrap();
        assert!(is_permutation(6, &pi));
        assert!(satisfies(6, 3, &alpha, &pi));
        // 4-cycle plus a 2-cycle uses the second half of the special packing.
        let alpha = vec![1, 2, 3, 0, 5, 4];
        assert!(satisfies(6, 3, &alpha, &fix_permutation(6, 3, &alpha).unwrap()));
    }

    #[test]
    fn two_transpositions_r5() {
        let alpha = vec![1, 0, 3, 2, 4];
        let pi = fix_permutation(5, 1, &alpha).unwrap();
        assert!(satisfies(5, 1, &alpha, &pi));
        assert!(brute_force_fix_permutation(5, 1, &alpha).is_some());
    }

    #[test]
    fn exhaustive_small_r() {
        for r in [5usize, 6] {
            for alpha in all_permutations(r) {
                for a in 0..r {
                    let pi = fix_permutation(r, a, &alpha).unwrap();
                    assert!(is_permutation(r, &pi));
                    assert!(satisfies(r, a, &alpha, &pi), "r={r} a={a} alpha={alpha:?}");
                    assert!(brute_force_fix_permutation(r, a, &alpha).is_some());
                }
            }
        }
    }

    #[test]
    fn rejects_small_r_and_non_permutations() {
        assert!(fix_permutation(4, 1, &[1, 0, 2, 3]).is_err());
        assert!(fix_permutation(5, 1, &[0, 0, 1, 2, 3]).is_err());
    }
}
