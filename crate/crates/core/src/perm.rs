//! Permutations of `{0, …, n-1}` stored as image arrays.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, n-1}`; `images[x]` is the image of `x`.
///
/// Composition follows the convention of function composition:
/// `p.compose(&q)` maps `x` to `p(q(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if !is_bijection(&images) {
            return Err(Error::NotPermutation(images));
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    /// Parses cycle notation such as `(0 1)(2 3)` or `(01)(23)`.
    ///
    /// Without separators inside a cycle every digit is one point, so the compact
    /// form only works for degrees up to 10.
    ///
    /// ```
    /// use ybmesh::Permutation;
    /// let p = Permutation::parse_cycles(4, "(0123)").unwrap();
    /// assert_eq!(p.images(), &[1, 2, 3, 0]);
    /// assert_eq!(p.to_string(), "(0 1 2 3)");
    /// ```
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 0, msg: format!("{msg} in {text:?}") };
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        if rest.is_empty() || rest == "id" || rest == "()" {
            return Ok(Permutation::identity(n));
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<usize>().map_err(|_| bad("bad point")))
                    .collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("bad point")))
                    .collect::<Result<_>>()?
            };
            for (i, &p) in points.iter().enumerate() {
                if p >= n || seen[p] {
                    return Err(bad("point out of range or repeated"));
                }
                seen[p] = true;
                images[p] = points[(i + 1) % points.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation { images: other.images.iter().map(|&y| self.images[y]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `h⁻¹ ∘ self ∘ h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.inverse().compose(self).compose(h)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Lengths of all cycles (fixed points included), sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn is_bijection(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &y in images {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Rearranges `v` into the next permutation in lexicographic order.
/// Returns `false` (leaving `v` sorted ascending) after the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of degree `n` in lexicographic order of their image arrays.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut cur: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        cur = if next_permutation(&mut next) { Some(next) } else { None };
        Some(Permutation::from_images_unchecked(out))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let p = Permutation::parse_cycles(4, "(0 1 2)").unwrap();
        let q = Permutation::parse_cycles(4, "(2 3)").unwrap();
        // p∘q: 2 -> 3 -> 3, 3 -> 2 -> 0
        assert_eq!(p.compose(&q).images(), &[1, 2, 3, 0]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.order(), 3);
        assert_eq!(p.cycle_type(), vec![3, 1]);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::parse_cycles(3, "(01)(12)").is_err());
    }

    #[test]
    fn enumerates_symmetric_group() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_permutations(0).count(), 1);
    }

    #[test]
    fn display_roundtrip() {
        let p = Permutation::from_images(vec![2, 3, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "(0 2)(1 3)");
        assert_eq!(Permutation::parse_cycles(4, &p.to_string()).unwrap(), p);
        assert_eq!(Permutation::identity(3).to_string(), "id");
    }
}
