//! Finite abelian groups in invariant-factor form.
//!
//! A group `Z_{d_1} × … × Z_{d_r}` with `d_1 | d_2 | … | d_r` is stored by its
//! factor list. Elements are residue tuples, addressed internally by their
//! mixed-radix index (last coordinate varies fastest), so the zero element is
//! always index `0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{gcd, lcm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<usize>,
}

/// An element of a [`FiniteAbelianGroup`], as a residue tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    owner: FiniteAbelianGroup,
    coords: Vec<usize>,
}

impl FiniteAbelianGroup {
    /// Builds a group from invariant factors `d_1 | d_2 | … | d_r`, each at least 2.
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if let Some(&d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!("factor {d} is smaller than 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup { factors: vec![n] }
        }
    }

    /// Normalizes an arbitrary product of cyclic groups `Z_{m_1} × … × Z_{m_s}`
    /// to invariant-factor form.
    pub fn from_cyclic_orders(orders: &[usize]) -> Self {
        let mut by_prime: Vec<(usize, Vec<u32>)> = Vec::new();
        for &m in orders {
            for (p, e) in factorize(m) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        combine_prime_partitions(&by_prime)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Ordering used for canonical meshes: by order, then by factor list.
    pub fn sort_key(&self) -> (usize, &[usize]) {
        (self.order(), &self.factors)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { owner: self.clone(), coords: vec![0; self.rank()] }
    }

    pub fn element(&self, coords: Vec<usize>) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidGroup(format!(
                "element {coords:?} has {} coordinates, group {self} needs {}",
                coords.len(),
                self.rank()
            )));
        }
        if let Some((a, d)) = coords.iter().zip(&self.factors).find(|(a, d)| a >= d) {
            return Err(Error::InvalidGroup(format!("coordinate {a} out of range for Z_{d}")));
        }
        Ok(GroupElement { owner: self.clone(), coords })
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement { owner: self.clone(), coords: self.coords_of(index) }
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.factors).fold(0, |acc, (&a, &d)| acc * d + a)
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.rank()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    /// Sum of two elements given by index.
    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for &d in self.factors.iter().rev() {
            out += ((a % d + b % d) % d) * place;
            place *= d;
            a /= d;
            b /= d;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut a = a;
        let (mut out, mut place) = (0, 1);
        for &d in self.factors.iter().rev() {
            out += ((d - a % d) % d) * place;
            place *= d;
            a /= d;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a`.
    pub fn scale(&self, k: usize, a: usize) -> usize {
        let coords: Vec<usize> =
            self.coords_of(a).iter().zip(&self.factors).map(|(&x, &d)| (x * (k % d)) % d).collect();
        self.index_of(&coords)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.coords_of(a)
            .iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (&x, &d)| lcm(acc, (d / gcd(x as u64, d as u64) as usize) as u64)) as usize
    }

    /// Membership mask of the subgroup generated by `gens` (element indices).
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        member
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated_subgroup(gens).iter().all(|&m| m)
    }

    /// Indices of the standard generators (unit vectors).
    pub fn standard_generators(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|i| {
                let mut c = vec![0; self.rank()];
                c[i] = 1;
                self.index_of(&c)
            })
            .collect()
    }

    /// All automorphisms, each as a map on element indices. The identity comes first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        // Candidate images of the i-th unit vector: elements killed by d_i.
        let candidates: Vec<Vec<usize>> =
            self.factors.iter().map(|&d| (0..n).filter(|&a| d % self.element_order(a) == 0).collect()).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; self.rank()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
            if let Some(map) = self.extend_on_basis(&images) {
                out.push(map);
            }
            // odometer
            let mut i = self.rank();
            loop {
                if i == 0 {
                    let id: Vec<usize> = (0..n).collect();
                    if let Some(pos) = out.iter().position(|m| *m == id) {
                        out.swap(0, pos);
                    }
                    return out;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }

    /// The endomorphism sending unit vector `i` to `images[i]`, if it is bijective.
    fn extend_on_basis(&self, images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![0; n];
        let mut hit = vec![false; n];
        for (x, slot) in map.iter_mut().enumerate() {
            let coords = self.coords_of(x);
            let mut y = 0;
            for (&a, &g) in coords.iter().zip(images) {
                y = self.add(y, self.scale(a, g));
            }
            if hit[y] {
                return None;
            }
            hit[y] = true;
            *slot = y;
        }
        Some(map)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("Z_1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z_{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

impl GroupElement {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.owner
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn index(&self) -> usize {
        self.owner.index_of(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&a| a == 0)
    }
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub(crate) fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Integer partitions of `e`, parts in descending order, partitions in
/// lexicographically descending order (`[e]` first).
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// Combines per-prime exponent lists (the p-primary cyclic factors) into
/// invariant factors.
fn combine_prime_partitions(by_prime: &[(usize, Vec<u32>)]) -> FiniteAbelianGroup {
    let rank = by_prime.iter().map(|(_, v)| v.iter().filter(|&&e| e > 0).count()).max().unwrap_or(0);
    let mut factors = vec![1usize; rank];
    for (p, exps) in by_prime {
        let mut exps: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // largest exponent goes to the last (largest) factor
        for (t, &e) in exps.iter().enumerate() {
            factors[rank - 1 - t] *= p.pow(e);
        }
    }
    FiniteAbelianGroup { factors }
}

/// Every abelian group of order `n` up to isomorphism, in invariant-factor
/// form, ordered by rank and then lexicographically (cyclic group first).
///
/// ```
/// use ybmesh::abelian_groups_of_order;
/// let f: Vec<Vec<usize>> = abelian_groups_of_order(12).iter().map(|g| g.factors().to_vec()).collect();
/// assert_eq!(f, vec![vec![12], vec![2, 6]]);
/// ```
pub fn abelian_groups_of_order(n: usize) -> Vec<FiniteAbelianGroup> {
    assert!(n >= 1, "group order must be positive");
    let primes = factorize(n);
    let mut combos: Vec<Vec<(usize, Vec<u32>)>> = vec![Vec::new()];
    for &(p, e) in &primes {
        let mut next = Vec::new();
        for combo in &combos {
            for part in partitions(e) {
                let mut c = combo.clone();
                c.push((p, part));
                next.push(c);
            }
        }
        combos = next;
    }
    let mut groups: Vec<FiniteAbelianGroup> = combos.iter().map(|c| combine_prime_partitions(c)).collect();
    groups.sort_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.factors.cmp(&b.factors)));
    groups
}

/// Invariant factors of a finite abelian group, recovered from the multiset of
/// its element orders.
///
/// For each prime `p`, the number of elements killed by `p^k` is
/// `p^(Σ_i min(λ_i, k))`, which pins down the exponents `λ_i` of the
/// `p`-primary part.
pub fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len();
    let mut by_prime = Vec::new();
    for (p, e) in factorize(n) {
        let p64 = p as u64;
        let mut logs = vec![0u32; e as usize + 1];
        for (k, slot) in logs.iter_mut().enumerate() {
            let pk = p64.pow(k as u32);
            let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count();
            *slot = ilog(count, p);
        }
        // m_k = number of cyclic p-factors of exponent at least k
        let m: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
        let parts = m.first().copied().unwrap_or(0);
        let exps: Vec<u32> = (0..parts).map(|t| m.iter().filter(|&&mk| mk > t).count() as u32).collect();
        by_prime.push((p, exps));
    }
    combine_prime_partitions(&by_prime).factors.into_iter().map(|d| d as u64).collect()
}

fn ilog(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0, "count is not a power of p");
        x /= p;
        k += 1;
    }
    k
}
