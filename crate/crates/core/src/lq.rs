//! Finite left quasigroups as operation tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{orbits_of, PermutationGroup};
use crate::limit::WorkLimit;
use crate::perm::{is_bijection, Permutation};

/// A left quasigroup on `{0, …, n-1}`: every left translation `L_x = x∘_` is a
/// bijection. The left division `x\y = L_x⁻¹(y)` is precomputed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LeftQuasigroup {
    n: usize,
    mul: Vec<usize>,
    div: Vec<usize>,
}

/// Identities a left quasigroup may satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropertyTag {
    /// `x∘(y∘z) = (x∘y)∘(x∘z)`
    LeftDistributive,
    /// `(…((x0∘x1)∘x2)…)∘xm = (…(x1∘x2)…)∘xm`
    MReductive(usize),
    /// `(…((x∘x1)∘x2)…)∘xm = (…((y∘x1)∘x2)…)∘xm`
    MPermutational(usize),
    /// `(x∘y)∘(z∘t) = (x∘z)∘(y∘t)`
    Medial,
    /// `(x\y)\(x\z) = (y\x)\(y\z)`
    RightCyclic,
    /// `x ↦ x\x` is a bijection
    NonDegenerate,
    /// `x∘x = x`
    Idempotent,
    /// every `x` is fixed by some left translation
    ConditionStar,
}

impl LeftQuasigroup {
    /// Builds a left quasigroup from its multiplication table (`table[x][y] = x∘y`).
    ///
    /// ```
    /// use ybmesh::LeftQuasigroup;
    /// let lq = LeftQuasigroup::from_table(&[vec![1, 0], vec![1, 0]]).unwrap();
    /// assert_eq!(lq.ldiv(0, 0), 1);
    /// assert!(LeftQuasigroup::from_table(&[vec![0, 0], vec![1, 0]]).is_err());
    /// ```
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        Self::from_flat(n, table.concat())
    }

    /// Builds a left quasigroup from a row-major table of length `n²`.
    pub fn from_flat(n: usize, mul: Vec<usize>) -> Result<Self> {
        if n == 0 || mul.len() != n * n {
            return Err(Error::NotSquare);
        }
        for (i, &v) in mul.iter().enumerate() {
            if v >= n {
                return Err(Error::EntryOutOfRange { row: i / n, col: i % n, value: v });
            }
        }
        for x in 0..n {
            if !is_bijection(&mul[x * n..(x + 1) * n]) {
                return Err(Error::RowNotBijective(x));
            }
        }
        Ok(Self::from_flat_unchecked(n, mul))
    }

    /// Every row of `mul` must be a permutation.
    pub(crate) fn from_flat_unchecked(n: usize, mul: Vec<usize>) -> Self {
        let mut div = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                div[x * n + mul[x * n + y]] = y;
            }
        }
        LeftQuasigroup { n, mul, div }
    }

    /// The left quasigroup whose rows are the given permutations.
    pub fn from_translations(rows: &[Permutation]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.degree() != n) {
            return Err(Error::DegreeMismatch { expected: n, found: r.degree() });
        }
        Self::from_flat(n, rows.iter().flat_map(|r| r.images().iter().copied()).collect())
    }

    /// The left quasigroup with `x∘y = y` on `n` points.
    pub fn trivial(n: usize) -> Self {
        Self::from_flat_unchecked(n, (0..n).flat_map(|_| 0..n).collect())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    /// `x∘y`
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    /// `x\y`, the unique `u` with `x∘u = y`.
    #[inline]
    pub fn ldiv(&self, x: usize, y: usize) -> usize {
        self.div[x * self.n + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[usize] {
        &self.mul[x * self.n..(x + 1) * self.n]
    }

    #[inline]
    pub fn div_row(&self, x: usize) -> &[usize] {
        &self.div[x * self.n..(x + 1) * self.n]
    }

    /// Row-major multiplication table.
    pub fn flat(&self) -> &[usize] {
        &self.mul
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// `L_x`
    pub fn translation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).to_vec())
    }

    /// The left quasigroup `(X, \, ∘)` with the roles of multiplication and division swapped.
    pub fn mirror(&self) -> LeftQuasigroup {
        LeftQuasigroup { n: self.n, mul: self.div.clone(), div: self.mul.clone() }
    }

    /// The isomorphic copy transported along `h`: `h(x)∘'h(y) = h(x∘y)`.
    pub fn relabel(&self, h: &Permutation) -> LeftQuasigroup {
        let n = self.n;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                mul[h.apply(x) * n + h.apply(y)] = h.apply(self.op(x, y));
            }
        }
        Self::from_flat_unchecked(n, mul)
    }

    /// Whether `h(x∘y) = h(x)∘h(y)` for all `x, y`.
    pub fn is_automorphism(&self, h: &Permutation) -> bool {
        h.degree() == self.n
            && (0..self.n).all(|x| (0..self.n).all(|y| h.apply(self.op(x, y)) == self.op(h.apply(x), h.apply(y))))
    }

    /// Evaluates `tag` exhaustively under the default work limit.
    pub fn check(&self, tag: PropertyTag) -> Result<bool> {
        self.check_with(tag, WorkLimit::DEFAULT)
    }

    pub fn check_with(&self, tag: PropertyTag, limit: WorkLimit) -> Result<bool> {
        let n = self.n as u64;
        Ok(match tag {
            PropertyTag::LeftDistributive => {
                limit.check(n.pow(3))?;
                self.left_distributive_witness().is_none()
            }
            PropertyTag::MReductive(m) => {
                let classes = self.chain_classes(m, limit)?;
                (0..self.n).all(|x| (0..self.n).all(|y| classes[self.op(x, y)] == classes[y]))
            }
            PropertyTag::MPermutational(m) => {
                let classes = self.chain_classes(m, limit)?;
                (0..self.n).all(|y| (1..self.n).all(|x| classes[self.op(x, y)] == classes[self.op(0, y)]))
            }
            PropertyTag::Medial => {
                limit.check(n.pow(4))?;
                self.is_medial()
            }
            PropertyTag::RightCyclic => {
                limit.check(n.pow(3))?;
                self.right_cyclic_witness().is_none()
            }
            PropertyTag::NonDegenerate => self.t_map().1,
            PropertyTag::Idempotent => (0..self.n).all(|x| self.op(x, x) == x),
            PropertyTag::ConditionStar => (0..self.n).all(|x| (0..self.n).any(|a| self.op(a, x) == x)),
        })
    }

    /// Class ids of the relation `u ≡ v` iff every chain `(…(u∘x2)…)∘xm` agrees
    /// with the one started at `v`, i.e. `m-1` further right multiplications.
    ///
    /// `m`-reductivity is then `x∘y ≡ y`, and `m`-permutationality is
    /// `x∘z ≡ y∘z`. This costs `m·n²` lookups instead of `m·n^(m+1)`.
    fn chain_classes(&self, m: usize, limit: WorkLimit) -> Result<Vec<usize>> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        let n = self.n;
        limit.check((m as u64).saturating_mul((n * n) as u64))?;
        let mut classes: Vec<usize> = (0..n).collect();
        for _ in 1..m {
            let mut sigs: Vec<(Vec<usize>, usize)> =
                (0..n).map(|u| ((0..n).map(|x| classes[self.op(u, x)]).collect(), u)).collect();
            sigs.sort();
            let mut next = vec![0; n];
            let mut id = 0;
            for i in 0..n {
                if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                    id += 1;
                }
                next[sigs[i].1] = id;
            }
            if next == classes {
                break;
            }
            classes = next;
        }
        Ok(classes)
    }

    pub(crate) fn left_distributive_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(x, self.op(y, z)) != self.op(xy, self.op(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn is_medial(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    let xz = self.op(x, z);
                    for t in 0..n {
                        if self.op(xy, self.op(z, t)) != self.op(xz, self.op(y, t)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// A triple violating `(x\y)\(x\z) = (y\x)\(y\z)`, if any.
    pub fn right_cyclic_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let (xy, yx) = (self.ldiv(x, y), self.ldiv(y, x));
                for z in 0..n {
                    if self.ldiv(xy, self.ldiv(x, z)) != self.ldiv(yx, self.ldiv(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// The left multiplication group `⟨L_x⟩`.
    pub fn lmlt(&self, limit: WorkLimit) -> Result<PermutationGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        for x in 0..self.n {
            let t = self.translation(x);
            if !t.is_identity() && !gens.contains(&t) {
                gens.push(t);
            }
        }
        PermutationGroup::generate(self.n, gens, limit)
    }

    /// Orbits of the left multiplication group, sorted and ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let gens: Vec<Permutation> = (0..self.n).map(|x| self.translation(x)).collect();
        orbits_of(self.n, &gens)
    }

    /// The map `T(x) = x\x` and whether it is a bijection.
    pub fn t_map(&self) -> (Vec<usize>, bool) {
        let t: Vec<usize> = (0..self.n).map(|x| self.ldiv(x, x)).collect();
        let bij = is_bijection(&t);
        (t, bij)
    }

    /// Class index of every element under `a ~ b ⇔ L_a = L_b`; classes are
    /// numbered in order of their least element.
    pub fn sim_classes(&self) -> Vec<usize> {
        let n = self.n;
        let mut class = vec![usize::MAX; n];
        let mut count = 0;
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            class[a] = count;
            for b in a + 1..n {
                if class[b] == usize::MAX && self.row(a) == self.row(b) {
                    class[b] = count;
                }
            }
            count += 1;
        }
        class
    }
}

impl fmt::Debug for LeftQuasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LeftQuasigroup").field("n", &self.n).field("table", &self.table()).finish()
    }
}
