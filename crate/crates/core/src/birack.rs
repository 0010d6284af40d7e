//! Involutive biracks, i.e. involutive non-degenerate solutions `r(x, y) = (x∘y, x•y)`.

use crate::error::{Axiom, Error, Result};
use crate::limit::WorkLimit;
use crate::lq::{LeftQuasigroup, PropertyTag};
use crate::perm::{is_bijection, Permutation};

const UNSET: usize = usize::MAX;

/// An involutive birack `(X, ∘, •)` on `{0, …, n-1}`.
///
/// `•` is determined by `∘` through `x•y = (x∘y)\x`, so equality and hashing
/// only look at the ∘-table.
///
/// ```
/// use ybmesh::{InvolutiveBirack, LeftQuasigroup};
///
/// let circ = LeftQuasigroup::from_table(&[
///     vec![1, 0, 3, 2],
///     vec![3, 2, 1, 0],
///     vec![1, 0, 3, 2],
///     vec![3, 2, 1, 0],
/// ]).unwrap();
/// let b = InvolutiveBirack::from_cycle_set(circ).unwrap();
/// assert_eq!(b.bullet_table()[0], vec![3, 1, 3, 1]);
/// assert!(b.braid().holds());
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvolutiveBirack {
    circ: LeftQuasigroup,
    bullet: Vec<usize>,
}

/// Properties of involutive biracks. Most are evaluated on the ∘-quasigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BirackPropertyTag {
    /// `r∘r = id`
    Involutive,
    /// `(x∘y)•x = y = x∘(y•x)`
    Lri,
    Idempotent,
    /// ∘ is left distributive.
    Distributive,
    TwoReductive,
    TwoPermutational,
    MedialB,
    ConditionStarB,
    /// `x∘y` does not depend on `x`.
    OnePermutational,
    /// `x∘y = y` and `x•y = x`.
    Projection,
    /// All left translations are distinct.
    Irretractable,
}

/// Outcome of an exhaustive braid check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidReport {
    /// The braid relation holds on all triples.
    pub braid: bool,
    /// `r(r(x, y)) = (x, y)` for all pairs.
    pub involutive: bool,
    /// A failing triple for the braid relation, or a failing pair for involutivity.
    pub witness: Option<Vec<usize>>,
}

impl BraidReport {
    pub fn holds(&self) -> bool {
        self.braid && self.involutive
    }
}

/// Quotient by `a ~ b ⇔ L_a = L_b`.
#[derive(Clone, Debug)]
pub struct RetractionResult {
    pub quotient: InvolutiveBirack,
    /// Class index of each element; classes are numbered by least member.
    pub projection: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl InvolutiveBirack {
    /// The birack of a non-degenerate right cyclic left quasigroup, with
    /// `x•y = (x∘y)\x`.
    pub fn from_cycle_set(circ: LeftQuasigroup) -> Result<Self> {
        if let Some(w) = circ.right_cyclic_witness() {
            return Err(Error::NotRightCyclic(w));
        }
        if !circ.t_map().1 {
            return Err(Error::NotNonDegenerate);
        }
        Ok(Self::from_cycle_set_unchecked(circ))
    }

    /// `circ` must be right cyclic and non-degenerate.
    pub(crate) fn from_cycle_set_unchecked(circ: LeftQuasigroup) -> Self {
        let n = circ.size();
        let mut bullet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                bullet[x * n + y] = circ.ldiv(circ.op(x, y), x);
            }
        }
        InvolutiveBirack { circ, bullet }
    }

    /// Validates a pair of tables against every birack and involutivity axiom.
    ///
    /// ```
    /// use ybmesh::{Axiom, Error, InvolutiveBirack};
    ///
    /// let err = InvolutiveBirack::from_tables(
    ///     &[vec![0, 1], vec![0, 1]],
    ///     &[vec![1, 1], vec![0, 0]],
    /// ).unwrap_err();
    /// assert!(matches!(err, Error::AxiomViolation { axiom: Axiom::LeftInvolutive, .. }));
    /// ```
    pub fn from_tables(circ: &[Vec<usize>], bullet: &[Vec<usize>]) -> Result<Self> {
        let n = circ.len();
        if bullet.len() != n {
            return Err(Error::NotSquare);
        }
        let circ = match LeftQuasigroup::from_table(circ) {
            Ok(c) => c,
            Err(Error::RowNotBijective(x)) => {
                return Err(Error::AxiomViolation { axiom: Axiom::LeftQuasigroup, witness: vec![x] })
            }
            Err(e) => return Err(e),
        };
        if bullet.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        for (x, r) in bullet.iter().enumerate() {
            if let Some((y, &v)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::EntryOutOfRange { row: x, col: y, value: v });
            }
        }
        for y in 0..n {
            let col: Vec<usize> = (0..n).map(|x| bullet[x][y]).collect();
            if !is_bijection(&col) {
                return Err(Error::AxiomViolation { axiom: Axiom::RightQuasigroup, witness: vec![y] });
            }
        }
        let b = InvolutiveBirack { circ, bullet: bullet.concat() };
        if let Some((axiom, witness)) = b.axiom_violation() {
            return Err(Error::AxiomViolation { axiom, witness });
        }
        Ok(b)
    }

    fn axiom_violation(&self) -> Option<(Axiom, Vec<usize>)> {
        let n = self.size();
        let (o, b) = (|x, y| self.op(x, y), |x, y| self.bullet(x, y));
        for x in 0..n {
            for y in 0..n {
                if o(o(x, y), b(x, y)) != x {
                    return Some((Axiom::LeftInvolutive, vec![x, y]));
                }
                if b(o(x, y), b(x, y)) != y {
                    return Some((Axiom::RightInvolutive, vec![x, y]));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let (xy, xby) = (o(x, y), b(x, y));
                for z in 0..n {
                    if o(x, o(y, z)) != o(xy, o(xby, z)) {
                        return Some((Axiom::B1, vec![x, y, z]));
                    }
                    if b(xy, o(xby, z)) != o(b(x, o(y, z)), b(y, z)) {
                        return Some((Axiom::B2, vec![x, y, z]));
                    }
                    if b(xby, z) != b(b(x, o(y, z)), b(y, z)) {
                        return Some((Axiom::B3, vec![x, y, z]));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.circ.size()
    }

    pub fn circ(&self) -> &LeftQuasigroup {
        &self.circ
    }

    pub fn into_circ(self) -> LeftQuasigroup {
        self.circ
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.circ.op(x, y)
    }

    #[inline]
    pub fn bullet(&self, x: usize, y: usize) -> usize {
        self.bullet[x * self.size() + y]
    }

    pub fn bullet_table(&self) -> Vec<Vec<usize>> {
        self.bullet.chunks(self.size()).map(<[usize]>::to_vec).collect()
    }

    /// `r(x, y) = (x∘y, x•y)`
    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.op(x, y), self.bullet(x, y))
    }

    /// Exhaustive braid and involutivity check.
    pub fn braid(&self) -> BraidReport {
        braid_report(self.size(), |x, y| self.r(x, y))
    }

    pub fn check(&self, tag: BirackPropertyTag) -> bool {
        let n = self.size();
        let lq = |t| self.circ.check_with(t, WorkLimit(u64::MAX)).unwrap_or(false);
        match tag {
            BirackPropertyTag::Involutive => self.braid().involutive,
            BirackPropertyTag::Lri => {
                (0..n).all(|x| (0..n).all(|y| self.bullet(self.op(x, y), x) == y && self.op(x, self.bullet(y, x)) == y))
            }
            BirackPropertyTag::Idempotent => lq(PropertyTag::Idempotent),
            BirackPropertyTag::Distributive => lq(PropertyTag::LeftDistributive),
            BirackPropertyTag::TwoReductive => lq(PropertyTag::MReductive(2)),
            BirackPropertyTag::TwoPermutational => lq(PropertyTag::MPermutational(2)),
            BirackPropertyTag::MedialB => lq(PropertyTag::Medial),
            BirackPropertyTag::ConditionStarB => lq(PropertyTag::ConditionStar),
            BirackPropertyTag::OnePermutational => lq(PropertyTag::MPermutational(1)),
            BirackPropertyTag::Projection => lq(PropertyTag::MReductive(1)),
            BirackPropertyTag::Irretractable => {
                let classes = self.circ.sim_classes();
                classes.iter().max().map_or(0, |m| m + 1) == n
            }
        }
    }

    pub fn retraction(&self) -> RetractionResult {
        let projection = self.circ.sim_classes();
        let k = projection.iter().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); k];
        for (x, &c) in projection.iter().enumerate() {
            classes[c].push(x);
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let mut circ = vec![0; k * k];
        let mut bullet = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                circ[i * k + j] = projection[self.op(reps[i], reps[j])];
                bullet[i * k + j] = projection[self.bullet(reps[i], reps[j])];
            }
        }
        let quotient = InvolutiveBirack { circ: LeftQuasigroup::from_flat_unchecked(k, circ), bullet };
        debug_assert_eq!(quotient, InvolutiveBirack::from_cycle_set_unchecked(quotient.circ.clone()));
        RetractionResult { quotient, projection, classes }
    }

    /// Compares `a ~ b ⇔ L_a = L_b` with the partition by right translations
    /// `R_a = R_b`. Returns both class maps and whether they agree.
    pub fn sim_diagnostic(&self) -> (Vec<usize>, Vec<usize>, bool) {
        let n = self.size();
        let left = self.circ.sim_classes();
        let cols: Vec<Vec<usize>> = (0..n).map(|y| (0..n).map(|x| self.bullet(x, y)).collect()).collect();
        let mut right = vec![UNSET; n];
        let mut count = 0;
        for a in 0..n {
            if right[a] == UNSET {
                for b in a..n {
                    if right[b] == UNSET && cols[a] == cols[b] {
                        right[b] = count;
                    }
                }
                count += 1;
            }
        }
        let agree = left == right;
        (left, right, agree)
    }

    /// The least `m` with `|Ret^m| = 1`, or `None` when retraction stalls above size 1.
    pub fn mp_level(&self) -> Option<usize> {
        let mut current = self.clone();
        let mut level = 0;
        while current.size() > 1 {
            let next = current.retraction().quotient;
            if next.size() == current.size() {
                return None;
            }
            current = next;
            level += 1;
        }
        Some(level)
    }

    /// Order of `⟨L_x⟩`, whether it is abelian, and its invariant factors if so.
    pub fn permutation_group_structure(&self, limit: WorkLimit) -> Result<(usize, bool, Option<Vec<u64>>)> {
        let g = self.circ.lmlt(limit)?;
        let factors = g.invariant_factors();
        Ok((g.order(), factors.is_some(), factors))
    }

    /// Searches for `h` with `h(x∘y) = h(x)∘h(y)`; such an `h` also preserves `•`.
    ///
    /// Backtracks over images of the least unmapped element, propagating
    /// through products and divisions and pruning by isomorphism invariants.
    pub fn isomorphism(&self, other: &InvolutiveBirack, limit: WorkLimit) -> Result<Option<Permutation>> {
        lq_isomorphism(&self.circ, &other.circ, limit)
    }

    /// The isomorphic copy with elements renamed by `h`.
    pub fn relabel(&self, h: &Permutation) -> InvolutiveBirack {
        InvolutiveBirack::from_cycle_set_unchecked(self.circ.relabel(h))
    }
}

/// Exhaustive braid check on raw tables, which need not be validated.
pub fn check_braid(circ: &[Vec<usize>], bullet: &[Vec<usize>]) -> Result<BraidReport> {
    let n = circ.len();
    if n == 0 || bullet.len() != n || circ.iter().chain(bullet).any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    for t in [circ, bullet] {
        for (x, r) in t.iter().enumerate() {
            if let Some((y, &v)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(Error::EntryOutOfRange { row: x, col: y, value: v });
            }
        }
    }
    Ok(braid_report(n, |x, y| (circ[x][y], bullet[x][y])))
}

fn braid_report(n: usize, r: impl Fn(usize, usize) -> (usize, usize)) -> BraidReport {
    let mut report = BraidReport { braid: true, involutive: true, witness: None };
    'pairs: for x in 0..n {
        for y in 0..n {
            let (u, v) = r(x, y);
            if r(u, v) != (x, y) {
                report.involutive = false;
                report.witness = Some(vec![x, y]);
                break 'pairs;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // (id×r)(r×id)(id×r)
                let (a, b) = r(y, z);
                let (c, d) = r(x, a);
                let (e, f) = r(d, b);
                let left = (c, e, f);
                // (r×id)(id×r)(r×id)
                let (a, b) = r(x, y);
                let (c, d) = r(b, z);
                let (e, f) = r(a, c);
                let right = (e, f, d);
                if left != right {
                    report.braid = false;
                    report.witness = Some(vec![x, y, z]);
                    return report;
                }
            }
        }
    }
    report
}

struct Invariants {
    per_element: Vec<(Vec<usize>, usize, bool, usize)>,
}

impl Invariants {
    fn of(q: &LeftQuasigroup) -> Self {
        let n = q.size();
        let classes = q.sim_classes();
        let mut class_size = vec![0; n];
        for &c in &classes {
            class_size[c] += 1;
        }
        let mut orbit_size = vec![0; n];
        for o in q.orbits() {
            for &x in &o {
                orbit_size[x] = o.len();
            }
        }
        let per_element = (0..n)
            .map(|x| (q.translation(x).cycle_type(), class_size[classes[x]], q.op(x, x) == x, orbit_size[x]))
            .collect();
        Invariants { per_element }
    }

    fn profile(&self) -> Vec<&(Vec<usize>, usize, bool, usize)> {
        let mut p: Vec<_> = self.per_element.iter().collect();
        p.sort();
        p
    }
}

/// Isomorphism search between left quasigroups; see [`InvolutiveBirack::isomorphism`].
pub fn lq_isomorphism(a: &LeftQuasigroup, b: &LeftQuasigroup, limit: WorkLimit) -> Result<Option<Permutation>> {
    let n = a.size();
    if b.size() != n {
        return Ok(None);
    }
    let (ia, ib) = (Invariants::of(a), Invariants::of(b));
    if ia.profile() != ib.profile() {
        return Ok(None);
    }
    let mut search = IsoSearch { a, b, ia: &ia, ib: &ib, meter: limit.meter() };
    let mut h = vec![UNSET; n];
    let mut hinv = vec![UNSET; n];
    if search.descend(&mut h, &mut hinv)? {
        let p = Permutation::from_images_unchecked(h);
        debug_assert!((0..n).all(|x| (0..n).all(|y| p.apply(a.op(x, y)) == b.op(p.apply(x), p.apply(y)))));
        Ok(Some(p))
    } else {
        Ok(None)
    }
}

struct IsoSearch<'a> {
    a: &'a LeftQuasigroup,
    b: &'a LeftQuasigroup,
    ia: &'a Invariants,
    ib: &'a Invariants,
    meter: crate::limit::Meter,
}

impl IsoSearch<'_> {
    fn descend(&mut self, h: &mut Vec<usize>, hinv: &mut Vec<usize>) -> Result<bool> {
        let n = h.len();
        let Some(x) = h.iter().position(|&v| v == UNSET) else {
            return Ok(true);
        };
        for u in 0..n {
            if hinv[u] != UNSET || self.ia.per_element[x] != self.ib.per_element[u] {
                continue;
            }
            self.meter.spend(n as u64 * n as u64)?;
            let (mut h2, mut hinv2) = (h.clone(), hinv.clone());
            if self.assign(&mut h2, &mut hinv2, x, u) && self.descend(&mut h2, &mut hinv2)? {
                *h = h2;
                *hinv = hinv2;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Sets `h(x) = u` and closes under products and divisions; false on conflict.
    fn assign(&self, h: &mut [usize], hinv: &mut [usize], x: usize, u: usize) -> bool {
        let n = h.len();
        let mut assigned: Vec<usize> = (0..n).filter(|&y| h[y] != UNSET).collect();
        let mut stack = vec![(x, u)];
        while let Some((x, u)) = stack.pop() {
            if h[x] != UNSET {
                if h[x] != u {
                    return false;
                }
                continue;
            }
            if hinv[u] != UNSET || self.ia.per_element[x] != self.ib.per_element[u] {
                return false;
            }
            h[x] = u;
            hinv[u] = x;
            assigned.push(x);
            for &y in &assigned {
                let v = h[y];
                stack.push((self.a.op(x, y), self.b.op(u, v)));
                stack.push((self.a.op(y, x), self.b.op(v, u)));
                stack.push((self.a.ldiv(x, y), self.b.ldiv(u, v)));
                stack.push((self.a.ldiv(y, x), self.b.ldiv(v, u)));
            }
        }
        true
    }
}
