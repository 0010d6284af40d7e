//! Isomorph-free enumeration of solutions and racks.
//!
//! * distributive solutions: sums of the mesh classes;
//! * level-2 non-distributive solutions: isotopes `x∗y = x∘π(y)` of
//!   distributive bases that have an identity translation, filtered and
//!   deduplicated by canonical key;
//! * all involutive solutions and all racks: direct search over tables, used
//!   as independent oracles at small sizes.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::birack::{BirackPropertyTag, InvolutiveBirack};
use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::isotope::isotope_unchecked;
use crate::limit::{SharedMeter, WorkLimit};
use crate::lq::{LeftQuasigroup, PropertyTag};
use crate::mesh::{enumerate_meshes, TrivialAffineMesh, MESH_MAX_N};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    TwoReductive,
    Level2NonDistributive,
    AllInvolutive,
    Rack,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::TwoReductive, Kind::Level2NonDistributive, Kind::AllInvolutive, Kind::Rack];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::TwoReductive => "2reductive",
            Kind::Level2NonDistributive => "level2-nondistributive",
            Kind::AllInvolutive => "all-involutive",
            Kind::Rack => "racks",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown kind {s:?}")))
    }
}

/// How an entry was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Sum of a mesh.
    Mesh(TrivialAffineMesh),
    /// `π`-isotope of the sum of a mesh.
    Isotope { base: TrivialAffineMesh, pi: Permutation },
    /// Found by direct search.
    Search,
}

/// One isomorphism class, stored in canonical labelling.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub kind: Kind,
    /// Canonically labelled ∘-table.
    pub table: LeftQuasigroup,
    /// The solution; `None` for racks that are not right cyclic.
    pub birack: Option<InvolutiveBirack>,
    pub provenance: Provenance,
    pub canonical_key: Vec<u8>,
}

impl CatalogEntry {
    pub fn size(&self) -> usize {
        self.table.size()
    }

    fn new(kind: Kind, q: &LeftQuasigroup, provenance: Provenance) -> Self {
        let form = canonical_form(q);
        let table = q.relabel(&form.labeling);
        let birack = InvolutiveBirack::from_cycle_set(table.clone()).ok();
        CatalogEntry { kind, table, birack, provenance, canonical_key: form.key }
    }
}

/// Size limits for the enumerators.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub mesh_max_n: usize,
    pub level2_max_n: usize,
    pub brute_max_n: usize,
    pub limit: WorkLimit,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { mesh_max_n: MESH_MAX_N, level2_max_n: 7, brute_max_n: 6, limit: WorkLimit::from_env() }
    }
}

fn check_size(what: &'static str, n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::SizeOutOfBudget { what, n, max });
    }
    Ok(())
}

fn sorted(mut entries: Vec<CatalogEntry>) -> Vec<CatalogEntry> {
    entries.sort_by(|a, b| a.canonical_key.cmp(&b.canonical_key));
    entries
}

/// Distributive involutive solutions of size `n`, one per class, sorted by key.
pub fn enumerate_distributive(n: usize, budget: &Budget) -> Result<Vec<CatalogEntry>> {
    check_size("distributive enumeration", n, budget.mesh_max_n)?;
    let meshes = enumerate_meshes(n, budget.limit)?;
    let entries = meshes
        .into_par_iter()
        .map(|m| {
            let b = m.sum().expect("enumerated meshes are valid");
            CatalogEntry::new(Kind::TwoReductive, b.circ(), Provenance::Mesh(m))
        })
        .collect();
    Ok(sorted(entries))
}

/// Level-2 solutions of size `n` that are not distributive, sorted by key.
///
/// For every distributive base with an identity translation and every `π`
/// that maps `~`-classes onto `~`-classes and satisfies
/// `π(y)∘π(x∘z) = π(x)∘π(y∘z)`, the `π`-isotope is built unless
/// `L_x⁻¹ = R_{π(x)}` for all `x`, in which case it satisfies lri and is
/// distributive again. Survivors are checked for non-distributivity and
/// deduplicated by canonical key, keeping the least provenance.
pub fn enumerate_level2_nondistributive(n: usize, budget: &Budget) -> Result<Vec<CatalogEntry>> {
    check_size("level-2 enumeration", n, budget.level2_max_n)?;
    let meshes = enumerate_meshes(n, budget.limit)?;
    let meter = SharedMeter::new(budget.limit);
    let bases: Vec<(TrivialAffineMesh, InvolutiveBirack)> = meshes
        .into_iter()
        .map(|m| {
            let b = m.sum().expect("enumerated meshes are valid");
            (m, b)
        })
        .filter(|(_, b)| (0..n).any(|x| b.circ().translation(x).is_identity()))
        .collect();
    let found: Vec<BTreeMap<Vec<u8>, (usize, Permutation, LeftQuasigroup)>> =
        bases.par_iter().enumerate().map(|(idx, (_, b))| isotopes_of(idx, b, &meter)).collect::<Result<_>>()?;
    let mut merged: BTreeMap<Vec<u8>, (usize, Permutation, LeftQuasigroup)> = BTreeMap::new();
    for map in found {
        for (key, v) in map {
            match merged.get(&key) {
                Some(old) if (old.0, &old.1) <= (v.0, &v.1) => {}
                _ => {
                    merged.insert(key, v);
                }
            }
        }
    }
    let entries = merged
        .into_values()
        .map(|(idx, pi, q)| {
            let base = bases[idx].0.clone();
            CatalogEntry::new(Kind::Level2NonDistributive, &q, Provenance::Isotope { base, pi })
        })
        .collect();
    Ok(sorted(entries))
}

type IsotopeMap = BTreeMap<Vec<u8>, (usize, Permutation, LeftQuasigroup)>;

fn isotopes_of(idx: usize, base: &InvolutiveBirack, meter: &SharedMeter) -> Result<IsotopeMap> {
    let circ = base.circ();
    let n = circ.size();
    let classes = circ.sim_classes();
    let mut out: IsotopeMap = BTreeMap::new();
    let mut err = None;
    sigma_permutations(circ, &classes, meter, &mut err, |pi| {
        // the isotope satisfies lri exactly when L_x⁻¹ = R_{π(x)} for all x
        let lri = (0..n).all(|x| (0..n).all(|y| circ.ldiv(x, y) == base.bullet(y, pi[x])));
        if lri {
            return;
        }
        let p = Permutation::from_images_unchecked(pi.to_vec());
        let q = isotope_unchecked(circ, &p);
        if q.left_distributive_witness().is_none() {
            return;
        }
        let key = canonical_form(&q).key;
        match out.get(&key) {
            Some(old) if old.1 <= p => {}
            _ => {
                out.insert(key, (idx, p, q));
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Calls `f` on every permutation that maps `~`-classes onto classes and
/// satisfies the σ-condition, built by backtracking in element order.
fn sigma_permutations(
    q: &LeftQuasigroup,
    classes: &[usize],
    meter: &SharedMeter,
    err: &mut Option<Error>,
    mut f: impl FnMut(&[usize]),
) {
    let n = q.size();
    let mut class_size = vec![0; n];
    for &c in classes {
        class_size[c] += 1;
    }
    let mut st = SigmaState {
        q,
        classes,
        class_size,
        pi: vec![usize::MAX; n],
        used: vec![false; n],
        class_map: vec![usize::MAX; n],
        class_used: vec![false; n],
    };
    st.go(0, meter, err, &mut f);
}

struct SigmaState<'a> {
    q: &'a LeftQuasigroup,
    classes: &'a [usize],
    class_size: Vec<usize>,
    pi: Vec<usize>,
    used: Vec<bool>,
    class_map: Vec<usize>,
    class_used: Vec<bool>,
}

impl SigmaState<'_> {
    fn go(&mut self, x: usize, meter: &SharedMeter, err: &mut Option<Error>, f: &mut impl FnMut(&[usize])) {
        let n = self.q.size();
        if err.is_some() {
            return;
        }
        if x == n {
            f(&self.pi);
            return;
        }
        if let Err(e) = meter.spend((n * n) as u64) {
            *err = Some(e);
            return;
        }
        let cx = self.classes[x];
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let cv = self.classes[v];
            let fresh = self.class_map[cx] == usize::MAX;
            if fresh {
                if self.class_used[cv] || self.class_size[cv] != self.class_size[cx] {
                    continue;
                }
            } else if self.class_map[cx] != cv {
                continue;
            }
            self.pi[x] = v;
            if self.sigma_holds_up_to(x) {
                self.used[v] = true;
                if fresh {
                    self.class_map[cx] = cv;
                    self.class_used[cv] = true;
                }
                self.go(x + 1, meter, err, f);
                self.used[v] = false;
                if fresh {
                    self.class_map[cx] = usize::MAX;
                    self.class_used[cv] = false;
                }
            }
            self.pi[x] = usize::MAX;
        }
    }

    /// Checks every triple whose four arguments are at most `m` and involve `m`.
    fn sigma_holds_up_to(&self, m: usize) -> bool {
        let q = self.q;
        let n = q.size();
        let pi = &self.pi;
        for a in 0..=m {
            for b in a..=m {
                for z in 0..n {
                    let (az, bz) = (q.op(a, z), q.op(b, z));
                    if az > m || bz > m || (b != m && az != m && bz != m) {
                        continue;
                    }
                    if q.op(pi[b], pi[az]) != q.op(pi[a], pi[bz]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// All involutive solutions of size `n` up to isomorphism, by direct search
/// over cycle sets.
pub fn enumerate_involutive_bruteforce(n: usize, budget: &Budget) -> Result<Vec<CatalogEntry>> {
    check_size("involutive search", n, budget.brute_max_n)?;
    let keys = table_search(n, Identity::RightCyclicDivision, budget.limit)?;
    Ok(sorted(
        keys.into_iter()
            .map(|dot| {
                // the searched operation is x\y; rows of ∘ are its inverses
                let circ = dot.mirror();
                CatalogEntry::new(Kind::AllInvolutive, &circ, Provenance::Search)
            })
            .collect(),
    ))
}

/// All racks of size `n` up to isomorphism, by direct search.
pub fn enumerate_racks_bruteforce(n: usize, budget: &Budget) -> Result<Vec<CatalogEntry>> {
    check_size("rack search", n, budget.brute_max_n)?;
    let tables = table_search(n, Identity::LeftDistributive, budget.limit)?;
    Ok(sorted(tables.into_iter().map(|q| CatalogEntry::new(Kind::Rack, &q, Provenance::Search)).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Identity {
    /// `(x·y)·(x·z) = (y·x)·(y·z)`
    RightCyclicDivision,
    /// `x·(y·z) = (x·y)·(x·z)`
    LeftDistributive,
}

/// Diagonals `x ↦ x·x` in a normal form: one permutation per cycle type,
/// cycles on consecutive points.
fn diagonal_normal_forms(n: usize) -> Vec<Vec<usize>> {
    fn parts(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            parts(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut shapes = Vec::new();
    parts(n, n, &mut Vec::new(), &mut shapes);
    shapes
        .into_iter()
        .map(|shape| {
            let mut img = vec![0; n];
            let mut start = 0;
            for len in shape {
                for t in 0..len {
                    img[start + t] = start + (t + 1) % len;
                }
                start += len;
            }
            img
        })
        .collect()
}

/// Every table with bijective rows and bijective diagonal satisfying the
/// identity, one per isomorphism class.
fn table_search(n: usize, identity: Identity, limit: WorkLimit) -> Result<Vec<LeftQuasigroup>> {
    let meter = SharedMeter::new(limit);
    let per_diag: Vec<HashSet<Vec<u8>>> = diagonal_normal_forms(n)
        .par_iter()
        .map(|diag| {
            let mut s = Filler::new(n, identity);
            let mut found = HashSet::new();
            let mut ok = true;
            for (x, &v) in diag.iter().enumerate() {
                ok &= s.set(x, x, v);
            }
            ok &= s.propagate();
            if ok {
                s.search(&meter, &mut |t| {
                    let q = LeftQuasigroup::from_flat_unchecked(n, t.iter().map(|&v| v as usize).collect());
                    let key_of = match identity {
                        Identity::RightCyclicDivision => q.mirror(),
                        Identity::LeftDistributive => q,
                    };
                    found.insert(canonical_form(&key_of).key);
                })?;
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<Vec<u8>> = per_diag.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
    all.sort();
    Ok(all
        .into_iter()
        .map(|key| {
            let q = LeftQuasigroup::from_flat_unchecked(n, key.iter().map(|&v| v as usize).collect());
            match identity {
                Identity::RightCyclicDivision => q.mirror(),
                Identity::LeftDistributive => q,
            }
        })
        .collect())
}

const EMPTY: u8 = u8::MAX;

/// Partial table with bijective-row bookkeeping, forced-value propagation and a trail.
struct Filler {
    n: usize,
    identity: Identity,
    t: Vec<u8>,
    /// `inv[x*n + v] = y` when `t[x][y] = v`.
    inv: Vec<u8>,
    row_free: Vec<usize>,
    trail: Vec<usize>,
    pending: Vec<usize>,
}

impl Filler {
    fn new(n: usize, identity: Identity) -> Self {
        Filler {
            n,
            identity,
            t: vec![EMPTY; n * n],
            inv: vec![EMPTY; n * n],
            row_free: vec![n; n],
            trail: Vec::new(),
            pending: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> Option<usize> {
        let v = self.t[x * self.n + y];
        (v != EMPTY).then_some(v as usize)
    }

    #[inline]
    fn preimage(&self, x: usize, v: usize) -> Option<usize> {
        let y = self.inv[x * self.n + v];
        (y != EMPTY).then_some(y as usize)
    }

    /// Records `x·y = v`; false on conflict.
    fn set(&mut self, x: usize, y: usize, v: usize) -> bool {
        let n = self.n;
        match self.get(x, y) {
            Some(w) => return w == v,
            None => {
                if self.inv[x * n + v] != EMPTY {
                    return false;
                }
            }
        }
        self.t[x * n + y] = v as u8;
        self.inv[x * n + v] = y as u8;
        self.row_free[x] -= 1;
        self.trail.push(x * n + y);
        self.pending.push(x * n + y);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        let n = self.n;
        while self.trail.len() > mark {
            let c = self.trail.pop().expect("non-empty");
            let (x, v) = (c / n, self.t[c] as usize);
            self.inv[x * n + v] = EMPTY;
            self.t[c] = EMPTY;
            self.row_free[x] += 1;
        }
        self.pending.clear();
    }

    /// Applies forced values until nothing changes; false on contradiction.
    fn propagate(&mut self) -> bool {
        let n = self.n;
        while let Some(c) = self.pending.pop() {
            let (p, q) = (c / n, c % n);
            if self.row_free[p] == 1 {
                let y = (0..n).find(|&y| self.get(p, y).is_none()).expect("one free cell");
                let v = (0..n).find(|&v| self.preimage(p, v).is_none()).expect("one free value");
                if !self.set(p, y, v) {
                    return false;
                }
            }
            let ok = match self.identity {
                Identity::RightCyclicDivision => self.touch_cyclic(p, q),
                Identity::LeftDistributive => self.touch_distributive(p, q),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Enforces `u·v = s·t` given that all four inner values are known.
    #[inline]
    fn equate(&mut self, u: usize, v: usize, s: usize, t: usize) -> bool {
        match (self.get(u, v), self.get(s, t)) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) => self.set(s, t, a),
            (None, Some(b)) => self.set(u, v, b),
            (None, None) => true,
        }
    }

    /// `(x·y)·(x·z) = (y·x)·(y·z)`
    fn cyclic_triple(&mut self, x: usize, y: usize, z: usize) -> bool {
        match (self.get(x, y), self.get(x, z), self.get(y, x), self.get(y, z)) {
            (Some(a), Some(b), Some(c), Some(d)) => self.equate(a, b, c, d),
            _ => true,
        }
    }

    fn touch_cyclic(&mut self, p: usize, q: usize) -> bool {
        let n = self.n;
        for w in 0..n {
            // (p,q) as x·y, x·z, y·x or y·z
            if !(self.cyclic_triple(p, q, w)
                && self.cyclic_triple(p, w, q)
                && self.cyclic_triple(q, p, w)
                && self.cyclic_triple(w, p, q))
            {
                return false;
            }
            // (p,q) as an outer product (x·y)·(x·z) or (y·x)·(y·z) with x = w
            if let (Some(y), Some(z)) = (self.preimage(w, p), self.preimage(w, q)) {
                if !(self.cyclic_triple(w, y, z) && self.cyclic_triple(y, w, z)) {
                    return false;
                }
            }
        }
        true
    }

    /// `x·(y·z) = (x·y)·(x·z)`
    fn distributive_triple(&mut self, x: usize, y: usize, z: usize) -> bool {
        match (self.get(y, z), self.get(x, y), self.get(x, z)) {
            (Some(a), Some(b), Some(c)) => self.equate(x, a, b, c),
            _ => true,
        }
    }

    fn touch_distributive(&mut self, p: usize, q: usize) -> bool {
        let n = self.n;
        for w in 0..n {
            // (p,q) as y·z, x·y or x·z
            if !(self.distributive_triple(w, p, q)
                && self.distributive_triple(p, q, w)
                && self.distributive_triple(p, w, q))
            {
                return false;
            }
            // (p,q) as x·(y·z): x = p, y = w, y·z = q
            if let Some(z) = self.preimage(w, q) {
                if !self.distributive_triple(p, w, z) {
                    return false;
                }
            }
            // (p,q) as (x·y)·(x·z) with x = w
            if let (Some(y), Some(z)) = (self.preimage(w, p), self.preimage(w, q)) {
                if !self.distributive_triple(w, y, z) {
                    return false;
                }
            }
        }
        true
    }

    fn search(&mut self, meter: &SharedMeter, emit: &mut impl FnMut(&[u8])) -> Result<()> {
        let n = self.n;
        meter.spend(n as u64)?;
        // row with the fewest free cells
        let Some(x) = (0..n).filter(|&x| self.row_free[x] > 0).min_by_key(|&x| self.row_free[x]) else {
            emit(&self.t);
            return Ok(());
        };
        let y = (0..n).find(|&y| self.get(x, y).is_none()).expect("row has a free cell");
        for v in 0..n {
            if self.preimage(x, v).is_some() {
                continue;
            }
            let mark = self.trail.len();
            if self.set(x, y, v) && self.propagate() {
                self.search(meter, emit)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}

/// Class counts for one size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub two_reductive: Option<usize>,
    pub level2_nondistributive: Option<usize>,
    pub all_involutive: Option<usize>,
    pub racks: Option<usize>,
    pub elapsed: Vec<(Kind, Duration)>,
}

impl CountReport {
    /// Level-2 solutions: distributive plus non-distributive ones.
    pub fn level2_total(&self) -> Option<usize> {
        Some(self.two_reductive? + self.level2_nondistributive?)
    }

    pub fn get(&self, kind: Kind) -> Option<usize> {
        match kind {
            Kind::TwoReductive => self.two_reductive,
            Kind::Level2NonDistributive => self.level2_nondistributive,
            Kind::AllInvolutive => self.all_involutive,
            Kind::Rack => self.racks,
        }
    }
}

/// Runs the enumerator of each kind and counts classes.
pub fn enumerate(kind: Kind, n: usize, budget: &Budget) -> Result<Vec<CatalogEntry>> {
    match kind {
        Kind::TwoReductive => enumerate_distributive(n, budget),
        Kind::Level2NonDistributive => enumerate_level2_nondistributive(n, budget),
        Kind::AllInvolutive => enumerate_involutive_bruteforce(n, budget),
        Kind::Rack => enumerate_racks_bruteforce(n, budget),
    }
}

/// Counts classes of the requested kinds.
///
/// ```
/// use ybmesh::enumerate::{counts, Budget, Kind};
/// let r = counts(3, &Kind::ALL, &Budget::default()).unwrap();
/// assert_eq!(r.two_reductive, Some(5));
/// assert_eq!(r.racks, Some(6));
/// assert_eq!(r.level2_total(), Some(5));
/// ```
pub fn counts(n: usize, kinds: &[Kind], budget: &Budget) -> Result<CountReport> {
    let mut report = CountReport { n, ..CountReport::default() };
    for &kind in kinds {
        let start = Instant::now();
        let count = match kind {
            Kind::TwoReductive => {
                check_size("distributive enumeration", n, budget.mesh_max_n)?;
                enumerate_meshes(n, budget.limit)?.len()
            }
            _ => enumerate(kind, n, budget)?.len(),
        };
        report.elapsed.push((kind, start.elapsed()));
        match kind {
            Kind::TwoReductive => report.two_reductive = Some(count),
            Kind::Level2NonDistributive => report.level2_nondistributive = Some(count),
            Kind::AllInvolutive => report.all_involutive = Some(count),
            Kind::Rack => report.racks = Some(count),
        }
    }
    Ok(report)
}

/// Whether an entry's table satisfies what its kind promises.
pub fn entry_is_consistent(e: &CatalogEntry) -> bool {
    let lq_ok = |t| e.table.check(t).unwrap_or(false);
    match e.kind {
        Kind::Rack => lq_ok(PropertyTag::LeftDistributive),
        Kind::AllInvolutive => e.birack.as_ref().is_some_and(|b| b.braid().holds()),
        Kind::TwoReductive => {
            e.birack.as_ref().is_some_and(|b| b.check(BirackPropertyTag::Distributive) && b.braid().holds())
        }
        Kind::Level2NonDistributive => e
            .birack
            .as_ref()
            .is_some_and(|b| b.check(BirackPropertyTag::TwoPermutational) && !b.check(BirackPropertyTag::Distributive)),
    }
}

impl PartialEq for CatalogEntry {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.canonical_key == other.canonical_key
    }
}
