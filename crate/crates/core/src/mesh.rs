//! Trivial affine meshes and their sums.
//!
//! A mesh is a family of finite abelian groups `A_0, …, A_{k-1}` with constants
//! `c_{i,j} ∈ A_j` such that every column `{c_{i,j} : i}` generates `A_j`. Its
//! sum lives on the disjoint union of the groups, with `a∘b = b + c_{i,j}` and
//! `a•b = a - c_{j,i}` for `a ∈ A_i`, `b ∈ A_j`. Sums are exactly the
//! distributive involutive biracks.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::abelian::{abelian_groups_of_order, FiniteAbelianGroup, GroupElement};
use crate::birack::InvolutiveBirack;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::limit::{SharedMeter, WorkLimit};
use crate::lq::{LeftQuasigroup, PropertyTag};
use crate::perm::{next_permutation, Permutation};

/// Largest size [`enumerate_meshes`] accepts.
pub const MESH_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrivialAffineMesh {
    groups: Vec<FiniteAbelianGroup>,
    /// Row-major `k×k`; entry `(i, j)` is an element index of `groups[j]`.
    constants: Vec<usize>,
}

impl TrivialAffineMesh {
    /// Builds a mesh from groups and constants given as residue tuples,
    /// `constants[i][j]` being `c_{i,j}`. Only the shape is checked here; see
    /// [`is_valid`](Self::is_valid) for the generation condition.
    pub fn new(groups: Vec<FiniteAbelianGroup>, constants: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let k = groups.len();
        if k == 0 {
            return Err(Error::InvalidMesh("a mesh needs at least one group".into()));
        }
        if constants.len() != k || constants.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidMesh(format!("constants must form a {k}x{k} matrix")));
        }
        let mut flat = Vec::with_capacity(k * k);
        for (i, row) in constants.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                let e = groups[j].element(c).map_err(|e| Error::InvalidMesh(format!("constant ({i}, {j}): {e}")))?;
                flat.push(e.index());
            }
        }
        Ok(TrivialAffineMesh { groups, constants: flat })
    }

    /// Builds a mesh from cyclic groups `Z_{orders[i]}` and integer constants.
    ///
    /// ```
    /// use ybmesh::TrivialAffineMesh;
    /// let m = TrivialAffineMesh::cyclic(&[2, 1], &[&[1, 0], &[0, 0]]).unwrap();
    /// assert!(m.is_valid());
    /// assert!(m.condition_star());
    /// assert_eq!(m.to_string(), "((Z_2, Z_1), [[1, 0], [0, 0]])");
    /// ```
    pub fn cyclic(orders: &[usize], constants: &[&[usize]]) -> Result<Self> {
        let groups: Vec<FiniteAbelianGroup> = orders.iter().map(|&d| FiniteAbelianGroup::cyclic(d)).collect();
        if constants.iter().any(|r| r.len() != groups.len()) {
            return Err(Error::InvalidMesh(format!("constants must form a {0}x{0} matrix", groups.len())));
        }
        let coords = constants
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&groups)
                    .map(|(&c, g)| if g.is_trivial() && c == 0 { Vec::new() } else { vec![c] })
                    .collect()
            })
            .collect();
        Self::new(groups, coords)
    }

    /// Builds a mesh from element indices, row-major.
    pub fn from_indices(groups: Vec<FiniteAbelianGroup>, constants: Vec<usize>) -> Result<Self> {
        let k = groups.len();
        if k == 0 || constants.len() != k * k {
            return Err(Error::InvalidMesh(format!("expected {} constants", k * k)));
        }
        for (t, &c) in constants.iter().enumerate() {
            if c >= groups[t % k].order() {
                return Err(Error::InvalidMesh(format!("constant ({}, {}) out of range", t / k, t % k)));
            }
        }
        Ok(TrivialAffineMesh { groups, constants })
    }

    pub fn groups(&self) -> &[FiniteAbelianGroup] {
        &self.groups
    }

    /// Number of groups.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Size of the sum.
    pub fn size(&self) -> usize {
        self.groups.iter().map(FiniteAbelianGroup::order).sum()
    }

    /// `c_{i,j}` as an element index of `A_j`.
    #[inline]
    pub fn constant_index(&self, i: usize, j: usize) -> usize {
        self.constants[i * self.len() + j]
    }

    /// `c_{i,j}`
    pub fn constant(&self, i: usize, j: usize) -> GroupElement {
        self.groups[j].element_at(self.constant_index(i, j))
    }

    pub fn constant_indices(&self) -> &[usize] {
        &self.constants
    }

    fn column(&self, j: usize) -> Vec<usize> {
        (0..self.len()).map(|i| self.constant_index(i, j)).collect()
    }

    /// Whether every column generates its group.
    pub fn is_valid(&self) -> bool {
        (0..self.len()).all(|j| self.groups[j].generates(&self.column(j)))
    }

    /// Every column contains the zero element.
    pub fn condition_star(&self) -> bool {
        (0..self.len()).all(|j| self.column(j).contains(&0))
    }

    /// First carrier element of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut acc = 0;
        for g in &self.groups {
            out.push(acc);
            acc += g.order();
        }
        out
    }

    /// The sum of the mesh. Block `i` occupies carrier elements
    /// `offsets[i] .. offsets[i] + |A_i|` in element-index order.
    pub fn sum(&self) -> Result<InvolutiveBirack> {
        if !self.is_valid() {
            return Err(Error::InvalidMesh("a column does not generate its group".into()));
        }
        let n = self.size();
        let offsets = self.offsets();
        let mut block = Vec::with_capacity(n);
        for (i, g) in self.groups.iter().enumerate() {
            block.extend((0..g.order()).map(|a| (i, a)));
        }
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let i = block[x].0;
            for y in 0..n {
                let (j, b) = block[y];
                mul[x * n + y] = offsets[j] + self.groups[j].add(b, self.constant_index(i, j));
            }
        }
        Ok(InvolutiveBirack::from_cycle_set_unchecked(LeftQuasigroup::from_flat_unchecked(n, mul)))
    }

    /// The isomorphic mesh in canonical form; two meshes are isomorphic
    /// exactly when their canonical forms are equal.
    ///
    /// Groups are sorted by `(order, factors)`. Among all reorderings of
    /// equal groups, and independently per column all automorphisms of
    /// that column's group, the constants are chosen to minimize the
    /// column-major sequence of element indices.
    pub fn canonical(&self) -> TrivialAffineMesh {
        let k = self.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| self.groups[a].sort_key().cmp(&self.groups[b].sort_key()));
        let groups: Vec<FiniteAbelianGroup> = order.iter().map(|&i| self.groups[i].clone()).collect();
        let sorted: Vec<usize> = (0..k * k).map(|t| self.constant_index(order[t / k], order[t % k])).collect();
        let autos: Vec<Vec<Vec<usize>>> = automorphism_table(&groups);
        let blocks = type_blocks(&groups);
        let mut best: Option<Vec<usize>> = None;
        let mut candidate = vec![0; k * k];
        let mut image = vec![0; k];
        for_each_block_permutation(&blocks, k, |pi| {
            // column j of the candidate is min over α of α(sorted[π(i)][π(j)])
            let mut decided = best.is_none();
            for j in 0..k {
                let slot = &mut candidate[j * k..(j + 1) * k];
                for (t, alpha) in autos[j].iter().enumerate() {
                    for i in 0..k {
                        image[i] = alpha[sorted[pi[i] * k + pi[j]]];
                    }
                    if t == 0 || image[..] < slot[..] {
                        slot.copy_from_slice(&image);
                    }
                }
                if !decided {
                    let b = &best.as_ref().expect("set when undecided")[j * k..(j + 1) * k];
                    match slot[..].cmp(b) {
                        std::cmp::Ordering::Less => decided = true,
                        std::cmp::Ordering::Greater => return,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if decided {
                best = Some(candidate.clone());
            }
        });
        let colmajor = best.expect("at least the identity reordering");
        let constants = (0..k * k).map(|t| colmajor[(t % k) * k + t / k]).collect();
        TrivialAffineMesh { groups, constants }
    }

    /// Recovers a mesh from a distributive involutive birack. Returns the mesh
    /// and a permutation `h` with `mesh.sum()?.relabel(&h) == *b`.
    pub fn from_distributive(b: &InvolutiveBirack) -> Result<(TrivialAffineMesh, Permutation)> {
        let circ = b.circ();
        if !circ.check(PropertyTag::MReductive(2))? || !circ.check(PropertyTag::LeftDistributive)? {
            return Err(Error::InvalidArgument("birack is not distributive".into()));
        }
        let orbits = circ.orbits();
        let k = orbits.len();
        let mut groups = Vec::with_capacity(k);
        // points[j][a] = carrier element of orbit j labelled by group element a
        let mut points: Vec<Vec<usize>> = Vec::with_capacity(k);
        for orbit in &orbits {
            let local = |x: usize| orbit.binary_search(&x).expect("orbit is closed");
            let gens: Vec<Permutation> = orbits
                .iter()
                .map(|o| {
                    let images = orbit.iter().map(|&y| local(circ.op(o[0], y))).collect();
                    Permutation::from_images_unchecked(images)
                })
                .collect();
            let g = PermutationGroup::generate(orbit.len(), gens, WorkLimit::DEFAULT)?;
            let factors = g.invariant_factors().ok_or_else(|| Error::InvalidArgument("non-abelian orbit".into()))?;
            let a = FiniteAbelianGroup::new(factors.iter().map(|&d| d as usize).collect())?;
            let basis = find_basis(&g, a.factors()).ok_or_else(|| Error::InvalidArgument("no basis".into()))?;
            let mut pts = Vec::with_capacity(a.order());
            for idx in 0..a.order() {
                let mut p = Permutation::identity(orbit.len());
                for (&c, gen) in a.coords_of(idx).iter().zip(&basis) {
                    for _ in 0..c {
                        p = gen.compose(&p);
                    }
                }
                pts.push(orbit[p.apply(0)]);
            }
            groups.push(a);
            points.push(pts);
        }
        let mut constants = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let target = circ.op(orbits[i][0], orbits[j][0]);
                constants[i * k + j] = points[j].iter().position(|&p| p == target).expect("same orbit");
            }
        }
        let mesh = TrivialAffineMesh { groups, constants };
        let h = Permutation::from_images_unchecked(points.concat());
        Ok((mesh, h))
    }
}

/// Elements `g_i` of an abelian permutation group with `ord(g_i) = d_i` whose
/// span has the full order.
fn find_basis(g: &PermutationGroup, factors: &[usize]) -> Option<Vec<Permutation>> {
    fn span_size(gens: &[Permutation], degree: usize) -> usize {
        PermutationGroup::generate(degree, gens.to_vec(), WorkLimit::DEFAULT).map_or(0, |g| g.order())
    }
    fn go(g: &PermutationGroup, factors: &[usize], chosen: &mut Vec<Permutation>) -> bool {
        if chosen.len() == factors.len() {
            return span_size(chosen, g.degree()) == g.order();
        }
        let d = factors[chosen.len()] as u64;
        let expected: usize = factors[..=chosen.len()].iter().product();
        for e in g.elements() {
            if e.order() != d {
                continue;
            }
            chosen.push(e.clone());
            if span_size(chosen, g.degree()) == expected && go(g, factors, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    go(g, factors, &mut chosen).then_some(chosen)
}

fn automorphism_table(groups: &[FiniteAbelianGroup]) -> Vec<Vec<Vec<usize>>> {
    let mut cache: Vec<(&FiniteAbelianGroup, Vec<Vec<usize>>)> = Vec::new();
    groups
        .iter()
        .map(|g| {
            if let Some((_, a)) = cache.iter().find(|(h, _)| *h == g) {
                return a.clone();
            }
            let a = g.automorphisms();
            cache.push((g, a.clone()));
            a
        })
        .collect()
}

/// Maximal runs of equal groups in a sorted list, as `(start, len)`.
fn type_blocks(groups: &[FiniteAbelianGroup]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        match out.last_mut() {
            Some((s, l)) if groups[*s] == *g => *l += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// Calls `f` with every permutation of `0..k` that maps each block onto itself.
fn for_each_block_permutation(blocks: &[(usize, usize)], k: usize, mut f: impl FnMut(&[usize])) {
    let mut pi: Vec<usize> = (0..k).collect();
    loop {
        f(&pi);
        // advance the last block that still has a next permutation, resetting later ones
        let mut b = blocks.len();
        loop {
            if b == 0 {
                return;
            }
            b -= 1;
            let (s, l) = blocks[b];
            // on wrap-around the block is left sorted, ready for the next round
            if next_permutation(&mut pi[s..s + l]) {
                break;
            }
        }
    }
}

/// Decides whether two meshes have isomorphic sums, by searching for an
/// index bijection `π` matching group types and group isomorphisms
/// `ψ_j : A_j → B_{π(j)}` with `ψ_j(a_{i,j}) = b_{π(i),π(j)}`.
///
/// Each `ψ_j` is determined by the images of the generating column, so it is
/// built by extending the assignment along the column and checking consistency.
///
/// ```
/// use ybmesh::{mesh::mesh_iso, TrivialAffineMesh, WorkLimit};
/// let a = TrivialAffineMesh::cyclic(&[3], &[&[1]]).unwrap();
/// let b = TrivialAffineMesh::cyclic(&[3], &[&[2]]).unwrap();
/// assert!(mesh_iso(&a, &b, WorkLimit::DEFAULT).unwrap());
/// ```
pub fn mesh_iso(a: &TrivialAffineMesh, b: &TrivialAffineMesh, limit: WorkLimit) -> Result<bool> {
    let k = a.len();
    if b.len() != k {
        return Ok(false);
    }
    let mut ta: Vec<&FiniteAbelianGroup> = a.groups.iter().collect();
    let mut tb: Vec<&FiniteAbelianGroup> = b.groups.iter().collect();
    ta.sort();
    tb.sort();
    if ta != tb {
        return Ok(false);
    }
    let mut meter = limit.meter();
    let mut pi = vec![usize::MAX; k];
    let mut used = vec![false; k];
    iso_search(a, b, 0, &mut pi, &mut used, &mut meter)
}

fn iso_search(
    a: &TrivialAffineMesh,
    b: &TrivialAffineMesh,
    depth: usize,
    pi: &mut [usize],
    used: &mut [bool],
    meter: &mut crate::limit::Meter,
) -> Result<bool> {
    let k = a.len();
    if depth == k {
        for j in 0..k {
            meter.spend((a.groups[j].order() * k) as u64)?;
            let src: Vec<usize> = a.column(j);
            let dst: Vec<usize> = (0..k).map(|i| b.constant_index(pi[i], pi[j])).collect();
            if !extends_to_isomorphism(&a.groups[j], &src, &dst) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for t in 0..k {
        if used[t] || a.groups[depth] != b.groups[t] {
            continue;
        }
        pi[depth] = t;
        used[t] = true;
        if iso_search(a, b, depth + 1, pi, used, meter)? {
            return Ok(true);
        }
        used[t] = false;
    }
    pi[depth] = usize::MAX;
    Ok(false)
}

/// Whether `src[i] ↦ dst[i]` extends to an automorphism of `g`, given that
/// `src` generates `g`.
fn extends_to_isomorphism(g: &FiniteAbelianGroup, src: &[usize], dst: &[usize]) -> bool {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for (&s, &d) in src.iter().zip(dst) {
            let y = g.add(x, s);
            let v = g.add(map[x], d);
            if map[y] == usize::MAX {
                map[y] = v;
                stack.push(y);
            } else if map[y] != v {
                return false;
            }
        }
    }
    let mut hit = vec![false; n];
    map.iter().all(|&v| v != usize::MAX && !std::mem::replace(&mut hit[v], true))
}

/// The mesh of `|gens|` copies of `A` with `c_{i,j} = g_i`. Its sum has a
/// permutation group isomorphic to `A`.
///
/// ```
/// use ybmesh::{mesh::iyb_mesh, FiniteAbelianGroup, WorkLimit};
/// let a = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
/// let gens = vec![a.element(vec![1, 0]).unwrap(), a.element(vec![0, 1]).unwrap()];
/// let b = iyb_mesh(&a, &gens).unwrap().sum().unwrap();
/// let (order, abelian, factors) = b.permutation_group_structure(WorkLimit::DEFAULT).unwrap();
/// assert_eq!((order, abelian, factors), (8, true, Some(vec![2, 4])));
/// ```
pub fn iyb_mesh(group: &FiniteAbelianGroup, generators: &[GroupElement]) -> Result<TrivialAffineMesh> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("at least one generator is needed".into()));
    }
    if let Some(g) = generators.iter().find(|g| g.group() != group) {
        return Err(Error::InvalidGroup(format!("element {:?} does not belong to {group}", g.coords())));
    }
    let gens: Vec<usize> = generators.iter().map(GroupElement::index).collect();
    if !group.generates(&gens) {
        return Err(Error::GeneratorsDoNotGenerate);
    }
    let k = gens.len();
    let constants = (0..k * k).map(|t| gens[t / k]).collect();
    Ok(TrivialAffineMesh { groups: vec![group.clone(); k], constants })
}

/// Partitions of `n` into parts in non-increasing order.
fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every multiset of groups whose orders form a partition of `n`, each sorted
/// by `(order, factors)`.
fn group_tuples(n: usize) -> Vec<Vec<FiniteAbelianGroup>> {
    let mut out = Vec::new();
    for mut parts in integer_partitions(n) {
        parts.reverse();
        let mut tuples: Vec<Vec<FiniteAbelianGroup>> = vec![Vec::new()];
        for (idx, &p) in parts.iter().enumerate() {
            let mut options = abelian_groups_of_order(p);
            options.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
            let mut next = Vec::new();
            for t in &tuples {
                for g in &options {
                    // equal parts carry non-decreasing group types
                    if idx > 0 && parts[idx - 1] == p && t[idx - 1].sort_key() > g.sort_key() {
                        continue;
                    }
                    let mut t = t.clone();
                    t.push(g.clone());
                    next.push(t);
                }
            }
            tuples = next;
        }
        out.extend(tuples);
    }
    out
}

/// One mesh per isomorphism class of meshes with sum of size `n`, in
/// canonical form, sorted.
///
/// ```
/// use ybmesh::{mesh::enumerate_meshes, WorkLimit};
/// assert_eq!(enumerate_meshes(3, WorkLimit::DEFAULT).unwrap().len(), 5);
/// ```
pub fn enumerate_meshes(n: usize, limit: WorkLimit) -> Result<Vec<TrivialAffineMesh>> {
    if n == 0 || n > MESH_MAX_N {
        return Err(Error::SizeOutOfBudget { what: "mesh enumeration", n, max: MESH_MAX_N });
    }
    let meter = SharedMeter::new(limit);
    let tasks = group_tuples(n);
    let found: Vec<HashSet<TrivialAffineMesh>> =
        tasks.par_iter().map(|groups| meshes_over(groups, &meter)).collect::<Result<_>>()?;
    let mut all: Vec<TrivialAffineMesh> = found.into_iter().flatten().collect();
    all.sort_by(mesh_order);
    Ok(all)
}

/// Orders meshes by size of the carrier, group list, then constants.
pub(crate) fn mesh_order(a: &TrivialAffineMesh, b: &TrivialAffineMesh) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.groups.iter().map(|g| g.sort_key()).cmp(b.groups.iter().map(|g| g.sort_key())))
        .then_with(|| a.constants.cmp(&b.constants))
}

fn meshes_over(groups: &[FiniteAbelianGroup], meter: &SharedMeter) -> Result<HashSet<TrivialAffineMesh>> {
    let k = groups.len();
    // generating columns for each group
    let columns: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|g| {
            let m = g.order();
            let mut cols = Vec::new();
            let mut col = vec![0; k];
            loop {
                if g.generates(&col) {
                    cols.push(col.clone());
                }
                let mut i = k;
                loop {
                    if i == 0 {
                        return cols;
                    }
                    i -= 1;
                    col[i] += 1;
                    if col[i] < m {
                        break;
                    }
                    col[i] = 0;
                }
            }
        })
        .collect();
    let blocks = type_blocks(groups);
    let perms: u64 = blocks.iter().map(|&(_, l)| (1..=l as u64).product::<u64>()).product();
    let autos: u64 = automorphism_table(groups).iter().map(|a| a.len() as u64).sum();
    let per_mesh = perms * autos * k as u64;
    let mut seen = HashSet::new();
    let mut choice = vec![0usize; k];
    if columns.iter().any(Vec::is_empty) {
        return Ok(seen);
    }
    let mut constants = vec![0; k * k];
    loop {
        meter.spend(per_mesh)?;
        for j in 0..k {
            for i in 0..k {
                constants[i * k + j] = columns[j][choice[j]][i];
            }
        }
        let m = TrivialAffineMesh { groups: groups.to_vec(), constants: constants.clone() };
        seen.insert(m.canonical());
        let mut j = k;
        loop {
            if j == 0 {
                return Ok(seen);
            }
            j -= 1;
            choice[j] += 1;
            if choice[j] < columns[j].len() {
                break;
            }
            choice[j] = 0;
        }
    }
}

impl fmt::Display for TrivialAffineMesh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.len();
        let groups: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "(({}), [", groups.join(", "))?;
        for i in 0..k {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..k {
                if j > 0 {
                    f.write_str(", ")?;
                }
                let c = self.constant(i, j);
                match c.coords() {
                    [] => f.write_str("0")?,
                    [a] => write!(f, "{a}")?,
                    cs => {
                        let parts: Vec<String> = cs.iter().map(|a| a.to_string()).collect();
                        write!(f, "({})", parts.join(","))?
                    }
                }
            }
            f.write_str("]")?;
        }
        f.write_str("])")
    }
}
