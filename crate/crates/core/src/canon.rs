//! Canonical labelling of left quasigroups.
//!
//! Elements are first partitioned by isomorphism-invariant colours, refined
//! until stable. Labels are then handed out cell by cell, and the search keeps
//! the labelling whose table, read in shell order `(0,k), (k,0), (1,k), (k,1),
//! …, (k,k)` for `k = 0, 1, …`, is lexicographically least. Branching only
//! happens when label `k` is still free at the start of shell `k`; every other
//! label is forced by the first entry that mentions its element.

use crate::lq::LeftQuasigroup;
use crate::perm::Permutation;

const FREE: u8 = u8::MAX;

/// A canonical key together with the labelling that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Row-major ∘-table after relabelling, one byte per entry.
    pub key: Vec<u8>,
    /// Element `x` receives label `labeling.apply(x)`.
    pub labeling: Permutation,
}

/// Computes the canonical form of `q`; isomorphic inputs have equal keys.
///
/// ```
/// use ybmesh::{canonical_form, LeftQuasigroup, Permutation};
/// let q = LeftQuasigroup::from_table(&[vec![1, 2, 0], vec![0, 2, 1], vec![0, 2, 1]]).unwrap();
/// let h = Permutation::from_images(vec![2, 0, 1]).unwrap();
/// assert_eq!(canonical_form(&q).key, canonical_form(&q.relabel(&h)).key);
/// ```
pub fn canonical_form(q: &LeftQuasigroup) -> CanonicalForm {
    let n = q.size();
    assert!(n < FREE as usize, "canonical keys support at most 254 elements");
    let colors = refine(q);
    let mut cell_start = vec![0usize; n];
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    for c in 1..n {
        cell_start[c] = cell_start[c - 1] + counts[c - 1];
    }
    let mut label_cell = vec![0usize; n];
    for x in 0..n {
        label_cell[cell_start[colors[x]]..cell_start[colors[x]] + counts[colors[x]]].fill(colors[x]);
    }
    let mut s = Search {
        n,
        mul: q.flat().iter().map(|&v| v as u8).collect(),
        colors: colors.clone(),
        label_cell,
        next_free: cell_start,
        lab: vec![FREE; n],
        elt: vec![FREE; n],
        trail: Vec::with_capacity(n),
        current: vec![0; n * n],
        best: None,
        best_lab: Vec::new(),
        updates: 0,
    };
    s.shell(0, false);
    let labeling = Permutation::from_images_unchecked(s.best_lab.iter().map(|&l| l as usize).collect());
    let mut key = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            key[labeling.apply(x) * n + labeling.apply(y)] = labeling.apply(q.op(x, y)) as u8;
        }
    }
    CanonicalForm { key, labeling }
}

/// Invariant colouring of the elements, colours numbered `0..` in order of
/// their (canonical) signatures.
fn refine(q: &LeftQuasigroup) -> Vec<usize> {
    let n = q.size();
    let classes = q.sim_classes();
    let mut class_size = vec![0; n];
    for &c in &classes {
        class_size[c] += 1;
    }
    let initial: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut sig = q.translation(x).cycle_type();
            sig.push(usize::from(q.op(x, x) == x));
            sig.push(class_size[classes[x]]);
            sig.push(q.translation(x).order() as usize);
            sig
        })
        .collect();
    let mut colors = rank(&initial);
    let mut count = colors.iter().max().map_or(0, |m| m + 1);
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut right: Vec<usize> = (0..n).map(|y| colors[y] * n + colors[q.op(x, y)]).collect();
                let mut left: Vec<usize> = (0..n).map(|y| colors[y] * n + colors[q.op(y, x)]).collect();
                right.sort_unstable();
                left.sort_unstable();
                let mut sig = Vec::with_capacity(2 * n + 1);
                sig.push(colors[x]);
                sig.extend(right);
                sig.extend(left);
                sig
            })
            .collect();
        let next = rank(&sigs);
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        colors = next;
        if next_count == count {
            return colors;
        }
        count = next_count;
    }
}

fn rank(sigs: &[Vec<usize>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<usize>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(&s).expect("present")).collect()
}

struct Search {
    n: usize,
    mul: Vec<u8>,
    colors: Vec<usize>,
    /// Cell (colour) owning each label.
    label_cell: Vec<usize>,
    /// Next unused label of each cell.
    next_free: Vec<usize>,
    lab: Vec<u8>,
    elt: Vec<u8>,
    trail: Vec<u8>,
    /// Shell-order entries of the labelling under construction.
    current: Vec<u8>,
    best: Option<Vec<u8>>,
    best_lab: Vec<u8>,
    /// Bumped whenever `best` is replaced.
    updates: u64,
}

impl Search {
    fn assign(&mut self, x: usize) {
        let c = self.colors[x];
        let l = self.next_free[c];
        self.next_free[c] += 1;
        self.lab[x] = l as u8;
        self.elt[l] = x as u8;
        self.trail.push(x as u8);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("non-empty") as usize;
            let l = self.lab[x] as usize;
            self.next_free[self.colors[x]] -= 1;
            self.lab[x] = FREE;
            self.elt[l] = FREE;
        }
    }

    /// `better` records that the prefix written so far is already smaller than `best`.
    fn shell(&mut self, k: usize, better: bool) {
        if k == self.n {
            if better || self.best.is_none() {
                self.best = Some(self.current.clone());
                self.best_lab = self.lab.clone();
                self.updates += 1;
            }
            return;
        }
        if self.elt[k] != FREE {
            self.fill(k, better);
            return;
        }
        let cell = self.label_cell[k];
        let entry = self.updates;
        for x in 0..self.n {
            if self.colors[x] != cell || self.lab[x] != FREE {
                continue;
            }
            let mark = self.trail.len();
            self.assign(x);
            debug_assert_eq!(self.lab[x] as usize, k);
            // a new best found below a sibling shares this node's prefix
            self.fill(k, better && self.updates == entry);
            self.undo_to(mark);
        }
    }

    fn fill(&mut self, k: usize, mut better: bool) {
        let mark = self.trail.len();
        let mut pos = k * k;
        let n = self.n;
        for t in 0..=2 * k {
            let (a, b) = if t == 2 * k {
                (k, k)
            } else if t % 2 == 0 {
                (t / 2, k)
            } else {
                (k, t / 2)
            };
            let v = self.mul[self.elt[a] as usize * n + self.elt[b] as usize] as usize;
            if self.lab[v] == FREE {
                self.assign(v);
            }
            let val = self.lab[v];
            self.current[pos] = val;
            if !better {
                if let Some(best) = &self.best {
                    match val.cmp(&best[pos]) {
                        std::cmp::Ordering::Less => better = true,
                        std::cmp::Ordering::Greater => {
                            self.undo_to(mark);
                            return;
                        }
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            pos += 1;
        }
        self.shell(k + 1, better || self.best.is_none());
        self.undo_to(mark);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn lq(rows: &[&[usize]]) -> LeftQuasigroup {
        LeftQuasigroup::from_table(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn key_matches_labelling() {
        let q = lq(&[&[1, 0, 3, 2], &[3, 2, 1, 0], &[1, 0, 3, 2], &[3, 2, 1, 0]]);
        let c = canonical_form(&q);
        let r = q.relabel(&c.labeling);
        let bytes: Vec<u8> = r.flat().iter().map(|&v| v as u8).collect();
        assert_eq!(bytes, c.key);
    }

    #[test]
    fn invariant_under_all_relabelings() {
        let samples = [
            lq(&[&[0, 2, 1, 4, 3], &[3, 2, 1, 0, 4], &[4, 2, 1, 3, 0], &[0, 2, 1, 4, 3], &[0, 2, 1, 4, 3]]),
            lq(&[&[0, 1, 4, 3, 2], &[2, 1, 0, 4, 3], &[3, 1, 2, 0, 4], &[0, 1, 4, 3, 2], &[3, 1, 2, 0, 4]]),
            LeftQuasigroup::trivial(5),
        ];
        for q in &samples {
            let key = canonical_form(q).key;
            for h in all_permutations(5) {
                assert_eq!(canonical_form(&q.relabel(&h)).key, key);
            }
        }
    }

    #[test]
    fn distinguishes_level_three_pair() {
        let a = lq(&[&[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 3, 2], &[1, 0, 3, 2]]);
        let b = lq(&[&[1, 0, 2, 3], &[1, 0, 2, 3], &[0, 1, 3, 2], &[1, 0, 3, 2]]);
        assert_ne!(canonical_form(&a).key, canonical_form(&b).key);
    }
}
