//! Permutation groups given by generators, closed by breadth-first search.

use std::collections::{HashSet, VecDeque};

use crate::abelian::invariant_factors_from_orders;
use crate::error::Result;
use crate::limit::WorkLimit;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    /// Closes `generators` under composition. Every product costs `degree`
    /// lookups against `limit`.
    pub fn generate(degree: usize, generators: Vec<Permutation>, limit: WorkLimit) -> Result<Self> {
        let mut meter = limit.meter();
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                meter.spend(degree as u64 + 1)?;
                let h = s.compose(&g);
                if !seen.contains(&h) {
                    seen.insert(h.clone());
                    queue.push_back(h);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(PermutationGroup { degree, generators, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in lexicographic order of their image arrays (identity first).
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Invariant factors when the group is abelian, `None` otherwise.
    pub fn invariant_factors(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let orders: Vec<u64> = self.elements.iter().map(Permutation::order).collect();
        Some(invariant_factors_from_orders(&orders))
    }
}

/// Orbits of the group generated by `generators`, each sorted, ordered by least element.
pub fn orbits_of(degree: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(x);
    }
    orbits
}
