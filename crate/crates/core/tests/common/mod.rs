//! Fixtures and independent oracles shared by the integration tests. The
//! oracles work on raw `Vec<Vec<usize>>` tables and never call into the
//! library's algorithms.

#![allow(dead_code)]

use ybmesh::{InvolutiveBirack, LeftQuasigroup, Permutation, TrivialAffineMesh};

pub type Table = Vec<Vec<usize>>;

pub fn table(rows: &[&[usize]]) -> Table {
    rows.iter().map(|r| r.to_vec()).collect()
}

pub fn lq(rows: &[&[usize]]) -> LeftQuasigroup {
    LeftQuasigroup::from_table(&table(rows)).unwrap()
}

pub fn birack(rows: &[&[usize]]) -> InvolutiveBirack {
    InvolutiveBirack::from_cycle_set(lq(rows)).unwrap()
}

pub fn cycles(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

/// Table whose row `x` is the left translation `rows[x]`, given in cycle notation.
pub fn from_cycles(n: usize, rows: &[&str]) -> Table {
    rows.iter().map(|s| cycles(n, s).images().to_vec()).collect()
}

pub fn mesh(orders: &[usize], constants: &[&[usize]]) -> TrivialAffineMesh {
    TrivialAffineMesh::cyclic(orders, constants).unwrap()
}

// ---- fixtures ----

pub fn rack4() -> Table {
    table(&[&[0, 1, 2, 3], &[2, 3, 0, 1], &[0, 1, 2, 3], &[2, 3, 0, 1]])
}

pub fn twisted4() -> Table {
    table(&[&[1, 0, 3, 2], &[3, 2, 1, 0], &[1, 0, 3, 2], &[3, 2, 1, 0]])
}

pub fn twisted4_bullet() -> Table {
    table(&[&[3, 1, 3, 1], &[2, 0, 2, 0], &[1, 3, 1, 3], &[0, 2, 0, 2]])
}

pub fn lopsided3() -> Table {
    table(&[&[1, 0, 2], &[2, 0, 1], &[2, 0, 1]])
}

pub fn lopsided3_div() -> Table {
    table(&[&[1, 0, 2], &[1, 2, 0], &[1, 2, 0]])
}

pub fn onesided4() -> Table {
    table(&[&[0, 1, 3, 2], &[2, 3, 1, 0], &[3, 2, 0, 1], &[1, 0, 2, 3]])
}

pub fn onesided4_div() -> Table {
    table(&[&[0, 1, 3, 2], &[3, 2, 0, 1], &[2, 3, 1, 0], &[1, 0, 2, 3]])
}

pub fn lri5() -> Table {
    from_cycles(5, &["(2 4)", "(0 2)(3 4)", "(0 3)", "(2 4)", "(0 3)"])
}

/// Three elements, 2-permutational but not medial.
pub fn three_nonmedial() -> Table {
    table(&[&[0, 2, 1], &[0, 2, 1], &[1, 2, 0]])
}

pub fn three_nonmedial_isotope() -> Table {
    table(&[&[0, 1, 2], &[0, 1, 2], &[1, 0, 2]])
}

pub fn five() -> Table {
    table(&[&[0, 2, 1, 4, 3], &[3, 2, 1, 0, 4], &[4, 2, 1, 3, 0], &[0, 2, 1, 4, 3], &[0, 2, 1, 4, 3]])
}

pub fn five_iso0() -> Table {
    table(&[&[0, 1, 2, 3, 4], &[3, 1, 2, 4, 0], &[4, 1, 2, 0, 3], &[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4]])
}

pub fn five_iso1() -> Table {
    table(&[&[4, 1, 2, 0, 3], &[0, 1, 2, 3, 4], &[3, 1, 2, 4, 0], &[4, 1, 2, 0, 3], &[4, 1, 2, 0, 3]])
}

pub fn rack4_gamma() -> Table {
    table(&[&[1, 2, 3, 0], &[3, 0, 1, 2], &[1, 2, 3, 0], &[3, 0, 1, 2]])
}

/// lri holds but the birack is not 2-permutational.
pub fn lri4() -> Table {
    from_cycles(4, &["(0 2)", "", "(0 2)(1 3)", ""])
}

pub fn level3_a() -> Table {
    table(&[&[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 3, 2], &[1, 0, 3, 2]])
}

pub fn level3_b() -> Table {
    table(&[&[1, 0, 2, 3], &[1, 0, 2, 3], &[0, 1, 3, 2], &[1, 0, 3, 2]])
}

/// The five size-3 meshes as (orders, constants).
pub fn meshes3() -> Vec<TrivialAffineMesh> {
    vec![
        mesh(&[3], &[&[1]]),
        mesh(&[2, 1], &[&[1, 0], &[0, 0]]),
        mesh(&[2, 1], &[&[0, 0], &[1, 0]]),
        mesh(&[2, 1], &[&[1, 0], &[1, 0]]),
        mesh(&[1, 1, 1], &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
    ]
}

/// The seventeen size-4 meshes.
pub fn meshes4() -> Vec<TrivialAffineMesh> {
    vec![
        mesh(&[4], &[&[1]]),
        mesh(&[3, 1], &[&[0, 0], &[1, 0]]),
        mesh(&[3, 1], &[&[1, 0], &[0, 0]]),
        mesh(&[3, 1], &[&[1, 0], &[1, 0]]),
        mesh(&[3, 1], &[&[2, 0], &[1, 0]]),
        mesh(&[2, 2], &[&[0, 0], &[1, 1]]),
        mesh(&[2, 2], &[&[1, 1], &[1, 0]]),
        mesh(&[2, 2], &[&[1, 0], &[1, 1]]),
        mesh(&[2, 2], &[&[1, 0], &[0, 1]]),
        mesh(&[2, 2], &[&[0, 1], &[1, 0]]),
        mesh(&[2, 2], &[&[1, 1], &[1, 1]]),
        mesh(&[2, 1, 1], &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
        mesh(&[2, 1, 1], &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
        mesh(&[2, 1, 1], &[&[0, 0, 0], &[1, 0, 0], &[1, 0, 0]]),
        mesh(&[2, 1, 1], &[&[1, 0, 0], &[0, 0, 0], &[1, 0, 0]]),
        mesh(&[2, 1, 1], &[&[1, 0, 0], &[1, 0, 0], &[1, 0, 0]]),
        mesh(&[1, 1, 1, 1], &[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
    ]
}

// ---- oracles ----

pub fn is_lq(t: &Table) -> bool {
    let n = t.len();
    t.iter().all(|r| {
        let mut seen = vec![false; n];
        r.len() == n && r.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    })
}

/// Row-wise inverse.
pub fn division(t: &Table) -> Table {
    let n = t.len();
    let mut d = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            d[x][t[x][y]] = y;
        }
    }
    d
}

/// `x•y = (x∘y)\x`.
pub fn bullet_of(t: &Table) -> Table {
    let d = division(t);
    let n = t.len();
    (0..n).map(|x| (0..n).map(|y| d[t[x][y]][x]).collect()).collect()
}

pub fn right_cyclic(t: &Table) -> bool {
    let d = division(t);
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| d[d[x][y]][d[x][z]] == d[d[y][x]][d[y][z]])))
}

pub fn left_distributive(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[x][t[y][z]] == t[t[x][y]][t[x][z]])))
}

pub fn two_reductive(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| t[t[x][y]] == t[y]))
}

pub fn two_permutational(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|z| t[t[z][x]] == t[t[0][x]]))
}

pub fn medial(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| (0..n).all(|w| t[t[x][y]][t[z][w]] == t[t[x][z]][t[y][w]]))))
}

pub fn idempotent(t: &Table) -> bool {
    (0..t.len()).all(|x| t[x][x] == x)
}

pub fn idempotent_count(t: &Table) -> usize {
    (0..t.len()).filter(|&x| t[x][x] == x).count()
}

/// `r(x, y) = (x∘y, x•y)` satisfies the braid relation and `r² = id`.
pub fn is_involutive_solution(circ: &Table, bullet: &Table) -> bool {
    let n = circ.len();
    let r = |x: usize, y: usize| (circ[x][y], bullet[x][y]);
    for x in 0..n {
        for y in 0..n {
            let (a, b) = r(x, y);
            if r(a, b) != (x, y) {
                return false;
            }
            for z in 0..n {
                // r12 r23 r12 = r23 r12 r23
                let (a1, b1) = r(x, y);
                let (b2, c2) = r(b1, z);
                let (a3, b3) = r(a1, b2);
                let left = (a3, b3, c2);
                let (y1, z1) = r(y, z);
                let (x2, y2) = r(x, y1);
                let (y3, z3) = r(y2, z1);
                let right = (x2, y3, z3);
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of retraction steps down to one point, `None` if it stalls.
pub fn level(t: &Table) -> Option<usize> {
    let mut t = t.clone();
    let mut steps = 0;
    while t.len() > 1 {
        let n = t.len();
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if class[x] == usize::MAX {
                for y in x..n {
                    if t[y] == t[x] {
                        class[y] = reps.len();
                    }
                }
                reps.push(x);
            }
        }
        if reps.len() == n {
            return None;
        }
        t = reps.iter().map(|&a| reps.iter().map(|&b| class[t[a][b]]).collect()).collect();
        steps += 1;
    }
    Some(steps)
}

/// All permutations of `0..n` in lexicographic order.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `h(x)∘' h(y) = h(x∘y)`.
pub fn relabel(t: &Table, h: &[usize]) -> Table {
    let n = t.len();
    let mut r = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            r[h[x]][h[y]] = h[t[x][y]];
        }
    }
    r
}

/// Least relabelled table over all `n!` relabelings.
pub fn brute_canon(t: &Table) -> Table {
    perms(t.len()).iter().map(|h| relabel(t, h)).min().expect("n >= 1")
}

pub fn brute_iso(a: &Table, b: &Table) -> bool {
    a.len() == b.len() && perms(a.len()).iter().any(|h| relabel(a, h) == *b)
}

/// Calls `f` on every left quasigroup of size `n` (all `n!^n` tables).
pub fn for_each_lq(n: usize, mut f: impl FnMut(&Table)) {
    let rows = perms(n);
    let mut idx = vec![0usize; n];
    loop {
        let t: Table = idx.iter().map(|&i| rows[i].clone()).collect();
        f(&t);
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            idx[k] += 1;
            if idx[k] < rows.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Sum of a mesh computed directly from its definition. `orders` are cyclic.
pub fn cyclic_mesh_sum(orders: &[usize], c: &[&[usize]]) -> Table {
    let offsets: Vec<usize> = orders
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let n: usize = orders.iter().sum();
    let block = |x: usize| (0..orders.len()).rev().find(|&i| offsets[i] <= x).unwrap();
    (0..n)
        .map(|a| {
            let i = block(a);
            (0..n)
                .map(|b| {
                    let j = block(b);
                    offsets[j] + (b - offsets[j] + c[i][j]) % orders[j]
                })
                .collect()
        })
        .collect()
}

/// Class counts of small structures found by exhausting all tables of size `n`.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct OracleCounts {
    pub racks: usize,
    pub two_reductive_racks: usize,
    pub involutive: usize,
    pub level2: usize,
    pub level2_nondistributive: usize,
}

pub fn oracle_counts(n: usize) -> OracleCounts {
    use std::collections::HashSet;
    let mut racks = HashSet::new();
    let mut red = HashSet::new();
    let mut inv = HashSet::new();
    let mut l2 = HashSet::new();
    let mut l2nd = HashSet::new();
    for_each_lq(n, |t| {
        let ld = left_distributive(t);
        if ld {
            let c = brute_canon(t);
            if two_reductive(t) {
                red.insert(c.clone());
            }
            racks.insert(c);
        }
        if right_cyclic(t) {
            let c = brute_canon(t);
            if two_permutational(t) {
                if !ld {
                    l2nd.insert(c.clone());
                }
                l2.insert(c.clone());
            }
            inv.insert(c);
        }
    });
    OracleCounts {
        racks: racks.len(),
        two_reductive_racks: red.len(),
        involutive: inv.len(),
        level2: l2.len(),
        level2_nondistributive: l2nd.len(),
    }
}

/// A mesh isomorphic to `m`: blocks reordered by `sigma` (block `i` moves to
/// `sigma[i]`) and each group twisted by its `aut_choice[j]`-th automorphism.
pub fn scramble(m: &TrivialAffineMesh, sigma: &[usize], aut_choice: &[usize]) -> TrivialAffineMesh {
    let k = m.len();
    let auts: Vec<Vec<usize>> = (0..k)
        .map(|j| {
            let all = m.groups()[j].automorphisms();
            all[aut_choice[j] % all.len()].clone()
        })
        .collect();
    let mut groups = vec![m.groups()[0].clone(); k];
    for i in 0..k {
        groups[sigma[i]] = m.groups()[i].clone();
    }
    let mut constants = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            constants[sigma[i] * k + sigma[j]] = auts[j][m.constant_index(i, j)];
        }
    }
    TrivialAffineMesh::from_indices(groups, constants).unwrap()
}
