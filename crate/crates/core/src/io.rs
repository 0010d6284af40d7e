//! Text formats: solution tables (`.lqt`), meshes (`.mesh`) and catalogs (`.cat`).
//!
//! A solution file holds a header `n N`, `N` rows of the ∘-table and an
//! optional `bullet` section with `N` rows of the •-table. A mesh file holds
//! `orbits k`, one `group i d1 d2 …` line per group and one
//! `const i j c1 c2 …` line per constant. Catalogs have one record per line:
//! `n=<n>;key=<hex>;kind=<kind>;prov=<provenance>`. Lines starting with `#`
//! and blank lines are ignored in the first two formats.

use std::fmt::Write as _;

use crate::abelian::FiniteAbelianGroup;
use crate::birack::InvolutiveBirack;
use crate::canon::canonical_form;
use crate::enumerate::{CatalogEntry, Kind, Provenance};
use crate::error::{Error, Result};
use crate::isotope::lq_isotope;
use crate::lq::{LeftQuasigroup, PropertyTag};
use crate::mesh::TrivialAffineMesh;
use crate::perm::Permutation;

/// Raw tables read from a solution file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionTables {
    pub circ: Vec<Vec<usize>>,
    pub bullet: Option<Vec<Vec<usize>>>,
}

impl SolutionTables {
    pub fn size(&self) -> usize {
        self.circ.len()
    }

    pub fn left_quasigroup(&self) -> Result<LeftQuasigroup> {
        LeftQuasigroup::from_table(&self.circ)
    }

    /// Validates the tables as an involutive birack, deriving `•` when absent.
    pub fn birack(&self) -> Result<InvolutiveBirack> {
        match &self.bullet {
            Some(bullet) => InvolutiveBirack::from_tables(&self.circ, bullet),
            None => InvolutiveBirack::from_cycle_set(self.left_quasigroup()?),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Meaningful lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_numbers(line: usize, words: &[&str]) -> Result<Vec<usize>> {
    words.iter().map(|w| w.parse().map_err(|_| parse_err(line, format!("not a number: {w:?}")))).collect()
}

/// Parses a solution file without validating any axiom.
///
/// ```
/// use ybmesh::io::parse_solution;
/// let t = parse_solution("# two points\nn 2\n1 0\n1 0\n").unwrap();
/// assert_eq!(t.circ, vec![vec![1, 0], vec![1, 0]]);
/// assert!(t.bullet.is_none());
/// assert_eq!(t.birack().unwrap().bullet_table(), vec![vec![1, 1], vec![0, 0]]);
/// ```
pub fn parse_solution(text: &str) -> Result<SolutionTables> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"n <size>\""))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let n = match words.as_slice() {
        ["n", size] => size.parse::<usize>().map_err(|_| parse_err(hl, "invalid size"))?,
        _ => return Err(parse_err(hl, "expected header \"n <size>\"")),
    };
    if n == 0 {
        return Err(parse_err(hl, "size must be positive"));
    }
    let read_rows = |what: &str, lines: &mut dyn Iterator<Item = (usize, &str)>| -> Result<Vec<Vec<usize>>> {
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let (ln, l) = lines.next().ok_or_else(|| parse_err(0, format!("{what} table has only {r} rows")))?;
            let words: Vec<&str> = l.split_whitespace().collect();
            if words.len() != n {
                return Err(parse_err(ln, format!("expected {n} entries, found {}", words.len())));
            }
            let row = parse_numbers(ln, &words)?;
            if let Some(v) = row.iter().find(|&&v| v >= n) {
                return Err(parse_err(ln, format!("entry {v} outside 0..{n}")));
            }
            rows.push(row);
        }
        Ok(rows)
    };
    let circ = read_rows("circ", &mut lines)?;
    let bullet = match lines.next() {
        None => None,
        Some((_, "bullet")) => Some(read_rows("bullet", &mut lines)?),
        Some((ln, l)) => return Err(parse_err(ln, format!("unexpected line {l:?}"))),
    };
    if let Some((ln, l)) = lines.next() {
        return Err(parse_err(ln, format!("unexpected line {l:?}")));
    }
    Ok(SolutionTables { circ, bullet })
}

fn write_rows(out: &mut String, rows: impl Iterator<Item = Vec<usize>>) {
    for row in rows {
        let words: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
}

/// Prints a birack with both tables.
pub fn print_solution(b: &InvolutiveBirack) -> String {
    let mut out = format!("n {}\n", b.size());
    write_rows(&mut out, b.circ().table().into_iter());
    out.push_str("bullet\n");
    write_rows(&mut out, b.bullet_table().into_iter());
    out
}

/// Prints a left quasigroup without a bullet section.
pub fn print_table(q: &LeftQuasigroup) -> String {
    let mut out = format!("n {}\n", q.size());
    write_rows(&mut out, q.table().into_iter());
    out
}

/// Parses and validates a mesh file.
///
/// ```
/// use ybmesh::io::{parse_mesh, print_mesh};
/// let text = "orbits 2\ngroup 0 2\ngroup 1\nconst 0 0 1\nconst 0 1\nconst 1 0 0\nconst 1 1\n";
/// let m = parse_mesh(text).unwrap();
/// assert_eq!(m.to_string(), "((Z_2, Z_1), [[1, 0], [0, 0]])");
/// assert_eq!(print_mesh(&m), text);
/// ```
pub fn parse_mesh(text: &str) -> Result<TrivialAffineMesh> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"orbits <k>\""))?;
    let k = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["orbits", k] => k.parse::<usize>().map_err(|_| parse_err(hl, "invalid orbit count"))?,
        _ => return Err(parse_err(hl, "expected header \"orbits <k>\"")),
    };
    if k == 0 {
        return Err(parse_err(hl, "a mesh needs at least one orbit"));
    }
    let mut groups: Vec<Option<FiniteAbelianGroup>> = vec![None; k];
    let mut consts: Vec<Option<Vec<usize>>> = vec![None; k * k];
    for (ln, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["group", rest @ ..] if !rest.is_empty() => {
                let nums = parse_numbers(ln, rest)?;
                let i = nums[0];
                if i >= k {
                    return Err(parse_err(ln, format!("group index {i} out of range")));
                }
                if groups[i].is_some() {
                    return Err(parse_err(ln, format!("group {i} given twice")));
                }
                let g = FiniteAbelianGroup::new(nums[1..].to_vec()).map_err(|e| parse_err(ln, e.to_string()))?;
                groups[i] = Some(g);
            }
            ["const", rest @ ..] if rest.len() >= 2 => {
                let nums = parse_numbers(ln, rest)?;
                let (i, j) = (nums[0], nums[1]);
                if i >= k || j >= k {
                    return Err(parse_err(ln, format!("constant index ({i}, {j}) out of range")));
                }
                if consts[i * k + j].is_some() {
                    return Err(parse_err(ln, format!("constant ({i}, {j}) given twice")));
                }
                consts[i * k + j] = Some(nums[2..].to_vec());
            }
            _ => return Err(parse_err(ln, format!("unexpected line {l:?}"))),
        }
    }
    let groups: Vec<FiniteAbelianGroup> = groups
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.ok_or_else(|| parse_err(0, format!("group {i} missing"))))
        .collect::<Result<_>>()?;
    let mut matrix = vec![Vec::with_capacity(k); k];
    for (t, c) in consts.into_iter().enumerate() {
        let c = c.ok_or_else(|| parse_err(0, format!("constant ({}, {}) missing", t / k, t % k)))?;
        matrix[t / k].push(c);
    }
    let mesh = TrivialAffineMesh::new(groups, matrix)?;
    if !mesh.is_valid() {
        return Err(Error::InvalidMesh("a column does not generate its group".into()));
    }
    Ok(mesh)
}

pub fn print_mesh(m: &TrivialAffineMesh) -> String {
    let k = m.len();
    let mut out = format!("orbits {k}\n");
    for (i, g) in m.groups().iter().enumerate() {
        out.push_str(&format!("group {i}"));
        for d in g.factors() {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
    for i in 0..k {
        for j in 0..k {
            let _ = write!(out, "const {i} {j}");
            for a in m.constant(i, j).coords() {
                let _ = write!(out, " {a}");
            }
            out.push('\n');
        }
    }
    out
}

fn mesh_spec(m: &TrivialAffineMesh) -> String {
    let groups: Vec<String> = m
        .groups()
        .iter()
        .map(|g| {
            if g.is_trivial() {
                "1".to_string()
            } else {
                g.factors().iter().map(usize::to_string).collect::<Vec<_>>().join(".")
            }
        })
        .collect();
    let consts: Vec<String> = m.constant_indices().iter().map(usize::to_string).collect();
    format!("{}:{}", groups.join("/"), consts.join(","))
}

fn parse_list(line: usize, s: &str, sep: char) -> Result<Vec<usize>> {
    s.split(sep).map(|w| w.parse().map_err(|_| parse_err(line, format!("not a number: {w:?}")))).collect()
}

fn parse_mesh_spec(line: usize, groups: &str, consts: &str) -> Result<TrivialAffineMesh> {
    let groups: Vec<FiniteAbelianGroup> = groups
        .split('/')
        .map(|g| {
            if g == "1" {
                Ok(FiniteAbelianGroup::trivial())
            } else {
                FiniteAbelianGroup::new(parse_list(line, g, '.')?).map_err(|e| parse_err(line, e.to_string()))
            }
        })
        .collect::<Result<_>>()?;
    let mesh = TrivialAffineMesh::from_indices(groups, parse_list(line, consts, ',')?)
        .map_err(|e| parse_err(line, e.to_string()))?;
    if !mesh.is_valid() {
        return Err(parse_err(line, "provenance mesh is not valid"));
    }
    Ok(mesh)
}

fn provenance_spec(p: &Provenance) -> String {
    match p {
        Provenance::Mesh(m) => format!("mesh:{}", mesh_spec(m)),
        Provenance::Isotope { base, pi } => {
            let images: Vec<String> = pi.images().iter().map(usize::to_string).collect();
            format!("iso:{}:{}", mesh_spec(base), images.join(","))
        }
        Provenance::Search => "search".to_string(),
    }
}

fn parse_provenance(line: usize, s: &str) -> Result<Provenance> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["search"] => Ok(Provenance::Search),
        ["mesh", g, c] => Ok(Provenance::Mesh(parse_mesh_spec(line, g, c)?)),
        ["iso", g, c, p] => {
            let base = parse_mesh_spec(line, g, c)?;
            let pi = Permutation::from_images(parse_list(line, p, ',')?).map_err(|e| parse_err(line, e.to_string()))?;
            Ok(Provenance::Isotope { base, pi })
        }
        _ => Err(parse_err(line, format!("unknown provenance {s:?}"))),
    }
}

/// One record per entry, in the given order.
pub fn write_catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let _ = writeln!(
            out,
            "n={};key={};kind={};prov={}",
            e.size(),
            hex::encode(&e.canonical_key),
            e.kind,
            provenance_spec(&e.provenance)
        );
    }
    out
}

/// Reads a catalog, rebuilding each table from its key. Tables are
/// revalidated (braid and involutivity, or left distributivity for racks)
/// and provenance is replayed and must land on the same key.
pub fn read_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut n = None;
        let mut key = None;
        let mut kind = None;
        let mut prov = None;
        for field in line.trim().split(';') {
            let (name, value) = field.split_once('=').ok_or_else(|| parse_err(ln, format!("bad field {field:?}")))?;
            match name {
                "n" => n = Some(value.parse::<usize>().map_err(|_| parse_err(ln, "invalid n"))?),
                "key" => key = Some(hex::decode(value).map_err(|e| parse_err(ln, e.to_string()))?),
                "kind" => kind = Some(value.parse::<Kind>().map_err(|e| parse_err(ln, e.to_string()))?),
                "prov" => prov = Some(parse_provenance(ln, value)?),
                _ => return Err(parse_err(ln, format!("unknown field {name:?}"))),
            }
        }
        let (n, key, kind, provenance) = match (n, key, kind, prov) {
            (Some(n), Some(k), Some(t), Some(p)) => (n, k, t, p),
            _ => return Err(parse_err(ln, "record needs n, key, kind and prov")),
        };
        if n == 0 || key.len() != n * n {
            return Err(parse_err(ln, "key length does not match n"));
        }
        let table = LeftQuasigroup::from_flat(n, key.iter().map(|&v| v as usize).collect())
            .map_err(|e| parse_err(ln, e.to_string()))?;
        if canonical_form(&table).key != key {
            return Err(parse_err(ln, "key is not in canonical form"));
        }
        let birack = InvolutiveBirack::from_cycle_set(table.clone()).ok();
        match kind {
            Kind::Rack => {
                if !table.check(PropertyTag::LeftDistributive)? {
                    return Err(parse_err(ln, "table is not left distributive"));
                }
            }
            _ => match &birack {
                Some(b) if b.braid().holds() => {}
                _ => return Err(parse_err(ln, "table is not an involutive solution")),
            },
        }
        let replayed = match &provenance {
            Provenance::Search => None,
            Provenance::Mesh(m) => Some(m.sum()?.into_circ()),
            Provenance::Isotope { base, pi } => Some(lq_isotope(base.sum()?.circ(), pi)?),
        };
        if let Some(q) = replayed {
            if canonical_form(&q).key != key {
                return Err(parse_err(ln, "provenance does not reproduce the key"));
            }
        }
        out.push(CatalogEntry { kind, table, birack, provenance, canonical_key: key });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_errors() {
        assert!(matches!(parse_solution(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_solution("n 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_solution("n 2\n0 1\n0 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_solution("n 2\n0 1\n0 1\nextra\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_solution("size 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn solution_round_trip() {
        let t = parse_solution("n 4\n1 0 3 2\n3 2 1 0\n1 0 3 2\n3 2 1 0\n").unwrap();
        let b = t.birack().unwrap();
        let text = print_solution(&b);
        let again = parse_solution(&text).unwrap();
        assert_eq!(again.birack().unwrap(), b);
        assert_eq!(print_solution(&again.birack().unwrap()), text);
    }

    #[test]
    fn mesh_errors() {
        assert!(parse_mesh("orbits 1\ngroup 0 2\n").is_err());
        assert!(parse_mesh("orbits 1\ngroup 0 2\nconst 0 0 0\n").is_err());
        assert!(parse_mesh("orbits 1\ngroup 0 2 3\nconst 0 0 1 1\n").is_err());
        assert!(parse_mesh("orbits 1\ngroup 0 2\nconst 0 0 1\nconst 0 0 1\n").is_err());
        assert!(parse_mesh("orbits 1\ngroup 0 3\nconst 0 0 2\n").is_ok());
    }

    #[test]
    fn catalog_rejects_tampering() {
        assert!(read_catalog("").unwrap().is_empty());
        let e = crate::enumerate::enumerate_distributive(2, &crate::enumerate::Budget::default()).unwrap();
        let text = write_catalog(&e);
        assert_eq!(read_catalog(&text).unwrap(), e);
        let bad = text.replace("kind=2reductive", "kind=quandles");
        assert!(read_catalog(&bad).is_err());
        let bad = text.lines().next().unwrap().replace("key=", "key=00");
        assert!(read_catalog(&bad).is_err());
    }
}
