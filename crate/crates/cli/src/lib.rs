//! Command-line frontend: argument parsing, file handling and exit codes.
//!
//! Exit codes: 0 success or property true, 1 property false or not
//! isomorphic, 2 invalid input, 3 work limit exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use ybmesh::birack::check_braid;
use ybmesh::enumerate::{self, Budget, Kind};
use ybmesh::io::{self, SolutionTables};
use ybmesh::isotope::{birack_isotope, to_distributive};
use ybmesh::mesh::iyb_mesh;
use ybmesh::{BirackPropertyTag, Error, FiniteAbelianGroup, InvolutiveBirack, Permutation, PropertyTag, WorkLimit};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ybmesh", version, about = "Involutive Yang-Baxter solutions of multipermutation level 2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct BudgetArgs {
    /// Largest size accepted by the level-2 non-distributive enumerator.
    #[arg(long, default_value_t = 7)]
    level2_max_n: usize,
    /// Largest size accepted by the brute-force enumerators.
    #[arg(long, default_value_t = 6)]
    brute_max_n: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { level2_max_n: self.level2_max_n, brute_max_n: self.brute_max_n, ..Budget::default() }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate one isomorphism class per solution (or rack) of a given size.
    Enumerate {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long)]
        size: usize,
        /// Print only the number of classes.
        #[arg(long)]
        count_only: bool,
        /// Write the catalog here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; 0 means one per logical core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a property of a solution file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Write the sum of a mesh as a solution file.
    Sum {
        mesh: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the isotope x*y = x∘π(y); π is given by its images.
    Isotope {
        file: PathBuf,
        #[arg(long)]
        perm: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a 2-permutational solution into a distributive one.
    ToDistributive {
        file: PathBuf,
        #[arg(long)]
        element: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the retraction of a solution.
    Retract {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the multipermutation level.
    Level { file: PathBuf },
    /// Decide whether two solutions are isomorphic and print an isomorphism.
    Iso { first: PathBuf, second: PathBuf },
    /// Write the mesh whose sum has permutation group isomorphic to the given group.
    Iyb {
        /// Invariant factors d1,d2,… with each dividing the next; empty for the trivial group.
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        /// Generators as space-separated coordinate tuples, e.g. "1,0 0,1".
        #[arg(long)]
        generators: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print class counts for sizes 1..=N.
    Tables {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Braid,
    Involutive,
    Lri,
    Distributive,
    #[value(name = "2reductive")]
    TwoReductive,
    #[value(name = "2permutational")]
    TwoPermutational,
    Medial,
    RightCyclic,
    Idempotent,
    Star,
    NonDegenerate,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure carrying an exit code and a one-line diagnostic.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::WorkLimitExceeded { .. }) { EXIT_LIMIT } else { EXIT_INVALID };
        Failure { code, msg: e.to_string() }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, msg: msg.into() }
}

/// Runs the tool with `args` (including the program name), writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return EXIT_INVALID;
        }
    };
    let mut stdout = String::new();
    let result = dispatch(cli.command, &mut stdout);
    let _ = out.write_all(stdout.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_tables(path: &Path) -> Result<SolutionTables, Failure> {
    io::parse_solution(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_birack(path: &Path) -> Result<InvolutiveBirack, Failure> {
    load_tables(path)?.birack().map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or appends it to standard output.
fn emit(text: &str, path: Option<&Path>, stdout: &mut String) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}

fn truth(b: bool) -> u8 {
    if b {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn dispatch(command: Command, stdout: &mut String) -> Result<u8, Failure> {
    match command {
        Command::Enumerate { kind, size, count_only, out, jobs, budget } => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| invalid(e.to_string()))?;
            let budget = budget.budget();
            let mut entries = pool.install(|| enumerate::enumerate(kind, size, &budget))?;
            entries.sort_by(|a, b| a.canonical_key.cmp(&b.canonical_key));
            if count_only {
                let _ = writeln!(stdout, "{}", entries.len());
                if let Some(p) = out {
                    emit(&io::write_catalog(&entries), Some(&p), stdout)?;
                }
            } else {
                emit(&io::write_catalog(&entries), out.as_deref(), stdout)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { file, property } => check(&file, property, stdout),
        Command::Sum { mesh, out } => {
            let m = io::parse_mesh(&read(&mesh)?).map_err(|e| invalid(format!("{}: {e}", mesh.display())))?;
            emit(&io::print_solution(&m.sum()?), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Isotope { file, perm, out } => {
            let b = load_birack(&file)?;
            let images = perm
                .split_whitespace()
                .map(|w| w.parse::<usize>().map_err(|_| invalid(format!("not a number in --perm: {w:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let pi = Permutation::from_images(images)?;
            let w = birack_isotope(&b, &pi)?;
            emit(&io::print_solution(&w.result), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::ToDistributive { file, element, out } => {
            let w = to_distributive(&load_birack(&file)?, element)?;
            emit(&io::print_solution(&w.result), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Retract { file, out } => {
            let r = load_birack(&file)?.retraction();
            emit(&io::print_solution(&r.quotient), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Level { file } => match load_birack(&file)?.mp_level() {
            Some(m) => {
                let _ = writeln!(stdout, "{m}");
                Ok(EXIT_OK)
            }
            None => {
                let _ = writeln!(stdout, "none");
                Ok(EXIT_FALSE)
            }
        },
        Command::Iso { first, second } => {
            let (a, b) = (load_birack(&first)?, load_birack(&second)?);
            match a.isomorphism(&b, WorkLimit::from_env())? {
                Some(h) => {
                    let images: Vec<String> = h.images().iter().map(usize::to_string).collect();
                    let _ = writeln!(stdout, "{}", images.join(" "));
                    Ok(EXIT_OK)
                }
                None => {
                    let _ = writeln!(stdout, "not isomorphic");
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Iyb { group, generators, out } => {
            let factors = parse_csv(&group)?;
            let g = FiniteAbelianGroup::new(factors)?;
            let gens = match generators {
                Some(s) => s
                    .split_whitespace()
                    .map(|t| g.element(parse_csv(t)?).map_err(Failure::from))
                    .collect::<Result<Vec<_>, _>>()?,
                None => g.standard_generators().into_iter().map(|i| g.element_at(i)).collect(),
            };
            let gens = if gens.is_empty() { vec![g.zero()] } else { gens };
            emit(&io::print_mesh(&iyb_mesh(&g, &gens)?), out.as_deref(), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Tables { max_n, budget } => {
            stdout.push_str(&tables(max_n, &budget.budget())?);
            Ok(EXIT_OK)
        }
    }
}

fn parse_csv(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| w.parse().map_err(|_| invalid(format!("not a number: {w:?}"))))
        .collect()
}

fn check(file: &Path, property: Property, stdout: &mut String) -> Result<u8, Failure> {
    let tables = load_tables(file)?;
    let verdict = match property {
        Property::Braid | Property::Involutive => {
            let report = match &tables.bullet {
                Some(bullet) => check_braid(&tables.circ, bullet)?,
                None => load_birack(file)?.braid(),
            };
            if property == Property::Braid {
                report.braid
            } else {
                report.holds()
            }
        }
        Property::Lri => load_birack(file)?.check(BirackPropertyTag::Lri),
        Property::Distributive => load_birack(file)?.check(BirackPropertyTag::Distributive),
        _ => {
            let tag = match property {
                Property::TwoReductive => PropertyTag::MReductive(2),
                Property::TwoPermutational => PropertyTag::MPermutational(2),
                Property::Medial => PropertyTag::Medial,
                Property::RightCyclic => PropertyTag::RightCyclic,
                Property::Idempotent => PropertyTag::Idempotent,
                Property::Star => PropertyTag::ConditionStar,
                _ => PropertyTag::NonDegenerate,
            };
            tables.left_quasigroup()?.check(tag)?
        }
    };
    let _ = writeln!(stdout, "{verdict}");
    Ok(truth(verdict))
}

/// Class counts laid out with one row per family and one column per size.
fn tables(max_n: usize, budget: &Budget) -> Result<String, Failure> {
    if max_n == 0 {
        return Err(invalid("--max-n must be positive"));
    }
    let mut counts = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let mut row = Vec::with_capacity(Kind::ALL.len());
        for kind in Kind::ALL {
            row.push(match enumerate::counts(n, &[kind], budget) {
                Ok(r) => r.get(kind),
                Err(Error::SizeOutOfBudget { .. }) => None,
                Err(e) => return Err(e.into()),
            });
        }
        counts.push(row);
    }
    let get = |n: usize, kind: Kind| counts[n - 1][Kind::ALL.iter().position(|&k| k == kind).expect("listed")];
    let total = |n| Some(get(n, Kind::TwoReductive)? + get(n, Kind::Level2NonDistributive)?);
    let cell = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let rows_racks: Vec<(&str, Vec<String>)> = vec![
        ("racks", (1..=max_n).map(|n| cell(get(n, Kind::Rack))).collect()),
        ("2-reductive", (1..=max_n).map(|n| cell(get(n, Kind::TwoReductive))).collect()),
    ];
    let rows_solutions: Vec<(&str, Vec<String>)> = vec![
        ("involutive", (1..=max_n).map(|n| cell(get(n, Kind::AllInvolutive))).collect()),
        ("level 2", (1..=max_n).map(|n| cell(total(n))).collect()),
        ("2-reductive", (1..=max_n).map(|n| cell(get(n, Kind::TwoReductive))).collect()),
        ("level 2, not 2-reductive", (1..=max_n).map(|n| cell(get(n, Kind::Level2NonDistributive))).collect()),
    ];
    let mut text = String::new();
    text.push_str("# racks\n");
    layout(&mut text, max_n, &rows_racks);
    text.push_str("\n# involutive solutions\n");
    layout(&mut text, max_n, &rows_solutions);
    Ok(text)
}

fn layout(text: &mut String, max_n: usize, rows: &[(&str, Vec<String>)]) {
    let label_width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(1);
    let widths: Vec<usize> = (0..max_n)
        .map(|i| rows.iter().map(|(_, r)| r[i].len()).max().unwrap_or(1).max((i + 1).to_string().len()))
        .collect();
    let mut line = |label: &str, cells: Vec<String>| {
        let _ = write!(text, "{label:<label_width$}");
        for (c, w) in cells.iter().zip(&widths) {
            let _ = write!(text, "  {c:>w$}");
        }
        text.push('\n');
    };
    line("n", (1..=max_n).map(|n| n.to_string()).collect());
    for (label, cells) in rows {
        line(label, cells.clone());
    }
}
