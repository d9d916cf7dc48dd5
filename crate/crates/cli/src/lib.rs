//! Command-line front end for `semifact`.
//!
//! [`run`] does all the work and returns the exit code together with the
//! text for standard output and standard error, so the binary is a thin
//! wrapper and tests can drive every command in-process.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use semifact::catenary::{
    catenary_dynamic_with_budget, catenary_naive_with_budget, catenary_range_with_budget,
};
use semifact::delta::{delta_set_grobner_with_budget, delta_set_hilbert_with_budget};
use semifact::hilbert::{graver_basis_with_budget, hilbert_basis_with_budget};
use semifact::presentation::{betti_elements_with_budget, minimal_presentation_with_budget};
use semifact::tame::{block_monoid_with_budget, tame_over_atoms, FullSemigroupWitness};
use semifact::{AffineSemigroup, Budget, CongruenceSystem, ElementVector, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "semifact",
    version,
    about = "Factorization invariants of affine semigroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Abort after this many completion steps (exit code 4).
    #[arg(long, global = true, value_name = "N")]
    max_steps: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DeltaMethod {
    Hilbert,
    Grobner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CatenaryMethod {
    Naive,
    Dynamic,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Generators: "3 4 5" or "(1,0);(1,1);(0,2)"; "-" reads standard input.
    #[arg(long)]
    gens: Option<String>,

    /// File holding generators in the same syntax as --gens.
    #[arg(long, value_name = "PATH")]
    gens_file: Option<String>,

    /// JSON file {"matrix": [[...]], "moduli": [...]} defining a full semigroup.
    #[arg(long, value_name = "PATH")]
    equations: Option<String>,
}

#[derive(Debug, Args)]
struct WithElement {
    #[command(flatten)]
    source: Source,

    /// Semigroup element: "450" or "(3,4)".
    #[arg(long)]
    element: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// All factorizations of an element.
    Factorizations(WithElement),
    /// Sorted factorization lengths of an element.
    LengthSet(WithElement),
    /// Delta set of an element.
    DeltaElement(WithElement),
    /// Delta set of the whole semigroup.
    DeltaSet {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = DeltaMethod::Grobner)]
        method: DeltaMethod,
    },
    /// Minimal presentation.
    MinPresentation {
        #[command(flatten)]
        source: Source,
    },
    /// Betti elements.
    Betti {
        #[command(flatten)]
        source: Source,
    },
    /// Graver basis of the kernel of the atom matrix.
    Graver {
        #[command(flatten)]
        source: Source,
    },
    /// Hilbert basis of an equations file.
    Hilbert {
        /// JSON file {"matrix": [[...]], "moduli": [...]}.
        #[arg(long, value_name = "PATH")]
        equations: String,
    },
    /// Catenary degree of an element.
    Catenary {
        #[command(flatten)]
        target: WithElement,
        #[arg(long, value_enum, default_value_t = CatenaryMethod::Dynamic)]
        method: CatenaryMethod,
    },
    /// Catenary degrees of every element up to a bound (numerical only).
    CatenaryRange {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        bound: u64,
    },
    /// Tame degree of a full semigroup.
    Tame {
        #[command(flatten)]
        source: Source,
        /// Only this atom (1-based, in the printed atom order).
        #[arg(long, conflicts_with = "atoms")]
        atom: Option<usize>,
        /// Maximum over these atoms only, e.g. "1,3".
        #[arg(long)]
        atoms: Option<String>,
    },
    /// Atoms of the block monoid over a finite abelian group.
    BlockMonoid {
        /// Cyclic factors, e.g. "2,2,2".
        #[arg(long)]
        moduli: String,
        /// Restrict to these group elements, e.g. "(1,0,0);(0,1,1)".
        #[arg(long)]
        subset: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Failure while turning arguments and files into library inputs.
#[derive(Debug)]
struct Usage(String);

enum Failure {
    Usage(String),
    Library(Error),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        Error::NotInSemigroup(_)
        | Error::RequiresFull
        | Error::UnsupportedDimension { .. }
        | Error::AtomIndex { .. }
        | Error::Overflow => EXIT_SEMANTIC,
        Error::EmptyGenerators
        | Error::DimensionMismatch { .. }
        | Error::ZeroGenerator
        | Error::InvalidSystem(_)
        | Error::InvalidSubset(_) => EXIT_USAGE,
    }
}

/// Runs one command line (`args[0]` is the program name); `stdin` backs
/// `--gens -`.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let budget = cli
        .max_steps
        .map_or_else(Budget::unlimited, Budget::with_limit);
    match execute(&cli.command, cli.format, &budget, stdin) {
        Ok(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            Outcome::ok(text)
        }
        Err(Failure::Usage(msg)) => Outcome::fail(EXIT_USAGE, format!("error: {msg}")),
        Err(Failure::Library(e)) => Outcome::fail(exit_code(&e), format!("error: {e}")),
    }
}

fn execute(
    command: &Command,
    format: Format,
    budget: &Budget,
    stdin: &mut dyn Read,
) -> Result<String, Failure> {
    let render = |key: &str, value: Value, plain: String| match format {
        Format::Json => json!({ key: value }).to_string(),
        Format::Plain => plain,
    };
    match command {
        Command::Factorizations(t) => {
            let (s, gamma) = semigroup_and_element(t, budget, stdin)?;
            let facts = s.factorizations_with_budget(&gamma, budget)?;
            let rows: Vec<Vec<u64>> = facts.facts().iter().map(|z| z.to_vec()).collect();
            let plain = rows.iter().map(|r| join(r)).collect::<Vec<_>>().join("\n");
            Ok(render("factorizations", json!(rows), plain))
        }
        Command::LengthSet(t) => {
            let (s, gamma) = semigroup_and_element(t, budget, stdin)?;
            let lengths = s.factorizations_with_budget(&gamma, budget)?.length_set();
            Ok(render("length_set", json!(lengths), join(&lengths)))
        }
        Command::DeltaElement(t) => {
            let (s, gamma) = semigroup_and_element(t, budget, stdin)?;
            let lengths = s.factorizations_with_budget(&gamma, budget)?.length_set();
            let delta: BTreeSet<u64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
            let delta: Vec<u64> = delta.into_iter().collect();
            Ok(render("delta", json!(delta), join(&delta)))
        }
        Command::DeltaSet { source, method } => {
            let s = load(source, budget, stdin)?;
            let delta = match method {
                DeltaMethod::Hilbert => delta_set_hilbert_with_budget(&s, budget)?,
                DeltaMethod::Grobner => delta_set_grobner_with_budget(&s, budget)?,
            };
            let delta: Vec<u64> = delta.into_iter().collect();
            Ok(render("delta_set", json!(delta), join(&delta)))
        }
        Command::MinPresentation { source } => {
            let s = load(source, budget, stdin)?;
            let p = minimal_presentation_with_budget(&s, budget)?;
            let pairs: Vec<(Vec<u64>, Vec<u64>)> = p
                .relations()
                .iter()
                .map(|(z, w)| (z.to_vec(), w.to_vec()))
                .collect();
            Ok(render("relations", json!(pairs), plain_pairs(&pairs)))
        }
        Command::Betti { source } => {
            let s = load(source, budget, stdin)?;
            let betti: Vec<Vec<u64>> = betti_elements_with_budget(&s, budget)?
                .iter()
                .map(|b| b.to_vec())
                .collect();
            Ok(render("betti_elements", json!(betti), plain_rows(&betti)))
        }
        Command::Graver { source } => {
            let s = load(source, budget, stdin)?;
            let graver = graver_basis_with_budget(&s, budget)?;
            let pairs: Vec<(Vec<u64>, Vec<u64>)> = graver
                .pairs()
                .iter()
                .map(|(z, w)| (z.to_vec(), w.to_vec()))
                .collect();
            Ok(render("graver_basis", json!(pairs), plain_pairs(&pairs)))
        }
        Command::Hilbert { equations } => {
            let system = read_equations(equations)?;
            let mut basis: Vec<Vec<u64>> =
                hilbert_basis_with_budget(&system.to_diophantine(), budget)?
                    .vectors()
                    .iter()
                    .map(|v| v.to_vec())
                    .collect();
            basis.sort();
            Ok(render("hilbert_basis", json!(basis), plain_rows(&basis)))
        }
        Command::Catenary { target, method } => {
            let (s, gamma) = semigroup_and_element(target, budget, stdin)?;
            let c = match method {
                CatenaryMethod::Naive => catenary_naive_with_budget(&s, &gamma, budget)?,
                CatenaryMethod::Dynamic => catenary_dynamic_with_budget(&s, &gamma, budget)?,
            };
            Ok(render("catenary", json!(c), c.to_string()))
        }
        Command::CatenaryRange { source, bound } => {
            let s = load(source, budget, stdin)?;
            let range = catenary_range_with_budget(&s, *bound, budget)?;
            let plain = range
                .iter()
                .map(|(g, c)| format!("{g} {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(render("catenary_range", json!(range), plain))
        }
        Command::Tame {
            source,
            atom,
            atoms,
        } => {
            let witness = match &source.equations {
                Some(path) => FullSemigroupWitness::with_budget(read_equations(path)?, budget)?,
                None => {
                    let s = load(source, budget, stdin)?;
                    FullSemigroupWitness::from_semigroup_with_budget(&s, budget)?
                }
            };
            let count = witness.semigroup().num_atoms();
            let chosen: Vec<usize> = match (atom, atoms) {
                (Some(i), _) => vec![atom_index(*i, count)?],
                (None, Some(list)) => parse_ints(list)?
                    .into_iter()
                    .map(|i| atom_index(i as usize, count))
                    .collect::<Result<_, _>>()?,
                (None, None) => (0..count).collect(),
            };
            let t = tame_over_atoms(&witness, &chosen, budget)?;
            Ok(render("tame", json!(t), t.to_string()))
        }
        Command::BlockMonoid { moduli, subset } => {
            let moduli = parse_ints(moduli)?;
            let subset = subset.as_deref().map(parse_vectors).transpose()?;
            let witness = block_monoid_with_budget(&moduli, subset.as_deref(), budget)?;
            let atoms: Vec<Vec<u64>> = witness
                .semigroup()
                .atoms()
                .iter()
                .map(|a| a.to_vec())
                .collect();
            Ok(render("atoms", json!(atoms), plain_rows(&atoms)))
        }
    }
}

fn atom_index(one_based: usize, count: usize) -> Result<usize, Failure> {
    if one_based == 0 || one_based > count {
        return Err(Error::AtomIndex {
            index: one_based,
            count,
        }
        .into());
    }
    Ok(one_based - 1)
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn plain_rows(rows: &[Vec<u64>]) -> String {
    rows.iter().map(|r| join(r)).collect::<Vec<_>>().join("\n")
}

fn plain_pairs(pairs: &[(Vec<u64>, Vec<u64>)]) -> String {
    let mut out = String::new();
    for (i, (z, w)) in pairs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = write!(out, "{} = {}", join(z), join(w));
    }
    out
}

fn semigroup_and_element(
    t: &WithElement,
    budget: &Budget,
    stdin: &mut dyn Read,
) -> Result<(AffineSemigroup, ElementVector), Failure> {
    let s = load(&t.source, budget, stdin)?;
    let gamma = ElementVector::from(parse_vector(&t.element)?);
    if !s.contains(&gamma)? {
        return Err(Error::NotInSemigroup(format!("{gamma}")).into());
    }
    Ok((s, gamma))
}

fn load(
    source: &Source,
    budget: &Budget,
    stdin: &mut dyn Read,
) -> Result<AffineSemigroup, Failure> {
    if let Some(path) = &source.equations {
        return Ok(AffineSemigroup::from_equations_with_budget(
            read_equations(path)?,
            budget,
        )?);
    }
    let text = match (&source.gens, &source.gens_file) {
        (Some(g), _) if g == "-" => {
            let mut buf = String::new();
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| Usage(format!("cannot read standard input: {e}")))?;
            buf
        }
        (Some(g), _) => g.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => return Err(Usage("no semigroup given".into()).into()),
    };
    let gens = parse_generators(&text)?;
    Ok(AffineSemigroup::new(gens)?)
}

fn read_file(path: &str) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {path}: {e}")))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationsFile {
    matrix: Vec<Vec<i64>>,
    #[serde(default)]
    moduli: Option<Vec<u64>>,
}

fn read_equations(path: &str) -> Result<CongruenceSystem, Failure> {
    let text = read_file(path)?;
    let file: EquationsFile = serde_json::from_str(&text)
        .map_err(|e| Usage(format!("malformed equations file {path}: {e}")))?;
    let moduli = file.moduli.unwrap_or_else(|| vec![0; file.matrix.len()]);
    Ok(CongruenceSystem::from_rows(file.matrix, moduli)?)
}

/// Nonnegative integers separated by commas and/or whitespace.
fn parse_ints(text: &str) -> Result<Vec<u64>, Usage> {
    let parts: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Usage(format!("expected integers, got {text:?}")));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<u64>()
                .map_err(|_| Usage(format!("{p:?} is not a nonnegative integer")))
        })
        .collect()
}

/// A single vector, with or without surrounding parentheses.
fn parse_vector(text: &str) -> Result<Vec<u64>, Usage> {
    let t = text.trim();
    let inner = match (t.strip_prefix('('), t.strip_suffix(')')) {
        (Some(_), Some(_)) => &t[1..t.len() - 1],
        (None, None) => t,
        _ => return Err(Usage(format!("unbalanced parentheses in {text:?}"))),
    };
    if inner.contains(['(', ')', ';']) {
        return Err(Usage(format!("{text:?} is not a single vector")));
    }
    parse_ints(inner)
}

/// Semicolon- or newline-separated parenthesized tuples.
fn parse_vectors(text: &str) -> Result<Vec<Vec<u64>>, Usage> {
    let items: Vec<&str> = text
        .split([';', '\n'])
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .collect();
    if items.is_empty() {
        return Err(Usage("empty vector list".into()));
    }
    items
        .iter()
        .map(|item| {
            if !(item.starts_with('(') && item.ends_with(')')) {
                return Err(Usage(format!(
                    "expected a parenthesized tuple, got {item:?}"
                )));
            }
            parse_vector(item)
        })
        .collect()
}

/// "3 4 5" for numerical semigroups, "(1,0);(1,1)" otherwise.
fn parse_generators(text: &str) -> Result<Vec<ElementVector>, Usage> {
    let vectors = if text.contains('(') {
        parse_vectors(text)?
    } else {
        parse_ints(text)?.into_iter().map(|a| vec![a]).collect()
    };
    Ok(vectors.into_iter().map(ElementVector::from).collect())
}
