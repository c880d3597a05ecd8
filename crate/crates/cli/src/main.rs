use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use computads::constructions::{coequalizer_named, product};
use computads::counterexample::{
    run_counterexample, run_counterexample_empty_target_variant, PipelineReport, Verdict,
};
use computads::format::{
    parse_computad_parts, parse_morphism, parse_morphism_header, print_coequalizer_provenance,
    print_computad, print_morphism, print_product_provenance,
};
use computads::oracle::{
    check_coequalizer_up, check_product_up, GeneratorBounds, OracleConfig, UpReport,
};
use computads::{
    enumerate_homs, enumerate_pairings, find_isomorphism, Computad, Error, Label, Morphism,
    Multiset, SearchBudget,
};

/// Finite 2-degenerate 3-computads: constructions, checks and the
/// non-preservation counterexample.
#[derive(Debug, Parser)]
#[command(name = "computads", version)]
struct Cli {
    /// Search budget for hom-set and isomorphism searches.
    #[arg(long, global = true, env = "COMPUTADS_BUDGET", default_value_t = SearchBudget::DEFAULT.0)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write the result to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Include provenance comments.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct Objects {
    /// Directory holding `<name>.cpd` for morphism endpoints; defaults to the
    /// directory of each morphism file.
    #[arg(long)]
    objects: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Report {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,

    /// Dump every constructed object and morphism into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The product of two computads.
    Product {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The coequaliser of two parallel morphisms.
    Coeq {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        objects: Objects,
        #[command(flatten)]
        out: Output,
    },
    /// An isomorphism between two computads, or NOT-ISOMORPHIC.
    Iso { x: PathBuf, y: PathBuf },
    /// Every morphism between two computads.
    Homs {
        x: PathBuf,
        y: PathBuf,
        /// Print only the number of morphisms.
        #[arg(long)]
        count: bool,
    },
    /// Build the product and check its universal property.
    CheckProduct {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "3,1,2")]
        bounds: Bounds,
    },
    /// Build the coequaliser and check its universal property.
    CheckCoeq {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        objects: Objects,
        #[arg(long, default_value = "3,2,2")]
        bounds: Bounds,
    },
    /// Pairings of two multisets, written like `a1*a2`.
    Pairings {
        s: String,
        t: String,
        /// Print only the number of pairings.
        #[arg(long)]
        count: bool,
    },
    /// Run the counterexample pipeline.
    Paper {
        #[command(flatten)]
        report: Report,
    },
    /// Run the pipeline on the variant with empty 3-cell targets.
    PaperEmptyTarget {
        #[command(flatten)]
        report: Report,
    },
    /// Check a computad or morphism file for violations.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        objects: Objects,
    },
}

/// Generator bounds written `max2cells,max3cells,max_boundary_size`.
#[derive(Debug, Clone, Copy)]
struct Bounds(GeneratorBounds);

impl FromStr for Bounds {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("expected three comma-separated numbers: {e}"))?;
        match parts[..] {
            [a, b, c] => Ok(Bounds(GeneratorBounds::new(a, b, c))),
            _ => Err(format!(
                "expected three comma-separated numbers, found {}",
                parts.len()
            )),
        }
    }
}

/// A failure with the exit status it maps to.
#[derive(Debug)]
struct Failure {
    status: u8,
    message: String,
}

const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const BUDGET_EXHAUSTED: u8 = 3;
const INTERNAL_ERROR: u8 = 4;

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            status: INPUT_ERROR,
            message: message.into(),
        }
    }

    /// Classifies a library error, naming `context` (usually a file).
    fn from_core(context: Option<&Path>, e: Error) -> Self {
        let status = match e {
            Error::SearchBudgetExceeded { .. } | Error::OracleBudgetExceeded { .. } => {
                BUDGET_EXHAUSTED
            }
            Error::Internal(_) | Error::Step { .. } => INTERNAL_ERROR,
            _ => INPUT_ERROR,
        };
        let mut message = match context {
            Some(path) => format!("{}:", path.display()),
            None => String::new(),
        };
        match &e {
            Error::Parse {
                line,
                expected,
                found,
            } => {
                // `file:line: ...` is the conventional location prefix.
                message.push_str(&format!("{line}: expected {expected}, found `{found}`"));
            }
            _ => {
                if !message.is_empty() {
                    message.push(' ');
                }
                message.push_str(&e.to_string());
            }
        }
        if status == BUDGET_EXHAUSTED {
            message.push_str(" (raise it with --budget or COMPUTADS_BUDGET)");
        }
        Failure { status, message }
    }
}

type CliResult<T> = Result<T, Failure>;

/// What a command prints and the status it exits with.
struct Outcome {
    text: String,
    status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }

    fn check(text: String, passed: bool) -> Self {
        Outcome {
            text,
            status: if passed { 0 } else { CHECK_FAILED },
        }
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        word.to_string()
    } else {
        format!("{word}s")
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_computad(path: &Path) -> CliResult<Arc<Computad>> {
    let parts =
        parse_computad_parts(&read(path)?).map_err(|e| Failure::from_core(Some(path), e))?;
    parts
        .build()
        .map(Arc::new)
        .map_err(|e| Failure::from_core(Some(path), e))
}

/// Loads morphism files, sharing endpoint objects between them.
struct MorphismLoader<'a> {
    objects: Option<&'a Path>,
    cache: HashMap<PathBuf, Arc<Computad>>,
}

impl<'a> MorphismLoader<'a> {
    fn new(objects: &'a Objects) -> Self {
        MorphismLoader {
            objects: objects.objects.as_deref(),
            cache: HashMap::new(),
        }
    }

    fn object(&mut self, dir: &Path, name: &str) -> CliResult<Arc<Computad>> {
        let path = dir.join(format!("{name}.cpd"));
        if let Some(x) = self.cache.get(&path) {
            return Ok(x.clone());
        }
        if !path.is_file() {
            return Err(Failure::input(format!(
                "unknown object `{name}`: no file {}",
                path.display()
            )));
        }
        let x = load_computad(&path)?;
        if x.name() != name {
            return Err(Failure::input(format!(
                "{}: declares computad `{}`, expected `{name}`",
                path.display(),
                x.name()
            )));
        }
        self.cache.insert(path, x.clone());
        Ok(x)
    }

    fn load(&mut self, path: &Path) -> CliResult<(String, Morphism)> {
        self.load_unchecked(path)?
            .map_err(|e| Failure::from_core(Some(path), e))
    }

    /// Resolves the endpoints, leaving errors in the morphism data itself to
    /// the caller.
    fn load_unchecked(&mut self, path: &Path) -> CliResult<computads::Result<(String, Morphism)>> {
        let text = read(path)?;
        let header = parse_morphism_header(&text).map_err(|e| Failure::from_core(Some(path), e))?;
        let dir = match self.objects {
            Some(d) => d.to_path_buf(),
            None => path.parent().map(Path::to_path_buf).unwrap_or_default(),
        };
        let dom = self.object(&dir, &header.dom)?;
        let cod = self.object(&dir, &header.cod)?;
        let resolve = |n: &str| [&dom, &cod].into_iter().find(|x| x.name() == n).cloned();
        Ok(parse_morphism(&text, resolve))
    }
}

fn parse_multiset(arg: &str) -> CliResult<Multiset<Label>> {
    arg.parse().map_err(|e: Error| match e {
        Error::Parse {
            expected, found, ..
        } => Failure::input(format!(
            "multiset `{arg}`: expected {expected}, found `{found}`"
        )),
        other => Failure::from_core(None, other),
    })
}

fn emit(out: &Output, text: String) -> CliResult<Outcome> {
    match &out.output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn render_up(report: &UpReport) -> Outcome {
    Outcome::check(report.render(), report.passed())
}

fn run_paper(
    report: &Report,
    pipeline: fn() -> computads::Result<PipelineReport>,
) -> CliResult<Outcome> {
    let r = pipeline().map_err(|e| Failure::from_core(None, e))?;
    if let Some(dir) = &report.out_dir {
        r.artifacts
            .write_to(dir)
            .map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?;
    }
    let text = if report.json {
        r.to_json() + "\n"
    } else {
        r.render()
    };
    let passed = r.all_checks_passed() && r.verdict == Verdict::NotPreserved;
    Ok(Outcome::check(text, passed))
}

fn run(cli: Cli) -> CliResult<Outcome> {
    let budget = SearchBudget(cli.budget);
    let core = |e| Failure::from_core(None, e);
    match cli.command {
        Command::Product { a, b, out } => {
            let p = product(&load_computad(&a)?, &load_computad(&b)?);
            let mut text = print_computad(&p.object);
            if out.verbose {
                text.push_str(&print_product_provenance(&p));
            }
            emit(&out, text)
        }
        Command::Coeq { f, g, objects, out } => {
            let mut loader = MorphismLoader::new(&objects);
            let (_, f) = loader.load(&f)?;
            let (_, g) = loader.load(&g)?;
            let name = format!("{}_coeq", f.cod().name());
            let ce = coequalizer_named(&f, &g, &name).map_err(core)?;
            let mut text = print_computad(&ce.object);
            if out.verbose {
                text.push_str(&print_coequalizer_provenance(&ce));
            }
            emit(&out, text)
        }
        Command::Iso { x, y } => {
            let (x, y) = (load_computad(&x)?, load_computad(&y)?);
            Ok(match find_isomorphism(&x, &y, budget).map_err(core)? {
                Some(iso) => Outcome::ok(print_morphism("iso", &iso)),
                None => Outcome::check("NOT-ISOMORPHIC\n".into(), false),
            })
        }
        Command::Homs { x, y, count } => {
            let (x, y) = (load_computad(&x)?, load_computad(&y)?);
            let homs = enumerate_homs(&x, &y, budget).map_err(core)?;
            let mut text = String::new();
            if !count {
                for (i, h) in homs.iter().enumerate() {
                    text.push_str(&print_morphism(&format!("h{}", i + 1), h));
                    text.push('\n');
                }
            }
            let _ = writeln!(
                text,
                "{} {} {} -> {}",
                homs.len(),
                plural(homs.len(), "morphism"),
                x.name(),
                y.name()
            );
            Ok(Outcome::ok(text))
        }
        Command::CheckProduct { a, b, bounds } => {
            let (a, b) = (load_computad(&a)?, load_computad(&b)?);
            let config = OracleConfig::new(bounds.0).with_budget(budget);
            let report = check_product_up(&a, &b, &product(&a, &b), &config).map_err(core)?;
            Ok(render_up(&report))
        }
        Command::CheckCoeq {
            f,
            g,
            objects,
            bounds,
        } => {
            let mut loader = MorphismLoader::new(&objects);
            let (_, f) = loader.load(&f)?;
            let (_, g) = loader.load(&g)?;
            let name = format!("{}_coeq", f.cod().name());
            let ce = coequalizer_named(&f, &g, &name).map_err(core)?;
            let config = OracleConfig::new(bounds.0).with_budget(budget);
            let report = check_coequalizer_up(&f, &g, &ce, &config).map_err(core)?;
            Ok(render_up(&report))
        }
        Command::Pairings { s, t, count } => {
            let (s, t) = (parse_multiset(&s)?, parse_multiset(&t)?);
            let all = enumerate_pairings(&s, &t);
            let mut text = String::new();
            if !count {
                for p in &all {
                    let _ = writeln!(text, "{p}");
                }
            }
            let _ = writeln!(text, "{} {}", all.len(), plural(all.len(), "pairing"));
            Ok(Outcome::ok(text))
        }
        Command::Paper { report } => run_paper(&report, run_counterexample),
        Command::PaperEmptyTarget { report } => {
            run_paper(&report, run_counterexample_empty_target_variant)
        }
        Command::Validate { file, objects } => {
            let text = read(&file)?;
            let is_morphism = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .is_some_and(|l| l.starts_with("morphism"));
            let violations = if is_morphism {
                match MorphismLoader::new(&objects).load_unchecked(&file)? {
                    Ok(_) => Vec::new(),
                    Err(Error::InvalidMorphism { violations, .. }) => violations,
                    Err(e) => return Err(Failure::from_core(Some(&file), e)),
                }
            } else {
                parse_computad_parts(&text)
                    .map_err(|e| Failure::from_core(Some(&file), e))?
                    .validate()
            };
            if violations.is_empty() {
                Ok(Outcome::ok(format!("{}: valid\n", file.display())))
            } else {
                let mut out = String::new();
                for v in &violations {
                    let _ = writeln!(out, "{}: {v}", file.display());
                }
                let n = violations.len();
                let _ = writeln!(out, "{n} {}", plural(n, "violation"));
                Ok(Outcome::check(out, false))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(outcome.status)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.status)
        }
    }
}
