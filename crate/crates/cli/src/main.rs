use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ainf_core::basis::{basis_by_degree, is_finite};
use ainf_core::differential::differential;
use ainf_core::eval::checks;
use ainf_core::eval::instance::{Instance, NamedMorphism};
use ainf_core::notation::{format_element, parse_element};
use ainf_core::report::Report;
use ainf_core::verify::{self, Suite};
use ainf_core::{Error, Presentation};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ainf", version, about = "Operads and bimodules of (homotopy unital) A-infinity algebras and morphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension table of a presentation in one arity.
    Basis {
        #[arg(long, alias = "bimodule")]
        operad: String,
        #[arg(long)]
        arity: usize,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "degree_min")]
        degree: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        degree_min: Option<i64>,
        /// Unit-count bound, required for the homotopy unital presentations.
        #[arg(long)]
        max_units: Option<usize>,
        /// Also list the basis trees.
        #[arg(long)]
        list: bool,
    },
    /// Differential of an element.
    Diff {
        #[arg(long, alias = "bimodule")]
        operad: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        arity_max: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        degree_min: Option<i64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Check a finite instance.
    Check {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long = "as", value_enum)]
        kind: Option<Kind>,
        /// Arity bound (`n + k` for the homotopy unital relations).
        #[arg(long, default_value_t = 4)]
        bound: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Compose two morphisms.
    Compose {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Compose as homotopy unital morphisms.
        #[arg(long)]
        hu: bool,
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
}

#[derive(clap::Args)]
struct Output {
    /// Print the JSON report instead of the table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to a file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Record timings in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ainf,
    HuAlgebra,
    Morphism,
    HuMorphism,
    Unitality,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn presentation(name: &str) -> Result<Presentation, Failure> {
    Ok(name.parse()?)
}

fn emit(report: &Report, out: &Output) -> Outcome {
    let mut report = report.clone();
    if !out.timing {
        report.checks.iter_mut().for_each(|c| c.timing_ms = None);
    }
    if out.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.table());
    }
    if let Some(path) = &out.report {
        fs::write(path, report.to_json() + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn basis(operad: &str, arity: usize, degree: Option<i64>, degree_min: Option<i64>, max_units: Option<usize>, list: bool) -> Outcome {
    let pres = presentation(operad)?;
    let units = match (max_units, is_finite(pres)) {
        (Some(c), _) => c,
        (None, true) => 0,
        (None, false) => return Err(Error::InfiniteWindow { arity }.into()),
    };
    let table = basis_by_degree(pres, arity, units)?;
    let keep = |d: i64| degree.is_none_or(|x| x == d) && degree_min.is_none_or(|x| d >= x);
    let mut total = 0;
    for (d, trees) in table.iter().rev().filter(|(d, _)| keep(**d)) {
        println!("degree {d}: {}", trees.len());
        total += trees.len();
        if list {
            for t in trees {
                println!("  {t}");
            }
        }
    }
    println!("total: {total}");
    Ok(())
}

fn diff(operad: &str, element: &str) -> Outcome {
    let pres = presentation(operad)?;
    let x = parse_element(element, None)?;
    println!("{}", format_element(&differential(pres, &x)?));
    Ok(())
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn check(path: &Path, kind: Option<Kind>, bound: u32, out: &Output) -> Outcome {
    let inst = read_instance(path)?;
    let kind = kind.unwrap_or(if inst.morphisms.is_empty() { Kind::Ainf } else { Kind::Morphism });
    let ring = inst.ring;
    let mut report = Report::new();
    let morphisms = || -> Result<Vec<(&String, &NamedMorphism)>, Failure> {
        if inst.morphisms.is_empty() {
            return Err(Failure::Usage("the instance has no morphisms".into()));
        }
        Ok(inst.morphisms.iter().collect())
    };
    match kind {
        Kind::Ainf => {
            for (name, a) in &inst.algebras {
                report.extend(&format!("{name}."), checks::check_ainf_algebra(ring, a, bound)?);
            }
        }
        Kind::HuAlgebra => {
            for (name, a) in &inst.algebras {
                report.extend(&format!("{name}."), checks::check_hu_algebra(ring, a, bound)?);
                report.extend(&format!("{name}."), checks::check_fukaya(ring, a, bound.saturating_sub(1).max(2))?);
            }
        }
        Kind::Morphism | Kind::HuMorphism => {
            for (name, m) in morphisms()? {
                let (a, b) = (&inst.algebras[&m.source], &inst.algebras[&m.target]);
                let r = if kind == Kind::Morphism {
                    checks::check_ainf_morphism(ring, a, &m.map, b, bound)?
                } else {
                    checks::check_hu_morphism(ring, a, &m.map, b, bound)?
                };
                report.extend(&format!("{name}."), r);
            }
        }
        Kind::Unitality => {
            for (name, a) in &inst.algebras {
                report.extend(&format!("{name}."), checks::check_unitality(ring, a)?);
            }
            for (name, m) in &inst.morphisms {
                let (a, b) = (&inst.algebras[&m.source], &inst.algebras[&m.target]);
                report.extend(&format!("{name}."), checks::check_unital_morphism(ring, a, &m.map, b)?);
            }
        }
    }
    emit(&report, out)
}

fn single_morphism(inst: &Instance, path: &Path) -> Result<NamedMorphism, Failure> {
    let mut it = inst.morphisms.values();
    match (it.next(), it.next()) {
        (Some(m), None) => Ok(m.clone()),
        _ => Err(Failure::Usage(format!("{}: expected exactly one morphism", path.display()))),
    }
}

fn compose(g_path: &Path, h_path: &Path, out: &Path, hu: bool, bound: u32) -> Outcome {
    let (gi, hi) = (read_instance(g_path)?, read_instance(h_path)?);
    if gi.ring != hi.ring {
        return Err(Failure::Usage("the two instances use different rings".into()));
    }
    let (g, h) = (single_morphism(&gi, g_path)?, single_morphism(&hi, h_path)?);
    let a = &gi.algebras[&g.source];
    let b = &gi.algebras[&g.target];
    let c = &hi.algebras[&h.target];
    if b != &hi.algebras[&h.source] {
        return Err(Failure::Usage("the target of g is not the source of h".into()));
    }
    let pres = if hu { Presentation::F1Hu } else { Presentation::F1 };
    let gh = checks::compose_morphisms(gi.ring, (a, b, c), &g.map, &h.map, pres, bound)?;
    let mut algebras = BTreeMap::new();
    algebras.insert(g.source.clone(), a.clone());
    if let Some(prev) = algebras.insert(h.target.clone(), c.clone()) {
        if &prev != c {
            return Err(Failure::Usage(format!("two different algebras are named `{}`", h.target)));
        }
    }
    let mut morphisms = BTreeMap::new();
    morphisms.insert("gh".to_string(), NamedMorphism { source: g.source.clone(), target: h.target.clone(), map: gh });
    let doc = Instance { ring: gi.ring, algebras, morphisms };
    fs::write(out, doc.to_json() + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Basis { operad, arity, degree, degree_min, max_units, list } => {
            basis(&operad, arity, degree, degree_min, max_units, list)
        }
        Command::Diff { operad, element } => diff(&operad, &element),
        Command::Verify { suite, arity_max, degree_min, jobs, output } => {
            if let Some(k) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            let suite: Suite = suite.parse()?;
            let opts = verify::Options { arity_max, degree_min, timing: output.timing };
            let report = verify::run(suite, &opts)?;
            emit(&report, &output)
        }
        Command::Check { instance, kind, bound, output } => check(&instance, kind, bound, &output),
        Command::Compose { g, h, out, hu, bound } => compose(&g, &h, &out, hu, bound),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
