use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use acat::axioms::{
    check_cw, check_diamond, check_graded, check_semi_diamond, check_strongly_decomposable,
    linked_clusters, split, DiamondScope,
};
use acat::builder::build_category;
use acat::category::Category;
use acat::constructions::{lower_category, section_category, upper_category};
use acat::dot::hasse_dot;
use acat::export::{to_json, ComplexDocument, NerveDocument};
use acat::fixtures::fixture;
use acat::iso::is_isomorphic;
use acat::nerve::{nerve_of, realize};
use acat::report::ValidationReport;
use acat::textfmt::{parse_presentation, serialize_category, serialize_presentation};

#[derive(Parser)]
#[command(name = "acat", about = "Finite graded bounded acyclic categories", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    Proper,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom validators on a category file.
    Validate {
        input: PathBuf,
        /// Apply the sign clauses of the (semi-)diamond checks.
        #[arg(long)]
        signs: bool,
        /// Also require the diamond property in the given scope.
        #[arg(long, value_enum)]
        diamond: Option<Scope>,
        /// Also require strong decomposability.
        #[arg(long)]
        strongly_decomposable: bool,
    },
    /// Export the Hasse multigraph as DOT.
    Hasse {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the upper category at an object as a category file.
    Upper {
        input: PathBuf,
        #[arg(long)]
        object: String,
        /// Keep the host ranks instead of shifting the anchor to rank -1.
        #[arg(long)]
        no_normalize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the lower category at an object as a category file.
    Lower {
        input: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the section category of a morphism as a category file.
    Section {
        input: PathBuf,
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        no_normalize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Export the nerve as a structured document.
    Nerve {
        input: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Export the oriented realization of the nerve.
    Realize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the linked clusters; optionally write the split parts.
    Decompose {
        input: PathBuf,
        /// Write one category file per cluster into this directory.
        #[arg(long)]
        split_dir: Option<PathBuf>,
    },
    /// Check the CW characterization (diamond + strongly decomposable +
    /// strongly initial unsplittable).
    CheckCw { input: PathBuf },
    /// Exit 0 iff the two category files are isomorphic.
    Iso { left: PathBuf, right: PathBuf },
    /// Emit a fixture presentation from the catalog.
    Fixture {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Arc<Category>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let p = parse_presentation(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let c = build_category(&p).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Arc::new(c))
}

/// Write atomically: temp file in the target directory, then rename.
fn emit(output: Option<&Path>, content: &str) -> Result<(), String> {
    match output {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
            let tmp = dir
                .unwrap_or(Path::new("."))
                .join(format!(".{}.tmp", std::process::id()));
            let mut f = std::fs::File::create(&tmp).map_err(|e| e.to_string())?;
            f.write_all(content.as_bytes()).map_err(|e| e.to_string())?;
            f.sync_all().map_err(|e| e.to_string())?;
            drop(f);
            std::fs::rename(&tmp, path).map_err(|e| e.to_string())
        }
    }
}

fn print_reports(reports: &[ValidationReport]) -> ExitCode {
    let mut code = ExitCode::SUCCESS;
    for r in reports {
        print!("{r}");
        if !r.passed() {
            code = ExitCode::from(1);
        }
    }
    code
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Validate {
            input,
            signs,
            diamond,
            strongly_decomposable,
        } => {
            let c = load(&input)?;
            let mut reports = vec![
                acat::axioms::validate_bounded_acyclic(&c),
                check_graded(&c),
                check_semi_diamond(&c, signs),
            ];
            if let Some(scope) = diamond {
                let scope = match scope {
                    Scope::Proper => DiamondScope::ProperOnly,
                    Scope::All => DiamondScope::All,
                };
                reports.push(check_diamond(&c, scope, signs));
            }
            if strongly_decomposable {
                reports.push(check_strongly_decomposable(&c));
            }
            Ok(print_reports(&reports))
        }
        Command::Hasse { input, output } => {
            let c = load(&input)?;
            emit(output.as_deref(), &hasse_dot(&c))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Upper {
            input,
            object,
            no_normalize,
            output,
        } => {
            let c = load(&input)?;
            let o = c
                .object_by_name(&object)
                .ok_or_else(|| format!("no object `{object}`"))?;
            let up = upper_category(&c, o, !no_normalize);
            emit(output.as_deref(), &serialize_category(&up.cat))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lower {
            input,
            object,
            output,
        } => {
            let c = load(&input)?;
            let o = c
                .object_by_name(&object)
                .ok_or_else(|| format!("no object `{object}`"))?;
            let low = lower_category(&c, o);
            emit(output.as_deref(), &serialize_category(&low.cat))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Section {
            input,
            morphism,
            no_normalize,
            output,
        } => {
            let c = load(&input)?;
            let m = c
                .morphism_by_name(&morphism)
                .ok_or_else(|| format!("no morphism `{morphism}`"))?;
            let sec = section_category(&c, m, !no_normalize);
            emit(output.as_deref(), &serialize_category(&sec.cat))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Nerve {
            input,
            max_level,
            output,
        } => {
            let c = load(&input)?;
            let nv = nerve_of(&c, max_level);
            emit(output.as_deref(), &to_json(&NerveDocument::new(&nv)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Realize { input, output } => {
            let c = load(&input)?;
            let nv = nerve_of(&c, None);
            let oc = realize(&nv);
            emit(output.as_deref(), &to_json(&ComplexDocument::new(&nv, &oc)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { input, split_dir } => {
            let c = load(&input)?;
            let clusters = linked_clusters(&c);
            for (i, cluster) in clusters.iter().enumerate() {
                let names: Vec<&str> = cluster
                    .iter()
                    .map(|&o| c.object(o).name.as_str())
                    .collect();
                println!("cluster {}: {}", i + 1, names.join(" "));
            }
            if let Some(dir) = split_dir {
                std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
                for (i, part) in split(&c).iter().enumerate() {
                    let path = dir.join(format!("part{}.cat", i + 1));
                    emit(Some(&path), &serialize_category(part))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCw { input } => {
            let c = load(&input)?;
            let report = check_cw(&c);
            Ok(print_reports(&[report]))
        }
        Command::Iso { left, right } => {
            let (a, b) = (load(&left)?, load(&right)?);
            match is_isomorphic(&a, &b) {
                Some(_) => {
                    println!("isomorphic");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not isomorphic");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Fixture { name, output } => {
            let spec =
                fixture(&name).ok_or_else(|| format!("unknown fixture `{name}`"))?;
            emit(output.as_deref(), &serialize_presentation(&spec.presentation))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
