use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qsaf::analyze::{
    architecture_profile, compare, complexity_check, primitive_profile, tier_report, Context, HardwareEra, TradeoffOption,
    DEFAULT_NISQ_THRESHOLD,
};
use qsaf::catalog::{self, sized_params, CatalogError, Params};
use qsaf::classify::{check_mece, classify, fleiss_terms, RatingsMatrix};
use qsaf::manifest::{parse_manifest, parse_params, Manifest, RunDirective};
use qsaf::qasm::export_qasm;
use qsaf::report::{self, Report};
use qsaf::run::{minimize_architecture, simulate};

// Write errors such as a closed pipe are ignored.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outp {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const DEFAULT_SHOTS: usize = 1024;

#[derive(Parser)]
#[command(name = "qsaf", version, about = "Catalog, compose, validate, simulate and analyze quantum circuit primitives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List primitives or show one descriptor.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
    /// Usage heatmap over the five algorithm families.
    Heatmap,
    /// Functional category of a primitive from its classification attributes.
    Classify { id: String },
    /// Fleiss kappa of a ratings CSV (items x categories counts).
    Kappa { file: PathBuf },
    /// Validate and flatten a manifest.
    Compose {
        manifest: PathBuf,
        #[arg(long)]
        strict_contracts: bool,
    },
    /// Validate a manifest, or the catalog classification when no manifest is given.
    Validate {
        manifest: Option<PathBuf>,
        #[arg(long)]
        strict_contracts: bool,
    },
    /// Nonfunctional profile of a manifest or a primitive.
    Analyze {
        target: String,
        #[arg(long, default_value_t = DEFAULT_NISQ_THRESHOLD)]
        nisq_threshold: f64,
        /// Primitive parameters, e.g. `n=4, layers=2`.
        #[arg(long)]
        params: Option<String>,
        /// Sizes for the complexity ratio test, e.g. `4,8,16`.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Sample a manifest's flattened circuit and run its minimize directives.
    Simulate {
        manifest: PathBuf,
        #[arg(long)]
        shots: Option<usize>,
        /// Defaults to the manifest's seed, then QSAF_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reuse tier of a primitive.
    Tier { id: String },
    /// Trade-off report between two primitives.
    Compare {
        a: String,
        b: String,
        #[arg(long, default_value = "nisq")]
        context: String,
        #[arg(long)]
        params_a: Option<String>,
        #[arg(long)]
        params_b: Option<String>,
        /// Size used for defaults when no parameters are given.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_NISQ_THRESHOLD)]
        nisq_threshold: f64,
    },
    /// Write the flattened circuit as OPENQASM 2.0.
    Export {
        manifest: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        /// Category label or abbreviation.
        #[arg(long)]
        category: Option<String>,
    },
    Show {
        id: String,
    },
}

type Outcome = Result<ExitCode, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn descriptor(id: &str) -> Result<&'static catalog::PrimitiveDescriptor, String> {
    catalog::find(id).map_err(|e| e.to_string())
}

fn load(path: &Path) -> Result<Manifest, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_manifest(&text).map_err(|e| format!("{}:{e}", path.display()))
}

fn params_for(d: &catalog::PrimitiveDescriptor, text: Option<&str>, n: usize) -> Result<Params, String> {
    match text {
        Some(t) => parse_params(t).map_err(|e| e.to_string()),
        None => Ok(sized_params(d.id, n)),
    }
}

fn env_seed() -> Result<Option<u64>, String> {
    match std::env::var("QSAF_SEED") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| format!("QSAF_SEED must be an unsigned integer, got `{s}`")),
        Err(_) => Ok(None),
    }
}

fn print(r: &Report) {
    outp!("{r}");
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Catalog { what: CatalogCmd::List { category } } => {
            for d in catalog::catalog() {
                let keep = category.as_deref().is_none_or(|c| {
                    let cat = d.category;
                    cat.label().eq_ignore_ascii_case(c)
                        || cat.functional().is_some_and(|f| f.abbreviation().eq_ignore_ascii_case(c))
                });
                if keep {
                    out!("{:>2}  {:<28} {:<24} {}", d.id.get(), d.name, d.ident, d.category.label());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { what: CatalogCmd::Show { id } } => {
            let d = descriptor(&id)?;
            let mut r = Report::new();
            r.section("primitive")
                .entry("id", d.id.get())
                .entry("name", d.name)
                .entry("ident", d.ident)
                .entry("category", d.category.label())
                .entry("usage", d.usage.iter().map(|u| u.code()).collect::<Vec<_>>().join(" "))
                .entry("complexity_class", d.complexity_class.label)
                .entry("levels", format!("{}-{}", d.levels.0, d.levels.1))
                .entry("unitary_kind", d.unitary_kind().label())
                .entry("ancilla_policy", d.ancilla_policy().label())
                .entry("lowerable", d.lowerable);
            for p in &d.parameters {
                r.entry(&format!("param.{}", p.name), p.kind.label());
            }
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Heatmap => {
            outp!("{}", report::heatmap_table());
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { id } => {
            let d = descriptor(&id)?;
            let mut r = Report::new();
            r.section("classification").entry("id", d.id.get()).entry("name", d.name);
            let flags: Vec<&str> = d.attributes.set_flags().iter().map(|c| c.key()).collect();
            r.entry("attributes", if flags.is_empty() { "none".into() } else { flags.join(",") });
            match classify(&d.attributes) {
                Ok(c) => r.entry("category", c.label()),
                Err(e) => r.entry("category", format!("unclassified ({e})")),
            };
            r.entry("catalog_category", d.category.label());
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Kappa { file } => {
            let f = std::fs::File::open(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let m = RatingsMatrix::from_csv(f).map_err(|e| e.to_string())?;
            let t = fleiss_terms(&m).map_err(|e| e.to_string())?;
            let mut r = Report::new();
            r.section("kappa")
                .entry("items", m.items())
                .entry("categories", m.categories())
                .entry("raters", m.raters())
                .entry("p_bar", t.p_bar)
                .entry("p_e", t.p_e)
                .entry("kappa", t.kappa);
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Compose { manifest, strict_contracts } => {
            let m = load(&manifest)?;
            let diags = m.architecture.validate();
            let mut r = Report::new();
            report::add_diagnostics(&mut r, &diags, strict_contracts);
            if diags.iter().any(|d| d.is_blocking(strict_contracts)) {
                print(&r);
                return Ok(ExitCode::from(1));
            }
            let flat = m.architecture.flatten().map_err(|e| e.to_string())?;
            let counts = flat.circuit.gate_counts();
            r.section("circuit")
                .entry("qubits", flat.circuit.width())
                .entry("data_qubits", flat.circuit.layout().data)
                .entry("required_ancillas", flat.circuit.layout().required)
                .entry("scratch_qubits", flat.circuit.layout().scratch)
                .entry("classical_bits", flat.circuit.classical_bits())
                .entry("gates", counts.total)
                .entry("two_qubit_gates", counts.two_qubit)
                .entry("depth", flat.circuit.depth());
            r.section("lines");
            for id in &flat.order {
                let l = &flat.lines[id];
                r.entry(
                    id,
                    format!(
                        "data={:?} required={:?} scratch={} clbits={}+{}",
                        l.data, l.required, l.scratch, l.clbit_offset, l.clbits
                    ),
                );
            }
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { manifest: None, .. } => {
            let m = check_mece(catalog::catalog());
            let mut r = Report::new();
            report::add_mece(&mut r, &m);
            print(&r);
            Ok(if m.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Validate { manifest: Some(path), strict_contracts } => {
            let m = load(&path)?;
            let diags = m.architecture.validate();
            let mut r = Report::new();
            report::add_diagnostics(&mut r, &diags, strict_contracts);
            print(&r);
            Ok(if diags.iter().any(|d| d.is_blocking(strict_contracts)) { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Analyze { target, nisq_threshold, params, sizes } => {
            let ctx = Context { nisq_threshold, ..Context::default() };
            let mut r = Report::new();
            let path = Path::new(&target);
            if path.exists() {
                let m = load(path)?;
                let p = architecture_profile(&m.architecture, &ctx).map_err(|e| e.to_string())?;
                r.section("architecture").entry("name", &m.architecture.name).entry("version", &m.architecture.version);
                report::add_profile(&mut r, "profile", &p);
            } else {
                let d = descriptor(&target)?;
                let params = params_for(d, params.as_deref(), 4)?;
                let p = primitive_profile(d.id, &params, &ctx).map_err(|e| e.to_string())?;
                r.section("primitive").entry("id", d.id.get()).entry("name", d.name).entry("params", &params);
                report::add_profile(&mut r, "profile", &p);
                report::add_tier(&mut r, &tier_report(d.id.get()).map_err(|e| e.to_string())?);
                if !sizes.is_empty() {
                    let fit = complexity_check(d.id.get(), &sizes).map_err(|e| e.to_string())?;
                    report::add_fit(&mut r, &fit);
                }
            }
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { manifest, shots, seed } => {
            let m = load(&manifest)?;
            let (mut m_shots, mut m_seed) = (None, None);
            for run in &m.runs {
                if let RunDirective::Simulate { shots, seed } = run {
                    m_shots = m_shots.or(*shots);
                    m_seed = m_seed.or(*seed);
                }
            }
            let shots = shots.or(m_shots).unwrap_or(DEFAULT_SHOTS);
            let seed = match seed.or(m_seed) {
                Some(s) => s,
                None => env_seed()?.unwrap_or(0),
            };
            let mut r = Report::new();
            r.section("simulation").entry("shots", shots).entry("seed", seed);
            let counts = simulate(&m.architecture, shots, seed).map_err(|e| e.to_string())?;
            report::add_counts(&mut r, &counts);
            for run in &m.runs {
                let RunDirective::Minimize { controller } = run else { continue };
                let obs = m.observable.as_deref().ok_or("`run minimize` needs an `observable = ...` line")?;
                let out = minimize_architecture(&m.architecture, controller, obs).map_err(|e| e.to_string())?;
                r.section("minimize")
                    .entry("controller", controller)
                    .entry("observable", &out.observable)
                    .entry("iterations", out.result.trace.len() - 1)
                    .entry("converged", out.result.converged)
                    .entry("warned", out.result.warned())
                    .entry("best_energy", out.result.best_energy)
                    .entry("best_params", format!("{:?}", out.result.best_params));
                if let Some(g) = out.ground_energy {
                    r.entry("exact_ground_energy", g);
                }
            }
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tier { id } => {
            let d = descriptor(&id)?;
            let mut r = Report::new();
            report::add_tier(&mut r, &tier_report(d.id.get()).map_err(|e| e.to_string())?);
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { a, b, context, params_a, params_b, n, nisq_threshold } => {
            let era: HardwareEra = context.parse()?;
            let ctx = Context { era, nisq_threshold, ..Context::default() };
            let option = |id: &str, text: Option<&str>| -> Result<TradeoffOption, String> {
                let d = descriptor(id)?;
                let params = params_for(d, text, n)?;
                TradeoffOption::primitive(d.id.get(), &params, &ctx).map_err(|e: CatalogError| e.to_string())
            };
            let report_ = compare(&option(&a, params_a.as_deref())?, &option(&b, params_b.as_deref())?, &ctx);
            let mut r = Report::new();
            report::add_tradeoff(&mut r, &report_);
            print(&r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { manifest, output } => {
            let m = load(&manifest)?;
            let flat = m.architecture.flatten().map_err(|e| e.to_string())?;
            let text = export_qasm(&flat.circuit).map_err(|e| e.to_string())?;
            std::fs::write(&output, text).map_err(|e| format!("{}: {e}", output.display()))?;
            out!("wrote {} ({} gates)", output.display(), flat.circuit.len());
            Ok(ExitCode::SUCCESS)
        }
    }
}
