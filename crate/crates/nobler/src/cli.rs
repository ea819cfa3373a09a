//! Command-line surface: catalog inspection, verification suites,
//! tensor and decomposition queries, tables, and report drivers.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::TruncatedAlgebra;
use crate::aut::AugAutomorphism;
use crate::decomp::decompose_seeded;
use crate::error::NoblerError;
use crate::field::FiniteField;
use crate::geometry::{noble_points, support, ProjPoint};
use crate::greenring::{
    cg_table, noble_correspondence_check, pa_counterexample, PaCase,
};
use crate::hopf::{catalog, catalog_entry, hopf_isomorphic, twist_hopf, HopfStructure, IsoVerdict};
use crate::modrep::{
    direct_sum, induce_trivial, jordan_module, kronecker_module, regular_module,
    tensor_module, twist_module, Module,
};

const DEFAULT_NMAX: usize = 6;
const DEFAULT_SEED: u64 = 0x6e6f626c65;
const DEFAULT_ISO_BUDGET: u64 = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "nobler", version, about = "Exact tensor-category computations for truncated algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// JSON config file; explicit flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Field characteristic.
    #[arg(long, global = true)]
    p: Option<u16>,
    /// Field extension degree.
    #[arg(long, global = true)]
    ext: Option<u16>,
    /// Generator orders n_i (algebra k[x_i]/(x_i^{p^{n_i}})), comma-separated.
    #[arg(long, global = true, value_delimiter = ',')]
    orders: Option<Vec<u32>>,
    /// Half-dimension bound for point-module families.
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// RNG seed for all randomized searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format: json, csv, or text.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// List the catalog of comultiplication structures on the algebra.
    Catalog,
    /// Run the coalgebra/antipode axiom suite on catalog structures.
    VerifyHopf {
        #[arg(long)]
        structure: Option<String>,
    },
    /// Tensor two modules under a structure and decompose the result.
    Tensor {
        #[arg(long)]
        structure: String,
        left: String,
        right: String,
    },
    /// Decompose a module expression into labeled indecomposables.
    Decompose { module: String },
    /// Compute the support of a module expression.
    Support { module: String },
    /// List the noble points of catalog structures.
    Nobles {
        #[arg(long)]
        structure: Option<String>,
    },
    /// Tensor tables of Jordan blocks over a cyclic algebra.
    GreenTable {
        #[arg(long)]
        structure: Option<String>,
        #[arg(long)]
        all_structures: bool,
        #[arg(long)]
        bound: Option<usize>,
        /// Also report whether all requested tables coincide.
        #[arg(long)]
        compare: bool,
    },
    /// Compare tensor products at common noble points of two structures.
    NobleCorrespondence {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Run a wild-family counterexample case.
    PaCheck {
        #[arg(long)]
        case: String,
    },
    /// Search for a twisting automorphism between two structures.
    HopfIso {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = NoblerError;

    fn from_str(s: &str) -> Result<OutputFormat, NoblerError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(NoblerError::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Effective run configuration: config-file values overridden by flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u16,
    pub ext: u16,
    pub orders: Vec<u32>,
    pub nmax: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Named automorphisms: generator images as element JSON objects.
    pub phis: BTreeMap<String, Vec<Value>>,
}

impl RunConfig {
    fn resolve(common: &CommonArgs) -> Result<RunConfig, NoblerError> {
        let file: Value = match &common.config {
            Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
            None => json!({}),
        };
        let get_u64 = |k: &str| file.get(k).and_then(Value::as_u64);
        let p = common.p.or(get_u64("p").map(|v| v as u16)).unwrap_or(2);
        let ext = common.ext.or(get_u64("ext").map(|v| v as u16)).unwrap_or(1);
        let orders = common
            .orders
            .clone()
            .or_else(|| {
                file.get("orders").and_then(Value::as_array).map(|a| {
                    a.iter().filter_map(Value::as_u64).map(|v| v as u32).collect()
                })
            })
            .unwrap_or_else(|| vec![1, 1]);
        let nmax = common
            .nmax
            .or(get_u64("nmax").map(|v| v as usize))
            .unwrap_or(DEFAULT_NMAX);
        let seed = common.seed.or(get_u64("seed")).unwrap_or(DEFAULT_SEED);
        let format = match (&common.format, file.get("format").and_then(Value::as_str)) {
            (Some(s), _) => s.parse()?,
            (None, Some(s)) => s.parse()?,
            (None, None) => OutputFormat::Json,
        };
        let mut phis = BTreeMap::new();
        if let Some(obj) = file.get("phis").and_then(Value::as_object) {
            for (name, images) in obj {
                let images = images
                    .as_array()
                    .ok_or_else(|| {
                        NoblerError::Parse(format!("phi {name:?} must be an array of elements"))
                    })?
                    .clone();
                phis.insert(name.clone(), images);
            }
        }
        Ok(RunConfig { p, ext, orders, nmax, seed, format, out: common.out.clone(), phis })
    }

    fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "ext": self.ext,
            "orders": self.orders,
            "nmax": self.nmax,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    fn algebra(&self) -> Result<Arc<TruncatedAlgebra>, NoblerError> {
        let f = Arc::new(FiniteField::new(self.p, self.ext)?);
        TruncatedAlgebra::new(f, self.orders.clone())
    }
}

fn phi_from_config(
    alg: &Arc<TruncatedAlgebra>,
    cfg: &RunConfig,
    name: &str,
) -> Result<AugAutomorphism, NoblerError> {
    let images = cfg
        .phis
        .get(name)
        .ok_or_else(|| NoblerError::Parse(format!("no automorphism named {name:?} in config")))?;
    let images = images
        .iter()
        .map(|v| alg.element_from_json(v))
        .collect::<Result<Vec<_>, _>>()?;
    AugAutomorphism::new(alg.clone(), images)
}

/// Structure by catalog label, or "twist(<label>,<phi>)" with φ from config.
fn structure_from_spec(
    alg: &Arc<TruncatedAlgebra>,
    cfg: &RunConfig,
    spec: &str,
) -> Result<HopfStructure, NoblerError> {
    if let Some(inner) = spec.strip_prefix("twist(").and_then(|r| r.strip_suffix(')')) {
        let (base, phi_name) = inner
            .split_once(',')
            .ok_or_else(|| NoblerError::Parse(format!("malformed structure {spec:?}")))?;
        let base = catalog_entry(alg, base.trim())?;
        let phi = phi_from_config(alg, cfg, phi_name.trim())?;
        return twist_hopf(&base, &phi, phi_name.trim());
    }
    catalog_entry(alg, spec)
}

/// Split on '+' at depth zero with respect to () and [].
fn split_sum(expr: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in expr.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => {
                parts.push(&expr[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&expr[start..]);
    parts
}

fn generator_index(alg: &TruncatedAlgebra, name: &str) -> Result<usize, NoblerError> {
    let idx = match name {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        other => other
            .strip_prefix('x')
            .unwrap_or(other)
            .parse()
            .map_err(|_| NoblerError::Parse(format!("unknown generator {name:?}")))?,
    };
    if idx >= alg.num_gens() {
        return Err(NoblerError::IndexOutOfRange(idx as u64));
    }
    Ok(idx)
}

/// Module mini-language: sums of "P", "k", "J<i>", "V<2n>[@point]",
/// "ind(<gen>)", and "twist(<phi>,<expr>)".
pub fn parse_module(
    alg: &Arc<TruncatedAlgebra>,
    cfg: &RunConfig,
    expr: &str,
) -> Result<Module, NoblerError> {
    let parts = split_sum(expr);
    let mut modules = Vec::new();
    for part in parts {
        modules.push(parse_atom(alg, cfg, part.trim())?);
    }
    let refs: Vec<&Module> = modules.iter().collect();
    direct_sum(&refs)
}

fn parse_atom(
    alg: &Arc<TruncatedAlgebra>,
    cfg: &RunConfig,
    atom: &str,
) -> Result<Module, NoblerError> {
    let bad = || NoblerError::Parse(format!("cannot parse module {atom:?}"));
    match atom {
        "P" => return Ok(regular_module(alg)),
        "k" => return Ok(Module::trivial(alg.clone())),
        _ => {}
    }
    if let Some(rest) = atom.strip_prefix('J') {
        let i: usize = rest.parse().map_err(|_| bad())?;
        return jordan_module(alg, i);
    }
    if let Some(rest) = atom.strip_prefix('V') {
        let (dim_part, pt) = match rest.split_once('@') {
            Some((d, pt)) => (d, pt.parse::<ProjPoint>()?),
            None => (rest, ProjPoint::Homog(1, 0)),
        };
        let d: usize = dim_part.parse().map_err(|_| bad())?;
        if d == 0 || d % 2 != 0 {
            return Err(bad());
        }
        let (a, b) = pt.coords().ok_or_else(bad)?;
        return kronecker_module(alg, d / 2, (a, b), None);
    }
    if let Some(inner) = atom.strip_prefix("ind(").and_then(|r| r.strip_suffix(')')) {
        let g = generator_index(alg, inner.trim())?;
        return induce_trivial(alg, g);
    }
    if let Some(inner) = atom.strip_prefix("twist(").and_then(|r| r.strip_suffix(')')) {
        let (phi_name, rest) = inner.split_once(',').ok_or_else(bad)?;
        let phi = phi_from_config(alg, cfg, phi_name.trim())?;
        let m = parse_module(alg, cfg, rest.trim())?;
        return twist_module(&phi, &m);
    }
    Err(bad())
}

fn requested_structures(
    alg: &Arc<TruncatedAlgebra>,
    cfg: &RunConfig,
    one: &Option<String>,
) -> Result<Vec<HopfStructure>, NoblerError> {
    match one {
        Some(label) => Ok(vec![structure_from_spec(alg, cfg, label)?]),
        None => catalog(alg),
    }
}

struct Outcome {
    report: Value,
    /// Preformatted body overriding JSON rendering (CSV tables).
    rendered: Option<String>,
    exit: i32,
}

impl Outcome {
    fn new(report: Value, exit: i32) -> Outcome {
        Outcome { report, rendered: None, exit }
    }
}

/// Entry point; returns the process exit code. 0 = pass, 1 = a
/// mathematical failure verdict, 2 = usage or tool error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::resolve(&cli.common) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match execute(&cli.cmd, &cfg) {
        Ok(outcome) => {
            let body = match outcome.rendered {
                Some(text) => text,
                None => {
                    let full = json!({ "config": cfg.to_json(), "report": outcome.report });
                    match cfg.format {
                        OutputFormat::Json => full.to_string(),
                        _ => serde_json::to_string_pretty(&full).expect("serializable"),
                    }
                }
            };
            let write_result = match &cfg.out {
                Some(path) => fs::write(path, body + "\n").map_err(NoblerError::from),
                None => {
                    println!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = write_result {
                eprintln!("error: {e}");
                return 2;
            }
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cmd: &Cmd, cfg: &RunConfig) -> Result<Outcome, NoblerError> {
    let alg = cfg.algebra()?;
    match cmd {
        Cmd::Catalog => {
            let list: Vec<Value> = catalog(&alg)?.iter().map(|h| h.to_json()).collect();
            Ok(Outcome::new(json!({ "structures": list }), 0))
        }
        Cmd::VerifyHopf { structure } => {
            let mut all_ok = true;
            let mut entries = Vec::new();
            for h in requested_structures(&alg, cfg, structure)? {
                let report = h.verify_bialgebra();
                all_ok &= report.all_ok();
                entries.push(json!({ "label": h.label, "report": report.to_json() }));
            }
            Ok(Outcome::new(
                json!({ "verified": entries, "all_ok": all_ok }),
                i32::from(!all_ok),
            ))
        }
        Cmd::Tensor { structure, left, right } => {
            let h = structure_from_spec(&alg, cfg, structure)?;
            let l = parse_module(&alg, cfg, left)?;
            let r = parse_module(&alg, cfg, right)?;
            let prod = tensor_module(&h, &l, &r)?;
            let d = decompose_seeded(&prod, cfg.seed)?;
            Ok(Outcome::new(
                json!({
                    "structure": h.label,
                    "left": left,
                    "right": right,
                    "dimension": prod.dim,
                    "summands": d.summands,
                    "certified": d.certified,
                }),
                i32::from(!d.certified),
            ))
        }
        Cmd::Decompose { module } => {
            let m = parse_module(&alg, cfg, module)?;
            let d = decompose_seeded(&m, cfg.seed)?;
            let parts: Vec<Value> = d
                .parts
                .iter()
                .map(|p| json!({ "label": p.label, "dim": p.dim }))
                .collect();
            Ok(Outcome::new(
                json!({
                    "module": module,
                    "dimension": m.dim,
                    "summands": d.summands,
                    "parts": parts,
                    "certified": d.certified,
                }),
                i32::from(!d.certified),
            ))
        }
        Cmd::Support { module } => {
            let m = parse_module(&alg, cfg, module)?;
            let pts: Vec<String> = support(&alg, &m)?.iter().map(ProjPoint::to_string).collect();
            Ok(Outcome::new(
                json!({ "module": module, "dimension": m.dim, "support": pts }),
                0,
            ))
        }
        Cmd::Nobles { structure } => {
            let mut entries = Vec::new();
            for h in requested_structures(&alg, cfg, structure)? {
                let pts: Vec<String> =
                    noble_points(&h)?.iter().map(ProjPoint::to_string).collect();
                entries.push(json!({ "label": h.label, "noble_points": pts }));
            }
            Ok(Outcome::new(json!({ "nobles": entries }), 0))
        }
        Cmd::GreenTable { structure, all_structures, bound, compare } => {
            let structures = if *all_structures {
                catalog(&alg)?
            } else {
                requested_structures(&alg, cfg, structure)?
            };
            let bound = bound.unwrap_or(alg.dim);
            let tables = structures
                .iter()
                .map(|h| cg_table(h, bound))
                .collect::<Result<Vec<_>, _>>()?;
            let identical = if *compare {
                Some(tables.iter().all(|t| t.cells == tables[0].cells))
            } else {
                None
            };
            let exit = i32::from(identical == Some(false));
            if cfg.format == OutputFormat::Csv {
                let mut body = String::new();
                for t in &tables {
                    body.push_str(&format!("# structure {}\n", t.label));
                    body.push_str(&t.to_csv());
                }
                if let Some(same) = identical {
                    body.push_str(&format!("# tables identical: {same}\n"));
                }
                return Ok(Outcome { report: Value::Null, rendered: Some(body), exit });
            }
            Ok(Outcome::new(
                json!({
                    "bound": bound,
                    "tables": tables.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
                    "tables_identical": identical,
                }),
                exit,
            ))
        }
        Cmd::NobleCorrespondence { left, right } => {
            let h1 = structure_from_spec(&alg, cfg, left)?;
            let h2 = structure_from_spec(&alg, cfg, right)?;
            let r = noble_correspondence_check(&h1, &h2, cfg.nmax)?;
            Ok(Outcome::new(r.to_json(), i32::from(!r.overall)))
        }
        Cmd::PaCheck { case } => {
            let case = PaCase::parse(case, cfg.p)?;
            let r = pa_counterexample(&case)?;
            let clean_pass = !r.counterexample && !r.inconclusive;
            Ok(Outcome::new(r.to_json(), i32::from(!clean_pass)))
        }
        Cmd::HopfIso { left, right, budget } => {
            let h1 = structure_from_spec(&alg, cfg, left)?;
            let h2 = structure_from_spec(&alg, cfg, right)?;
            let budget = budget.unwrap_or(DEFAULT_ISO_BUDGET);
            let (verdict, phi, exit) = match hopf_isomorphic(&h1, &h2, budget) {
                IsoVerdict::Iso(phi) => {
                    let images: Vec<Value> = (0..alg.num_gens())
                        .map(|i| alg.element_to_json(&phi.apply(&alg.gen(i))))
                        .collect();
                    ("iso", Some(images), 0)
                }
                IsoVerdict::NoIsoOverBaseField => ("no_iso_over_base_field", None, 1),
                IsoVerdict::BudgetExceeded => ("budget_exceeded", None, 1),
            };
            Ok(Outcome::new(
                json!({
                    "left": h1.label,
                    "right": h2.label,
                    "budget": budget,
                    "verdict": verdict,
                    "twist_images": phi,
                }),
                exit,
            ))
        }
    }
}
