//! Command-line surface. [`run`] does all the work and returns the text for
//! stdout, so commands can be exercised without spawning a process.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::catalog::{
    dn_plus, even_parity, export, golay24, paper_example, repetition, CatalogEntry, LeechMainCode,
};
use crate::codefile::read_code;
use crate::constructions::{
    associated_construction_c, construction_a, construction_c, construction_cstar, construction_d,
    MainCode, PeriodicConstellation,
};
use crate::ensembles::{
    condition_checks, empirical_dmin_ensemble, gvb_curve, gvb_maximize, scaled_point_density,
    EnsembleConfig, SamplingMode, GVB_DEFAULT_STEP, GVB_DEFAULT_TOL, GVB_GRID_LO,
};
use crate::error::{Error, Result};
use crate::geometry::{
    default_radius, distance_spectrum, dmin_oracle, eds_check, equi_min_distance_check,
};
use crate::gf2::{BinaryCode, DEFAULT_ENUM_CAP};
use crate::latticeness::{brute_closure_oracle, thm1_check, thm4_check, thm5_check};
use crate::packing::{packing_report, PackingReport};

/// Environment variable read for the default worker count.
pub const THREADS_ENV: &str = "MLC_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "mlc",
    version,
    about = "Multilevel constructions from binary codes"
)]
pub struct Cli {
    /// Worker threads for parallel scans.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,

    /// Report wall-clock times; without it `elapsed_ms` is null so output
    /// is byte-identical across runs.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a constellation and write its JSON.
    Construct(ConstructArgs),
    /// Latticeness and geometry diagnostics.
    Check(CheckArgs),
    /// Recompute the C* versus C comparison table.
    Table1(Table1Args),
    /// Packing efficiency of balanced GVB-achieving Construction C.
    Gvb(GvbArgs),
    /// Verify the three-level Leech main code.
    Leech,
    /// Random main-code ensemble statistics.
    Ensemble(EnsembleArgs),
    /// Print a catalog code in code-file format.
    Export(SourceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    A,
    C,
    Cstar,
    D,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Catalog id: ex1, ex2, ex4, ex5, ex7, ex9, ex10, ex13, ex13-swapped,
    /// golay24, or with --n: dnplus, full, zero, repetition, parity.
    #[arg(long)]
    pub catalog: Option<String>,

    /// Code files; one main code for cstar, one per level for c and d.
    #[arg(long = "code")]
    pub codes: Vec<PathBuf>,

    /// Dimension for parametric catalog entries.
    #[arg(long)]
    pub n: Option<usize>,

    /// Number of levels when a main code is read from a file.
    #[arg(long = "L", alias = "levels")]
    pub levels: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[arg(long, value_enum)]
    pub kind: Option<Kind>,

    /// Write the constellation JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Enumeration cap on the number of reps.
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
    pub cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeMethod {
    Brute,
    Thm1,
    Thm4,
    Thm5,
    All,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,

    #[arg(long, value_enum)]
    pub kind: Option<Kind>,

    /// A constellation JSON file instead of codes.
    #[arg(long)]
    pub input: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub lattice: Option<LatticeMethod>,

    #[arg(long)]
    pub eds: bool,

    #[arg(long)]
    pub equimin: bool,

    /// Report the distance spectrum of this rep, e.g. `1,1`.
    #[arg(long)]
    pub spectrum: Option<String>,

    /// Spectrum and EDS radius; defaults to 2q.
    #[arg(long)]
    pub radius: Option<u64>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    /// Print JSON instead of the aligned text table.
    #[arg(long)]
    pub json: bool,

    /// Also write the JSON table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GvbArgs {
    #[arg(long, default_value_t = GVB_DEFAULT_STEP)]
    pub step: f64,

    /// Write the CSV curve here; stdout otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Nonlinear,
    Linear,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,

    #[arg(long = "L", alias = "levels", default_value_t = 2)]
    pub levels: usize,

    #[arg(long, default_value_t = 0.5)]
    pub rate: f64,

    #[arg(long, value_enum, default_value_t = ModeArg::Nonlinear)]
    pub mode: ModeArg,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Draws for the independence statistics.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,

    /// Draws for the minimum-distance comparison.
    #[arg(long, default_value_t = 1000)]
    pub dmin_trials: u64,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Rounds to `digits` significant digits, ties to even on the decimal value.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

/// Renders `x` with 6 significant digits, in exponent form below 10⁻⁴.
pub fn fmt_sig(x: f64) -> String {
    let r = round_sig(x, 6);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn normalize(v: &mut Value, timing: bool) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().unwrap();
            *v = serde_json::Number::from_f64(round_sig(x, 6))
                .map(Value::Number)
                .unwrap_or(Value::Null);
        }
        Value::Array(items) => items.iter_mut().for_each(|i| normalize(i, timing)),
        Value::Object(map) => {
            for (k, item) in map.iter_mut() {
                if k == "elapsed_ms" && !timing {
                    *item = Value::Null;
                } else {
                    normalize(item, timing);
                }
            }
        }
        _ => {}
    }
}

struct Run {
    command: &'static str,
    inputs: Vec<String>,
    outputs: Vec<String>,
    seed: Option<u64>,
    started: std::time::Instant,
}

impl Run {
    fn new(command: &'static str) -> Self {
        Run {
            command,
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed: None,
            started: std::time::Instant::now(),
        }
    }

    fn finish(self, result: Value, timing: bool) -> Result<String> {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "seed": self.seed,
            "elapsed_ms": self.started.elapsed().as_millis() as u64,
            "result": result,
        });
        normalize(&mut v, timing);
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

/// What an input resolved to.
enum Resolved {
    Main(MainCode),
    Family(Vec<BinaryCode>),
}

fn resolve(src: &SourceArgs, kind: Option<Kind>, run: &mut Run) -> Result<Resolved> {
    if let Some(id) = &src.catalog {
        run.inputs.push(match src.n {
            Some(n) => format!("catalog:{id}:n={n}"),
            None => format!("catalog:{id}"),
        });
        let n = || {
            src.n
                .ok_or_else(|| Error::Domain(format!("catalog {id} needs --n")))
        };
        return match id.as_str() {
            "dnplus" => Ok(Resolved::Family(dn_plus(n()?)?.0)),
            "full" => Ok(Resolved::Family(vec![BinaryCode::full_space(n()?)?])),
            "zero" => Ok(Resolved::Family(vec![BinaryCode::zero(n()?)])),
            "repetition" => Ok(Resolved::Family(vec![repetition(n()?)])),
            "parity" => Ok(Resolved::Family(vec![even_parity(n()?)?])),
            "golay24" => Ok(Resolved::Family(vec![golay24()])),
            other => Ok(match paper_example(other)? {
                CatalogEntry::Main(m) => Resolved::Main(m),
                CatalogEntry::Family(f) => Resolved::Family(f),
            }),
        };
    }
    if src.codes.is_empty() {
        return Err(Error::Domain("give --catalog or --code".into()));
    }
    let codes = src
        .codes
        .iter()
        .map(|p| {
            run.inputs.push(p.display().to_string());
            read_code(p, DEFAULT_ENUM_CAP)
        })
        .collect::<Result<Vec<_>>>()?;
    if kind == Some(Kind::Cstar) {
        if codes.len() != 1 {
            return Err(Error::Domain(
                "cstar takes exactly one main-code file".into(),
            ));
        }
        let levels = src
            .levels
            .ok_or_else(|| Error::Domain("a main code from file needs --L".into()))?;
        let len = codes[0].n();
        if len % levels != 0 {
            return Err(Error::Levels(format!(
                "length {len} is not a multiple of L = {levels}"
            )));
        }
        let code = codes.into_iter().next().unwrap();
        return Ok(Resolved::Main(MainCode::new(code, len / levels, levels)?));
    }
    Ok(Resolved::Family(codes))
}

fn build(resolved: &Resolved, kind: Option<Kind>, cap: u64) -> Result<PeriodicConstellation> {
    match (resolved, kind) {
        (Resolved::Main(m), None | Some(Kind::Cstar)) => construction_cstar(m, cap),
        (Resolved::Main(m), Some(Kind::C)) => associated_construction_c(m, cap),
        (Resolved::Main(_), Some(k)) => Err(Error::Domain(format!(
            "kind {k:?} needs level codes, not a main code"
        ))),
        (Resolved::Family(f), Some(Kind::A)) => {
            if f.len() != 1 {
                return Err(Error::Domain("construction A takes one code".into()));
            }
            Ok(construction_a(&f[0]))
        }
        (Resolved::Family(f), None | Some(Kind::C)) => construction_c(f, cap),
        (Resolved::Family(f), Some(Kind::D)) => construction_d(f, cap),
        (Resolved::Family(f), Some(Kind::Cstar)) => {
            construction_cstar(&MainCode::product(f, cap)?, cap)
        }
    }
}

fn cmd_construct(args: &ConstructArgs, timing: bool) -> Result<String> {
    let mut run = Run::new("construct");
    let resolved = resolve(&args.source, args.kind, &mut run)?;
    let p = build(&resolved, args.kind, args.cap)?;
    let summary =
        json!({"reps": p.len(), "q": p.q(), "n": p.n(), "L": p.levels(), "source": p.source()});
    match &args.out {
        Some(path) => {
            write_file(path, &(p.to_json()? + "\n"))?;
            run.outputs.push(path.display().to_string());
            run.finish(summary, timing)
        }
        None => {
            let mut v = to_value(&p)?;
            normalize(&mut v, timing);
            Ok(serde_json::to_string_pretty(&v)? + "\n")
        }
    }
}

fn parse_rep(text: &str) -> Result<Vec<u16>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u16>()
                .map_err(|_| Error::Domain(format!("bad rep coordinate `{t}`")))
        })
        .collect()
}

fn error_entry(e: Error) -> Value {
    json!({ "error": e.to_string() })
}

fn cmd_check(args: &CheckArgs, timing: bool) -> Result<String> {
    let mut run = Run::new("check");
    let (resolved, p) = match &args.input {
        Some(path) => {
            run.inputs.push(path.display().to_string());
            (None, PeriodicConstellation::read(path)?)
        }
        None => {
            let r = resolve(&args.source, args.kind, &mut run)?;
            let p = build(&r, args.kind, DEFAULT_ENUM_CAP)?;
            (Some(r), p)
        }
    };
    let mut out = Map::new();
    out.insert("n".into(), json!(p.n()));
    out.insert("L".into(), json!(p.levels()));
    out.insert("reps".into(), json!(p.len()));
    out.insert("source".into(), to_value(&p.source())?);

    if let Some(method) = args.lattice {
        let all = method == LatticeMethod::All;
        let mut lat = Map::new();
        if all || method == LatticeMethod::Brute {
            lat.insert("brute".into(), to_value(&brute_closure_oracle(&p)?)?);
        }
        let family = match &resolved {
            Some(Resolved::Family(f)) => Some(f.clone()),
            _ => None,
        };
        let main = match &resolved {
            Some(Resolved::Main(m)) => Some(m.clone()),
            Some(Resolved::Family(f)) => Some(MainCode::product(f, DEFAULT_ENUM_CAP)?),
            None => None,
        };
        if all || method == LatticeMethod::Thm1 {
            let v = match &family {
                Some(f) => thm1_check(f, DEFAULT_ENUM_CAP).and_then(|r| to_value(&r)),
                None => Err(Error::Domain("thm1 needs level codes".into())),
            };
            match v {
                Ok(v) => lat.insert("thm1".into(), v),
                Err(e) if all => lat.insert("thm1".into(), error_entry(e)),
                Err(e) => return Err(e),
            };
        }
        for (name, m) in [("thm4", LatticeMethod::Thm4), ("thm5", LatticeMethod::Thm5)] {
            if !(all || method == m) {
                continue;
            }
            let v = match &main {
                Some(mc) if m == LatticeMethod::Thm4 => thm4_check(mc).and_then(|r| {
                    let mut v = to_value(&r.report)?;
                    v["chain"] = to_value(&r.chain)?;
                    v["closure"] = to_value(&r.closure)?;
                    Ok(v)
                }),
                Some(mc) => thm5_check(mc).and_then(|r| to_value(&r)),
                None => Err(Error::Domain(format!("{name} needs a main code"))),
            };
            match v {
                Ok(v) => lat.insert(name.into(), v),
                Err(e) if all => lat.insert(name.into(), error_entry(e)),
                Err(e) => return Err(e),
            };
        }
        out.insert("lattice".into(), Value::Object(lat));
    }

    let radius = args.radius.unwrap_or_else(|| default_radius(&p));
    if args.eds {
        out.insert("eds".into(), to_value(&eds_check(&p, radius)?)?);
    }
    if args.equimin {
        out.insert("equimin".into(), to_value(&equi_min_distance_check(&p)?)?);
    }
    if let Some(rep) = &args.spectrum {
        let rep = parse_rep(rep)?;
        out.insert(
            "spectrum".into(),
            to_value(&distance_spectrum(&p, &rep, radius)?)?,
        );
    }
    let result = Value::Object(out);
    if let Some(path) = &args.out {
        let mut v = result.clone();
        normalize(&mut v, timing);
        write_file(path, &(serde_json::to_string_pretty(&v)? + "\n"))?;
        run.outputs.push(path.display().to_string());
    }
    run.finish(result, timing)
}

/// One value as printed in the table, with its numeric reading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Printed {
    pub text: &'static str,
    pub value: f64,
}

const fn printed(text: &'static str, value: f64) -> Printed {
    Printed { text, value }
}

/// Cell order: d²(C*), d²(C), Δ(C*), Δ(C), ρ(C*), ρ(C).
pub const TABLE1_CELLS: [&str; 6] = [
    "d2_cstar",
    "d2_c",
    "delta_cstar",
    "delta_c",
    "rho_cstar",
    "rho_c",
];

/// Absolute tolerance for the real-valued cells; `d²` compares exactly.
pub const TABLE1_TOL: f64 = 5e-4;

/// Printed values, including ones that merely look like truncated constants.
#[allow(clippy::approx_constant)]
pub fn table1_printed(id: &str) -> Option<(usize, [Printed; 6])> {
    Some(match id {
        "ex4" => (
            2,
            [
                printed("1", 1.0),
                printed("1", 1.0),
                printed("π/16", PI / 16.0),
                printed("π/8", PI / 8.0),
                printed("0.4431", 0.4431),
                printed("0.6266", 0.6266),
            ],
        ),
        "ex5" => (
            2,
            [
                printed("4", 4.0),
                printed("1", 1.0),
                printed("π/4", PI / 4.0),
                printed("π/8", PI / 8.0),
                printed("0.8862", 0.8862),
                printed("0.4431", 0.4431),
            ],
        ),
        "ex6" => (
            24,
            [
                printed("32", 32.0),
                printed("24", 24.0),
                printed("0.001929", 0.001929),
                printed("0.00012", 0.00012),
                printed("0.7707", 0.7707),
                printed("0.6236", 0.6236),
            ],
        ),
        "ex9" => (
            2,
            [
                printed("5", 5.0),
                printed("1", 1.0),
                printed("0.8781", 0.8781),
                printed("0.7853", 0.7853),
                printed("0.9209", 0.9209),
                printed("0.8861", 0.8861),
            ],
        ),
        "ex10" => (
            1,
            [
                printed("1", 1.0),
                printed("1", 1.0),
                printed("0.5", 0.5),
                printed("1", 1.0),
                printed("0.5", 0.5),
                printed("1", 1.0),
            ],
        ),
        _ => return None,
    })
}

pub const TABLE1_ROWS: [&str; 5] = ["ex4", "ex5", "ex6", "ex9", "ex10"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Row {
    pub id: &'static str,
    pub dimension: usize,
    pub recomputed: [f64; 6],
    pub paper: [Printed; 6],
    /// Names of the cells where the two disagree.
    pub mismatches: Vec<&'static str>,
}

fn row_from(
    id: &'static str,
    dimension: usize,
    star: &PackingReport,
    c: &PackingReport,
) -> Table1Row {
    let (_, paper) = table1_printed(id).expect("row id is in the table");
    let recomputed = [
        star.dmin2 as f64,
        c.dmin2 as f64,
        star.delta,
        c.delta,
        star.rho,
        c.rho,
    ];
    let mismatches = TABLE1_CELLS
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            if i < 2 {
                recomputed[i] != paper[i].value
            } else {
                (recomputed[i] - paper[i].value).abs() > TABLE1_TOL
            }
        })
        .map(|(_, &name)| name)
        .collect();
    Table1Row {
        id,
        dimension,
        recomputed,
        paper,
        mismatches,
    }
}

pub fn table1_rows() -> Result<Vec<Table1Row>> {
    TABLE1_ROWS
        .iter()
        .map(|&id| {
            if id == "ex6" {
                let r = LeechMainCode::new().report()?;
                return Ok(row_from(id, 24, &r.packing, &r.associated_c_packing));
            }
            let CatalogEntry::Main(m) = paper_example(id)? else {
                unreachable!("table rows are main codes")
            };
            let star = construction_cstar(&m, DEFAULT_ENUM_CAP)?;
            let assoc = associated_construction_c(&m, DEFAULT_ENUM_CAP)?;
            let rs = packing_report(&star, Some(dmin_oracle(&star)?))?;
            let rc = packing_report(&assoc, Some(dmin_oracle(&assoc)?))?;
            Ok(row_from(id, m.n(), &rs, &rc))
        })
        .collect()
}

pub fn render_table1(rows: &[Table1Row]) -> String {
    let header = [
        "example", "n", "d²(C*)", "d²(C)", "Δ(C*)", "Δ(C)", "ρ(C*)", "ρ(C)",
    ];
    let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let mut line = vec![r.id.to_string(), r.dimension.to_string()];
        for (i, name) in TABLE1_CELLS.iter().enumerate() {
            let v = if i < 2 {
                format!("{}", r.recomputed[i] as u64)
            } else {
                fmt_sig(r.recomputed[i])
            };
            line.push(if r.mismatches.contains(name) {
                format!("{v} [paper-table {}] *", r.paper[i].text)
            } else {
                v
            });
        }
        cells.push(line);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            cells
                .iter()
                .map(|l| l[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in &cells {
        let padded: Vec<String> = line
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    }
    out.push_str("* recomputed value differs from the printed table\n");
    out
}

fn cmd_table1(args: &Table1Args, timing: bool) -> Result<String> {
    let mut run = Run::new("table1");
    let rows = table1_rows()?;
    let value = to_value(&rows)?;
    if let Some(path) = &args.out {
        let mut v = value.clone();
        normalize(&mut v, timing);
        write_file(path, &(serde_json::to_string_pretty(&v)? + "\n"))?;
        run.outputs.push(path.display().to_string());
    }
    if args.json {
        run.finish(value, timing)
    } else {
        Ok(render_table1(&rows))
    }
}

fn cmd_gvb(args: &GvbArgs, timing: bool) -> Result<String> {
    let mut run = Run::new("gvb");
    let curve = gvb_curve(GVB_GRID_LO, 0.5, args.step)?;
    let opt = gvb_maximize(args.step.min(GVB_DEFAULT_STEP), GVB_DEFAULT_TOL)?;
    let mut csv = String::from("alpha1,rho,levels\n");
    for p in &curve {
        csv.push_str(&format!(
            "{},{},{}\n",
            fmt_sig(p.alpha1),
            fmt_sig(p.rho),
            p.levels_used
        ));
    }
    match &args.out {
        Some(path) => {
            write_file(path, &csv)?;
            run.outputs.push(path.display().to_string());
            run.finish(json!({"points": curve.len(), "optimum": opt}), timing)
        }
        None => Ok(format!(
            "{csv}# optimum alpha1={} rho={}\n",
            fmt_sig(opt.alpha_star),
            fmt_sig(opt.rho_star)
        )),
    }
}

fn cmd_leech(timing: bool) -> Result<String> {
    let mut run = Run::new("leech");
    run.inputs.push("catalog:leech".into());
    let report = LeechMainCode::new().report()?;
    run.finish(to_value(&report)?, timing)
}

fn cmd_ensemble(args: &EnsembleArgs, timing: bool) -> Result<String> {
    let mut run = Run::new("ensemble");
    run.seed = Some(args.seed);
    let mode = match args.mode {
        ModeArg::Nonlinear => SamplingMode::NonlinearCoin,
        ModeArg::Linear => SamplingMode::LinearRandomGenerator,
    };
    let cfg = EnsembleConfig::new(args.n, args.levels, args.rate, mode, args.seed)?;
    let mut out = Map::new();
    out.insert("config".into(), to_value(&cfg)?);
    out.insert("k".into(), json!(cfg.k()));
    out.insert("density".into(), to_value(&scaled_point_density(&cfg))?);
    out.insert(
        "conditions".into(),
        match condition_checks(&cfg, args.trials) {
            Ok(r) => to_value(&r)?,
            Err(e) => error_entry(e),
        },
    );
    let mut dmin = to_value(&empirical_dmin_ensemble(&cfg, args.dmin_trials)?)?;
    if let Value::Object(m) = &mut dmin {
        m.remove("samples");
    }
    out.insert("dmin".into(), dmin);
    let result = Value::Object(out);
    if let Some(path) = &args.out {
        let mut v = result.clone();
        normalize(&mut v, timing);
        write_file(path, &(serde_json::to_string_pretty(&v)? + "\n"))?;
        run.outputs.push(path.display().to_string());
    }
    run.finish(result, timing)
}

fn cmd_export(src: &SourceArgs) -> Result<String> {
    let mut run = Run::new("export");
    let entry = match resolve(src, None, &mut run)? {
        Resolved::Main(m) => CatalogEntry::Main(m),
        Resolved::Family(f) => CatalogEntry::Family(f),
    };
    let files = export(&entry);
    if files.len() == 1 {
        return Ok(files.into_iter().next().unwrap());
    }
    Ok(files
        .iter()
        .enumerate()
        .map(|(i, f)| format!("# level {}\n{f}", i + 1))
        .collect::<Vec<_>>()
        .join("\n"))
}

pub fn run(cli: &Cli) -> Result<String> {
    let t = cli.timing;
    match &cli.command {
        Command::Construct(a) => cmd_construct(a, t),
        Command::Check(a) => cmd_check(a, t),
        Command::Table1(a) => cmd_table1(a, t),
        Command::Gvb(a) => cmd_gvb(a, t),
        Command::Leech => cmd_leech(t),
        Command::Ensemble(a) => cmd_ensemble(a, t),
        Command::Export(a) => cmd_export(a),
    }
}
