//! Batch frontend: one subcommand per experiment, every flag optional, and
//! output as CSV or JSON. `--config FILE` reads `key = value` lines with the
//! same names as the flags; flags given on the command line win.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, to_real, Rational};
use crate::hamming::{canonical_grid, optimal_mixing_sweep, HammingModel, MixingDistribution, SweepTemplate};
use crate::oracle::suite::{run_suite, Suite};
use crate::poisson::negbin::regime;
use crate::poisson::{poisson_bound_binomial, poisson_bound_negbin, PoissonBoundReport};
use crate::sn_plancherel::{
    partitions_of, stein_bound_group, ConjugacyClassTag, GroupBoundInput, Partition,
};
use crate::spectrum::{group_spectrum, hamming_spectrum};
use crate::bound::{DetailKey, SteinBoundReport};

#[derive(Debug, Parser)]
#[command(name = "stein-steps", version, about = "Stein bounds as functions of chain step size")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub experiment: Experiment,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Experiment {
    /// Normal bound for Binomial(n, 1/2) over a grid of step-size mixings.
    NormalBinomial(Params),
    /// Normal bound for the Hamming scheme H(n, q) over a grid of mixings.
    NormalHamming(Params),
    /// Normal bound for the transposition walk on S_n, per representation.
    NormalSn(Params),
    /// Poisson bound for Binomial(n, 1/n), per number of replaced coordinates.
    PoissonBinomial(Params),
    /// Poisson bound for a sum of r geometrics, per number of replaced coordinates.
    PoissonNegbin(Params),
    /// Eigenvalues and bound functionals (Hamming, or S_n with --partitions).
    Spectrum(Params),
    /// Brute-force oracle checks.
    Verify(Params),
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::NormalBinomial(_) => "normal-binomial",
            Experiment::NormalHamming(_) => "normal-hamming",
            Experiment::NormalSn(_) => "normal-sn",
            Experiment::PoissonBinomial(_) => "poisson-binomial",
            Experiment::PoissonNegbin(_) => "poisson-negbin",
            Experiment::Spectrum(_) => "spectrum",
            Experiment::Verify(_) => "verify",
        }
    }

    pub fn params(&self) -> &Params {
        match self {
            Experiment::NormalBinomial(p)
            | Experiment::NormalHamming(p)
            | Experiment::NormalSn(p)
            | Experiment::PoissonBinomial(p)
            | Experiment::PoissonNegbin(p)
            | Experiment::Spectrum(p)
            | Experiment::Verify(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Success probability, e.g. `4/5` or `0.8`.
    #[arg(long)]
    pub p: Option<String>,
    /// Smallest (or only) number of replaced coordinates.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub k_max: Option<u32>,
    /// `;`-separated mixings `t:w,t:w`, or `canonical`.
    #[arg(long)]
    pub grid: Option<String>,
    /// `;`-separated partitions such as `7,1;6,2`, or `all`.
    #[arg(long)]
    pub partitions: Option<String>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Stein factor for Poisson(lambda) when lambda > 1.
    #[arg(long)]
    pub c_lambda: Option<f64>,
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 8)]
    pub max_n: u32,
}

fn require<T: Copy>(v: Option<T>, name: &str, experiment: &str) -> Result<T> {
    v.ok_or_else(|| Error::Invalid(format!("{experiment} requires --{name}")))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Empty,
    Int(i64),
    Text(String),
    Real(f64),
    Bool(bool),
    /// Written as a decimal column plus a `_exact` string column.
    Exact(Rational),
    OptExact(Option<Rational>),
    /// A float whose exact value may be unknown.
    Mixed(f64, Option<Rational>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Plain,
    Exact,
}

/// Rows in final order with typed cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<(String, Kind)>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[(&str, bool)]) -> Self {
        Self {
            columns: columns
                .iter()
                .map(|(c, exact)| (c.to_string(), if *exact { Kind::Exact } else { Kind::Plain }))
                .collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(c, _)| c == name)
    }

    /// Header names as written, with the paired `_exact` columns.
    pub fn header(&self) -> Vec<String> {
        self.columns
            .iter()
            .flat_map(|(c, k)| match k {
                Kind::Plain => vec![c.clone()],
                Kind::Exact => vec![c.clone(), format!("{c}_exact")],
            })
            .collect()
    }

    fn flat(cell: &Cell, kind: Kind) -> Vec<Value> {
        let real = |x: f64| serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        match (cell, kind) {
            (Cell::Exact(r), _) | (Cell::OptExact(Some(r)), _) => {
                vec![real(to_real(r)), Value::String(r.to_string())]
            }
            (Cell::Mixed(x, exact), _) => {
                vec![real(*x), exact.as_ref().map_or(Value::Null, |r| Value::String(r.to_string()))]
            }
            (Cell::OptExact(None), _) | (Cell::Empty, Kind::Exact) => vec![Value::Null, Value::Null],
            (Cell::Empty, Kind::Plain) => vec![Value::Null],
            (Cell::Int(i), _) => vec![Value::from(*i)],
            (Cell::Text(s), _) => vec![Value::String(s.clone())],
            (Cell::Real(x), _) => vec![real(*x)],
            (Cell::Bool(b), _) => vec![Value::Bool(*b)],
        }
    }

    fn flat_rows(&self) -> Vec<Vec<Value>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.columns)
                    .flat_map(|(cell, (_, kind))| Self::flat(cell, *kind))
                    .collect()
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
        w.write_record(self.header()).map_err(io)?;
        for row in self.flat_rows() {
            let fields: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            w.write_record(fields).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Invalid(format!("csv: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        let header = self.header();
        let rows: Vec<Value> = self
            .flat_rows()
            .into_iter()
            .map(|row| Value::Object(header.iter().cloned().zip(row).collect::<Map<_, _>>()))
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).map_err(|e| Error::Invalid(format!("json: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// `canonical` and explicit mixings, separated by `;`, deduplicated in order.
pub fn parse_grid(n: u32, spec: &str) -> Result<Vec<MixingDistribution>> {
    let mut out: Vec<MixingDistribution> = Vec::new();
    for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let batch = if item == "canonical" {
            canonical_grid(n)
        } else {
            vec![MixingDistribution::parse(n, item)?]
        };
        for m in batch {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Invalid("empty --grid".into()));
    }
    Ok(out)
}

/// `all` (every nontrivial partition) or explicit partitions separated by `;`.
pub fn parse_partitions(n: u32, spec: &str) -> Result<Vec<Partition>> {
    if spec.trim() == "all" {
        return Ok(partitions_of(n).into_iter().filter(|p| !p.is_trivial()).collect());
    }
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let p: Partition = s.parse()?;
            if p.n() != n {
                return Err(Error::Invalid(format!("{p} is not a partition of n = {n}")));
            }
            if p.is_trivial() {
                return Err(Error::TrivialRepresentation { n });
            }
            Ok(p)
        })
        .collect()
}

const NORMAL_COLUMNS: [(&str, bool); 7] = [
    ("a", true),
    ("variance_sq", true),
    ("moment_radicand", true),
    ("variance_term", false),
    ("moment_term", false),
    ("total", false),
    ("rank", false),
];

fn normal_cells(report: &SteinBoundReport, rank: usize) -> Vec<Cell> {
    vec![
        Cell::Exact(report.a.clone()),
        Cell::Exact(report.variance_sq.clone()),
        Cell::Exact(report.moment_radicand.clone()),
        Cell::Real(report.variance_term),
        Cell::Real(report.moment_term),
        Cell::Real(report.total),
        Cell::Int(rank as i64),
    ]
}

fn rejected_cells(len: usize) -> Vec<Cell> {
    vec![Cell::Empty; len]
}

fn normal_sweep(experiment: &str, params: &Params, q: Option<u32>) -> Result<Table> {
    let n = require(params.n, "n", experiment)?;
    let grid = parse_grid(n, params.grid.as_deref().unwrap_or("canonical"))?;
    let template = match q {
        None => SweepTemplate::BinomialHalf { n },
        Some(q) => {
            HammingModel::from_params(n, q, MixingDistribution::point_mass(n, 1)?)?;
            SweepTemplate::Hamming { n, q }
        }
    };
    let outcome = optimal_mixing_sweep(template, &grid)?;
    let mut cols = vec![("experiment", false), ("n", false), ("q", false), ("mixing", false)];
    cols.extend(NORMAL_COLUMNS);
    cols.push(("status", false));
    let mut t = Table::new(&cols);
    let q_cell = Cell::Int(q.unwrap_or(2) as i64);
    for row in &outcome.ranked {
        let mut cells = vec![
            Cell::Text(experiment.into()),
            Cell::Int(n as i64),
            q_cell.clone(),
            Cell::Text(row.mixing.to_string()),
        ];
        cells.extend(normal_cells(&row.report, row.rank));
        cells.push(Cell::Text("ok".into()));
        t.push(cells);
    }
    for (m, e) in &outcome.rejected {
        let mut cells = vec![
            Cell::Text(experiment.into()),
            Cell::Int(n as i64),
            q_cell.clone(),
            Cell::Text(m.to_string()),
        ];
        cells.extend(rejected_cells(NORMAL_COLUMNS.len()));
        cells.push(Cell::Text(e.to_string()));
        t.push(cells);
    }
    Ok(t)
}

fn normal_sn(params: &Params) -> Result<Table> {
    let n = require(params.n, "n", "normal-sn")?;
    let input = GroupBoundInput::symmetric_transpositions(n)?;
    let parts = parse_partitions(n, params.partitions.as_deref().unwrap_or("all"))?;
    let evaluated: Vec<(Partition, Result<SteinBoundReport>)> = parts
        .into_par_iter()
        .map(|p| {
            let r = stein_bound_group(&input, &p);
            (p, r)
        })
        .collect();
    let mut ok = Vec::new();
    let mut rejected = Vec::new();
    for (p, r) in evaluated {
        match r {
            Ok(r) => ok.push((p, r)),
            Err(e @ Error::DegenerateStep { .. }) => rejected.push((p, e)),
            Err(e) => return Err(e),
        }
    }
    ok.sort_by(|(pa, ra), (pb, rb)| ra.cmp_bound(rb).then_with(|| pb.cmp(pa)));
    let mut cols = vec![("experiment", false), ("n", false), ("partition", false)];
    cols.extend(NORMAL_COLUMNS);
    cols.extend([("t_three_cycle", true), ("t_two_two", true), ("status", false)]);
    let mut t = Table::new(&cols);
    for (i, (p, r)) in ok.iter().enumerate() {
        let mut cells = vec![Cell::Text("normal-sn".into()), Cell::Int(n as i64), Cell::Text(p.to_string())];
        cells.extend(normal_cells(r, i + 1));
        for k in [ConjugacyClassTag::ThreeCycle, ConjugacyClassTag::TwoTwo] {
            let key = DetailKey::Class(k);
            cells.push(Cell::OptExact(r.per_level_detail.get(&key).cloned()));
        }
        cells.push(Cell::Text("ok".into()));
        t.push(cells);
    }
    for (p, e) in rejected {
        let mut cells = vec![Cell::Text("normal-sn".into()), Cell::Int(n as i64), Cell::Text(p.to_string())];
        cells.extend(rejected_cells(NORMAL_COLUMNS.len() + 2));
        cells.push(Cell::Text(e.to_string()));
        t.push(cells);
    }
    Ok(t)
}

fn k_range(params: &Params, count: u32) -> Result<std::ops::RangeInclusive<u32>> {
    let lo = params.k.unwrap_or(1);
    let hi = params.k_max.unwrap_or(if params.k.is_some() { lo } else { count });
    if lo == 0 || hi < lo || hi > count {
        return Err(Error::OutOfRange {
            name: "k range".into(),
            value: format!("{lo}..={hi}"),
            expected: format!("1 <= k <= k-max <= {count}"),
        });
    }
    Ok(lo..=hi)
}

const POISSON_COLUMNS: [(&str, bool); 8] = [
    ("lambda", true),
    ("c", true),
    ("term_up", true),
    ("term_down", true),
    ("c_lambda", false),
    ("c_lambda_external", false),
    ("total", true),
    ("rank", false),
];

fn poisson_cells(r: &PoissonBoundReport, rank: usize) -> Vec<Cell> {
    vec![
        Cell::Exact(r.lambda.clone()),
        Cell::Exact(r.c.clone()),
        Cell::Exact(r.term_up_exact.clone()),
        Cell::Exact(r.term_down_exact.clone()),
        Cell::Real(r.c_lambda),
        Cell::Bool(r.c_lambda_external),
        Cell::Mixed(r.total, r.total_exact.clone()),
        Cell::Int(rank as i64),
    ]
}

fn rank_poisson(rows: &mut [(u32, PoissonBoundReport)]) {
    rows.sort_by(|(ka, a), (kb, b)| {
        a.total
            .total_cmp(&b.total)
            .then_with(|| (&a.term_up_exact + &a.term_down_exact).cmp(&(&b.term_up_exact + &b.term_down_exact)))
            .then(ka.cmp(kb))
    });
}

fn poisson_binomial(params: &Params) -> Result<Table> {
    let n = require(params.n, "n", "poisson-binomial")?;
    let ks = k_range(params, n)?;
    let mut rows: Vec<(u32, PoissonBoundReport)> = ks
        .into_par_iter()
        .map(|k| poisson_bound_binomial(n, k).map(|r| (k, r)))
        .collect::<Result<_>>()?;
    rank_poisson(&mut rows);
    let mut cols = vec![("experiment", false), ("n", false), ("k", false)];
    cols.extend(POISSON_COLUMNS);
    let mut t = Table::new(&cols);
    for (i, (k, r)) in rows.iter().enumerate() {
        let mut cells = vec![Cell::Text("poisson-binomial".into()), Cell::Int(n as i64), Cell::Int(*k as i64)];
        cells.extend(poisson_cells(r, i + 1));
        t.push(cells);
    }
    Ok(t)
}

fn poisson_negbin(params: &Params) -> Result<Table> {
    let r = require(params.r, "r", "poisson-negbin")?;
    let p_text = params
        .p
        .as_deref()
        .ok_or_else(|| Error::Invalid("poisson-negbin requires --p".into()))?;
    let p = parse_rational(p_text).ok_or_else(|| Error::Invalid(format!("bad --p '{p_text}'")))?;
    let ks = k_range(params, r)?;
    let evaluated: Vec<(u32, Result<PoissonBoundReport>)> = ks
        .into_par_iter()
        .map(|k| (k, poisson_bound_negbin(r, &p, k, params.c_lambda)))
        .collect();
    let mut ok = Vec::new();
    let mut uncovered = Vec::new();
    for (k, res) in evaluated {
        match res {
            Ok(rep) => ok.push((k, rep)),
            Err(e @ Error::UncoveredRegime { .. }) => uncovered.push((k, e)),
            Err(e) => return Err(e),
        }
    }
    rank_poisson(&mut ok);
    let mut cols = vec![("experiment", false), ("r", false), ("p", true), ("k", false), ("regime", false)];
    cols.extend(POISSON_COLUMNS);
    cols.push(("status", false));
    let mut t = Table::new(&cols);
    let head = |k: u32| {
        let reg = regime(r, &p, k).map_or(String::new(), |g| format!("{g:?}"));
        vec![
            Cell::Text("poisson-negbin".into()),
            Cell::Int(r as i64),
            Cell::Exact(p.clone()),
            Cell::Int(k as i64),
            Cell::Text(reg),
        ]
    };
    for (i, (k, rep)) in ok.iter().enumerate() {
        let mut cells = head(*k);
        cells.extend(poisson_cells(rep, i + 1));
        cells.push(Cell::Text("ok".into()));
        t.push(cells);
    }
    for (k, e) in uncovered {
        let mut cells = head(k);
        cells.extend(rejected_cells(POISSON_COLUMNS.len()));
        cells.push(Cell::Text(e.to_string()));
        t.push(cells);
    }
    Ok(t)
}

fn spectrum(params: &Params) -> Result<Table> {
    let n = require(params.n, "n", "spectrum")?;
    let mut t = Table::new(&[
        ("experiment", false),
        ("n", false),
        ("q", false),
        ("chain", false),
        ("key", false),
        ("eigenvalue", true),
        ("functional", true),
        ("moduli_condition_met", false),
    ]);
    let mut emit = |q: Cell, chain: String, report: crate::spectrum::SpectrumReport| {
        let moduli = report.moduli_condition_met.map_or(Cell::Empty, Cell::Bool);
        for (key, ev) in &report.eigenvalues {
            t.push(vec![
                Cell::Text("spectrum".into()),
                Cell::Int(n as i64),
                q.clone(),
                Cell::Text(chain.clone()),
                Cell::Text(match key {
                    DetailKey::Level(j) => j.to_string(),
                    DetailKey::Class(k) => k.to_string(),
                }),
                Cell::Exact(ev.clone()),
                Cell::OptExact(report.bound_functional.get(key).cloned()),
                moduli.clone(),
            ]);
        }
    };
    if let Some(spec) = params.partitions.as_deref() {
        for tau in parse_partitions(n, spec)? {
            let classes: Vec<ConjugacyClassTag> =
                ConjugacyClassTag::ALL.into_iter().filter(|k| k.min_n() <= n).collect();
            emit(Cell::Empty, tau.to_string(), group_spectrum(&tau, &classes)?);
        }
    } else {
        let q = params.q.unwrap_or(2);
        for m in parse_grid(n, params.grid.as_deref().unwrap_or("canonical"))? {
            let model = HammingModel::from_params(n, q, m.clone())?;
            emit(Cell::Int(q as i64), m.to_string(), hamming_spectrum(&model)?);
        }
    }
    Ok(t)
}

fn verify(params: &Params) -> Result<(Table, bool)> {
    let suite: Suite = params.suite.parse()?;
    let results = run_suite(suite, params.max_n, params.seed, params.samples)?;
    let mut t = Table::new(&[("check", false), ("passed", false), ("detail", false)]);
    let all = results.iter().all(|r| r.passed);
    for r in results {
        t.push(vec![Cell::Text(r.name), Cell::Bool(r.passed), Cell::Text(r.detail)]);
    }
    Ok((t, all))
}

/// Builds the table for one experiment. The flag reports whether every
/// verification check passed (always true for other experiments).
pub fn execute(experiment: &Experiment) -> Result<(Table, bool)> {
    let p = experiment.params();
    let table = match experiment {
        Experiment::NormalBinomial(_) => normal_sweep("normal-binomial", p, None)?,
        Experiment::NormalHamming(_) => {
            let q = require(p.q, "q", "normal-hamming")?;
            normal_sweep("normal-hamming", p, Some(q))?
        }
        Experiment::NormalSn(_) => normal_sn(p)?,
        Experiment::PoissonBinomial(_) => poisson_binomial(p)?,
        Experiment::PoissonNegbin(_) => poisson_negbin(p)?,
        Experiment::Spectrum(_) => spectrum(p)?,
        Experiment::Verify(_) => return verify(p),
    };
    Ok((table, true))
}

fn config_args(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("config line {} is not key = value", i + 1)))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim().to_string());
        if key == "experiment" {
            out.insert(0, value);
        } else {
            out.push(format!("--{key}"));
            out.push(value);
        }
    }
    Ok(out)
}

// Splices config entries in front of the command-line flags so the latter override.
fn expand_config(args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let mut args = args;
    let path = if let Some(v) = args[pos].strip_prefix("--config=") {
        let v = v.to_string();
        args.remove(pos);
        v
    } else {
        if pos + 1 >= args.len() {
            return Err(Error::Invalid("--config needs a path".into()));
        }
        args.remove(pos);
        args.remove(pos)
    };
    let mut from_file = config_args(Path::new(&path))?;
    let has_subcommand = args.len() > 1 && !args[1].starts_with('-');
    let file_subcommand = from_file.first().filter(|a| !a.starts_with('-')).cloned();
    if file_subcommand.is_some() {
        from_file.remove(0);
    }
    let mut out = vec![args[0].clone()];
    let rest: Vec<String> = if has_subcommand {
        out.push(args[1].clone());
        args[2..].to_vec()
    } else {
        match file_subcommand {
            Some(s) => out.push(s),
            None => return Err(Error::Invalid("no experiment given on the command line or in the config".into())),
        }
        args[1..].to_vec()
    };
    out.extend(from_file);
    out.extend(rest);
    Ok(out)
}

/// Exit status for an error: 1 for bad parameters, 2 for a failed internal check.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first), writes the table, and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args = match expand_config(args.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = execute(&cli.experiment).and_then(|(table, ok)| {
        let p = cli.experiment.params();
        let text = table.render(p.format)?;
        match &p.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?,
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Invalid(format!("cannot write output: {e}")))?,
        }
        Ok(ok)
    });
    match outcome {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("error: some verification checks failed");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
