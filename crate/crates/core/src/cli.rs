//! Command-line driver: spec parsing, reports and exit codes.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohom::{self, CohomologyTable, GroupDatum, OrbitSet, TableJson, Twist};
use crate::complex::{self, SweepReport};
use crate::finflag::ENUMERATION_BUDGET;
use crate::rootdata::{CartanComponent, Family};
use crate::semistable::{Verifier, VerifierKind};
use crate::{finflag, Error, Rational, Result};

pub const EXIT_OK: u8 = 0;
pub const EXIT_SPEC: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "perdom", version, about = "Cohomology of period domains over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Cohomology table, dimension polynomials and Euler characteristic.
    Cohomology(CommonArgs),
    /// Dimension polynomials of `i_P` and `v_P`.
    Dims(CommonArgs),
    /// Compare predicted point counts with brute force.
    Verify(CommonArgs),
    /// Reduced homology of the destabilizing complexes.
    Sweep(CommonArgs),
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Cohomology(a) | Command::Dims(a) | Command::Verify(a) | Command::Sweep(a) => a,
        }
    }
}

#[derive(clap::Args, Debug, Clone, PartialEq, Eq)]
pub struct CommonArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Comma-separated extension degrees.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3", value_parser = clap::value_parser!(u32).range(1..))]
    pub m: Vec<u32>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub fail_fast: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    /// 1-indexed images of the simple roots.
    pub perm: Vec<usize>,
    pub order: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub types: Vec<(String, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistSpec>,
    pub mu: Vec<i64>,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

fn spec_error(field: &str, reason: impl ToString) -> Error {
    Error::Spec { field: field.to_string(), reason: reason.to_string() }
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            let field = ["type", "twist", "mu", "q", "budget"]
                .into_iter()
                .find(|f| msg.contains(&format!("`{f}`")))
                .unwrap_or("spec");
            spec_error(field, msg)
        })
    }

    pub fn components(&self) -> Result<Vec<CartanComponent>> {
        if self.types.is_empty() {
            return Err(spec_error("type", "at least one simple factor is required"));
        }
        self.types
            .iter()
            .map(|(family, rank)| {
                let family: Family = family.parse().map_err(|e: Error| spec_error("type", e))?;
                let c = CartanComponent::new(family, *rank);
                c.validate().map_err(|e| spec_error("type", e))?;
                Ok(c)
            })
            .collect()
    }

    /// Builds the instance; every failure names the offending field.
    pub fn build(&self) -> Result<GroupDatum> {
        let components = self.components()?;
        if finflag::prime_power(self.q).is_none() {
            return Err(spec_error("q", format!("{} is not a prime power", self.q)));
        }
        let twist = match &self.twist {
            None => None,
            Some(t) => {
                if t.perm.iter().any(|&i| i == 0) {
                    return Err(spec_error("twist", "perm is 1-indexed"));
                }
                Some(Twist { perm: t.perm.iter().map(|i| i - 1).collect(), order: t.order })
            }
        };
        GroupDatum::new(&components, twist.as_ref(), &self.mu).map_err(|e| match e {
            Error::UnsupportedType { .. } | Error::BudgetExceeded { .. } => spec_error("type", e),
            Error::InvalidTwist(_) => spec_error("twist", e),
            Error::DimensionMismatch { .. } | Error::NotDominant => spec_error("mu", e),
            other => other,
        })
    }
}

/// `"a"` for integers, `"a/b"` otherwise.
pub fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub mu_input: Vec<String>,
    pub mu_dominant: Vec<String>,
    pub word: String,
    pub changed: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct DimRow {
    #[serde(rename = "I")]
    pub i: Vec<String>,
    pub dim_i: Vec<i64>,
    pub dim_v: Vec<i64>,
    pub dim_i_at_q: String,
    pub dim_v_at_q: String,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct EulerRow {
    #[serde(rename = "I")]
    pub i: Vec<String>,
    pub twist: usize,
    pub orbit_size: usize,
    pub coefficient: i64,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub m: u32,
    pub formula: String,
    pub brute_force: String,
    pub equal: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CellRow {
    pub m: u32,
    #[serde(rename = "I")]
    pub i: Vec<String>,
    pub equal: bool,
    pub y_size: String,
    pub predicted: String,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub m: u32,
    pub points: usize,
    pub unstable: usize,
    pub acyclic: bool,
    /// Offending points, as echelon bases of their chains.
    pub counterexamples: Vec<Vec<Vec<Vec<u32>>>>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct SpotCheck {
    pub seed: u64,
    pub sampled: usize,
    pub frobenius_equivariant: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub dims_guard: bool,
    pub counts: Vec<CountRow>,
    pub cells: Vec<CellRow>,
    pub sweeps: Vec<SweepRow>,
    pub spot_check: Option<SpotCheck>,
    pub passed: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub spec: GroupSpec,
    pub normalization: Normalization,
    pub d_prime: usize,
    pub e_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<DimRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<Vec<EulerRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn normalization(data: &GroupDatum) -> Normalization {
    let word = if data.dominance_word.is_empty() {
        "1".to_string()
    } else {
        data.dominance_word.iter().map(|i| format!("s{}", i + 1)).collect()
    };
    Normalization {
        mu_input: data.mu_input.coords.iter().map(fmt_rational).collect(),
        mu_dominant: data.mu.coords.iter().map(fmt_rational).collect(),
        word,
        changed: data.mu_input != data.mu,
    }
}

pub fn dims_block(data: &GroupDatum, q: u64) -> Vec<DimRow> {
    OrbitSet::all(data.d_prime())
        .map(|set| {
            let di = cohom::dim_induced(data, set);
            let dv = cohom::dim_v(data, set);
            DimRow {
                i: data.label_set(set),
                dim_i_at_q: di.eval(q as i128).to_string(),
                dim_v_at_q: dv.eval(q as i128).to_string(),
                dim_i: di.coeffs,
                dim_v: dv.coeffs,
            }
        })
        .collect()
}

fn euler_block(data: &GroupDatum, table: &CohomologyTable) -> Result<Vec<EulerRow>> {
    let chi = cohom::euler_characteristic(table);
    if chi != cohom::euler_formula(data) {
        return Err(Error::Invariant("Euler characteristic routes disagree".into()));
    }
    Ok(chi
        .terms
        .iter()
        .map(|(t, &c)| EulerRow { i: data.label_set(t.i), twist: t.twist, orbit_size: t.orbit_size, coefficient: c })
        .collect())
}

fn base_report(spec: &GroupSpec, data: &GroupDatum) -> Report {
    Report {
        spec: spec.clone(),
        normalization: normalization(data),
        d_prime: data.d_prime(),
        e_degree: data.muclass.e_degree,
        table: None,
        dims: None,
        euler: None,
        verification: None,
    }
}

pub fn cmd_cohomology(spec: &GroupSpec) -> Result<(Report, CohomologyTable, GroupDatum)> {
    let data = spec.build()?;
    let table = cohom::assemble_cohomology(&data);
    let mut report = base_report(spec, &data);
    report.table = Some(table.to_json(&data));
    report.dims = Some(dims_block(&data, spec.q));
    report.euler = Some(euler_block(&data, &table)?);
    Ok((report, table, data))
}

pub fn cmd_dims(spec: &GroupSpec, budget: u128) -> Result<(Report, GroupDatum)> {
    let data = spec.build()?;
    let mut report = base_report(spec, &data);
    report.dims = Some(dims_block(&data, spec.q));
    match Verifier::new(&data, spec.q, budget) {
        Ok(v) => v.dims_guard()?,
        Err(Error::UnsupportedVerifier(_)) => {}
        Err(e) => return Err(e),
    }
    Ok((report, data))
}

/// Largest `m' < m` the verifier can enumerate within `budget`.
fn largest_feasible(v: &Verifier, m: u32, budget: u128) -> Option<u32> {
    (1..m).rev().find(|&k| v.estimate_points(k).is_some_and(|c| c <= budget))
}

fn budget_guard(v: &Verifier, m: u32, budget: u128) -> Result<()> {
    match v.estimate_points(m) {
        Some(c) if c <= budget => Ok(()),
        estimate => Err(Error::BudgetExceeded {
            what: match largest_feasible(v, m, budget) {
                Some(k) => format!("points at m={m} (largest feasible m is {k})"),
                None => format!("points at m={m} (no m is feasible)"),
            },
            needed: estimate.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

fn sweep_row(v: &Verifier, report: &SweepReport) -> Result<SweepRow> {
    let set = if report.violations.is_empty() { None } else { Some(v.points(report.m)?) };
    let counterexamples = report
        .violations
        .iter()
        .map(|&i| set.as_ref().unwrap().points[i].chain.iter().map(|s| s.rows().to_vec()).collect())
        .collect();
    Ok(SweepRow {
        m: report.m,
        points: report.points,
        unstable: report.unstable,
        acyclic: report.acyclic(),
        counterexamples,
    })
}

pub fn cmd_verify(spec: &GroupSpec, args: &CommonArgs, budget: u128) -> Result<Report> {
    let (mut report, table, data) = cmd_cohomology(spec)?;
    let v = Verifier::new(&data, spec.q, budget)?;
    v.dims_guard()?;
    let mut verification = Verification {
        dims_guard: true,
        counts: Vec::new(),
        cells: Vec::new(),
        sweeps: Vec::new(),
        spot_check: None,
        passed: true,
    };
    for &m in &args.m {
        budget_guard(&v, m, budget)?;
        let formula = cohom::lefschetz_series(&table, &data, spec.q, m)?;
        let brute = v.brute_force_ss_count(m)? as i128;
        verification.counts.push(CountRow {
            m,
            formula: formula.to_string(),
            brute_force: brute.to_string(),
            equal: formula == brute,
        });
        if v.kind == VerifierKind::SplitSl {
            let set = v.points(m)?;
            for subset in OrbitSet::all(data.d_prime()) {
                let check = v.bruhat_cells_check(&set, subset)?;
                let qm = (spec.q as u128).pow(m);
                let predicted: u128 = check.cells.iter().map(|(_, l, _)| qm.pow(*l as u32)).sum();
                verification.cells.push(CellRow {
                    m,
                    i: data.label_set(subset),
                    equal: check.equal && check.y_size == predicted,
                    y_size: check.y_size.to_string(),
                    predicted: predicted.to_string(),
                });
            }
        }
        let sweep = complex::acyclicity_sweep(&v, m, args.fail_fast)?;
        verification.sweeps.push(sweep_row(&v, &sweep)?);
        let failed = verification.counts.iter().any(|c| !c.equal)
            || verification.cells.iter().any(|c| !c.equal)
            || verification.sweeps.iter().any(|s| !s.acyclic);
        if failed && args.fail_fast {
            break;
        }
    }
    if let Some(&m) = args.m.first() {
        let set = v.points(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let sample: Vec<_> = set.points.choose_multiple(&mut rng, 32).collect();
        let equivariant = sample.iter().all(|x| {
            v.is_semistable(&set.tower, &set.tests, x).semistable
                == v.is_semistable(&set.tower, &set.tests, &v.frobenius(&set.tower, x)).semistable
        });
        verification.spot_check = Some(SpotCheck { seed: args.seed, sampled: sample.len(), frobenius_equivariant: equivariant });
    }
    verification.passed = verification.counts.iter().all(|c| c.equal)
        && verification.cells.iter().all(|c| c.equal)
        && verification.sweeps.iter().all(|s| s.acyclic)
        && verification.spot_check.as_ref().map_or(true, |s| s.frobenius_equivariant);
    report.verification = Some(verification);
    Ok(report)
}

pub fn cmd_sweep(spec: &GroupSpec, args: &CommonArgs, budget: u128) -> Result<Report> {
    let data = spec.build()?;
    let v = Verifier::new(&data, spec.q, budget)?;
    let mut report = base_report(spec, &data);
    let mut sweeps = Vec::new();
    for &m in &args.m {
        budget_guard(&v, m, budget)?;
        let sweep = complex::acyclicity_sweep(&v, m, args.fail_fast)?;
        let row = sweep_row(&v, &sweep)?;
        let stop = !row.acyclic && args.fail_fast;
        sweeps.push(row);
        if stop {
            break;
        }
    }
    let passed = sweeps.iter().all(|s| s.acyclic);
    report.verification = Some(Verification {
        dims_guard: false,
        counts: Vec::new(),
        cells: Vec::new(),
        sweeps,
        spot_check: None,
        passed,
    });
    Ok(report)
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn render_table(report: &Report, table: Option<(&CohomologyTable, &GroupDatum)>) -> String {
    let mut out = String::new();
    let n = &report.normalization;
    out.push_str(&format!(
        "mu = ({}) -> dominant ({}) via {}\nd' = {}, [E:k] = {}\n",
        n.mu_input.join(", "),
        n.mu_dominant.join(", "),
        n.word,
        report.d_prime,
        report.e_degree
    ));
    if let Some((t, data)) = table {
        out.push_str(&t.render(data));
    }
    if let Some(dims) = &report.dims {
        for row in dims {
            out.push_str(&format!(
                "I={{{}}}  dim i = {} ({})  dim v = {} ({})\n",
                row.i.join(","),
                cohom::DimPoly { coeffs: row.dim_i.clone() },
                row.dim_i_at_q,
                cohom::DimPoly { coeffs: row.dim_v.clone() },
                row.dim_v_at_q
            ));
        }
    }
    if let Some(v) = &report.verification {
        for c in &v.counts {
            out.push_str(&format!("m={}  formula={}  brute_force={}  {}\n", c.m, c.formula, c.brute_force, verdict(c.equal)));
        }
        for c in &v.cells {
            out.push_str(&format!("m={}  cells I={{{}}}  |Y_I|={}  {}\n", c.m, c.i.join(","), c.y_size, verdict(c.equal)));
        }
        for s in &v.sweeps {
            out.push_str(&format!("m={}  sweep unstable={}/{}  {}\n", s.m, s.unstable, s.points, verdict(s.acyclic)));
        }
    }
    out
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn render_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(v) = &report.verification {
        w.write_record(["m", "formula", "brute_force", "equal"]).unwrap();
        for c in &v.counts {
            w.write_record([c.m.to_string(), c.formula.clone(), c.brute_force.clone(), c.equal.to_string()]).unwrap();
        }
    } else if let Some(t) = &report.table {
        w.write_record(["degree", "twist", "orbit_size", "I", "dim_v"]).unwrap();
        for s in &t.summands {
            w.write_record([
                s.degree.to_string(),
                s.twist.to_string(),
                s.orbit_size.to_string(),
                s.i.join(";"),
                s.dim_v.to_string(),
            ])
            .unwrap();
        }
    } else if let Some(dims) = &report.dims {
        w.write_record(["I", "dim_i", "dim_v"]).unwrap();
        for row in dims {
            w.write_record([row.i.join(";"), row.dim_i_at_q.clone(), row.dim_v_at_q.clone()]).unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::InvalidField(_) => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_MISMATCH,
        _ => EXIT_SPEC,
    }
}

fn fail(e: Error) -> Outcome {
    Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") }
}

pub fn run(cli: &Cli) -> Outcome {
    let args = cli.command.args();
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => return fail(spec_error("spec", format!("cannot read {}: {e}", args.spec.display()))),
    };
    let spec = match GroupSpec::parse(&text) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let budget = args.budget.or(spec.budget).map_or(ENUMERATION_BUDGET, u128::from);
    let result = match cli.command {
        Command::Cohomology(_) => cmd_cohomology(&spec).map(|(r, t, d)| (r, Some((t, d)))),
        Command::Dims(_) => cmd_dims(&spec, budget).map(|(r, _)| (r, None)),
        Command::Verify(_) => cmd_verify(&spec, args, budget).map(|r| (r, None)),
        Command::Sweep(_) => cmd_sweep(&spec, args, budget).map(|r| (r, None)),
    };
    let (report, table) = match result {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let stdout = match args.format {
        Format::Json => to_json(&report),
        Format::Table => render_table(&report, table.as_ref().map(|(t, d)| (t, d))),
        Format::Csv => render_csv(&report),
    };
    let passed = report.verification.as_ref().map_or(true, |v| v.passed);
    Outcome {
        code: if passed { EXIT_OK } else { EXIT_MISMATCH },
        stdout,
        stderr: String::new(),
    }
}
