//! `charcodes`: build codes from characteristic functions, compute their
//! weight distributions two ways and decide minimality.
//!
//! Exit codes: 0 on success, 1 on bad input or an exhausted budget, 2 when
//! two independent computations disagree.

mod input;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use charcodes::catalog::{reproduce, Reproduction, EXAMPLE_IDS};
use charcodes::code::{Budget, Method, Variant};
use charcodes::constructions::{
    mm_support_set, predicted_weight_table, subspace_union_set, table_params_for_family, weight_range_set,
    PredictedTable, SubsetD, SubspaceFamily, TableParams,
};
use charcodes::cyclotomic::CycInt;
use charcodes::pfunc::{PFunction, WalshAlgorithm};
use charcodes::report::{analyze, analyze_function, Analysis, Checks, CodeKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use input::Input;

const BUDGET_ENV: &str = "CHARCODES_BUDGET";
const PAIR_BUDGET_ENV: &str = "CHARCODES_PAIR_BUDGET";

#[derive(Parser)]
#[command(name = "charcodes", version, about = "Minimal linear codes from characteristic functions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Most codewords to enumerate [env: CHARCODES_BUDGET].
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Most pairwise work, codeword pairs times length [env: CHARCODES_PAIR_BUDGET].
    #[arg(long, global = true)]
    pair_budget: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Weight distribution, minimality and ratio for the codes of a set or function.
    Analyze(AnalyzeArgs),
    /// Rebuild a worked example and compare it with its published values.
    Reproduce {
        /// One of the example ids, or `all`.
        id: String,
    },
    /// Print a closed-form weight table.
    Table(TableArgs),
    /// Walsh spectrum of a function or of a set's indicator.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Algorithm::Fast)]
        algorithm: Algorithm,
    },
    /// The complement of a set, with the spectral complement identity checked.
    Complement {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(Args)]
struct Source {
    /// `p,m` for F_p^m or `p,m,modulus` for F_{p^m}, e.g. `2,5,x^5+x^2+1`.
    #[arg(long)]
    field: Option<String>,
    /// Set as inline JSON or a file: `{"field","elements"}`, `{"field","subspaces"}` or an element array.
    #[arg(long)]
    set: Option<String>,
    /// Function as `{"domain","values"}` JSON or a truth-table file.
    #[arg(long)]
    function: Option<String>,
    /// Named construction: d12, weights=.., weight-range=K, mm, spread=S, pair=a,b,...
    #[arg(long)]
    construct: Option<String>,
}

impl Source {
    fn resolve(&self) -> Result<Input, Failure> {
        input::resolve(self.field.as_deref(), self.set.as_deref(), self.function.as_deref(), self.construct.as_deref())
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Function code `C_f` or defining-set code `C_D`.
    #[arg(long, value_enum, default_value_t = KindArg::Function)]
    code: KindArg,
    #[arg(long, value_enum, default_value_t = VariantArg::Both)]
    variant: VariantArg,
    /// Comma list of oracle, sumcheck, walsh, ds, or `all`.
    #[arg(long, default_value = "all")]
    checks: String,
}

#[derive(Args)]
struct TableArgs {
    #[arg(value_enum)]
    kind: TableKind,
    /// `key=value` pairs: m=7; m=5 k=2; p=2 m=6 dims=3,3; p=2 m=5 dims=2,2,3 tij=1,0,0.
    params: Vec<String>,
    #[arg(long, value_enum, default_value_t = VariantArg::Direct)]
    variant: VariantArg,
    /// Subspace family for `family`, as for `--set`.
    #[arg(long)]
    set: Option<String>,
    /// Field for `family`, as for `analyze`.
    #[arg(long)]
    field: Option<String>,
    /// Also enumerate the code and compare (mm, weight-range, family).
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Mm,
    WeightRange,
    Union,
    Triple,
    /// Infer union or triple parameters from `--set` subspaces.
    Family,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Function,
    DefiningSet,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Direct,
    Complement,
    Both,
}

impl VariantArg {
    fn variants(self) -> Vec<Variant> {
        match self {
            VariantArg::Direct => vec![Variant::Direct],
            VariantArg::Complement => vec![Variant::Complement],
            VariantArg::Both => vec![Variant::Direct, Variant::Complement],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Fast,
    Naive,
}

/// Bad input or an exhausted budget; cross-check disagreements are reported
/// alongside the output instead.
#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure(msg.into())
    }
}

impl From<charcodes::error::Error> for Failure {
    fn from(e: charcodes::error::Error) -> Self {
        Failure(e.to_string())
    }
}

fn budget_value(flag: Option<u128>, env: &str, default: u128) -> Result<u128, Failure> {
    let value = match flag {
        Some(v) => v,
        None => match std::env::var(env) {
            Ok(text) => text.trim().parse().map_err(|_| Failure::input(format!("{env} must be a positive integer")))?,
            Err(_) => default,
        },
    };
    if value == 0 {
        return Err(Failure::input("budgets must be positive"));
    }
    Ok(value)
}

/// Flags win over the environment, which wins over the defaults.
fn budget(cli: &Cli) -> Result<Budget, Failure> {
    let d = Budget::default();
    Ok(Budget {
        codewords: budget_value(cli.budget, BUDGET_ENV, d.codewords)?,
        pair_work: budget_value(cli.pair_budget, PAIR_BUDGET_ENV, d.pair_work)?,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Direct => "direct",
        Variant::Complement => "complement",
    }
}

fn code_label(kind: CodeKind, v: Variant) -> &'static str {
    match (kind, v) {
        (CodeKind::Function, Variant::Direct) => "C_{f_D}",
        (CodeKind::Function, Variant::Complement) => "C_{f_Dbar}",
        (CodeKind::DefiningSet, Variant::Direct) => "C_D",
        (CodeKind::DefiningSet, Variant::Complement) => "C_Dbar",
    }
}

/// The snake_case name used in JSON output.
fn method_name(m: Method) -> String {
    serde_json::to_value(m).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn plain_analysis(a: &Analysis) -> String {
    let r = &a.report;
    let mut out = format!("{} ({}): {}\n", code_label(a.kind, a.variant), variant_name(a.variant), r.parameters);
    out += &format!("  enumerator: {}\n", r.enumerator);
    let agreement = r.routes_agree.map_or("n/a".to_string(), |b| b.to_string());
    out += &format!("  agreement: {agreement}\n");
    match r.minimal() {
        Some(m) => {
            let methods: Vec<String> = r.verdicts.iter().map(|v| method_name(v.method)).collect();
            out += &format!("  minimal: {m} ({})\n", methods.join(", "));
        }
        None => out += "  minimal: not decided\n",
    }
    if !r.verdicts_agree {
        out += "  criteria disagree\n";
    }
    for v in &r.verdicts {
        if let Some(w) = v.witness {
            out += &format!("  witness ({}): messages {} and {}\n", method_name(v.method), w.a, w.b);
        }
        if v.settled_by_bound {
            out += "  settled by the sufficient Walsh bound\n";
        }
    }
    if !r.witnesses_replay {
        out += "  witness replay failed\n";
    }
    if let (Some(ratio), Some(ok)) = (&r.ab_ratio, r.ab_sufficient) {
        out += &format!("  wmin/wmax: {ratio} (sufficient: {ok})\n");
    }
    out
}

fn run_analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<(String, Option<String>), Failure> {
    let checks = Checks::parse(&args.checks)?;
    let budget = budget(cli)?;
    let kind = match args.code {
        KindArg::Function => CodeKind::Function,
        KindArg::DefiningSet => CodeKind::DefiningSet,
    };
    let analyses = match args.source.resolve()? {
        Input::Set(d) => args
            .variant
            .variants()
            .into_iter()
            .map(|v| analyze(&d, kind, v, &checks, &budget))
            .collect::<Result<Vec<_>, _>>()?,
        Input::Function(f) => {
            if kind == CodeKind::DefiningSet {
                return Err(Failure::input("defining-set codes need --set or --construct"));
            }
            let variants = match args.variant {
                VariantArg::Both if !f.is_indicator() => vec![Variant::Direct],
                other => other.variants(),
            };
            variants
                .into_iter()
                .map(|v| Ok(Analysis { kind, variant: v, report: analyze_function(&f, v, &checks, &budget)? }))
                .collect::<Result<Vec<_>, Failure>>()?
        }
    };
    let text = match cli.format {
        Format::Json => json(&analyses),
        Format::Csv => csv_rows(
            &["code", "variant", "weight", "frequency"],
            analyses.iter().flat_map(|a| {
                let kind = match a.kind {
                    CodeKind::Function => "function",
                    CodeKind::DefiningSet => "defining-set",
                };
                a.report.distribution.counts.iter().map(move |(w, c)| {
                    vec![kind.to_string(), variant_name(a.variant).to_string(), w.to_string(), c.to_string()]
                })
            }),
        ),
        Format::Plain => analyses.iter().map(plain_analysis).collect(),
    };
    let bad: Vec<String> = analyses
        .iter()
        .filter(|a| !a.report.consistent())
        .map(|a| format!("cross-checks disagree for the {} code", variant_name(a.variant)))
        .collect();
    Ok((text, (!bad.is_empty()).then(|| bad.join("; "))))
}

fn run_reproduce(cli: &Cli, id: &str) -> Result<(String, Option<String>), Failure> {
    let budget = budget(cli)?;
    let ids: Vec<&str> = if id == "all" { EXAMPLE_IDS.to_vec() } else { vec![id] };
    let runs = ids.iter().map(|id| reproduce(id, &budget)).collect::<Result<Vec<Reproduction>, _>>()?;
    let text = match cli.format {
        Format::Json => json(&runs),
        Format::Csv => csv_rows(
            &["id", "check", "expected", "actual", "pass"],
            runs.iter().flat_map(|r| {
                r.checks.iter().map(|c| {
                    vec![r.id.clone(), c.name.clone(), c.expected.clone(), c.actual.clone(), c.pass.to_string()]
                })
            }),
        ),
        Format::Plain => {
            let mut out = String::new();
            for r in &runs {
                out += &format!("{}: {}\n  {}\n", r.id, if r.passed { "pass" } else { "FAIL" }, r.description);
                for c in &r.checks {
                    if c.pass {
                        out += &format!("  ok   {}: {}\n", c.name, c.actual);
                    } else {
                        out +=
                            &format!("  FAIL {}\n    - expected {}\n    + got      {}\n", c.name, c.expected, c.actual);
                    }
                }
            }
            out
        }
    };
    let failed: Vec<&str> = runs.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
    Ok((text, (!failed.is_empty()).then(|| format!("reproduction failed: {}", failed.join(", ")))))
}

fn table_params(kind: TableKind, params: &[String]) -> Result<TableParams, Failure> {
    let mut kv = BTreeMap::new();
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| Failure::input(format!("expected key=value, got {p:?}")))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let list = |key: &str| -> Result<Vec<usize>, Failure> {
        let v = kv.get(key).ok_or_else(|| Failure::input(format!("missing {key}=")))?;
        v.split(',').map(|t| t.trim().parse().map_err(|_| Failure::input(format!("bad {key}={v}")))).collect()
    };
    let one = |key: &str| -> Result<usize, Failure> {
        match list(key)?.as_slice() {
            [x] => Ok(*x),
            _ => Err(Failure::input(format!("{key} takes one value"))),
        }
    };
    let three = |key: &str| -> Result<[usize; 3], Failure> {
        list(key)?.try_into().map_err(|_| Failure::input(format!("{key} takes three values")))
    };
    let allowed: &[&str] = match kind {
        TableKind::Mm => &["m"],
        TableKind::WeightRange => &["m", "k"],
        TableKind::Union => &["p", "m", "dims"],
        TableKind::Triple => &["p", "m", "dims", "tij"],
        TableKind::Family => &[],
    };
    if let Some(extra) = kv.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Failure::input(format!("unexpected parameter {extra:?}")));
    }
    Ok(match kind {
        TableKind::Mm => TableParams::Mm { m: one("m")? },
        TableKind::WeightRange => TableParams::WeightRange { m: one("m")?, k: one("k")? },
        TableKind::Union => TableParams::Union { p: one("p")? as u32, m: one("m")?, dims: list("dims")? },
        TableKind::Triple => {
            TableParams::Triple { p: one("p")? as u32, m: one("m")?, dims: three("dims")?, tij: three("tij")? }
        }
        TableKind::Family => unreachable!("family parameters come from --set"),
    })
}

fn family_from(args: &TableArgs) -> Result<SubspaceFamily, Failure> {
    #[derive(Deserialize)]
    struct FamilyDoc {
        #[serde(default)]
        field: Option<charcodes::pfunc::Domain>,
        subspaces: Vec<charcodes::pfunc::SubspaceRepr>,
    }
    let arg = args.set.as_deref().ok_or_else(|| Failure::input("family needs --set with \"subspaces\""))?;
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::input(format!("cannot read {arg}: {e}")))?
    };
    let doc: FamilyDoc = serde_json::from_str(&text).map_err(|e| Failure::input(format!("invalid JSON: {e}")))?;
    let flag = args.field.as_deref().map(input::parse_field).transpose()?;
    let domain = doc.field.or(flag).ok_or_else(|| Failure::input("no field given"))?;
    let spaces = doc.subspaces.iter().map(|s| domain.subspace_from_repr(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(SubspaceFamily::new(domain, spaces)?)
}

#[derive(Serialize, Deserialize)]
struct TableOutput {
    variant: Variant,
    params: TableParams,
    table: PredictedTable,
    enumerator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn run_table(cli: &Cli, args: &TableArgs) -> Result<(String, Option<String>), Failure> {
    let variant = match args.variant {
        VariantArg::Both => return Err(Failure::input("table takes --variant direct or complement")),
        v => v.variants()[0],
    };
    let (params, set): (TableParams, Option<SubsetD>) = match args.kind {
        TableKind::Family => {
            if !args.params.is_empty() {
                return Err(Failure::input("family takes no key=value parameters"));
            }
            let fam = family_from(args)?;
            (table_params_for_family(&fam)?, Some(subspace_union_set(&fam)?))
        }
        kind => {
            let params = table_params(kind, &args.params)?;
            let set = match (&params, args.verify) {
                (TableParams::Mm { m }, true) => Some(mm_support_set(*m)?),
                (TableParams::WeightRange { m, k }, true) => Some(weight_range_set(*m, *k)?),
                (_, true) => return Err(Failure::input("--verify needs a concrete set; use `table family --set`")),
                _ => None,
            };
            (params, set)
        }
    };
    let table = predicted_weight_table(&params, variant)?;
    let predicted = table.to_distribution();
    let verified = match (&set, args.verify) {
        (Some(d), true) => {
            let a = analyze(d, CodeKind::Function, variant, &Checks::none(), &budget(cli)?)?;
            Some(a.report.distribution == predicted)
        }
        _ => None,
    };
    let out = TableOutput { variant, params, enumerator: predicted.enumerator(), table, verified };
    let text = match cli.format {
        Format::Json => json(&out),
        Format::Csv => out.table.to_csv(),
        Format::Plain => {
            let mut s =
                format!("{} ({}): [{},{}]\n", out.table.source, variant_name(variant), out.table.n, out.table.k);
            s += "  weight  frequency\n";
            for r in &out.table.rows {
                s += &format!("  {:>6}  {:>9}\n", r.weight, r.frequency);
            }
            s += &format!("  enumerator: {}\n", out.enumerator);
            if let Some(v) = verified {
                s += &format!("  verified by enumeration: {v}\n");
            }
            s
        }
    };
    let bad = (verified == Some(false)).then(|| "closed-form table disagrees with enumeration".to_string());
    Ok((text, bad))
}

#[derive(Serialize, Deserialize)]
struct SpectrumEntry {
    w: usize,
    value: String,
    coeffs: Vec<i64>,
}

fn function_of(input: Input) -> PFunction {
    match input {
        Input::Set(d) => d.characteristic_function(),
        Input::Function(f) => f,
    }
}

fn run_spectrum(cli: &Cli, source: &Source, algorithm: Algorithm) -> Result<(String, Option<String>), Failure> {
    let f = function_of(source.resolve()?);
    let algorithm = match algorithm {
        Algorithm::Fast => WalshAlgorithm::Fast,
        Algorithm::Naive => WalshAlgorithm::Naive,
    };
    let spec = f.walsh_spectrum(algorithm);
    let entries: Vec<SpectrumEntry> = (0..spec.len())
        .map(|w| SpectrumEntry { w, value: spec.value(w).to_string(), coeffs: spec.coeffs(w).to_vec() })
        .collect();
    let text = match cli.format {
        Format::Json => json(&entries),
        Format::Csv => csv_rows(&["w", "value"], entries.iter().map(|e| vec![e.w.to_string(), e.value.clone()])),
        Format::Plain => entries.iter().map(|e| format!("{:>6}  {}\n", e.w, e.value)).collect(),
    };
    // Parseval: the squared magnitudes sum to p^{2m}.
    let q = f.domain().size() as i64;
    let bad = (!spec.parseval_sum().equals_rational(q * q)).then(|| "Parseval identity fails".to_string());
    Ok((text, bad))
}

#[derive(Serialize, Deserialize)]
struct ComplementOutput {
    set: SubsetD,
    size: usize,
    identity_holds: bool,
}

/// `f̂_D(w) + f̂_{D̄}(w)` is `(q-1)ζ + q + 1` at 0 and `1 - ζ` elsewhere.
fn complement_identity(d: &SubsetD, c: &SubsetD) -> Result<bool, Failure> {
    let p = d.domain().p();
    let q = d.domain().size() as i64;
    let a = d.characteristic_function().walsh_spectrum(WalshAlgorithm::Fast);
    let b = c.characteristic_function().walsh_spectrum(WalshAlgorithm::Fast);
    let zeta = CycInt::zeta(p);
    let at_zero = zeta.scale(q - 1).checked_add(&CycInt::from_int(p, q + 1))?;
    let elsewhere = CycInt::one(p).checked_sub(&zeta)?;
    for w in 0..a.len() {
        let expected = if w == 0 { &at_zero } else { &elsewhere };
        if &a.value(w).checked_add(&b.value(w))? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

fn run_complement(cli: &Cli, source: &Source) -> Result<(String, Option<String>), Failure> {
    let d = match source.resolve()? {
        Input::Set(d) => d,
        Input::Function(_) => return Err(Failure::input("complement needs --set or --construct")),
    };
    let c = d.complement();
    let identity_holds = complement_identity(&d, &c)?;
    let out = ComplementOutput { size: c.len(), set: c, identity_holds };
    let text = match cli.format {
        Format::Json => json(&out),
        Format::Csv => csv_rows(&["index"], out.set.elements().iter().map(|x| vec![x.to_string()])),
        Format::Plain => {
            let idx: Vec<String> = out.set.elements().iter().map(|x| x.to_string()).collect();
            format!(
                "complement: {} elements\n  indices: {}\n  identity holds: {identity_holds}\n",
                out.size,
                idx.join(" ")
            )
        }
    };
    Ok((text, (!identity_holds).then(|| "complement identity fails".to_string())))
}

fn run(cli: &Cli) -> Result<(String, Option<String>), Failure> {
    match &cli.command {
        Command::Analyze(args) => run_analyze(cli, args),
        Command::Reproduce { id } => run_reproduce(cli, id),
        Command::Table(args) => run_table(cli, args),
        Command::Spectrum { source, algorithm } => run_spectrum(cli, source, *algorithm),
        Command::Complement { source } => run_complement(cli, source),
    }
}

/// 0 on success, 1 on bad input, 2 when cross-checks disagree.
fn exit_code(outcome: &Result<(String, Option<String>), Failure>) -> u8 {
    match outcome {
        Ok((_, None)) => 0,
        Ok((_, Some(_))) => 2,
        Err(_) => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = run(&cli);
    let code = exit_code(&outcome);
    match outcome {
        Ok((text, disagreement)) => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if let Some(msg) = disagreement {
                eprintln!("error: {msg}");
            }
        }
        Err(Failure(msg)) => eprintln!("error: {msg}"),
    }
    ExitCode::from(code)
}
