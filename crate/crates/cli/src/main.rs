//! Batch command-line surface over the exact invariant-factor library.
//!
//! Every run is deterministic: identical arguments produce byte-identical
//! output. All integers are emitted as decimal strings. Exit status 0 covers
//! both success and recorded findings (e.g. a conjectural-regime mismatch);
//! 2 means invalid arguments; 3 means an internal cross-check failed.

mod output;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use output::{emit, join_factors, matrix_csv, plain_matrix_json, Format, Rendered};
use shapoform::bases::{
    big_g_basis, big_g_property_checks, g_basis_property_checks, m_basis_from,
    m_basis_property_checks, GBasis,
};
use shapoform::divisors::{
    check_conjecture, hecke_block_invariants, predicted_prime_power,
    predicted_shapovalov_standard, InvariantMultiset,
};
use shapoform::forms::{cartan, gram_power, gram_s_form, shapovalov_gram, CartanFamily};
use shapoform::matrix::Mat;
use shapoform::partitions::{enumerate_partitions, Prime};
use shapoform::snf::smith_normal_form;
use shapoform::symfunc::{transition_matrix, Basis, SymPoly};

#[derive(Parser)]
#[command(
    name = "shapoform",
    version,
    about = "Exact invariant factors of s-form and Shapovalov-form Gram matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Output path; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Gram matrix X_s of the s-form at one degree.
    Gram {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Smith normal form of an integer matrix (JSON via --input or stdin).
    Snf {
        /// File with {"entries": [["2","0"],["1","4"]], ...}; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Also emit unimodular transforms U, V with U·A·V diagonal.
        #[arg(long)]
        transforms: bool,
    },
    /// Computed vs predicted invariant factors of the p^r-form.
    SformInvariants {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Shapovalov Gram SNF next to the product-formula prediction.
    Shapovalov {
        #[arg(long, value_enum, ignore_case = true)]
        family: FamilyArg,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Per-degree block invariants at an l-th root of unity.
    HeckeBlocks {
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
    /// Transition matrix between the p/h/m bases.
    Transition {
        #[arg(long, value_enum)]
        from: FromBasis,
        #[arg(long, value_enum)]
        to: ToBasis,
        #[arg(long)]
        degree: u32,
    },
    /// Basis-family expansions with structural property checks.
    Bases {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
        #[arg(long, value_enum)]
        family: FamilyKind,
    },
    /// Conjecture sweep: computed vs predicted for every degree ≤ dmax.
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "A")]
    A,
    #[value(name = "D")]
    D,
    #[value(name = "E")]
    E,
}

impl FamilyArg {
    fn to_family(self) -> CartanFamily {
        match self {
            FamilyArg::A => CartanFamily::A,
            FamilyArg::D => CartanFamily::D,
            FamilyArg::E => CartanFamily::E,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FromBasis {
    P,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum ToBasis {
    M,
    P,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// The level bases g (one block per level i ≤ r).
    #[value(name = "g")]
    LevelG,
    /// The multiplicative family G (r = 1 only).
    #[value(name = "G")]
    BigG,
    /// The dual family M in the monomial basis.
    #[value(name = "M")]
    DualM,
}

#[derive(Debug)]
pub enum CliError {
    Core(shapoform::Error),
    Usage(String),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl From<shapoform::Error> for CliError {
    fn from(e: shapoform::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) if e.is_internal() => "internal-cross-check",
            CliError::Core(_) => "invalid-arguments",
            CliError::Usage(_) => "invalid-arguments",
            CliError::Io(_) => "io",
            CliError::Json(_) => "invalid-input",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
            CliError::Json(e) => e.to_string(),
        }
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let _ = e.print();
            emit_error_record("invalid-arguments", &e.to_string());
            return 2;
        }
    };
    match run(&cli) {
        Ok(rendered) => match emit(&rendered, cli.format, cli.output.as_deref()) {
            Ok(()) => 0,
            Err(e) => {
                emit_error_record(e.kind(), &e.message());
                e.exit_code()
            }
        },
        Err(e) => {
            emit_error_record(e.kind(), &e.message());
            e.exit_code()
        }
    }
}

fn emit_error_record(kind: &str, message: &str) {
    let record = json!({"error": {"kind": kind, "message": message}});
    eprintln!("{record}");
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    match &cli.command {
        Command::Gram { s, degree } => run_gram(*s, *degree),
        Command::Snf { input, transforms } => run_snf(input.as_deref(), *transforms),
        Command::SformInvariants { p, r, degree } => run_sform_invariants(*p, *r, *degree),
        Command::Shapovalov {
            family,
            rank,
            degree,
        } => run_shapovalov(family.to_family(), *rank, *degree),
        Command::HeckeBlocks { l, dmax } => run_hecke_blocks(*l, *dmax),
        Command::Transition { from, to, degree } => run_transition(*from, *to, *degree),
        Command::Bases { p, r, dmax, family } => run_bases(*p, *r, *dmax, *family),
        Command::Verify { p, r, dmax } => run_verify(*p, *r, *dmax),
    }
}

fn require_positive(value: u32, name: &str) -> Result<(), CliError> {
    if value == 0 {
        return Err(CliError::Usage(format!("--{name} must be positive")));
    }
    Ok(())
}

fn run_gram(s: u32, degree: u32) -> Result<Rendered, CliError> {
    require_positive(s, "s")?;
    let x = gram_s_form(s, degree)?;
    Ok(Rendered {
        json: serde_json::to_value(&x)?,
        csv: Some(matrix_csv(&x)),
    })
}

fn run_snf(input: Option<&std::path::Path>, transforms: bool) -> Result<Rendered, CliError> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buffer = String::new();
            std::io::stdin().read_to_string(&mut buffer)?;
            buffer
        }
    };
    let mat = parse_matrix(&text)?;
    let result = smith_normal_form(&mat, transforms);
    let factors: Vec<String> = result
        .invariant_factors()
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut body = json!({"invariant_factors": factors});
    if mat.is_square() {
        body["det"] = Value::String(mat.det().to_string());
    }
    if let Some((u, v)) = result.transforms() {
        body["u"] = plain_matrix_json(u);
        body["v"] = plain_matrix_json(v);
    }
    let csv = vec![
        vec!["invariant_factors".to_string()],
        vec![join_factors(result.invariant_factors())],
    ];
    Ok(Rendered {
        json: body,
        csv: Some(csv),
    })
}

/// Accepts the labeled-matrix JSON shape; labels are optional, entries are
/// decimal strings (or plain JSON integers).
fn parse_matrix(text: &str) -> Result<Mat<BigInt>, CliError> {
    let value: Value = serde_json::from_str(text)?;
    let entries = value
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Usage("matrix JSON needs an \"entries\" array".into()))?;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(entries.len());
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Usage("entries must be an array of arrays".into()))?;
        let mut parsed = Vec::with_capacity(row.len());
        for entry in row {
            parsed.push(parse_integer(entry)?);
        }
        rows.push(parsed);
    }
    if rows.is_empty() {
        return Err(CliError::Usage("matrix has no rows".into()));
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(CliError::Usage("matrix rows have unequal lengths".into()));
    }
    Ok(Mat::from_rows(rows))
}

fn parse_integer(entry: &Value) -> Result<BigInt, CliError> {
    match entry {
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| CliError::Usage(format!("entry {s:?} is not an integer"))),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(CliError::Usage(format!("entry {n} is not an integer")))
            }
        }
        other => Err(CliError::Usage(format!("entry {other} is not an integer"))),
    }
}

fn run_sform_invariants(praw: u32, r: u32, degree: u32) -> Result<Rendered, CliError> {
    require_positive(r, "r")?;
    let p = Prime::new(praw)?;
    let gram = gram_power(praw, r, degree)?;
    let computed = InvariantMultiset::from(&smith_normal_form(&gram.mat, false));
    let predicted = predicted_prime_power(p, r, degree);
    let matches = computed == predicted;
    let conjectural = r > praw;
    if conjectural {
        eprintln!("note: r = {r} > p = {praw}: the prediction is conjectural; a mismatch is a finding");
    }
    let json = json!({
        "p": praw,
        "r": r,
        "degree": degree,
        "computed": computed,
        "predicted": predicted,
        "match": matches,
        "conjectural": conjectural,
    });
    let csv = vec![
        vec![
            "p".into(),
            "r".into(),
            "degree".into(),
            "computed".into(),
            "predicted".into(),
            "match".into(),
        ],
        vec![
            praw.to_string(),
            r.to_string(),
            degree.to_string(),
            join_factors(computed.values()),
            join_factors(predicted.values()),
            matches.to_string(),
        ],
    ];
    Ok(Rendered {
        json,
        csv: Some(csv),
    })
}

fn run_shapovalov(family: CartanFamily, rank: u32, degree: u32) -> Result<Rendered, CliError> {
    let spec = cartan(family, rank)?;
    let invariants: Vec<u32> = spec
        .invariant_factors()
        .iter()
        .map(|a| u32::try_from(a).expect("Cartan invariant factors are small"))
        .collect();
    let gram = shapovalov_gram(spec.matrix(), degree)?;
    let computed = InvariantMultiset::from(&smith_normal_form(&gram.mat, false));
    let (predicted, provenance) = predicted_shapovalov_standard(&invariants, degree)?;
    let matches = computed == predicted;
    let json = json!({
        "family": family.letter().to_string(),
        "rank": rank,
        "degree": degree,
        "cartan_invariants": invariants,
        "computed": computed,
        "predicted": predicted,
        "match": matches,
        "provenance": provenance,
    });
    let csv = vec![
        vec![
            "family".into(),
            "rank".into(),
            "degree".into(),
            "computed".into(),
            "predicted".into(),
            "match".into(),
        ],
        vec![
            family.letter().to_string(),
            rank.to_string(),
            degree.to_string(),
            join_factors(computed.values()),
            join_factors(predicted.values()),
            matches.to_string(),
        ],
    ];
    Ok(Rendered {
        json,
        csv: Some(csv),
    })
}

fn run_hecke_blocks(l: u32, dmax: u32) -> Result<Rendered, CliError> {
    let mut degrees = Vec::with_capacity(dmax as usize + 1);
    let mut csv = vec![vec!["d".to_string(), "invariants".into(), "provenance".into()]];
    for d in 0..=dmax {
        let (invariants, provenance) = hecke_block_invariants(l, d)?;
        csv.push(vec![
            d.to_string(),
            join_factors(invariants.values()),
            match provenance {
                shapoform::divisors::Provenance::Formula => "formula".into(),
                shapoform::divisors::Provenance::Computed => "computed".into(),
            },
        ]);
        degrees.push(json!({
            "d": d,
            "invariants": invariants,
            "provenance": provenance,
        }));
    }
    Ok(Rendered {
        json: json!({"l": l, "degrees": degrees}),
        csv: Some(csv),
    })
}

fn run_transition(from: FromBasis, to: ToBasis, degree: u32) -> Result<Rendered, CliError> {
    let from = match from {
        FromBasis::P => Basis::P,
        FromBasis::H => Basis::H,
    };
    let to = match to {
        ToBasis::M => Basis::M,
        ToBasis::P => Basis::P,
    };
    if from == to {
        return Err(CliError::Usage(
            "supported transitions are p→m, h→m and h→p".into(),
        ));
    }
    let t = transition_matrix(from, to, degree)?;
    let mut json = serde_json::to_value(&t.matrix)?;
    json["from"] = Value::String(from.tag().into());
    json["to"] = Value::String(to.tag().into());
    json["degree"] = Value::from(degree);
    Ok(Rendered {
        json,
        csv: Some(matrix_csv(&t.matrix)),
    })
}

fn run_bases(praw: u32, r: u32, dmax: u32, family: FamilyKind) -> Result<Rendered, CliError> {
    require_positive(r, "r")?;
    require_positive(dmax, "dmax")?;
    let p = Prime::new(praw)?;
    let conjectural = r > praw;
    if conjectural && family != FamilyKind::BigG {
        eprintln!("note: r = {r} > p = {praw}: the construction is experimental; a failed division is a finding");
    }
    let build_failure = |family: &str, e: shapoform::Error| {
        json!({
            "family": family,
            "p": praw,
            "r": r,
            "dmax": dmax,
            "constructed": false,
            "failure": e.to_string(),
        })
    };
    let json = match family {
        FamilyKind::LevelG => match GBasis::build(p, r, dmax) {
            Ok(g) => {
                let levels: Vec<Value> = (0..=r)
                    .map(|i| {
                        let expansions: Vec<Value> = (1..=dmax)
                            .map(|l| expansion_entry(json!([l]), g.generator(i, l)))
                            .collect();
                        json!({"i": i, "expansions": expansions})
                    })
                    .collect();
                json!({
                    "family": "g",
                    "p": praw,
                    "r": r,
                    "dmax": dmax,
                    "levels": levels,
                    "checks": g_basis_property_checks(&g),
                })
            }
            Err(e) if conjectural && matches!(e, shapoform::Error::NonExactDivision { .. }) => {
                build_failure("g", e)
            }
            Err(e) => return Err(e.into()),
        },
        FamilyKind::BigG => {
            if r != 1 {
                return Err(CliError::Usage("family G is built for r = 1 only".into()));
            }
            let gb = big_g_basis(p, dmax)?;
            let mut expansions = Vec::new();
            for d in 1..=dmax {
                for lambda in enumerate_partitions(d) {
                    let index = serde_json::to_value(&lambda)?;
                    expansions.push(expansion_entry(index, &gb.expansion(&lambda)));
                }
            }
            json!({
                "family": "G",
                "p": praw,
                "r": 1,
                "dmax": dmax,
                "expansions": expansions,
                "checks": big_g_property_checks(&gb),
            })
        }
        FamilyKind::DualM => match GBasis::build(p, r, dmax) {
            Ok(level) => {
                let mut expansions = Vec::new();
                for d in 1..=dmax {
                    let m = m_basis_from(&level, d)?;
                    for lambda in enumerate_partitions(d) {
                        let index = serde_json::to_value(&lambda)?;
                        expansions.push(expansion_entry(index, &m.expansion(&lambda)));
                    }
                }
                json!({
                    "family": "M",
                    "p": praw,
                    "r": r,
                    "dmax": dmax,
                    "expansions": expansions,
                    "checks": m_basis_property_checks(p, r, dmax)?,
                })
            }
            Err(e) if conjectural && matches!(e, shapoform::Error::NonExactDivision { .. }) => {
                build_failure("M", e)
            }
            Err(e) => return Err(e.into()),
        },
    };
    Ok(Rendered::json_only(json))
}

/// {"index": …, "terms": …} reusing the symmetric-function term format.
fn expansion_entry(index: Value, f: &SymPoly) -> Value {
    let mut poly = serde_json::to_value(f).expect("SymPoly serializes");
    json!({"index": index, "terms": poly["terms"].take()})
}

fn run_verify(praw: u32, r: u32, dmax: u32) -> Result<Rendered, CliError> {
    require_positive(r, "r")?;
    let p = Prime::new(praw)?;
    if r > praw {
        eprintln!("==============================================================");
        eprintln!(" CONJECTURAL REGIME: r = {r} > p = {praw}.");
        eprintln!(" The predicted divisors are conjectural here; a mismatch is");
        eprintln!(" reported as a finding (exit status stays 0).");
        eprintln!("==============================================================");
    }
    let report = check_conjecture(p, r, dmax)?;
    let mut csv = vec![vec![
        "d".to_string(),
        "computed".into(),
        "predicted".into(),
        "match".into(),
    ]];
    for c in &report.degrees {
        csv.push(vec![
            c.d.to_string(),
            join_factors(c.computed.values()),
            join_factors(c.predicted.values()),
            c.matches.to_string(),
        ]);
    }
    Ok(Rendered {
        json: serde_json::to_value(&report)?,
        csv: Some(csv),
    })
}
