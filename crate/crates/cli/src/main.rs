//! `superinv`: batch front-end over the invariant laboratory.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 resource cap exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use superinv::claims::{run_claim, ClaimId, ClaimParams};
use superinv::invariants::{invariant_space_bruteforce, tensor_invariant_dim, tensor_words, Caps, InvariantSetting};
use superinv::liesuper::{build_family, FamilyTag};
use superinv::report::{all_passed, Check};
use superinv::supercomb::{
    enumerate_semistandard, enumerate_standard_tableaux, IndexRange, Partition, YoungTableau,
};
use superinv::Error;

#[derive(Parser, Debug)]
#[command(name = "superinv", version, about = "Invariants of matrix Lie superalgebras by exact linear algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List standard tableaux of a shape and count semistandard sequences.
    Tableaux(TableauxArgs),
    /// Run the checks attached to one theorem.
    Verify(VerifyArgs),
    /// Compute a space of invariants directly.
    Invariants(InvariantsArgs),
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    /// Seed recorded for replay of randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monomial cap (default from SUPERINV_MAX_MONOMIALS, else 20000).
    #[arg(long)]
    max_monomials: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct TableauxArgs {
    /// Row lengths, e.g. `2,1`; `0` is the empty shape.
    #[arg(long)]
    shape: String,
    /// `(n|m)` as `n,m`.
    #[arg(long, default_value = "1,1")]
    range: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    family: Option<String>,
    /// `(n|m)` of V as `n,m`.
    #[arg(long)]
    dims: Option<String>,
    /// `p,q,k,l` with W = (p|q), U = (k|l).
    #[arg(long)]
    pqkl: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    dims: String,
    /// `p,q,k,l`; ignored with `--tensor`.
    #[arg(long, default_value = "1,0,1,0")]
    pqkl: String,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Tensor variant `T^{p,q}`: `p` vector and `q` covector slots, as `p,q`.
    #[arg(long)]
    tensor: Option<String>,
    /// Also require invariance under the reflection of the last even basis vector.
    #[arg(long)]
    reflection: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Cap(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("malformed {what}: {s:?}"))))
        .collect()
}

fn parse_pair(s: &str, what: &str) -> Result<IndexRange, CliError> {
    match parse_list(s, what)?.as_slice() {
        [a, b] => Ok(IndexRange::new(*a, *b)),
        _ => Err(CliError::Usage(format!("{what} needs two entries: {s:?}"))),
    }
}

fn parse_pqkl(s: &str) -> Result<[usize; 4], CliError> {
    parse_list(s, "pqkl")?
        .try_into()
        .map_err(|_| CliError::Usage(format!("pqkl needs four entries: {s:?}")))
}

fn parse_family(s: &str) -> Result<FamilyTag, CliError> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "gl" => FamilyTag::Gl,
        "sl" => FamilyTag::Sl,
        "osp" => FamilyTag::Osp,
        "pe" => FamilyTag::Pe,
        "spe" => FamilyTag::Spe,
        _ => return Err(CliError::Usage(format!("unknown family {s:?}"))),
    })
}

fn caps(out: &OutputArgs) -> Result<Caps, CliError> {
    let mut c = Caps::from_env();
    if let Some(m) = out.max_monomials {
        if m == 0 {
            return Err(CliError::Usage("caps must be positive".into()));
        }
        c.max_monomials = m;
    }
    Ok(c)
}

fn emit<T: Serialize>(out: &OutputArgs, report: &T, csv_rows: Vec<Vec<String>>) -> Result<(), CliError> {
    let bytes = match out.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in csv_rows {
                w.write_record(&r)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))?
        }
    };
    match &out.output {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn elapsed(out: &OutputArgs, start: Instant) -> Option<u128> {
    out.timing.then(|| start.elapsed().as_millis())
}

#[derive(Serialize)]
struct TableauxConfig<'a> {
    command: &'static str,
    shape: Vec<usize>,
    range: [usize; 2],
    format: Format,
    seed: u64,
    output: Option<&'a PathBuf>,
}

#[derive(Serialize)]
struct TableauxReport<'a> {
    config: TableauxConfig<'a>,
    standard_count: usize,
    standard_tableaux: Vec<Vec<Vec<usize>>>,
    semistandard_counts: Vec<usize>,
    timing_ms: Option<u128>,
}

fn cmd_tableaux(a: &TableauxArgs) -> Result<bool, CliError> {
    let start = Instant::now();
    let parts = parse_list(&a.shape, "shape")?;
    let shape = Partition::from_parts_lenient(parts)?;
    let range = parse_pair(&a.range, "range")?;
    let tableaux: Vec<YoungTableau> =
        if shape.size() == 0 { Vec::new() } else { enumerate_standard_tableaux(&shape) };
    let counts: Vec<usize> = tableaux.iter().map(|t| enumerate_semistandard(t, range).len()).collect();
    let report = TableauxReport {
        config: TableauxConfig {
            command: "tableaux",
            shape: shape.parts().to_vec(),
            range: [range.even, range.odd],
            format: a.out.format,
            seed: a.out.seed,
            output: a.out.output.as_ref(),
        },
        standard_count: tableaux.len(),
        standard_tableaux: tableaux.iter().map(|t| t.rows().to_vec()).collect(),
        semistandard_counts: counts.clone(),
        timing_ms: elapsed(&a.out, start),
    };
    let mut rows = vec![vec!["index".to_string(), "tableau".into(), "semistandard".into()]];
    for (i, (t, c)) in tableaux.iter().zip(&counts).enumerate() {
        let rendered: Vec<String> =
            t.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        rows.push(vec![i.to_string(), rendered.join(" / "), c.to_string()]);
    }
    emit(&a.out, &report, rows)?;
    Ok(true)
}

#[derive(Serialize)]
struct VerifyConfig<'a> {
    command: &'static str,
    theorem: String,
    family: Option<String>,
    dims: Option<[usize; 2]>,
    pqkl: Option<[usize; 4]>,
    n: Option<usize>,
    k: Option<usize>,
    max_degree: Option<usize>,
    caps: Caps,
    format: Format,
    seed: u64,
    output: Option<&'a PathBuf>,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: VerifyConfig<'a>,
    checks: &'a [Check],
    timing_ms: Option<u128>,
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool, CliError> {
    let start = Instant::now();
    let id = a.theorem.parse::<ClaimId>().map_err(|e| CliError::Usage(e.to_string()))?;
    let family = a.family.as_deref().map(parse_family).transpose()?;
    let dims = a.dims.as_deref().map(|s| parse_pair(s, "dims")).transpose()?;
    let pqkl = a.pqkl.as_deref().map(parse_pqkl).transpose()?;
    let params = ClaimParams {
        family,
        dims,
        pqkl,
        n: a.n,
        k: a.k,
        max_degree: a.max_degree,
        caps: caps(&a.out)?,
    };
    let checks = run_claim(id, &params)?;
    let report = VerifyReport {
        config: VerifyConfig {
            command: "verify",
            theorem: id.as_str().to_string(),
            family: family.map(|f| f.to_string()),
            dims: dims.map(|d| [d.even, d.odd]),
            pqkl,
            n: a.n,
            k: a.k,
            max_degree: a.max_degree,
            caps: params.caps,
            format: a.out.format,
            seed: a.out.seed,
            output: a.out.output.as_ref(),
        },
        checks: &checks,
        timing_ms: elapsed(&a.out, start),
    };
    let mut rows = vec![[
        "id",
        "claim_ref",
        "status",
        "oracle",
        "generated",
        "witness",
        "errata_target",
        "errata_printed",
        "errata_observed",
        "errata_amended",
        "detail",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect::<Vec<_>>()];
    for c in &checks {
        let e = c.errata.as_ref();
        rows.push(vec![
            c.id.clone(),
            c.claim_ref.clone(),
            c.status.as_str().to_string(),
            c.dims.map(|d| d.oracle.to_string()).unwrap_or_default(),
            c.dims.map(|d| d.generated.to_string()).unwrap_or_default(),
            c.witness.clone().unwrap_or_default(),
            e.map(|e| e.target.clone()).unwrap_or_default(),
            e.map(|e| e.printed.clone()).unwrap_or_default(),
            e.map(|e| e.observed.clone()).unwrap_or_default(),
            e.and_then(|e| e.amended.clone()).unwrap_or_default(),
            c.detail.clone().unwrap_or_default(),
        ]);
    }
    emit(&a.out, &report, rows)?;
    Ok(all_passed(&checks))
}

#[derive(Serialize)]
struct InvariantsConfig<'a> {
    command: &'static str,
    family: String,
    dims: [usize; 2],
    pqkl: Option<[usize; 4]>,
    tensor: Option<[usize; 2]>,
    degree: Option<usize>,
    reflection: bool,
    caps: Caps,
    format: Format,
    seed: u64,
    output: Option<&'a PathBuf>,
}

#[derive(Serialize)]
struct InvariantsReport<'a> {
    config: InvariantsConfig<'a>,
    dim: usize,
    basis: Vec<String>,
    timing_ms: Option<u128>,
}

fn cmd_invariants(a: &InvariantsArgs) -> Result<bool, CliError> {
    let start = Instant::now();
    let tag = parse_family(&a.family)?;
    let v = parse_pair(&a.dims, "dims")?;
    let caps = caps(&a.out)?;
    let tensor = a.tensor.as_deref().map(|s| parse_pair(s, "tensor")).transpose()?;
    let (dim, basis, pqkl, degree) = match tensor {
        Some(t) => {
            let slots = t.even + t.odd;
            let words = v.len().checked_pow(slots as u32).unwrap_or(usize::MAX);
            if words > caps.max_monomials {
                return Err(CliError::Cap(
                    Error::CapExceeded { what: "tensor words".into(), needed: words, cap: caps.max_monomials }
                        .to_string(),
                ));
            }
            let family = build_family(tag, v)?;
            let pattern: Vec<bool> = std::iter::repeat_n(false, t.even).chain(std::iter::repeat_n(true, t.odd)).collect();
            let dim = tensor_invariant_dim(&family, &tensor_words(v, &pattern));
            (dim, Vec::new(), None, None)
        }
        None => {
            let [p, q, k, l] = parse_pqkl(&a.pqkl)?;
            let mut setting = InvariantSetting::mixed(tag, v, IndexRange::new(k, l), IndexRange::new(p, q))?;
            if a.reflection {
                setting = setting.with_reflection();
            }
            let space = invariant_space_bruteforce(&setting, a.degree, &caps)?;
            let basis = space.basis.iter().map(|b| b.to_string()).collect();
            (space.dim(), basis, Some([p, q, k, l]), Some(a.degree))
        }
    };
    let report = InvariantsReport {
        config: InvariantsConfig {
            command: "invariants",
            family: tag.to_string(),
            dims: [v.even, v.odd],
            pqkl,
            tensor: tensor.map(|t| [t.even, t.odd]),
            degree,
            reflection: a.reflection,
            caps,
            format: a.out.format,
            seed: a.out.seed,
            output: a.out.output.as_ref(),
        },
        dim,
        basis: basis.clone(),
        timing_ms: elapsed(&a.out, start),
    };
    let mut rows = vec![vec!["index".to_string(), "invariant".into()]];
    rows.extend(basis.into_iter().enumerate().map(|(i, b)| vec![i.to_string(), b]));
    emit(&a.out, &report, rows)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Tableaux(a) => cmd_tableaux(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Invariants(a) => cmd_invariants(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(CliError::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
