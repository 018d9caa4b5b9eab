use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigRational;

use genassoc::cartan::{build_root_system, CartanType, RootVec};
use genassoc::clusters::{cluster_expansion, enumerate_clusters};
use genassoc::compat::CompatTable;
use genassoc::error::Error;
use genassoc::exec;
use genassoc::oracle_models;
use genassoc::pipeline::{self, VerifyOptions, DEFAULT_SEED};
use genassoc::polytope::export::{export, Format};
use genassoc::polytope::verify_realization;
use genassoc::table::{expansion_table, render_table};
use genassoc::tau::orbits;

#[derive(Parser, Debug)]
#[command(
    name = "genassoc",
    version,
    about = "Generalized associahedra in exact arithmetic"
)]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "GENASSOC_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct SupportArgs {
    /// Use F(-alpha_i) = [rho^vee : alpha_i^vee] (the default).
    #[arg(long, conflicts_with = "support")]
    rho: bool,

    /// One rational value per tau-orbit, ordered by smallest simple index,
    /// e.g. "3/2,2".
    #[arg(long)]
    support: Option<String>,
}

impl SupportArgs {
    fn values(&self) -> Result<Option<Vec<BigRational>>, Error> {
        match &self.support {
            Some(s) => genassoc::polytope::support::parse_values(s).map(Some),
            None => Ok(None),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the almost positive roots and their tau-orbits.
    Roots { r#type: String },
    /// Enumerate clusters.
    Clusters {
        r#type: String,
        /// Print only the number of clusters.
        #[arg(long)]
        count: bool,
    },
    /// Cluster expansion of a lattice vector, e.g. "[1,1,1,1,1,1]".
    Expand {
        r#type: String,
        vector: String,
        /// Subtract the simple root with this label first.
        #[arg(long)]
        minus_simple: Option<String>,
    },
    /// Realize the polytope and export it.
    Polytope {
        r#type: String,
        #[command(flatten)]
        support: SupportArgs,
        #[arg(long, default_value = "json")]
        format: String,
        /// Skip verification; the output records it as unverified.
        #[arg(long)]
        no_verify: bool,
    },
    /// Run the verification suite; exits 1 on any failure.
    Verify {
        r#type: String,
        #[command(flatten)]
        support: SupportArgs,
        /// Also run the slower checks.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Expansion table for the full-support roots (E6, E7 or E8).
    Table { r#type: String },
    /// Compare the polygon model with the algebraic degrees (types A, B, C).
    Oracle { r#type: String },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn parse_type(s: &str) -> Result<CartanType, Failure> {
    Ok(s.parse::<CartanType>()?)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Roots { r#type } => roots(parse_type(&r#type)?),
        Command::Clusters { r#type, count } => clusters(parse_type(&r#type)?, count),
        Command::Expand {
            r#type,
            vector,
            minus_simple,
        } => expand(parse_type(&r#type)?, &vector, minus_simple.as_deref()),
        Command::Polytope {
            r#type,
            support,
            format,
            no_verify,
        } => polytope(parse_type(&r#type)?, &support, &format, no_verify),
        Command::Verify {
            r#type,
            support,
            full,
            seed,
        } => verify(parse_type(&r#type)?, &support, full, seed),
        Command::Table { r#type } => table(parse_type(&r#type)?),
        Command::Oracle { r#type } => oracle(parse_type(&r#type)?),
    }
}

fn roots(t: CartanType) -> Result<String, Failure> {
    let c = build_root_system(t)?;
    let parts = orbits(&c);
    let mut out = String::new();
    let labels = c.simple_labels();
    let part = |s| {
        c.part(s)
            .iter()
            .map(|&i| labels[i].clone())
            .collect::<Vec<_>>()
            .join(",")
    };
    let _ = writeln!(
        out,
        "# {t}: {} almost positive roots, h = {}, I+ = {{{}}}, I- = {{{}}}",
        c.len(),
        c.coxeter_number(),
        part(genassoc::Sign::Plus),
        part(genassoc::Sign::Minus)
    );
    for idx in 0..c.len() {
        let _ = writeln!(
            out,
            "{idx:>4}  {:<24} orbit {}  {}",
            c.root(idx).to_string(),
            parts.orbit_of[idx] + 1,
            c.describe(idx)
        );
    }
    for (o, members) in parts.orbits.iter().enumerate() {
        let names: Vec<String> = members.iter().map(|&m| c.describe(m)).collect();
        let _ = writeln!(
            out,
            "orbit {} ({} roots): {}",
            o + 1,
            members.len(),
            names.join(", ")
        );
    }
    Ok(out)
}

fn clusters(t: CartanType, count: bool) -> Result<String, Failure> {
    let c = build_root_system(t)?;
    let table = CompatTable::new(&c)?;
    let list = enumerate_clusters(&c, &table)?;
    if count {
        return Ok(format!("{}\n", list.len()));
    }
    let mut out = format!("# {t}: {} clusters\n", list.len());
    for cl in &list {
        let roots: Vec<String> = cl.members.iter().map(|&m| c.root(m).to_string()).collect();
        let _ = writeln!(out, "{}", roots.join(" "));
    }
    Ok(out)
}

fn expand(t: CartanType, vector: &str, minus_simple: Option<&str>) -> Result<String, Failure> {
    let c = build_root_system(t)?;
    let mut v: RootVec = vector.parse()?;
    if v.len() != c.rank() {
        return Err(Error::Arity {
            expected: c.rank(),
            got: v.len(),
        }
        .into());
    }
    if let Some(label) = minus_simple {
        let labels = c.simple_labels();
        let j = labels
            .iter()
            .position(|l| l == label)
            .or_else(|| {
                label
                    .parse::<usize>()
                    .ok()
                    .filter(|&k| (1..=c.rank()).contains(&k))
                    .map(|k| k - 1)
            })
            .ok_or_else(|| Failure::Usage(format!("no simple root labelled {label:?}")))?;
        v.coords_mut()[j] -= 1;
    }
    let e = cluster_expansion(&c, &v)?;
    Ok(format!("{}\n", e.render(&c)))
}

fn polytope(
    t: CartanType,
    support: &SupportArgs,
    format: &str,
    no_verify: bool,
) -> Result<String, Failure> {
    let format: Format = format.parse()?;
    if format == Format::Off && t.rank() != 3 {
        return Err(Error::OffRank(t.rank()).into());
    }
    let values = support.values()?;
    let a = pipeline::build(t, values.as_deref())?;
    let verified = if no_verify {
        eprintln!("verification skipped");
        false
    } else {
        let report = verify_realization(
            &a.catalog,
            &a.support,
            &a.clusters,
            &a.pairs,
            &a.realization,
        );
        eprint!("{report}");
        if !report.passed() {
            return Err(Failure::Check("realization failed verification".into()));
        }
        true
    };
    Ok(export(
        &a.catalog,
        &a.support,
        &a.clusters,
        &a.realization,
        verified,
        format,
    )?)
}

fn verify(t: CartanType, support: &SupportArgs, full: bool, seed: u64) -> Result<String, Failure> {
    let opts = VerifyOptions {
        full,
        seed,
        support: support.values()?,
    };
    let report = pipeline::verify_type(t, &opts)?;
    let status = if report.passed() { "PASS" } else { "FAIL" };
    let out = format!("{report}{status} {t}\n");
    if report.passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Check(format!("{t}: verification failed")))
    }
}

fn table(t: CartanType) -> Result<String, Failure> {
    let c = build_root_system(t)?;
    let rows = expansion_table(&c)?;
    Ok(render_table(&c, &rows))
}

fn oracle(t: CartanType) -> Result<String, Failure> {
    let c = build_root_system(t)?;
    let model = oracle_models::build_model(&c)?;
    let table = CompatTable::new(&c)?;
    let clusters = enumerate_clusters(&c, &table)?;
    let mut out = format!("# {t} on a {}-gon\n", model.n_vertices);
    for (idx, ds) in model.elements.iter().enumerate() {
        let ds: Vec<String> = ds.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let _ = writeln!(out, "{:<24} {}", c.root(idx).to_string(), ds.join(" "));
    }
    let degrees = oracle_models::compare_degrees(&c, &model, &table);
    let orbits = oracle_models::compare_orbits(&c, &model);
    let count = model.count_maximal_noncrossing();
    let _ = writeln!(out, "{degrees}");
    let _ = writeln!(out, "{orbits}");
    let _ = writeln!(
        out,
        "maximal non-crossing sets: {count}, clusters: {}",
        clusters.len()
    );
    if degrees.passed() && orbits.passed() && count == clusters.len() as u64 {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Check("polygon model disagrees".into()))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads;
    match exec::with_threads(threads, || run(cli)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
