use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qzeta::Result;
use qzeta_cli::config::{self, Command, Format, Input, MethodChoice, RunConfig};

/// Continued fractions and partial zeta values at nonpositive integers for
/// real quadratic fields.
#[derive(Parser, Debug)]
#[command(name = "qzeta", version, about)]
struct Cli {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, env = "QZETA_THREADS")]
    threads: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug, Clone, Default)]
struct FieldArgs {
    /// Squarefree radicand d; uses the ring of integers of Q(sqrt d).
    #[arg(long, allow_hyphen_values = true)]
    disc: Option<String>,
    /// Radicand list and ranges, e.g. `2..50,61`. Squares in ranges are skipped.
    #[arg(long, conflicts_with = "disc")]
    discs: Option<String>,
    /// Reduced generator `P,q,d` meaning (P + sqrt d)/q.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["disc", "discs"])]
    omega: Option<String>,
    /// Norm of the ideal for `--omega`, as `n` or `n/m`.
    #[arg(long = "normb", requires = "omega")]
    norm_b: Option<String>,
}

impl FieldArgs {
    fn input(&self) -> Result<Option<Input>> {
        if let Some(d) = &self.disc {
            return Ok(Some(Input::Disc(d.trim().parse().map_err(|e| qzeta::Error::Parse(format!("--disc {d:?}: {e}")))?)));
        }
        if let Some(ds) = &self.discs {
            return Ok(Some(Input::Discs(config::parse_discs(ds)?)));
        }
        if let Some(w) = &self.omega {
            return config::parse_omega_input(w, self.norm_b.as_deref()).map(Some);
        }
        Ok(None)
    }
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Continued fraction data, convergents and the fundamental unit.
    Cf(FieldArgs),
    /// zeta(-k) for a field or ideal.
    Zeta {
        #[command(flatten)]
        field: FieldArgs,
        /// `K` or `a..b`.
        #[arg(short, default_value = "0")]
        k: String,
        /// main, fast0, meyer, gp, zagier or oracle.
        #[arg(long, default_value = "main")]
        method: String,
    },
    /// Closed-form zeta polynomials along a parametric family.
    Family {
        /// JSON family specification.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Radicand polynomial coefficients, ascending, e.g. `2,0,1`.
        #[arg(long = "from-d", conflicts_with = "spec")]
        from_d: Option<String>,
        #[arg(short, default_value = "0")]
        k: String,
        /// Also interpolate numeric values and compare.
        #[arg(long)]
        check: bool,
        /// Evaluate at each n in `a..b` instead of printing polynomials.
        #[arg(long = "n-range")]
        n_range: Option<String>,
        /// Sample parameters used by `--from-d`.
        #[arg(long, default_value = "1..8")]
        samples: String,
    },
    /// Run the consistency checks; exits 1 if any fails.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, conflicts_with_all = ["disc", "discs", "omega"])]
        spec: Option<PathBuf>,
        #[arg(short, default_value = "0..2")]
        k: String,
        /// Include the numerical lattice-sum estimate.
        #[arg(long)]
        oracle: bool,
    },
}

fn missing(what: &str) -> qzeta::Error {
    qzeta::Error::InvalidParameter(format!("missing input: {what}"))
}

fn build_config(cli: Cli) -> Result<RunConfig> {
    let mut cfg = match cli.command {
        Sub::Cf(f) => RunConfig::new(Command::Cf, f.input()?.ok_or_else(|| missing("--disc, --discs or --omega"))?),
        Sub::Zeta { field, k, method } => {
            let mut c = RunConfig::new(Command::Zeta, field.input()?.ok_or_else(|| missing("--disc, --discs or --omega"))?);
            c.ks = config::parse_k(&k)?;
            c.method = method.parse::<MethodChoice>()?;
            c
        }
        Sub::Family { spec, from_d, k, check, n_range, samples } => {
            let input = match (spec, from_d) {
                (Some(p), _) => Input::Spec(config::load_spec(&p)?),
                (None, Some(d)) => Input::FromD(config::parse_poly(&d)?),
                (None, None) => return Err(missing("--spec or --from-d")),
            };
            let mut c = RunConfig::new(Command::Family, input);
            c.ks = config::parse_k(&k)?;
            c.check = check;
            c.n_range = n_range.as_deref().map(config::parse_range).transpose()?;
            c.samples = config::parse_range(&samples)?;
            c
        }
        Sub::Verify { field, spec, k, oracle } => {
            let input = match spec {
                Some(p) => Input::Spec(config::load_spec(&p)?),
                None => field.input()?.ok_or_else(|| missing("--disc, --discs, --omega or --spec"))?,
            };
            let mut c = RunConfig::new(Command::Verify, input);
            c.ks = config::parse_k(&k)?;
            c.oracle = oracle;
            c
        }
    };
    cfg.format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Plain
    };
    cfg.threads = cli.threads;
    cfg.output = cli.output;
    Ok(cfg)
}

fn execute(cfg: &RunConfig) -> Result<bool> {
    let out = qzeta_cli::run(cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| qzeta::Error::Parse(format!("{}: {e}", path.display())))?,
        None => print!("{}", out.text),
    }
    Ok(out.success)
}

fn main() -> ExitCode {
    let cfg = match build_config(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qzeta: {e}");
            return ExitCode::from(2);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qzeta: thread pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| execute(&cfg)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qzeta: {e}");
            ExitCode::from(2)
        }
    }
}
