use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use engel_core::catalog::{build_family, list, parse_params, FamilyId};
use engel_core::framecalc::{GridSpec, Manifest, DEFAULT_SAMPLES, DEFAULT_TOLERANCE};
use engel_core::geiges::{GeigesRun, MappingTorusInput, Variant};
use engel_core::report::{
    emit_report, parse_suite, resolve_target, run_verify, Format, RunOptions,
};

/// Verify Engel, J-Engel and K-Engel structures on framed complex surfaces.
#[derive(Parser)]
#[command(name = "engel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites on a catalog family or a manifest file.
    Verify(VerifyArgs),
    /// Inspect the built-in example families.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Search for the first level n at which the mapping-torus plane field is Engel.
    Geiges(GeigesArgs),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List family ids.
    List,
    /// Print a family as a manifest together with its printed values.
    Show {
        id: String,
        #[arg(long, default_value = "")]
        params: String,
        /// Print only the manifest JSON.
        #[arg(long)]
        manifest: bool,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Samples per period and coordinate.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    grid: usize,
    /// Non-vanishing threshold for sampled certificates.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Write the JSON report to PATH (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

impl GridArgs {
    fn spec(&self) -> Result<GridSpec> {
        if self.grid == 0 {
            bail!("--grid must be positive");
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must be rejected too
        if !(self.tol > 0.0) {
            bail!("--tol must be positive");
        }
        Ok(GridSpec::new(self.grid, self.tol))
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog id or manifest path.
    target: String,
    /// Comma-separated subset of engel,jengel,forms,jofreeb,kengel,splitting,geiges,equivariance.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Family parameters, e.g. `a=1,b=3/2`.
    #[arg(long, default_value = "")]
    params: String,
    /// Include wall-clock times (the JSON is then no longer byte-stable).
    #[arg(long)]
    timings: bool,
    #[arg(long, default_value_t = 16)]
    nmax: u32,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct GeigesArgs {
    /// Manifest with coordinate `t` and vectors `V`, `X`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "j_engel")]
    variant: String,
    #[arg(long, default_value_t = 64)]
    nmax: u32,
    #[command(flatten)]
    grid: GridArgs,
}

fn write_json(path: &PathBuf, json: &str) -> Result<bool> {
    if path.as_os_str() == "-" {
        print!("{json}");
        return Ok(true);
    }
    std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    Ok(false)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let params = parse_params(&args.params)?;
    let suite = parse_suite(&args.suite)?;
    let target = resolve_target(&args.target, &params)?;
    let opts = RunOptions {
        grid: args.grid.spec()?,
        seed: args.seed,
        timings: args.timings,
        n_max: args.nmax,
    };
    let report = run_verify(&target, &suite, &opts)?;
    let to_stdout = match &args.grid.json {
        Some(p) => write_json(p, &emit_report(&report, Format::Json))?,
        None => false,
    };
    if !to_stdout {
        print!("{}", emit_report(&report, Format::Text));
    }
    Ok(report.passed())
}

fn catalog(cmd: CatalogCommand) -> Result<bool> {
    match cmd {
        CatalogCommand::List => {
            for (id, description) in list() {
                let params: Vec<String> = id
                    .parameters()
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                println!(
                    "{:<22} {:<12} {}",
                    id.as_str(),
                    params.join(","),
                    description
                );
            }
        }
        CatalogCommand::Show {
            id,
            params,
            manifest: only,
        } => {
            let id: FamilyId = id.parse()?;
            let spec = build_family(id, &parse_params(&params)?)?;
            let mut vectors = BTreeMap::new();
            vectors.insert("A".to_string(), spec.d[0].clone());
            if let Some(z) = &spec.engel_field {
                vectors.insert("Z".to_string(), z.clone());
            }
            let manifest = Manifest::from_parts(
                id.as_str(),
                &spec.space,
                &spec.j,
                Some(&spec.d),
                &vectors,
                &spec.params,
            );
            if only {
                print!("{}", manifest.to_json());
                return Ok(true);
            }
            println!("# {}", spec.description);
            let (frame, coords) = (spec.space.frame_names(), spec.space.coord_names());
            for ex in &spec.expectations {
                let tag = if ex.known_deviation {
                    " (known deviation)"
                } else {
                    ""
                };
                println!(
                    "# printed {} = {}{}",
                    ex.expr.label(),
                    ex.printed.display(frame, coords),
                    tag
                );
            }
            print!("{}", manifest.to_json());
        }
    }
    Ok(true)
}

fn geiges(args: GeigesArgs) -> Result<bool> {
    let variant: Variant = args.variant.parse().map_err(anyhow::Error::msg)?;
    if args.nmax == 0 {
        bail!("--nmax must be at least 1");
    }
    let grid = args.grid.spec()?;
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let loaded = Manifest::from_json(&text)?.load()?;
    let input = MappingTorusInput::from_manifest(loaded, &grid)?;
    let run = GeigesRun::new(&input, variant, &grid, args.nmax)?;
    let to_stdout = match &args.grid.json {
        Some(p) => write_json(p, &run.to_json())?,
        None => false,
    };
    if !to_stdout {
        println!("input: {} (a = {}), variant {}", run.input, run.a, variant);
        println!(
            "{:>4}  {:>6}  {:>6}  {:>6}  {:>12}",
            "n", "engel", "JD=D", "JD^D=0", "min|det|"
        );
        for l in &run.search.trace {
            let det = l
                .spanning_constant
                .clone()
                .or_else(|| l.spanning_min_abs.map(|m| format!("{m:.3e}")))
                .unwrap_or_default();
            println!(
                "{:>4}  {:>6}  {:>6}  {:>6}  {:>12}",
                l.n, l.engel, l.j_invariant, l.totally_real, det
            );
        }
        match run.search.found {
            Some(n) => println!("n* = {n}"),
            None => println!("no level up to {} passes", args.nmax),
        }
        for l in &run.fit.levels {
            println!(
                "residual n={:<3} first {:.3e} second {:.3e}",
                l.n, l.first, l.second
            );
        }
        let slope = |s: Option<f64>| s.map_or("undefined".to_string(), |s| format!("{s:.4}"));
        println!(
            "log-log slope: first {}, second {}",
            slope(run.fit.slope_first),
            slope(run.fit.slope_second)
        );
    }
    Ok(run.search.found.is_some())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Catalog { command } => catalog(command),
        Command::Geiges(a) => geiges(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
