//! Command-line front end for `hciter`.
//!
//! Every subcommand streams its output; solutions are printed as JSON lines
//! with 17 significant digits so doubles round-trip exactly.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hciter::compress::{compress, decompress, read_compressed, write_compressed};
use hciter::homotopy::Homotopy;
use hciter::lazy::{compose, first_where, solve_iter, StartKind, StartSolutions};
use hciter::polyhedral::{bkk_stretched, mixed_cell_iter};
use hciter::startsys::{
    necklace_count, necklace_parameters, necklaces_iter, polynomial_interpolants,
    solution_from_necklace,
};
use hciter::{
    random_gamma, Instrumentation, PathResult, PolySystem, ResultIterator, TrackOptions, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(
    name = "hciter",
    version,
    about = "Polynomial homotopy continuation with lazy solution sets"
)]
struct Cli {
    /// Seed for gamma and every other random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Fixed gamma as `re,im`; overrides the seeded choice.
    #[arg(long, global = true, value_parser = parse_complex, allow_hyphen_values = true)]
    gamma: Option<C64>,
    #[arg(long, global = true)]
    newton_tol: Option<f64>,
    #[arg(long, global = true)]
    max_steps: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = StartSystem::TotalDegree)]
    start_system: StartSystem,
    /// Print instrumentation counters to stderr.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StartSystem {
    TotalDegree,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Track every path and print the endpoints.
    Solve { system: PathBuf },
    /// Print path counts by outcome.
    Count { system: PathBuf },
    /// Print the first real solution found, tracking as few paths as possible.
    FirstReal { system: PathBuf },
    /// Exit 0 if some solution is not real, 1 otherwise.
    AnyNonreal { system: PathBuf },
    /// Print the coordinatewise sum of the solutions.
    Trace { system: PathBuf },
    /// Compress a JSON-lines solution file into an archive.
    Compress {
        system: PathBuf,
        solutions: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recover the solutions stored in an archive.
    Decompress { archive: PathBuf },
    /// Mixed volume of the stretched cubes.
    Bkk {
        #[arg(long, value_name = "N")]
        stretched: usize,
    },
    /// Solve the necklace interpolation problem for a random or given target.
    NecklaceDemo {
        d1: usize,
        d2: usize,
        /// `random` or a JSON file with the target parameters.
        #[arg(long, default_value = "random")]
        target: String,
    },
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s.split_once(',').ok_or("expected re,im")?;
    let re: f64 = re.trim().parse().map_err(|e| format!("{e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{e}"))?;
    let z = C64::new(re, im);
    if z.norm() == 0.0 || !z.is_finite() {
        return Err("gamma must be finite and nonzero".into());
    }
    Ok(z)
}

type Fallible<T> = Result<T, Box<dyn std::error::Error>>;

struct Context<'a> {
    cli: &'a Cli,
    rng: ChaCha8Rng,
    gamma: C64,
    options: TrackOptions,
}

impl Context<'_> {
    fn solve(&self, f: &PolySystem) -> Fallible<ResultIterator> {
        let StartSystem::TotalDegree = self.cli.start_system;
        Ok(solve_iter(
            f,
            StartKind::TotalDegree { gamma: self.gamma },
            self.options.clone(),
        )?)
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Fallible<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let seeded = random_gamma(&mut rng);
    let mut options = TrackOptions::default();
    if let Some(tol) = cli.newton_tol {
        options.newton_tol = tol;
    }
    if let Some(steps) = cli.max_steps {
        options.max_steps = steps;
    }
    options.validate()?;
    let mut ctx = Context {
        cli,
        rng,
        gamma: cli.gamma.unwrap_or(seeded),
        options,
    };
    let mut out = BufWriter::new(out);
    let mut stats: Option<std::sync::Arc<Instrumentation>> = None;
    let code = match &cli.command {
        Command::Solve { system } => {
            let it = ctx.solve(&read_system(system)?)?;
            for r in &it {
                write_result(&mut out, &r)?;
            }
            stats = Some(it.instrumentation().clone());
            0
        }
        Command::Count { system } => {
            let it = ctx.solve(&read_system(system)?)?;
            let real_tol = ctx.options.real_tol;
            let (mut total, mut success, mut real, mut nonsingular) = (0, 0, 0, 0);
            for r in &it {
                total += 1;
                success += usize::from(r.is_success());
                real += usize::from(r.is_success() && r.is_real(real_tol));
                nonsingular += usize::from(r.is_nonsingular());
            }
            writeln!(
                out,
                "total {total}, success {success}, real {real}, nonsingular {nonsingular}"
            )?;
            stats = Some(it.instrumentation().clone());
            0
        }
        Command::FirstReal { system } => {
            let it = ctx.solve(&read_system(system)?)?;
            let real_tol = ctx.options.real_tol;
            match first_where(|r: &PathResult| r.is_success() && r.is_real(real_tol), &it) {
                Some(r) => write_result(&mut out, &r)?,
                None => writeln!(out, "no real solution")?,
            }
            stats = Some(it.instrumentation().clone());
            0
        }
        Command::AnyNonreal { system } => {
            let it = ctx.solve(&read_system(system)?)?;
            let real_tol = ctx.options.real_tol;
            let found =
                hciter::lazy::any_lazy(|r: PathResult| r.is_success() && !r.is_real(real_tol), &it);
            writeln!(out, "{found}")?;
            stats = Some(it.instrumentation().clone());
            i32::from(!found)
        }
        Command::Trace { system } => {
            let it = ctx.solve(&read_system(system)?)?;
            let n = it.homotopy().nvars();
            let sols = it
                .iter()
                .filter(PathResult::is_success)
                .map(PathResult::into_solution);
            let mut trace = hciter::lazy::sum_vectors(sols);
            trace.resize(n, C64::new(0.0, 0.0));
            writeln!(out, "{}", vector_json(&trace))?;
            stats = Some(it.instrumentation().clone());
            0
        }
        Command::Compress {
            system,
            solutions,
            output,
        } => {
            let f = read_system(system)?;
            let file = BufReader::new(open(solutions)?);
            let mut bad = None;
            let sols = file.lines().enumerate().map_while(|(i, line)| {
                match line
                    .map_err(|e| e.to_string())
                    .and_then(|l| parse_solution_line(&l))
                {
                    Ok(v) => Some(v),
                    Err(e) => {
                        bad = Some(format!("{}:{}: {e}", solutions.display(), i + 1));
                        None
                    }
                }
            });
            let c = compress(&f, sols, ctx.gamma, &ctx.options);
            if let Some(msg) = bad {
                return Err(msg.into());
            }
            let c = c?;
            let mut sink = BufWriter::new(File::create(output)?);
            write_compressed(&c, &mut sink)?;
            sink.flush()?;
            writeln!(out, "bits {}, popcount {}", c.bitmask.len(), c.popcount())?;
            0
        }
        Command::Decompress { archive } => {
            let c = read_compressed(BufReader::new(open(archive)?))?;
            let it = decompress(&c, ctx.options.clone())?;
            for r in &it {
                write_result(&mut out, &r)?;
            }
            stats = Some(it.instrumentation().clone());
            0
        }
        Command::Bkk { stretched } => {
            let n = *stretched;
            if n == 0 || n > 12 {
                return Err("--stretched must be between 1 and 12".into());
            }
            writeln!(out, "{}", bkk_stretched(n))?;
            let mut by_volume = std::collections::BTreeMap::new();
            for cell in mixed_cell_iter(n) {
                *by_volume.entry(cell.volume).or_insert(0u64) += 1;
            }
            for (volume, cells) in by_volume {
                writeln!(out, "volume {volume}: {cells} cells")?;
            }
            0
        }
        Command::NecklaceDemo { d1, d2, target } => {
            necklace_demo(&mut ctx, *d1, *d2, target, &mut out, &mut stats)?
        }
    };
    out.flush()?;
    drop(out);
    if cli.stats {
        if let Some(s) = stats {
            writeln!(
                err,
                "paths_tracked {}, peak_live_results {}",
                s.paths_tracked(),
                s.peak_live_results()
            )?;
        }
    }
    Ok(code)
}

fn necklace_demo(
    ctx: &mut Context,
    d1: usize,
    d2: usize,
    target: &str,
    out: &mut dyn Write,
    stats: &mut Option<std::sync::Arc<Instrumentation>>,
) -> Fallible<i32> {
    let f = polynomial_interpolants(d1, d2)?;
    let d = d1 + d2;
    let target: Vec<C64> = if target == "random" {
        (0..d)
            .map(|_| C64::new(ctx.rng.gen_range(-1.0..1.0), 0.0))
            .collect()
    } else {
        let text = std::fs::read_to_string(target)?;
        parse_params(&text)?
    };
    if target.len() != d {
        return Err(format!("expected {d} target parameters, got {}", target.len()).into());
    }
    let starts: Vec<Vec<C64>> = necklaces_iter(d1, d2)
        .map(|n| solution_from_necklace(&n))
        .collect::<Result<_, _>>()?;
    writeln!(out, "necklaces {}", necklace_count(d1, d2))?;
    let middle: Vec<C64> = (0..d)
        .map(|_| C64::new(ctx.rng.gen_range(-1.0..1.0), ctx.rng.gen_range(-1.0..1.0)))
        .collect();
    let total = starts.len();
    let first = solve_iter(
        &f,
        StartKind::Parameter {
            start_params: necklace_parameters(d),
            target_params: middle.clone(),
            starts: StartSolutions::from_vec(starts),
        },
        ctx.options.clone(),
    )?;
    let second = compose(&first, Homotopy::parameter(f, middle, target)?)?;
    let mut success = 0;
    for r in &second {
        success += usize::from(r.is_success());
        write_result(out, &r)?;
    }
    writeln!(out, "success {success} of {total}")?;
    *stats = Some(second.instrumentation().clone());
    Ok(0)
}

fn open(path: &Path) -> Fallible<File> {
    File::open(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn read_system(path: &Path) -> Fallible<PolySystem> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    PolySystem::parse(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Formats with 17 significant digits; non-finite values become `null`.
fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".into()
    }
}

fn vector_json(v: &[C64]) -> String {
    let re: Vec<String> = v.iter().map(|z| num(z.re)).collect();
    let im: Vec<String> = v.iter().map(|z| num(z.im)).collect();
    format!(
        r#"{{"re": [{}], "im": [{}]}}"#,
        re.join(", "),
        im.join(", ")
    )
}

fn write_result(out: &mut dyn Write, r: &PathResult) -> io::Result<()> {
    let v = vector_json(&r.solution);
    writeln!(
        out,
        r#"{}, "status": "{}", "residual": {}}}"#,
        &v[..v.len() - 1],
        r.status,
        num(r.residual)
    )
}

fn parse_solution_line(line: &str) -> Result<Vec<C64>, String> {
    let value: serde_json::Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let part = |key: &str| -> Result<Vec<f64>, String> {
        value
            .get(key)
            .and_then(|v| v.as_array())
            .ok_or_else(|| format!("missing \"{key}\" array"))?
            .iter()
            .map(|x| {
                x.as_f64()
                    .ok_or_else(|| format!("non-numeric entry in \"{key}\""))
            })
            .collect()
    };
    let (re, im) = (part("re")?, part("im")?);
    if re.len() != im.len() {
        return Err("\"re\" and \"im\" differ in length".into());
    }
    Ok(re
        .into_iter()
        .zip(im)
        .map(|(a, b)| C64::new(a, b))
        .collect())
}

/// A JSON array whose entries are reals or `[re, im]` pairs.
fn parse_params(text: &str) -> Fallible<Vec<C64>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let items = value
        .as_array()
        .ok_or("target parameters must be a JSON array")?;
    items
        .iter()
        .map(|v| {
            if let Some(x) = v.as_f64() {
                return Ok(C64::new(x, 0.0));
            }
            match v
                .as_array()
                .map(|a| a.iter().map(|x| x.as_f64()).collect::<Option<Vec<_>>>())
            {
                Some(Some(p)) if p.len() == 2 => Ok(C64::new(p[0], p[1])),
                _ => Err("parameter must be a number or [re, im]".into()),
            }
        })
        .collect()
}
