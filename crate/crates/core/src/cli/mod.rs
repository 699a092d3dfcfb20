//! The `compatri` command line.
//!
//! Exit status: 0 success, 1 a verification or morph check failed, 2 bad
//! input, 3 the construction itself failed.

pub mod format;
pub mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::compat::{
    dway_steiner_compatible, steiner_compatible_pair, two_steiner_compatible, verify_data, CompatError,
    PairOptions, VerifyReport,
};
use crate::geom::{orient, Orientation, Point, PointSet};
use crate::rational::{parse_rational, Rational};
use format::{pointset_from_json, pointset_to_json, write_atomic, CoordinateStyle, FormatError, ResultBundle};

#[derive(Debug, Parser)]
#[command(name = "compatri", version, about = "Compatible triangulations with exterior Steiner points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write random point sets in general position.
    Gen {
        /// Points per set.
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write rounded decimals with this many places instead of exact
        /// fractions. Lossy.
        #[arg(long)]
        decimal: Option<u32>,
        /// Output directory; files are named `set-<i>.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compatible triangulations of two sets with a shared Steiner graph.
    Compat2 {
        s: PathBuf,
        t: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = parse_mode)]
        mode: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/8", value_parser = parse_slack)]
        slack: Rational,
        /// Bundle path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pairwise compatible triangulations of two or more sets.
    Dway {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1/8", value_parser = parse_slack)]
        slack: Rational,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compatible triangulations of two sets with two Steiner points each.
    TwoSteiner {
        s: PathBuf,
        t: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a bundle and print one line per check.
    Verify { bundle: PathBuf },
    /// One SVG per set of a bundle, named `set-<i>.svg`.
    Render {
        bundle: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sampled linear morph from set `pair` to set `pair + 1`, named
    /// `frame-<k>.svg`.
    Morph {
        bundle: PathBuf,
        #[arg(long, default_value_t = 0)]
        pair: usize,
        #[arg(long, default_value_t = 10)]
        frames: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_mode(text: &str) -> Result<u8, String> {
    match text {
        "1" => Ok(1),
        "3" => Ok(3),
        "5" => Ok(5),
        _ => Err(format!("mode must be 1, 3 or 5, got {text}")),
    }
}

fn parse_slack(text: &str) -> Result<Rational, String> {
    let r = parse_rational(text).map_err(|e| e.to_string())?;
    if r < crate::rational::int(0) {
        return Err("slack must be nonnegative".into());
    }
    Ok(r)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Input(String),
    #[error("construction failed: {0}")]
    Construction(CompatError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Construction(_) => 3,
            _ => 2,
        }
    }
}

impl From<CompatError> for CliError {
    fn from(e: CompatError) -> Self {
        match e {
            CompatError::Empty
            | CompatError::TooFewSets(_)
            | CompatError::SizeMismatch { .. }
            | CompatError::BadMode(_) => CliError::Input(e.to_string()),
            other => CliError::Construction(other),
        }
    }
}

/// What a successful run produced: text for stdout and whether all checks
/// passed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, passed: true }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    write_atomic(path, contents.as_bytes()).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_pointset(path: &Path) -> Result<PointSet, CliError> {
    pointset_from_json(&read(path)?).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_bundle(path: &Path) -> Result<ResultBundle, CliError> {
    ResultBundle::from_json(&read(path)?).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

/// `n` random points with coordinates `k / d`, `|k| <= 10^6`, `1 <= d <= 16`,
/// no three collinear.
pub fn random_points(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let mut coordinate = || {
            crate::rational::ratio(rng.gen_range(-1_000_000..=1_000_000), rng.gen_range(1..=16))
        };
        let p = Point::new(coordinate(), coordinate());
        let clash = pts.contains(&p)
            || (0..pts.len())
                .any(|i| (i + 1..pts.len()).any(|j| orient(&pts[i], &pts[j], &p) == Orientation::Collinear));
        if !clash {
            pts.push(p);
        }
    }
    pts
}

fn emit_bundle(bundle: &ResultBundle, out: Option<&Path>) -> Result<Outcome, CliError> {
    let text = bundle.to_json();
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(Outcome::ok(format!(
                "wrote {} ({} sets, {} Steiner points each)\n",
                path.display(),
                bundle.data.sets.len(),
                bundle.data.steiner_count_per_set
            )))
        }
        None => Ok(Outcome::ok(text)),
    }
}

/// Re-checks a bundle: the full result verification plus agreement of the
/// stored radius values with recomputed ones.
pub fn verify_bundle(bundle: &ResultBundle) -> VerifyReport {
    let mut report = verify_data(&bundle.data);
    let recomputed = ResultBundle::new(bundle.data.clone()).radius_checks;
    let same = recomputed == bundle.radius_checks;
    report.checks.push(crate::compat::Check {
        name: "radius_checks.recorded".into(),
        passed: same,
        detail: if same {
            String::new()
        } else {
            "stored radius values differ from recomputed ones".into()
        },
    });
    report
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Gen {
            n,
            count,
            seed,
            decimal,
            out,
        } => {
            if n == 0 {
                return Err(CliError::Input("n must be at least 1".into()));
            }
            let style = decimal.map_or(CoordinateStyle::Exact, |places| CoordinateStyle::Decimal { places });
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut listing = String::new();
            for i in 0..count {
                let path = out.join(format!("set-{i}.json"));
                write(&path, &pointset_to_json(&random_points(n, &mut rng), style))?;
                listing.push_str(&format!("{}\n", path.display()));
            }
            Ok(Outcome::ok(listing))
        }
        Command::Compat2 {
            s,
            t,
            mode,
            seed,
            slack,
            out,
        } => {
            let (s, t) = (read_pointset(&s)?, read_pointset(&t)?);
            let opts = PairOptions {
                seed,
                slack,
                ..PairOptions::default()
            };
            let result = steiner_compatible_pair(&s, &t, mode, &opts)?;
            emit_bundle(&ResultBundle::new(result.data()), out.as_deref())
        }
        Command::Dway {
            files,
            seed,
            slack,
            out,
        } => {
            let sets = files
                .iter()
                .map(|f| read_pointset(f).map(Arc::new))
                .collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&PointSet> = sets.iter().map(|s| s.as_ref()).collect();
            let opts = PairOptions {
                seed,
                slack,
                ..PairOptions::default()
            };
            let result = dway_steiner_compatible(&refs, &opts)?;
            emit_bundle(&ResultBundle::new(result.data()), out.as_deref())
        }
        Command::TwoSteiner { s, t, out } => {
            let (s, t) = (read_pointset(&s)?, read_pointset(&t)?);
            let result = two_steiner_compatible(&s, &t)?;
            emit_bundle(&ResultBundle::new(result.data()), out.as_deref())
        }
        Command::Verify { bundle } => {
            let report = verify_bundle(&read_bundle(&bundle)?);
            let mut stdout = report.to_string();
            let failed = report.failures().count();
            if failed == 0 {
                stdout.push_str(&format!("all {} checks passed\n", report.checks.len()));
            } else {
                stdout.push_str(&format!("{failed} of {} checks failed\n", report.checks.len()));
            }
            Ok(Outcome {
                stdout,
                passed: report.passed(),
            })
        }
        Command::Render { bundle, out } => {
            let bundle = read_bundle(&bundle)?;
            let mut listing = String::new();
            for (i, set) in bundle.data.sets.iter().enumerate() {
                check_renderable(set, i)?;
                let path = out.join(format!("set-{i}.svg"));
                write(&path, &render::render_set(set))?;
                listing.push_str(&format!("{}\n", path.display()));
            }
            Ok(Outcome::ok(listing))
        }
        Command::Morph {
            bundle,
            pair,
            frames,
            out,
        } => {
            let bundle = read_bundle(&bundle)?;
            let data = &bundle.data;
            if pair + 1 >= data.sets.len() || pair >= data.bijections.len() {
                return Err(CliError::Input(format!(
                    "pair {pair} needs sets {pair} and {} but the bundle has {}",
                    pair + 1,
                    data.sets.len()
                )));
            }
            if frames < 2 {
                return Err(CliError::Input("at least 2 frames are required".into()));
            }
            let (source, target, forward) = (&data.sets[pair], &data.sets[pair + 1], &data.bijections[pair]);
            check_renderable(source, pair)?;
            check_renderable(target, pair + 1)?;
            let m = source.points.len();
            let mut seen = vec![false; m];
            if forward.len() != m || target.points.len() != m || forward.iter().any(|&v| v >= m || std::mem::replace(&mut seen[v], true)) {
                return Err(CliError::Input(format!("bijection {pair} is not a permutation of 0..{m}")));
            }
            let mut passed = true;
            let mut stdout = String::new();
            for (k, frame) in render::morph(source, target, forward, frames).iter().enumerate() {
                write(&out.join(format!("frame-{k}.svg")), &frame.svg)?;
                let r = &frame.report;
                if r.is_clean() {
                    stdout.push_str(&format!("pass frame {k} (t = {})\n", frame.parameter));
                } else {
                    passed = false;
                    stdout.push_str(&format!(
                        "FAIL frame {k} (t = {}): {} inverted triangles, {} crossing edge pairs\n",
                        frame.parameter,
                        r.inverted.len(),
                        r.crossings.len()
                    ));
                }
            }
            Ok(Outcome { stdout, passed })
        }
    }
}

fn check_renderable(set: &crate::compat::SetData, index: usize) -> Result<(), CliError> {
    let m = set.points.len();
    if m == 0 || set.triangles.iter().flatten().any(|&l| l >= m) {
        return Err(CliError::Input(format!("set {index} has labels outside 0..{m}")));
    }
    Ok(())
}

/// Parses arguments, runs the command and reports; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
