//! Command-line surface: load and validate instances, run individual
//! operations, run the verification suite, emit reports.
//!
//! Exit codes: 0 on success with no violations, 2 when an axiom or
//! inequality violation was found, 1 on structural or configuration errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hyperconv::families::FamilyKind;
use hyperconv::hypergroup::{compute_haar, HaarWeights, HypergroupTable, SampledFunction};
use hyperconv::instance::{
    FunctionDoc, GrowthDoc, HypergroupDoc, InstanceDocument, MaximalDoc, RearrangementDoc,
    StepDoc,
};
use hyperconv::norms::{lebesgue_norm, lorentz_norm, LorentzParams};
use hyperconv::potential::{riesz_kernel, riesz_potential, CenterPolicy, QuasiMetric, RieszParams};
use hyperconv::step::{distribution, maximal, rearrangement};
use hyperconv::verify::{run_suite, SuiteConfig, SuiteError};

#[derive(Parser)]
#[command(name = "hyperconv", version, about = "Convolution calculus and inequality verification on finite commutative hypergroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterArg {
    Zero,
    Cap,
}

#[derive(Subcommand)]
enum Command {
    /// Check every hypergroup axiom of an instance (and its quasi-metric and
    /// growth block, when present) and print the residual report.
    Validate {
        instance: PathBuf,
        /// Absolute tolerance on axiom residuals.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Print the Haar weights of the instance's hypergroup.
    Haar { instance: PathBuf },
    /// Convolve two function files over the instance's hypergroup.
    Convolve {
        instance: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Emit the distribution function, decreasing rearrangement and maximal
    /// function of a function file.
    Rearrange {
        instance: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print a Lebesgue norm (no q) or Lorentz norm (with q; "inf" allowed).
    Norm {
        instance: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: Option<f64>,
    },
    /// Evaluate the fractional integral of a function file against the
    /// instance's quasi-metric (field `rho`).
    Potential {
        instance: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Ball-growth exponent N in the kernel ρ(e,·)^{α-N}.
        #[arg(long = "exponent")]
        growth_exponent: f64,
        /// Kernel value at the center.
        #[arg(long, value_enum, default_value_t = CenterArg::Zero)]
        center: CenterArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; exit 2 if any inequality is violated.
    Verify {
        /// Take the whole configuration from a file (either a bare suite
        /// configuration or an instance document with a `suite` block);
        /// overrides the individual flags below.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Instance sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 16, 64])]
        sizes: Vec<usize>,
        /// Families, comma separated: cyclic, product, orbit, conjugacy.
        #[arg(long, value_delimiter = ',', default_values_t = ["cyclic".to_string(), "product".to_string(), "orbit".to_string(), "conjugacy".to_string()])]
        families: Vec<String>,
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
        #[arg(long, default_value_t = 100)]
        t_samples: usize,
        /// Write the full JSON report here.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write the flat tabular export here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generate a builder-family instance (with Haar weights and a seeded
    /// random function under `functions.f`). Family `growth` emits a
    /// synthetic shell space instead (`size` grid points over a geometric
    /// radius span).
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ball-growth constant A (growth family only).
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
        /// Ball-growth exponent N (growth family only).
        #[arg(long, default_value_t = 1.0)]
        exponent: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { instance, tol } => validate(&instance, tol),
        Command::Haar { instance } => haar_cmd(&instance),
        Command::Convolve { instance, f, g, out } => convolve_cmd(&instance, &f, &g, out.as_deref()),
        Command::Rearrange { instance, f, out } => rearrange_cmd(&instance, &f, out.as_deref()),
        Command::Norm { instance, f, p, q } => norm_cmd(&instance, &f, p, q),
        Command::Potential { instance, f, alpha, growth_exponent, center, out } => {
            potential_cmd(&instance, &f, alpha, growth_exponent, center, out.as_deref())
        }
        Command::Verify { config, seed, trials, sizes, families, slack, t_samples, out, csv } => {
            let suite_config = match config {
                Some(path) => load_suite_config(&path)?,
                None => SuiteConfig {
                    seed,
                    trials,
                    families: families
                        .iter()
                        .map(|name| FamilyKind::parse(name))
                        .collect::<hyperconv::Result<Vec<_>>>()?,
                    sizes,
                    slack,
                    t_samples,
                    ..SuiteConfig::default()
                },
            };
            verify_cmd(&suite_config, out.as_deref(), csv.as_deref())
        }
        Command::Gen { family, size, seed, constant, exponent, out } => {
            gen_cmd(&family, size, seed, constant, exponent, out.as_deref())
        }
    }
}

fn read_instance(path: &Path) -> Result<InstanceDocument> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: InstanceDocument =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if !doc.is_actionable() {
        bail!("{} contains no actionable block", path.display());
    }
    Ok(doc)
}

fn read_function(path: &Path, n: usize) -> Result<SampledFunction> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: FunctionDoc =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if doc.values.len() != n {
        bail!(
            "{}: function has {} values for a space of {} elements",
            path.display(),
            doc.values.len(),
            n
        );
    }
    Ok(SampledFunction::new(doc.values)?)
}

/// Table plus measure. Haar weights come from the instance when given,
/// otherwise from the closed form; growth-only instances yield their weights
/// as the measure.
fn table_and_measure(doc: &InstanceDocument) -> Result<(Option<HypergroupTable>, HaarWeights)> {
    if let Some(block) = &doc.hypergroup {
        let table = block.to_table()?;
        let haar = match block.haar_weights()? {
            Some(h) => h,
            None => compute_haar(&table)?,
        };
        return Ok((Some(table), haar));
    }
    if let Some(growth) = &doc.growth {
        let space = growth.to_space()?;
        return Ok((None, space.haar()));
    }
    bail!("instance carries neither a hypergroup nor a growth block")
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn validate(path: &Path, tol: f64) -> Result<ExitCode> {
    let doc = read_instance(path)?;
    let mut all_pass = true;
    let mut printed = serde_json::Map::new();
    if let Some(block) = &doc.hypergroup {
        let table = block.to_table()?;
        for (name, values) in &doc.functions {
            if values.len() != table.n() {
                bail!(
                    "function `{name}` has {} values for {} elements",
                    values.len(),
                    table.n()
                );
            }
        }
        let report = table.validate(tol);
        all_pass &= report.pass;
        printed.insert("axioms".into(), serde_json::to_value(&report)?);
    }
    if let Some(rho) = &doc.rho {
        let metric = QuasiMetric::new(rho)?;
        if let Some(block) = &doc.hypergroup {
            if metric.n() != block.n {
                bail!("rho is {}×{} but the hypergroup has {} elements", metric.n(), metric.n(), block.n);
            }
        }
        let report = metric.validate();
        all_pass &= report.pass;
        printed.insert("quasi_metric".into(), serde_json::to_value(&report)?);
    }
    if let Some(growth) = &doc.growth {
        let outcome = growth.to_space();
        printed.insert(
            "growth".into(),
            serde_json::json!({ "pass": outcome.is_ok(),
                "detail": outcome.as_ref().err().map(|e| e.to_string()) }),
        );
        all_pass &= outcome.is_ok();
    }
    if printed.is_empty() {
        bail!("nothing to validate: no hypergroup, rho or growth block");
    }
    println!("{}", serde_json::to_string_pretty(&printed)?);
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn haar_cmd(path: &Path) -> Result<ExitCode> {
    let doc = read_instance(path)?;
    let (_, haar) = table_and_measure(&doc)?;
    println!("{}", serde_json::to_string(&serde_json::json!({ "haar": haar.as_slice() }))?);
    Ok(ExitCode::SUCCESS)
}

fn convolve_cmd(path: &Path, f_path: &Path, g_path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let doc = read_instance(path)?;
    let (table, haar) = table_and_measure(&doc)?;
    let table = table.context("convolution requires a hypergroup block")?;
    let f = read_function(f_path, table.n())?;
    let g = read_function(g_path, table.n())?;
    let h = table.convolve(&haar, &f, &g)?;
    let text = serde_json::to_string(&FunctionDoc { values: h.values().to_vec() })?;
    write_or_print(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn rearrange_cmd(path: &Path, f_path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let doc = read_instance(path)?;
    let (_, haar) = table_and_measure(&doc)?;
    let f = read_function(f_path, haar.len())?;
    let dist = distribution(&f, &haar);
    let star = rearrangement(&dist);
    let max = maximal(&star);
    let result = RearrangementDoc {
        distribution: StepDoc::from_step(&dist),
        rearrangement: StepDoc::from_step(&star),
        maximal: MaximalDoc::from_maximal(&max),
    };
    write_or_print(out, &serde_json::to_string_pretty(&result)?)?;
    Ok(ExitCode::SUCCESS)
}

fn norm_cmd(path: &Path, f_path: &Path, p: f64, q: Option<f64>) -> Result<ExitCode> {
    let doc = read_instance(path)?;
    let (_, haar) = table_and_measure(&doc)?;
    let f = read_function(f_path, haar.len())?;
    let value = match q {
        None => lebesgue_norm(&f, &haar, p)?,
        Some(q) => lorentz_norm(&f, &haar, &LorentzParams::new(p, q)?),
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn potential_cmd(
    path: &Path,
    f_path: &Path,
    alpha: f64,
    growth_exponent: f64,
    center: CenterArg,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let doc = read_instance(path)?;
    let (table, haar) = table_and_measure(&doc)?;
    let table = table.context("the fractional integral requires a hypergroup block")?;
    let rho = doc.rho.as_ref().context("instance has no `rho` quasi-metric block")?;
    let metric = QuasiMetric::new(rho)?;
    if metric.n() != table.n() {
        bail!("rho is {}×{} but the hypergroup has {} elements", metric.n(), metric.n(), table.n());
    }
    let f = read_function(f_path, table.n())?;
    let params = RieszParams::new(alpha, growth_exponent)?;
    let policy = match center {
        CenterArg::Zero => CenterPolicy::Zero,
        CenterArg::Cap => CenterPolicy::Cap,
    };
    let radii = metric.radii_from(table.identity());
    let kernel = riesz_kernel(&radii, Some(table.identity()), &params, policy)?;
    let result = riesz_potential(&table, &haar, &f, &kernel)?;
    let text = serde_json::to_string(&FunctionDoc { values: result.values().to_vec() })?;
    write_or_print(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

/// A configuration file is either a bare suite configuration or an instance
/// document carrying a `suite` block.
fn load_suite_config(path: &Path) -> Result<SuiteConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(doc) = serde_json::from_str::<InstanceDocument>(&text) {
        if let Some(suite) = doc.suite {
            return Ok(suite);
        }
        if doc.is_actionable() {
            bail!("{} has no `suite` block", path.display());
        }
    }
    serde_json::from_str::<SuiteConfig>(&text)
        .with_context(|| format!("parsing {} as a suite configuration", path.display()))
}

fn verify_cmd(config: &SuiteConfig, out: Option<&Path>, csv: Option<&Path>) -> Result<ExitCode> {
    let report = match run_suite(config) {
        Ok(report) => report,
        Err(SuiteError::Structural { error, instance }) => {
            let dump = out
                .map(|p| p.with_extension("failed.json"))
                .unwrap_or_else(|| PathBuf::from("failed_instance.json"));
            fs::write(&dump, serde_json::to_string_pretty(&*instance)?)
                .with_context(|| format!("writing {}", dump.display()))?;
            bail!("{error}; failing instance written to {}", dump.display());
        }
        Err(e) => return Err(e.into()),
    };
    println!("{}", serde_json::to_string_pretty(&report.summary)?);
    if let Some(path) = out {
        fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = csv {
        fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if report.summary.violations == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn gen_cmd(
    family_name: &str,
    size: usize,
    seed: u64,
    constant: f64,
    exponent: f64,
    out: Option<&Path>,
) -> Result<ExitCode> {
    if family_name == "growth" {
        let span = 2f64.powf(28.0 / exponent);
        let grid = hyperconv::potential::geometric_grid(1.0, span, size)?;
        let space = hyperconv::GrowthSpace::synth(constant, exponent, &grid)?;
        let doc = InstanceDocument {
            growth: Some(GrowthDoc::from_space(&space)),
            ..Default::default()
        };
        write_or_print(out, &serde_json::to_string_pretty(&doc)?)?;
        return Ok(ExitCode::SUCCESS);
    }
    let kind = FamilyKind::parse(family_name)?;
    let family = kind.instance_of_size(size)?;
    let table = hyperconv::build_family(&family)?;
    let haar = compute_haar(&table)?;
    let mut doc = InstanceDocument {
        hypergroup: Some(HypergroupDoc::from_table(&table, Some(&haar))),
        ..Default::default()
    };
    // a reproducible sample function derived from the seed
    let values: Vec<f64> = (0..table.n())
        .map(|i| {
            let x = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(i as u64)
                .wrapping_mul(1442695040888963407);
            ((x >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        })
        .collect();
    doc.functions.insert("f".into(), values);
    write_or_print(out, &serde_json::to_string_pretty(&doc)?)?;
    Ok(ExitCode::SUCCESS)
}
