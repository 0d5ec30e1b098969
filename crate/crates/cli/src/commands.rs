use std::fs::File;
use std::io::{BufWriter, Write};

use betaproc::benchmark::{default_grid, run_comparison, reference_specs, BenchConfig};
use betaproc::beta_bernoulli::{bep_draw, posterior_update, sample_posterior};
use betaproc::measures::{base_uniform01, FixedAtom, Profile};
use betaproc::randgen::{derive_substream, make_stream};
use betaproc::samplers::{self, default_rounds, sample_as, Partition, PoissonVariant};
use betaproc::{AtomicMeasure, BaseMeasure, BernoulliDraw, BetaProcessParams, SamplerSpec};
use serde::Serialize;

use crate::config::ConfigFile;
use crate::{Alg, AlgArgs, BenchArgs, CliError, Format, ModelArgs, PosteriorArgs, SampleArgs};

type Outcome = Result<(), CliError>;

/// Model options merged with the optional config file.
struct Model {
    file: ConfigFile,
    params: BetaProcessParams,
    seed: u64,
    format: Option<Format>,
    out: Option<std::path::PathBuf>,
}

impl Model {
    fn resolve(args: &ModelArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let c = file.pick(args.c, "c")?.unwrap_or(2.0);
        let mass = file.pick(args.mass, "mass")?.unwrap_or(1.0);
        let base_cdf = file.pick(args.base_cdf.clone(), "base-cdf")?;
        let base = match base_cdf {
            Some(path) => {
                let profile = Profile::read_csv(&path).map_err(|e| CliError::Usage(format!("base CDF {}: {e}", path.display())))?;
                BaseMeasure::continuous(mass, profile)?
            }
            None if mass == 1.0 => base_uniform01(),
            None => BaseMeasure::continuous(mass, Profile::uniform(0.0, 1.0)?)?,
        };
        let params = BetaProcessParams::new(c, base)?;
        let seed = file.pick(args.seed, "seed")?.unwrap_or(0);
        let format = match args.format {
            Some(f) => Some(f),
            None => file.raw("format").map(parse_format).transpose()?,
        };
        let out = file.pick(args.out.clone(), "out")?;
        Ok(Model { file, params, seed, format, out })
    }

    fn writer<'a>(&self, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| CliError::Failure(format!("cannot create {}: {e}", path.display())))?)),
            None => Box::new(stdout),
        })
    }
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    <Format as clap::ValueEnum>::from_str(s, true).map_err(|_| CliError::Usage(format!("unknown format {s:?}; expected csv, json or md")))
}

fn parse_alg(s: &str) -> Result<Alg, CliError> {
    <Alg as clap::ValueEnum>::from_str(s, true).map_err(|_| CliError::Usage(format!("unknown algorithm {s:?}")))
}

fn resolve_alg(args: &AlgArgs, file: &ConfigFile) -> Result<Option<Alg>, CliError> {
    match args.alg {
        Some(a) => Ok(Some(a)),
        None => file.raw("alg").map(parse_alg).transpose(),
    }
}

fn build_spec(alg: Alg, args: &AlgArgs, file: &ConfigFile, params: &BetaProcessParams) -> Result<SamplerSpec, CliError> {
    let n = file.pick(args.n, "n")?.unwrap_or(200);
    let rounds = match file.pick(args.rounds, "rounds")? {
        Some(r) => r,
        None => default_rounds(params.c, params.mass()),
    };
    let eps = file.pick(args.eps, "eps")?;
    Ok(match alg {
        Alg::Pc => SamplerSpec::Pc { n },
        Alg::As => SamplerSpec::As { n },
        Alg::Fk => SamplerSpec::Fk {
            jumps: file.pick(args.jumps, "jumps")?.ok_or_else(|| CliError::Usage("fk needs --jumps; the series has no default truncation".into()))?,
        },
        Alg::Stick => SamplerSpec::Stick { rounds },
        Alg::Prep5 => SamplerSpec::PoissonRep { rounds, variant: PoissonVariant::GammaTime },
        Alg::Prep6 => SamplerSpec::PoissonRep { rounds, variant: PoissonVariant::ExponentialTime },
        Alg::Dls => SamplerSpec::Dls { partition: Partition::Uniform { cells: file.pick(args.partitions, "partitions")?.unwrap_or(200) }, n },
        Alg::Leekim => SamplerSpec::LeeKim { epsilon: eps.unwrap_or(0.01) },
        Alg::Lee => SamplerSpec::Lee { n, epsilon: eps.unwrap_or(0.05) },
    })
}

pub fn sample(args: &SampleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let model = Model::resolve(&args.model)?;
    let alg = resolve_alg(&args.alg, &model.file)?.ok_or_else(|| CliError::Usage("sample needs --alg".into()))?;
    let spec = build_spec(alg, &args.alg, &model.file, &model.params)?;
    spec.validate(&model.params)?;
    let count = model.file.pick(args.paths, "paths")?.unwrap_or(1);
    if count == 0 {
        return Err(CliError::Usage("--paths must be positive".into()));
    }
    let mut paths = Vec::with_capacity(count);
    let mut dropped = 0;
    for r in 0..count as u64 {
        let out = samplers::sample_with_diagnostics(&spec, &model.params, &mut derive_substream(model.seed, r))?;
        dropped += out.dropped_zero_weights;
        paths.push(out.path);
    }
    if dropped > 0 {
        writeln!(stderr, "note: dropped {dropped} zero-weight atoms")?;
    }
    let mut out = model.writer(stdout)?;
    match model.format.unwrap_or(Format::Json) {
        Format::Json if paths.len() == 1 => serde_json::to_writer_pretty(&mut out, &paths[0]).map_err(io_failure)?,
        Format::Json => serde_json::to_writer_pretty(&mut out, &paths).map_err(io_failure)?,
        Format::Csv if paths.len() == 1 => paths[0].write_csv(&mut out)?,
        Format::Csv => {
            writeln!(out, "path,loc,w")?;
            for (r, p) in paths.iter().enumerate() {
                for a in &p.atoms {
                    writeln!(out, "{r},{},{}", a.loc, a.w)?;
                }
            }
        }
        Format::Md => {
            for (r, p) in paths.iter().enumerate() {
                writeln!(out, "### path {r} ({} {}, {} atoms, total mass {:.6})\n", spec.id(), spec.params_label(), p.len(), p.total_mass())?;
                atom_table(&mut out, p)?;
            }
        }
    }
    if model.format != Some(Format::Csv) {
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn atom_table(out: &mut dyn Write, p: &AtomicMeasure) -> Outcome {
    writeln!(out, "| loc | w |\n|---|---|")?;
    for a in &p.atoms {
        writeln!(out, "| {} | {} |", a.loc, a.w)?;
    }
    writeln!(out)?;
    Ok(())
}

fn io_failure(e: serde_json::Error) -> CliError {
    CliError::Failure(format!("cannot write output: {e}"))
}

fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("grid value {s:?}: {e}"))))
        .collect()
}

pub fn bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let model = Model::resolve(&args.model)?;
    let specs = match resolve_alg(&args.alg, &model.file)? {
        Some(alg) => vec![build_spec(alg, &args.alg, &model.file, &model.params)?],
        None => reference_specs(),
    };
    let grid = match file_or_flag(args.grid.as_deref(), &model.file, "grid") {
        Some(text) => parse_grid(text)?,
        None => default_grid(),
    };
    let cfg = BenchConfig {
        c: model.params.c,
        base: model.params.base.clone(),
        grid,
        paths: model.file.pick(args.paths, "paths")?.unwrap_or(3000),
        master_seed: model.seed,
        specs,
        workers: model.file.pick(args.workers, "workers")?,
    };
    let report = run_comparison(&cfg)?;
    let mut out = model.writer(stdout)?;
    match model.format.unwrap_or(Format::Csv) {
        Format::Csv => report.write_csv(&mut out)?,
        Format::Json => report.write_json(&mut out)?,
        Format::Md => report.write_markdown(&mut out)?,
    }
    out.flush()?;
    let failed: Vec<_> = report.rows.iter().filter_map(|r| r.error.as_ref().map(|e| (r, e))).collect();
    if failed.is_empty() {
        return Ok(());
    }
    for (row, e) in &failed {
        writeln!(stderr, "{} ({}) failed: {e}", row.algorithm, row.params)?;
    }
    Err(CliError::Failure(format!("{} of {} algorithms failed", failed.len(), report.rows.len())))
}

fn file_or_flag<'a>(flag: Option<&'a str>, file: &'a ConfigFile, key: &str) -> Option<&'a str> {
    flag.or_else(|| file.raw(key))
}

#[derive(Serialize)]
struct PosteriorDemo<'a> {
    c: f64,
    mass: f64,
    m: usize,
    c_star: f64,
    posterior_base_mass: f64,
    prior_path_atoms: usize,
    observations: &'a [BernoulliDraw],
    base_atoms: &'a [FixedAtom],
    posterior: &'a BetaProcessParams,
    posterior_path: &'a AtomicMeasure,
}

pub fn posterior_demo(args: &PosteriorArgs, stdout: &mut dyn Write) -> Outcome {
    let model = Model::resolve(&args.model)?;
    let m = model.file.pick(args.m, "m")?.unwrap_or(5);
    let n = model.file.pick(args.n, "n")?.unwrap_or(200);
    let prior = &model.params;
    let mut stream = make_stream(model.seed);
    let prior_path = sample_as(prior, n, &mut stream)?;
    let draws = (0..m).map(|_| bep_draw(&prior_path, &mut stream)).collect::<Result<Vec<_>, _>>()?;
    let post = posterior_update(prior, &draws)?;
    let post_path = sample_posterior(&post, n, &mut stream)?;
    let demo = PosteriorDemo {
        c: prior.c,
        mass: prior.mass(),
        m,
        c_star: post.c,
        posterior_base_mass: post.mass(),
        prior_path_atoms: prior_path.len(),
        observations: &draws,
        base_atoms: post.base.atoms(),
        posterior: &post,
        posterior_path: &post_path,
    };
    let mut out = model.writer(stdout)?;
    match model.format.unwrap_or(Format::Json) {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &demo).map_err(io_failure)?;
            writeln!(out)?;
        }
        Format::Md | Format::Csv => {
            writeln!(out, "c* = {}\nposterior base mass = {}\ncontinuous part mass = {}\n", demo.c_star, demo.posterior_base_mass, post.base.continuous_part().mass)?;
            writeln!(out, "| atom | base mass |\n|---|---|")?;
            for a in demo.base_atoms {
                writeln!(out, "| {} | {} |", a.loc, a.mass)?;
            }
            writeln!(out, "\nposterior path ({} atoms):\n", post_path.len())?;
            atom_table(&mut out, &post_path)?;
        }
    }
    out.flush()?;
    Ok(())
}
