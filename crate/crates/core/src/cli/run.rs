use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::cache::{Cache, ENGINE_VERSION};
use super::job::JobSpec;
use super::report::{CellReport, CheckRecord, DecompositionEntry, Report, SCHEMA_VERSION};
use super::CliError;
use crate::dermodel::{ComplexMode, DerError, Engine, ModeRegistry};
use crate::fistab::{FiError, FiModule};
use crate::gradedlie::pbw_series_check;
use crate::ratlinalg::SparseVec;
use crate::reptheory::{decompose, unpad, verdict, StabilityReport, StabilityRow};

struct Ctx<'a> {
    job: &'a JobSpec,
    fi: FiModule<'a>,
    cache: Cache,
}

impl Ctx<'_> {
    fn engine(&self) -> &Engine {
        self.fi.engine()
    }

    fn mode(&self) -> &dyn ComplexMode {
        self.fi.mode()
    }

    fn fail(&self, n: usize, k: u32, source: impl Into<FiError>) -> CliError {
        CliError::Cell {
            model: self.job.model_label.clone(),
            mode: self.job.mode.clone(),
            n,
            k,
            source: source.into(),
        }
    }
}

/// Computes every requested cell and check. Cells run on a pool of `job.workers` threads;
/// the report is assembled in `(k, n)` order regardless of scheduling.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| run_in_pool(job))
}

fn run_in_pool(job: &JobSpec) -> Result<Report, CliError> {
    let mode: Arc<dyn ComplexMode> = ModeRegistry::default()
        .get(&job.mode)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let engine = Engine::new(job.model.clone())
        .map_err(|e| CliError::Usage(e.to_string()))?
        .with_max_dim(Some(job.max_dim));
    let fi = FiModule::new(&engine, mode).map_err(|e| CliError::Usage(e.to_string()))?;
    let cache = Cache::new(job.cache_dir.as_deref(), &job.model_bytes).map_err(|e| CliError::Io {
        path: job
            .cache_dir
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_default(),
        message: e.to_string(),
    })?;
    let ctx = Ctx { job, fi, cache };

    let grid: Vec<(usize, u32)> = job
        .k
        .iter()
        .flat_map(|k| job.n.iter().map(move |n| (n, k as u32)))
        .collect();
    let cells: Vec<CellReport> = grid
        .par_iter()
        .map(|&(n, k)| cell(&ctx, n, k))
        .collect::<Result<_, _>>()?;

    let mut checks = Vec::new();
    checks.extend(check_all(&ctx, &grid, "d-squared", |n, k| d_squared(&ctx, n, k))?);
    if job.check_consistency {
        let triples: Vec<(usize, usize, u32)> = grid
            .iter()
            .flat_map(|&(m, k)| (job.n.start..m).map(move |n| (n, m, k)))
            .collect();
        let results: Vec<CheckRecord> = triples
            .par_iter()
            .map(|&(n, m, k)| {
                let key = ["consistency", &n.to_string(), &m.to_string(), &k.to_string()];
                let passed = ctx.cache.get_or_compute(&key, || {
                    ctx.fi.consistency_check(n, m, k).map_err(|e| ctx.fail(m, k, e))
                })?;
                Ok(CheckRecord {
                    check: "consistency".into(),
                    cell: format!("n={n} m={m} k={k}"),
                    passed,
                })
            })
            .collect::<Result<_, CliError>>()?;
        checks.extend(results);
        checks.extend(check_all(&ctx, &grid, "bracket-closure", |n, k| {
            bracket_closure(&ctx, n, k)
        })?);
    }
    if job.check_pbw {
        for n in job.n.iter() {
            let gens = job
                .model
                .free_product_generators(n)
                .map_err(|e| ctx.fail(n, 0, DerError::from(e)))?;
            let up_to = (job.model.max_generator_degree() + job.k.end as u32 + 1).max(8);
            checks.push(CheckRecord {
                check: "pbw".into(),
                cell: format!("n={n} deg<={up_to}"),
                passed: pbw_series_check(gens.degrees(), up_to).passed(),
            });
        }
    }

    let mut generation: Vec<(u32, Vec<(usize, bool)>)> = Vec::new();
    if job.check_generation {
        for k in job.k.iter() {
            let k = k as u32;
            let flags: Vec<(usize, bool)> = job
                .n
                .iter()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&m| {
                    if m == job.n.start {
                        return Ok((m, false));
                    }
                    let key = ["generation", &m.to_string(), &k.to_string()];
                    let g = ctx.cache.get_or_compute(&key, || {
                        ctx.fi.generated_from_below(m, k).map_err(|e| ctx.fail(m, k, e))
                    })?;
                    Ok((m, g))
                })
                .collect::<Result<_, CliError>>()?;
            generation.push((k, flags));
        }
    }

    let mut stability = Vec::new();
    if job.decompose || job.check_generation {
        for k in job.k.iter() {
            let k = k as u32;
            let rows: Vec<StabilityRow> = if job.decompose {
                cells
                    .iter()
                    .filter(|c| c.k == k)
                    .map(|c| StabilityRow {
                        n: c.n,
                        dim: c.dim,
                        padded: c
                            .decomposition
                            .iter()
                            .flatten()
                            .map(|e| (e.padded.clone(), e.multiplicity))
                            .collect(),
                    })
                    .collect()
            } else {
                Vec::new()
            };
            stability.push(StabilityReport {
                model: job.model_label.clone(),
                mode: job.mode.clone(),
                degree: k,
                n_min: job.n.start,
                n_max: job.n.end,
                verdict: verdict(&rows),
                rows,
                generation: generation
                    .iter()
                    .find(|(g, _)| *g == k)
                    .map(|(_, f)| f.clone())
                    .unwrap_or_default(),
            });
        }
    }

    let all_checks_passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        engine_version: ENGINE_VERSION.into(),
        model: job.model_label.clone(),
        model_sha256: ctx.cache.model_hash().to_string(),
        mode: job.mode.clone(),
        k_range: [job.k.start, job.k.end],
        n_range: [job.n.start, job.n.end],
        seed: job.seed,
        cells,
        checks,
        stability,
        all_checks_passed,
    })
}

fn cell(ctx: &Ctx<'_>, n: usize, k: u32) -> Result<CellReport, CliError> {
    let decomp = ctx.job.decompose;
    let key = [
        "cell",
        ctx.mode().name(),
        &n.to_string(),
        &k.to_string(),
        if decomp { "decompose" } else { "plain" },
    ];
    ctx.cache.get_or_compute(&key, || {
        let h = ctx.fi.homology(n, k).map_err(|e| ctx.fail(n, k, e))?;
        let mut report = CellReport {
            n,
            k,
            slice_dim: h.slice.dim(),
            dim: h.dim(),
            character: None,
            decomposition: None,
        };
        if decomp {
            let chi = ctx.fi.character(n, k).map_err(|e| ctx.fail(n, k, e))?;
            let d = decompose(&chi).map_err(|e| ctx.fail(n, k, e))?;
            if d.total_dim() != h.dim() as u64 {
                return Err(ctx.fail(n, k, FiError::NotAChainMap { arity: n, degree: k }));
            }
            report.character = Some(chi.values.iter().map(|(mu, v)| (mu.clone(), v.to_string())).collect());
            report.decomposition = Some(
                d.multiplicities
                    .iter()
                    .map(|(l, m)| DecompositionEntry {
                        partition: l.clone(),
                        padded: unpad(l),
                        multiplicity: *m,
                    })
                    .collect(),
            );
        }
        Ok(report)
    })
}

fn check_all(
    ctx: &Ctx<'_>,
    grid: &[(usize, u32)],
    name: &str,
    f: impl Fn(usize, u32) -> Result<bool, CliError> + Sync,
) -> Result<Vec<CheckRecord>, CliError> {
    grid.par_iter()
        .map(|&(n, k)| {
            let seed = ctx.job.seed.to_string();
            let key = [name, &n.to_string(), &k.to_string(), &seed];
            let passed = ctx.cache.get_or_compute(&key, || f(n, k))?;
            Ok(CheckRecord {
                check: name.into(),
                cell: format!("n={n} k={k}"),
                passed,
            })
        })
        .collect()
}

/// `δ_k ∘ δ_{k+1} = 0` on the mode's slices.
fn d_squared(ctx: &Ctx<'_>, n: usize, k: u32) -> Result<bool, CliError> {
    let e = ctx.engine();
    let lower = e.differential_matrix(n, k, ctx.mode()).map_err(|x| ctx.fail(n, k, x))?;
    let upper = e
        .differential_matrix(n, k + 1, ctx.mode())
        .map_err(|x| ctx.fail(n, k + 1, x))?;
    Ok(lower.mul(&upper).is_zero())
}

/// `[θ, η]` stays in the mode's slice for a few sampled `θ ∈ Der_k`, `η ∈ Der_1`.
fn bracket_closure(ctx: &Ctx<'_>, n: usize, k: u32) -> Result<bool, CliError> {
    const SAMPLES: usize = 3;
    let e = ctx.engine();
    let mode = ctx.mode();
    let a = e.derivation_basis(n, k, mode).map_err(|x| ctx.fail(n, k, x))?;
    let b = e.derivation_basis(n, 1, mode).map_err(|x| ctx.fail(n, 1, x))?;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(true);
    }
    let target = e.derivation_basis(n, k + 1, mode).map_err(|x| ctx.fail(n, k + 1, x))?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.job.seed ^ ((n as u64) << 32) ^ k as u64);
    for _ in 0..SAMPLES {
        let theta = a.derivation(&SparseVec::unit(rng.gen_range(0..a.dim())));
        let eta = b.derivation(&SparseVec::unit(rng.gen_range(0..b.dim())));
        let br = e.bracket_derivations(&theta, &eta).map_err(|x| ctx.fail(n, k + 1, x))?;
        if target.from_pointed(&br.to_pointed(&target.layout)).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
