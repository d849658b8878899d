//! Timed, verified benchmark trials.
//!
//! Each (algorithm, trial) pair solves its instance once; only the solve call
//! is timed. With the `parallel` feature and `jobs > 1`, pairs run on a
//! dedicated thread pool. Records always come back in (algorithm, trial)
//! order, each algorithm's trial rows followed by its mean row.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algorithm::Algorithm;
use crate::gen::{GenError, GenSpec};
use crate::geom::{Cover, Point};
use crate::io::{BenchRecord, Trial};
use crate::oracle::verify_cover;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{algorithm} produced an invalid cover on {instance} (trial {trial}): {uncovered} of {n} points uncovered, first at index {first}")]
    InvalidCover {
        algorithm: Algorithm,
        instance: String,
        trial: u32,
        n: usize,
        uncovered: usize,
        first: usize,
    },
    #[cfg(feature = "parallel")]
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Clone, Debug)]
pub enum Source {
    /// Regenerated for trial `t` with seed `spec.seed + t`.
    Generated(GenSpec),
    /// A fixed point set, identical in every trial.
    Points { name: String, points: Vec<Point> },
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub source: Source,
    pub trials: u32,
    /// Seeded permutation applied before solving; trial `t` uses `seed + t`.
    pub shuffle_seed: Option<u64>,
    pub eps: f64,
    pub jobs: usize,
}

impl BenchConfig {
    pub fn new(algorithms: Vec<Algorithm>, source: Source) -> Self {
        BenchConfig {
            algorithms,
            source,
            trials: 1,
            shuffle_seed: None,
            eps: crate::oracle::DEFAULT_EPS,
            jobs: 1,
        }
    }
}

/// Runs `algorithm` once and times only the solve call.
pub fn solve_timed(algorithm: Algorithm, points: &[Point]) -> (Cover, Duration) {
    let start = Instant::now();
    let cover = algorithm.solve(points);
    (cover, start.elapsed())
}

pub fn shuffle_points(points: &mut [Point], seed: u64) {
    points.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
}

struct Instance {
    name: String,
    seed: u64,
    points: Vec<Point>,
}

fn build_instance(cfg: &BenchConfig, trial: u32) -> Result<Instance, GenError> {
    let (name, seed, mut points) = match &cfg.source {
        Source::Generated(spec) => {
            let spec = GenSpec {
                seed: spec.seed.wrapping_add(trial as u64),
                ..*spec
            };
            (
                format!("{}-n{}", spec.shape, spec.n),
                spec.seed,
                spec.generate()?,
            )
        }
        Source::Points { name, points } => {
            (name.clone(), cfg.shuffle_seed.unwrap_or(0), points.clone())
        }
    };
    if let Some(s) = cfg.shuffle_seed {
        shuffle_points(&mut points, s.wrapping_add(trial as u64));
    }
    Ok(Instance { name, seed, points })
}

fn run_one(
    cfg: &BenchConfig,
    algorithm: Algorithm,
    trial: u32,
    inst: &Instance,
) -> Result<BenchRecord, BenchError> {
    let (cover, elapsed) = solve_timed(algorithm, &inst.points);
    let report = verify_cover(&inst.points, &cover, cfg.eps);
    if !report.valid {
        return Err(BenchError::InvalidCover {
            algorithm,
            instance: inst.name.clone(),
            trial,
            n: inst.points.len(),
            uncovered: report.uncovered.len(),
            first: report.uncovered[0].index,
        });
    }
    Ok(BenchRecord {
        algorithm: algorithm.name().to_string(),
        instance: inst.name.clone(),
        n: inst.points.len(),
        cover_size: cover.len() as f64,
        wall_time_s: elapsed.as_secs_f64(),
        seed: inst.seed,
        trial: Trial::Index(trial),
    })
}

fn run_pairs(cfg: &BenchConfig, instances: &[Instance]) -> Result<Vec<BenchRecord>, BenchError> {
    let pairs: Vec<(Algorithm, u32)> = cfg
        .algorithms
        .iter()
        .flat_map(|&a| (0..cfg.trials).map(move |t| (a, t)))
        .collect();

    #[cfg(feature = "parallel")]
    if cfg.jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()?;
        return pool.install(|| {
            pairs
                .par_iter()
                .map(|&(a, t)| run_one(cfg, a, t, &instances[t as usize]))
                .collect()
        });
    }

    pairs
        .iter()
        .map(|&(a, t)| run_one(cfg, a, t, &instances[t as usize]))
        .collect()
}

fn mean_row(rows: &[BenchRecord], seed: u64) -> BenchRecord {
    let k = rows.len() as f64;
    BenchRecord {
        algorithm: rows[0].algorithm.clone(),
        instance: rows[0].instance.clone(),
        n: (rows.iter().map(|r| r.n as f64).sum::<f64>() / k).round() as usize,
        cover_size: rows.iter().map(|r| r.cover_size).sum::<f64>() / k,
        wall_time_s: rows.iter().map(|r| r.wall_time_s).sum::<f64>() / k,
        seed,
        trial: Trial::Mean,
    }
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    if cfg.trials == 0 {
        return Err(BenchError::NoTrials);
    }
    let instances = (0..cfg.trials)
        .map(|t| build_instance(cfg, t))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = run_pairs(cfg, &instances)?;

    let base_seed = instances[0].seed;
    let mut out = Vec::with_capacity(rows.len() + cfg.algorithms.len());
    for chunk in rows.chunks(cfg.trials as usize) {
        out.extend_from_slice(chunk);
        out.push(mean_row(chunk, base_seed));
    }
    Ok(out)
}
