use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    crowding_distance, gaussian_mutate, hypervolume, intermediate_crossover, non_dominated_sort,
    tournament_select, ChaoticRng,
};
use crate::Real;

/// Population element: genes, evaluated objectives, front rank (1-based)
/// and crowding distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual<F: Real> {
    pub genes: Vec<F>,
    pub objectives: Vec<F>,
    pub rank: usize,
    pub crowding: F,
}

/// NSGA-II hyperparameters. Defaults follow the reference configuration:
/// population 100, crossover fraction 0.8, mutation fraction 0.2, binary
/// tournaments, Pareto front fraction 0.7, stall tolerance 1e-4 over a
/// 100-generation window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NsgaConfig<F: Real> {
    pub pop_size: usize,
    pub crossover_fraction: f64,
    pub mutation_fraction: f64,
    pub tournament_size: usize,
    pub pareto_fraction: f64,
    pub stall_tolerance: f64,
    pub stall_window: usize,
    pub max_generations: usize,
    pub bounds: Vec<(F, F)>,
    /// Apply the Pareto-fraction cap on the rank-1 survivors every
    /// generation (default) instead of never.
    pub truncate_every_generation: bool,
}

impl<F: Real> NsgaConfig<F> {
    pub fn new(bounds: Vec<(F, F)>) -> Self {
        NsgaConfig {
            pop_size: 100,
            crossover_fraction: 0.8,
            mutation_fraction: 0.2,
            tournament_size: 2,
            pareto_fraction: 0.7,
            stall_tolerance: 1e-4,
            stall_window: 100,
            max_generations: 500,
            bounds,
            truncate_every_generation: true,
        }
    }

    fn front_cap(&self) -> usize {
        (self.pareto_fraction * self.pop_size as f64).ceil() as usize
    }
}

/// Rank-1 set returned by the optimizer; pairwise mutually non-dominated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoFront<F: Real> {
    pub members: Vec<Individual<F>>,
}

/// One generation-log entry, streamed as CSV by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenLogRow<F: Real> {
    pub generation: usize,
    pub front_size: usize,
    pub hypervolume: F,
    pub stall_metric: F,
}

/// Runs chaotic NSGA-II: logistic-map-seeded initial population, binary
/// tournaments, intermediate crossover and Gaussian mutation as offspring
/// operators, merged elitist survival with crowding truncation, and a
/// hypervolume-based stall criterion.
///
/// Fitness evaluation is a parallel pure map over the child genes; results
/// are written back by index so the run is bit-reproducible for a fixed
/// seed regardless of worker scheduling.
pub fn nsga2_run<F, E>(
    evaluator: &E,
    config: &NsgaConfig<F>,
    rng: &mut ChaoticRng<F>,
) -> (ParetoFront<F>, Vec<GenLogRow<F>>)
where
    F: Real,
    E: Fn(&[F]) -> Vec<F> + Sync,
{
    let n = config.pop_size;
    assert!(n >= 2, "population size must be at least 2");

    // initial population: consecutive bounds-scaled logistic draws
    let genes: Vec<Vec<F>> = (0..n)
        .map(|_| {
            config
                .bounds
                .iter()
                .map(|&(lo, hi)| lo + rng.next_value() * (hi - lo))
                .collect()
        })
        .collect();
    let mut population = evaluate_all(evaluator, genes);
    rank_population(&mut population);

    let mut log = Vec::new();
    let mut reference: Option<Vec<F>> = None;
    let mut prev_hv: Option<F> = None;
    let mut stall_changes: Vec<f64> = Vec::new();

    record_generation(
        0,
        &population,
        &mut reference,
        &mut prev_hv,
        &mut stall_changes,
        config,
        &mut log,
    );

    for gen in 1..=config.max_generations {
        // offspring: crossover_fraction and mutation_fraction shares of N,
        // any remainder copied from tournament winners unchanged
        let n_cross = (config.crossover_fraction * n as f64).round() as usize;
        let n_mut = ((config.mutation_fraction * n as f64).round() as usize).min(n - n_cross);
        let n_copy = n - n_cross - n_mut;

        let mut child_genes: Vec<Vec<F>> = Vec::with_capacity(n);
        for _ in 0..n_cross {
            let p1 = tournament_select(&population, rng).genes.clone();
            let p2 = tournament_select(&population, rng).genes.clone();
            child_genes.push(intermediate_crossover(&p1, &p2, &config.bounds, rng));
        }
        for _ in 0..n_mut {
            let p = tournament_select(&population, rng).genes.clone();
            child_genes.push(gaussian_mutate(&p, &config.bounds, rng));
        }
        for _ in 0..n_copy {
            child_genes.push(tournament_select(&population, rng).genes.clone());
        }

        let children = evaluate_all(evaluator, child_genes);

        // merged elitist survival
        let mut merged: Vec<Individual<F>> = population;
        merged.extend(children);
        population = environmental_selection(merged, config);
        rank_population(&mut population);

        let stop = record_generation(
            gen,
            &population,
            &mut reference,
            &mut prev_hv,
            &mut stall_changes,
            config,
            &mut log,
        );
        if stop {
            break;
        }
    }

    let members: Vec<Individual<F>> = population.into_iter().filter(|i| i.rank == 1).collect();
    (ParetoFront { members }, log)
}

fn evaluate_all<F, E>(evaluator: &E, genes: Vec<Vec<F>>) -> Vec<Individual<F>>
where
    F: Real,
    E: Fn(&[F]) -> Vec<F> + Sync,
{
    genes
        .into_par_iter()
        .map(|g| {
            let objectives = evaluator(&g);
            Individual {
                genes: g,
                objectives,
                rank: 0,
                crowding: F::zero(),
            }
        })
        .collect()
}

fn rank_population<F: Real>(population: &mut [Individual<F>]) {
    let fronts = non_dominated_sort(population);
    for front in &fronts {
        crowding_distance(population, front);
    }
}

/// Refills the next population front-by-front from the merged pool,
/// crowding-truncating the split front, with the rank-1 contribution capped
/// at `ceil(pareto_fraction * N)` when per-generation truncation is on.
fn environmental_selection<F: Real>(
    mut merged: Vec<Individual<F>>,
    config: &NsgaConfig<F>,
) -> Vec<Individual<F>> {
    let n = config.pop_size;
    let fronts = non_dominated_sort(&mut merged);
    for front in &fronts {
        crowding_distance(&mut merged, front);
    }

    let mut selected: Vec<usize> = Vec::with_capacity(n);
    let mut leftovers: Vec<usize> = Vec::new();
    for (fi, front) in fronts.iter().enumerate() {
        if selected.len() == n {
            leftovers.extend(front.iter().copied());
            continue;
        }
        let mut room = n - selected.len();
        if fi == 0 && config.truncate_every_generation {
            room = room.min(config.front_cap());
        }
        if front.len() <= room {
            selected.extend(front.iter().copied());
        } else {
            let mut by_crowding = front.clone();
            by_crowding.sort_by(|&a, &b| {
                merged[b]
                    .crowding
                    .partial_cmp(&merged[a].crowding)
                    .unwrap()
            });
            selected.extend(by_crowding[..room].iter().copied());
            leftovers.extend(by_crowding[room..].iter().copied());
        }
    }
    // the cap can starve the population when nearly everything is rank 1;
    // backfill from the excluded individuals in crowding order
    if selected.len() < n {
        leftovers.sort_by(|&a, &b| {
            merged[a]
                .rank
                .cmp(&merged[b].rank)
                .then(merged[b].crowding.partial_cmp(&merged[a].crowding).unwrap())
        });
        let need = n - selected.len();
        selected.extend(leftovers[..need].iter().copied());
    }

    let mut keep = vec![false; merged.len()];
    let mut order = vec![usize::MAX; merged.len()];
    for (pos, &i) in selected.iter().enumerate() {
        keep[i] = true;
        order[i] = pos;
    }
    let mut out: Vec<(usize, Individual<F>)> = merged
        .into_iter()
        .enumerate()
        .filter(|(i, _)| keep[*i])
        .map(|(i, ind)| (order[i], ind))
        .collect();
    out.sort_by_key(|(pos, _)| *pos);
    out.into_iter().map(|(_, ind)| ind).collect()
}

/// Appends a log row; returns true when the stall criterion fires.
#[allow(clippy::too_many_arguments)]
fn record_generation<F: Real>(
    generation: usize,
    population: &[Individual<F>],
    reference: &mut Option<Vec<F>>,
    prev_hv: &mut Option<F>,
    stall_changes: &mut Vec<f64>,
    config: &NsgaConfig<F>,
    log: &mut Vec<GenLogRow<F>>,
) -> bool {
    let front: Vec<Vec<F>> = population
        .iter()
        .filter(|i| i.rank == 1)
        .map(|i| i.objectives.clone())
        .collect();

    if reference.is_none() {
        // 1.1 x componentwise max over the first generation's front
        let m = front[0].len();
        let scale = F::of(1.1);
        let r: Vec<F> = (0..m)
            .map(|k| {
                let mx = front
                    .iter()
                    .map(|o| o[k])
                    .fold(F::neg_infinity(), F::max);
                mx * scale
            })
            .collect();
        *reference = Some(r);
    }

    let hv = hypervolume(&front, reference.as_ref().unwrap());
    let stall = match *prev_hv {
        None => f64::INFINITY,
        Some(prev) => {
            let hv64 = hv.to_f64().unwrap_or(f64::NAN);
            let prev64 = prev.to_f64().unwrap_or(f64::NAN);
            let denom = hv64.abs().max(f64::MIN_POSITIVE);
            let change = (hv64 - prev64).abs() / denom;
            stall_changes.push(change);
            if stall_changes.len() > config.stall_window {
                stall_changes.remove(0);
            }
            if stall_changes.len() == config.stall_window {
                stall_changes.iter().sum::<f64>() / config.stall_window as f64
            } else {
                f64::INFINITY
            }
        }
    };
    *prev_hv = Some(hv);

    log.push(GenLogRow {
        generation,
        front_size: front.len(),
        hypervolume: hv,
        stall_metric: F::of(if stall.is_finite() { stall } else { -1.0 }),
    });
    stall.is_finite() && stall < config.stall_tolerance
}
