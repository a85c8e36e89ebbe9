use crate::Real;

use super::nsga2::Individual;

/// Weak Pareto dominance: `u` dominates `v` iff `u_i <= v_i` everywhere and
/// `u_j < v_j` somewhere. Vectors must have equal arity (checked by the
/// callers that build populations).
pub fn dominates<F: Real>(u: &[F], v: &[F]) -> bool {
    debug_assert_eq!(u.len(), v.len(), "objective arity mismatch");
    let mut strictly_better = false;
    for (a, b) in u.iter().zip(v) {
        if a > b {
            return false;
        }
        if a < b {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Fast non-dominated sort: partitions the population into fronts
/// `F1, F2, ...` and writes each individual's rank (1-based front index).
/// Returns the fronts as index lists into the population.
pub fn non_dominated_sort<F: Real>(population: &mut [Individual<F>]) -> Vec<Vec<usize>> {
    let n = population.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];

    for i in 0..n {
        for j in i + 1..n {
            if dominates(&population[i].objectives, &population[j].objectives) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&population[j].objectives, &population[i].objectives) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
    }

    let mut fronts: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    let mut rank = 1usize;
    while !current.is_empty() {
        for &i in &current {
            population[i].rank = rank;
        }
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        fronts.push(std::mem::take(&mut current));
        current = next;
        rank += 1;
    }
    fronts
}

/// Assigns crowding distances within one front (indices into the
/// population). Boundary individuals per objective get +infinity; interior
/// ones accumulate the normalized gap between their neighbours. An objective
/// with zero range contributes nothing.
pub fn crowding_distance<F: Real>(population: &mut [Individual<F>], front: &[usize]) {
    for &i in front {
        population[i].crowding = F::zero();
    }
    if front.is_empty() {
        return;
    }
    let m = population[front[0]].objectives.len();
    let mut order: Vec<usize> = front.to_vec();
    for obj in 0..m {
        order.sort_by(|&a, &b| {
            population[a].objectives[obj]
                .partial_cmp(&population[b].objectives[obj])
                .unwrap()
        });
        let lo = population[order[0]].objectives[obj];
        let hi = population[*order.last().unwrap()].objectives[obj];
        population[order[0]].crowding = F::infinity();
        population[*order.last().unwrap()].crowding = F::infinity();
        let range = hi - lo;
        if range <= F::zero() {
            continue;
        }
        for w in 1..order.len().saturating_sub(1) {
            let prev = population[order[w - 1]].objectives[obj];
            let next = population[order[w + 1]].objectives[obj];
            let i = order[w];
            if population[i].crowding.is_finite() {
                population[i].crowding = population[i].crowding + (next - prev) / range;
            }
        }
    }
}
