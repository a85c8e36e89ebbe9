use super::{ChaoticRng, Individual};
use crate::Real;

/// Binary tournament on rank, then crowding distance. Two distinct indices
/// are drawn from the chaotic stream; ties on both criteria go to the first
/// drawn.
pub fn tournament_select<'a, F: Real>(
    population: &'a [Individual<F>],
    rng: &mut ChaoticRng<F>,
) -> &'a Individual<F> {
    let n = population.len();
    if n == 1 {
        return &population[0];
    }
    let first = rng.next_index(n);
    let mut second = rng.next_index(n);
    while second == first {
        second = rng.next_index(n);
    }
    let a = &population[first];
    let b = &population[second];
    if b.rank < a.rank || (b.rank == a.rank && b.crowding > a.crowding) {
        b
    } else {
        a
    }
}

/// Intermediate crossover: per gene, `child = p1 + r (p2 - p1)` with a fresh
/// chaotic draw `r`, clamped to the gene bounds.
pub fn intermediate_crossover<F: Real>(
    p1: &[F],
    p2: &[F],
    bounds: &[(F, F)],
    rng: &mut ChaoticRng<F>,
) -> Vec<F> {
    p1.iter()
        .zip(p2)
        .zip(bounds)
        .map(|((&a, &b), &(lo, hi))| {
            let r = rng.next_value();
            (a + r * (b - a)).max(lo).min(hi)
        })
        .collect()
}

/// Gaussian mutation with sigma = 10% of each gene's range, normals taken
/// from the chaotic stream, result clamped to bounds. Zero-width bounds
/// leave the gene unchanged.
pub fn gaussian_mutate<F: Real>(
    parent: &[F],
    bounds: &[(F, F)],
    rng: &mut ChaoticRng<F>,
) -> Vec<F> {
    let sigma_frac = F::of(0.1);
    parent
        .iter()
        .zip(bounds)
        .map(|(&g, &(lo, hi))| {
            let range = hi - lo;
            if range <= F::zero() {
                return g;
            }
            let z = rng.next_standard_normal();
            (g + sigma_frac * range * z).max(lo).min(hi)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ind(rank: usize, crowding: f64) -> Individual<f64> {
        Individual {
            genes: vec![0.0],
            objectives: vec![0.0, 0.0],
            rank,
            crowding,
        }
    }

    #[test]
    fn lower_rank_wins() {
        let pop = vec![ind(1, 0.0), ind(2, 10.0)];
        let mut rng = ChaoticRng::default();
        for _ in 0..20 {
            assert_eq!(tournament_select(&pop, &mut rng).rank, 1);
        }
    }

    #[test]
    fn higher_crowding_breaks_rank_tie() {
        let pop = vec![ind(1, 0.5), ind(1, 2.0)];
        let mut rng = ChaoticRng::default();
        for _ in 0..20 {
            assert_eq!(tournament_select(&pop, &mut rng).crowding, 2.0);
        }
    }

    #[test]
    fn full_tie_returns_first_drawn() {
        let pop = vec![ind(1, 1.0), ind(1, 1.0)];
        let mut probe = ChaoticRng::<f64>::default();
        let mut rng = ChaoticRng::<f64>::default();
        let first = probe.next_index(2);
        let winner = tournament_select(&pop, &mut rng);
        assert!(std::ptr::eq(winner, &pop[first]));
    }

    #[test]
    fn crossover_identical_parents() {
        let bounds = [(0.0, 100.0); 3];
        let p = [1.0, 2.0, 3.0];
        let mut rng = ChaoticRng::default();
        assert_eq!(intermediate_crossover(&p, &p, &bounds, &mut rng), p.to_vec());
    }

    #[test]
    fn crossover_first_draw_value() {
        // p1 = 0, p2 = 100, first map draw r = 0.6464508 -> 64.64508
        let bounds = [(0.0f64, 100.0)];
        let mut rng = ChaoticRng::default();
        let child = intermediate_crossover(&[0.0], &[100.0], &bounds, &mut rng);
        assert!((child[0] - 64.64508).abs() < 1e-4, "got {}", child[0]);
    }

    #[test]
    fn crossover_endpoints() {
        // r = 0 -> p1, r -> 1 -> p2 (checked through the formula directly)
        let a = 2.0f64;
        let b = 5.0f64;
        assert_eq!(a + 0.0 * (b - a), a);
        assert_eq!(a + 1.0 * (b - a), b);
    }

    #[test]
    fn mutation_sigma_scale() {
        // sample std of the applied perturbation across 10^4 draws is ~10%
        // of the gene range (wide bounds so clamping never binds)
        let bounds = [(-1e6, 1e6)];
        let range = 2e6;
        let mut rng = ChaoticRng::default();
        let n = 10_000;
        let perturbations: Vec<f64> = (0..n)
            .map(|_| gaussian_mutate(&[0.0], &bounds, &mut rng)[0])
            .collect();
        let mean = perturbations.iter().sum::<f64>() / n as f64;
        let var = perturbations
            .iter()
            .map(|v| (v - mean).powi(2))
            .sum::<f64>()
            / n as f64;
        let sd_frac = var.sqrt() / range;
        assert!(
            (0.095..0.105).contains(&sd_frac),
            "sample std {sd_frac} of range"
        );
    }

    #[test]
    fn mutation_clamps_to_bounds() {
        let bounds = [(0.0, 1.0)];
        let mut rng = ChaoticRng::default();
        for _ in 0..200 {
            let child = gaussian_mutate(&[1.0], &bounds, &mut rng);
            assert!(child[0] <= 1.0 && child[0] >= 0.0);
        }
    }

    #[test]
    fn zero_width_bounds_leave_gene_unchanged() {
        let bounds = [(1.0, 1.0)];
        let mut rng = ChaoticRng::default();
        assert_eq!(gaussian_mutate(&[1.0], &bounds, &mut rng), vec![1.0]);
    }
}
