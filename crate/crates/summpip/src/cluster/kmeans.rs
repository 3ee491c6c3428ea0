//! Seeded k-means: k-means++ initialization, Lloyd iterations to a fixpoint
//! (capped at 300), empty-cluster repair, best of 10 restarts by
//! within-cluster sum of squares. Fully deterministic for a fixed seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ClusterAssignment;

const MAX_ITERATIONS: usize = 300;
const RESTARTS: usize = 10;

pub fn kmeans(points: &[Vec<f64>], k: usize, seed: u64) -> ClusterAssignment {
    let n = points.len();
    assert!(k >= 1 && k <= n, "need 1 <= k <= n (k={k}, n={n})");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut best_labels: Option<Vec<usize>> = None;
    let mut best_wcss = f64::INFINITY;
    for _ in 0..RESTARTS {
        let (labels, wcss) = run_once(points, k, &mut rng);
        if wcss < best_wcss {
            best_wcss = wcss;
            best_labels = Some(labels);
        }
    }
    ClusterAssignment {
        labels: best_labels.expect("at least one restart ran"),
        k,
    }
}

fn run_once(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> (Vec<usize>, f64) {
    let n = points.len();
    let mut centroids = plus_plus_init(points, k, rng);
    let mut labels = vec![usize::MAX; n];

    for _ in 0..MAX_ITERATIONS {
        let new_labels: Vec<usize> = points
            .iter()
            .map(|p| nearest_centroid(p, &centroids))
            .collect();
        let mut assigned = new_labels;
        repair_empty_clusters(points, &centroids, &mut assigned, k);
        if assigned == labels {
            break;
        }
        labels = assigned;
        update_centroids(points, &labels, &mut centroids, k);
    }

    let wcss: f64 = points
        .iter()
        .zip(&labels)
        .map(|(p, &l)| squared_distance(p, &centroids[l]))
        .sum();
    (labels, wcss)
}

/// k-means++: first centroid uniform, the rest sampled proportional to the
/// squared distance from the nearest already-chosen centroid.
fn plus_plus_init(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    centroids.push(points[rng.random_range(0..n)].clone());
    let mut d2: Vec<f64> = points
        .iter()
        .map(|p| squared_distance(p, &centroids[0]))
        .collect();

    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let chosen = if total > 0.0 {
            let mut target = rng.random::<f64>() * total;
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if target < w {
                    pick = i;
                    break;
                }
                target -= w;
            }
            pick
        } else {
            // All points coincide with a centroid; fall back to uniform.
            rng.random_range(0..n)
        };
        centroids.push(points[chosen].clone());
        let last = centroids.last().expect("just pushed");
        for (i, p) in points.iter().enumerate() {
            d2[i] = d2[i].min(squared_distance(p, last));
        }
    }
    centroids
}

fn nearest_centroid(point: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centroid) in centroids.iter().enumerate() {
        let d = squared_distance(point, centroid);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    best
}

/// Give each empty cluster the point farthest from its current centroid,
/// stealing only from clusters that keep at least one member.
fn repair_empty_clusters(
    points: &[Vec<f64>],
    centroids: &[Vec<f64>],
    labels: &mut [usize],
    k: usize,
) {
    loop {
        let mut sizes = vec![0usize; k];
        for &l in labels.iter() {
            sizes[l] += 1;
        }
        let Some(empty) = (0..k).find(|&c| sizes[c] == 0) else {
            return;
        };
        let mut steal = None;
        let mut steal_d = -1.0;
        for (i, p) in points.iter().enumerate() {
            if sizes[labels[i]] < 2 {
                continue;
            }
            let d = squared_distance(p, &centroids[labels[i]]);
            if d > steal_d {
                steal_d = d;
                steal = Some(i);
            }
        }
        match steal {
            Some(i) => labels[i] = empty,
            None => return,
        }
    }
}

fn update_centroids(points: &[Vec<f64>], labels: &[usize], centroids: &mut [Vec<f64>], k: usize) {
    let dim = points[0].len();
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &l) in points.iter().zip(labels) {
        counts[l] += 1;
        for (s, &v) in sums[l].iter_mut().zip(p) {
            *s += v;
        }
    }
    for c in 0..k {
        if counts[c] > 0 {
            for s in &mut sums[c] {
                *s /= counts[c] as f64;
            }
            centroids[c] = sums[c].clone();
        }
    }
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wcss_of(points: &[Vec<f64>], labels: &[usize], k: usize) -> f64 {
        let dim = points[0].len();
        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &l) in points.iter().zip(labels) {
            counts[l] += 1;
            for (s, &v) in sums[l].iter_mut().zip(p) {
                *s += v;
            }
        }
        let mut total = 0.0;
        for (p, &l) in points.iter().zip(labels) {
            for (d, (&s, &v)) in sums[l].iter().zip(p).enumerate() {
                let _ = d;
                let mean = s / counts[l] as f64;
                total += (v - mean) * (v - mean);
            }
        }
        total
    }

    /// Exhaustive oracle: best 2-partition by WCSS over all label vectors.
    fn brute_force_best_wcss(points: &[Vec<f64>], k: usize) -> f64 {
        let n = points.len();
        let mut best = f64::INFINITY;
        let mut labels = vec![0usize; n];
        loop {
            let mut used = vec![false; k];
            for &l in &labels {
                used[l] = true;
            }
            if used.iter().all(|&u| u) {
                best = best.min(wcss_of(points, &labels, k));
            }
            // Odometer increment over k^n label vectors.
            let mut pos = 0;
            loop {
                if pos == n {
                    return best;
                }
                labels[pos] += 1;
                if labels[pos] < k {
                    break;
                }
                labels[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn separates_two_obvious_groups() {
        let points = vec![
            vec![0.0, 0.0],
            vec![0.0, 0.1],
            vec![10.0, 10.0],
            vec![10.0, 10.1],
        ];
        let assignment = kmeans(&points, 2, 42);
        assert_eq!(assignment.labels[0], assignment.labels[1]);
        assert_eq!(assignment.labels[2], assignment.labels[3]);
        assert_ne!(assignment.labels[0], assignment.labels[2]);

        let got = wcss_of(&points, &assignment.labels, 2);
        let best = brute_force_best_wcss(&points, 2);
        assert!((got - best).abs() < 1e-12, "wcss {got} vs oracle {best}");
    }

    #[test]
    fn k_equals_n_gives_singletons() {
        let points = vec![vec![0.0], vec![1.0], vec![2.0], vec![5.0]];
        let assignment = kmeans(&points, 4, 42);
        let mut sorted = assignment.labels.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        assert!(wcss_of(&points, &assignment.labels, 4) < 1e-18);
    }

    #[test]
    fn identical_points_are_deterministic() {
        let points = vec![vec![1.0, 1.0]; 6];
        let a = kmeans(&points, 2, 7);
        let b = kmeans(&points, 2, 7);
        assert_eq!(a, b);
        assert!(a.labels.iter().all(|&l| l < 2));
    }

    #[test]
    fn matches_exhaustive_oracle_on_small_inputs() {
        let points = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.2],
            vec![0.4, 0.9],
            vec![5.0, 5.0],
            vec![5.5, 4.8],
            vec![9.0, 0.0],
        ];
        for k in 2..=3 {
            let assignment = kmeans(&points, k, 123);
            let got = wcss_of(&points, &assignment.labels, k);
            let best = brute_force_best_wcss(&points, k);
            assert!(
                got <= best + 1e-9,
                "k={k}: wcss {got} worse than oracle {best}"
            );
        }
    }

    #[test]
    fn different_seeds_still_valid_labels() {
        let points = vec![vec![0.0], vec![0.1], vec![9.0], vec![9.1], vec![5.0]];
        for seed in 0..5 {
            let assignment = kmeans(&points, 2, seed);
            assert_eq!(assignment.labels.len(), 5);
            assert!(assignment.labels.iter().all(|&l| l < 2));
        }
    }
}
