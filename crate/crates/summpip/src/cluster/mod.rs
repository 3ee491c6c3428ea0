//! Spectral clustering of the sentence graph: symmetric normalized
//! Laplacian, the k smallest eigenvectors as a row embedding (rows
//! normalized), then seeded k-means on the rows.

mod kmeans;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::SentenceGraph;

pub use kmeans::kmeans;

/// Residual bound each eigenpair must satisfy: `||L v - lambda v|| <= 1e-6`.
pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Row embedding from the k smallest eigenvectors of the Laplacian.
#[derive(Debug, Clone)]
pub struct SpectralEmbedding {
    /// n x k matrix; row i is sentence i's feature vector, rows unit-length
    /// (zero rows left zero).
    pub matrix: DMatrix<f64>,
    /// The k smallest eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
}

impl SpectralEmbedding {
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.matrix.nrows())
            .map(|i| self.matrix.row(i).iter().copied().collect())
            .collect()
    }
}

/// Sentence index -> cluster id in `[0, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAssignment {
    pub labels: Vec<usize>,
    pub k: usize,
}

impl ClusterAssignment {
    /// Number of clusters that actually received a sentence.
    pub fn occupied_clusters(&self) -> usize {
        let mut seen = vec![false; self.k.max(self.labels.len())];
        let mut count = 0;
        for &l in &self.labels {
            if !seen[l] {
                seen[l] = true;
                count += 1;
            }
        }
        count
    }
}

/// Symmetric normalized Laplacian `L = I - D^{-1/2} A D^{-1/2}`. Isolated
/// nodes get an identity row/column.
pub fn laplacian(graph: &SentenceGraph) -> DMatrix<f64> {
    let n = graph.n();
    assert!(n >= 1, "graph must have at least one node");
    let mut adjacency = DMatrix::<f64>::zeros(n, n);
    for ((i, j), _) in graph.edges() {
        let w = graph.adjacency_weight(i, j);
        adjacency[(i, j)] = w;
        adjacency[(j, i)] = w;
    }
    let inv_sqrt_degree: Vec<f64> = (0..n)
        .map(|i| {
            let d: f64 = adjacency.row(i).sum();
            if d > 0.0 {
                1.0 / d.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let mut l = DMatrix::<f64>::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            if adjacency[(i, j)] != 0.0 {
                l[(i, j)] -= inv_sqrt_degree[i] * adjacency[(i, j)] * inv_sqrt_degree[j];
            }
        }
    }
    l
}

/// Eigenvectors of the k smallest eigenvalues, then row normalization.
/// Fails when any retained eigenpair misses the residual tolerance.
pub fn spectral_embed(l: &DMatrix<f64>, k: usize) -> Result<SpectralEmbedding> {
    let n = l.nrows();
    assert!(k >= 1 && k <= n, "need 1 <= k <= n (k={k}, n={n})");
    let eigen = l.clone().symmetric_eigen();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[a]
            .total_cmp(&eigen.eigenvalues[b])
            .then(a.cmp(&b))
    });

    let mut matrix = DMatrix::<f64>::zeros(n, k);
    let mut eigenvalues = Vec::with_capacity(k);
    for (col, &idx) in order.iter().take(k).enumerate() {
        let lambda = eigen.eigenvalues[idx];
        let v = eigen.eigenvectors.column(idx);
        let residual = (l * v - lambda * v).norm();
        if residual > EIGEN_RESIDUAL_TOLERANCE {
            return Err(Error::EigenResidual {
                residual,
                tolerance: EIGEN_RESIDUAL_TOLERANCE,
            });
        }
        // Canonical sign: first component of meaningful magnitude positive.
        let sign = v
            .iter()
            .find(|x| x.abs() > 1e-12)
            .map_or(1.0, |&x| if x < 0.0 { -1.0 } else { 1.0 });
        for row in 0..n {
            matrix[(row, col)] = sign * v[row];
        }
        eigenvalues.push(lambda);
    }

    for row in 0..n {
        let norm: f64 = (0..k)
            .map(|c| matrix[(row, c)] * matrix[(row, c)])
            .sum::<f64>()
            .sqrt();
        if norm > 1e-12 {
            for c in 0..k {
                matrix[(row, c)] /= norm;
            }
        }
    }
    Ok(SpectralEmbedding {
        matrix,
        eigenvalues,
    })
}

/// Full clustering: Laplacian, spectral embedding, k-means. Graphs with
/// `n <= k` bypass the solver and give every sentence its own label.
pub fn cluster_sentences(graph: &SentenceGraph, k: usize, seed: u64) -> Result<ClusterAssignment> {
    assert!(k >= 1, "k must be at least 1");
    let n = graph.n();
    if n <= k {
        return Ok(ClusterAssignment {
            labels: (0..n).collect(),
            k,
        });
    }
    let l = laplacian(graph);
    let embedding = spectral_embed(&l, k)?;
    Ok(kmeans(&embedding.rows(), k, seed))
}

/// Debug dump: one `global_index<TAB>label` line per sentence.
pub fn dump_assignment(assignment: &ClusterAssignment) -> String {
    let mut out = String::new();
    for (i, &label) in assignment.labels.iter().enumerate() {
        out.push_str(&format!("{i}\t{label}\n"));
    }
    out
}
