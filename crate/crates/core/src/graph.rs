//! Undirected simple graphs, degree sequences and β-model sampling.
//!
//! Node ids are 1-based wherever they cross the public API.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::logistic::logistic;
use crate::{Error, Result};

/// Symmetric 0/1 adjacency with an empty diagonal, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<bool>,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Graph {
            n,
            adjacency: vec![false; n * n],
        })
    }

    /// Builds a graph from 1-based node pairs. Repeated and reversed pairs
    /// collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut graph = Graph::empty(n)?;
        for (i, j) in edges {
            graph.add_edge(i, j)?;
        }
        Ok(graph)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_node(i)?;
        self.check_node(j)?;
        if i == j {
            return Err(Error::SelfLoop { node: i });
        }
        let (a, b) = (i - 1, j - 1);
        self.adjacency[a * self.n + b] = true;
        self.adjacency[b * self.n + a] = true;
        Ok(())
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.n {
            Err(Error::NodeOutOfRange { node, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&e| e).count() / 2
    }

    /// Whether `{i, j}` is an edge (1-based ids; out-of-range ids give `false`).
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return false;
        }
        self.adjacency[(i - 1) * self.n + (j - 1)]
    }

    /// Edges as 1-based pairs `(i, j)` with `i < j`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            ((i + 1)..self.n)
                .filter(move |&j| self.adjacency[i * self.n + j])
                .map(move |j| (i + 1, j + 1))
        })
    }

    pub fn degrees(&self) -> DegreeSequence {
        let degrees = self
            .adjacency
            .chunks_exact(self.n)
            .map(|row| row.iter().filter(|&&e| e).count() as u32)
            .collect();
        DegreeSequence { degrees }
    }
}

/// A validated degree sequence: every entry at most `n - 1`, even total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<u32>", into = "Vec<u32>"))]
pub struct DegreeSequence {
    degrees: Vec<u32>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for (idx, &degree) in degrees.iter().enumerate() {
            if degree as usize > n - 1 {
                return Err(Error::DegreeOutOfRange {
                    node: idx + 1,
                    degree,
                    max: n - 1,
                });
            }
        }
        let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
        if sum % 2 == 1 {
            return Err(Error::OddDegreeSum { sum });
        }
        Ok(DegreeSequence { degrees })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.degrees
    }

    pub fn total(&self) -> u64 {
        self.degrees.iter().map(|&d| u64::from(d)).sum()
    }

    /// Degree of a 1-based node.
    pub fn get(&self, node: usize) -> Option<u32> {
        node.checked_sub(1)
            .and_then(|i| self.degrees.get(i))
            .copied()
    }

    /// Fails with [`Error::DegreeBoundary`] on the first node of degree 0 or
    /// `n - 1`; such a node has an infinite MLE.
    pub fn check_interior(&self) -> Result<()> {
        let max = self.len() as u32 - 1;
        match self.degrees.iter().position(|&d| d == 0 || d == max) {
            Some(idx) => Err(Error::DegreeBoundary {
                node: idx + 1,
                degree: self.degrees[idx],
            }),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<u32>> for DegreeSequence {
    type Error = Error;

    fn try_from(degrees: Vec<u32>) -> Result<Self> {
        DegreeSequence::new(degrees)
    }
}

impl From<DegreeSequence> for Vec<u32> {
    fn from(seq: DegreeSequence) -> Self {
        seq.degrees
    }
}

/// Node parameters `β`, all finite.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<f64>", into = "Vec<f64>"))]
pub struct BetaVector(Vec<f64>);

impl BetaVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: index + 1 });
        }
        Ok(BetaVector(values))
    }

    pub fn zeros(n: usize) -> Self {
        BetaVector(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `L_n = max_i |β_i|`.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, b| acc.max(b.abs()))
    }
}

impl TryFrom<Vec<f64>> for BetaVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        BetaVector::new(values)
    }
}

impl From<BetaVector> for Vec<f64> {
    fn from(beta: BetaVector) -> Self {
        beta.0
    }
}

/// Probability of the edge `{i, j}`: the logistic function of `β_i + β_j`.
#[inline]
pub fn edge_probability(beta_i: f64, beta_j: f64) -> f64 {
    logistic(beta_i + beta_j)
}

/// Uniform double in `[0, 1)` from the top 53 bits.
#[inline]
fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draws a graph from the β-model, visiting pairs `i < j` in row-major order.
pub fn sample_graph<R: RngCore + ?Sized>(beta: &BetaVector, rng: &mut R) -> Graph {
    let b = beta.as_slice();
    let n = b.len().max(1);
    let mut graph = Graph {
        n,
        adjacency: vec![false; n * n],
    };
    for i in 0..b.len() {
        for j in (i + 1)..b.len() {
            if unit_f64(rng) < edge_probability(b[i], b[j]) {
                graph.adjacency[i * n + j] = true;
                graph.adjacency[j * n + i] = true;
            }
        }
    }
    graph
}

/// Deterministic sampling keyed by `(seed, stream)`.
///
/// Each stream is an independent ChaCha8 keystream, so replication `k` of an
/// experiment with base seed `s` can run anywhere as `(s, k)`.
pub fn sample_graph_seeded(beta: &BetaVector, seed: u64, stream: u64) -> Graph {
    sample_graph(beta, &mut replication_rng(seed, stream))
}

/// The generator behind [`sample_graph_seeded`].
pub fn replication_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
