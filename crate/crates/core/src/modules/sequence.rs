use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A sequence of semisimple modules `(S_0, ..., S_L)` stored as the
/// multiplicity matrix `s(i, l)`: rows are layers, columns are vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemisimpleSequence {
    layers: usize,
    vertices: usize,
    data: Vec<u64>,
}

impl SemisimpleSequence {
    pub fn zeros(layers: usize, vertices: usize) -> Self {
        SemisimpleSequence {
            layers,
            vertices,
            data: vec![0; layers * vertices],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        let layers = rows.len();
        let vertices = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != vertices) {
            return Err(Error::ShapeMismatch {
                rows: layers,
                cols: vertices,
                found_rows: layers,
                found_cols: bad.len(),
            });
        }
        Ok(SemisimpleSequence {
            layers,
            vertices,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Number of layers, `L + 1`.
    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn get(&self, vertex: usize, layer: usize) -> u64 {
        self.data[layer * self.vertices + vertex]
    }

    pub fn set(&mut self, vertex: usize, layer: usize, value: u64) {
        self.data[layer * self.vertices + vertex] = value;
    }

    pub fn add_to(&mut self, vertex: usize, layer: usize, by: u64) {
        self.data[layer * self.vertices + vertex] += by;
    }

    pub fn row(&self, layer: usize) -> &[u64] {
        &self.data[layer * self.vertices..(layer + 1) * self.vertices]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.layers).map(|l| self.row(l).to_vec()).collect()
    }

    pub fn total_dimension(&self) -> u64 {
        self.data.iter().sum()
    }

    /// Total multiplicity of each simple across all layers.
    pub fn column_totals(&self) -> Vec<u64> {
        (0..self.vertices)
            .map(|i| (0..self.layers).map(|l| self.get(i, l)).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn check_shape(&self, layers: usize, vertices: usize) -> Result<()> {
        if self.layers != layers || self.vertices != vertices {
            return Err(Error::ShapeMismatch {
                rows: layers,
                cols: vertices,
                found_rows: self.layers,
                found_cols: self.vertices,
            });
        }
        Ok(())
    }

    /// Layering of a direct sum.
    pub fn sum(&self, other: &SemisimpleSequence) -> Result<SemisimpleSequence> {
        other.check_shape(self.layers, self.vertices)?;
        Ok(SemisimpleSequence {
            layers: self.layers,
            vertices: self.vertices,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }
}

impl fmt::Display for SemisimpleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in 0..self.layers {
            let row: Vec<String> = self.row(l).iter().map(u64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
