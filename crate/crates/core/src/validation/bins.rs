use crate::error::{Error, Result};

/// Equal-probability cells of the unit ball: `shells` radial shells with cut
/// radii `(k / shells)^(1/n)`, crossed with the `2^n` coordinate orthants.
///
/// Under the uniform law every cell has probability exactly
/// `1 / (shells * 2^n)`: shells enclose equal volume because volume scales as
/// `r^n`, and orthants are congruent under sign flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinPartition {
    shells: usize,
    dim: usize,
}

/// Orthant counts beyond this would not fit any realistic sample anyway.
const MAX_ORTHANT_DIM: usize = 24;

impl BinPartition {
    pub fn new(shells: usize, dim: usize) -> Result<Self> {
        if shells == 0 {
            return Err(Error::InvalidSpec("shell count must be positive".into()));
        }
        if dim == 0 || dim > MAX_ORTHANT_DIM {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 1,
                max: MAX_ORTHANT_DIM,
            });
        }
        Ok(BinPartition { shells, dim })
    }

    pub fn shells(&self) -> usize {
        self.shells
    }

    pub fn orthants(&self) -> usize {
        1 << self.dim
    }

    pub fn bin_count(&self) -> usize {
        self.shells * self.orthants()
    }

    pub fn cell_probability(&self) -> f64 {
        1.0 / self.bin_count() as f64
    }

    /// Outer radius of shell `k - 1`, i.e. `(k / shells)^(1/n)`.
    pub fn cut_radius(&self, k: usize) -> f64 {
        (k as f64 / self.shells as f64).powf(1.0 / self.dim as f64)
    }

    /// Shell index from the volume fraction `r^n`.
    pub fn shell_of(&self, r: f64) -> usize {
        let t = r.powi(self.dim as i32);
        ((t * self.shells as f64) as usize).min(self.shells - 1)
    }

    pub fn orthant_of(&self, u: &[f64]) -> usize {
        u.iter().enumerate().fold(
            0,
            |acc, (i, v)| if *v >= 0.0 { acc | (1 << i) } else { acc },
        )
    }

    /// Cell index `shell * 2^n + orthant` of a ball point.
    pub fn bin_of(&self, u: &[f64]) -> usize {
        let r = crate::linalg::norm(u);
        self.shell_of(r) * self.orthants() + self.orthant_of(u)
    }

    pub fn counts<'a>(&self, points: impl IntoIterator<Item = &'a Vec<f64>>) -> Vec<u64> {
        let mut counts = vec![0u64; self.bin_count()];
        for u in points {
            counts[self.bin_of(u)] += 1;
        }
        counts
    }
}
