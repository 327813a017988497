//! Benchmark instance generation.
//!
//! Instances are drawn on a grid of node counts, processing-time ranges,
//! distance ranges and maximum temperatures, with a number of random
//! variations per grid cell. Processing times and distances are uniform
//! integers in their ranges; the distance matrix is symmetrized and then
//! replaced by its metric closure so the triangle inequality holds.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::temperature::{Instance, ProfilePair};
use crate::Units;

/// One combination of data parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub n: usize,
    /// Inclusive processing-time range.
    pub processing: (Units, Units),
    /// Inclusive distance range.
    pub distance: (Units, Units),
    pub max_temp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub node_counts: Vec<usize>,
    pub processing_ranges: Vec<(Units, Units)>,
    pub distance_ranges: Vec<(Units, Units)>,
    pub max_temps: Vec<f64>,
    pub variations: usize,
    pub master_seed: u64,
}

impl GenConfig {
    /// The 10 × 2 × 2 × 2 × 5 = 400 instance benchmark grid.
    pub fn benchmark(master_seed: u64) -> Self {
        Self {
            node_counts: alloc::vec![10, 50],
            processing_ranges: alloc::vec![(10, 20), (10, 100)],
            distance_ranges: alloc::vec![(10, 20), (10, 100)],
            max_temps: alloc::vec![20.0, 40.0, 60.0, 80.0, 100.0],
            variations: 10,
            master_seed,
        }
    }

    /// Grid cells in a fixed order: node count, processing range, distance
    /// range, maximum temperature.
    pub fn cells(&self) -> Vec<GridCell> {
        let mut out = Vec::new();
        for &n in &self.node_counts {
            for &processing in &self.processing_ranges {
                for &distance in &self.distance_ranges {
                    for &max_temp in &self.max_temps {
                        out.push(GridCell {
                            n,
                            processing,
                            distance,
                            max_temp,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.node_counts.len()
            * self.processing_ranges.len()
            * self.distance_ranges.len()
            * self.max_temps.len()
            * self.variations
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every `(cell, variation)` of the grid with its generated instance.
    pub fn generate(&self) -> Vec<(GridCell, usize, Instance)> {
        let mut out = Vec::with_capacity(self.len());
        for cell in self.cells() {
            for v in 0..self.variations {
                out.push((cell, v, generate_instance(&cell, v, self.master_seed)));
            }
        }
        out
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Derives a seed from a base seed and a list of words, order-sensitive.
pub fn derive_seed(base: u64, words: &[u64]) -> u64 {
    words
        .iter()
        .fold(splitmix64(base), |acc, &w| splitmix64(acc ^ splitmix64(w)))
}

/// Seed of one instance. Depends only on the master seed, the cell's
/// parameters and the variation index, so a cell generates the same
/// instances whether or not the rest of the grid is generated.
pub fn instance_seed(cell: &GridCell, variation: usize, master_seed: u64) -> u64 {
    derive_seed(
        master_seed,
        &[
            cell.n as u64,
            cell.processing.0,
            cell.processing.1,
            cell.distance.0,
            cell.distance.1,
            cell.max_temp.to_bits(),
            variation as u64,
        ],
    )
}

/// Draws one instance of `cell`. The profile pair is set to linear; it is
/// a run parameter and callers override it.
pub fn generate_instance(cell: &GridCell, variation: usize, master_seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(cell, variation, master_seed));
    random_instance(
        cell.n,
        cell.processing,
        cell.distance,
        cell.max_temp,
        ProfilePair::default(),
        &mut rng,
    )
}

/// Uniform processing times and symmetric uniform distances, closed under
/// shortest paths.
pub fn random_instance<R: Rng + ?Sized>(
    n: usize,
    processing: (Units, Units),
    distance: (Units, Units),
    max_temp: f64,
    profile: ProfilePair,
    rng: &mut R,
) -> Instance {
    let p: Vec<Units> = (0..n)
        .map(|_| rng.gen_range(processing.0..=processing.1))
        .collect();
    let mut d = alloc::vec![0 as Units; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.gen_range(distance.0..=distance.1);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    metric_closure(&mut d, n);
    Instance::from_flat(p, d, max_temp, profile).expect("square matrix by construction")
}

/// Replaces a row-major `n × n` matrix by its all-pairs shortest path
/// lengths (Floyd–Warshall).
pub fn metric_closure(d: &mut [Units], n: usize) {
    assert_eq!(d.len(), n * n, "matrix must be n x n");
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            for j in 0..n {
                let via = dik.saturating_add(d[k * n + j]);
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn grid_has_400_instances() {
        let cfg = GenConfig::benchmark(1);
        assert_eq!(cfg.cells().len(), 40);
        assert_eq!(cfg.len(), 400);
    }

    #[test]
    fn closure_fixes_long_edge() {
        let mut d = vec![0, 10, 100, 10, 0, 10, 100, 10, 0];
        metric_closure(&mut d, 3);
        assert_eq!(d, vec![0, 10, 20, 10, 0, 10, 20, 10, 0]);
    }

    #[test]
    fn closure_is_identity_on_metric_input() {
        let mut d = vec![0, 10, 20, 10, 0, 15, 20, 15, 0];
        let before = d.clone();
        metric_closure(&mut d, 3);
        assert_eq!(d, before);
    }

    #[test]
    fn narrow_range_needs_no_closure() {
        let cell = GridCell {
            n: 10,
            processing: (10, 20),
            distance: (10, 20),
            max_temp: 20.0,
        };
        for v in 0..10 {
            let inst = generate_instance(&cell, v, 7);
            for i in 0..10 {
                for j in 0..10 {
                    if i != j {
                        let dij = inst.distance(i, j);
                        assert!((10..=20).contains(&dij));
                    }
                }
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cell = GridCell {
            n: 10,
            processing: (10, 100),
            distance: (10, 100),
            max_temp: 60.0,
        };
        assert_eq!(generate_instance(&cell, 3, 42), generate_instance(&cell, 3, 42));
        assert_ne!(generate_instance(&cell, 3, 42), generate_instance(&cell, 4, 42));
        assert_ne!(generate_instance(&cell, 3, 42), generate_instance(&cell, 3, 43));
    }
}
