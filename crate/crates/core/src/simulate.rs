//! Seeded generators for the demonstration joint distributions and for
//! synthetic backcross genotype/phenotype data.
//!
//! All draws come from stream 0 of the spec's seed, in a fixed per-point
//! order that does not depend on the noise level:
//!
//! | shape           | draws per point                                   |
//! |-----------------|---------------------------------------------------|
//! | `parabola`      | u (x), z (noise)                                  |
//! | `circle`        | u (angle), z (x noise), z (y noise)               |
//! | `cross`         | u (x), u (sign)                                   |
//! | `four_clusters` | u (cluster), z (x noise), z (y noise)             |
//! | `sinusoid`      | u (x), z (noise)                                  |
//! | `independent`   | u (x), u (y)                                      |
//!
//! `u` is a uniform on `[0, 1)` and `z` a standard normal.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::rng::{uniform, uniform_in, RngSpec};
use crate::sample::Sample;
use crate::scan::MarkerMatrix;

/// Probability that adjacent markers carry the same genotype.
pub const LINKAGE_SAME_PROB: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Parabola,
    Circle,
    Cross,
    FourClusters,
    Sinusoid,
    Independent,
}

impl Shape {
    pub const ALL: [Shape; 6] = [
        Shape::Parabola,
        Shape::Circle,
        Shape::Cross,
        Shape::FourClusters,
        Shape::Sinusoid,
        Shape::Independent,
    ];

    /// Shapes with dependent coordinates but zero population correlation.
    pub const DEPENDENT: [Shape; 5] = [
        Shape::Parabola,
        Shape::Circle,
        Shape::Cross,
        Shape::FourClusters,
        Shape::Sinusoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Parabola => "parabola",
            Shape::Circle => "circle",
            Shape::Cross => "cross",
            Shape::FourClusters => "four_clusters",
            Shape::Sinusoid => "sinusoid",
            Shape::Independent => "independent",
        }
    }

    pub fn default_noise(self) -> f64 {
        match self {
            Shape::Parabola | Shape::Sinusoid => 0.05,
            Shape::Circle | Shape::FourClusters => 0.1,
            Shape::Cross | Shape::Independent => 0.0,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Shape::ALL
            .into_iter()
            .find(|shape| shape.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown shape '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSpec {
    pub shape: Shape,
    pub n: usize,
    pub noise: f64,
    pub seed: u64,
}

impl ShapeSpec {
    /// Spec with the shape's default noise level.
    pub fn new(shape: Shape, n: usize, seed: u64) -> Self {
        Self {
            shape,
            n,
            noise: shape.default_noise(),
            seed,
        }
    }

    pub fn with_noise(mut self, noise: f64) -> Self {
        self.noise = noise;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::Parameter(format!(
                "n must be at least 4, got {}",
                self.n
            )));
        }
        if !self.noise.is_finite() || self.noise < 0.0 {
            return Err(Error::Parameter(format!(
                "noise must be a nonnegative number, got {}",
                self.noise
            )));
        }
        Ok(())
    }
}

pub fn simulate_shape(spec: &ShapeSpec) -> Result<(Sample, Sample)> {
    spec.validate()?;
    let mut rng = RngSpec::new(spec.seed, 0).rng();
    let s = spec.noise;
    let mut xs = Vec::with_capacity(spec.n);
    let mut ys = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let (x, y) = match spec.shape {
            Shape::Parabola => {
                let x = uniform_in(&mut rng, -1.0, 1.0);
                let z: f64 = rng.sample(StandardNormal);
                (x, x * x + s * z)
            }
            Shape::Circle => {
                let theta = uniform_in(&mut rng, 0.0, 2.0 * PI);
                let zx: f64 = rng.sample(StandardNormal);
                let zy: f64 = rng.sample(StandardNormal);
                (theta.cos() + s * zx, theta.sin() + s * zy)
            }
            Shape::Cross => {
                let x = uniform_in(&mut rng, -1.0, 1.0);
                let sign = if uniform(&mut rng) < 0.5 { -1.0 } else { 1.0 };
                (x, sign * x)
            }
            Shape::FourClusters => {
                // centers (1,0), (0,1), (-1,0), (0,-1)
                let (cx, cy) = match (4.0 * uniform(&mut rng)) as usize {
                    0 => (1.0, 0.0),
                    1 => (0.0, 1.0),
                    2 => (-1.0, 0.0),
                    _ => (0.0, -1.0),
                };
                let zx: f64 = rng.sample(StandardNormal);
                let zy: f64 = rng.sample(StandardNormal);
                (cx + s * zx, cy + s * zy)
            }
            Shape::Sinusoid => {
                let x = uniform_in(&mut rng, -1.0, 1.0);
                let z: f64 = rng.sample(StandardNormal);
                (x, (2.0 * PI * x).cos() + s * z)
            }
            Shape::Independent => {
                let x = uniform_in(&mut rng, -1.0, 1.0);
                (x, uniform_in(&mut rng, -1.0, 1.0))
            }
        };
        xs.push(x);
        ys.push(y);
    }
    Ok((Sample::from_column(xs)?, Sample::from_column(ys)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackcrossSpec {
    pub n_individuals: usize,
    pub n_markers: usize,
    pub causal_marker: Option<usize>,
    pub effect_size: f64,
    pub missing_rate: f64,
    pub seed: u64,
}

impl BackcrossSpec {
    /// A null design: no causal marker, no missing data.
    pub fn new(n_individuals: usize, n_markers: usize, seed: u64) -> Self {
        Self {
            n_individuals,
            n_markers,
            causal_marker: None,
            effect_size: 0.0,
            missing_rate: 0.0,
            seed,
        }
    }

    pub fn causal(mut self, marker: usize, effect_size: f64) -> Self {
        self.causal_marker = Some(marker);
        self.effect_size = effect_size;
        self
    }

    pub fn missing_rate(mut self, rate: f64) -> Self {
        self.missing_rate = rate;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_individuals < 4 {
            return Err(Error::Parameter(format!(
                "need at least 4 individuals, got {}",
                self.n_individuals
            )));
        }
        if self.n_markers < 1 {
            return Err(Error::Parameter("need at least 1 marker".into()));
        }
        if let Some(j) = self.causal_marker {
            if j >= self.n_markers {
                return Err(Error::Parameter(format!(
                    "causal marker {j} out of range for {} markers",
                    self.n_markers
                )));
            }
        }
        if !self.effect_size.is_finite() {
            return Err(Error::Parameter("effect size must be finite".into()));
        }
        if !(0.0..1.0).contains(&self.missing_rate) {
            return Err(Error::Parameter(format!(
                "missing rate {} not in [0, 1)",
                self.missing_rate
            )));
        }
        Ok(())
    }
}

/// Synthetic backcross: genotypes plus one phenotype per individual.
#[derive(Debug, Clone, PartialEq)]
pub struct Backcross {
    pub markers: MarkerMatrix,
    pub phenotype: Vec<f64>,
}

/// Per individual, draws in order: one uniform per marker for the genotype
/// chain (the first picks 0/1 with equal odds, later ones keep the previous
/// genotype with probability [`LINKAGE_SAME_PROB`]), one standard normal for
/// the phenotype noise, then one uniform per marker for missingness. The
/// phenotype uses the true genotype even where it is later masked.
pub fn simulate_backcross(spec: &BackcrossSpec) -> Result<Backcross> {
    spec.validate()?;
    let (n, m) = (spec.n_individuals, spec.n_markers);
    let mut rng = RngSpec::new(spec.seed, 0).rng();
    let mut columns = vec![Vec::with_capacity(n); m];
    let mut phenotype = Vec::with_capacity(n);
    let mut genotype = vec![0u8; m];
    for _ in 0..n {
        for j in 0..m {
            let u = uniform(&mut rng);
            genotype[j] = if j == 0 {
                u8::from(u < 0.5)
            } else if u < LINKAGE_SAME_PROB {
                genotype[j - 1]
            } else {
                1 - genotype[j - 1]
            };
        }
        let z: f64 = rng.sample(StandardNormal);
        let signal = spec
            .causal_marker
            .map_or(0.0, |j| spec.effect_size * f64::from(genotype[j]));
        phenotype.push(signal + z);
        for (j, column) in columns.iter_mut().enumerate() {
            let missing = uniform(&mut rng) < spec.missing_rate;
            column.push(if missing { None } else { Some(genotype[j]) });
        }
    }
    let ids = (1..=m).map(|j| format!("m{j}")).collect();
    let markers = MarkerMatrix::new(ids, columns, 2)?;
    Ok(Backcross { markers, phenotype })
}
