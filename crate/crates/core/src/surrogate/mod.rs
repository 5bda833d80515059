//! Fail-fast surrogate: a set of inscribed poles (maximal circles) and
//! piers (interior segments) that is strictly a subset of the source
//! polygon. A colliding surrogate therefore implies a collision of the
//! polygon itself, which lets the engine resolve obviously colliding
//! queries at a fraction of the full cost.

mod pier;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geom::poi::pole_search;
use crate::geom::{Circle, Edge, Point, SimplePolygon, Transformation};
use crate::scalar::Scalar;

/// Generation budgets for a surrogate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SurrogateConfig {
    pub max_poles: usize,
    /// Stop generating poles once the next radius drops below this fraction
    /// of the first pole's radius.
    pub min_pole_radius_ratio: f64,
    /// Relative tolerance of the pole searches.
    pub poi_precision: f64,
    pub n_piers: usize,
    /// Monte-Carlo budget for pier selection.
    pub interior_samples: usize,
}

impl Default for SurrogateConfig {
    fn default() -> Self {
        Self {
            max_poles: 8,
            min_pole_radius_ratio: 0.1,
            poi_precision: 1e-3,
            n_piers: 2,
            interior_samples: 5_000,
        }
    }
}

/// Fail-fast representation of a polygon. Poles are ordered by descending
/// radius so queries test the most-likely-to-collide element first.
#[derive(Clone, Debug, PartialEq)]
pub struct Surrogate<T> {
    poles: Vec<Circle<T>>,
    piers: Vec<Edge<T>>,
    config: SurrogateConfig,
}

impl<T: Scalar> Surrogate<T> {
    pub fn generate(s: &SimplePolygon<T>, config: &SurrogateConfig) -> Self {
        let poles = generate_poles(s, config);
        let piers = generate_piers(s, &poles, config);
        Self { poles, piers, config: *config }
    }

    /// A surrogate with no elements: the fail-fast stage degenerates to a
    /// no-op and every query runs the full check.
    pub fn empty() -> Self {
        Self {
            poles: Vec::new(),
            piers: Vec::new(),
            config: SurrogateConfig { max_poles: 0, n_piers: 0, ..SurrogateConfig::default() },
        }
    }

    pub fn poles(&self) -> &[Circle<T>] {
        &self.poles
    }

    pub fn piers(&self) -> &[Edge<T>] {
        &self.piers
    }

    pub fn config(&self) -> &SurrogateConfig {
        &self.config
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty() && self.piers.is_empty()
    }

    pub fn transformed(&self, t: &Transformation<T>) -> Self {
        Self {
            poles: self
                .poles
                .iter()
                .map(|c| Circle::new(t.apply(c.center), c.radius))
                .collect(),
            piers: self
                .piers
                .iter()
                .map(|e| Edge::new(t.apply(e.start), t.apply(e.end)))
                .collect(),
            config: self.config,
        }
    }
}

/// Largest inscribed circle: center maximizes the distance to the boundary
/// (within `precision × diameter`), radius is that distance.
pub fn generate_poi<T: Scalar>(s: &SimplePolygon<T>, precision: f64) -> Circle<T> {
    let (center, dist) = pole_search(s.edges(), s.aabb(), &[], precision);
    Circle::new(center, dist)
}

/// Iteratively generates non-overlapping inscribed circles; every pole from
/// a previous iteration acts as a hole shrinking the clearance function of
/// the next search.
pub fn generate_poles<T: Scalar>(s: &SimplePolygon<T>, cfg: &SurrogateConfig) -> Vec<Circle<T>> {
    let mut poles: Vec<Circle<T>> = Vec::new();
    for _ in 0..cfg.max_poles {
        let (center, dist) = pole_search(s.edges(), s.aabb(), &poles, cfg.poi_precision);
        if dist <= T::EPS {
            break;
        }
        if let Some(first) = poles.first() {
            if dist < T::cast(cfg.min_pole_radius_ratio) * first.radius {
                break;
            }
        }
        poles.push(Circle::new(center, dist));
    }
    // the max clearance is non-increasing across iterations; the search
    // tolerance can still produce tiny inversions, so order explicitly
    poles.sort_by(|a, b| b.radius.partial_cmp(&a.radius).unwrap());
    poles
}

/// Greedily selects up to `n_piers` interior chords, each maximizing the
/// reduction of the residual metric over the polygon's interior samples.
pub fn generate_piers<T: Scalar>(
    s: &SimplePolygon<T>,
    poles: &[Circle<T>],
    cfg: &SurrogateConfig,
) -> Vec<Edge<T>> {
    pier::generate(s, poles, cfg)
}

/// Mean, over deterministic interior sample points, of the distance to the
/// nearest surrogate element (zero for points covered by a pole). Lower is
/// better; adding an element can only lower it.
pub fn residual_metric<T: Scalar>(
    s: &SimplePolygon<T>,
    poles: &[Circle<T>],
    piers: &[Edge<T>],
    n_samples: usize,
) -> T {
    let samples = interior_samples(s, n_samples);
    if samples.is_empty() {
        return T::zero();
    }
    let sum = samples
        .iter()
        .fold(T::zero(), |acc, &p| acc + pier::element_distance(p, poles, piers, s.diameter()));
    sum / T::cast(samples.len() as f64)
}

/// Fixed seed so identical inputs always sample identical interior points.
const SAMPLING_SEED: u64 = 7;

/// Rejection-samples points from the polygon's interior, deterministically.
pub(crate) fn interior_samples<T: Scalar>(s: &SimplePolygon<T>, n: usize) -> Vec<Point<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
    let bb = s.aabb();
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    let max_attempts = n.saturating_mul(50).max(1000);
    while out.len() < n && attempts < max_attempts {
        attempts += 1;
        let p = Point::new(
            bb.x_min + T::cast(rng.gen::<f64>()) * bb.width(),
            bb.y_min + T::cast(rng.gen::<f64>()) * bb.height(),
        );
        if s.contains_point(p) {
            out.push(p);
        }
    }
    out
}
