//! Reproducible sampling of box points and comparable pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::ordered_metric::{Point, ProductPoint, ProductSpace};
use crate::scalar::Scalar;

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_RADIUS: f64 = 10.0;

/// Settings shared by every sampled check.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub samples: usize,
    pub seed: u64,
    /// Replaces infinite box edges.
    pub radius: f64,
    /// Draw only from the `n`-per-axis grid of the clamped box.
    pub snap_to_grid: Option<usize>,
    /// A sampled inequality counts as violated when `lhs − rhs` exceeds this.
    /// `None` picks 0 for exact scalars and `1e-12` for floats.
    pub slack_tol: Option<f64>,
}

impl SamplerConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SamplerConfig {
            samples,
            seed,
            radius: DEFAULT_RADIUS,
            snap_to_grid: None,
            slack_tol: None,
        }
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = radius;
        self
    }

    pub fn snapped(mut self, points_per_axis: usize) -> Self {
        self.snap_to_grid = Some(points_per_axis);
        self
    }

    pub fn slack_tolerance<S: Scalar>(&self) -> S {
        slack_tolerance(self.slack_tol)
    }

    pub fn radius<S: Scalar>(&self) -> Result<S> {
        if !(self.radius > 0.0) {
            return Err(input(format!("sampling radius must be positive, got {}", self.radius)));
        }
        S::from_f64(self.radius).ok_or_else(|| input("sampling radius must be finite"))
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig::new(DEFAULT_SAMPLES, 0)
    }
}

/// Resolves an optional slack tolerance: 0 for exact scalars and `1e-12`
/// for floats unless overridden.
pub fn slack_tolerance<S: Scalar>(explicit: Option<f64>) -> S {
    match explicit {
        Some(t) => S::from_f64(t).unwrap_or_else(S::zero),
        None if S::EXACT => S::zero(),
        None => S::from_f64(1e-12).unwrap_or_else(S::zero),
    }
}

/// `i`-th of `n` equispaced values on `[lo, hi]`; the endpoints are exact.
pub fn grid_value<S: Scalar>(lo: &S, hi: &S, i: usize, n: usize) -> S {
    if i == 0 {
        return lo.clone();
    }
    if i + 1 == n {
        return hi.clone();
    }
    lo.clone() + (hi.clone() - lo.clone()) * S::from_usize(i) / S::from_usize(n - 1)
}

pub(crate) struct Sampler<S> {
    rng: ChaCha8Rng,
    x_box: (Vec<S>, Vec<S>),
    y_box: (Vec<S>, Vec<S>),
    snap: Option<usize>,
}

impl<S: Scalar> Sampler<S> {
    pub fn new(space: &ProductSpace<S>, config: &SamplerConfig) -> Result<Self> {
        let radius = config.radius::<S>()?;
        if let Some(n) = config.snap_to_grid {
            if n < 2 {
                return Err(input("grid snapping needs at least 2 points per axis"));
            }
        }
        Ok(Sampler {
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            x_box: space.x.clamped(&radius),
            y_box: space.y.clamped(&radius),
            snap: config.snap_to_grid,
        })
    }

    fn coord(&mut self, lo: &S, hi: &S) -> S {
        match self.snap {
            Some(n) => {
                let i = self.rng.gen_range(0..n);
                grid_value(lo, hi, i, n)
            }
            None => {
                let t: f64 = self.rng.gen();
                let t = S::from_f64(t).unwrap_or_else(S::zero);
                lo.clone() + (hi.clone() - lo.clone()) * t
            }
        }
    }

    fn draw(&mut self, bounds: &(Vec<S>, Vec<S>)) -> Point<S> {
        let (lo, hi) = bounds;
        Point::new(
            lo.iter()
                .zip(hi)
                .map(|(l, h)| self.coord(l, h))
                .collect(),
        )
    }

    pub fn point_x(&mut self) -> Point<S> {
        let b = self.x_box.clone();
        self.draw(&b)
    }

    pub fn point_y(&mut self) -> Point<S> {
        let b = self.y_box.clone();
        self.draw(&b)
    }

    pub fn product_point(&mut self) -> ProductPoint<S> {
        let x = self.point_x();
        let y = self.point_y();
        ProductPoint::new(x, y)
    }

    /// Two comparable points `(hi, lo)` with `lo ≤ hi` in the product order,
    /// built from the meet and join of two raw draws.
    pub fn comparable_pair(&mut self) -> (ProductPoint<S>, ProductPoint<S>) {
        let p = self.product_point();
        let q = self.product_point();
        let hi = ProductPoint::new(p.x.join(&q.x), p.y.meet(&q.y));
        let lo = ProductPoint::new(p.x.meet(&q.x), p.y.join(&q.y));
        (hi, lo)
    }

    /// Two ordered points `(low, high)` of one factor space.
    pub fn ordered_x(&mut self) -> (Point<S>, Point<S>) {
        let a = self.point_x();
        let b = self.point_x();
        (a.meet(&b), a.join(&b))
    }

    pub fn ordered_y(&mut self) -> (Point<S>, Point<S>) {
        let a = self.point_y();
        let b = self.point_y();
        (a.meet(&b), a.join(&b))
    }
}

/// Corners of the clamped product box, in lexicographic index order.
pub(crate) fn box_corners<S: Scalar>(space: &ProductSpace<S>, radius: &S) -> Vec<ProductPoint<S>> {
    let (xl, xh) = space.x.clamped(radius);
    let (yl, yh) = space.y.clamped(radius);
    let lows: Vec<S> = xl.into_iter().chain(yl).collect();
    let highs: Vec<S> = xh.into_iter().chain(yh).collect();
    let dim = lows.len();
    let dx = space.x.dim();
    (0..1usize << dim)
        .map(|mask| {
            let coords: Vec<S> = (0..dim)
                .map(|i| {
                    if mask >> (dim - 1 - i) & 1 == 1 {
                        highs[i].clone()
                    } else {
                        lows[i].clone()
                    }
                })
                .collect();
            let (x, y) = coords.split_at(dx);
            ProductPoint::new(Point::new(x.to_vec()), Point::new(y.to_vec()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered_metric::SpaceDescriptor;

    fn space() -> ProductSpace<f64> {
        ProductSpace::new(
            SpaceDescriptor::interval(None, Some(0.0)).unwrap(),
            SpaceDescriptor::bounded(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap(),
        )
    }

    #[test]
    fn draws_are_reproducible_and_in_box() {
        let s = space();
        let cfg = SamplerConfig::new(10, 42);
        let mut a = Sampler::new(&s, &cfg).unwrap();
        let mut b = Sampler::new(&s, &cfg).unwrap();
        for _ in 0..200 {
            let p = a.product_point();
            assert_eq!(p, b.product_point());
            assert!(s.contains(&p));
            assert!(p.x.coords()[0] >= -10.0);
        }
    }

    #[test]
    fn comparable_pairs_are_ordered() {
        let s = space();
        let mut sampler = Sampler::new(&s, &SamplerConfig::new(0, 7)).unwrap();
        for _ in 0..200 {
            let (hi, lo) = sampler.comparable_pair();
            assert!(s.product_leq(&lo, &hi).unwrap());
        }
    }

    #[test]
    fn snapped_draws_hit_grid() {
        let s = space();
        let cfg = SamplerConfig::new(0, 3).with_radius(1.0).snapped(5);
        let mut sampler = Sampler::new(&s, &cfg).unwrap();
        for _ in 0..100 {
            let p = sampler.product_point();
            let x = p.x.coords()[0];
            assert_eq!((x * 4.0).round(), x * 4.0);
        }
    }

    #[test]
    fn corners_cover_the_box() {
        let corners = box_corners(&space(), &1.0);
        assert_eq!(corners.len(), 8);
        assert_eq!(corners[0], ProductPoint::from_f64(&[-1.0], &[0.0, 0.0]).unwrap());
        assert_eq!(corners[7], ProductPoint::from_f64(&[0.0], &[1.0, 2.0]).unwrap());
    }

    #[test]
    fn grid_endpoints_exact() {
        assert_eq!(grid_value(&-1.0, &0.0, 100, 101), 0.0);
        assert_eq!(grid_value(&-1.0, &0.0, 0, 101), -1.0);
        assert_eq!(grid_value(&0.0, &1.0, 50, 101), 0.5);
    }

    #[test]
    fn bad_radius_rejected() {
        let cfg = SamplerConfig::new(1, 0).with_radius(0.0);
        assert!(Sampler::new(&space(), &cfg).is_err());
    }
}
