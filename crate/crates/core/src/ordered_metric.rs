//! Partially ordered metric spaces realised as finite-dimensional real boxes.
//!
//! Each space carries the L1 metric and the componentwise order. The product
//! `X × Y` uses the sum metric and the mixed order in which the first
//! coordinate ascends while the second descends:
//! `(u, v) ≤ (x, y)` iff `u ≤ x` in `X` and `y ≤ v` in `Y`.

use std::fmt;

use crate::error::{input, Error, Result};
use crate::scalar::Scalar;

/// One edge of a box axis. `Unbounded` is −∞ on a lower edge, +∞ on an upper.
#[derive(Debug, Clone, PartialEq)]
pub enum Edge<S> {
    Finite(S),
    Unbounded,
}

impl<S: Scalar> Edge<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            Edge::Finite(v) => Some(v),
            Edge::Unbounded => None,
        }
    }
}

/// A box `Π [lower_i, upper_i]` with componentwise order and L1 metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceDescriptor<S> {
    lower: Vec<Edge<S>>,
    upper: Vec<Edge<S>>,
    allow_degenerate: bool,
}

impl<S: Scalar> SpaceDescriptor<S> {
    /// Builds a box; every axis must satisfy `lower < upper`.
    pub fn new(lower: Vec<Edge<S>>, upper: Vec<Edge<S>>) -> Result<Self> {
        Self::build(lower, upper, false)
    }

    /// Like [`SpaceDescriptor::new`] but accepts `lower == upper` axes.
    pub fn with_degenerate_axes(lower: Vec<Edge<S>>, upper: Vec<Edge<S>>) -> Result<Self> {
        Self::build(lower, upper, true)
    }

    /// Bounded box from finite edges.
    pub fn bounded(lower: Vec<S>, upper: Vec<S>) -> Result<Self> {
        Self::new(
            lower.into_iter().map(Edge::Finite).collect(),
            upper.into_iter().map(Edge::Finite).collect(),
        )
    }

    /// One-dimensional interval; `None` marks an infinite edge.
    pub fn interval(lower: Option<S>, upper: Option<S>) -> Result<Self> {
        let edge = |v: Option<S>| v.map_or(Edge::Unbounded, Edge::Finite);
        Self::new(vec![edge(lower)], vec![edge(upper)])
    }

    fn build(lower: Vec<Edge<S>>, upper: Vec<Edge<S>>, allow_degenerate: bool) -> Result<Self> {
        if lower.is_empty() {
            return Err(input("space must have at least one axis"));
        }
        if lower.len() != upper.len() {
            return Err(input(format!(
                "lower has {} entries but upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            for edge in [lo, hi] {
                if let Edge::Finite(v) = edge {
                    if !v.is_finite() {
                        return Err(input(format!("axis {i}: non-finite edge")));
                    }
                }
            }
            if let (Edge::Finite(lo), Edge::Finite(hi)) = (lo, hi) {
                let ok = if allow_degenerate { lo <= hi } else { lo < hi };
                if !ok {
                    return Err(input(format!("axis {i}: empty interval [{lo}, {hi}]")));
                }
            }
        }
        Ok(Self {
            lower,
            upper,
            allow_degenerate,
        })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Edge<S>] {
        &self.lower
    }

    pub fn upper(&self) -> &[Edge<S>] {
        &self.upper
    }

    pub fn allows_degenerate(&self) -> bool {
        self.allow_degenerate
    }

    pub fn is_bounded(&self) -> bool {
        self.lower
            .iter()
            .chain(&self.upper)
            .all(|e| matches!(e, Edge::Finite(_)))
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        p.dim() == self.dim()
            && p.coords().iter().enumerate().all(|(i, c)| {
                c.is_finite()
                    && self.lower[i].finite().map_or(true, |lo| lo <= c)
                    && self.upper[i].finite().map_or(true, |hi| c <= hi)
            })
    }

    /// Finite box used for sampling and grids. An infinite edge is replaced
    /// by `±radius`, or by `finite_edge ∓ radius` when the finite edge lies
    /// beyond the radius.
    pub fn clamped(&self, radius: &S) -> (Vec<S>, Vec<S>) {
        let mut lows = Vec::with_capacity(self.dim());
        let mut highs = Vec::with_capacity(self.dim());
        for (lo, hi) in self.lower.iter().zip(&self.upper) {
            let (l, h) = match (lo, hi) {
                (Edge::Finite(l), Edge::Finite(h)) => (l.clone(), h.clone()),
                (Edge::Unbounded, Edge::Finite(h)) => {
                    (S::min_of(-radius.clone(), h.clone() - radius.clone()), h.clone())
                }
                (Edge::Finite(l), Edge::Unbounded) => {
                    (l.clone(), S::max_of(radius.clone(), l.clone() + radius.clone()))
                }
                (Edge::Unbounded, Edge::Unbounded) => (-radius.clone(), radius.clone()),
            };
            lows.push(l);
            highs.push(h);
        }
        (lows, highs)
    }

    fn check_dim(&self, p: &Point<S>) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(input(format!(
                "point has dimension {} but space has dimension {}",
                p.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// L1 distance `Σ |p_i − q_i|`.
    pub fn metric(&self, p: &Point<S>, q: &Point<S>) -> Result<S> {
        self.check_dim(p)?;
        self.check_dim(q)?;
        Ok(l1(p, q))
    }

    /// Componentwise order: `p ≤ q` iff `p_i ≤ q_i` for every `i`.
    pub fn leq(&self, p: &Point<S>, q: &Point<S>) -> Result<bool> {
        self.check_dim(p)?;
        self.check_dim(q)?;
        Ok(componentwise_leq(p, q))
    }
}

pub(crate) fn l1<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    p.0.iter()
        .zip(&q.0)
        .fold(S::zero(), |acc, (a, b)| acc + (a.clone() - b.clone()).abs())
}

pub(crate) fn componentwise_leq<S: Scalar>(p: &Point<S>, q: &Point<S>) -> bool {
    p.0.iter().zip(&q.0).all(|(a, b)| a <= b)
}

/// Free-function form of [`SpaceDescriptor::metric`].
pub fn metric<S: Scalar>(space: &SpaceDescriptor<S>, p: &Point<S>, q: &Point<S>) -> Result<S> {
    space.metric(p, q)
}

/// Free-function form of [`SpaceDescriptor::leq`].
pub fn leq<S: Scalar>(space: &SpaceDescriptor<S>, p: &Point<S>, q: &Point<S>) -> Result<bool> {
    space.leq(p, q)
}

/// A point of a box space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<S>(Vec<S>);

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Point(coords)
    }

    pub fn scalar(v: S) -> Self {
        Point(vec![v])
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![S::zero(); dim])
    }

    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        coords
            .iter()
            .map(|&c| S::from_f64(c).ok_or_else(|| input(format!("non-finite coordinate {c}"))))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<S> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(Scalar::is_finite)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::as_f64).collect()
    }

    /// Componentwise minimum (lattice meet).
    pub fn meet(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| S::min_of(a.clone(), b.clone()))
                .collect(),
        )
    }

    /// Componentwise maximum (lattice join).
    pub fn join(&self, other: &Self) -> Self {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| S::max_of(a.clone(), b.clone()))
                .collect(),
        )
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An element `(x, y)` of `X × Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint<S> {
    pub x: Point<S>,
    pub y: Point<S>,
}

impl<S: Scalar> ProductPoint<S> {
    pub fn new(x: Point<S>, y: Point<S>) -> Self {
        ProductPoint { x, y }
    }

    /// One-dimensional convenience constructor.
    pub fn scalars(x: S, y: S) -> Self {
        ProductPoint::new(Point::scalar(x), Point::scalar(y))
    }

    pub fn from_f64(x: &[f64], y: &[f64]) -> Result<Self> {
        Ok(ProductPoint::new(Point::from_f64(x)?, Point::from_f64(y)?))
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Coordinates of `x` followed by those of `y`.
    pub fn flat(&self) -> impl Iterator<Item = &S> {
        self.x.coords().iter().chain(self.y.coords())
    }
}

impl<S: Scalar> fmt::Display for ProductPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[x={}, y={}]", self.x, self.y)
    }
}

/// Direction of a product-order comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Below,
    Above,
}

/// `X × Y` with the sum metric and the mixed product order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace<S> {
    pub x: SpaceDescriptor<S>,
    pub y: SpaceDescriptor<S>,
}

impl<S: Scalar> ProductSpace<S> {
    pub fn new(x: SpaceDescriptor<S>, y: SpaceDescriptor<S>) -> Self {
        ProductSpace { x, y }
    }

    pub fn dim(&self) -> usize {
        self.x.dim() + self.y.dim()
    }

    pub fn contains(&self, p: &ProductPoint<S>) -> bool {
        self.x.contains(&p.x) && self.y.contains(&p.y)
    }

    pub fn check(&self, p: &ProductPoint<S>) -> Result<()> {
        if p.x.dim() != self.x.dim() || p.y.dim() != self.y.dim() {
            return Err(Error::Input(format!(
                "product point has dimensions ({}, {}) but space is ({}, {})",
                p.x.dim(),
                p.y.dim(),
                self.x.dim(),
                self.y.dim()
            )));
        }
        Ok(())
    }

    /// `d((x,y),(u,v)) = d_X(x,u) + d_Y(y,v)`.
    pub fn product_metric(&self, a: &ProductPoint<S>, b: &ProductPoint<S>) -> Result<S> {
        Ok(self.x.metric(&a.x, &b.x)? + self.y.metric(&a.y, &b.y)?)
    }

    /// `a ≤ b` iff `a.x ≤ b.x` in `X` and `b.y ≤ a.y` in `Y`.
    pub fn product_leq(&self, a: &ProductPoint<S>, b: &ProductPoint<S>) -> Result<bool> {
        Ok(self.x.leq(&a.x, &b.x)? && self.y.leq(&b.y, &a.y)?)
    }

    pub fn comparable(&self, a: &ProductPoint<S>, b: &ProductPoint<S>) -> Result<bool> {
        Ok(self.product_leq(a, b)? || self.product_leq(b, a)?)
    }

    /// How `a` relates to `b`, or `None` when they are incomparable.
    pub fn relation(&self, a: &ProductPoint<S>, b: &ProductPoint<S>) -> Result<Option<Relation>> {
        let below = self.product_leq(a, b)?;
        let above = self.product_leq(b, a)?;
        Ok(match (below, above) {
            (true, true) => Some(Relation::Equal),
            (true, false) => Some(Relation::Below),
            (false, true) => Some(Relation::Above),
            (false, false) => None,
        })
    }

    /// Least element of the clamped box in the product order.
    pub fn bottom(&self, radius: &S) -> ProductPoint<S> {
        let (xl, _) = self.x.clamped(radius);
        let (_, yh) = self.y.clamped(radius);
        ProductPoint::new(Point::new(xl), Point::new(yh))
    }

    /// Greatest element of the clamped box in the product order.
    pub fn top(&self, radius: &S) -> ProductPoint<S> {
        let (_, xh) = self.x.clamped(radius);
        let (yl, _) = self.y.clamped(radius);
        ProductPoint::new(Point::new(xh), Point::new(yl))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn unit_1d() -> ProductSpace<f64> {
        ProductSpace::new(
            SpaceDescriptor::interval(Some(-1.0), Some(1.0)).unwrap(),
            SpaceDescriptor::interval(Some(-1.0), Some(1.0)).unwrap(),
        )
    }

    fn plane() -> SpaceDescriptor<f64> {
        SpaceDescriptor::new(vec![Edge::Unbounded; 2], vec![Edge::Unbounded; 2]).unwrap()
    }

    #[test]
    fn metric_examples() {
        let line = SpaceDescriptor::<BigRational>::interval(None, Some(q(0, 1))).unwrap();
        let d = line
            .metric(&Point::scalar(q(-7, 12)), &Point::scalar(q(0, 1)))
            .unwrap();
        assert_eq!(d, q(7, 12));

        let p = Point::new(vec![1.0, 2.0]);
        assert_eq!(plane().metric(&p, &p).unwrap(), 0.0);
        assert_eq!(plane().metric(&p, &Point::zeros(2)).unwrap(), 3.0);
    }

    #[test]
    fn metric_dimension_mismatch() {
        let err = plane().metric(&Point::zeros(2), &Point::zeros(3)).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        assert!(plane().leq(&Point::zeros(1), &Point::zeros(2)).is_err());
    }

    #[test]
    fn leq_examples() {
        let line = SpaceDescriptor::<BigRational>::interval(None, Some(q(0, 1))).unwrap();
        assert!(line
            .leq(&Point::scalar(q(-1, 1)), &Point::scalar(q(-7, 12)))
            .unwrap());
        let p = Point::new(vec![0.0, 1.0]);
        assert!(plane().leq(&p, &p).unwrap());
        assert!(!plane().leq(&p, &Point::new(vec![1.0, 0.0])).unwrap());
        assert!(!plane().leq(&Point::new(vec![1.0, 0.0]), &p).unwrap());
    }

    #[test]
    fn product_metric_examples() {
        let space = ProductSpace::new(
            SpaceDescriptor::<BigRational>::interval(None, Some(q(0, 1))).unwrap(),
            SpaceDescriptor::interval(Some(q(0, 1)), None).unwrap(),
        );
        let a = ProductPoint::scalars(q(-7, 12), q(7, 24));
        let b = ProductPoint::scalars(q(0, 1), q(0, 1));
        assert_eq!(space.product_metric(&a, &b).unwrap(), q(21, 24));
        assert_eq!(space.product_metric(&a, &a).unwrap(), q(0, 1));

        let s = unit_1d();
        let a = ProductPoint::scalars(1.0, 0.0);
        let b = ProductPoint::scalars(0.0, 1.0);
        assert_eq!(s.product_metric(&a, &b).unwrap(), 2.0);
    }

    #[test]
    fn product_order_reverses_second_coordinate() {
        let s = unit_1d();
        let a = ProductPoint::scalars(-1.0, 1.0);
        let b = ProductPoint::scalars(0.0, 0.0);
        assert!(s.product_leq(&a, &b).unwrap());
        assert!(s.product_leq(&a, &a).unwrap());
        assert!(!s.product_leq(&b, &a).unwrap());
        assert!(s.comparable(&a, &b).unwrap());
        assert!(s.comparable(&a, &a).unwrap());
        assert_eq!(s.relation(&a, &b).unwrap(), Some(Relation::Below));
        assert_eq!(s.relation(&b, &a).unwrap(), Some(Relation::Above));
        assert_eq!(s.relation(&a, &a).unwrap(), Some(Relation::Equal));
    }

    #[test]
    fn incomparable_x_components() {
        let s = ProductSpace::new(plane(), SpaceDescriptor::interval(None, None).unwrap());
        let a = ProductPoint::new(Point::new(vec![0.0, 1.0]), Point::scalar(0.5));
        let b = ProductPoint::new(Point::new(vec![1.0, 0.0]), Point::scalar(0.5));
        assert!(!s.comparable(&a, &b).unwrap());
        assert_eq!(s.relation(&a, &b).unwrap(), None);
    }

    #[test]
    fn product_ops_reject_space_mismatch() {
        let s = unit_1d();
        let a = ProductPoint::new(Point::zeros(2), Point::zeros(1));
        let b = ProductPoint::scalars(0.0, 0.0);
        assert!(s.product_metric(&a, &b).is_err());
        assert!(s.product_leq(&a, &b).is_err());
        assert!(s.comparable(&a, &b).is_err());
    }

    #[test]
    fn descriptor_validation() {
        assert!(SpaceDescriptor::bounded(vec![1.0], vec![1.0]).is_err());
        assert!(SpaceDescriptor::with_degenerate_axes(
            vec![Edge::Finite(1.0)],
            vec![Edge::Finite(1.0)]
        )
        .is_ok());
        assert!(SpaceDescriptor::bounded(vec![2.0], vec![1.0]).is_err());
        assert!(SpaceDescriptor::<f64>::bounded(vec![], vec![]).is_err());
        assert!(SpaceDescriptor::bounded(vec![0.0, 0.0], vec![1.0]).is_err());
        assert!(SpaceDescriptor::bounded(vec![f64::NAN], vec![1.0]).is_err());
    }

    #[test]
    fn membership_and_clamping() {
        let x = SpaceDescriptor::interval(None, Some(0.0)).unwrap();
        assert!(x.contains(&Point::scalar(-1e9)));
        assert!(!x.contains(&Point::scalar(0.5)));
        assert!(!x.contains(&Point::scalar(f64::INFINITY)));
        assert_eq!(x.clamped(&10.0), (vec![-10.0], vec![0.0]));
        assert_eq!(x.clamped(&1.0), (vec![-1.0], vec![0.0]));

        let far = SpaceDescriptor::interval(None, Some(-20.0)).unwrap();
        assert_eq!(far.clamped(&10.0), (vec![-30.0], vec![-20.0]));
        let y = SpaceDescriptor::interval(Some(0.0), None).unwrap();
        assert_eq!(y.clamped(&10.0), (vec![0.0], vec![10.0]));
        assert!(!y.is_bounded());
    }
}
