//! The map pair `F: X × Y → X`, `G: Y × X → Y` and its simultaneous
//! (Picard) iteration `x_{n+1} = F(x_n, y_n)`, `y_{n+1} = G(y_n, x_n)`.
//!
//! Maps are either affine, `own·A + other·B + offset` with the first
//! argument as `own`, or one of a closed set of builtins applied
//! coordinatewise.

use std::fmt;

use crate::error::{config, input, Result};
use crate::ordered_metric::{l1, Point, ProductPoint, ProductSpace, SpaceDescriptor};
use crate::sampling::{Sampler, SamplerConfig};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(input("matrix must be non-empty"));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(input("matrix rows have different lengths"));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// 1×1 matrix.
    pub fn scalar(v: S) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![v],
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    fn mul_vec(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

/// `own ↦ a·own + b·other + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<S> {
    pub a: Matrix<S>,
    pub b: Matrix<S>,
    pub offset: Vec<S>,
}

impl<S: Scalar> AffineMap<S> {
    pub fn new(a: Matrix<S>, b: Matrix<S>, offset: Vec<S>) -> Self {
        AffineMap { a, b, offset }
    }

    /// One-dimensional `a·own + b·other + c`.
    pub fn scalar(a: S, b: S, c: S) -> Self {
        AffineMap::new(Matrix::scalar(a), Matrix::scalar(b), vec![c])
    }

    /// Constant map of the given shape.
    pub fn constant(value: Vec<S>, own_dim: usize, other_dim: usize) -> Self {
        let out = value.len();
        AffineMap::new(Matrix::zeros(out, own_dim), Matrix::zeros(out, other_dim), value)
    }

    fn eval(&self, own: &[S], other: &[S]) -> Vec<S> {
        self.a
            .mul_vec(own)
            .into_iter()
            .zip(self.b.mul_vec(other))
            .zip(&self.offset)
            .map(|((p, q), c)| p + q + c.clone())
            .collect()
    }

    fn check_shape(&self, out: usize, own: usize, other: usize) -> Result<()> {
        if self.a.shape() != (out, own) || self.b.shape() != (out, other) || self.offset.len() != out
        {
            return Err(input(format!(
                "affine map shapes a={:?}, b={:?}, offset={} do not match ({out}x{own}, {out}x{other}, {out})",
                self.a.shape(),
                self.b.shape(),
                self.offset.len()
            )));
        }
        Ok(())
    }

    /// Entrywise `a ≥ 0` and `b ≤ 0`, which makes the map nondecreasing in
    /// `own` and nonincreasing in `other`.
    pub fn has_mixed_monotone_signs(&self) -> bool {
        self.a.entries().iter().all(|v| *v >= S::zero())
            && self.b.entries().iter().all(|v| *v <= S::zero())
    }
}

/// Closed registry of named coordinatewise maps `(own, other) ↦ value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `own/3 − other/4`
    ThirdMinusQuarter,
    /// `own/8 − other/6`
    EighthMinusSixth,
    /// `own/3`
    OneThird,
    /// `own/4`
    OneQuarter,
    /// `own/8 − other/8`
    EighthDifference,
    /// `(s(own) − s(other))/3` with `s(t) = t/(1+|t|)`
    SaturatingDifference,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::ThirdMinusQuarter,
        Builtin::EighthMinusSixth,
        Builtin::OneThird,
        Builtin::OneQuarter,
        Builtin::EighthDifference,
        Builtin::SaturatingDifference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::ThirdMinusQuarter => "third_minus_quarter",
            Builtin::EighthMinusSixth => "eighth_minus_sixth",
            Builtin::OneThird => "one_third",
            Builtin::OneQuarter => "one_quarter",
            Builtin::EighthDifference => "eighth_difference",
            Builtin::SaturatingDifference => "saturating_difference",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == name)
            .ok_or_else(|| config(format!("unknown builtin map '{name}'")))
    }

    fn eval_coord<S: Scalar>(self, own: &S, other: &S) -> S {
        let r = S::from_ratio;
        match self {
            Builtin::ThirdMinusQuarter => own.clone() * r(1, 3) - other.clone() * r(1, 4),
            Builtin::EighthMinusSixth => own.clone() * r(1, 8) - other.clone() * r(1, 6),
            Builtin::OneThird => own.clone() * r(1, 3),
            Builtin::OneQuarter => own.clone() * r(1, 4),
            Builtin::EighthDifference => (own.clone() - other.clone()) * r(1, 8),
            Builtin::SaturatingDifference => {
                let s = |t: &S| t.clone() / (S::one() + t.abs());
                (s(own) - s(other)) * r(1, 3)
            }
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec<S> {
    Affine(AffineMap<S>),
    Builtin(Builtin),
}

impl<S: Scalar> MapSpec<S> {
    pub fn builtin(name: &str) -> Result<Self> {
        Builtin::from_name(name).map(MapSpec::Builtin)
    }

    fn eval(&self, own: &Point<S>, other: &Point<S>) -> Point<S> {
        match self {
            MapSpec::Affine(m) => Point::new(m.eval(own.coords(), other.coords())),
            MapSpec::Builtin(b) => Point::new(
                own.coords()
                    .iter()
                    .zip(other.coords())
                    .map(|(o, t)| b.eval_coord(o, t))
                    .collect(),
            ),
        }
    }

    fn check_shape(&self, own: usize, other: usize) -> Result<()> {
        match self {
            MapSpec::Affine(m) => m.check_shape(own, own, other),
            MapSpec::Builtin(b) if own != other => Err(input(format!(
                "builtin '{b}' acts coordinatewise and needs equal dimensions, got {own} and {other}"
            ))),
            MapSpec::Builtin(_) => Ok(()),
        }
    }
}

/// `F: X × Y → X` and `G: Y × X → Y` over their spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledMapPair<S> {
    space: ProductSpace<S>,
    f: MapSpec<S>,
    g: MapSpec<S>,
}

impl<S: Scalar> CoupledMapPair<S> {
    pub fn new(
        x: SpaceDescriptor<S>,
        y: SpaceDescriptor<S>,
        f: MapSpec<S>,
        g: MapSpec<S>,
    ) -> Result<Self> {
        f.check_shape(x.dim(), y.dim())
            .map_err(|e| input(format!("map F: {e}")))?;
        g.check_shape(y.dim(), x.dim())
            .map_err(|e| input(format!("map G: {e}")))?;
        Ok(CoupledMapPair {
            space: ProductSpace::new(x, y),
            f,
            g,
        })
    }

    pub fn space(&self) -> &ProductSpace<S> {
        &self.space
    }

    pub fn x_space(&self) -> &SpaceDescriptor<S> {
        &self.space.x
    }

    pub fn y_space(&self) -> &SpaceDescriptor<S> {
        &self.space.y
    }

    pub fn map_f(&self) -> &MapSpec<S> {
        &self.f
    }

    pub fn map_g(&self) -> &MapSpec<S> {
        &self.g
    }

    fn check_args(&self, x: &Point<S>, y: &Point<S>) -> Result<()> {
        if x.dim() != self.space.x.dim() || y.dim() != self.space.y.dim() {
            return Err(input(format!(
                "arguments have dimensions ({}, {}) but spaces are ({}, {})",
                x.dim(),
                y.dim(),
                self.space.x.dim(),
                self.space.y.dim()
            )));
        }
        Ok(())
    }

    /// `F(x, y)`. The image is returned even when it leaves `X`.
    pub fn eval_f(&self, x: &Point<S>, y: &Point<S>) -> Result<Point<S>> {
        self.check_args(x, y)?;
        Ok(self.f.eval(x, y))
    }

    /// `G(y, x)`.
    pub fn eval_g(&self, y: &Point<S>, x: &Point<S>) -> Result<Point<S>> {
        self.check_args(x, y)?;
        Ok(self.g.eval(y, x))
    }

    /// One simultaneous update `(x, y) ↦ (F(x, y), G(y, x))`.
    pub fn iterate_step(&self, p: &ProductPoint<S>) -> Result<ProductPoint<S>> {
        let x = self.eval_f(&p.x, &p.y)?;
        let y = self.eval_g(&p.y, &p.x)?;
        Ok(ProductPoint::new(x, y))
    }

    /// `[p0, p1, …, pn]`.
    pub fn iterate_n(&self, p0: &ProductPoint<S>, n: usize) -> Result<Vec<ProductPoint<S>>> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(p0.clone());
        for _ in 0..n {
            let next = self.iterate_step(out.last().expect("non-empty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// `d_X(F(x,y), x) + d_Y(G(y,x), y)`.
    pub fn residual(&self, p: &ProductPoint<S>) -> Result<S> {
        let next = self.iterate_step(p)?;
        Ok(l1(&next.x, &p.x) + l1(&next.y, &p.y))
    }

    /// `x0 ≤ F(x0, y0)` and `G(y0, x0) ≤ y0`.
    pub fn check_seed(&self, p0: &ProductPoint<S>) -> Result<bool> {
        let next = self.iterate_step(p0)?;
        Ok(self.space.x.leq(&p0.x, &next.x)? && self.space.y.leq(&next.y, &p0.y)?)
    }

    /// Sampled falsification of the mixed monotone property, plus closure of
    /// `F` into `X` and `G` into `Y`.
    pub fn check_mixed_monotone(&self, sampler: &SamplerConfig) -> Result<MonotoneReport<S>> {
        let mut draws = Sampler::new(&self.space, sampler)?;
        let (sx, sy) = (&self.space.x, &self.space.y);
        let mut violations = Vec::new();
        let mut flag = |clause, low: &Point<S>, high: &Point<S>, fixed: &Point<S>| {
            violations.push(MonotoneViolation {
                clause,
                low: low.clone(),
                high: high.clone(),
                fixed: fixed.clone(),
            })
        };
        for _ in 0..sampler.samples {
            let (x1, x2) = draws.ordered_x();
            let y = draws.point_y();
            let f1 = self.f.eval(&x1, &y);
            let f2 = self.f.eval(&x2, &y);
            if !sx.leq(&f1, &f2)? {
                flag(MonotoneClause::FIncreasingInX, &x1, &x2, &y);
            }
            let g1 = self.g.eval(&y, &x1);
            let g2 = self.g.eval(&y, &x2);
            if !sy.leq(&g2, &g1)? {
                flag(MonotoneClause::GDecreasingInX, &x1, &x2, &y);
            }

            let (y1, y2) = draws.ordered_y();
            let x = draws.point_x();
            let f1 = self.f.eval(&x, &y1);
            let f2 = self.f.eval(&x, &y2);
            if !sx.leq(&f2, &f1)? {
                flag(MonotoneClause::FDecreasingInY, &y1, &y2, &x);
            }
            let g1 = self.g.eval(&y1, &x);
            let g2 = self.g.eval(&y2, &x);
            if !sy.leq(&g1, &g2)? {
                flag(MonotoneClause::GIncreasingInY, &y1, &y2, &x);
            }

            let p = draws.product_point();
            if !sx.contains(&self.f.eval(&p.x, &p.y)) {
                flag(MonotoneClause::ClosureF, &p.x, &p.x, &p.y);
            }
            if !sy.contains(&self.g.eval(&p.y, &p.x)) {
                flag(MonotoneClause::ClosureG, &p.y, &p.y, &p.x);
            }
        }
        Ok(MonotoneReport {
            samples_checked: sampler.samples,
            violations,
        })
    }
}

/// Which requirement a sampled witness broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneClause {
    /// `x1 ≤ x2 ⇒ F(x1,y) ≤ F(x2,y)`
    FIncreasingInX,
    /// `x1 ≤ x2 ⇒ G(y,x1) ≥ G(y,x2)`
    GDecreasingInX,
    /// `y1 ≤ y2 ⇒ F(x,y1) ≥ F(x,y2)`
    FDecreasingInY,
    /// `y1 ≤ y2 ⇒ G(y1,x) ≤ G(y2,x)`
    GIncreasingInY,
    /// `F(x,y)` left `X`.
    ClosureF,
    /// `G(y,x)` left `Y`.
    ClosureG,
}

impl fmt::Display for MonotoneClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MonotoneClause::FIncreasingInX => "F nondecreasing in x",
            MonotoneClause::GDecreasingInX => "G nonincreasing in x",
            MonotoneClause::FDecreasingInY => "F nonincreasing in y",
            MonotoneClause::GIncreasingInY => "G nondecreasing in y",
            MonotoneClause::ClosureF => "F maps into X",
            MonotoneClause::ClosureG => "G maps into Y",
        };
        f.write_str(s)
    }
}

/// A failing witness. For the order clauses `low ≤ high` is the varied
/// argument and `fixed` the other one; for closure clauses `low == high` is
/// the own argument.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneViolation<S> {
    pub clause: MonotoneClause,
    pub low: Point<S>,
    pub high: Point<S>,
    pub fixed: Point<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneReport<S> {
    pub samples_checked: usize,
    pub violations: Vec<MonotoneViolation<S>>,
}

impl<S> MonotoneReport<S> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, clause: MonotoneClause) -> usize {
        self.violations.iter().filter(|v| v.clause == clause).count()
    }

    /// Violations of the four order clauses, ignoring closure.
    pub fn order_violations(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| !matches!(v.clause, MonotoneClause::ClosureF | MonotoneClause::ClosureG))
            .count()
    }
}
