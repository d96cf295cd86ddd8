//! Brute-force reference checks: exhaustive grid scans and trace audits.
//!
//! Nothing here shares code paths with the solver or the samplers beyond
//! map evaluation and the metric, so agreement between the two is evidence
//! rather than tautology.

use crate::contraction::{condition_slack, ContractionClass, ViolationReport};
use crate::coupled_maps::CoupledMapPair;
use crate::error::{config, input, Result};
use crate::ordered_metric::{l1, Point, ProductPoint, ProductSpace};
use crate::sampling::{grid_value, slack_tolerance, DEFAULT_RADIUS};
use crate::scalar::Scalar;
use crate::solver::{apriori_bound, BoundForm, Certificate, IterationTrace};

pub const DEFAULT_GRID_CEILING: usize = 1_000_000;

/// Uniform grid over the clamped product box.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub points_per_axis: usize,
    pub clamp_radius: f64,
    /// Maximum total number of grid points.
    pub ceiling: usize,
    /// Slack above which a grid pair counts as a violation; `None` picks 0
    /// for exact scalars and `1e-12` for floats.
    pub slack_tol: Option<f64>,
}

impl GridSpec {
    pub fn new(points_per_axis: usize) -> Self {
        GridSpec {
            points_per_axis,
            clamp_radius: DEFAULT_RADIUS,
            ceiling: DEFAULT_GRID_CEILING,
            slack_tol: None,
        }
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.clamp_radius = radius;
        self
    }

    /// Total grid size for a space of total dimension `dim`, if it fits in `usize`.
    pub fn size(&self, dim: usize) -> Option<usize> {
        (0..dim).try_fold(1usize, |acc, _| acc.checked_mul(self.points_per_axis))
    }

    fn check(&self, dim: usize) -> Result<()> {
        if self.points_per_axis < 2 {
            return Err(config("grid needs at least 2 points per axis"));
        }
        if !(self.clamp_radius > 0.0) {
            return Err(config("grid clamp radius must be positive"));
        }
        match self.size(dim) {
            Some(n) if n <= self.ceiling => Ok(()),
            _ => Err(config(format!(
                "grid of {}^{dim} points exceeds the ceiling of {}",
                self.points_per_axis, self.ceiling
            ))),
        }
    }

    /// Grid values per axis, `X` axes first.
    pub fn axes<S: Scalar>(&self, space: &ProductSpace<S>) -> Result<Vec<Vec<S>>> {
        self.check(space.dim())?;
        let radius = S::from_f64(self.clamp_radius).ok_or_else(|| config("radius must be finite"))?;
        let (xl, xh) = space.x.clamped(&radius);
        let (yl, yh) = space.y.clamped(&radius);
        let n = self.points_per_axis;
        Ok(xl
            .iter()
            .chain(&yl)
            .zip(xh.iter().chain(&yh))
            .map(|(lo, hi)| (0..n).map(|i| grid_value(lo, hi, i, n)).collect())
            .collect())
    }

    /// Spacing of the grid along each axis, `X` axes first.
    pub fn cell_widths<S: Scalar>(&self, space: &ProductSpace<S>) -> Result<Vec<S>> {
        let steps = S::from_usize(self.points_per_axis - 1);
        Ok(self
            .axes(space)?
            .into_iter()
            .map(|axis| (axis[axis.len() - 1].clone() - axis[0].clone()) / steps.clone())
            .collect())
    }
}

fn point_at<S: Scalar>(axes: &[Vec<S>], index: &[usize], dx: usize) -> ProductPoint<S> {
    let coords: Vec<S> = index.iter().zip(axes).map(|(&i, a)| a[i].clone()).collect();
    let (x, y) = coords.split_at(dx);
    ProductPoint::new(Point::new(x.to_vec()), Point::new(y.to_vec()))
}

/// Advances a mixed-radix counter with per-digit ranges `[lo_i, hi_i]`, last
/// digit fastest. Returns `false` once it wraps.
fn advance(index: &mut [usize], lo: &[usize], hi: &[usize]) -> bool {
    for d in (0..index.len()).rev() {
        if index[d] < hi[d] {
            index[d] += 1;
            return true;
        }
        index[d] = lo[d];
    }
    false
}

/// Grid point with the smallest residual; ties go to the lexicographically
/// smallest coordinates.
pub fn grid_residual_minimizer<S: Scalar>(
    pair: &CoupledMapPair<S>,
    grid: &GridSpec,
) -> Result<(ProductPoint<S>, S)> {
    let axes = grid.axes(pair.space())?;
    let dim = axes.len();
    let dx = pair.x_space().dim();
    let lo = vec![0; dim];
    let hi = vec![grid.points_per_axis - 1; dim];
    let mut index = lo.clone();
    let mut best: Option<(ProductPoint<S>, S)> = None;
    loop {
        let p = point_at(&axes, &index, dx);
        let r = pair.residual(&p)?;
        if best.as_ref().map_or(true, |(_, b)| r < *b) {
            best = Some((p, r));
        }
        if !advance(&mut index, &lo, &hi) {
            break;
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// Contraction slack over every comparable pair of grid points.
pub fn condition_brute_force<S: Scalar>(
    class: &ContractionClass<S>,
    pair: &CoupledMapPair<S>,
    grid: &GridSpec,
) -> Result<ViolationReport<S>> {
    class.check_admissible()?;
    let axes = grid.axes(pair.space())?;
    let dim = axes.len();
    let dx = pair.x_space().dim();
    let top = grid.points_per_axis - 1;
    let mut pairs = Vec::new();
    let mut high = vec![0; dim];
    loop {
        // Points below `high`: x-indices at most high's, y-indices at least.
        let lo: Vec<usize> = (0..dim).map(|d| if d < dx { 0 } else { high[d] }).collect();
        let hi: Vec<usize> = (0..dim).map(|d| if d < dx { high[d] } else { top }).collect();
        let hp = point_at(&axes, &high, dx);
        let mut low = lo.clone();
        loop {
            pairs.push((hp.clone(), point_at(&axes, &low, dx)));
            if !advance(&mut low, &lo, &hi) {
                break;
            }
        }
        if !advance(&mut high, &vec![0; dim], &vec![top; dim]) {
            break;
        }
    }
    ViolationReport::accumulate(
        slack_tolerance(grid.slack_tol),
        pairs.into_iter().map(|(h, l)| {
            let slack = condition_slack(class, pair, &h, &l)?;
            Ok((h, l, slack))
        }),
    )
}

/// Findings of [`audit_trace`]; every list holds trace indices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AuditReport {
    /// `j` where the stored step distance differs from `d(p_j, p_{j+1})`.
    pub step_mismatches: Vec<usize>,
    /// `j` where the stored residual differs from the recomputed one.
    pub residual_mismatches: Vec<usize>,
    /// `j` where `x_j ≤ x_{j+1}` or `y_{j+1} ≤ y_j` fails.
    pub monotone_failures: Vec<usize>,
    /// `j` where a coordinate distance to the last iterate exceeds its bound.
    pub bound_failures: Vec<usize>,
    /// `j` where the coordinate step `j+1` exceeds `δ` times step `j`
    /// (Banach-type certificates only).
    pub contraction_failures: Vec<usize>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.step_mismatches.is_empty()
            && self.residual_mismatches.is_empty()
            && self.monotone_failures.is_empty()
            && self.bound_failures.is_empty()
            && self.contraction_failures.is_empty()
    }
}

/// Absolute slack allowed in the step contraction check.
pub const CONTRACTION_SLACK: f64 = 1e-12;

/// Independently re-derives the solver's invariants on a trace.
///
/// `bound_tol` is added to the a priori bound before comparing.
pub fn audit_trace<S: Scalar>(
    pair: &CoupledMapPair<S>,
    trace: &IterationTrace<S>,
    cert: Option<&Certificate<S>>,
    bound_tol: &S,
) -> Result<AuditReport> {
    trace.check_shape()?;
    for p in &trace.iterates {
        if p.x.dim() != pair.x_space().dim() || p.y.dim() != pair.y_space().dim() {
            return Err(input("trace iterate has the wrong dimension"));
        }
    }
    let mut report = AuditReport::default();
    let it = &trace.iterates;
    let (sx, sy) = (pair.x_space(), pair.y_space());

    for (j, p) in it.iter().enumerate() {
        if pair.residual(p)? != trace.residuals[j] {
            report.residual_mismatches.push(j);
        }
    }
    let mut coord_steps = Vec::new();
    for j in 0..trace.steps() {
        let (a, b) = (&it[j], &it[j + 1]);
        let (dx, dy) = (l1(&a.x, &b.x), l1(&a.y, &b.y));
        if dx.clone() + dy.clone() != trace.step_distances[j] {
            report.step_mismatches.push(j);
        }
        if !(sx.leq(&a.x, &b.x)? && sy.leq(&b.y, &a.y)?) {
            report.monotone_failures.push(j);
        }
        coord_steps.push(S::max_of(dx, dy));
    }

    if let Some(cert) = cert {
        let last = trace.last();
        for (j, p) in it.iter().enumerate() {
            let (bx, by) = apriori_bound(cert, j);
            if l1(&p.x, &last.x) > bx + bound_tol.clone() || l1(&p.y, &last.y) > by + bound_tol.clone() {
                report.bound_failures.push(j);
            }
        }
        if cert.bound_form == BoundForm::JointD1 {
            let slack = S::from_f64(CONTRACTION_SLACK).unwrap_or_else(S::zero);
            let delta = cert.delta();
            for j in 1..coord_steps.len() {
                if coord_steps[j] > delta.clone() * coord_steps[j - 1].clone() + slack.clone() {
                    report.contraction_failures.push(j - 1);
                }
            }
        }
    }
    Ok(report)
}
