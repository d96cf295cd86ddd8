//! Picard iteration for FG-coupled fixed points, a priori rate certificates
//! per contraction class, and the comparability-based uniqueness probe.

use std::fmt;

use crate::contraction::{verify_condition, ContractionClass, ViolationReport};
use crate::coupled_maps::{CoupledMapPair, MonotoneReport};
use crate::error::{config, input, Error, Result};
use crate::ordered_metric::{l1, ProductPoint, Relation};
use crate::sampling::{Sampler, SamplerConfig};
use crate::scalar::Scalar;

pub const DEFAULT_TOL_STEP: f64 = 1e-10;
pub const DEFAULT_TOL_RESIDUAL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 1000;
/// Step distances above this abort the run.
pub const DIVERGENCE_CUTOFF: f64 = 1e12;

/// Which family of hypotheses justifies passing to the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HypothesisMode {
    /// `F` and `G` are continuous.
    #[default]
    Continuous,
    /// Nondecreasing sequences in `X` lie below their limit, nonincreasing
    /// sequences in `Y` above theirs. Boxes always have this property.
    OrderLimit,
}

impl HypothesisMode {
    pub fn name(self) -> &'static str {
        match self {
            HypothesisMode::Continuous => "continuous",
            HypothesisMode::OrderLimit => "order_limit",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "continuous" => Ok(HypothesisMode::Continuous),
            "order_limit" => Ok(HypothesisMode::OrderLimit),
            other => Err(config(format!("unknown hypothesis mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig<S> {
    /// Bound on the product distance between the last two iterates.
    pub tol_step: S,
    /// Bound on the residual at the accepted point.
    pub tol_residual: S,
    pub max_iter: usize,
    pub mode: HypothesisMode,
}

impl<S: Scalar> SolveConfig<S> {
    pub fn new(tol_step: S, tol_residual: S, max_iter: usize) -> Self {
        SolveConfig {
            tol_step,
            tol_residual,
            max_iter,
            mode: HypothesisMode::Continuous,
        }
    }

    /// Sets both tolerances to `tol`.
    pub fn with_tol(tol: S) -> Self {
        let mut cfg = Self::default();
        cfg.tol_step = tol.clone();
        cfg.tol_residual = tol;
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol_step > S::zero()) || !(self.tol_residual > S::zero()) {
            return Err(config("tolerances must be positive"));
        }
        if self.max_iter == 0 {
            return Err(config("max_iter must be at least 1"));
        }
        Ok(())
    }
}

impl<S: Scalar> Default for SolveConfig<S> {
    fn default() -> Self {
        let lit = |v: f64| S::from_f64(v).expect("finite default");
        SolveConfig::new(lit(DEFAULT_TOL_STEP), lit(DEFAULT_TOL_RESIDUAL), DEFAULT_MAX_ITER)
    }
}

/// Iterates `p_0, …, p_n` with `step_distances[j] = d(p_j, p_{j+1})` and
/// `residuals[j]` the residual at `p_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<S> {
    pub iterates: Vec<ProductPoint<S>>,
    pub step_distances: Vec<S>,
    pub residuals: Vec<S>,
}

impl<S: Scalar> IterationTrace<S> {
    /// Number of steps taken.
    pub fn steps(&self) -> usize {
        self.step_distances.len()
    }

    pub fn last(&self) -> &ProductPoint<S> {
        self.iterates.last().expect("trace has at least one iterate")
    }

    /// Checks the length relations between the three lists.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.iterates.len();
        if n == 0 {
            return Err(input("trace has no iterates"));
        }
        if self.step_distances.len() + 1 != n || self.residuals.len() != n {
            return Err(input(format!(
                "trace has {n} iterates, {} step distances and {} residuals",
                self.step_distances.len(),
                self.residuals.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundForm {
    /// Both coordinates use `δ^j / (1−δ) · D₁`, `δ = max(δ₁, δ₂)`,
    /// `D₁ = d_X(x₀,x₁) + d_Y(y₀,y₁)`.
    JointD1,
    /// `δ₁^j / (1−δ₁) · d_X(x₀,x₁)` and `δ₂^j / (1−δ₂) · d_Y(y₀,y₁)`.
    Split,
}

impl BoundForm {
    pub fn name(self) -> &'static str {
        match self {
            BoundForm::JointD1 => "joint-D1",
            BoundForm::Split => "split",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<S> {
    pub class: ContractionClass<S>,
    pub delta1: S,
    pub delta2: S,
    pub disp_x: S,
    pub disp_y: S,
    pub bound_form: BoundForm,
}

impl<S: Scalar> Certificate<S> {
    /// Builds a certificate from the first step `p0 → p1`.
    pub fn new(class: &ContractionClass<S>, p0: &ProductPoint<S>, p1: &ProductPoint<S>) -> Result<Self> {
        let (delta1, delta2, bound_form) = rate_factors(class)?;
        Ok(Certificate {
            class: class.clone(),
            delta1,
            delta2,
            disp_x: l1(&p0.x, &p1.x),
            disp_y: l1(&p0.y, &p1.y),
            bound_form,
        })
    }

    /// `D₁ = d_X(x₀,x₁) + d_Y(y₀,y₁)`.
    pub fn d1(&self) -> S {
        self.disp_x.clone() + self.disp_y.clone()
    }

    /// `max(δ₁, δ₂)`.
    pub fn delta(&self) -> S {
        S::max_of(self.delta1.clone(), self.delta2.clone())
    }
}

/// `(δ₁, δ₂, bound form)` for an admissible class.
pub fn rate_factors<S: Scalar>(class: &ContractionClass<S>) -> Result<(S, S, BoundForm)> {
    class.check_admissible()?;
    let one = S::one;
    let (d1, d2) = match class.clone() {
        ContractionClass::Banach { k, l, m, n } => {
            let d = S::max_of(k + l, m + n);
            return Ok((d.clone(), d, BoundForm::JointD1));
        }
        ContractionClass::Kannan { k, l, m, n } => (l / (one() - k), m / (one() - n)),
        ContractionClass::Chatterjea { l, m, .. } => {
            (l.clone() / (one() - l), m.clone() / (one() - m))
        }
        ContractionClass::Reich { a, b, c } => (
            (b.clone() + c.clone()) / (one() - a.clone()),
            (a + c) / (one() - b),
        ),
        ContractionClass::Hybrid { a, b, c } => (
            (b.clone() + c.clone()) / (one() - b),
            (a.clone() + c) / (one() - a),
        ),
        ContractionClass::Quasi { k, l } => {
            (k.clone() / (one() - k), l.clone() / (one() - l))
        }
    };
    Ok((d1, d2, BoundForm::Split))
}

fn geometric_tail<S: Scalar>(delta: &S, j: usize, disp: &S) -> S {
    delta.powi(j) / (S::one() - delta.clone()) * disp.clone()
}

/// `(bound_X, bound_Y)` on the distance from iterate `j` to the limit.
pub fn apriori_bound<S: Scalar>(cert: &Certificate<S>, j: usize) -> (S, S) {
    match cert.bound_form {
        BoundForm::JointD1 => {
            let b = geometric_tail(&cert.delta(), j, &cert.d1());
            (b.clone(), b)
        }
        BoundForm::Split => (
            geometric_tail(&cert.delta1, j, &cert.disp_x),
            geometric_tail(&cert.delta2, j, &cert.disp_y),
        ),
    }
}

/// What was checked about the hypotheses of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport<S> {
    pub mode: HypothesisMode,
    pub seed_ok: bool,
    pub monotone: Option<MonotoneReport<S>>,
    pub condition: Option<ViolationReport<S>>,
    /// `false` when the seed or the sampled monotone check failed.
    pub trajectory_checked: bool,
    /// Indices `j` with `x_j ≰ x_{j+1}` or `y_{j+1} ≰ y_j`.
    pub trajectory_violations: Vec<usize>,
}

impl<S: Scalar> HypothesisReport<S> {
    pub fn all_hold(&self) -> bool {
        self.seed_ok
            && self.monotone.as_ref().map_or(true, MonotoneReport::is_clean)
            && self.condition.as_ref().map_or(true, ViolationReport::is_clean)
            && self.trajectory_violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointResult<S> {
    pub point: ProductPoint<S>,
    pub trace: IterationTrace<S>,
    pub certificate: Option<Certificate<S>>,
    pub converged: bool,
    pub hypotheses: HypothesisReport<S>,
}

fn check_member<S: Scalar>(pair: &CoupledMapPair<S>, p: &ProductPoint<S>, what: &str) -> Result<()> {
    pair.space().check(p)?;
    if !p.is_finite() || !pair.space().contains(p) {
        return Err(input(format!("{what} point {p} lies outside the product box")));
    }
    Ok(())
}

/// Runs the Picard iteration from `p0`.
///
/// Stops at the first `j` whose residual is within `tol_residual` and whose
/// previous step is within `tol_step` (at `j = 0` the residual stands in for
/// the step). Running out of iterations yields `converged = false`.
pub fn solve<S: Scalar>(
    pair: &CoupledMapPair<S>,
    class: Option<&ContractionClass<S>>,
    p0: &ProductPoint<S>,
    config: &SolveConfig<S>,
) -> Result<FixedPointResult<S>> {
    run(pair, class, p0, config, None, None)
}

/// [`solve`] preceded by the sampled mixed monotone check and, when a class
/// is given, the sampled contraction check.
pub fn solve_checked<S: Scalar>(
    pair: &CoupledMapPair<S>,
    class: Option<&ContractionClass<S>>,
    p0: &ProductPoint<S>,
    config: &SolveConfig<S>,
    sampler: &SamplerConfig,
) -> Result<FixedPointResult<S>> {
    let monotone = pair.check_mixed_monotone(sampler)?;
    let condition = match class {
        Some(c) => Some(verify_condition(c, pair, sampler)?),
        None => None,
    };
    run(pair, class, p0, config, Some(monotone), condition)
}

fn run<S: Scalar>(
    pair: &CoupledMapPair<S>,
    class: Option<&ContractionClass<S>>,
    p0: &ProductPoint<S>,
    config: &SolveConfig<S>,
    monotone: Option<MonotoneReport<S>>,
    condition: Option<ViolationReport<S>>,
) -> Result<FixedPointResult<S>> {
    config.validate()?;
    check_member(pair, p0, "seed")?;
    if let Some(c) = class {
        c.check_admissible()?;
    }
    let seed_ok = pair.check_seed(p0)?;
    let trajectory_checked = seed_ok && monotone.as_ref().map_or(true, MonotoneReport::is_clean);

    let mut trace = IterationTrace {
        iterates: vec![p0.clone()],
        step_distances: Vec::new(),
        residuals: Vec::new(),
    };
    let mut trajectory_violations = Vec::new();
    let mut certificate = None;
    let mut converged = false;
    let (sx, sy) = (pair.x_space(), pair.y_space());

    loop {
        let j = trace.steps();
        let current = trace.last().clone();
        let next = pair.iterate_step(&current)?;
        let residual = l1(&next.x, &current.x) + l1(&next.y, &current.y);
        if !residual.is_finite() || residual.as_f64() > DIVERGENCE_CUTOFF {
            return Err(Error::Divergence {
                step: j,
                distance: residual.as_f64(),
            });
        }
        if j == 0 {
            if let Some(c) = class {
                certificate = Some(Certificate::new(c, &current, &next)?);
            }
        }
        trace.residuals.push(residual.clone());
        let step_ok = match trace.step_distances.last() {
            Some(prev) => *prev <= config.tol_step,
            None => residual <= config.tol_step,
        };
        if step_ok && residual <= config.tol_residual {
            converged = true;
            break;
        }
        if j >= config.max_iter {
            break;
        }
        if trajectory_checked && !(sx.leq(&current.x, &next.x)? && sy.leq(&next.y, &current.y)?) {
            trajectory_violations.push(j);
        }
        trace.step_distances.push(residual);
        trace.iterates.push(next);
    }

    Ok(FixedPointResult {
        point: trace.last().clone(),
        trace,
        certificate,
        converged,
        hypotheses: HypothesisReport {
            mode: config.mode,
            seed_ok,
            monotone,
            condition,
            trajectory_checked,
            trajectory_violations,
        },
    })
}

/// A point comparable to both candidate fixed points.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparabilityWitness<S> {
    pub z: ProductPoint<S>,
    /// Order of `z` relative to the first point.
    pub relation_to_first: Relation,
    pub relation_to_second: Relation,
}

#[derive(Debug, Clone, PartialEq)]
pub enum UniquenessVerdict<S> {
    /// The two points agree within the merge tolerance.
    Identical,
    /// A comparability chain exists and `2δ < 1`.
    CertifiedUnique { witness: ComparabilityWitness<S> },
    Uncertified { reason: String },
}

impl<S> UniquenessVerdict<S> {
    pub fn name(&self) -> &'static str {
        match self {
            UniquenessVerdict::Identical => "identical",
            UniquenessVerdict::CertifiedUnique { .. } => "certified-unique",
            UniquenessVerdict::Uncertified { .. } => "uncertified",
        }
    }
}

impl<S> fmt::Display for UniquenessVerdict<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniquenessVerdict::Uncertified { reason } => write!(f, "uncertified ({reason})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessConfig<S> {
    /// Both points must have residual at most this.
    pub tol_residual: S,
    /// Points closer than this are reported as identical.
    pub merge_tol: S,
}

impl<S: Scalar> Default for UniquenessConfig<S> {
    fn default() -> Self {
        UniquenessConfig {
            tol_residual: S::from_f64(DEFAULT_TOL_RESIDUAL).expect("finite default"),
            merge_tol: S::zero(),
        }
    }
}

fn witness_for<S: Scalar>(
    pair: &CoupledMapPair<S>,
    z: &ProductPoint<S>,
    fp1: &ProductPoint<S>,
    fp2: &ProductPoint<S>,
) -> Result<Option<ComparabilityWitness<S>>> {
    if !pair.space().contains(z) {
        return Ok(None);
    }
    let space = pair.space();
    Ok(match (space.relation(z, fp1)?, space.relation(z, fp2)?) {
        (Some(r1), Some(r2)) => Some(ComparabilityWitness {
            z: z.clone(),
            relation_to_first: r1,
            relation_to_second: r2,
        }),
        _ => None,
    })
}

/// Decides whether two approximate fixed points of a Banach-type pair are
/// certified to coincide.
///
/// Candidates for a witness are tried in order: the first point itself, the
/// lower and upper lattice bounds of the two points, then sampled points.
pub fn uniqueness_probe<S: Scalar>(
    pair: &CoupledMapPair<S>,
    class: &ContractionClass<S>,
    fp1: &ProductPoint<S>,
    fp2: &ProductPoint<S>,
    sampler: &SamplerConfig,
    settings: &UniquenessConfig<S>,
) -> Result<UniquenessVerdict<S>> {
    let ContractionClass::Banach { .. } = class else {
        return Err(config(format!(
            "uniqueness probe needs a banach class, got {}",
            class.tag()
        )));
    };
    let (delta, _, _) = rate_factors(class)?;
    for (name, p) in [("first", fp1), ("second", fp2)] {
        check_member(pair, p, name)?;
        let r = pair.residual(p)?;
        if r > settings.tol_residual {
            return Err(input(format!(
                "{name} point {p} is not a fixed point: residual {r} exceeds {}",
                settings.tol_residual
            )));
        }
    }
    if pair.space().product_metric(fp1, fp2)? <= settings.merge_tol {
        return Ok(UniquenessVerdict::Identical);
    }

    let lower = ProductPoint::new(fp1.x.meet(&fp2.x), fp1.y.join(&fp2.y));
    let upper = ProductPoint::new(fp1.x.join(&fp2.x), fp1.y.meet(&fp2.y));
    let mut witness = None;
    for z in [fp1, &lower, &upper] {
        if let Some(w) = witness_for(pair, z, fp1, fp2)? {
            witness = Some(w);
            break;
        }
    }
    if witness.is_none() {
        let mut draws = Sampler::new(pair.space(), sampler)?;
        for _ in 0..sampler.samples {
            let z = draws.product_point();
            if let Some(w) = witness_for(pair, &z, fp1, fp2)? {
                witness = Some(w);
                break;
            }
        }
    }
    let Some(witness) = witness else {
        return Ok(UniquenessVerdict::Uncertified {
            reason: "no comparability witness found".to_string(),
        });
    };
    let two_delta = S::from_ratio(2, 1) * delta;
    if two_delta < S::one() {
        Ok(UniquenessVerdict::CertifiedUnique { witness })
    } else {
        Ok(UniquenessVerdict::Uncertified {
            reason: format!("2*delta = {two_delta} is not below 1"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupled_maps::{AffineMap, MapSpec};
    use crate::ordered_metric::SpaceDescriptor;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn affine_pair<S: Scalar>(f: (S, S), g: (S, S), x: (Option<S>, Option<S>), y: (Option<S>, Option<S>)) -> CoupledMapPair<S> {
        CoupledMapPair::new(
            SpaceDescriptor::interval(x.0, x.1).unwrap(),
            SpaceDescriptor::interval(y.0, y.1).unwrap(),
            MapSpec::Affine(AffineMap::scalar(f.0, f.1, S::zero())),
            MapSpec::Affine(AffineMap::scalar(g.0, g.1, S::zero())),
        )
        .unwrap()
    }

    fn example_one<S: Scalar>() -> CoupledMapPair<S> {
        let r = S::from_ratio;
        affine_pair((r(1, 3), r(-1, 4)), (r(1, 8), r(-1, 6)), (None, Some(r(0, 1))), (Some(r(0, 1)), None))
    }

    fn example_two<S: Scalar>() -> CoupledMapPair<S> {
        let r = S::from_ratio;
        affine_pair(
            (r(1, 3), r(0, 1)),
            (r(1, 4), r(0, 1)),
            (Some(r(-1, 1)), Some(r(0, 1))),
            (Some(r(0, 1)), Some(r(1, 1))),
        )
    }

    fn unique_pair<S: Scalar>() -> CoupledMapPair<S> {
        let r = S::from_ratio;
        affine_pair(
            (r(1, 8), r(-1, 8)),
            (r(1, 8), r(-1, 8)),
            (Some(r(-1, 1)), Some(r(0, 1))),
            (Some(r(0, 1)), Some(r(1, 1))),
        )
    }

    fn banach_one<S: Scalar>() -> ContractionClass<S> {
        let r = S::from_ratio;
        ContractionClass::Banach { k: r(1, 3), l: r(1, 4), m: r(1, 8), n: r(1, 6) }
    }

    #[test]
    fn rate_factor_examples() {
        let (d1, d2, form) = rate_factors(&banach_one::<Q>()).unwrap();
        assert_eq!((d1, d2, form), (q(7, 12), q(7, 12), BoundForm::JointD1));

        let (d1, d2, form) = rate_factors(&ContractionClass::Quasi { k: q(1, 3), l: q(1, 4) }).unwrap();
        assert_eq!((d1, d2, form), (q(1, 2), q(1, 3), BoundForm::Split));

        let c = q(3, 5);
        let (d1, d2, _) =
            rate_factors(&ContractionClass::Reich { a: q(0, 1), b: q(0, 1), c: c.clone() }).unwrap();
        assert_eq!((d1, d2), (c.clone(), c));

        let (d1, d2, _) = rate_factors(&ContractionClass::Kannan {
            k: q(1, 4),
            l: q(1, 3),
            m: q(1, 5),
            n: q(1, 6),
        })
        .unwrap();
        assert_eq!((d1, d2), (q(4, 9), q(6, 25)));

        let (d1, d2, _) =
            rate_factors(&ContractionClass::Hybrid { a: q(1, 4), b: q(1, 8), c: q(1, 4) }).unwrap();
        assert_eq!((d1, d2), (q(3, 7), q(2, 3)));

        let bad = ContractionClass::Banach { k: 0.6, l: 0.6, m: 0.0, n: 0.0 };
        assert!(matches!(rate_factors(&bad), Err(Error::Config(_))));
    }

    #[test]
    fn apriori_bound_example_one() {
        let pair = example_one::<Q>();
        let p0 = ProductPoint::scalars(q(-1, 1), q(1, 1));
        let p1 = pair.iterate_step(&p0).unwrap();
        let cert = Certificate::new(&banach_one(), &p0, &p1).unwrap();
        assert_eq!(cert.d1(), q(9, 8));
        for j in 0..8 {
            let (bx, by) = apriori_bound(&cert, j);
            assert_eq!(bx, q(27, 10) * q(7, 12).powi(j));
            assert_eq!(bx, by);
        }

        let still = Certificate::new(&banach_one(), &p0, &p0).unwrap();
        assert_eq!(apriori_bound(&still, 3), (q(0, 1), q(0, 1)));
    }

    #[test]
    fn solve_example_one() {
        let pair = example_one::<f64>();
        let cfg = SolveConfig::with_tol(1e-10);
        let p0 = ProductPoint::scalars(-1.0, 1.0);
        let result = solve(&pair, Some(&banach_one()), &p0, &cfg).unwrap();
        assert!(result.converged);
        assert!(result.trace.steps() <= 60);
        let fp = &result.point;
        assert!(fp.x.coords()[0].abs() <= 1e-9 && fp.y.coords()[0].abs() <= 1e-9);
        assert!(result.hypotheses.all_hold());
        assert!(result.trace.check_shape().is_ok());
        let p1 = &result.trace.iterates[1];
        assert!((p1.x.coords()[0] + 7.0 / 12.0).abs() < 1e-15);
        assert!((p1.y.coords()[0] - 7.0 / 24.0).abs() < 1e-15);
    }

    #[test]
    fn solve_example_two_exact() {
        let pair = example_two::<Q>();
        let cfg = SolveConfig::with_tol(q(1, 10_000_000_000));
        let p0 = ProductPoint::scalars(q(-1, 1), q(1, 1));
        let class = ContractionClass::Quasi { k: q(1, 3), l: q(1, 4) };
        let result = solve(&pair, Some(&class), &p0, &cfg).unwrap();
        assert!(result.converged);
        assert!(result.hypotheses.trajectory_violations.is_empty());
        let n = result.trace.steps();
        assert_eq!(result.point, ProductPoint::scalars(-q(1, 3).powi(n), q(1, 4).powi(n)));
    }

    #[test]
    fn solve_at_fixed_point_takes_no_steps() {
        let pair = example_one::<f64>();
        let o = ProductPoint::scalars(0.0, 0.0);
        let result = solve(&pair, Some(&banach_one()), &o, &SolveConfig::default()).unwrap();
        assert!(result.converged);
        assert_eq!(result.trace.steps(), 0);
        assert_eq!(result.trace.residuals, vec![0.0]);
        let cert = result.certificate.unwrap();
        assert_eq!(apriori_bound(&cert, 0), (0.0, 0.0));
    }

    #[test]
    fn seed_failure_is_flagged_not_fatal() {
        let pair = example_one::<f64>();
        let p0 = ProductPoint::scalars(0.0, 1.0);
        let result = solve(&pair, None, &p0, &SolveConfig::default()).unwrap();
        assert!(!result.hypotheses.seed_ok);
        assert!(!result.hypotheses.trajectory_checked);
        assert!(!result.hypotheses.all_hold());
        assert!(result.converged);
    }

    #[test]
    fn max_iter_exhaustion() {
        let pair = example_one::<f64>();
        let p0 = ProductPoint::scalars(-1.0, 1.0);
        let mut cfg = SolveConfig::with_tol(1e-10);
        cfg.max_iter = 3;
        let result = solve(&pair, None, &p0, &cfg).unwrap();
        assert!(!result.converged);
        assert_eq!(result.trace.steps(), 3);
        assert_eq!(result.trace.residuals.len(), 4);
    }

    #[test]
    fn divergence_is_an_error() {
        let pair = affine_pair((3.0, 0.0), (3.0, 0.0), (None, None), (None, None));
        let p0 = ProductPoint::scalars(-1.0, 1.0);
        let err = solve(&pair, None, &p0, &SolveConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }), "{err}");
    }

    #[test]
    fn bad_config_rejected() {
        let pair = example_one::<f64>();
        let p0 = ProductPoint::scalars(-1.0, 1.0);
        let mut cfg = SolveConfig::<f64>::default();
        cfg.max_iter = 0;
        assert!(matches!(solve(&pair, None, &p0, &cfg), Err(Error::Config(_))));
        let cfg = SolveConfig::new(0.0, 1e-9, 10);
        assert!(matches!(solve(&pair, None, &p0, &cfg), Err(Error::Config(_))));
        let outside = ProductPoint::scalars(1.0, 1.0);
        assert!(matches!(
            solve(&pair, None, &outside, &SolveConfig::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn checked_solve_reports_samples() {
        let pair = example_one::<f64>();
        let p0 = ProductPoint::scalars(-1.0, 1.0);
        let result = solve_checked(
            &pair,
            Some(&banach_one()),
            &p0,
            &SolveConfig::default(),
            &SamplerConfig::new(200, 9),
        )
        .unwrap();
        assert!(result.hypotheses.monotone.as_ref().unwrap().is_clean());
        assert!(result.hypotheses.condition.as_ref().unwrap().is_clean());
        assert!(result.hypotheses.all_hold());
    }

    #[test]
    fn uniqueness_verdicts() {
        let sampler = SamplerConfig::new(100, 1);
        let settings = UniquenessConfig::default();
        let o = ProductPoint::scalars(0.0, 0.0);
        assert_eq!(
            uniqueness_probe(&example_one(), &banach_one(), &o, &o, &sampler, &settings).unwrap(),
            UniquenessVerdict::Identical
        );

        let pair = unique_pair::<f64>();
        let eighth = 0.125;
        let class = ContractionClass::Banach { k: eighth, l: eighth, m: eighth, n: eighth };
        let cfg = SolveConfig::with_tol(1e-10);
        let a = solve(&pair, Some(&class), &ProductPoint::scalars(-1.0, 1.0), &cfg).unwrap();
        let b = solve(&pair, Some(&class), &ProductPoint::scalars(-0.5, 0.5), &cfg).unwrap();
        assert_ne!(a.point, b.point);
        let verdict = uniqueness_probe(&pair, &class, &a.point, &b.point, &sampler, &settings).unwrap();
        assert_eq!(verdict.name(), "certified-unique");

        let pair = example_one::<f64>();
        let a = solve(&pair, None, &ProductPoint::scalars(-1.0, 1.0), &cfg).unwrap();
        let b = solve(&pair, None, &ProductPoint::scalars(-0.5, 0.5), &cfg).unwrap();
        let verdict =
            uniqueness_probe(&pair, &banach_one(), &a.point, &b.point, &sampler, &settings).unwrap();
        assert_eq!(verdict.name(), "uncertified");
    }

    #[test]
    fn uniqueness_rejects_non_fixed_points_and_other_classes() {
        let sampler = SamplerConfig::new(10, 1);
        let settings = UniquenessConfig::default();
        let o = ProductPoint::scalars(0.0, 0.0);
        let p = ProductPoint::scalars(-1.0, 1.0);
        let pair = example_one::<f64>();
        assert!(matches!(
            uniqueness_probe(&pair, &banach_one(), &o, &p, &sampler, &settings),
            Err(Error::Input(_))
        ));
        let quasi = ContractionClass::Quasi { k: 0.1, l: 0.1 };
        assert!(matches!(
            uniqueness_probe(&pair, &quasi, &o, &o, &sampler, &settings),
            Err(Error::Config(_))
        ));
    }
}
