//! Contraction hypotheses as checkable inequalities over comparable pairs.
//!
//! Every class bounds `d_X(F(x,y), F(u,v))` for `x ≥ u, y ≤ v` and
//! `d_Y(G(y,x), G(v,u))` for `x ≤ u, y ≥ v` by a nonnegative combination of
//! distance terms. Since every right-hand side is linear in the constants,
//! one routine produces both the slack of a given class and the LP row used
//! to fit constants from samples.

use std::fmt;

use crate::coupled_maps::CoupledMapPair;
use crate::error::{config, input, Error, Result};
use crate::lp::{LinearProgram, LpOutcome};
use crate::ordered_metric::{l1, Point, ProductPoint};
use crate::sampling::{box_corners, Sampler, SamplerConfig};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    Banach,
    Kannan,
    Chatterjea,
    Reich,
    Hybrid,
    Quasi,
}

impl ClassTag {
    pub const ALL: [ClassTag; 6] = [
        ClassTag::Banach,
        ClassTag::Kannan,
        ClassTag::Chatterjea,
        ClassTag::Reich,
        ClassTag::Hybrid,
        ClassTag::Quasi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Banach => "banach",
            ClassTag::Kannan => "kannan",
            ClassTag::Chatterjea => "chatterjea",
            ClassTag::Reich => "reich",
            ClassTag::Hybrid => "hybrid",
            ClassTag::Quasi => "quasi",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        ClassTag::ALL
            .into_iter()
            .find(|t| t.name() == name)
            .ok_or_else(|| config(format!("unknown contraction class '{name}'")))
    }

    /// Names of the constants, in storage order.
    pub fn constant_names(self) -> &'static [&'static str] {
        match self {
            ClassTag::Banach | ClassTag::Kannan | ClassTag::Chatterjea => &["k", "l", "m", "n"],
            ClassTag::Reich | ClassTag::Hybrid => &["a", "b", "c"],
            ClassTag::Quasi => &["k", "l"],
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A contraction class together with its constants.
#[derive(Debug, Clone, PartialEq)]
pub enum ContractionClass<S> {
    /// `d_X(F(x,y),F(u,v)) ≤ k d_X(x,u) + l d_Y(y,v)`,
    /// `d_Y(G(y,x),G(v,u)) ≤ m d_Y(y,v) + n d_X(x,u)`.
    Banach { k: S, l: S, m: S, n: S },
    /// `≤ k d_X(x,F(x,y)) + l d_X(u,F(u,v))` and the `G` mirror with `m, n`.
    Kannan { k: S, l: S, m: S, n: S },
    /// `≤ k d_X(x,F(u,v)) + l d_X(u,F(x,y))` and the `G` mirror with `m, n`.
    Chatterjea { k: S, l: S, m: S, n: S },
    /// `≤ a d_X(x,F(x,y)) + b d_X(u,F(u,v)) + c d_X(x,u)`, same constants for `G`.
    Reich { a: S, b: S, c: S },
    /// `≤ a d_X(x,F(u,v)) + b d_X(u,F(x,y)) + c d_X(x,u)`, same constants for `G`.
    Hybrid { a: S, b: S, c: S },
    /// `≤ k M(x,y,u,v)` and `≤ l N(y,x,v,u)`.
    Quasi { k: S, l: S },
}

impl<S: Scalar> ContractionClass<S> {
    pub fn tag(&self) -> ClassTag {
        match self {
            ContractionClass::Banach { .. } => ClassTag::Banach,
            ContractionClass::Kannan { .. } => ClassTag::Kannan,
            ContractionClass::Chatterjea { .. } => ClassTag::Chatterjea,
            ContractionClass::Reich { .. } => ClassTag::Reich,
            ContractionClass::Hybrid { .. } => ClassTag::Hybrid,
            ContractionClass::Quasi { .. } => ClassTag::Quasi,
        }
    }

    pub fn constants(&self) -> Vec<S> {
        match self {
            ContractionClass::Banach { k, l, m, n }
            | ContractionClass::Kannan { k, l, m, n }
            | ContractionClass::Chatterjea { k, l, m, n } => {
                vec![k.clone(), l.clone(), m.clone(), n.clone()]
            }
            ContractionClass::Reich { a, b, c } | ContractionClass::Hybrid { a, b, c } => {
                vec![a.clone(), b.clone(), c.clone()]
            }
            ContractionClass::Quasi { k, l } => vec![k.clone(), l.clone()],
        }
    }

    /// Inverse of [`ContractionClass::constants`]; does not check admissibility.
    pub fn from_constants(tag: ClassTag, values: Vec<S>) -> Result<Self> {
        let want = tag.constant_names().len();
        if values.len() != want {
            return Err(config(format!(
                "class {tag} takes {want} constants, got {}",
                values.len()
            )));
        }
        let mut it = values.into_iter();
        let mut next = || it.next().expect("length checked");
        Ok(match tag {
            ClassTag::Banach => ContractionClass::Banach {
                k: next(),
                l: next(),
                m: next(),
                n: next(),
            },
            ClassTag::Kannan => ContractionClass::Kannan {
                k: next(),
                l: next(),
                m: next(),
                n: next(),
            },
            ClassTag::Chatterjea => ContractionClass::Chatterjea {
                k: next(),
                l: next(),
                m: next(),
                n: next(),
            },
            ClassTag::Reich => ContractionClass::Reich {
                a: next(),
                b: next(),
                c: next(),
            },
            ClassTag::Hybrid => ContractionClass::Hybrid {
                a: next(),
                b: next(),
                c: next(),
            },
            ClassTag::Quasi => ContractionClass::Quasi { k: next(), l: next() },
        })
    }

    /// Checks the strict admissible region of the class.
    pub fn check_admissible(&self) -> Result<()> {
        let names = self.tag().constant_names();
        let values = self.constants();
        for (name, v) in names.iter().zip(&values) {
            if !v.is_finite() {
                return Err(config(format!("{name} must be finite")));
            }
            if *v < S::zero() {
                return Err(config(format!("{name}>=0 violated ({name}={v})")));
            }
        }
        let one = S::one();
        let two = S::from_ratio(2, 1);
        let strict = |value: S, label: &str| -> Result<()> {
            if value < S::one() {
                Ok(())
            } else {
                Err(config(format!("{label} violated ({label_value})", label_value = value)))
            }
        };
        match self {
            ContractionClass::Banach { k, l, m, n } => {
                for (name, v) in [("k", k), ("l", l), ("m", m), ("n", n)] {
                    if *v >= one {
                        return Err(config(format!("{name}<1 violated ({name}={v})")));
                    }
                }
                strict(k.clone() + l.clone(), "k+l<1")?;
                strict(m.clone() + n.clone(), "m+n<1")
            }
            ContractionClass::Kannan { .. }
            | ContractionClass::Chatterjea { .. }
            | ContractionClass::Quasi { .. } => {
                for (name, v) in names.iter().zip(&values) {
                    if *v >= S::half() {
                        return Err(config(format!("{name}<1/2 violated ({name}={v})")));
                    }
                }
                Ok(())
            }
            ContractionClass::Reich { a, b, c } => {
                strict(a.clone() + b.clone() + c.clone(), "a+b+c<1")
            }
            ContractionClass::Hybrid { a, b, c } => {
                strict(two.clone() * b.clone() + c.clone(), "2b+c<1")?;
                strict(two * a.clone() + c.clone(), "2a+c<1")
            }
        }
    }
}

impl<S: Scalar> fmt::Display for ContractionClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.tag())?;
        for (i, (name, v)) in self
            .tag()
            .constant_names()
            .iter()
            .zip(self.constants())
            .enumerate()
        {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, ")")
    }
}

fn max_all<S: Scalar>(values: impl IntoIterator<Item = S>) -> S {
    values.into_iter().fold(S::zero(), S::max_of)
}

/// `M(x,y,u,v) = max{d_X(x,u), d_X(x,F(x,y)), d_X(x,F(u,v)), d_X(u,F(u,v)), d_X(u,F(x,y))}`.
pub fn quasi_m<S: Scalar>(
    pair: &CoupledMapPair<S>,
    x: &Point<S>,
    y: &Point<S>,
    u: &Point<S>,
    v: &Point<S>,
) -> Result<S> {
    let fxy = pair.eval_f(x, y)?;
    let fuv = pair.eval_f(u, v)?;
    Ok(max_all([
        l1(x, u),
        l1(x, &fxy),
        l1(x, &fuv),
        l1(u, &fuv),
        l1(u, &fxy),
    ]))
}

/// `N(y,x,v,u) = max{d_Y(y,v), d_Y(y,G(y,x)), d_Y(y,G(v,u)), d_Y(v,G(v,u)), d_Y(v,G(y,x))}`.
pub fn quasi_n<S: Scalar>(
    pair: &CoupledMapPair<S>,
    y: &Point<S>,
    x: &Point<S>,
    v: &Point<S>,
    u: &Point<S>,
) -> Result<S> {
    let gyx = pair.eval_g(y, x)?;
    let gvu = pair.eval_g(v, u)?;
    Ok(max_all([
        l1(y, v),
        l1(y, &gyx),
        l1(y, &gvu),
        l1(v, &gvu),
        l1(v, &gyx),
    ]))
}

/// Which of the two inequalities a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    F,
    G,
}

/// Left-hand side and per-constant right-hand terms of one inequality:
/// the inequality reads `lhs ≤ Σ constants[i] · terms[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityTerms<S> {
    pub lhs: S,
    pub terms: Vec<S>,
}

impl<S: Scalar> InequalityTerms<S> {
    pub fn rhs(&self, constants: &[S]) -> S {
        self.terms
            .iter()
            .zip(constants)
            .fold(S::zero(), |acc, (t, c)| acc + t.clone() * c.clone())
    }
}

/// Both sides of a class evaluated on one comparable pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTerms<S> {
    pub f: InequalityTerms<S>,
    pub g: InequalityTerms<S>,
}

/// Orders a comparable pair as `(high, low)` with `low ≤ high`.
pub fn orient<S: Scalar>(
    pair: &CoupledMapPair<S>,
    a: &ProductPoint<S>,
    b: &ProductPoint<S>,
) -> Result<(ProductPoint<S>, ProductPoint<S>)> {
    let space = pair.space();
    if space.product_leq(b, a)? {
        Ok((a.clone(), b.clone()))
    } else if space.product_leq(a, b)? {
        Ok((b.clone(), a.clone()))
    } else {
        Err(input(format!("points {a} and {b} are not comparable")))
    }
}

/// Distance terms of class `tag` on the pair `low ≤ high`.
///
/// The `F` inequality takes `(x,y) = high`, `(u,v) = low` so that
/// `x ≥ u, y ≤ v`. The `G` inequality quantifies over `x ≤ u, y ≥ v` and so
/// takes `(y,x) = (low.y, low.x)`, `(v,u) = (high.y, high.x)`.
pub fn pair_terms<S: Scalar>(
    tag: ClassTag,
    pair: &CoupledMapPair<S>,
    high: &ProductPoint<S>,
    low: &ProductPoint<S>,
) -> Result<PairTerms<S>> {
    let (x, y, u, v) = (&high.x, &high.y, &low.x, &low.y);
    let fxy = pair.eval_f(x, y)?;
    let fuv = pair.eval_f(u, v)?;
    let (gx, gy, gu, gv) = (&low.x, &low.y, &high.x, &high.y);
    let gyx = pair.eval_g(gy, gx)?;
    let gvu = pair.eval_g(gv, gu)?;
    let lhs_f = l1(&fxy, &fuv);
    let lhs_g = l1(&gyx, &gvu);
    let z = S::zero;

    let (f_terms, g_terms) = match tag {
        ClassTag::Banach => (
            vec![l1(x, u), l1(y, v), z(), z()],
            vec![z(), z(), l1(gy, gv), l1(gx, gu)],
        ),
        ClassTag::Kannan => (
            vec![l1(x, &fxy), l1(u, &fuv), z(), z()],
            vec![z(), z(), l1(gy, &gyx), l1(gv, &gvu)],
        ),
        ClassTag::Chatterjea => (
            vec![l1(x, &fuv), l1(u, &fxy), z(), z()],
            vec![z(), z(), l1(gy, &gvu), l1(gv, &gyx)],
        ),
        ClassTag::Reich => (
            vec![l1(x, &fxy), l1(u, &fuv), l1(x, u)],
            vec![l1(gy, &gyx), l1(gv, &gvu), l1(gy, gv)],
        ),
        ClassTag::Hybrid => (
            vec![l1(x, &fuv), l1(u, &fxy), l1(x, u)],
            vec![l1(gy, &gvu), l1(gv, &gyx), l1(gy, gv)],
        ),
        ClassTag::Quasi => (
            vec![quasi_m(pair, x, y, u, v)?, z()],
            vec![z(), quasi_n(pair, gy, gx, gv, gu)?],
        ),
    };
    Ok(PairTerms {
        f: InequalityTerms {
            lhs: lhs_f,
            terms: f_terms,
        },
        g: InequalityTerms {
            lhs: lhs_g,
            terms: g_terms,
        },
    })
}

/// `lhs − rhs` for both inequalities; nonpositive means satisfied.
#[derive(Debug, Clone, PartialEq)]
pub struct Slack<S> {
    pub f: S,
    pub g: S,
    pub terms: PairTerms<S>,
}

impl<S: Scalar> Slack<S> {
    pub fn worst(&self) -> S {
        S::max_of(self.f.clone(), self.g.clone())
    }
}

/// Slack of `class` on a comparable pair, given in either order.
pub fn condition_slack<S: Scalar>(
    class: &ContractionClass<S>,
    pair: &CoupledMapPair<S>,
    a: &ProductPoint<S>,
    b: &ProductPoint<S>,
) -> Result<Slack<S>> {
    let (high, low) = orient(pair, a, b)?;
    let terms = pair_terms(class.tag(), pair, &high, &low)?;
    let constants = class.constants();
    Ok(Slack {
        f: terms.f.lhs.clone() - terms.f.rhs(&constants),
        g: terms.g.lhs.clone() - terms.g.rhs(&constants),
        terms,
    })
}

/// One sampled pair on which an inequality failed.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionViolation<S> {
    pub high: ProductPoint<S>,
    pub low: ProductPoint<S>,
    pub side: Side,
    pub lhs: S,
    pub rhs: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport<S> {
    pub samples_checked: usize,
    /// Maximum of `lhs − rhs` over both inequalities and all pairs.
    pub worst_slack: S,
    /// Slack above which a pair is listed as a violation.
    pub tolerance: S,
    pub violations: Vec<ConditionViolation<S>>,
}

impl<S: Scalar> ViolationReport<S> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn accumulate(
        tolerance: S,
        pairs: impl IntoIterator<Item = Result<(ProductPoint<S>, ProductPoint<S>, Slack<S>)>>,
    ) -> Result<Self> {
        let mut report = ViolationReport {
            samples_checked: 0,
            worst_slack: S::zero(),
            tolerance,
            violations: Vec::new(),
        };
        let mut first = true;
        for item in pairs {
            let (high, low, slack) = item?;
            report.samples_checked += 1;
            let worst = slack.worst();
            if first || worst > report.worst_slack {
                report.worst_slack = worst;
                first = false;
            }
            for (side, s, t) in [(Side::F, &slack.f, &slack.terms.f), (Side::G, &slack.g, &slack.terms.g)] {
                if *s > report.tolerance {
                    report.violations.push(ConditionViolation {
                        high: high.clone(),
                        low: low.clone(),
                        side,
                        lhs: t.lhs.clone(),
                        rhs: t.lhs.clone() - s.clone(),
                    });
                }
            }
        }
        Ok(report)
    }
}

/// Deterministic pairs every sampled check includes: comparable pairs of box
/// corners (which contain all axis-aligned corner pairs), or for more than
/// six total dimensions the axis-aligned pairs at the bottom and top corners.
pub fn deterministic_battery<S: Scalar>(
    pair: &CoupledMapPair<S>,
    radius: &S,
) -> Result<Vec<(ProductPoint<S>, ProductPoint<S>)>> {
    let space = pair.space();
    let mut out = Vec::new();
    if space.dim() <= 6 {
        let corners = box_corners(space, radius);
        for high in &corners {
            for low in &corners {
                if high != low && space.product_leq(low, high)? {
                    out.push((high.clone(), low.clone()));
                }
            }
        }
        return Ok(out);
    }
    let bottom = space.bottom(radius);
    let top = space.top(radius);
    out.push((top.clone(), bottom.clone()));
    let dx = space.x.dim();
    for axis in 0..space.dim() {
        for base in [&bottom, &top] {
            let mut raised = base.clone();
            let mut lowered = base.clone();
            let (b, t) = (bottom.flat().nth(axis).cloned(), top.flat().nth(axis).cloned());
            let (Some(b), Some(t)) = (b, t) else { continue };
            let set = |p: &mut ProductPoint<S>, v: S| {
                if axis < dx {
                    let mut c = p.x.coords().to_vec();
                    c[axis] = v;
                    p.x = Point::new(c);
                } else {
                    let mut c = p.y.coords().to_vec();
                    c[axis - dx] = v;
                    p.y = Point::new(c);
                }
            };
            set(&mut raised, t);
            set(&mut lowered, b);
            if raised != lowered {
                out.push((raised, lowered));
            }
        }
    }
    Ok(out)
}

/// The pair set a sampled check runs over: the deterministic battery
/// followed by `sampler.samples` random comparable pairs.
pub fn comparable_sample_set<S: Scalar>(
    pair: &CoupledMapPair<S>,
    sampler: &SamplerConfig,
) -> Result<Vec<(ProductPoint<S>, ProductPoint<S>)>> {
    let radius = sampler.radius::<S>()?;
    let mut set = deterministic_battery(pair, &radius)?;
    let mut draws = Sampler::new(pair.space(), sampler)?;
    set.extend((0..sampler.samples).map(|_| draws.comparable_pair()));
    Ok(set)
}

/// Checks `class` on the battery plus random comparable pairs.
pub fn verify_condition<S: Scalar>(
    class: &ContractionClass<S>,
    pair: &CoupledMapPair<S>,
    sampler: &SamplerConfig,
) -> Result<ViolationReport<S>> {
    class.check_admissible()?;
    let set = comparable_sample_set(pair, sampler)?;
    verify_on_pairs(class, pair, &set, sampler.slack_tolerance())
}

/// [`verify_condition`] over an explicit pair set.
pub fn verify_on_pairs<S: Scalar>(
    class: &ContractionClass<S>,
    pair: &CoupledMapPair<S>,
    set: &[(ProductPoint<S>, ProductPoint<S>)],
    tolerance: S,
) -> Result<ViolationReport<S>> {
    ViolationReport::accumulate(
        tolerance,
        set.iter().map(|(a, b)| {
            let slack = condition_slack(class, pair, a, b)?;
            let (high, low) = orient(pair, a, b)?;
            Ok((high, low, slack))
        }),
    )
}

/// Smallest admissible constants of class `tag` consistent with every
/// sampled pair.
///
/// Solves the LP minimizing the class functional (`k+l+m+n`, `a+b+c`,
/// `k+l`) subject to one row per sampled inequality and the closed
/// admissible region; ties go to the lexicographically smallest constant
/// vector. An infeasible LP, or an optimum on the boundary of the strict
/// region, is an [`Error::Estimation`].
pub fn estimate_constants<S: Scalar>(
    tag: ClassTag,
    pair: &CoupledMapPair<S>,
    sampler: &SamplerConfig,
) -> Result<ContractionClass<S>> {
    let set = comparable_sample_set(pair, sampler)?;
    estimate_on_pairs(tag, pair, &set, sampler.slack_tolerance())
}

/// [`estimate_constants`] over an explicit pair set.
pub fn estimate_on_pairs<S: Scalar>(
    tag: ClassTag,
    pair: &CoupledMapPair<S>,
    set: &[(ProductPoint<S>, ProductPoint<S>)],
    tolerance: S,
) -> Result<ContractionClass<S>> {
    let n = tag.constant_names().len();
    let mut lp = LinearProgram::new(n);
    for (a, b) in set {
        let (high, low) = orient(pair, a, b)?;
        let terms = pair_terms(tag, pair, &high, &low)?;
        for (side, ineq) in [(Side::F, terms.f), (Side::G, terms.g)] {
            if ineq.terms.iter().all(|t| t.is_zero()) {
                if ineq.lhs > tolerance {
                    return Err(Error::Estimation(format!(
                        "{side:?}-inequality has zero right-hand side but lhs {} at {high} vs {low}",
                        ineq.lhs
                    )));
                }
                continue;
            }
            lp.push_ge(ineq.terms, ineq.lhs);
        }
    }
    add_closed_region(tag, &mut lp);
    let objective = vec![S::one(); n];
    match lp.lexmin(&objective)? {
        LpOutcome::Infeasible => Err(Error::Estimation(format!(
            "no {tag} constants in the admissible region satisfy the sampled pairs"
        ))),
        LpOutcome::Optimal { z, .. } => {
            let class = ContractionClass::from_constants(tag, z)?;
            class.check_admissible().map_err(|e| {
                Error::Estimation(format!("best fit {class} is inadmissible: {e}"))
            })?;
            Ok(class)
        }
    }
}

fn add_closed_region<S: Scalar>(tag: ClassTag, lp: &mut LinearProgram<S>) {
    let one = S::one;
    let zero = S::zero;
    let two = || S::from_ratio(2, 1);
    match tag {
        ClassTag::Banach => {
            lp.push_le(vec![one(), one(), zero(), zero()], one());
            lp.push_le(vec![zero(), zero(), one(), one()], one());
        }
        ClassTag::Kannan | ClassTag::Chatterjea | ClassTag::Quasi => {
            let n = tag.constant_names().len();
            for i in 0..n {
                let mut row = vec![zero(); n];
                row[i] = one();
                lp.push_le(row, S::half());
            }
        }
        ClassTag::Reich => lp.push_le(vec![one(), one(), one()], one()),
        ClassTag::Hybrid => {
            lp.push_le(vec![zero(), two(), one()], one());
            lp.push_le(vec![two(), zero(), one()], one());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupled_maps::{AffineMap, Builtin, MapSpec};
    use crate::ordered_metric::SpaceDescriptor;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn example_one<S: Scalar>() -> CoupledMapPair<S> {
        let r = S::from_ratio;
        CoupledMapPair::new(
            SpaceDescriptor::interval(None, Some(r(0, 1))).unwrap(),
            SpaceDescriptor::interval(Some(r(0, 1)), None).unwrap(),
            MapSpec::Affine(AffineMap::scalar(r(1, 3), r(-1, 4), r(0, 1))),
            MapSpec::Affine(AffineMap::scalar(r(1, 8), r(-1, 6), r(0, 1))),
        )
        .unwrap()
    }

    fn example_two<S: Scalar>() -> CoupledMapPair<S> {
        let r = S::from_ratio;
        CoupledMapPair::new(
            SpaceDescriptor::interval(Some(r(-1, 1)), Some(r(0, 1))).unwrap(),
            SpaceDescriptor::interval(Some(r(0, 1)), Some(r(1, 1))).unwrap(),
            MapSpec::Builtin(Builtin::OneThird),
            MapSpec::Builtin(Builtin::OneQuarter),
        )
        .unwrap()
    }

    fn banach_example<S: Scalar>() -> ContractionClass<S> {
        let r = S::from_ratio;
        ContractionClass::Banach {
            k: r(1, 3),
            l: r(1, 4),
            m: r(1, 8),
            n: r(1, 6),
        }
    }

    fn pt(v: Q) -> Point<Q> {
        Point::scalar(v)
    }

    #[test]
    fn admissibility_per_class() {
        let b = |k, l, m, n| ContractionClass::Banach { k, l, m, n };
        assert!(banach_example::<f64>().check_admissible().is_ok());
        let err = b(0.6, 0.6, 0.1, 0.1).check_admissible().unwrap_err();
        assert!(err.to_string().contains("k+l<1 violated"), "{err}");
        assert!(b(0.1, 0.1, 0.5, 0.5).check_admissible().is_err());
        assert!(b(-0.1, 0.1, 0.1, 0.1).check_admissible().is_err());

        let kannan = ContractionClass::Kannan { k: 0.49, l: 0.49, m: 0.0, n: 0.1 };
        assert!(kannan.check_admissible().is_ok());
        let kannan = ContractionClass::Kannan { k: 0.5, l: 0.0, m: 0.0, n: 0.0 };
        assert!(kannan.check_admissible().is_err());
        assert!(ContractionClass::Quasi { k: 1.0 / 3.0, l: 0.25 }.check_admissible().is_ok());
        assert!(ContractionClass::Quasi { k: 0.5, l: 0.25 }.check_admissible().is_err());
        assert!(ContractionClass::Chatterjea { k: 0.1, l: 0.1, m: 0.1, n: 0.5 }
            .check_admissible()
            .is_err());

        assert!(ContractionClass::Reich { a: 0.3, b: 0.3, c: 0.3 }.check_admissible().is_ok());
        let err = ContractionClass::Reich { a: 0.4, b: 0.3, c: 0.3 }
            .check_admissible()
            .unwrap_err();
        assert!(err.to_string().contains("a+b+c<1"));
        assert!(ContractionClass::Reich { a: -0.1, b: 0.3, c: 0.3 }.check_admissible().is_err());

        assert!(ContractionClass::Hybrid { a: 0.2, b: 0.2, c: 0.5 }.check_admissible().is_ok());
        assert!(ContractionClass::Hybrid { a: 0.1, b: 0.3, c: 0.4 }.check_admissible().is_err());
        assert!(ContractionClass::Hybrid { a: 0.3, b: 0.1, c: 0.4 }.check_admissible().is_err());
    }

    #[test]
    fn constants_round_trip() {
        for tag in ClassTag::ALL {
            let values: Vec<f64> = (0..tag.constant_names().len()).map(|i| i as f64 / 10.0).collect();
            let class = ContractionClass::from_constants(tag, values.clone()).unwrap();
            assert_eq!(class.tag(), tag);
            assert_eq!(class.constants(), values);
            assert_eq!(ClassTag::from_name(tag.name()).unwrap(), tag);
        }
        assert!(ContractionClass::<f64>::from_constants(ClassTag::Reich, vec![0.1]).is_err());
        assert!(ClassTag::from_name("edelstein").is_err());
    }

    #[test]
    fn quasi_m_examples() {
        let pair = example_two::<Q>();
        let m = quasi_m(&pair, &pt(q(-1, 1)), &pt(q(1, 1)), &pt(q(0, 1)), &pt(q(0, 1))).unwrap();
        assert_eq!(m, q(1, 1));

        let (x, y) = (pt(q(-1, 2)), pt(q(1, 2)));
        let m = quasi_m(&pair, &x, &y, &x, &y).unwrap();
        let fx = pair.eval_f(&x, &y).unwrap();
        assert_eq!(m, l1(&x, &fx));

        let o = pt(q(0, 1));
        assert_eq!(quasi_m(&pair, &o, &o, &o, &o).unwrap(), q(0, 1));
    }

    #[test]
    fn quasi_n_examples() {
        let pair = example_two::<Q>();
        let n = quasi_n(&pair, &pt(q(1, 1)), &pt(q(-1, 1)), &pt(q(0, 1)), &pt(q(0, 1))).unwrap();
        assert_eq!(n, q(1, 1));

        let (y, x) = (pt(q(1, 2)), pt(q(-1, 2)));
        let gy = pair.eval_g(&y, &x).unwrap();
        assert_eq!(quasi_n(&pair, &y, &x, &y, &x).unwrap(), l1(&y, &gy));

        let o = pt(q(0, 1));
        assert_eq!(quasi_n(&pair, &o, &o, &o, &o).unwrap(), q(0, 1));
    }

    #[test]
    fn banach_slack_is_zero_on_extremal_pair() {
        let pair = example_one::<Q>();
        let a = ProductPoint::scalars(q(0, 1), q(0, 1));
        let b = ProductPoint::scalars(q(-1, 1), q(1, 1));
        let slack = condition_slack(&banach_example(), &pair, &a, &b).unwrap();
        assert_eq!(slack.terms.f.lhs, q(7, 12));
        assert_eq!(slack.terms.f.rhs(&banach_example::<Q>().constants()), q(7, 12));
        assert_eq!(slack.f, q(0, 1));
        assert_eq!(slack.g, q(0, 1));
        assert_eq!(condition_slack(&banach_example(), &pair, &b, &a).unwrap(), slack);
    }

    #[test]
    fn slack_on_identical_points() {
        let pair = example_one::<Q>();
        let a = ProductPoint::scalars(q(-3, 5), q(2, 7));
        for tag in ClassTag::ALL {
            let class =
                ContractionClass::from_constants(tag, vec![q(1, 10); tag.constant_names().len()])
                    .unwrap();
            let s = condition_slack(&class, &pair, &a, &a).unwrap();
            assert_eq!(s.terms.f.lhs, q(0, 1));
            assert_eq!(s.terms.g.lhs, q(0, 1));
            assert!(s.f <= q(0, 1) && s.g <= q(0, 1));
        }
    }

    #[test]
    fn quasi_slack_example() {
        let pair = example_two::<Q>();
        let class = ContractionClass::Quasi { k: q(1, 3), l: q(1, 4) };
        let a = ProductPoint::scalars(q(0, 1), q(1, 2));
        let b = ProductPoint::scalars(q(-1, 1), q(1, 2));
        let s = condition_slack(&class, &pair, &a, &b).unwrap();
        assert_eq!(s.terms.f.lhs, q(1, 3));
        assert_eq!(s.f, q(0, 1));
    }

    #[test]
    fn incomparable_pair_is_input_error() {
        let pair = example_one::<f64>();
        let a = ProductPoint::scalars(-1.0, 0.0);
        let b = ProductPoint::scalars(0.0, 1.0);
        // a.x ≤ b.x but a.y ≤ b.y as well: incomparable in the mixed order.
        let err = condition_slack(&banach_example(), &pair, &a, &b).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn verify_examples() {
        let pair = example_one::<f64>();
        let report = verify_condition(&banach_example(), &pair, &SamplerConfig::new(1000, 5)).unwrap();
        assert!(report.is_clean());
        assert!(report.worst_slack.abs() <= 1e-12, "{}", report.worst_slack);

        let weak = ContractionClass::Banach { k: 0.1, l: 0.1, m: 0.1, n: 0.1 };
        let report = verify_condition(&weak, &pair, &SamplerConfig::new(100, 5)).unwrap();
        assert!(!report.is_clean());
        assert!(report.worst_slack > 0.0);

        let constant = CoupledMapPair::new(
            SpaceDescriptor::interval(Some(-1.0), Some(1.0)).unwrap(),
            SpaceDescriptor::interval(Some(-1.0), Some(1.0)).unwrap(),
            MapSpec::Affine(AffineMap::constant(vec![0.3], 1, 1)),
            MapSpec::Affine(AffineMap::constant(vec![-0.2], 1, 1)),
        )
        .unwrap();
        for tag in ClassTag::ALL {
            let class =
                ContractionClass::from_constants(tag, vec![0.1; tag.constant_names().len()]).unwrap();
            let report = verify_condition(&class, &constant, &SamplerConfig::new(200, 1)).unwrap();
            assert!(report.is_clean(), "{tag}");
        }
    }

    #[test]
    fn verify_is_exact_in_rationals() {
        let pair = example_one::<Q>();
        let report = verify_condition(&banach_example(), &pair, &SamplerConfig::new(200, 5)).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.worst_slack, q(0, 1));
    }

    #[test]
    fn verify_rejects_inadmissible_before_sampling() {
        let pair = example_one::<f64>();
        let bad = ContractionClass::Banach { k: 0.6, l: 0.6, m: 0.1, n: 0.1 };
        let err = verify_condition(&bad, &pair, &SamplerConfig::new(10, 0)).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn estimate_recovers_example_constants() {
        let pair = example_one::<f64>();
        let class = estimate_constants(ClassTag::Banach, &pair, &SamplerConfig::new(1000, 11)).unwrap();
        let got = class.constants();
        let want = [1.0 / 3.0, 0.25, 0.125, 1.0 / 6.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= 1e-9, "{got:?}");
        }
    }

    #[test]
    fn estimate_is_exact_in_rationals() {
        let pair = example_one::<Q>();
        let class = estimate_constants(ClassTag::Banach, &pair, &SamplerConfig::new(20, 11)).unwrap();
        assert_eq!(class, banach_example());
    }

    #[test]
    fn estimate_constant_maps_gives_zero() {
        let constant = CoupledMapPair::new(
            SpaceDescriptor::interval(Some(-1.0), Some(1.0)).unwrap(),
            SpaceDescriptor::interval(Some(-1.0), Some(1.0)).unwrap(),
            MapSpec::Affine(AffineMap::constant(vec![0.3], 1, 1)),
            MapSpec::Affine(AffineMap::constant(vec![-0.2], 1, 1)),
        )
        .unwrap();
        for tag in ClassTag::ALL {
            let class = estimate_constants(tag, &constant, &SamplerConfig::new(100, 2)).unwrap();
            assert!(class.constants().iter().all(|c| *c == 0.0), "{class}");
        }
    }

    #[test]
    fn estimate_identity_fails() {
        let identity = CoupledMapPair::new(
            SpaceDescriptor::interval(Some(-1.0), Some(0.0)).unwrap(),
            SpaceDescriptor::interval(Some(0.0), Some(1.0)).unwrap(),
            MapSpec::Affine(AffineMap::scalar(1.0, 0.0, 0.0)),
            MapSpec::Affine(AffineMap::constant(vec![0.0], 1, 0 + 1)),
        )
        .unwrap();
        let err = estimate_constants(ClassTag::Banach, &identity, &SamplerConfig::new(100, 3))
            .unwrap_err();
        assert!(matches!(err, Error::Estimation(_)), "{err}");
    }

    #[test]
    fn estimate_quasi_on_example_two() {
        let pair = example_two::<Q>();
        let class = estimate_constants(ClassTag::Quasi, &pair, &SamplerConfig::new(30, 4)).unwrap();
        let ContractionClass::Quasi { k, l } = &class else { unreachable!() };
        // The fitted constants never exceed the hand-verified ones.
        assert!(*k <= q(1, 3) && *l <= q(1, 4), "{class}");
        let set = comparable_sample_set(&pair, &SamplerConfig::new(30, 4)).unwrap();
        assert!(verify_on_pairs(&class, &pair, &set, q(0, 1)).unwrap().is_clean());
    }

    #[test]
    fn battery_contains_axis_pairs() {
        let pair = example_one::<f64>();
        let battery = deterministic_battery(&pair, &10.0).unwrap();
        // 1-D × 1-D: corners (-10,0),(-10,10),(0,0),(0,10); comparable ordered pairs:
        let has = |h: (f64, f64), l: (f64, f64)| {
            battery.contains(&(ProductPoint::scalars(h.0, h.1), ProductPoint::scalars(l.0, l.1)))
        };
        assert!(has((0.0, 0.0), (-10.0, 0.0)));
        assert!(has((0.0, 0.0), (0.0, 10.0)));
        assert!(has((0.0, 0.0), (-10.0, 10.0)));
        assert_eq!(battery.len(), 5);
    }

    #[test]
    fn battery_high_dimension_uses_axis_pairs() {
        let space = SpaceDescriptor::bounded(vec![0.0; 4], vec![1.0; 4]).unwrap();
        let zero4 = AffineMap::constant(vec![0.0; 4], 4, 4);
        let pair = CoupledMapPair::new(
            space.clone(),
            space,
            MapSpec::Affine(zero4.clone()),
            MapSpec::Affine(zero4),
        )
        .unwrap();
        let battery = deterministic_battery(&pair, &1.0).unwrap();
        assert_eq!(battery.len(), 1 + 8 * 2);
        for (h, l) in &battery {
            assert!(pair.space().product_leq(l, h).unwrap());
        }
    }
}
