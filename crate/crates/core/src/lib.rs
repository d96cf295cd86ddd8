//! FG-coupled fixed points of mixed monotone map pairs on ordered boxes.
//!
//! A pair `F: X × Y → X`, `G: Y × X → Y` over real boxes is iterated as
//! `(x, y) ↦ (F(x, y), G(y, x))` from a seed with `x₀ ≤ F(x₀, y₀)` and
//! `G(y₀, x₀) ≤ y₀`. Each contraction class gives a geometric rate and an a
//! priori error bound; every hypothesis can be falsified by sampling and
//! cross-checked against brute-force grid oracles.
//!
//! Everything is generic over [`Scalar`]; the aliases below fix `f64` or
//! exact [`BigRational`] arithmetic.
//!
//! ```
//! use fgcouple::{AffineMap, CoupledMapPair, MapSpec, ProductPoint, SolveConfig, SpaceDescriptor};
//!
//! let pair = CoupledMapPair::new(
//!     SpaceDescriptor::interval(None, Some(0.0)).unwrap(),
//!     SpaceDescriptor::interval(Some(0.0), None).unwrap(),
//!     MapSpec::Affine(AffineMap::scalar(1.0 / 3.0, -0.25, 0.0)),
//!     MapSpec::Affine(AffineMap::scalar(0.125, -1.0 / 6.0, 0.0)),
//! )
//! .unwrap();
//! let seed = ProductPoint::scalars(-1.0, 1.0);
//! let result = fgcouple::solve(&pair, None, &seed, &SolveConfig::with_tol(1e-10)).unwrap();
//! assert!(result.converged);
//! ```

pub mod contraction;
pub mod coupled_maps;
pub mod error;
pub mod lp;
pub mod oracle;
pub mod ordered_metric;
pub mod sampling;
pub mod scalar;
pub mod solver;

pub use num_rational::BigRational;

pub use contraction::{
    comparable_sample_set, condition_slack, deterministic_battery, estimate_constants,
    estimate_on_pairs, orient, pair_terms, quasi_m, quasi_n, verify_condition, verify_on_pairs,
    ClassTag, ConditionViolation, ContractionClass, InequalityTerms, PairTerms, Side, Slack,
    ViolationReport,
};
pub use coupled_maps::{
    AffineMap, Builtin, CoupledMapPair, MapSpec, Matrix, MonotoneClause, MonotoneReport,
    MonotoneViolation,
};
pub use error::{Error, Result};
pub use lp::{LinearProgram, LpOutcome};
pub use oracle::{
    audit_trace, condition_brute_force, grid_residual_minimizer, AuditReport, GridSpec,
};
pub use ordered_metric::{leq, metric, Edge, Point, ProductPoint, ProductSpace, Relation, SpaceDescriptor};
pub use sampling::{grid_value, SamplerConfig};
pub use scalar::Scalar;
pub use solver::{
    apriori_bound, rate_factors, solve, solve_checked, uniqueness_probe, BoundForm, Certificate,
    ComparabilityWitness, FixedPointResult, HypothesisMode, HypothesisReport, IterationTrace,
    SolveConfig, UniquenessConfig, UniquenessVerdict,
};

pub type SpaceF64 = SpaceDescriptor<f64>;
pub type PointF64 = Point<f64>;
pub type ProductPointF64 = ProductPoint<f64>;
pub type PairF64 = CoupledMapPair<f64>;
pub type ClassF64 = ContractionClass<f64>;
pub type ResultF64 = FixedPointResult<f64>;

pub type SpaceQ = SpaceDescriptor<BigRational>;
pub type PointQ = Point<BigRational>;
pub type ProductPointQ = ProductPoint<BigRational>;
pub type PairQ = CoupledMapPair<BigRational>;
pub type ClassQ = ContractionClass<BigRational>;
pub type ResultQ = FixedPointResult<BigRational>;
