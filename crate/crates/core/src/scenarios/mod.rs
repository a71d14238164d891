//! Constructions, random instances and statement verifiers.

mod counterexample;
mod gauge;
mod random;
mod verify;

pub use counterexample::{
    build_colorful_counterexample, build_quantitative_counterexample, rainbow_triples, Certificate, Check,
    ColorfulCounterexample, NamedLine, QuantitativeCounterexample, COUNTEREXAMPLE_ALPHA, DEFAULT_DELTA,
    DEFAULT_EPSILON,
};
pub use gauge::{gauge_points, RectangleGauge};
pub use random::{generate, random_family, GeneratedFamily, GeneratorMode, GeneratorParams};
pub use verify::{
    check_hypothesis, check_prerequisites, verify_theorem, HypothesisCheck, Status, TheoremId, VerificationReport,
    VerifyOptions, Violation,
};
