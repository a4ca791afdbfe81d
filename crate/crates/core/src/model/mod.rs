//! Shared domain types: features, losses, hypotheses, convex combinations.

use std::fmt;
use std::sync::Arc;

pub mod distribution;
pub mod erm;
pub mod predictor;
pub mod transcript;

pub use distribution::FiniteDistribution;
pub use erm::{erm_oracle, erm_threshold_composed};
pub use predictor::{MonotoneStep, Predictor, PredictorMixture};
pub use transcript::Transcript;

/// sgn with the convention sgn(0) = +1.
#[inline]
pub fn sgn(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// A feature vector: coordinates in R^d plus an optional opaque index
/// for table-based hypotheses.
#[derive(Clone, Debug, PartialEq)]
pub struct Feature {
    pub coords: Vec<f64>,
    pub index: Option<usize>,
}

impl Feature {
    pub fn from_coords(coords: Vec<f64>) -> Self {
        Feature { coords, index: None }
    }

    pub fn scalar(x: f64) -> Self {
        Feature { coords: vec![x], index: None }
    }

    pub fn indexed(index: usize, coords: Vec<f64>) -> Self {
        Feature { coords, index: Some(index) }
    }

    /// Context-free placeholder used by the adversarial examples.
    pub fn empty() -> Self {
        Feature { coords: Vec::new(), index: None }
    }
}

/// A bounded loss l(p, y) with p in [0,1], y in {0,1}, values in [-1,1].
#[derive(Clone)]
pub struct Loss {
    label: String,
    f: Arc<dyn Fn(f64, bool) -> f64 + Send + Sync>,
}

impl Loss {
    pub fn new(label: impl Into<String>, f: impl Fn(f64, bool) -> f64 + Send + Sync + 'static) -> Self {
        Loss { label: label.into(), f: Arc::new(f) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn eval(&self, p: f64, y: bool) -> f64 {
        (self.f)(p, y)
    }

    /// Discrete derivative: l(p,1) - l(p,0).
    #[inline]
    pub fn delta(&self, p: f64) -> f64 {
        self.eval(p, true) - self.eval(p, false)
    }

    /// E_{y ~ Ber(q)}[ l(p, y) ].
    #[inline]
    pub fn expected(&self, p: f64, q: f64) -> f64 {
        q * self.eval(p, true) + (1.0 - q) * self.eval(p, false)
    }
}

impl fmt::Debug for Loss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Loss({})", self.label)
    }
}

/// A hypothesis X -> [-1,1]. Hypotheses used as omniprediction benchmarks
/// keep their outputs in [0,1].
#[derive(Clone)]
pub struct Hypothesis {
    label: String,
    f: Arc<dyn Fn(&Feature) -> f64 + Send + Sync>,
}

impl Hypothesis {
    pub fn new(label: impl Into<String>, f: impl Fn(&Feature) -> f64 + Send + Sync + 'static) -> Self {
        Hypothesis { label: label.into(), f: Arc::new(f) }
    }

    pub fn constant(value: f64) -> Self {
        Hypothesis::new(format!("const({value})"), move |_| value)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn eval(&self, x: &Feature) -> f64 {
        (self.f)(x)
    }

    /// The pointwise negation, labeled `-label`.
    pub fn negated(&self) -> Self {
        let inner = self.f.clone();
        Hypothesis { label: format!("-{}", self.label), f: Arc::new(move |x| -(inner)(x)) }
    }
}

impl fmt::Debug for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypothesis({})", self.label)
    }
}

/// Close a class under negation by appending the negated members.
pub fn double_signed(class: &[Hypothesis]) -> Vec<Hypothesis> {
    let mut out = Vec::with_capacity(class.len() * 2);
    out.extend_from_slice(class);
    out.extend(class.iter().map(Hypothesis::negated));
    out
}

/// An explicit finite mixture of hypotheses with nonnegative weights
/// summing to one.
#[derive(Clone, Debug)]
pub struct ConvexCombination {
    pub atoms: Vec<(Hypothesis, f64)>,
}

impl ConvexCombination {
    pub fn new(atoms: Vec<(Hypothesis, f64)>) -> Self {
        let c = ConvexCombination { atoms };
        debug_assert!(c.weight_error() < 1e-10, "mixture weights must sum to 1");
        c
    }

    pub fn point(h: Hypothesis) -> Self {
        ConvexCombination { atoms: vec![(h, 1.0)] }
    }

    pub fn eval(&self, x: &Feature) -> f64 {
        self.atoms.iter().map(|(h, a)| a * h.eval(x)).sum()
    }

    pub fn weight_error(&self) -> f64 {
        (self.atoms.iter().map(|(_, a)| a).sum::<f64>() - 1.0).abs()
    }

    pub fn is_probability_vector(&self, tol: f64) -> bool {
        self.atoms.iter().all(|(_, a)| *a >= -tol) && self.weight_error() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sgn_convention_at_zero() {
        assert_eq!(sgn(0.0), 1.0);
        assert_eq!(sgn(-0.0), 1.0);
        assert_eq!(sgn(1e-300), 1.0);
        assert_eq!(sgn(-1e-300), -1.0);
    }

    #[test]
    fn delta_of_squared_loss() {
        let sq = Loss::new("sq", |p, y| (p - if y { 1.0 } else { 0.0 }).powi(2));
        // delta(p) = (p-1)^2 - p^2 = 1 - 2p
        assert!((sq.delta(0.5)).abs() < 1e-15);
        assert!((sq.delta(0.1) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn signed_doubling_negates() {
        let class = vec![Hypothesis::constant(0.7)];
        let doubled = double_signed(&class);
        let x = Feature::empty();
        assert_eq!(doubled.len(), 2);
        assert_eq!(doubled[1].eval(&x), -0.7);
        assert_eq!(doubled[1].label(), "-const(0.7)");
    }

    #[test]
    fn mixture_eval_is_weighted_average() {
        let mix = ConvexCombination::new(vec![
            (Hypothesis::constant(1.0), 0.25),
            (Hypothesis::constant(-1.0), 0.75),
        ]);
        assert!((mix.eval(&Feature::empty()) + 0.5).abs() < 1e-15);
        assert!(mix.is_probability_vector(1e-10));
    }
}
