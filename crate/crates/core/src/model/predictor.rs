//! Predictors: maps from features to a [1/T] prediction grid, tagged by
//! representation.

use super::{ConvexCombination, Feature};

/// A monotone non-decreasing step function [-1,1] -> {0, 1/den, ..., 1},
/// stored as breakpoints: output is `levels[k]` for inputs in
/// [cuts[k-1], cuts[k]), with cuts[-1] = -inf and cuts[len-1] = +inf.
#[derive(Clone, Debug)]
pub struct MonotoneStep {
    pub den: u64,
    /// Strictly increasing interior cut points.
    pub cuts: Vec<f64>,
    /// Non-decreasing output grid indices; len = cuts.len() + 1.
    pub levels: Vec<u64>,
}

impl MonotoneStep {
    pub fn constant(den: u64, level: u64) -> Self {
        MonotoneStep { den, cuts: Vec::new(), levels: vec![level] }
    }

    /// Grid index for input q.
    pub fn apply_idx(&self, q: f64) -> u64 {
        // first cut strictly greater than q selects the segment
        let k = self.cuts.partition_point(|&c| c <= q);
        self.levels[k]
    }

    pub fn apply(&self, q: f64) -> f64 {
        self.apply_idx(q) as f64 / self.den as f64
    }

    /// Non-decreasing on a sorted probe grid.
    pub fn is_monotone_on(&self, probes: &[f64]) -> bool {
        let mut prev = u64::MIN;
        let mut first = true;
        for &q in probes {
            let v = self.apply_idx(q);
            if !first && v < prev {
                return false;
            }
            prev = v;
            first = false;
        }
        true
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, u64)> + '_ {
        // (cut, level-to-the-right); the leading level is paired with -1.
        std::iter::once((-1.0, self.levels[0]))
            .chain(self.cuts.iter().zip(self.levels[1..].iter()).map(|(&c, &l)| (c, l)))
    }
}

/// The base a predictor remaps: a single hypothesis or an explicit mixture.
#[derive(Clone, Debug)]
pub enum BaseFn {
    Single(super::Hypothesis),
    Mix(ConvexCombination),
}

impl BaseFn {
    pub fn eval(&self, x: &Feature) -> f64 {
        match self {
            BaseFn::Single(h) => h.eval(x),
            BaseFn::Mix(m) => m.eval(x),
        }
    }
}

/// Representation tag carried by every predictor.
#[derive(Clone, Debug)]
pub enum PredictorRepr {
    Constant(f64),
    /// Values per feature index (table hypotheses address by `Feature::index`).
    Table(Vec<f64>),
    MonotoneRemap { base: BaseFn, remap: MonotoneStep },
    /// Direct convex combination of hypotheses, clamped to [0,1].
    Blend(ConvexCombination),
}

/// A prediction function X -> [0,1]. When `grid` is declared, every output
/// is an exact multiple of 1/grid.
#[derive(Clone, Debug)]
pub struct Predictor {
    pub grid: Option<u64>,
    pub repr: PredictorRepr,
}

impl Predictor {
    pub fn constant_on_grid(num: u64, den: u64) -> Self {
        Predictor { grid: Some(den), repr: PredictorRepr::Constant(num as f64 / den as f64) }
    }

    pub fn constant(value: f64) -> Self {
        Predictor { grid: None, repr: PredictorRepr::Constant(value) }
    }

    pub fn table(values: Vec<f64>, grid: Option<u64>) -> Self {
        Predictor { grid, repr: PredictorRepr::Table(values) }
    }

    pub fn remap(base: BaseFn, remap: MonotoneStep) -> Self {
        Predictor { grid: Some(remap.den), repr: PredictorRepr::MonotoneRemap { base, remap } }
    }

    pub fn blend(mix: ConvexCombination) -> Self {
        Predictor { grid: None, repr: PredictorRepr::Blend(mix) }
    }

    pub fn eval(&self, x: &Feature) -> f64 {
        match &self.repr {
            PredictorRepr::Constant(v) => *v,
            PredictorRepr::Table(values) => {
                let i = x.index.expect("table predictor requires an indexed feature");
                values[i]
            }
            PredictorRepr::MonotoneRemap { base, remap } => remap.apply(base.eval(x)),
            PredictorRepr::Blend(mix) => mix.eval(x).clamp(0.0, 1.0),
        }
    }
}

/// A randomized predictor: an explicit mixture over predictors. Distributional
/// metrics average over the atoms.
#[derive(Clone, Debug)]
pub struct PredictorMixture {
    pub atoms: Vec<(Predictor, f64)>,
}

impl PredictorMixture {
    pub fn uniform(predictors: Vec<Predictor>) -> Self {
        let w = 1.0 / predictors.len() as f64;
        PredictorMixture { atoms: predictors.into_iter().map(|p| (p, w)).collect() }
    }

    pub fn single(p: Predictor) -> Self {
        PredictorMixture { atoms: vec![(p, 1.0)] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_function_lookup() {
        let s = MonotoneStep { den: 4, cuts: vec![0.0, 0.5], levels: vec![0, 2, 4] };
        assert_eq!(s.apply_idx(-1.0), 0);
        assert_eq!(s.apply_idx(-1e-12), 0);
        assert_eq!(s.apply_idx(0.0), 2); // cut itself belongs to the right segment
        assert_eq!(s.apply_idx(0.49), 2);
        assert_eq!(s.apply_idx(0.5), 4);
        assert_eq!(s.apply(1.0), 1.0);
        let probes: Vec<f64> = (0..100).map(|i| -1.0 + 0.02 * i as f64).collect();
        assert!(s.is_monotone_on(&probes));
    }

    #[test]
    fn grid_outputs_are_exact_multiples() {
        let s = MonotoneStep { den: 10, cuts: vec![0.3], levels: vec![3, 7] };
        let p = Predictor::remap(BaseFn::Single(super::super::Hypothesis::constant(0.9)), s);
        let v = p.eval(&Feature::empty());
        let den = p.grid.unwrap() as f64;
        assert_eq!(v * den, (v * den).round());
    }
}
