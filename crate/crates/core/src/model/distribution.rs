//! Finite-support data distributions. All distributional errors are computed
//! exactly by summation over the support.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::Feature;
use crate::error::{Error, Result};

/// Support atom: a feature point, its conditional probability of outcome 1,
/// and its probability mass.
#[derive(Clone, Debug)]
pub struct Atom {
    pub x: Feature,
    pub eta: f64,
    pub mass: f64,
}

#[derive(Clone, Debug)]
pub struct FiniteDistribution {
    pub support: Vec<Atom>,
    /// Cumulative masses for inverse-CDF sampling.
    cdf: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(support: Vec<(Feature, f64, f64)>) -> Result<Self> {
        let mut total = 0.0;
        for (_, eta, mass) in &support {
            if *mass < 0.0 {
                return Err(Error::InvalidParameter(format!("negative mass {mass}")));
            }
            if !(0.0..=1.0).contains(eta) {
                return Err(Error::InvalidParameter(format!("conditional probability {eta} outside [0,1]")));
            }
            total += mass;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("masses sum to {total}, expected 1")));
        }
        let mut cdf = Vec::with_capacity(support.len());
        let mut acc = 0.0;
        for (_, _, mass) in &support {
            acc += mass;
            cdf.push(acc);
        }
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        let support = support.into_iter().map(|(x, eta, mass)| Atom { x, eta, mass }).collect();
        Ok(FiniteDistribution { support, cdf })
    }

    pub fn point_mass(x: Feature, eta: f64) -> Self {
        FiniteDistribution::new(vec![(x, eta, 1.0)]).unwrap()
    }

    /// Exact expectation of f(x, eta(x)) over the support.
    pub fn expect(&self, f: impl Fn(&Feature, f64) -> f64) -> f64 {
        self.support.iter().map(|a| a.mass * f(&a.x, a.eta)).sum()
    }

    /// Overall P[y = 1].
    pub fn mean_outcome(&self) -> f64 {
        self.expect(|_, eta| eta)
    }

    pub fn sample_one<R: Rng>(&self, rng: &mut R) -> (Feature, bool) {
        let u: f64 = rng.gen();
        let k = self.cdf.partition_point(|&c| c < u).min(self.support.len() - 1);
        let atom = &self.support[k];
        let y = rng.gen::<f64>() < atom.eta;
        (atom.x.clone(), y)
    }
}

/// T i.i.d. draws, deterministic given the seed.
pub fn sample_transcript(dist: &FiniteDistribution, t: usize, seed: u64) -> Result<Vec<(Feature, bool)>> {
    if t == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    Ok((0..t).map(|_| dist.sample_one(&mut rng)).collect())
}
