//! Exact ERM oracles over finite classes: plain weighted minimization and the
//! threshold-composed variant used by the offline engine.

use super::{sgn, Feature, Hypothesis};
use crate::error::{Error, Result};

/// argmin over the class of sum_t h(x_t) * w_t, ties broken by lowest index.
pub fn erm_oracle<'a>(
    class: &'a [Hypothesis],
    samples: &[(Feature, f64)],
) -> Result<(usize, &'a Hypothesis)> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    let mut best = (0usize, f64::INFINITY);
    for (i, h) in class.iter().enumerate() {
        let v: f64 = samples.iter().map(|(x, w)| h.eval(x) * w).sum();
        if v < best.1 {
            best = (i, v);
        }
    }
    Ok((best.0, &class[best.0]))
}

/// Exact minimizer of sum_t Th_theta(h(x_t)) * w_t over h in `base` and
/// theta in [0,1], where Th_theta(v) = sgn(v - theta). For each h the scan
/// covers the candidate thresholds {0} ∪ {h(x_t)} ∪ {1}; ties break by
/// (class index, smallest candidate theta).
pub fn erm_threshold_composed(
    base: &[Hypothesis],
    samples: &[(Feature, f64)],
) -> Result<(usize, f64, f64)> {
    if base.is_empty() {
        return Err(Error::EmptyClass);
    }
    let mut best: Option<(usize, f64, f64)> = None;
    for (i, h) in base.iter().enumerate() {
        let vals: Vec<f64> = samples.iter().map(|(x, _)| h.eval(x)).collect();
        let mut candidates: Vec<f64> = vals.clone();
        candidates.push(0.0);
        candidates.push(1.0);
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        candidates.dedup();
        for &theta in &candidates {
            let obj: f64 = vals
                .iter()
                .zip(samples.iter())
                .map(|(&v, (_, w))| sgn(v - theta) * w)
                .sum();
            let better = match &best {
                None => true,
                Some((_, _, b)) => obj < b - 1e-15,
            };
            if better {
                best = Some((i, theta, obj));
            }
        }
    }
    let (i, theta, value) = best.unwrap();
    Ok((i, theta, value))
}
