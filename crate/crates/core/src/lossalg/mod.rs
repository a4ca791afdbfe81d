//! Discrete derivatives, optimal post-processing, V-shaped mixtures, and the
//! canonical loss families used across the test batteries.

pub mod basis;

pub use basis::{bv_basis, relu_grid_basis, threshold_basis_lipschitz, BasisDecomposition, BasisElem};

use crate::error::{Error, Result};
use crate::model::{sgn, Loss};

/// Discrete derivative of a loss as a standalone map p -> l(p,1) - l(p,0).
pub fn discrete_derivative(loss: &Loss) -> impl Fn(f64) -> f64 + '_ {
    move |p| loss.delta(p)
}

/// Optimal post-processing k(v) = argmin_{a in grid} E_{y~Ber(v)}[l(a,y)],
/// tabulated on the grid {0, 1/den, ..., 1}; ties go to the smallest a.
#[derive(Clone, Debug)]
pub struct KMap {
    pub den: u64,
    /// k(i/den) as a grid index.
    pub table: Vec<u64>,
}

impl KMap {
    #[inline]
    pub fn apply_idx(&self, i: u64) -> u64 {
        self.table[i as usize]
    }

    /// k at a grid value given as a float; v must sit on the grid.
    pub fn apply(&self, v: f64) -> f64 {
        let i = (v * self.den as f64).round() as u64;
        debug_assert!((v * self.den as f64 - i as f64).abs() < 1e-6, "off-grid value {v}");
        self.table[i as usize] as f64 / self.den as f64
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &k)| k == i as u64)
    }
}

/// Tabulates k on a grid with `den` + 1 points (den >= 1).
pub fn optimal_postprocess(loss: &Loss, den: u64) -> Result<KMap> {
    if den < 1 {
        return Err(Error::InvalidParameter("grid needs at least 2 points".into()));
    }
    let n = den as usize;
    let l1: Vec<f64> = (0..=n).map(|a| loss.eval(a as f64 / den as f64, true)).collect();
    let l0: Vec<f64> = (0..=n).map(|a| loss.eval(a as f64 / den as f64, false)).collect();
    let mut table = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let v = i as f64 / den as f64;
        let mut best = (0u64, f64::INFINITY);
        for a in 0..=n {
            let obj = v * l1[a] + (1.0 - v) * l0[a];
            if obj < best.1 - 1e-15 {
                best = (a as u64, obj);
            }
        }
        table.push(best.0);
    }
    Ok(KMap { den, table })
}

/// Numerical properness check on a probe grid: truthful reporting must be
/// within `tol` of optimal against every probe action.
pub fn check_proper(loss: &Loss, probe_points: usize, tol: f64) -> Result<()> {
    let n = probe_points.max(2) - 1;
    let grid: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    for &q in &grid {
        let truthful = loss.expected(q, q);
        for &u in &grid {
            let alt = loss.expected(u, q);
            if truthful > alt + tol {
                return Err(Error::NotProper { q, u, violation: truthful - alt });
            }
        }
    }
    Ok(())
}

/// Nonnegative V-shaped mixture masses for a proper loss: jump masses of
/// -delta across the grid plus the affine anchor delta(1). Reconstruction is
/// anchor + sum of c_k * 1[v_k >= p].
#[derive(Clone, Debug)]
pub struct VMixture {
    pub den: u64,
    /// (grid value v_k, mass) with mass > 0 only where delta drops.
    pub masses: Vec<(f64, f64)>,
    pub anchor: f64,
    pub total_mass: f64,
}

impl VMixture {
    pub fn reconstruct(&self, p: f64) -> f64 {
        self.anchor + self.masses.iter().filter(|(v, _)| *v >= p).map(|(_, c)| c).sum::<f64>()
    }

    /// The same reconstruction written as a signed combination of
    /// sgn(v - p) weight functions plus the constant carrier at v = 1.
    pub fn reconstruct_signed(&self, p: f64) -> f64 {
        let half: f64 = self.masses.iter().map(|(v, c)| 0.5 * c * sgn(v - p)).sum();
        let beta = self.anchor + 0.5 * self.total_mass;
        half + beta * sgn(1.0 - p)
    }
}

/// Finite-difference V-shaped decomposition of a proper loss on the grid
/// {0, 1/den, ..., 1}. Errors if the loss fails the properness probe.
pub fn vshaped_mixture_weights(loss: &Loss, den: u64) -> Result<VMixture> {
    check_proper(loss, 1001, 1e-9)?;
    let n = den as usize;
    let delta: Vec<f64> = (0..=n).map(|i| loss.delta(i as f64 / den as f64)).collect();
    let mut masses = Vec::new();
    let mut total = 0.0;
    for k in 0..n {
        let c = delta[k] - delta[k + 1];
        // properness makes delta non-increasing; tolerate probe-scale noise
        let c = if c > -1e-9 { c.max(0.0) } else { c };
        if c < 0.0 {
            return Err(Error::NotProper { q: k as f64 / den as f64, u: (k + 1) as f64 / den as f64, violation: -c });
        }
        if c > 0.0 {
            masses.push((k as f64 / den as f64, c));
            total += c;
        }
    }
    Ok(VMixture { den, masses, anchor: delta[n], total_mass: total })
}

// Canonical loss families.

/// V-shaped proper loss l_v(p, y) = (y - v) * sgn(v - p).
pub fn v_shaped(v: f64) -> Loss {
    Loss::new(format!("vshape({v})"), move |p, y| ((y as u8) as f64 - v) * sgn(v - p))
}

/// Squared loss (p - y)^2, values in [0, 1].
pub fn squared() -> Loss {
    Loss::new("squared", |p, y| (p - (y as u8) as f64).powi(2))
}

/// Absolute loss |p - y|.
pub fn absolute() -> Loss {
    Loss::new("absolute", |p, y| (p - (y as u8) as f64).abs())
}

/// A bounded-variation step loss whose discrete derivative is a two-level
/// step of height `height` at `knot`, with delta in [-1,1] for |height| <= 2.
pub fn bv_step(knot: f64, height: f64) -> Loss {
    Loss::new(format!("bvstep({knot},{height})"), move |p, y| {
        let hi = if p < knot { height / 2.0 } else { -height / 2.0 };
        if y {
            hi / 2.0
        } else {
            -hi / 2.0
        }
    })
}

/// Convex 1-Lipschitz loss clipped into [-1,1]: max(p - y_shift, shift) style
/// hinge centered per outcome.
pub fn clipped_hinge(margin: f64) -> Loss {
    Loss::new(format!("hinge({margin})"), move |p, y| {
        let target = (y as u8) as f64;
        ((p - target).abs() - margin).max(0.0).min(1.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        // squared: delta(p) = 1 - 2p
        let sq = squared();
        assert!((sq.delta(0.5)).abs() < 1e-15);
        // V-shaped v = 0.3: delta(p) = sgn(0.3 - p)
        let v = v_shaped(0.3);
        assert_eq!(v.delta(0.1), 1.0);
        assert_eq!(v.delta(0.5), -1.0);
        // absolute: delta(p) = (1-p) - p = 1 - 2p
        let ab = absolute();
        assert!((ab.delta(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn postprocess_squared_is_identity() {
        let k = optimal_postprocess(&squared(), 20).unwrap();
        assert!(k.is_identity());
    }

    #[test]
    fn postprocess_absolute_is_threshold_at_half() {
        let k = optimal_postprocess(&absolute(), 10).unwrap();
        for i in 0..=10u64 {
            let v = i as f64 / 10.0;
            let expect = if v < 0.5 {
                0.0
            } else if v > 0.5 {
                1.0
            } else {
                // tie at v = 1/2: both endpoints optimal; smallest a wins
                0.0
            };
            assert_eq!(k.apply(v), expect, "at v={v}");
        }
    }

    #[test]
    fn postprocess_vshaped_is_identity() {
        for v in [0.0, 0.3, 0.5, 0.9] {
            let k = optimal_postprocess(&v_shaped(v), 10).unwrap();
            assert!(k.is_identity(), "v = {v}");
        }
    }

    #[test]
    fn vmixture_squared_uniform_density_two() {
        let m = vshaped_mixture_weights(&squared(), 100).unwrap();
        // jump masses 2/den per cell -> density 2, total mass 2
        assert!((m.total_mass - 2.0).abs() < 1e-9);
        for (_, c) in &m.masses {
            assert!((c * 100.0 - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn vmixture_vshaped_point_mass_two() {
        let m = vshaped_mixture_weights(&v_shaped(0.5), 10).unwrap();
        assert_eq!(m.masses.len(), 1);
        let (v, c) = m.masses[0];
        assert_eq!(v, 0.5);
        assert!((c - 2.0).abs() < 1e-12);
    }

    #[test]
    fn vmixture_reconstruction_on_probes() {
        let den = 200;
        for loss in [squared(), absolute(), v_shaped(0.25)] {
            let m = vshaped_mixture_weights(&loss, den).unwrap();
            let step = 1.0 / den as f64;
            for i in 0..=1000 {
                let p = i as f64 / 1000.0;
                let err = (m.reconstruct(p) - loss.delta(p)).abs();
                assert!(err <= 2.0 * step + 1e-9, "{}: err {err} at p={p}", loss.label());
                let err2 = (m.reconstruct_signed(p) - loss.delta(p)).abs();
                assert!(err2 <= 2.0 * step + 1e-9, "{}: signed err {err2} at p={p}", loss.label());
            }
        }
    }

    #[test]
    fn non_proper_loss_rejected() {
        // reward for lying: minimized away from the truth
        let bad = Loss::new("antiproper", |p, y| -((p - (y as u8) as f64).abs()));
        assert!(vshaped_mixture_weights(&bad, 10).is_err());
    }

    #[test]
    fn induced_proper_loss_has_matching_delta() {
        // delta_l(k_l(v)) equals the delta of the induced proper loss
        // l(k_l(.), .) at every grid value.
        let den = 50;
        for loss in [squared(), absolute(), clipped_hinge(0.2)] {
            let k = optimal_postprocess(&loss, den).unwrap();
            let k2 = k.clone();
            let inner = loss.clone();
            let induced = Loss::new("induced", move |p, y| inner.eval(k2.apply(p), y));
            for i in 0..=den {
                let v = i as f64 / den as f64;
                let lhs = loss.delta(k.apply(v));
                let rhs = induced.delta(v);
                assert!((lhs - rhs).abs() < 1e-12, "{} at v={v}", loss.label());
            }
        }
    }

    #[test]
    fn battery_losses_are_bounded() {
        for loss in [squared(), absolute(), v_shaped(0.7), bv_step(0.4, 1.0), clipped_hinge(0.1)] {
            for i in 0..=100 {
                let p = i as f64 / 100.0;
                for y in [false, true] {
                    assert!(loss.eval(p, y).abs() <= 1.0 + 1e-12, "{}", loss.label());
                }
            }
        }
    }
}
