//! Eigenvalue search by contour-integral spectral indicator.
//!
//! A square region of the complex plane is subdivided as a quadtree. For each
//! square, the Cauchy integral of T(ω)⁻¹g over the circumscribing circle is
//! approximated with the trapezoidal rule; its norm is (almost surely) bounded
//! away from zero exactly when the square's disk contains an eigenvalue. Squares
//! with indicator below the threshold δ₀ are discarded, the rest are split into
//! four, until the square diameter reaches the precision β₀.
//!
//! Trapezoidal quadrature on circles converges geometrically for analytic
//! integrands, so a modest node count resolves the keep/discard decision.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nep::{self, ConditionFlag, HolomorphicMatrixFn};

/// Axis-aligned square in the complex plane carried through subdivision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub center: Complex64,
    pub half_side: f64,
    pub level: u32,
}

impl SearchRegion {
    pub fn new(center: Complex64, half_side: f64) -> Self {
        assert!(half_side > 0.0, "search region needs half_side > 0");
        Self {
            center,
            half_side,
            level: 0,
        }
    }

    /// Radius of the circumscribing circle.
    pub fn circum_radius(&self) -> f64 {
        self.half_side * SQRT_2
    }

    /// Square diagonal (equals the circumscribing circle diameter).
    pub fn diameter(&self) -> f64 {
        2.0 * self.circum_radius()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z.re - self.center.re).abs() <= self.half_side
            && (z.im - self.center.im).abs() <= self.half_side
    }

    pub fn subdivide(&self) -> [SearchRegion; 4] {
        let q = self.half_side / 2.0;
        let mk = |dx: f64, dy: f64| SearchRegion {
            center: self.center + Complex64::new(dx * q, dy * q),
            half_side: q,
            level: self.level + 1,
        };
        [mk(-1.0, -1.0), mk(1.0, -1.0), mk(-1.0, 1.0), mk(1.0, 1.0)]
    }
}

/// Search parameters.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    /// Indicator threshold δ₀: squares at or below it are discarded.
    pub delta0: f64,
    /// Precision β₀: subdivision stops once the square diameter is ≤ β₀.
    pub beta0: f64,
    /// Trapezoidal node count on each circumscribing circle.
    pub m0: usize,
    /// Seed for the random probe vector g.
    pub rng_seed: u64,
    /// Hard cap on subdivision depth.
    pub max_level: u32,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            delta0: 0.01,
            beta0: 1e-4,
            m0: 16,
            rng_seed: 0,
            max_level: 40,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "indicator threshold delta0 must be positive, got {}",
                self.delta0
            )));
        }
        if !(self.beta0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "precision beta0 must be positive, got {}",
                self.beta0
            )));
        }
        if self.m0 < 4 || self.m0 % 2 != 0 {
            return Err(Error::InvalidConfig(format!(
                "quadrature count m0 must be even and at least 4, got {}",
                self.m0
            )));
        }
        Ok(())
    }
}

/// A terminal square kept by the search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueEstimate {
    /// Square center at termination (merged centroid if squares overlapped).
    pub value: Complex64,
    pub box_half_side: f64,
    pub indicator: f64,
}

/// One indicator evaluation, for the subdivision trace dump.
#[derive(Debug, Clone, Copy)]
pub struct IndicatorSample {
    pub level: u32,
    pub center: Complex64,
    pub half_side: f64,
    pub indicator: f64,
}

/// Probe vector with i.i.d. components uniform on the complex unit disk,
/// normalized to ‖g‖₂ = 1.
pub fn random_probe(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g: Vec<Complex64> = (0..dim)
        .map(|_| {
            let radius = rng.random::<f64>().sqrt();
            let angle = 2.0 * PI * rng.random::<f64>();
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let norm = g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut g {
        *z /= norm;
    }
    g
}

/// Trapezoidal approximation of ‖(1/2πi) ∮ T(ω)⁻¹ g dω‖₂ over the circle
/// circumscribing `region`.
///
/// With z(θ) = c + R e^{iθ} and nodes θ_j = 2πj/m0 this is
/// ‖(R/m0) Σ_j e^{iθ_j} x(z_j)‖₂ where T(z_j) x = g.
///
/// A singular or ill-conditioned solve at a node means an eigenvalue sits on
/// the contour; that surfaces as [`Error::SingularSystem`] and the caller
/// jitters the square.
pub fn indicator(
    f: &dyn HolomorphicMatrixFn,
    region: &SearchRegion,
    g: &[Complex64],
    m0: usize,
) -> Result<f64> {
    let radius = region.circum_radius();
    if !f.disk_is_admissible(region.center, radius) {
        return Err(Error::RegionNotAdmissible {
            center: region.center,
            half_side: region.half_side,
        });
    }

    let nodes: Vec<Complex64> = (1..=m0)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m0 as f64))
        .collect();

    let solutions: Vec<Result<Vec<Complex64>>> = nodes
        .par_iter()
        .map(|&phase| {
            let z = region.center + radius * phase;
            let report = nep::solve(f, z, g, nep::DEFAULT_SOLVE_TOL)?;
            if report.condition_flag == ConditionFlag::IllConditioned {
                return Err(Error::SingularSystem { omega: z });
            }
            Ok(report.solution)
        })
        .collect();

    let dim = f.dim();
    let mut acc = vec![Complex64::ZERO; dim];
    for (phase, solution) in nodes.iter().zip(solutions) {
        let x = solution?;
        for (a, xi) in acc.iter_mut().zip(&x) {
            *a += phase * xi;
        }
    }
    let scale = radius / m0 as f64;
    Ok(scale * acc.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
}

/// Indicator with the eigenvalue-on-contour fallback: retry once with the
/// square center jittered by β₀/10, then conservatively mark the square as
/// containing an eigenvalue.
fn indicator_guarded(
    f: &dyn HolomorphicMatrixFn,
    region: &SearchRegion,
    g: &[Complex64],
    cfg: &SimConfig,
) -> Result<f64> {
    match indicator(f, region, g, cfg.m0) {
        Err(Error::SingularSystem { .. }) => {}
        other => return other,
    }
    let jittered = SearchRegion {
        center: region.center + Complex64::new(cfg.beta0 / 10.0, 0.0),
        ..*region
    };
    match indicator(f, &jittered, g, cfg.m0) {
        Err(Error::SingularSystem { .. }) => Ok(f64::INFINITY),
        other => other,
    }
}

/// Finds all eigenvalues of `f` in `region` to precision β₀.
///
/// Breadth-first quadtree: squares whose indicator stays above δ₀ are split
/// until their diameter is at most β₀; surviving terminal squares closer than
/// 2β₀ merge into one estimate (overlapping circumscribed circles of adjacent
/// squares can surface one eigenvalue twice). Deterministic for a fixed
/// `rng_seed`.
pub fn find_eigenvalues(
    f: &dyn HolomorphicMatrixFn,
    region: &SearchRegion,
    cfg: &SimConfig,
) -> Result<Vec<EigenvalueEstimate>> {
    search(f, region, cfg, None)
}

/// Same search, also recording every indicator evaluation.
pub fn find_eigenvalues_traced(
    f: &dyn HolomorphicMatrixFn,
    region: &SearchRegion,
    cfg: &SimConfig,
) -> Result<(Vec<EigenvalueEstimate>, Vec<IndicatorSample>)> {
    let mut trace = Vec::new();
    let estimates = search(f, region, cfg, Some(&mut trace))?;
    Ok((estimates, trace))
}

fn search(
    f: &dyn HolomorphicMatrixFn,
    region: &SearchRegion,
    cfg: &SimConfig,
    mut trace: Option<&mut Vec<IndicatorSample>>,
) -> Result<Vec<EigenvalueEstimate>> {
    cfg.validate()?;
    if !f.disk_is_admissible(region.center, region.circum_radius()) {
        return Err(Error::RegionNotAdmissible {
            center: region.center,
            half_side: region.half_side,
        });
    }

    let g = random_probe(f.dim(), cfg.rng_seed);
    let mut frontier = vec![SearchRegion {
        level: 0,
        ..*region
    }];
    let mut terminals: Vec<EigenvalueEstimate> = Vec::new();

    while !frontier.is_empty() {
        let level = frontier[0].level;
        if level > cfg.max_level {
            return Err(Error::BudgetExceeded {
                level,
                live: frontier.len(),
            });
        }

        let indicators: Vec<Result<f64>> = frontier
            .par_iter()
            .map(|square| indicator_guarded(f, square, &g, cfg))
            .collect();

        let mut next = Vec::new();
        for (square, outcome) in frontier.iter().zip(indicators) {
            let value = outcome?;
            if let Some(t) = trace.as_deref_mut() {
                t.push(IndicatorSample {
                    level: square.level,
                    center: square.center,
                    half_side: square.half_side,
                    indicator: value,
                });
            }
            if value <= cfg.delta0 {
                continue;
            }
            if square.diameter() <= cfg.beta0 {
                terminals.push(EigenvalueEstimate {
                    value: square.center,
                    box_half_side: square.half_side,
                    indicator: value,
                });
            } else {
                next.extend(square.subdivide());
            }
        }
        frontier = next;
    }

    Ok(merge_terminals(terminals, cfg.beta0))
}

/// Groups terminal squares whose centers lie within 2β₀ and replaces each
/// group with its centroid.
fn merge_terminals(terminals: Vec<EigenvalueEstimate>, beta0: f64) -> Vec<EigenvalueEstimate> {
    let n = terminals.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(group: &mut Vec<usize>, mut i: usize) -> usize {
        while group[i] != i {
            group[i] = group[group[i]];
            i = group[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (terminals[i].value - terminals[j].value).norm() <= 2.0 * beta0 {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                let (lo, hi) = (a.min(b), a.max(b));
                group[hi] = lo;
            }
        }
    }
    let mut merged: Vec<(Complex64, f64, f64, usize)> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut group, i);
        let est = &terminals[i];
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = merged.len();
            merged.push((est.value, est.box_half_side, est.indicator, 1));
        } else {
            let m = &mut merged[slot_of_root[root]];
            m.0 += est.value;
            m.1 = m.1.max(est.box_half_side);
            m.2 = m.2.max(est.indicator);
            m.3 += 1;
        }
    }
    let mut out: Vec<EigenvalueEstimate> = merged
        .into_iter()
        .map(|(sum, half_side, ind, count)| EigenvalueEstimate {
            value: sum / count as f64,
            box_half_side: half_side,
            indicator: ind,
        })
        .collect();
    out.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap()
    });
    out
}
