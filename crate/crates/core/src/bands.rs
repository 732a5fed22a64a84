//! Band-structure sweeps along the Brillouin-zone path and mesh-convergence
//! studies.
//!
//! The default path visits M₁ = (π,π) → M₃ = (0,0) → M₅ = (π,0) → M₁. Each
//! k-point is an independent eigenvalue search over one shared region;
//! eigenvalues are stored in ω·a/c units and converted to ω·a/(2πc) only at
//! output time.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::assembly::{assemble, OperatorBundle};
use crate::dielectric::DielectricModel;
use crate::error::{Error, Result};
use crate::mesh::{build_periodic_dof_map, generate_structured, UnitCellMesh};
use crate::sim::{find_eigenvalues, EigenvalueEstimate, SearchRegion, SimConfig};

/// Piecewise-linear path through the Brillouin zone [−π,π]².
#[derive(Debug, Clone, PartialEq)]
pub struct KPath {
    pub vertices: Vec<[f64; 2]>,
    pub samples_per_segment: usize,
}

impl Default for KPath {
    fn default() -> Self {
        Self {
            vertices: vec![[PI, PI], [0.0, 0.0], [PI, 0.0], [PI, PI]],
            samples_per_segment: 16,
        }
    }
}

/// One sampled point on the path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSample {
    pub segment: usize,
    /// Arclength fraction in [0, 1].
    pub path_param: f64,
    pub k: [f64; 2],
}

impl KPath {
    pub fn validate(&self) -> Result<()> {
        if self.vertices.len() < 2 {
            return Err(Error::InvalidConfig(
                "k-path needs at least two vertices".into(),
            ));
        }
        if self.samples_per_segment == 0 {
            return Err(Error::InvalidConfig(
                "k-path needs at least one sample per segment".into(),
            ));
        }
        for v in &self.vertices {
            if v[0].abs() > PI + 1e-12 || v[1].abs() > PI + 1e-12 {
                return Err(Error::InvalidConfig(format!(
                    "k-path vertex ({}, {}) lies outside the Brillouin zone",
                    v[0], v[1]
                )));
            }
        }
        for pair in self.vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidConfig(
                    "consecutive k-path vertices must be distinct".into(),
                ));
            }
        }
        Ok(())
    }

    /// Samples each segment inclusively, deduplicating the shared endpoint at
    /// segment joins.
    pub fn sample(&self) -> Vec<KSample> {
        let seg_len: Vec<f64> = self
            .vertices
            .windows(2)
            .map(|p| ((p[1][0] - p[0][0]).powi(2) + (p[1][1] - p[0][1]).powi(2)).sqrt())
            .collect();
        let total: f64 = seg_len.iter().sum();
        let s = self.samples_per_segment;
        let mut samples = Vec::new();
        let mut walked = 0.0;
        for (seg, pair) in self.vertices.windows(2).enumerate() {
            let start = if seg == 0 { 0 } else { 1 };
            for j in start..=s {
                let t = j as f64 / s as f64;
                samples.push(KSample {
                    segment: seg,
                    path_param: (walked + t * seg_len[seg]) / total,
                    k: [
                        pair[0][0] + t * (pair[1][0] - pair[0][0]),
                        pair[0][1] + t * (pair[1][1] - pair[0][1]),
                    ],
                });
            }
            walked += seg_len[seg];
        }
        samples
    }

    /// Path parameters of the vertices (axis tick positions).
    pub fn vertex_params(&self) -> Vec<f64> {
        let seg_len: Vec<f64> = self
            .vertices
            .windows(2)
            .map(|p| ((p[1][0] - p[0][0]).powi(2) + (p[1][1] - p[0][1]).powi(2)).sqrt())
            .collect();
        let total: f64 = seg_len.iter().sum();
        let mut params = vec![0.0];
        let mut walked = 0.0;
        for len in &seg_len {
            walked += len;
            params.push(walked / total);
        }
        params
    }
}

/// Eigenvalues at one sampled k-point, sorted by real part then imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct BandRecord {
    pub sample: KSample,
    /// In ω·a/c units.
    pub eigenvalues: Vec<Complex64>,
}

/// Sweep provenance, including any k-points whose search failed.
#[derive(Debug, Clone)]
pub struct SweepMetadata {
    pub mesh_h: f64,
    pub model: DielectricModel,
    pub region: SearchRegion,
    pub cfg: SimConfig,
    /// (record index, error message) for k-points that produced no spectrum.
    pub failures: Vec<(usize, String)>,
}

#[derive(Debug, Clone)]
pub struct BandDiagram {
    pub records: Vec<BandRecord>,
    pub metadata: SweepMetadata,
}

fn sort_eigenvalues(found: Vec<EigenvalueEstimate>) -> Vec<Complex64> {
    let mut omegas: Vec<Complex64> = found.into_iter().map(|e| e.value).collect();
    omegas.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    omegas
}

/// Runs the eigenvalue search at every sampled k-point of `path`.
///
/// The region is shared by all k-points. Failures at individual k-points are
/// recorded in the metadata and leave an empty record; the sweep continues.
pub fn sweep_bands(
    mesh: &UnitCellMesh,
    model: DielectricModel,
    path: &KPath,
    region: &SearchRegion,
    cfg: &SimConfig,
) -> Result<BandDiagram> {
    path.validate()?;
    cfg.validate()?;
    if !model.region_is_holomorphic(region, model.pole_guard) {
        return Err(Error::RegionNotAdmissible {
            center: region.center,
            half_side: region.half_side,
        });
    }
    let dofs = build_periodic_dof_map(mesh)?;
    let bundle = assemble(mesh, &dofs);
    let samples = path.sample();

    let results: Vec<std::result::Result<Vec<Complex64>, String>> = samples
        .par_iter()
        .map(|sample| {
            let operator = bundle.bloch_operator(sample.k, model);
            find_eigenvalues(&operator, region, cfg)
                .map(sort_eigenvalues)
                .map_err(|e| e.to_string())
        })
        .collect();

    let mut records = Vec::with_capacity(samples.len());
    let mut failures = Vec::new();
    for (idx, (sample, outcome)) in samples.into_iter().zip(results).enumerate() {
        match outcome {
            Ok(eigenvalues) => records.push(BandRecord {
                sample,
                eigenvalues,
            }),
            Err(message) => {
                failures.push((idx, message));
                records.push(BandRecord {
                    sample,
                    eigenvalues: Vec::new(),
                });
            }
        }
    }
    Ok(BandDiagram {
        records,
        metadata: SweepMetadata {
            mesh_h: mesh.h,
            model,
            region: *region,
            cfg: *cfg,
            failures,
        },
    })
}

/// One refinement level of a convergence study.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceRow {
    /// Grid spacing 1/n of the structured mesh at this level.
    pub h: f64,
    /// Tracked eigenvalue in ω·a/c units.
    pub omega: Complex64,
    /// Relative change |ω_prev − ω| / |ω| against the previous level.
    pub xi: Option<f64>,
    /// Observed order log₂(ξ_prev / ξ).
    pub order: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

/// Tracks one eigenvalue across uniformly refined structured meshes
/// n0, 2·n0, 4·n0, … and reports relative errors and observed orders.
///
/// The coarsest level starts from the first (lowest) eigenvalue found in the
/// region; each finer level pairs to the nearest eigenvalue of the previous
/// one. Pairing must be unique within a quarter of the region diameter.
pub fn convergence_study(
    n0: usize,
    levels: usize,
    disc_radius: f64,
    model: DielectricModel,
    k: [f64; 2],
    region: &SearchRegion,
    cfg: &SimConfig,
) -> Result<ConvergenceReport> {
    if levels < 2 {
        return Err(Error::InvalidConfig(format!(
            "convergence study needs at least 2 levels, got {levels}"
        )));
    }
    cfg.validate()?;
    if !model.region_is_holomorphic(region, model.pole_guard) {
        return Err(Error::RegionNotAdmissible {
            center: region.center,
            half_side: region.half_side,
        });
    }

    let spectra: Vec<Result<Vec<Complex64>>> = (0..levels)
        .into_par_iter()
        .map(|level| {
            let n = n0 << level;
            let mesh = generate_structured(n, disc_radius)?;
            let dofs = build_periodic_dof_map(&mesh)?;
            let bundle = assemble(&mesh, &dofs);
            let operator = bundle.bloch_operator(k, model);
            Ok(sort_eigenvalues(find_eigenvalues(&operator, region, cfg)?))
        })
        .collect();

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(levels);
    let mut tracked: Option<Complex64> = None;
    let window = region.diameter() / 4.0;
    for (level, spectrum) in spectra.into_iter().enumerate() {
        let spectrum = spectrum?;
        let n = n0 << level;
        let omega = match tracked {
            None => *spectrum.first().ok_or_else(|| {
                Error::AmbiguousTracking(format!(
                    "no eigenvalue found in the region on the coarsest mesh (n = {n})"
                ))
            })?,
            Some(prev) => {
                let close = spectrum
                    .iter()
                    .filter(|w| (**w - prev).norm() <= window)
                    .count();
                if close > 1 {
                    return Err(Error::AmbiguousTracking(format!(
                        "{close} eigenvalues within {window:.3e} of {prev} at n = {n}"
                    )));
                }
                *spectrum
                    .iter()
                    .min_by(|a, b| {
                        (**a - prev).norm().partial_cmp(&(**b - prev).norm()).unwrap()
                    })
                    .ok_or_else(|| {
                        Error::AmbiguousTracking(format!(
                            "no eigenvalue found in the region at n = {n}"
                        ))
                    })?
            }
        };

        let xi = tracked.map(|prev| (prev - omega).norm() / omega.norm());
        let order = match (rows.last().and_then(|r| r.xi), xi) {
            (Some(prev_xi), Some(xi)) => Some((prev_xi / xi).log2()),
            _ => None,
        };
        rows.push(ConvergenceRow {
            h: 1.0 / n as f64,
            omega,
            xi,
            order,
        });
        tracked = Some(omega);
    }
    Ok(ConvergenceReport { rows })
}
