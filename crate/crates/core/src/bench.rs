//! Empirical complexity harness: timed parameter sweeps, log-log growth
//! exponent fits, and a census of Hecke matrix set sizes.
//!
//! Timings come from the monotonic clock around stage boundaries of the
//! full pipeline (coset build, relations assembly, nullspace, cusp data,
//! Hecke columns, basis assembly); Hecke caching is disabled so repeated
//! stages are measured cold. Exponent fits are reported, never asserted
//! against theory: wall-clock slopes below an upper bound are expected.

use std::time::Instant;

use crate::arith::{BigRat, CycloNum, Field};
use crate::basis::{probe_kernel_stream, QExpansionBasis};
use crate::chars::CharSpec;
use crate::cohomology::ModularContext;
use crate::cuspdim::{build_cusp_data, dimension_from_parts, plus_dimension};
use crate::exactla::ExactMat;
use crate::hecke::{heilbronn_merel, merel_sets, sigma, sturm_bound, HeckeEngine, KernelElement};
use crate::polyaction::HomPoly;
use crate::{Error, Result};

/// Per-stage wall times of one pipeline run, in nanoseconds.
#[derive(Clone, Copy, Debug, Default)]
pub struct StageTimings {
    pub cosets_ns: u128,
    pub relations_ns: u128,
    pub nullspace_ns: u128,
    pub cusps_ns: u128,
    pub hecke_ns: u128,
    pub assembly_ns: u128,
    pub total_ns: u128,
}

impl StageTimings {
    pub fn stages(&self) -> [(&'static str, u128); 6] {
        [
            ("cosets", self.cosets_ns),
            ("relations", self.relations_ns),
            ("nullspace", self.nullspace_ns),
            ("cusps", self.cusps_ns),
            ("hecke", self.hecke_ns),
            ("assembly", self.assembly_ns),
        ]
    }
}

/// Output of a full timed pipeline run.
#[derive(Clone, Debug)]
pub struct TimedRun<F> {
    pub mu: usize,
    pub nullity: usize,
    pub num_cusps: usize,
    pub plus_dim: usize,
    pub dimension: usize,
    pub precision: u64,
    pub basis: QExpansionBasis<F>,
    pub timings: StageTimings,
}

/// Run the whole pipeline with stage timing. `precision` is raised to the
/// Sturm bound when lower; probe mode with exact fallback drives the basis.
pub fn run_timed<F: Field>(
    level: u64,
    weight: u32,
    spec: &CharSpec,
    precision: Option<u64>,
    exact_mode: bool,
) -> Result<TimedRun<F>> {
    let chi = spec.build::<F>(level)?;

    let t0 = Instant::now();
    let ctx = ModularContext::new(level, weight, chi)?;
    let cosets_ns = t0.elapsed().as_nanos();

    let t = Instant::now();
    let relations = crate::cohomology::relations_matrix(&ctx);
    let relations_ns = t.elapsed().as_nanos();

    let t = Instant::now();
    let h1 = relations.nullspace();
    let nullity = h1.rows();
    let nullspace_ns = t.elapsed().as_nanos();

    let t = Instant::now();
    let data = build_cusp_data(&ctx);
    let plus_dim = plus_dimension(&ctx, &data)?;
    let cusps_ns = t.elapsed().as_nanos();

    let dimension = dimension_from_parts(nullity, plus_dim)?;
    let precision = precision.unwrap_or(0).max(sturm_bound(&ctx)).max(10);

    let (basis, hecke_ns, assembly_ns) =
        timed_basis(&ctx, &h1, &data, dimension, precision, exact_mode)?;

    Ok(TimedRun {
        mu: ctx.mu(),
        nullity,
        num_cusps: data.num_cusps(),
        plus_dim,
        dimension,
        precision,
        basis,
        timings: StageTimings {
            cosets_ns,
            relations_ns,
            nullspace_ns,
            cusps_ns,
            hecke_ns,
            assembly_ns,
            total_ns: t0.elapsed().as_nanos(),
        },
    })
}

// Basis assembly with the Hecke and assembly stages timed separately.
fn timed_basis<F: Field>(
    ctx: &ModularContext<F>,
    h1: &ExactMat<F>,
    data: &crate::cuspdim::CuspData,
    dimension: usize,
    precision: u64,
    exact_mode: bool,
) -> Result<(QExpansionBasis<F>, u128, u128)> {
    let mut hecke_ns = 0u128;
    let mut assembly_ns = 0u128;
    if dimension == 0 {
        return Ok((
            QExpansionBasis {
                dimension,
                precision,
                forms: Vec::new(),
            },
            0,
            0,
        ));
    }

    let engine = HeckeEngine::with_caching(ctx, false);
    let mu = ctx.mu();
    let k1 = ctx.num_monomials();
    let mut acc = ExactMat::<F>::zeros(0, precision as usize);

    let elements: Vec<Vec<(HomPoly<F>, usize)>> = if exact_mode || ctx.weight() == 3 {
        let kernel = crate::basis::exact_kernel_from(ctx, h1, data)?;
        (0..kernel.rows())
            .map(|r| {
                let row = kernel.row(r);
                (0..mu)
                    .filter_map(|i| {
                        let coeffs: Vec<F> =
                            (0..k1).map(|j| row[i * k1 + j].clone()).collect();
                        let p = HomPoly::new(ctx.weight(), coeffs);
                        (!p.is_zero()).then_some((p, i))
                    })
                    .collect()
            })
            .collect()
    } else {
        probe_kernel_stream(ctx)
            .into_iter()
            .map(|ke| vec![(ke.poly, ke.coset)])
            .collect()
    };

    for parts in &elements {
        let t = Instant::now();
        let mut total = ExactMat::zeros(ctx.dim_w(), precision as usize);
        for (poly, coset) in parts {
            let ke = KernelElement {
                poly: poly.clone(),
                coset: *coset,
            };
            total = total.add(&engine.column_matrix(precision, &ke))?;
        }
        hecke_ns += t.elapsed().as_nanos();

        let t = Instant::now();
        let rows = h1.matmul(&crate::basis::tensor_cols_to_w(ctx, &total))?;
        acc = ExactMat::vstack(&[&acc, &rows]).rref().mat;
        assembly_ns += t.elapsed().as_nanos();
        if acc.rows() >= dimension {
            break;
        }
    }

    if acc.rows() != dimension {
        if !exact_mode && ctx.weight() != 3 {
            // probe stream exhausted; rerun through the exact kernel
            return timed_basis(ctx, h1, data, dimension, precision, true);
        }
        return Err(Error::Inconsistent(format!(
            "assembled rank {} != dimension {dimension}",
            acc.rows()
        )));
    }
    let forms = (0..acc.rows()).map(|r| acc.row_vec(r)).collect();
    Ok((
        QExpansionBasis {
            dimension,
            precision,
            forms,
        },
        hecke_ns,
        assembly_ns,
    ))
}

/// One sweep point.
#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub level: u64,
    pub weight: u32,
    pub mu: usize,
    pub dimension: usize,
    pub timings: StageTimings,
}

/// Sweep configuration: level and weight grids, character policy, and the
/// dim-W cap protecting against runaway points.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub levels: Vec<u64>,
    pub weights: Vec<u32>,
    pub char_spec: CharSpec,
    pub dim_cap: usize,
}

impl SweepConfig {
    pub fn new(levels: Vec<u64>, weights: Vec<u32>) -> Self {
        SweepConfig {
            levels,
            weights,
            char_spec: CharSpec::Trivial,
            dim_cap: 2000,
        }
    }
}

/// Output of a sweep: one record per completed point plus notes for the
/// points skipped by the cap.
#[derive(Clone, Debug, Default)]
pub struct SweepOutput {
    pub records: Vec<BenchRecord>,
    pub skipped: Vec<String>,
}

/// Run the pipeline over the (level, weight) grid sequentially, recording
/// stage timings and the dimension found at every point.
pub fn sweep(config: &SweepConfig) -> Result<SweepOutput> {
    if config.levels.is_empty() {
        return Err(Error::InvalidParameter("empty level range".into()));
    }
    if config.weights.is_empty() {
        return Err(Error::InvalidParameter("empty weight range".into()));
    }
    let mut out = SweepOutput::default();
    for &level in &config.levels {
        for &weight in &config.weights {
            let mu = crate::p1cosets::build_p1(level).mu();
            let dim_w = mu * (weight as usize - 1);
            if dim_w > config.dim_cap {
                out.skipped.push(format!(
                    "N={level} k={weight}: dim W = {dim_w} exceeds cap {}",
                    config.dim_cap
                ));
                continue;
            }
            let order = config.char_spec.order(level)?;
            let record = if order <= 2 {
                let run = run_timed::<BigRat>(level, weight, &config.char_spec, None, false)?;
                BenchRecord {
                    level,
                    weight,
                    mu: run.mu,
                    dimension: run.dimension,
                    timings: run.timings,
                }
            } else {
                let run = run_timed::<CycloNum>(level, weight, &config.char_spec, None, false)?;
                BenchRecord {
                    level,
                    weight,
                    mu: run.mu,
                    dimension: run.dimension,
                    timings: run.timings,
                }
            };
            out.records.push(record);
        }
    }
    Ok(out)
}

/// CSV for sweep records.
pub fn records_to_csv(records: &[BenchRecord]) -> String {
    let mut s = String::from(
        "N,k,mu,dim,t_cosets_ns,t_relations_ns,t_nullspace_ns,t_cusps_ns,t_hecke_ns,t_assembly_ns,t_total_ns\n",
    );
    for r in records {
        let t = &r.timings;
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.level,
            r.weight,
            r.mu,
            r.dimension,
            t.cosets_ns,
            t.relations_ns,
            t.nullspace_ns,
            t.cusps_ns,
            t.hecke_ns,
            t.assembly_ns,
            t.total_ns
        ));
    }
    s
}

/// Which parameter varies in a fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Level,
    Weight,
}

/// Least-squares slopes of log(time) against log(axis), per stage and total.
#[derive(Clone, Debug)]
pub struct FitReport {
    pub axis: Axis,
    pub points: usize,
    pub stage_slopes: Vec<(&'static str, f64)>,
    pub total_slope: f64,
}

/// Fit growth exponents along one axis; requires at least 4 records with
/// distinct axis values (the other parameter must be constant).
pub fn fit_exponents(records: &[BenchRecord], axis: Axis) -> Result<FitReport> {
    let xs: Vec<f64> = records
        .iter()
        .map(|r| match axis {
            Axis::Level => r.level as f64,
            Axis::Weight => r.weight as f64,
        })
        .collect();
    let mut distinct = xs.clone();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} distinct axis values, need at least 4",
            distinct.len()
        )));
    }
    let fixed_ok = match axis {
        Axis::Level => records.iter().all(|r| r.weight == records[0].weight),
        Axis::Weight => records.iter().all(|r| r.level == records[0].level),
    };
    if !fixed_ok {
        return Err(Error::InvalidParameter(
            "the non-fitted parameter must be constant across records".into(),
        ));
    }

    let slope_of = |ys: Vec<u128>| -> f64 {
        let pts: Vec<(f64, f64)> = xs
            .iter()
            .zip(&ys)
            .filter(|(_, &y)| y > 0)
            .map(|(&x, &y)| (x.ln(), (y as f64).ln()))
            .collect();
        if pts.len() < 2 {
            return 0.0;
        }
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    };

    let stage_slopes = vec![
        ("cosets", slope_of(records.iter().map(|r| r.timings.cosets_ns).collect())),
        ("relations", slope_of(records.iter().map(|r| r.timings.relations_ns).collect())),
        ("nullspace", slope_of(records.iter().map(|r| r.timings.nullspace_ns).collect())),
        ("cusps", slope_of(records.iter().map(|r| r.timings.cusps_ns).collect())),
        ("hecke", slope_of(records.iter().map(|r| r.timings.hecke_ns).collect())),
        ("assembly", slope_of(records.iter().map(|r| r.timings.assembly_ns).collect())),
    ];
    let total_slope = slope_of(records.iter().map(|r| r.timings.total_ns).collect());
    Ok(FitReport {
        axis,
        points: records.len(),
        stage_slopes,
        total_slope,
    })
}

/// One row of the Hecke set census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: u64,
    pub h_n: usize,
    pub s_n: usize,
    pub s_n_prime: usize,
    pub sigma_n: u64,
}

/// Exact sizes of H_n, S_n, S_n' together with sigma(n) for n in the range.
pub fn hecke_set_census(max_n: u64) -> Vec<CensusRow> {
    (1..=max_n)
        .map(|n| {
            let h = heilbronn_merel(n).expect("n >= 1");
            let (s, sp) = merel_sets(n).expect("n >= 1");
            CensusRow {
                n,
                h_n: h.matrices.len(),
                s_n: s.matrices.len(),
                s_n_prime: sp.matrices.len(),
                sigma_n: sigma(n),
            }
        })
        .collect()
}

/// CSV for census rows.
pub fn census_to_csv(rows: &[CensusRow]) -> String {
    let mut s = String::from("n,h_n,s_n,s_n_prime,sigma_n\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.h_n, r.s_n, r.s_n_prime, r.sigma_n
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(levels: &[u64], f: impl Fn(u64) -> u128) -> Vec<BenchRecord> {
        levels
            .iter()
            .map(|&n| BenchRecord {
                level: n,
                weight: 4,
                mu: 0,
                dimension: 0,
                timings: StageTimings {
                    total_ns: f(n),
                    hecke_ns: f(n),
                    ..Default::default()
                },
            })
            .collect()
    }

    #[test]
    fn fit_recovers_quartic_slope() {
        let records = synthetic(&[10, 20, 30, 40, 50], |n| 3 * (n as u128).pow(4));
        let fit = fit_exponents(&records, Axis::Level).unwrap();
        assert!((fit.total_slope - 4.0).abs() < 0.01, "{}", fit.total_slope);
    }

    #[test]
    fn fit_constant_time_is_flat() {
        let records = synthetic(&[10, 20, 30, 40], |_| 1_000_000);
        let fit = fit_exponents(&records, Axis::Level).unwrap();
        assert!(fit.total_slope.abs() < 1e-9);
    }

    #[test]
    fn fit_needs_four_points() {
        let records = synthetic(&[10, 20, 30], |n| n as u128);
        assert!(matches!(
            fit_exponents(&records, Axis::Level),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn merel_set_growth_logged() {
        // |S_n| tracks sigma(n) log n up to a constant; log the observed
        // ratio range rather than asserting a tight bound
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for row in hecke_set_census(200) {
            if row.n < 10 {
                continue;
            }
            let ratio = row.s_n as f64 / (row.sigma_n as f64 * (row.n as f64).ln());
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        println!("|S_n| / (sigma(n) ln n) in [{lo:.3}, {hi:.3}] for 10 <= n <= 200");
        assert!(lo > 0.05 && hi < 20.0, "ratio range [{lo}, {hi}] implausible");
    }

    #[test]
    fn census_golden_counts() {
        let rows = hecke_set_census(10);
        assert_eq!(rows[0].h_n, 1);
        assert_eq!(rows[2].h_n, 7); // n = 3
        for r in &rows {
            assert!(r.s_n_prime as u64 <= 2 * r.sigma_n, "n = {}", r.n);
        }
        let csv = census_to_csv(&rows);
        assert!(csv.starts_with("n,h_n,s_n,s_n_prime,sigma_n\n"));
        assert_eq!(csv.lines().count(), 11);
    }

    #[test]
    fn sweep_smoke() {
        let cfg = SweepConfig::new((10..=14).collect(), vec![4]);
        let out = sweep(&cfg).unwrap();
        assert_eq!(out.records.len(), 5);
        assert!(out.skipped.is_empty());
        let csv = records_to_csv(&out.records);
        assert_eq!(csv.lines().count(), 6);
        // N = 11, k = 4: classical dimension is 2
        let r11 = out.records.iter().find(|r| r.level == 11).unwrap();
        assert_eq!(r11.dimension, 2);
    }

    #[test]
    fn sweep_rejects_empty_ranges() {
        assert!(sweep(&SweepConfig::new(vec![], vec![4])).is_err());
        assert!(sweep(&SweepConfig::new(vec![10], vec![])).is_err());
    }

    #[test]
    fn cap_skips_oversized_points() {
        let mut cfg = SweepConfig::new(vec![48], vec![8]);
        cfg.dim_cap = 100;
        let out = sweep(&cfg).unwrap();
        assert!(out.records.is_empty());
        assert_eq!(out.skipped.len(), 1);
    }
}
