//! Randomized certification harness: seeded sweeps over matrix families,
//! checking the flat-portion count bounds and the structural side conditions
//! of the oracle output.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cmat::CMat;
use crate::error::Error;
use crate::random::{gaussian_matrix, haar_unitary, strictly_upper_nilpotent};
use crate::reducible5::{assemble_5x5, Reducible5Params};
use crate::support::{flat_portions_with, FlatPortion, RangeConfig};

/// Families covered by the certification sweeps, with their proved
/// flat-portion count bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertFamily {
    /// Random nilpotent 4-by-4 (strictly upper gaussian, Haar-conjugated);
    /// bound 2.
    Nilpotent4,
    /// Random general 4-by-4; bound 4.
    General4,
    /// Random unitarily reducible nilpotent 4-by-4 (direct sums,
    /// Haar-conjugated); bound 1.
    Reducible4,
    /// Random 5-by-5 direct-sum family members; bound 2.
    Reducible5,
}

impl CertFamily {
    pub fn bound(self) -> usize {
        match self {
            CertFamily::Nilpotent4 => 2,
            CertFamily::General4 => 4,
            CertFamily::Reducible4 => 1,
            CertFamily::Reducible5 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CertFamily::Nilpotent4 => "nilpotent4",
            CertFamily::General4 => "general4",
            CertFamily::Reducible4 => "reducible4",
            CertFamily::Reducible5 => "reducible5",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "nilpotent4" => Some(CertFamily::Nilpotent4),
            "general4" => Some(CertFamily::General4),
            "reducible4" => Some(CertFamily::Reducible4),
            "reducible5" => Some(CertFamily::Reducible5),
            _ => None,
        }
    }
}

/// A draw that broke a certified property; enough to reproduce it.
#[derive(Clone, Debug)]
pub struct CertViolation {
    pub trial: u64,
    pub trial_seed: u64,
    pub reason: String,
    pub matrix: CMat,
}

#[derive(Clone, Debug)]
pub struct CertSummary {
    pub family: &'static str,
    pub trials: u64,
    pub seed: u64,
    pub bound: usize,
    /// flat-portion count -> number of draws
    pub histogram: BTreeMap<usize, u64>,
    pub max_count: usize,
    pub violations: Vec<CertViolation>,
}

impl CertSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One family draw from an already-seeded generator.
pub fn draw_matrix<R: Rng + ?Sized>(family: CertFamily, rng: &mut R) -> CMat {
    match family {
        CertFamily::Nilpotent4 => {
            let t = strictly_upper_nilpotent(4, rng);
            let u = haar_unitary(4, rng);
            t.conjugate_by(&u)
        }
        CertFamily::General4 => gaussian_matrix(4, rng),
        CertFamily::Reducible4 => {
            let blocks = match rng.gen_range(0..3u32) {
                0 => vec![strictly_upper_nilpotent(2, rng), strictly_upper_nilpotent(2, rng)],
                1 => vec![strictly_upper_nilpotent(3, rng), CMat::zeros(1)],
                _ => vec![strictly_upper_nilpotent(2, rng), CMat::zeros(1), CMat::zeros(1)],
            };
            let sum = CMat::block_diag(&blocks).expect("4x4");
            let u = haar_unitary(4, rng);
            sum.conjugate_by(&u)
        }
        CertFamily::Reducible5 => {
            let p = if rng.gen_bool(0.5) {
                // equal-parameter members, including near-threshold radii
                let rho: f64 = rng.gen_range(0.5..3.0);
                let r: f64 = rng.gen_range(0.05..2.5) * rho;
                Reducible5Params::new(r.max(1e-3), rho, rho, rho).unwrap()
            } else {
                Reducible5Params::new(
                    rng.gen_range(0.2..6.0),
                    rng.gen_range(0.3..3.0),
                    rng.gen_range(0.0..3.0),
                    rng.gen_range(0.3..3.0),
                )
                .unwrap()
            };
            let a = assemble_5x5(&p);
            let u = haar_unitary(5, rng);
            a.conjugate_by(&u)
        }
    }
}

fn angle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Structural checks on one draw's portions. Besides the count bound:
/// for nilpotent 4-by-4 inputs, a parallel pair forces the count to be
/// exactly two, and so does a non-parallel pair on lines equidistant from
/// the origin.
fn check_draw(family: CertFamily, a: &CMat, portions: &[FlatPortion]) -> Vec<String> {
    let mut problems = Vec::new();
    let bound = family.bound();
    if portions.len() > bound {
        problems.push(format!("count {} exceeds bound {bound}", portions.len()));
    }
    if family == CertFamily::Nilpotent4 {
        let eps_d = 1e-8 * (1.0 + a.fro_norm());
        for i in 0..portions.len() {
            for j in i + 1..portions.len() {
                let (pi_, pj) = (&portions[i], &portions[j]);
                let parallel = (angle_distance(pi_.line.theta, pj.line.theta) - PI).abs() < 1e-6;
                if parallel && portions.len() != 2 {
                    problems.push(format!(
                        "parallel portions with total count {}",
                        portions.len()
                    ));
                }
                let equidistant = (pi_.line.d.abs() - pj.line.d.abs()).abs() <= eps_d;
                if !parallel && equidistant && portions.len() != 2 {
                    problems.push(format!(
                        "non-parallel equidistant portions with total count {}",
                        portions.len()
                    ));
                }
            }
        }
    }
    problems
}

/// Run `trials` seeded draws of a family; trial i uses seed + i, so the
/// outcome is reproducible and independent of the parallel schedule.
pub fn run_certification(
    family: CertFamily,
    trials: u64,
    seed: u64,
    cfg: &RangeConfig,
) -> CertSummary {
    let outcomes: Vec<(usize, Vec<String>, Option<CMat>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
            let a = draw_matrix(family, &mut rng);
            let portions = match flat_portions_with(&a, cfg) {
                Ok(p) => p,
                // a degenerate range has no 2-dimensional boundary; count 0
                Err(Error::DegenerateRange) => Vec::new(),
                Err(e) => panic!("oracle failure on trial {i}: {e}"),
            };
            let problems = check_draw(family, &a, &portions);
            let keep = (!problems.is_empty()).then_some(a);
            (portions.len(), problems, keep)
        })
        .collect();

    let mut histogram = BTreeMap::new();
    let mut max_count = 0;
    let mut violations = Vec::new();
    for (i, (count, problems, matrix)) in outcomes.into_iter().enumerate() {
        *histogram.entry(count).or_insert(0u64) += 1;
        max_count = max_count.max(count);
        if let Some(m) = matrix {
            for reason in problems {
                violations.push(CertViolation {
                    trial: i as u64,
                    trial_seed: seed.wrapping_add(i as u64),
                    reason,
                    matrix: m.clone(),
                });
            }
        }
    }
    CertSummary {
        family: family.name(),
        trials,
        seed,
        bound: family.bound(),
        histogram,
        max_count,
        violations,
    }
}
