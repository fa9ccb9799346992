//! Analysis report assembly and its stable JSON form.

use serde::Serialize;
use sha2::{Digest, Sha256};

use numrange::{
    coeffs_nilpotent4, exceptional_angles_with, flat_portions_with, is_degenerate, is_nilpotent,
    matrix_to_json, singular_points, support_value, CMat, Error, RangeConfig, Reducible5Params,
};

#[derive(Serialize)]
pub struct ComplexOut {
    pub re: f64,
    pub im: f64,
}

impl From<numrange::C64> for ComplexOut {
    fn from(z: numrange::C64) -> Self {
        ComplexOut { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
pub struct FlatPortionOut {
    pub theta: f64,
    pub d: f64,
    pub z1: ComplexOut,
    pub z2: ComplexOut,
    pub length: f64,
}

#[derive(Serialize)]
pub struct ExceptionalAngleOut {
    pub theta: f64,
    pub d: f64,
    pub multiplicity: usize,
}

#[derive(Serialize)]
pub struct KippenhahnOut {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
}

#[derive(Serialize)]
pub struct SingularPointOut {
    pub u: f64,
    pub v: f64,
    pub residual: f64,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub classification: Vec<String>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceptional_angles: Option<Vec<ExceptionalAngleOut>>,
    pub flat_portions: Vec<FlatPortionOut>,
    pub input_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kippenhahn: Option<KippenhahnOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_points: Option<Vec<SingularPointOut>>,
    pub tool_version: String,
}

/// Detect membership in the 5-by-5 direct-sum family (2-by-2 block plus
/// 3-by-3 block, nonnegative real parameters in the canonical slots).
pub fn reducible5_family(a: &CMat) -> Option<Reducible5Params> {
    if a.n() != 5 {
        return None;
    }
    let slots = [(0usize, 1usize), (2, 3), (2, 4), (3, 4)];
    let tol = 1e-12 * (1.0 + a.fro_norm());
    for i in 0..5 {
        for j in 0..5 {
            if !slots.contains(&(i, j)) && a[(i, j)].norm() > tol {
                return None;
            }
        }
    }
    let get = |i: usize, j: usize| -> Option<f64> {
        let z = a[(i, j)];
        (z.im.abs() <= tol && z.re >= 0.0).then_some(z.re)
    };
    let (r, r1, r2, r3) = (get(0, 1)?, get(2, 3)?, get(2, 4)?, get(3, 4)?);
    Reducible5Params::new(r, r1, r2, r3).ok()
}

pub fn input_hash(a: &CMat) -> String {
    let mut hasher = Sha256::new();
    hasher.update(matrix_to_json(a).as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

pub struct AnalyzeOptions {
    pub config: RangeConfig,
    pub only_flats: bool,
    pub search_radius: Option<f64>,
}

pub fn analyze(a: &CMat, opts: &AnalyzeOptions) -> Result<AnalysisReport, Error> {
    let mut classification = Vec::new();
    let nilpotent = is_nilpotent(a);
    if nilpotent {
        classification.push(format!("nilpotent {n}x{n}", n = a.n()));
    }
    if let Some(p) = reducible5_family(a) {
        classification.push(format!(
            "reducible 5x5 direct-sum family (r={}, r1={}, r2={}, r3={})",
            p.r, p.r1, p.r2, p.r3
        ));
    }

    let degenerate = is_degenerate(a);
    if degenerate {
        classification.push("degenerate range (a point or a segment)".to_string());
        return Ok(AnalysisReport {
            classification,
            degenerate: true,
            exceptional_angles: None,
            flat_portions: Vec::new(),
            input_sha256: input_hash(a),
            kippenhahn: None,
            rng_seed: None,
            singular_points: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        });
    }

    let flat_portions = flat_portions_with(a, &opts.config)?
        .into_iter()
        .map(|fp| FlatPortionOut {
            theta: fp.line.theta,
            d: fp.line.d,
            z1: fp.z1.into(),
            z2: fp.z2.into(),
            length: fp.length,
        })
        .collect();

    let mut exceptional = None;
    let mut kippenhahn = None;
    let mut singular = None;
    if !opts.only_flats {
        exceptional = Some(
            exceptional_angles_with(a, &opts.config)?
                .into_iter()
                .map(|s| ExceptionalAngleOut {
                    theta: s.theta,
                    d: support_value(a, s.theta),
                    multiplicity: s.basis.len(),
                })
                .collect(),
        );
        if a.n() == 4 && nilpotent {
            let q = coeffs_nilpotent4(a)?;
            kippenhahn = Some(KippenhahnOut {
                c1: q.c[0],
                c2: q.c[1],
                c3: q.c[2],
                c4: q.c[3],
                c5: q.c[4],
                c6: q.c[5],
            });
            let radius = opts
                .search_radius
                .unwrap_or_else(|| numrange::default_search_radius(a));
            singular = Some(
                singular_points(&q, radius)
                    .into_iter()
                    .map(|s| SingularPointOut { u: s.u, v: s.v, residual: s.residual })
                    .collect(),
            );
        }
    }

    Ok(AnalysisReport {
        classification,
        degenerate: false,
        exceptional_angles: exceptional,
        flat_portions,
        input_sha256: input_hash(a),
        kippenhahn,
        rng_seed: None,
        singular_points: singular,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Stable serialization: keys sorted, floats in shortest round-trip form.
pub fn to_stable_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}
