//! Matrix JSON files.
//!
//! Schema: {"entries": [[{"im": ..., "re": ...}, ...], ...], "n": int}.
//! The re/im values may be JSON numbers or decimal strings; the writer emits
//! strings with 17 significant digits so algebraic constants round-trip at
//! full double precision.

use serde::{Deserialize, Serialize};

use crate::cmat::{CMat, C64};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    Num(f64),
    Str(String),
}

impl NumOrStr {
    fn value(&self) -> Result<f64> {
        match self {
            NumOrStr::Num(x) => Ok(*x),
            NumOrStr::Str(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::ParseMatrix(format!("bad decimal string {s:?}: {e}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    re: NumOrStr,
    im: NumOrStr,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<Vec<EntryJson>>,
}

pub fn matrix_from_json(text: &str) -> Result<CMat> {
    let mj: MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::ParseMatrix(e.to_string()))?;
    if mj.n > 8 {
        return Err(Error::UnsupportedDimension(mj.n));
    }
    if mj.n < 2 {
        return Err(Error::ParseMatrix(format!("dimension {} too small", mj.n)));
    }
    if mj.entries.len() != mj.n || mj.entries.iter().any(|row| row.len() != mj.n) {
        return Err(Error::ParseMatrix(format!(
            "entry grid does not match declared dimension {}",
            mj.n
        )));
    }
    let mut data = Vec::with_capacity(mj.n * mj.n);
    for row in &mj.entries {
        for e in row {
            data.push(C64::new(e.re.value()?, e.im.value()?));
        }
    }
    CMat::new(mj.n, data)
}

fn decimal(x: f64) -> NumOrStr {
    NumOrStr::Str(format!("{x:.16e}"))
}

/// Canonical serialization: key-sorted, pretty-printed, decimal strings.
pub fn matrix_to_json(a: &CMat) -> String {
    let n = a.n();
    let mj = MatrixJson {
        n,
        entries: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| EntryJson { re: decimal(a[(i, j)].re), im: decimal(a[(i, j)].im) })
                    .collect()
            })
            .collect(),
    };
    // Route through Value so object keys come out sorted.
    let value = serde_json::to_value(&mj).expect("serializable");
    serde_json::to_string_pretty(&value).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_entries() {
        let a = CMat::from_rows(&[
            vec![C64::new(0.0, 0.0), C64::new(3.0f64.sqrt() / 2.0, -1.0 / 3.0)],
            vec![C64::new(1e-17, 2.0f64.sqrt()), C64::new(-5.5, 0.0)],
        ])
        .unwrap();
        let text = matrix_to_json(&a);
        let b = matrix_from_json(&text).unwrap();
        assert_eq!(a.n(), b.n());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a[(i, j)], b[(i, j)], "lossy at ({i},{j})");
            }
        }
    }

    #[test]
    fn accepts_plain_numbers() {
        let text = r#"{"n": 2, "entries": [
            [{"re": 0, "im": 0}, {"re": 1.5, "im": -2}],
            [{"re": "0.25", "im": 0}, {"re": 0, "im": 0}]]}"#;
        let a = matrix_from_json(text).unwrap();
        assert_eq!(a[(0, 1)], C64::new(1.5, -2.0));
        assert_eq!(a[(1, 0)], C64::new(0.25, 0.0));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(matrix_from_json("not json"), Err(Error::ParseMatrix(_))));
        let wrong_shape = r#"{"n": 2, "entries": [[{"re": 0, "im": 0}]]}"#;
        assert!(matches!(matrix_from_json(wrong_shape), Err(Error::ParseMatrix(_))));
        let too_big = format!(
            r#"{{"n": 9, "entries": [{}]}}"#,
            vec![format!("[{}]", vec![r#"{"re":0,"im":0}"#; 9].join(",")); 9].join(",")
        );
        assert!(matches!(matrix_from_json(&too_big), Err(Error::UnsupportedDimension(9))));
    }

    #[test]
    fn canonical_output_is_key_sorted() {
        let a = CMat::zeros(2);
        let text = matrix_to_json(&a);
        let epos = text.find("\"entries\"").unwrap();
        let npos = text.find("\"n\"").unwrap();
        assert!(epos < npos);
        let im = text.find("\"im\"").unwrap();
        let re = text.find("\"re\"").unwrap();
        assert!(im < re);
    }
}
