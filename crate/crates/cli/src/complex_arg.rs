//! Complex numbers on the command line: "1.5", "-0.3+0.2i", "1i", "-i",
//! "2.5e-1-1e-2i".

use numrange::C64;

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    // pure real
    if !t.ends_with('i') && !t.ends_with('I') {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|e| e.to_string());
    }
    let body = &t[..t.len() - 1];
    // split body at the last +/- that is not an exponent sign and not leading
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    let (re_str, im_str) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|e| format!("bad imaginary part: {e}"))?,
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str.parse::<f64>().map_err(|e| format!("bad real part: {e}"))?
    };
    Ok(C64::new(re, im))
}
