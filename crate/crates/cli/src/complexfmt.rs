//! The "a+bi" complex literal used in flags and JSON reports.

use spintop_core::C64;

pub fn format_complex(c: C64) -> String {
    if c.im < 0.0 || (c.im == 0.0 && c.im.is_sign_negative()) {
        format!("{}-{}i", c.re, -c.im)
    } else {
        format!("{}+{}i", c.re, c.im)
    }
}

pub fn parse_complex(text: &str) -> Result<C64, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if !t.ends_with('i') && !t.ends_with('I') {
        let re: f64 = t.parse().map_err(|_| format!("bad real literal {t:?}"))?;
        return Ok(C64::new(re, 0.0));
    }
    let body = &t[..t.len() - 1];
    // split at the last +/- that is not an exponent sign and not leading
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
        None => ("", body),
    };
    let re = if re_str.is_empty() {
        0.0
    } else {
        re_str
            .parse()
            .map_err(|_| format!("bad real part {re_str:?}"))?
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse()
            .map_err(|_| format!("bad imaginary part {other:?}"))?,
    };
    Ok(C64::new(re, im))
}
