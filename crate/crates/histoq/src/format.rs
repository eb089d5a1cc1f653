//! Bit-stable number formatting.

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Shortest decimal that round-trips `round_sig(x)`. Plain notation for
/// magnitudes in `[1e-5, 1e15)`, exponent notation otherwise; zero of
/// either sign prints as `0`.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    if (1e-5..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Parses a float or an angle written with `pi`: `pi`, `-pi/4`, `3pi/8`,
/// `3*pi/8`, `0.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || format!("cannot read '{s}' as a number or multiple of pi");
    let lower = t.to_ascii_lowercase();
    let pos = lower.find("pi").ok_or_else(bad)?;
    let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
    let head = head.trim().trim_end_matches('*').trim();
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let tail = tail.trim();
    let divisor = if tail.is_empty() {
        1.0
    } else {
        tail.strip_prefix('/').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?
    };
    let v = factor * std::f64::consts::PI / divisor;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}
