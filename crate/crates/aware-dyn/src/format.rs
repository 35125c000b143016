//! Locale-independent numbers with 12 significant digits, and CSV output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation when the decimal exponent is below -4 or at least 12.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_owned()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Writes a header and rows; returns the number of data rows.
pub fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> io::Result<usize> {
    let file = BufWriter::new(File::create(path)?);
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file);
    w.write_record(header).map_err(io::Error::other)?;
    let mut n = 0;
    for row in rows {
        w.write_record(&row).map_err(io::Error::other)?;
        n += 1;
    }
    w.into_inner().map_err(|e| io::Error::other(e.to_string()))?.flush()?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.1075, "0.1075"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (1.0 / 3.0, "0.333333333333"),
            (2000.0, "2000"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1e-5, "1e-05"),
            (1.5e-6, "1.5e-06"),
            (0.000123, "0.000123"),
            (0.0, "0"),
            (20.36425123456789, "20.3642512346"),
            (9.9999999999999e-6, "1e-05"),
            (999999999999.9, "1e+12"),
        ];
        for (x, want) in cases {
            assert_eq!(num(x), want, "{x:e}");
        }
        assert_eq!(num(f64::NAN), "nan");
        assert_eq!(opt(None), "");
    }

    proptest! {
        #[test]
        fn twelve_digit_round_trip(x in -1e6f64..1e6) {
            let back: f64 = num(x).parse().unwrap();
            prop_assert!((back - x).abs() <= 1e-11 * x.abs().max(1e-300));
        }
    }
}
