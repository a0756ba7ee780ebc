//! Text output conventions: `.` decimals, six significant digits.

/// Formats with six significant digits, trailing zeros trimmed but at least
/// one decimal kept (`0.5`, `0.0`, `12.3457`).
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.push('0');
        }
    } else {
        s.push_str(".0");
    }
    if s == "-0.0" {
        s = "0.0".into();
    }
    s
}

/// Quotes a CSV field when it contains a delimiter, quote or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(0.0), "0.0");
        assert_eq!(format_number(-0.0), "0.0");
        assert_eq!(format_number(1.0 / 3.0), "0.333333");
        assert_eq!(format_number(-12.345678), "-12.3457");
        assert_eq!(format_number(100.0), "100.0");
        assert_eq!(format_number(2.5e-7), "0.00000025");
        assert_eq!(format_number(-1e-9), "-0.000000001");
        assert_eq!(format_number(1234567.0), "1234567.0");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
