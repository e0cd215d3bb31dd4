//! Fixed-point rendering shared by every report and CSV file.

/// Nine decimals, `.` separator, no negative zero.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn fixed_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), fixed)
}

pub fn residual(x: f64) -> String {
    format!("{x:.3e}")
}
