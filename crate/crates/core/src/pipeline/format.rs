/// Fixed six-significant-digit decimal rendering, independent of platform
/// float formatting quirks beyond Rust's exact `{:.N}` rounding.
pub fn sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v.is_finite() { "0".into() } else { v.to_string() };
    }
    let mut decimals = (5 - v.abs().log10().floor() as i32).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    // Rounding may carry into a new leading digit (99.99996 -> 100.0000).
    if digits(&s) > 6 && decimals > 0 {
        decimals -= 1;
        s = format!("{v:.decimals$}");
    }
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s.remove(0);
    }
    s
}

fn digits(s: &str) -> usize {
    s.trim_start_matches('-')
        .trim_start_matches(['0', '.'])
        .chars()
        .filter(char::is_ascii_digit)
        .count()
}
