/// Formats `v` rounded to 12 significant digits, printed with the shortest
/// decimal that reads back to the rounded value.
pub fn sig12(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("valid float literal");
    if rounded == 0.0 {
        return "0".into();
    }
    rounded.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(0.1875), "0.1875");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(2.0 / 3.0 * 1e5), "66666.6666667");
        assert_eq!(sig12(0.143841036225890), "0.143841036226");
        assert_eq!(sig12(-1.5e-7), "-0.00000015");
    }
}
