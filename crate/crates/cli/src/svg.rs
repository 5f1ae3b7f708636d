use std::fmt::Write;

use chordiv_core::numerics::SweepRow;

use crate::format::sig12;

const CELL: f64 = 10.0;
const MARGIN: f64 = 60.0;

fn lerp_color(t: f64) -> String {
    // light yellow to dark blue
    let lo = [255.0, 255.0, 204.0];
    let hi = [8.0, 48.0, 107.0];
    let c: Vec<u8> = lo
        .iter()
        .zip(hi)
        .map(|(a, b)| (a + (b - a) * t).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn axis_index(values: &[f64], v: f64) -> usize {
    values.iter().position(|x| *x == v).expect("value on axis")
}

/// Static heatmap of a sweep: alpha runs left to right, beta bottom to top.
pub fn heatmap(rows: &[SweepRow], alphas: &[f64], betas: &[f64], title: &str) -> String {
    let (min, max) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
        (lo.min(r.value), hi.max(r.value))
    });
    let span = if max > min { max - min } else { 1.0 };
    let w = alphas.len() as f64 * CELL;
    let h = betas.len() as f64 * CELL;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="11">"#,
        w + 2.0 * MARGIN,
        h + 2.0 * MARGIN
    );
    let _ = writeln!(s, r#"<title>{title}</title>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{h}" fill="#dddddd"/>"##
    );
    for r in rows {
        let i = axis_index(alphas, r.alpha) as f64;
        let j = axis_index(betas, r.beta) as f64;
        let x = MARGIN + i * CELL;
        let y = MARGIN + h - (j + 1.0) * CELL;
        let _ = writeln!(
            s,
            r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"><title>alpha={} beta={} value={}</title></rect>"#,
            lerp_color((r.value - min) / span),
            sig12(r.alpha),
            sig12(r.beta),
            sig12(r.value)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">alpha</text>"#,
        MARGIN + w / 2.0,
        MARGIN + h + 30.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{}" text-anchor="middle" transform="rotate(-90 20 {})">beta</text>"#,
        MARGIN + h / 2.0,
        MARGIN + h / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="25">{title}</text><text x="{MARGIN}" y="42">min={} ({}) max={} ({})</text>"#,
        sig12(min),
        lerp_color(0.0),
        sig12(max),
        lerp_color(1.0)
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annotated_and_self_contained() {
        let rows = vec![
            SweepRow { alpha: 0.25, beta: 0.75, value: 0.1 },
            SweepRow { alpha: 0.75, beta: 0.25, value: 0.3 },
        ];
        let svg = heatmap(&rows, &[0.25, 0.75], &[0.25, 0.75], "t");
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("min=0.1") && svg.contains("max=0.3"));
        assert!(!svg.contains("<script"));
        assert_eq!(svg.matches("<rect").count(), 3);
        assert_eq!(lerp_color(0.0), "#ffffcc");
        assert_eq!(lerp_color(1.0), "#08306b");
    }
}
