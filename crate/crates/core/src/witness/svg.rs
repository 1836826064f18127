use std::fmt::Write;

use super::compact::Drawing;

const SCALE: i64 = 40;
const MARGIN: i64 = 20;

/// SVG with one single-segment polyline per edge and a circle per vertex.
/// The y axis points up in drawing coordinates and down in the image.
pub fn to_svg(d: &Drawing) -> Vec<u8> {
    let max_x = d.coords.iter().map(|c| c.0).max().unwrap_or(0);
    let max_y = d.coords.iter().map(|c| c.1).max().unwrap_or(0);
    let min_x = d.coords.iter().map(|c| c.0).min().unwrap_or(0);
    let min_y = d.coords.iter().map(|c| c.1).min().unwrap_or(0);
    let px = |x: i64| MARGIN + (x - min_x) * SCALE;
    let py = |y: i64| MARGIN + (max_y - y) * SCALE;
    let w = 2 * MARGIN + (max_x - min_x) * SCALE;
    let h = 2 * MARGIN + (max_y - min_y) * SCALE;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(s, r#"<g stroke="black" stroke-width="2" fill="none">"#).unwrap();
    for &(a, b) in &d.edges {
        let (p, q) = (d.coords[a], d.coords[b]);
        writeln!(
            s,
            r#"<polyline points="{},{} {},{}"/>"#,
            px(p.0),
            py(p.1),
            px(q.0),
            py(q.1)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g fill="white" stroke="black" stroke-width="1.5">"#).unwrap();
    for (v, &(x, y)) in d.coords.iter().enumerate() {
        writeln!(
            s,
            r#"<circle id="v{v}" cx="{}" cy="{}" r="5"/>"#,
            px(x),
            py(y)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Drawing {
        Drawing {
            coords: vec![(0, 0), (1, 0), (1, 1), (0, 1)],
            edges: vec![(0, 1), (1, 2), (2, 3), (3, 0)],
        }
    }

    #[test]
    fn square_svg() {
        let out = String::from_utf8(to_svg(&square())).unwrap();
        assert_eq!(out.matches("<polyline").count(), 4);
        assert_eq!(out.matches("<circle").count(), 4);
        assert!(out.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn deterministic() {
        assert_eq!(to_svg(&square()), to_svg(&square()));
    }
}
