use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 70.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
    pub color: &'static str,
}

/// A line chart on a fixed 800×600 canvas.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub series: Vec<Series>,
    /// Horizontal reference lines.
    pub guides: Vec<f64>,
    pub x_ticks: Vec<(f64, String)>,
    pub y_ticks: Vec<(f64, String)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Chart {
    fn px(&self, x: f64) -> f64 {
        let (a, b) = self.x_range;
        MARGIN_LEFT + (x - a) / (b - a) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let (a, b) = self.y_range;
        HEIGHT - MARGIN_BOTTOM - (y - a) / (b - a) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
        let (y0, y1) = (MARGIN_TOP, HEIGHT - MARGIN_BOTTOM);
        writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
        )
        .unwrap();
        writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r#"<text x="400" y="30" text-anchor="middle" font-family="sans-serif" font-size="18">{}</text>"#,
            escape(&self.title)
        )
        .unwrap();
        writeln!(
            s,
            r#"<path d="M{x0:.2} {y0:.2} L{x0:.2} {y1:.2} L{x1:.2} {y1:.2}" fill="none" stroke="black"/>"#
        )
        .unwrap();
        for (x, label) in &self.x_ticks {
            let px = self.px(*x);
            writeln!(
                s,
                r#"<line x1="{px:.2}" y1="{y1:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
                y1 + 6.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
                y1 + 22.0,
                escape(label)
            )
            .unwrap();
        }
        for (y, label) in &self.y_ticks {
            let py = self.py(*y);
            writeln!(
                s,
                r#"<line x1="{:.2}" y1="{py:.2}" x2="{x0:.2}" y2="{py:.2}" stroke="black"/>"#,
                x0 - 6.0
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="12">{}</text>"#,
                x0 - 10.0,
                py + 4.0,
                escape(label)
            )
            .unwrap();
        }
        for g in &self.guides {
            let py = self.py(*g);
            writeln!(
                s,
                r#"<line x1="{x0:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}" stroke="gray" stroke-dasharray="2 4"/>"#
            )
            .unwrap();
        }
        for (k, series) in self.series.iter().enumerate() {
            let pts: Vec<String> =
                series.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y))).collect();
            let dash = if series.dashed { r#" stroke-dasharray="8 6""# } else { "" };
            writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="2"{dash}/>"#,
                pts.join(" "),
                series.color
            )
            .unwrap();
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="13" fill="{}">{}</text>"#,
                x0 + 15.0,
                y0 + 20.0 + 18.0 * k as f64,
                series.color,
                escape(&series.label)
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<text x="400" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
            HEIGHT - 20.0,
            escape(&self.x_label)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="20" y="300" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 20 300)">{}</text>"#,
            escape(&self.y_label)
        )
        .unwrap();
        s.push_str("</svg>\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canvas_and_polylines() {
        let chart = Chart {
            title: "a < b".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            x_range: (0.0, 1.0),
            y_range: (0.0, 1.0),
            series: vec![
                Series {
                    label: "up".into(),
                    points: vec![(0.0, 0.0), (1.0, 1.0)],
                    dashed: true,
                    color: "black",
                },
                Series {
                    label: "flat".into(),
                    points: vec![(0.0, 0.5), (1.0, 0.5)],
                    dashed: false,
                    color: "red",
                },
            ],
            guides: vec![0.5],
            x_ticks: vec![(0.5, "0.5".into())],
            y_ticks: vec![],
        };
        let svg = chart.render();
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("a &lt; b"));
        assert!(svg.contains("80.00,530.00 770.00,50.00"));
    }
}
