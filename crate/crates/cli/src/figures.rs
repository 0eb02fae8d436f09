//! Minimal self-contained SVG emitters: one bar chart with error whiskers
//! and one multi-series line chart. Everything is inline attributes so the
//! files stand alone.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 86.0;

pub struct Bar {
    pub label: String,
    pub mean: f64,
    pub lo: f64,
    pub hi: f64,
    pub fill: &'static str,
}

pub struct Series {
    pub label: String,
    pub ys: Vec<f64>,
    pub stroke: &'static str,
    pub dashed: bool,
}

struct Frame {
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, frac: f64) -> f64 {
        MARGIN_LEFT + frac * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        let span = self.y_max - self.y_min;
        let frac = (v - self.y_min) / span;
        HEIGHT - MARGIN_BOTTOM - frac * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn header(title: &str) -> String {
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\">\n",
            "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n",
            "<text x=\"{tx}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{title}</text>\n"
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = WIDTH / 2.0,
        title = title
    )
}

fn axes(out: &mut String, frame: &Frame, y_label: &str) {
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        out,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>"
    );
    for i in 0..=4 {
        let v = frame.y_min + (frame.y_max - frame.y_min) * f64::from(i) / 4.0;
        let y = frame.y(v);
        let _ = writeln!(
            out,
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{x0}\" y2=\"{y:.1}\" stroke=\"black\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"end\">{v:.2}</text>",
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\" \
         transform=\"rotate(-90 16 {:.1})\">{y_label}</text>",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
}

pub fn bar_chart(title: &str, y_label: &str, y_min: f64, y_max: f64, bars: &[Bar]) -> String {
    let frame = Frame { y_min, y_max };
    let mut out = header(title);
    axes(&mut out, &frame, y_label);
    let n = bars.len() as f64;
    for (i, bar) in bars.iter().enumerate() {
        let center = frame.x((i as f64 + 0.5) / n);
        let width = (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / n * 0.55;
        let base = frame.y(frame.y_min.max(y_min));
        let top = frame.y(bar.mean.clamp(y_min, y_max));
        let _ = writeln!(
            out,
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"{width:.1}\" height=\"{:.1}\" \
             fill=\"{}\" stroke=\"black\"/>",
            center - width / 2.0,
            top.min(base),
            (base - top).abs(),
            bar.fill
        );
        let (lo, hi) = (
            frame.y(bar.lo.clamp(y_min, y_max)),
            frame.y(bar.hi.clamp(y_min, y_max)),
        );
        let _ = writeln!(
            out,
            "<line x1=\"{center:.1}\" y1=\"{lo:.1}\" x2=\"{center:.1}\" y2=\"{hi:.1}\" stroke=\"black\"/>\n\
             <line x1=\"{:.1}\" y1=\"{lo:.1}\" x2=\"{:.1}\" y2=\"{lo:.1}\" stroke=\"black\"/>\n\
             <line x1=\"{:.1}\" y1=\"{hi:.1}\" x2=\"{:.1}\" y2=\"{hi:.1}\" stroke=\"black\"/>",
            center - 5.0,
            center + 5.0,
            center - 5.0,
            center + 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{center:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"end\" \
             transform=\"rotate(-40 {center:.1} {:.1})\">{}</text>",
            HEIGHT - MARGIN_BOTTOM + 14.0,
            HEIGHT - MARGIN_BOTTOM + 14.0,
            bar.label
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn line_chart(
    title: &str,
    y_label: &str,
    x_label: &str,
    x_ticks: &[String],
    y_min: f64,
    y_max: f64,
    series: &[Series],
) -> String {
    let frame = Frame { y_min, y_max };
    let mut out = header(title);
    axes(&mut out, &frame, y_label);
    let n = x_ticks.len().max(2) as f64;
    for (i, tick) in x_ticks.iter().enumerate() {
        let x = frame.x((i as f64 + 0.5) / n);
        let _ = writeln!(
            out,
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{tick}</text>",
            HEIGHT - MARGIN_BOTTOM + 16.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{x_label}</text>",
        (MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2.0,
        HEIGHT - MARGIN_BOTTOM + 36.0
    );
    for s in series {
        let points: Vec<String> =
            s.ys.iter()
                .enumerate()
                .map(|(i, &v)| {
                    format!(
                        "{:.1},{:.1}",
                        frame.x((i as f64 + 0.5) / n),
                        frame.y(v.clamp(y_min, y_max))
                    )
                })
                .collect();
        let dash = if s.dashed {
            " stroke-dasharray=\"6 4\""
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\"{dash}/>",
            points.join(" "),
            s.stroke
        );
        for p in &points {
            let (x, y) = p.split_once(',').expect("point format");
            let _ = writeln!(
                out,
                "<circle cx=\"{x}\" cy=\"{y}\" r=\"2.4\" fill=\"{}\"/>",
                s.stroke
            );
        }
    }
    // legend, top-right corner
    for (i, s) in series.iter().enumerate() {
        let y = MARGIN_TOP + 6.0 + 13.0 * i as f64;
        let dash = if s.dashed {
            " stroke-dasharray=\"6 4\""
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"{}\" stroke-width=\"1.8\"{dash}/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\">{}</text>",
            WIDTH - 150.0,
            WIDTH - 128.0,
            s.stroke,
            WIDTH - 124.0,
            y + 3.5,
            s.label
        );
    }
    out.push_str("</svg>\n");
    out
}
