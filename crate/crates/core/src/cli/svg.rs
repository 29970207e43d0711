//! Dependency-free SVG plots. Each file carries its data table in a leading
//! comment so the numbers survive without the CSV next to it.

use std::fmt::Write as _;

const W: f64 = 640.0;
const H: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;
const COLOURS: [&str; 4] = ["#1f5fa8", "#c2452d", "#3a8a3a", "#7a4fa0"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    Line,
    Points,
    /// Hollow points, for censored or otherwise partial observations.
    Hollow,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub mark: Mark,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>, mark: Mark) -> Self {
        Self {
            label: label.into(),
            points,
            mark,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Axes {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn header(out: &mut String, data: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    // "--" may not appear inside an XML comment.
    let _ = writeln!(out, "<!-- data\n{}-->", data.replace("--", "- -"));
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    log_x: bool,
    log_y: bool,
}

impl Frame {
    fn fit(points: impl Iterator<Item = (f64, f64)>, log_x: bool, log_y: bool, zero_y: bool) -> Self {
        let tx = |x: f64| if log_x { x.log10() } else { x };
        let ty = |y: f64| if log_y { y.log10() } else { y };
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in points {
            let (x, y) = (tx(x), ty(y));
            if x.is_finite() && y.is_finite() {
                x0 = x0.min(x);
                x1 = x1.max(x);
                y0 = y0.min(y);
                y1 = y1.max(y);
            }
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        if zero_y && !log_y {
            y0 = y0.min(0.0);
        }
        if x1 - x0 < 1e-12 {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if y1 - y0 < 1e-12 {
            y0 -= 0.5;
            y1 += 0.5;
        }
        let pad = 0.05 * (y1 - y0);
        Self {
            x0,
            x1,
            y0: if zero_y && !log_y && y0 == 0.0 { 0.0 } else { y0 - pad },
            y1: y1 + pad,
            log_x,
            log_y,
        }
    }

    fn px(&self, x: f64) -> f64 {
        let x = if self.log_x { x.log10() } else { x };
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let y = if self.log_y { y.log10() } else { y };
        H - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (H - TOP - BOTTOM)
    }

    fn visible(&self, x: f64, y: f64) -> bool {
        (!self.log_x || x > 0.0) && (!self.log_y || y > 0.0) && x.is_finite() && y.is_finite()
    }

    fn draw(&self, out: &mut String, axes: &Axes) {
        let (bx, by) = (H - BOTTOM, W - RIGHT);
        let _ = writeln!(
            out,
            r##"<path d="M{LEFT},{TOP} V{bx} H{by}" fill="none" stroke="#333"/>"##
        );
        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let xv = self.x0 + f * (self.x1 - self.x0);
            let yv = self.y0 + f * (self.y1 - self.y0);
            let (xs, ys) = (
                if self.log_x { 10f64.powf(xv) } else { xv },
                if self.log_y { 10f64.powf(yv) } else { yv },
            );
            let px = LEFT + f * (W - LEFT - RIGHT);
            let py = H - BOTTOM - f * (H - TOP - BOTTOM);
            let _ = writeln!(
                out,
                r##"<text x="{px:.1}" y="{:.1}" font-size="11" text-anchor="middle">{}</text>"##,
                H - BOTTOM + 16.0,
                tick(xs)
            );
            let _ = writeln!(
                out,
                r##"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">{}</text>"##,
                LEFT - 6.0,
                py + 4.0,
                tick(ys)
            );
        }
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="22" font-size="14" text-anchor="middle">{}</text>"##,
            W / 2.0,
            escape(&axes.title)
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{}</text>"##,
            (LEFT + W - RIGHT) / 2.0,
            H - 14.0,
            escape(&axes.x_label)
        );
        let _ = writeln!(
            out,
            r##"<text x="16" y="{:.1}" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"##,
            (TOP + H - BOTTOM) / 2.0,
            (TOP + H - BOTTOM) / 2.0,
            escape(&axes.y_label)
        );
    }
}

fn tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.1e}")
    } else if v.abs() >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.2}")
    }
}

/// Scatter and line plot; `data` is the CSV embedded in the header comment.
pub fn plot(axes: &Axes, series: &[Series], data: &str) -> String {
    let mut out = String::new();
    header(&mut out, data);
    let frame = Frame::fit(
        series.iter().flat_map(|s| s.points.iter().copied()),
        axes.log_x,
        axes.log_y,
        false,
    );
    frame.draw(&mut out, axes);
    for (i, s) in series.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let pts: Vec<(f64, f64)> = s
            .points
            .iter()
            .copied()
            .filter(|&(x, y)| frame.visible(x, y))
            .collect();
        match s.mark {
            Mark::Line if pts.len() > 1 => {
                let d: Vec<String> = pts
                    .iter()
                    .map(|&(x, y)| format!("{:.1},{:.1}", frame.px(x), frame.py(y)))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
                    d.join(" ")
                );
            }
            Mark::Line => {}
            Mark::Points | Mark::Hollow => {
                let fill = if s.mark == Mark::Points { colour } else { "none" };
                for &(x, y) in &pts {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{:.1}" cy="{:.1}" r="3.5" fill="{fill}" stroke="{colour}"/>"#,
                        frame.px(x),
                        frame.py(y)
                    );
                }
            }
        }
        let ly = TOP + 14.0 * i as f64 + 6.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{ly:.1}" font-size="11" fill="{colour}">{}</text>"#,
            LEFT + 10.0,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Bar chart of `(x, height)` pairs, one bar per distinct `x`.
pub fn histogram(axes: &Axes, bars: &[(f64, f64)], data: &str) -> String {
    let mut out = String::new();
    header(&mut out, data);
    let mut frame = Frame::fit(bars.iter().copied(), axes.log_x, axes.log_y, true);
    frame.x0 -= 0.5;
    frame.x1 += 0.5;
    frame.draw(&mut out, axes);
    let step = (frame.px(1.0) - frame.px(0.0)).abs().max(1.0);
    let width = (0.8 * step).clamp(1.0, 40.0);
    let base = if axes.log_y { H - BOTTOM } else { frame.py(0.0f64.max(frame.y0)) };
    for &(x, y) in bars {
        if !frame.visible(x, y) {
            continue;
        }
        let top = frame.py(y);
        let _ = writeln!(
            out,
            r#"<rect x="{:.1}" y="{top:.1}" width="{width:.1}" height="{:.1}" fill="{}"/>"#,
            frame.px(x) - width / 2.0,
            (base - top).max(0.5),
            COLOURS[0]
        );
    }
    out.push_str("</svg>\n");
    out
}
