//! Self-contained SVG rendering: polyline charts for sweeps and a
//! diverging-color heatmap for Wigner functions. No plotting library — the
//! output is small, deterministic, and testable as XML.

use rabi_core::quantum::WignerGrid;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 58.0;

/// Line colors: one per entropy curve / series, reused cyclically.
pub const PALETTE: [&str; 6] = [
    "#d62728", "#2ca02c", "#1f77b4", "#9467bd", "#ff7f0e", "#8c564b",
];

/// Data-to-pixel mapping inside fixed margins, y growing upward.
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Frame {
        let pad = |lo: f64, hi: f64| -> (f64, f64) {
            if hi > lo {
                let pad = 0.04 * (hi - lo);
                (lo - pad, hi + pad)
            } else {
                (lo - 1.0, hi + 1.0)
            }
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        Frame { x0, x1, y0, y1 }
    }

    fn exact(x0: f64, x1: f64, y0: f64, y1: f64) -> Frame {
        Frame { x0, x1, y0, y1 }
    }

    fn sx(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM
            - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn fmt_px(v: f64) -> String {
    format!("{v:.2}")
}

/// Short tick label: three decimals with trailing zeros trimmed.
fn fmt_tick(v: f64) -> String {
    let mut s = format!("{v:.3}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    if s == "-0" {
        s = String::from("0");
    }
    s
}

fn document(meta: &str, title: &str, body: String) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <!-- {meta} -->\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>\n\
         <text x=\"{tx}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" \
         text-anchor=\"middle\">{title}</text>\n\
         {body}\n</svg>\n",
        tx = fmt_px(WIDTH / 2.0),
    )
}

fn axes(frame: &Frame, x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    let (left, right) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (top, bottom) = (MARGIN_TOP, HEIGHT - MARGIN_BOTTOM);
    out.push_str(&format!(
        "<rect x=\"{left}\" y=\"{top}\" width=\"{}\" height=\"{}\" fill=\"none\" \
         stroke=\"#333333\" stroke-width=\"1\"/>\n",
        right - left,
        bottom - top
    ));
    for i in 0..=5 {
        let fx = frame.x0 + (frame.x1 - frame.x0) * i as f64 / 5.0;
        let px = frame.sx(fx);
        out.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"#333333\" stroke-width=\"1\"/>\n\
             <text x=\"{x}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{label}</text>\n",
            x = fmt_px(px),
            y1 = fmt_px(bottom),
            y2 = fmt_px(bottom + 5.0),
            ty = fmt_px(bottom + 20.0),
            label = fmt_tick(fx),
        ));
        let fy = frame.y0 + (frame.y1 - frame.y0) * i as f64 / 5.0;
        let py = frame.sy(fy);
        out.push_str(&format!(
            "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#333333\" stroke-width=\"1\"/>\n\
             <text x=\"{tx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{label}</text>\n",
            x1 = fmt_px(left - 5.0),
            x2 = fmt_px(left),
            y = fmt_px(py),
            tx = fmt_px(left - 9.0),
            ty = fmt_px(py + 4.0),
            label = fmt_tick(fy),
        ));
    }
    out.push_str(&format!(
        "<text x=\"{x}\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\">{x_label}</text>\n",
        x = fmt_px((left + right) / 2.0),
        y = fmt_px(HEIGHT - 16.0),
    ));
    out.push_str(&format!(
        "<text x=\"20\" y=\"{y}\" font-family=\"sans-serif\" font-size=\"14\" \
         text-anchor=\"middle\" transform=\"rotate(-90 20 {y})\">{y_label}</text>\n",
        y = fmt_px((top + bottom) / 2.0),
    ));
    out
}

fn polyline(frame: &Frame, points: &[(f64, f64)], color: &str, width: f64) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{},{}", fmt_px(frame.sx(*x)), fmt_px(frame.sy(*y))))
        .collect();
    format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\"/>\n",
        coords.join(" ")
    )
}

fn markers(frame: &Frame, points: &[(f64, f64)], color: &str) -> String {
    points
        .iter()
        .map(|(x, y)| {
            format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"{color}\"/>\n",
                fmt_px(frame.sx(*x)),
                fmt_px(frame.sy(*y))
            )
        })
        .collect()
}

/// One named, colored point series.
pub struct Series<'a> {
    pub label: Option<String>,
    pub color: &'a str,
    pub points: Vec<(f64, f64)>,
    pub with_markers: bool,
}

/// Generic polyline chart; used for the spectrum fan, entropy curves,
/// collapse scans, and convergence tables.
pub fn line_chart(
    meta: &str,
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series<'_>],
) -> String {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for s in series {
        for (x, y) in &s.points {
            xs.push(*x);
            ys.push(*y);
        }
    }
    let fold_min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let fold_max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let frame = if xs.is_empty() {
        Frame::new(0.0, 1.0, 0.0, 1.0)
    } else {
        Frame::new(fold_min(&xs), fold_max(&xs), fold_min(&ys), fold_max(&ys))
    };
    let mut body = axes(&frame, x_label, y_label);
    for s in series {
        if s.points.is_empty() {
            continue;
        }
        body.push_str(&polyline(&frame, &s.points, s.color, 1.4));
        if s.with_markers {
            body.push_str(&markers(&frame, &s.points, s.color));
        }
    }
    // Legend for labeled series only.
    let labeled: Vec<&Series<'_>> = series.iter().filter(|s| s.label.is_some()).collect();
    for (i, s) in labeled.iter().enumerate() {
        let ly = MARGIN_TOP + 16.0 + 18.0 * i as f64;
        body.push_str(&format!(
            "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"{color}\" stroke-width=\"2\"/>\n\
             <text x=\"{tx}\" y=\"{ty}\" font-family=\"sans-serif\" font-size=\"12\">{label}</text>\n",
            x1 = fmt_px(MARGIN_LEFT + 10.0),
            x2 = fmt_px(MARGIN_LEFT + 34.0),
            y = fmt_px(ly),
            color = s.color,
            tx = fmt_px(MARGIN_LEFT + 40.0),
            ty = fmt_px(ly + 4.0),
            label = s.label.as_deref().unwrap_or(""),
        ));
    }
    document(meta, title, body)
}

/// Symmetric diverging color map centered at zero: blue for negative,
/// white at zero, red for positive. `t` is the value over the color scale
/// maximum, clamped to [-1, 1].
pub fn diverging_color(t: f64) -> String {
    let t = t.clamp(-1.0, 1.0);
    let (base, mag) = if t < 0.0 {
        ((69.0, 117.0, 180.0), -t)
    } else {
        ((215.0, 48.0, 39.0), t)
    };
    let channel = |b: f64| -> u8 { (255.0 + (b - 255.0) * mag).round() as u8 };
    format!(
        "#{:02x}{:02x}{:02x}",
        channel(base.0),
        channel(base.1),
        channel(base.2)
    )
}

/// Wigner heatmap: one rect per grid cell, color scale symmetric about
/// W = 0 so negative regions are visually distinct from the positive bulk.
pub fn wigner_heatmap(meta: &str, title: &str, grid: &WignerGrid) -> String {
    let xs = grid.x_axis();
    let ps = grid.p_axis();
    let frame = Frame::exact(
        xs[0],
        *xs.last().expect("nonempty axis"),
        ps[0],
        *ps.last().expect("nonempty axis"),
    );
    let scale = grid
        .values()
        .iter()
        .fold(0.0f64, |acc, w| acc.max(w.abs()))
        .max(f64::MIN_POSITIVE);
    let mut body = String::new();
    // Cell edges at midpoints between samples.
    let edges = |axis: &[f64]| -> Vec<f64> {
        let n = axis.len();
        let mut e = Vec::with_capacity(n + 1);
        e.push(axis[0]);
        for i in 1..n {
            e.push(0.5 * (axis[i - 1] + axis[i]));
        }
        e.push(axis[n - 1]);
        e
    };
    let xe = edges(xs);
    let pe = edges(ps);
    for xi in 0..xs.len() {
        for pi in 0..ps.len() {
            let w = grid.value(xi, pi);
            let x_left = frame.sx(xe[xi]);
            let x_right = frame.sx(xe[xi + 1]);
            let y_top = frame.sy(pe[pi + 1]);
            let y_bottom = frame.sy(pe[pi]);
            body.push_str(&format!(
                "<rect x=\"{x}\" y=\"{y}\" width=\"{w_px}\" height=\"{h_px}\" fill=\"{color}\"/>\n",
                x = fmt_px(x_left),
                y = fmt_px(y_top),
                w_px = fmt_px((x_right - x_left).max(0.1)),
                h_px = fmt_px((y_bottom - y_top).max(0.1)),
                color = diverging_color(w / scale),
            ));
        }
    }
    body.push_str(&axes(&frame, "x", "p"));
    document(meta, title, body)
}
