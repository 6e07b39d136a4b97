//! Static SVG figure: the curve colored by `k_φ` above a graph of `k_φ(t)`.
//!
//! The color ramp is linear in RGB from blue `#2c7bb6` at the smallest `k_φ`
//! sampled to red `#d7191c` at the largest. A constant `k_φ` draws in the
//! midpoint color.

use std::fmt::Write;

use radvert::{phi_curvature, ParametricCurve, RadialDensity, Result, VertexReport};

const SAMPLES: usize = 1024;
const LOW: [f64; 3] = [44.0, 123.0, 182.0];
const HIGH: [f64; 3] = [215.0, 25.0, 28.0];

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
}

fn ramp(s: f64) -> String {
    let s = if s.is_finite() {
        s.clamp(0.0, 1.0)
    } else {
        0.5
    };
    let c: Vec<u8> = (0..3)
        .map(|i| (LOW[i] + s * (HIGH[i] - LOW[i])).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

pub fn render<C: ParametricCurve + ?Sized>(
    d: &RadialDensity,
    curve: &C,
    report: &VertexReport,
) -> Result<String> {
    let period = curve.period();
    let ts: Vec<f64> = (0..=SAMPLES)
        .map(|i| period * i as f64 / SAMPLES as f64)
        .collect();
    let pts: Vec<_> = ts.iter().map(|&t| curve.position(t)).collect();
    let ks = ts
        .iter()
        .map(|&t| phi_curvature(d, curve, t))
        .collect::<Result<Vec<f64>>>()?;
    let k_lo = ks.iter().cloned().fold(f64::INFINITY, f64::min);
    let k_hi = ks.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = k_hi - k_lo;
    let level = |k: f64| {
        if span > 1e-12 * (1.0 + k_hi.abs()) {
            (k - k_lo) / span
        } else {
            0.5
        }
    };

    let mut s = String::new();
    s.push_str(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 800" width="800" height="800" font-family="sans-serif" font-size="11">"#);
    s.push('\n');
    s.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");

    // curve panel, equal axis scaling, origin always in view
    let panel = Frame {
        x0: 40.0,
        y0: 30.0,
        w: 720.0,
        h: 480.0,
    };
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in &pts {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    let scale = (panel.w / (xmax - xmin).max(1e-12)).min(panel.h / (ymax - ymin).max(1e-12)) * 0.92;
    let cx = panel.x0 + panel.w / 2.0 - scale * (xmin + xmax) / 2.0;
    let cy = panel.y0 + panel.h / 2.0 + scale * (ymin + ymax) / 2.0;
    let map = |x: f64, y: f64| (cx + scale * x, cy - scale * y);

    let (ox, oy) = map(0.0, 0.0);
    writeln!(s, "<g stroke=\"#999\" stroke-width=\"1\"><line x1=\"{:.2}\" y1=\"{oy:.2}\" x2=\"{:.2}\" y2=\"{oy:.2}\"/><line x1=\"{ox:.2}\" y1=\"{:.2}\" x2=\"{ox:.2}\" y2=\"{:.2}\"/></g>", ox - 6.0, ox + 6.0, oy - 6.0, oy + 6.0).unwrap();
    writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"#666\">O</text>",
        ox + 4.0,
        oy + 14.0
    )
    .unwrap();

    s.push_str("<g stroke-width=\"3\" stroke-linecap=\"round\">\n");
    for i in 0..SAMPLES {
        let (x1, y1) = map(pts[i].x, pts[i].y);
        let (x2, y2) = map(pts[i + 1].x, pts[i + 1].y);
        let color = ramp(level(0.5 * (ks[i] + ks[i + 1])));
        writeln!(s, "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{color}\"/>").unwrap();
    }
    s.push_str("</g>\n");
    for v in &report.vertices {
        let (x, y) = map(v.x, v.y);
        writeln!(
            s,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>"
        )
        .unwrap();
        writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\">t={:.3}</text>",
            x + 6.0,
            y - 6.0,
            v.t
        )
        .unwrap();
    }

    // legend
    s.push_str("<defs><linearGradient id=\"ramp\"><stop offset=\"0\" stop-color=\"");
    s.push_str(&ramp(0.0));
    s.push_str("\"/><stop offset=\"1\" stop-color=\"");
    s.push_str(&ramp(1.0));
    s.push_str("\"/></linearGradient></defs>\n");
    s.push_str("<rect x=\"560\" y=\"14\" width=\"120\" height=\"8\" fill=\"url(#ramp)\"/>\n");
    writeln!(
        s,
        "<text x=\"556\" y=\"22\" text-anchor=\"end\">{k_lo:.4}</text>"
    )
    .unwrap();
    writeln!(s, "<text x=\"684\" y=\"22\">{k_hi:.4}</text>").unwrap();
    writeln!(
        s,
        "<text x=\"40\" y=\"22\">vertices: {}</text>",
        report.count
    )
    .unwrap();

    // k_φ(t) graph
    let g = Frame {
        x0: 70.0,
        y0: 560.0,
        w: 690.0,
        h: 200.0,
    };
    let (lo, hi) = if span > 1e-12 * (1.0 + k_hi.abs()) {
        (k_lo - 0.05 * span, k_hi + 0.05 * span)
    } else {
        (k_lo - 0.5, k_hi + 0.5)
    };
    let gx = |t: f64| g.x0 + g.w * t / period;
    let gy = |k: f64| g.y0 + g.h * (hi - k) / (hi - lo);
    writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>",
        g.x0, g.y0, g.w, g.h
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{hi:.4}</text>",
        g.x0 - 4.0,
        g.y0 + 10.0
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{lo:.4}</text>",
        g.x0 - 4.0,
        g.y0 + g.h
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\">0</text>",
        g.x0,
        g.y0 + g.h + 14.0
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{period:.4}</text>",
        g.x0 + g.w,
        g.y0 + g.h + 14.0
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">t</text>",
        g.x0 + g.w / 2.0,
        g.y0 + g.h + 14.0
    )
    .unwrap();
    writeln!(
        s,
        "<text x=\"{}\" y=\"{}\">k_phi(t)</text>",
        g.x0,
        g.y0 - 6.0
    )
    .unwrap();
    let line: Vec<String> = ts
        .iter()
        .zip(&ks)
        .map(|(&t, &k)| format!("{:.2},{:.2}", gx(t), gy(k)))
        .collect();
    writeln!(
        s,
        "<polyline fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\" points=\"{}\"/>",
        line.join(" ")
    )
    .unwrap();
    for v in &report.vertices {
        let (x, y) = (gx(v.t), gy(v.k_phi));
        writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"none\" stroke=\"#d7191c\" stroke-width=\"1.5\"/>").unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
