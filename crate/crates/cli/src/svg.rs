//! Minimal standalone SVG charts. Presentation only — every number shown
//! here is also in the CSV output.

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{title}</text>\n",
        WIDTH / 2.0
    )
}

/// Histogram bar chart over bin edges/counts.
pub fn histogram_chart(title: &str, edges: &[f64], counts: &[u64]) -> String {
    let mut out = header(title);
    let max = counts.iter().copied().max().unwrap_or(1).max(1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let n = counts.len() as f64;
    for (i, &c) in counts.iter().enumerate() {
        let bar_h = plot_h * c as f64 / max;
        let x = MARGIN + plot_w * i as f64 / n;
        let y = HEIGHT - MARGIN - bar_h;
        out.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#4878a8\" stroke=\"white\"/>\n",
            x,
            y,
            plot_w / n,
            bar_h
        ));
    }
    out.push_str(&format!(
        "<line x1=\"{MARGIN}\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN,
        WIDTH - MARGIN
    ));
    for (i, &e) in edges.iter().enumerate() {
        let x = MARGIN + (WIDTH - 2.0 * MARGIN) * i as f64 / (edges.len() - 1) as f64;
        out.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">{e:.3}</text>\n",
            HEIGHT - MARGIN + 16.0
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Convergence trace: PRE vs iteration count for area and perimeter.
pub fn trace_chart(title: &str, points: &[(u64, f64, f64)]) -> String {
    let mut out = header(title);
    if points.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = points.iter().flat_map(|p| [p.1, p.2]).collect();
    let (x_lo, x_hi) = (xs[0], xs[xs.len() - 1].max(xs[0] + 1.0));
    let y_lo = ys.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let y_hi = ys
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
        .max(y_lo + 1e-9);
    let px = |x: f64| MARGIN + (WIDTH - 2.0 * MARGIN) * (x - x_lo) / (x_hi - x_lo);
    let py = |y: f64| HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * (y - y_lo) / (y_hi - y_lo);
    for (series, color) in [(1usize, "#c03028"), (2usize, "#202020")] {
        let path: Vec<String> = points
            .iter()
            .map(|p| {
                let y = if series == 1 { p.1 } else { p.2 };
                format!("{:.2},{:.2}", px(p.0 as f64), py(y))
            })
            .collect();
        out.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            path.join(" ")
        ));
    }
    if y_lo < 0.0 && y_hi > 0.0 {
        out.push_str(&format!(
            "<line x1=\"{MARGIN}\" y1=\"{0:.2}\" x2=\"{1}\" y2=\"{0:.2}\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n",
            py(0.0),
            WIDTH - MARGIN
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#c03028\">area PRE</text>\n\
         <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#202020\">perimeter PRE</text>\n",
        MARGIN + 4.0,
        MARGIN + 12.0,
        MARGIN + 4.0,
        MARGIN + 26.0
    ));
    out.push_str("</svg>\n");
    out
}
