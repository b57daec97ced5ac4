//! Hand-rolled SVG emission for the two plot kinds the CLI produces: a
//! grouped bar chart of prior/posterior probabilities and stacked
//! convergence panels with a log-scale x axis. Values are probabilities, so
//! the y axis is always [0, 1].

use bdt_core::network::ConvergenceCurve;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn axis_frame(out: &mut String, x0: f64, y0: f64, x1: f64, y1: f64) {
    out.push_str(&format!(
        "  <line x1=\"{x0:.1}\" y1=\"{y1:.1}\" x2=\"{x1:.1}\" y2=\"{y1:.1}\" stroke=\"black\"/>\n"
    ));
    out.push_str(&format!(
        "  <line x1=\"{x0:.1}\" y1=\"{y0:.1}\" x2=\"{x0:.1}\" y2=\"{y1:.1}\" stroke=\"black\"/>\n"
    ));
    for tick in 0..=4 {
        let value = tick as f64 / 4.0;
        let y = y1 - value * (y1 - y0);
        out.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"end\">{:.2}</text>\n",
            x0 - 4.0,
            y + 3.0,
            value
        ));
    }
}

/// Grouped bar chart: one cluster per category, one bar per series within
/// each cluster. All values must lie in [0, 1].
pub fn grouped_bar(title: &str, categories: &[&str], series: &[(&str, Vec<f64>)]) -> String {
    let (width, height) = (640.0, 420.0);
    let (x0, y0, x1, y1) = (70.0, 50.0, 610.0, 370.0);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
        width / 2.0,
        escape(title)
    ));
    axis_frame(&mut out, x0, y0, x1, y1);

    let cluster_width = (x1 - x0) / categories.len() as f64;
    let bar_width = cluster_width * 0.7 / series.len() as f64;
    for (category_index, category) in categories.iter().enumerate() {
        let cluster_left = x0 + category_index as f64 * cluster_width + cluster_width * 0.15;
        for (series_index, (_, values)) in series.iter().enumerate() {
            let value = values[category_index].clamp(0.0, 1.0);
            let bar_height = value * (y1 - y0);
            let x = cluster_left + series_index as f64 * bar_width;
            out.push_str(&format!(
                "  <rect class=\"bar\" x=\"{x:.1}\" y=\"{:.1}\" width=\"{bar_width:.1}\" height=\"{bar_height:.1}\" fill=\"{}\"/>\n",
                y1 - bar_height,
                PALETTE[series_index % PALETTE.len()]
            ));
        }
        out.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            cluster_left + cluster_width * 0.35,
            y1 + 16.0,
            escape(category)
        ));
    }
    for (series_index, (name, _)) in series.iter().enumerate() {
        let y = y0 + series_index as f64 * 16.0;
        out.push_str(&format!(
            "  <rect x=\"{:.1}\" y=\"{:.1}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n",
            x1 - 120.0,
            y,
            PALETTE[series_index % PALETTE.len()]
        ));
        out.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\">{}</text>\n",
            x1 - 104.0,
            y + 10.0,
            escape(name)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Stacked per-group panels of positive/negative probability against the
/// sample size on a log-scale x axis.
pub fn convergence_panels(curves: &[ConvergenceCurve]) -> String {
    let width = 640.0;
    let panel_height = 240.0;
    let height = panel_height * curves.len() as f64 + 30.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    for (panel, curve) in curves.iter().enumerate() {
        let top = 30.0 + panel as f64 * panel_height;
        let (x0, y0, x1, y1) = (70.0, top + 20.0, 610.0, top + panel_height - 40.0);
        out.push_str("  <g class=\"panel\">\n");
        out.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
            width / 2.0,
            top + 12.0,
            escape(&curve.label)
        ));
        axis_frame(&mut out, x0, y0, x1, y1);
        out.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\">imaginary sample size (log scale)</text>\n",
            (x0 + x1) / 2.0,
            y1 + 28.0
        ));

        let ln_min = (curve.sample_sizes[0] as f64).ln();
        let ln_max = (*curve.sample_sizes.last().unwrap() as f64).ln();
        let span = if ln_max > ln_min { ln_max - ln_min } else { 1.0 };
        let x_of = |n: u64| x0 + ((n as f64).ln() - ln_min) / span * (x1 - x0);
        let y_of = |p: f64| y1 - p.clamp(0.0, 1.0) * (y1 - y0);

        for (series_index, negate) in [(0usize, false), (1usize, true)] {
            let points: Vec<String> = curve
                .sample_sizes
                .iter()
                .zip(&curve.positive)
                .map(|(&n, &p)| {
                    let value = if negate { 1.0 - p } else { p };
                    format!("{:.1},{:.1}", x_of(n), y_of(value))
                })
                .collect();
            out.push_str(&format!(
                "  <polyline class=\"series\" fill=\"none\" stroke=\"{}\" stroke-dasharray=\"{}\" points=\"{}\"/>\n",
                PALETTE[series_index],
                if negate { "6,3" } else { "2,3" },
                points.join(" ")
            ));
        }
        for (series_index, name) in [(0usize, "positive"), (1usize, "negative")] {
            let y = y0 + series_index as f64 * 14.0;
            out.push_str(&format!(
                "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" fill=\"{}\">{}</text>\n",
                x1 - 70.0,
                y,
                PALETTE[series_index],
                name
            ));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use bdt_core::network::{convergence_table, ConvergenceGroup};

    #[test]
    fn bar_chart_has_one_rect_per_bar() {
        let svg = grouped_bar(
            "prior vs posterior",
            &["disease-positive", "disease-negative"],
            &[
                ("prior", vec![0.001, 0.999]),
                ("posterior", vec![0.045, 0.955]),
            ],
        );
        assert_eq!(svg.matches("class=\"bar\"").count(), 4);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn convergence_plot_has_two_series_per_panel() {
        let curves = convergence_table(
            &[
                ConvergenceGroup::new("HighRisk", 0.9),
                ConvergenceGroup::new("LowRisk", 0.1),
            ],
            0.5,
            50.0,
            &[1, 10, 100],
        )
        .unwrap();
        let svg = convergence_panels(&curves);
        assert_eq!(svg.matches("class=\"panel\"").count(), 2);
        assert_eq!(svg.matches("class=\"series\"").count(), 4);
    }
}
