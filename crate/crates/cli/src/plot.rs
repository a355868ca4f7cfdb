//! Minimal SVG rendering of per-node error curves: miss-detection,
//! worst-fraction miss-detection and false alarm on a log rate axis.

use social_fusion::MetricsReport;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 36.0;
const MARGIN_B: f64 = 44.0;
/// Rates below this floor are clamped so zero stays drawable on the log axis.
const RATE_FLOOR: f64 = 1e-4;

struct Axes {
    n_nodes: usize,
}

impl Axes {
    fn x(&self, node: usize) -> f64 {
        let span = WIDTH - MARGIN_L - MARGIN_R;
        MARGIN_L + span * (node as f64 - 1.0) / (self.n_nodes.max(2) as f64 - 1.0)
    }

    fn y(&self, rate: f64) -> f64 {
        let span = HEIGHT - MARGIN_T - MARGIN_B;
        let log = rate.max(RATE_FLOOR).log10(); // in [-4, 0]
        MARGIN_T + span * (-log / 4.0)
    }
}

fn polyline(axes: &Axes, rates: impl Iterator<Item = f64>, color: &str) -> String {
    let points: Vec<String> = rates
        .enumerate()
        .map(|(i, v)| format!("{:.2},{:.2}", axes.x(i + 1), axes.y(v)))
        .collect();
    format!(
        "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.join(" ")
    )
}

/// Renders the report's curves as a standalone SVG document.
pub fn render_curves_svg(report: &MetricsReport) -> String {
    let axes = Axes {
        n_nodes: report.config.n_nodes,
    };
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    let c = &report.config;
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\">q={} r={} tau={} strategy={} N*={} runs={}</text>\n",
        MARGIN_L,
        c.sensor.q,
        c.sensor.r,
        c.tau,
        c.attack.strategy,
        c.attack.n_star,
        c.n_runs
    ));

    // Decade gridlines and y labels.
    for exp in 0..=4 {
        let rate = 10f64.powi(-exp);
        let y = axes.y(rate);
        svg.push_str(&format!(
            "  <line x1=\"{MARGIN_L}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>\n",
            WIDTH - MARGIN_R
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e-{exp}</text>\n",
            MARGIN_L - 6.0,
            y + 4.0
        ));
    }
    // X ticks at quarters of the sequence.
    for i in 0..=4 {
        let node = 1 + (axes.n_nodes - 1) * i / 4;
        let x = axes.x(node);
        svg.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{node}</text>\n",
            HEIGHT - MARGIN_B + 16.0
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">node index</text>\n",
        (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        HEIGHT - 8.0
    ));

    svg.push_str(&polyline(
        &axes,
        report.per_node.iter().map(|s| s.md_rate),
        "#1f77b4",
    ));
    svg.push_str(&polyline(
        &axes,
        report.per_node.iter().map(|s| s.md_worst_decile),
        "#d62728",
    ));
    svg.push_str(&polyline(
        &axes,
        report.per_node.iter().map(|s| s.fa_rate),
        "#2ca02c",
    ));

    // Legend.
    let legend = [
        ("#1f77b4", "miss-detection"),
        ("#d62728", "miss-detection, worst fraction"),
        ("#2ca02c", "false alarm"),
    ];
    for (i, (color, label)) in legend.iter().enumerate() {
        let y = MARGIN_T + 14.0 + 16.0 * i as f64;
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            MARGIN_L + 8.0,
            MARGIN_L + 32.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\">{label}</text>\n",
            MARGIN_L + 38.0,
            y + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use social_fusion::{
        metrics::report, monte_carlo, AttackConfig, AttackStrategy, Hypothesis, RunConfig,
        SensorSpec,
    };

    #[test]
    fn svg_is_wellformed_and_deterministic() {
        let config = RunConfig {
            n_nodes: 50,
            sensor: SensorSpec::new(0.01, 0.1).unwrap(),
            tau: 0.0,
            attack: AttackConfig {
                strategy: AttackStrategy::Leading,
                n_star: 10,
                forced_bit: false,
            },
            n_runs: 100,
            seed: 5,
            hypothesis: Hypothesis::Both,
        };
        let rep = report(&monte_carlo(&config).unwrap(), 0.10).unwrap();
        let a = render_curves_svg(&rep);
        let b = render_curves_svg(&rep);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<polyline").count(), 3);
    }
}
