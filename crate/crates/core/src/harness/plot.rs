//! SVG line charts of aggregate metrics: the mean as a solid line inside a
//! band of one standard deviation.

use std::path::{Path, PathBuf};

use plotters::prelude::*;

use crate::error::{Error, Result};

use super::metrics::Table;
use super::run::AGGREGATE_FILE;

/// `(file stem, title, y label, aggregated columns)`.
const CHARTS: [(&str, &str, &str, &[&str]); 7] = [
    ("return", "Episode return", "return", &["mean_return"]),
    (
        "satisfying_proportion",
        "Proportion of satisfying episodes (last 100)",
        "proportion",
        &["sat_proportion_100"],
    ),
    ("c_sat", "Confidence c_sat during training", "c_sat", &["c_sat"]),
    ("lambda", "Lagrangian weight", "lambda", &["lambda"]),
    (
        "verification",
        "Verification confidence at checkpoints",
        "c_sat",
        &["verify_c_sat"],
    ),
    (
        "split_return",
        "Return of satisfying / violating episodes (last 100)",
        "return",
        &["return_sat_100", "return_viol_100"],
    ),
    (
        "split_cost",
        "Cost of satisfying / violating episodes (last 100)",
        "cost",
        &["cost_sat_100", "cost_viol_100"],
    ),
];

const PALETTE: [RGBColor; 6] = [
    RGBColor(31, 119, 180),
    RGBColor(214, 39, 40),
    RGBColor(44, 160, 44),
    RGBColor(255, 127, 14),
    RGBColor(148, 103, 189),
    RGBColor(140, 86, 75),
];

struct Curve {
    label: String,
    /// `(episodes, mean, std)`.
    points: Vec<(f64, f64, f64)>,
}

fn load(path: &Path) -> Result<Table> {
    let file = if path.is_dir() {
        path.join(AGGREGATE_FILE)
    } else {
        path.to_path_buf()
    };
    let table = Table::read(&file)?;
    if table.rows.is_empty() {
        return Err(Error::Schema(format!("{}: no data rows", file.display())));
    }
    Ok(table)
}

fn curve(table: &Table, column: &str, label: String) -> Result<Curve> {
    let x = table.column("episodes")?;
    let m = table.column(&format!("{column}_mean"))?;
    let s = table.column(&format!("{column}_std"))?;
    let points = table
        .rows
        .iter()
        .filter_map(|r| Some((r[x]?, r[m]?, r[s].unwrap_or(0.0))))
        .collect();
    Ok(Curve { label, points })
}

fn plot_err(e: impl std::fmt::Display) -> Error {
    Error::Schema(format!("plotting failed: {e}"))
}

fn draw(path: &Path, title: &str, y_label: &str, curves: &[Curve]) -> Result<()> {
    let all = curves.iter().flat_map(|c| &c.points);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, m, s) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(m - s);
        y1 = y1.max(m + s);
    }
    if !x0.is_finite() {
        // nothing recorded for these columns, e.g. no violating episodes
        x0 = 0.0;
        x1 = 1.0;
        y0 = 0.0;
        y1 = 1.0;
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < 1e-9 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad = 0.05 * (y1 - y0);

    let root = SVGBackend::new(path, (800, 480)).into_drawing_area();
    root.fill(&WHITE).map_err(plot_err)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 20))
        .margin(12)
        .x_label_area_size(40)
        .y_label_area_size(60)
        .build_cartesian_2d(x0..x1, (y0 - pad)..(y1 + pad))
        .map_err(plot_err)?;
    chart
        .configure_mesh()
        .x_desc("episodes")
        .y_desc(y_label)
        .draw()
        .map_err(plot_err)?;
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let band: Vec<(f64, f64)> = c
            .points
            .iter()
            .map(|&(x, m, s)| (x, m + s))
            .chain(c.points.iter().rev().map(|&(x, m, s)| (x, m - s)))
            .collect();
        if !band.is_empty() {
            chart
                .draw_series(std::iter::once(Polygon::new(band, color.mix(0.2).filled())))
                .map_err(plot_err)?;
        }
        chart
            .draw_series(LineSeries::new(
                c.points.iter().map(|&(x, m, _)| (x, m)),
                color.stroke_width(2),
            ))
            .map_err(plot_err)?
            .label(c.label.clone())
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color.stroke_width(2)));
    }
    chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.8))
        .border_style(BLACK)
        .position(SeriesLabelPosition::LowerRight)
        .draw()
        .map_err(plot_err)?;
    root.present().map_err(plot_err)?;
    Ok(())
}

/// Draws every chart for the labelled aggregate files (or run directories)
/// in `inputs` and returns the SVG paths written into `out_dir`.
pub fn emit_plots(inputs: &[(String, PathBuf)], out_dir: &Path) -> Result<Vec<PathBuf>> {
    if inputs.is_empty() {
        return Err(Error::Config("no metrics to plot".into()));
    }
    let tables = inputs
        .iter()
        .map(|(label, path)| Ok((label.as_str(), load(path)?)))
        .collect::<Result<Vec<_>>>()?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    for (stem, title, y_label, columns) in CHARTS {
        let mut curves = Vec::new();
        for (label, table) in &tables {
            for column in columns {
                let name = match (tables.len(), columns.len()) {
                    (1, 1) => label.to_string(),
                    (1, _) => column.to_string(),
                    (_, 1) => label.to_string(),
                    _ => format!("{label} {column}"),
                };
                curves.push(curve(table, column, name)?);
            }
        }
        let path = out_dir.join(format!("{stem}.svg"));
        draw(&path, title, y_label, &curves)?;
        written.push(path);
    }
    Ok(written)
}
