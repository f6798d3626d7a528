//! CSV and SVG artifacts.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use bdqmc::walsh::AuditReport;
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::experiment::ResultRow;

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> HarnessError + '_ {
    move |source| HarnessError::Csv { path: path.to_path_buf(), source }
}

/// Writes rows with the `ResultRow` header to any writer.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(HarnessError::invalid("rows", "nothing to write"));
    }
    let file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    write_csv(rows, std::io::BufWriter::new(file)).map_err(csv_err(path))
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    r.deserialize().collect::<std::result::Result<_, _>>().map_err(csv_err(path))
}

#[derive(Serialize)]
struct AuditCsvRow {
    theta: f64,
    p: f64,
    k: u64,
    coeff: f64,
    bound: f64,
    ratio: f64,
}

pub fn write_audit_csv<W: Write>(report: &AuditReport, out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    if report.rows.is_empty() {
        w.write_record(["theta", "p", "k", "coeff", "bound", "ratio"])?;
    }
    for r in &report.rows {
        w.serialize(AuditCsvRow {
            theta: r.theta,
            p: r.p,
            k: r.k,
            coeff: r.coeff,
            bound: r.bound,
            ratio: r.ratio,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_audit_csv(report: &AuditReport, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    write_audit_csv(report, std::io::BufWriter::new(file)).map_err(csv_err(path))
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Rows grouped by option, in order of first appearance; rows with zero
/// rmse are dropped since they have no logarithm.
fn series(rows: &[ResultRow]) -> Vec<(&str, Vec<(f64, f64)>)> {
    let mut out: Vec<(&str, Vec<(f64, f64)>)> = Vec::new();
    for r in rows.iter().filter(|r| r.rmse > 0.0 && r.rmse.is_finite()) {
        let pt = (f64::from(r.m), r.rmse.log2());
        match out.iter_mut().find(|(o, _)| *o == r.option) {
            Some((_, pts)) => pts.push(pt),
            None => out.push((&r.option, vec![pt])),
        }
    }
    out
}

/// Log2-log2 chart of rmse against `n`: one polyline per option and
/// dashed `n^-1/2`, `n^-1` guides through the first plotted point.
pub fn render_svg(rows: &[ResultRow]) -> Result<String> {
    let series = series(rows);
    let Some(&(x0, y0)) = series.first().and_then(|(_, p)| p.first()) else {
        return Err(HarnessError::invalid("rows", "no row with positive rmse to plot"));
    };
    let all = series.iter().flat_map(|(_, p)| p.iter().copied());
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    if xmax == xmin {
        xmin -= 1.0;
        xmax += 1.0;
    }
    let guides = [(-0.5, "n^-1/2"), (-1.0, "n^-1")];
    for (slope, _) in guides {
        for x in [xmin, xmax] {
            let y = y0 + slope * (x - x0);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    ymin = ymin.floor();
    ymax = ymax.ceil();
    if ymax == ymin {
        ymax += 1.0;
    }
    let px = |x: f64| MARGIN + (x - xmin) / (xmax - xmin) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - ymin) / (ymax - ymin) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        svg,
        r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" fill="none" stroke="black"/>"#
    );
    for m in (xmin.ceil() as i64)..=(xmax.floor() as i64) {
        let x = px(m as f64);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{bottom}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{m}</text>"#,
            bottom + 5.0,
            bottom + 18.0
        );
    }
    for e in (ymin as i64)..=(ymax as i64) {
        let y = py(e as f64);
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{left}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{e}</text>"#,
            left - 5.0,
            left - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">log2 n</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 15 {:.2})">log2 RMSE</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (slope, label) in guides {
        let (ya, yb) = (y0 + slope * (xmin - x0), y0 + slope * (xmax - x0));
        let _ = writeln!(
            svg,
            r#"<line class="reference" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6 4"/><text x="{:.2}" y="{:.2}" font-size="11" fill="gray">{label}</text>"#,
            px(xmin),
            py(ya),
            px(xmax),
            py(yb),
            px(xmax) + 4.0,
            py(yb) + 4.0
        );
    }
    for (i, (option, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            coords.join(" ")
        );
        let ly = top + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"/><text x="{:.2}" y="{:.2}" font-size="11">option {option}</text>"#,
            right - 110.0,
            right - 90.0,
            right - 85.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_plot(rows: &[ResultRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(HarnessError::invalid("rows", "nothing to plot"));
    }
    let svg = render_svg(rows)?;
    std::fs::write(path, svg).map_err(|e| HarnessError::io(path, e))
}
