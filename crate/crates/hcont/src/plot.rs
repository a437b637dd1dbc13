//! Plot-ready exports of interval functions on sampled spaces.
//!
//! Two formats, both with byte-deterministic output (floats are written
//! with Rust's shortest round-trip formatting):
//!
//! * **CSV** — one row per sampled point: `x,lo,hi` in 1D, `x,y,lo,hi` in
//!   2D. Infinite endpoints are written as `inf` / `-inf`, which round-trip
//!   through standard float parsing.
//! * **SVG** — in 1D, the lower and upper endpoint curves with vertical
//!   whiskers at interval-valued points; in 2D, a pair of grayscale
//!   heatmaps (lower | upper). SVG needs finite values to scale the axes.

use std::io::Write;

use crate::error::Error;
use crate::funcs::IntervalFunction;
use crate::space::{Coords, SampledMetricSpace, Space};
use crate::Result;

fn metric_of<'a>(f: &'a IntervalFunction, op: &'static str) -> Result<&'a SampledMetricSpace> {
    match f.space().as_ref() {
        Space::Metric(s) => Ok(s),
        Space::Finite(_) => Err(Error::WrongBackend {
            op,
            needs: "sampled (metric)",
        }),
    }
}

/// Writes the function as CSV.
pub fn write_csv<W: Write>(f: &IntervalFunction, mut w: W) -> Result<()> {
    let s = metric_of(f, "csv export")?;
    match s.coords() {
        Coords::One(xs) => {
            writeln!(w, "x,lo,hi")?;
            for (i, &x) in xs.iter().enumerate() {
                writeln!(w, "{},{},{}", x, f.lower(i), f.upper(i))?;
            }
        }
        Coords::Two(cs) => {
            writeln!(w, "x,y,lo,hi")?;
            for (i, &[x, y]) in cs.iter().enumerate() {
                writeln!(w, "{},{},{},{}", x, y, f.lower(i), f.upper(i))?;
            }
        }
    }
    Ok(())
}

/// CSV as a string.
pub fn csv_string(f: &IntervalFunction) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(f, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is ascii"))
}

fn finite_endpoints(f: &IntervalFunction) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut lo = Vec::with_capacity(f.len());
    let mut hi = Vec::with_capacity(f.len());
    for x in 0..f.len() {
        if !f.lower(x).is_finite() || !f.upper(x).is_finite() {
            return Err(Error::InfiniteEndpoint { point: x });
        }
        lo.push(f.lower(x).get());
        hi.push(f.upper(x).get());
    }
    Ok((lo, hi))
}

/// Pads a degenerate range so scaling never divides by zero.
fn padded(min: f64, max: f64) -> (f64, f64) {
    if min < max {
        (min, max)
    } else {
        (min - 1.0, max + 1.0)
    }
}

const W: f64 = 800.0;
const H: f64 = 400.0;
const MARGIN: f64 = 45.0;

fn svg_1d<WR: Write>(f: &IntervalFunction, xs: &[f64], mut w: WR) -> Result<()> {
    let (lo, hi) = finite_endpoints(f)?;
    let (xmin, xmax) = padded(
        xs.iter().cloned().fold(f64::INFINITY, f64::min),
        xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let (ymin, ymax) = padded(
        lo.iter().cloned().fold(f64::INFINITY, f64::min),
        hi.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    let px = |x: f64| MARGIN + (x - xmin) / (xmax - xmin) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (y - ymin) / (ymax - ymin) * (H - 2.0 * MARGIN);

    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\">"
    )?;
    writeln!(
        w,
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>",
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    )?;
    for (i, &x) in xs.iter().enumerate() {
        if lo[i] < hi[i] {
            writeln!(
                w,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbbbbb\"/>",
                px(x),
                py(lo[i]),
                px(x),
                py(hi[i])
            )?;
        }
    }
    for (vals, color) in [(&lo, "#1f6fb4"), (&hi, "#c23b22")] {
        write!(w, "<polyline fill=\"none\" stroke=\"{color}\" points=\"")?;
        for (i, &x) in xs.iter().enumerate() {
            if i > 0 {
                write!(w, " ")?;
            }
            write!(w, "{},{}", px(x), py(vals[i]))?;
        }
        writeln!(w, "\"/>")?;
    }
    writeln!(w, "</svg>")?;
    Ok(())
}

fn gray(v: f64, min: f64, max: f64) -> String {
    let t = if max > min {
        (v - min) / (max - min)
    } else {
        0.5
    };
    let b = (t.clamp(0.0, 1.0) * 255.0).round() as u8;
    format!("#{b:02x}{b:02x}{b:02x}")
}

fn svg_2d<WR: Write>(
    f: &IntervalFunction,
    s: &SampledMetricSpace,
    cs: &[[f64; 2]],
    mut w: WR,
) -> Result<()> {
    let (lo, hi) = finite_endpoints(f)?;
    let vmin = lo.iter().cloned().fold(f64::INFINITY, f64::min);
    let vmax = hi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let panel_w = (W - 3.0 * MARGIN) / 2.0;
    let panel_h = H - 2.0 * MARGIN;

    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\">"
    )?;
    for (panel, (vals, label)) in [(&lo, "lower"), (&hi, "upper")].into_iter().enumerate() {
        let ox = MARGIN + panel as f64 * (panel_w + MARGIN);
        writeln!(
            w,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"14\">{label}</text>",
            ox,
            MARGIN - 10.0
        )?;
        match s.grid_shape() {
            Some((nx, ny)) => {
                let cw = panel_w / nx as f64;
                let ch = panel_h / ny as f64;
                for iy in 0..ny {
                    for ix in 0..nx {
                        let v = vals[iy * nx + ix];
                        writeln!(
                            w,
                            "<rect x=\"{}\" y=\"{}\" width=\"{cw}\" height=\"{ch}\" fill=\"{}\"/>",
                            ox + ix as f64 * cw,
                            // Row 0 is the smallest y-coordinate; draw it at
                            // the bottom as on ordinary axes.
                            MARGIN + panel_h - (iy + 1) as f64 * ch,
                            gray(v, vmin, vmax)
                        )?;
                    }
                }
            }
            None => {
                let (xmin, xmax) = padded(
                    cs.iter().map(|c| c[0]).fold(f64::INFINITY, f64::min),
                    cs.iter().map(|c| c[0]).fold(f64::NEG_INFINITY, f64::max),
                );
                let (ymin, ymax) = padded(
                    cs.iter().map(|c| c[1]).fold(f64::INFINITY, f64::min),
                    cs.iter().map(|c| c[1]).fold(f64::NEG_INFINITY, f64::max),
                );
                for (i, &[x, y]) in cs.iter().enumerate() {
                    writeln!(
                        w,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\"/>",
                        ox + (x - xmin) / (xmax - xmin) * panel_w,
                        MARGIN + panel_h - (y - ymin) / (ymax - ymin) * panel_h,
                        gray(vals[i], vmin, vmax)
                    )?;
                }
            }
        }
        writeln!(
            w,
            "<rect x=\"{ox}\" y=\"{MARGIN}\" width=\"{panel_w}\" height=\"{panel_h}\" fill=\"none\" stroke=\"#888\"/>"
        )?;
    }
    writeln!(w, "</svg>")?;
    Ok(())
}

/// Writes the function as a standalone SVG document.
pub fn write_svg<WR: Write>(f: &IntervalFunction, w: WR) -> Result<()> {
    let s = metric_of(f, "svg export")?;
    match s.coords() {
        Coords::One(xs) => svg_1d(f, xs, w),
        Coords::Two(cs) => svg_2d(f, s, cs, w),
    }
}

/// SVG as a string.
pub fn svg_string(f: &IntervalFunction) -> Result<String> {
    let mut buf = Vec::new();
    write_svg(f, &mut buf)?;
    Ok(String::from_utf8(buf).expect("svg output is ascii"))
}
