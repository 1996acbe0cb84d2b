//! Artifact writers: CSV, plain-text PGM, and gnuplot scripts.
//!
//! Every file is written atomically (temp file in the target directory, then
//! rename) and deterministically: floats are printed with Rust's shortest
//! round-trip formatting, which parses back bit-identically and never
//! depends on the locale. Node labels in artifacts are 1-based.

use std::fs;
use std::io;
use std::path::Path;

use ctwalk::{LimitingDistribution64, ProbabilityCarpet64, RevivalReport64};

/// Gray mapping for PGM carpets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmScale {
    /// pixel = round(255·(1 − p/p_max)): high probability is dark.
    Linear,
    /// log10(p) clipped to [−6, 0], mapped onto [255, 0].
    Log,
}

/// What an artifact holds, for picking the right plot recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactKind {
    Carpet,
    Series,
    Limdist,
    Revival,
}

/// Shortest round-trip decimal form of an `f64`.
fn fmt(value: f64) -> String {
    format!("{value}")
}

/// Writes `contents` to a temp file beside `path`, then renames into place.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let with_context = |e: io::Error| io::Error::new(e.kind(), format!("{}: {e}", path.display()));
    let file_name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?
        .to_os_string();
    let mut tmp_name = file_name;
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents).map_err(with_context)?;
    fs::rename(&tmp, path).map_err(with_context)
}

/// Carpet CSV: header `t,node,probability`, rows time-major with nodes
/// ascending (1-based labels).
pub fn write_carpet_csv(carpet: &ProbabilityCarpet64, path: &Path) -> io::Result<()> {
    let mut out = String::from("t,node,probability\n");
    for i in 0..carpet.n_samples() {
        let t = carpet.times().time(i);
        for node in 0..carpet.n_nodes() {
            out.push_str(&fmt(t));
            out.push(',');
            out.push_str(&(node + 1).to_string());
            out.push(',');
            out.push_str(&fmt(carpet.get(i, node)));
            out.push('\n');
        }
    }
    write_atomic(path, &out)
}

/// Series CSV: header `t,probability`.
pub fn write_series_csv(points: &[(f64, f64)], path: &Path) -> io::Result<()> {
    let mut out = String::from("t,probability\n");
    for &(t, p) in points {
        out.push_str(&fmt(t));
        out.push(',');
        out.push_str(&fmt(p));
        out.push('\n');
    }
    write_atomic(path, &out)
}

/// Limiting-distribution CSV: header `node,probability`, 1-based nodes.
pub fn write_limdist_csv(dist: &LimitingDistribution64, path: &Path) -> io::Result<()> {
    let mut out = String::from("node,probability\n");
    for (node, value) in dist.values().iter().enumerate() {
        out.push_str(&(node + 1).to_string());
        out.push(',');
        out.push_str(&fmt(*value));
        out.push('\n');
    }
    write_atomic(path, &out)
}

/// Revival CSV: header `mode,revival_time`, modes 1..N−1.
pub fn write_revival_csv(report: &RevivalReport64, path: &Path) -> io::Result<()> {
    let mut out = String::from("mode,revival_time\n");
    for (index, tau) in report.mode_times.iter().enumerate() {
        out.push_str(&(index + 1).to_string());
        out.push(',');
        out.push_str(&fmt(*tau));
        out.push('\n');
    }
    write_atomic(path, &out)
}

fn pgm_pixel_linear(p: f64, p_max: f64) -> u8 {
    let ratio = if p_max > 0.0 { p / p_max } else { 0.0 };
    (255.0 * (1.0 - ratio)).round().clamp(0.0, 255.0) as u8
}

fn pgm_pixel_log(p: f64) -> u8 {
    let log = if p > 0.0 { p.log10() } else { -6.0 };
    let clipped = log.clamp(-6.0, 0.0);
    (255.0 * (clipped / -6.0)).round().clamp(0.0, 255.0) as u8
}

/// Plain-text PGM (`P2`): width = nodes, height = time samples, maxval 255.
/// Dark pixels mark high probability, matching the printed carpets.
pub fn write_carpet_pgm(
    carpet: &ProbabilityCarpet64,
    path: &Path,
    scale: PgmScale,
) -> io::Result<()> {
    let width = carpet.n_nodes();
    let height = carpet.n_samples();
    let p_max = carpet.max_value();
    let mut out = format!("P2\n{width} {height}\n255\n");
    for i in 0..height {
        let row = carpet.row(i);
        let mut line = String::with_capacity(width * 4);
        for (node, &p) in row.iter().enumerate() {
            if node > 0 {
                line.push(' ');
            }
            let pixel = match scale {
                PgmScale::Linear => pgm_pixel_linear(p, p_max),
                PgmScale::Log => pgm_pixel_log(p),
            };
            line.push_str(&pixel.to_string());
        }
        out.push_str(&line);
        out.push('\n');
    }
    write_atomic(path, &out)
}

/// Gnuplot script rendering a CSV artifact: line plots for series, a heat
/// map with time on the vertical axis for carpets, markers for limiting
/// distributions. The script refers to the artifact by its bare file name,
/// so it must stay next to it.
pub fn write_plot_script(kind: ArtifactKind, artifact: &Path, path: &Path) -> io::Result<()> {
    let data = artifact
        .file_name()
        .ok_or_else(|| {
            io::Error::new(
                io::ErrorKind::InvalidInput,
                "artifact path has no file name",
            )
        })?
        .to_string_lossy()
        .into_owned();
    let body = match kind {
        ArtifactKind::Series => format!(
            "set datafile separator \",\"\n\
             set xlabel \"t (units of 1/gamma)\"\n\
             set ylabel \"probability\"\n\
             plot \"{data}\" skip 1 using 1:2 with lines title \"{data}\"\n"
        ),
        ArtifactKind::Carpet => format!(
            "set datafile separator \",\"\n\
             set xlabel \"node\"\n\
             set ylabel \"t (units of 1/gamma)\"\n\
             set cblabel \"probability\"\n\
             plot \"{data}\" skip 1 using 2:1:3 with image notitle\n"
        ),
        ArtifactKind::Limdist => format!(
            "set datafile separator \",\"\n\
             set xlabel \"node\"\n\
             set ylabel \"limiting probability\"\n\
             plot \"{data}\" skip 1 using 1:2 with points pointtype 7 title \"{data}\"\n"
        ),
        ArtifactKind::Revival => format!(
            "set datafile separator \",\"\n\
             set xlabel \"mode\"\n\
             set ylabel \"revival time (units of 1/gamma)\"\n\
             set logscale y\n\
             plot \"{data}\" skip 1 using 1:2 with linespoints title \"{data}\"\n"
        ),
    };
    write_atomic(path, &body)
}
