//! Q-grid CSV format.
//!
//! Header is exactly `theta,phi,re_z,im_z,weight,Q`, one node per row, all
//! values printed with 17 significant digits so f64 round-trips bit-exactly.
//! The spin sector is recovered on read from the weight sum (which equals
//! 2s+1 by construction) and the ring layout from the run of equal thetas
//! at the top of the file.

use std::io::Write;
use std::path::Path;

use spintop_core::{PhasePoint, QGrid, SpinQuantum};

use crate::CliError;

pub const HEADER: &str = "theta,phi,re_z,im_z,weight,Q";

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_grid_to(grid: &QGrid, mut w: impl Write) -> Result<(), CliError> {
    let mut buf = String::with_capacity(grid.len() * 96 + 32);
    buf.push_str(HEADER);
    buf.push('\n');
    for i in 0..grid.len() {
        let node = grid.node(i);
        let z = node
            .z()
            .ok_or_else(|| CliError::Numeric("south-pole node has no chart label".into()))?;
        buf.push_str(&fmt(node.theta()));
        buf.push(',');
        buf.push_str(&fmt(node.phi()));
        buf.push(',');
        buf.push_str(&fmt(z.re));
        buf.push(',');
        buf.push_str(&fmt(z.im));
        buf.push(',');
        buf.push_str(&fmt(grid.weight(i)));
        buf.push(',');
        buf.push_str(&fmt(grid.value(i)));
        buf.push('\n');
    }
    w.write_all(buf.as_bytes())
        .map_err(|e| CliError::io("writing grid csv", e))
}

pub fn write_grid(grid: &QGrid, path: &Path) -> Result<(), CliError> {
    let f = std::fs::File::create(path)
        .map_err(|e| CliError::io(&format!("creating {}", path.display()), e))?;
    write_grid_to(grid, std::io::BufWriter::new(f))
}

pub fn read_grid(path: &Path) -> Result<QGrid, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?;
    parse_grid(&text)
}

pub fn parse_grid(text: &str) -> Result<QGrid, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == HEADER => {}
        other => {
            return Err(CliError::Numeric(format!(
                "bad csv header {:?}, expected {HEADER:?}",
                other.unwrap_or("")
            )))
        }
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(CliError::Numeric(format!(
                "row {}: expected 6 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let parse = |t: &str| -> Result<f64, CliError> {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Numeric(format!("row {}: bad float {t:?}", lineno + 2)))
        };
        let theta = parse(fields[0])?;
        let phi = parse(fields[1])?;
        let weight = parse(fields[4])?;
        let value = parse(fields[5])?;
        if !theta.is_finite() || !phi.is_finite() || !weight.is_finite() || !value.is_finite() {
            return Err(CliError::Numeric(format!(
                "row {}: non-finite entry",
                lineno + 2
            )));
        }
        nodes.push(PhasePoint::new(theta, phi));
        weights.push(weight);
        values.push(value);
    }
    if nodes.is_empty() {
        return Err(CliError::Numeric("csv holds no nodes".into()));
    }

    // ring layout: the first ring is the leading run of equal thetas
    let theta0 = nodes[0].theta();
    let n_phi = nodes.iter().take_while(|p| p.theta() == theta0).count();
    if n_phi == 0 || nodes.len() % n_phi != 0 {
        return Err(CliError::Numeric(
            "csv rows do not form full theta rings".into(),
        ));
    }
    let n_theta = nodes.len() / n_phi;

    // spin sector from the weight sum 2s+1
    let wsum: f64 = weights.iter().sum();
    let twice_s = (wsum - 1.0).round();
    if twice_s < 1.0 || (wsum - 1.0 - twice_s).abs() > 1e-6 {
        return Err(CliError::Numeric(format!(
            "weight sum {wsum} does not match any 2s+1 normalization"
        )));
    }
    let s = SpinQuantum::new(twice_s as u32).map_err(CliError::from)?;

    QGrid::from_parts(s, n_theta, n_phi, nodes, weights, values).map_err(CliError::from)
}
