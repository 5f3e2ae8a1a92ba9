//! Binary portable graymap rendering of a Q-grid: phi runs horizontally,
//! theta vertically (north pole on top), with a linear gray scale over
//! [0, max Q].

use std::io::Write;
use std::path::Path;

use spintop_core::QGrid;

use crate::CliError;

pub fn write_pgm(grid: &QGrid, path: &Path) -> Result<(), CliError> {
    let (w, h) = (grid.n_phi(), grid.n_theta());
    let max = grid.max_value();
    let mut out = Vec::with_capacity(w * h + 32);
    out.extend_from_slice(format!("P5\n{w} {h}\n255\n").as_bytes());
    for ring in 0..h {
        for v in grid.ring_values(ring) {
            let g = if max > 0.0 {
                ((v / max) * 255.0).round().clamp(0.0, 255.0) as u8
            } else {
                0
            };
            out.push(g);
        }
    }
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::io(&format!("creating {}", path.display()), e))?;
    f.write_all(&out)
        .map_err(|e| CliError::io("writing pgm", e))
}
