//! JSON report bodies emitted by the comparison, scan, bell, decay and ghz
//! commands.

use serde::Serialize;
use spintop_core::nmr::{PulseSequence, PulseTerm};
use spintop_core::propagators::KernelScanReport;
use spintop_core::qfunc::moments_from_q;
use spintop_core::QGrid;

use crate::complexfmt::format_complex;
use crate::CliError;

/// Node-by-node comparison of two Q grids sharing a layout.
#[derive(Debug, Serialize)]
pub struct ComparisonReport {
    /// integral d mu |Q_a - Q_b|
    pub l1: f64,
    /// max_i |Q_a - Q_b|
    pub sup: f64,
    pub moment_gaps: MomentGaps,
    /// Times attached by the caller when known (empty for bare file pairs).
    pub times: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct MomentGaps {
    pub sz: f64,
    pub sminus: f64,
    pub sz2: f64,
    pub sminus2: f64,
}

pub fn compare_grids(a: &QGrid, b: &QGrid, times: Vec<f64>) -> Result<ComparisonReport, CliError> {
    let l1 = a.l1_distance(b)?;
    let sup = a.sup_distance(b)?;
    let ma = moments_from_q(a);
    let mb = moments_from_q(b);
    Ok(ComparisonReport {
        l1,
        sup,
        moment_gaps: MomentGaps {
            sz: (ma.sz - mb.sz).abs(),
            sminus: (ma.sminus - mb.sminus).norm(),
            sz2: (ma.sz2 - mb.sz2).abs(),
            sminus2: (ma.sminus2 - mb.sminus2).norm(),
        },
        times,
    })
}

#[derive(Debug, Serialize)]
pub struct ScanParams {
    pub s: f64,
    pub omega: f64,
    #[serde(rename = "J")]
    pub j: f64,
}

#[derive(Debug, Serialize)]
pub struct ScanWitnessJson {
    pub z: String,
    pub z1: String,
    pub z2: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct ScanReportJson {
    pub params: ScanParams,
    pub t: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub min_real: f64,
    pub max_abs_imag: f64,
    pub witnesses: Vec<ScanWitnessJson>,
}

pub fn scan_report_json(params: ScanParams, t: f64, report: &KernelScanReport) -> ScanReportJson {
    ScanReportJson {
        params,
        t,
        n_samples: report.n_samples,
        seed: report.seed,
        min_real: report.min_real,
        max_abs_imag: report.max_abs_imag,
        witnesses: report
            .witnesses
            .iter()
            .map(|w| ScanWitnessJson {
                z: format_complex(w.z.z().expect("scan samples avoid the pole")),
                z1: format_complex(w.z1.z().expect("scan samples avoid the pole")),
                z2: format_complex(w.z2.z().expect("scan samples avoid the pole")),
                value: format_complex(w.value),
            })
            .collect(),
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind")]
pub enum PulseTermJson {
    #[serde(rename = "rot")]
    Rotation {
        axis: [f64; 3],
        angle: f64,
        target: usize,
    },
    #[serde(rename = "coupling")]
    Coupling { pair: (usize, usize), angle: f64 },
}

pub fn pulse_sequence_json(seq: &PulseSequence) -> Vec<PulseTermJson> {
    seq.terms
        .iter()
        .map(|t| match t {
            PulseTerm::Rotation {
                axis,
                angle,
                target,
            } => PulseTermJson::Rotation {
                axis: *axis,
                angle: *angle,
                target: *target,
            },
            PulseTerm::Coupling { angle, pair } => PulseTermJson::Coupling {
                pair: *pair,
                angle: *angle,
            },
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct BellReport {
    /// Squared overlap of the pulse-program output with (|dd>+|uu>)/sqrt 2.
    pub fidelity: f64,
    pub entangled: bool,
    pub state: Vec<String>,
    pub pulse_sequence: Vec<PulseTermJson>,
    pub pseudo_pure_epsilon: f64,
    pub pseudo_pure_entangled: bool,
}

#[derive(Debug, Serialize)]
pub struct DecayReport {
    pub n: u32,
    pub g: f64,
    pub value: f64,
}

#[derive(Debug, Serialize)]
pub struct GhzReport {
    pub n: usize,
    pub nonzero_indices: Vec<usize>,
    pub amplitudes: Vec<String>,
    pub norm: f64,
}
