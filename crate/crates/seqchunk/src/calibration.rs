//! Per-target parameter calibrations.
//!
//! Boundary-condition parameters (hash mask widths, extremum windows, and the
//! sequence chunker's skip settings) are calibrated by simulation on seeded
//! uniform-random data so that each algorithm's mean chunk size lands near the
//! configured target. The constants below are the recorded results of those
//! runs; re-derive them with the workbench `tune` subcommand when the chunking
//! semantics change.

/// Bumped whenever any constant in this table changes.
pub const CALIBRATION_VERSION: u32 = 1;

/// Calibrated parameters for one target average chunk size.
#[derive(Debug, Clone, Copy)]
pub struct TargetCalibration {
    pub target_avg: usize,
    /// Default minimum chunk size (half the target, except 1 KB at 4 KB).
    pub min_size: usize,
    /// Default maximum chunk size (twice the target).
    pub max_size: usize,
    /// Sequence chunker: (seq_length, skip_trigger, skip_size).
    pub seq: (usize, u32, usize),
    /// Rabin: boundary fires when this many low hash bits are zero.
    pub rabin_mask_bits: u32,
    /// Gear: boundary fires when this many high hash bits are zero.
    pub gear_mask_bits: u32,
    /// FastCDC: base mask width; normalization adds/removes 2 bits per side.
    pub fastcdc_mask_bits: u32,
    /// Asymmetric-extremum window size in bytes.
    pub ae_window: usize,
    /// Rapid-asymmetric-maximum fixed window size in bytes.
    ///
    /// On uniform-random data any window this large contains a 0xff byte, so
    /// the algorithm degenerates to max-forced boundaries; the window only
    /// differentiates behaviour on structured data.
    pub ram_window: usize,
}

pub const CALIBRATIONS: &[TargetCalibration] = &[
    TargetCalibration {
        target_avg: 4 * 1024,
        min_size: 1024,
        max_size: 8 * 1024,
        seq: (5, 5, 256),
        rabin_mask_bits: 12,
        gear_mask_bits: 12,
        fastcdc_mask_bits: 11,
        ae_window: 2384,
        ram_window: 2048,
    },
    TargetCalibration {
        target_avg: 8 * 1024,
        min_size: 4 * 1024,
        max_size: 16 * 1024,
        seq: (5, 8, 512),
        rabin_mask_bits: 13,
        gear_mask_bits: 13,
        fastcdc_mask_bits: 12,
        ae_window: 4768,
        ram_window: 4096,
    },
    TargetCalibration {
        target_avg: 16 * 1024,
        min_size: 8 * 1024,
        max_size: 32 * 1024,
        seq: (5, 4, 512),
        rabin_mask_bits: 14,
        gear_mask_bits: 14,
        fastcdc_mask_bits: 13,
        ae_window: 9537,
        ram_window: 8192,
    },
];

/// The calibration row whose target is closest to `target_avg`.
pub fn nearest(target_avg: usize) -> &'static TargetCalibration {
    CALIBRATIONS
        .iter()
        .min_by_key(|c| c.target_avg.abs_diff(target_avg))
        .expect("calibration table is non-empty")
}

/// Exact calibration row for `target_avg`, if one was recorded.
pub fn exact(target_avg: usize) -> Option<&'static TargetCalibration> {
    CALIBRATIONS.iter().find(|c| c.target_avg == target_avg)
}
