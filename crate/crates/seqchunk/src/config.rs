//! Chunker configuration: algorithm selection, size limits, and the
//! algorithm-specific parameter records.

use serde::{Deserialize, Serialize};

use crate::calibration;

/// The chunking algorithms implemented by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Fixed,
    Rabin,
    Gear,
    FastCdc,
    Ae,
    Ram,
    Seq,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Fixed,
        Algorithm::Rabin,
        Algorithm::Gear,
        Algorithm::FastCdc,
        Algorithm::Ae,
        Algorithm::Ram,
        Algorithm::Seq,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Fixed => "fixed",
            Algorithm::Rabin => "rabin",
            Algorithm::Gear => "gear",
            Algorithm::FastCdc => "fastcdc",
            Algorithm::Ae => "ae",
            Algorithm::Ram => "ram",
            Algorithm::Seq => "seq",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" => Ok(Algorithm::Fixed),
            "rabin" => Ok(Algorithm::Rabin),
            "gear" => Ok(Algorithm::Gear),
            "fastcdc" => Ok(Algorithm::FastCdc),
            "ae" => Ok(Algorithm::Ae),
            "ram" => Ok(Algorithm::Ram),
            "seq" => Ok(Algorithm::Seq),
            other => Err(ConfigError::UnknownAlgorithm(other.to_string())),
        }
    }
}

/// Direction of the byte sequences the sequence chunker looks for. The two
/// modes are mutually exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeqMode {
    Increasing,
    Decreasing,
}

/// Parameters of the sequence chunker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqParams {
    pub mode: SeqMode,
    /// Bytes in a qualifying strictly monotone sequence (at least 2).
    pub seq_length: usize,
    /// Opposing byte pairs that trigger a scan skip (at least 1).
    pub skip_trigger: u32,
    /// Bytes skipped per trigger; 0 disables skipping entirely.
    pub skip_size: usize,
}

impl SeqParams {
    pub fn new(mode: SeqMode, seq_length: usize, skip_trigger: u32, skip_size: usize) -> Self {
        SeqParams {
            mode,
            seq_length,
            skip_trigger,
            skip_size,
        }
    }

    /// Calibrated parameters for the target closest to `target_avg`,
    /// in increasing mode.
    pub fn recommended(target_avg: usize) -> Self {
        let cal = calibration::nearest(target_avg);
        let (seq_length, skip_trigger, skip_size) = cal.seq;
        SeqParams::new(SeqMode::Increasing, seq_length, skip_trigger, skip_size)
    }

    pub fn skipping_enabled(&self) -> bool {
        self.skip_size > 0
    }
}

/// Parameters for the hash-based chunkers (Rabin, Gear, FastCDC).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HashChunkerParams {
    /// Sliding window size in bytes (Rabin only; Gear's window is implicit
    /// in its 64-bit state).
    pub window_size: usize,
    /// Number of hash bits that must be zero for a boundary.
    pub mask_bits: u32,
    /// Chunk-size normalization level; 0 disables it (plain masked-zero),
    /// level N widens the mask by N bits before the target size and narrows
    /// it by N bits after.
    pub normalization_level: u32,
}

/// Parameters for the extremum-based chunkers (AE, RAM).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremumParams {
    pub window_size: usize,
}

/// Algorithm-specific parameter record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgoParams {
    /// Fixed-size chunking needs nothing beyond the target size.
    None,
    Seq(SeqParams),
    Hash(HashChunkerParams),
    Extremum(ExtremumParams),
}

/// Rabin window used when none is specified.
pub const DEFAULT_RABIN_WINDOW: usize = 48;

/// Target/min/max chunk sizes plus the algorithm selector and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkerConfig {
    pub algorithm: Algorithm,
    pub target_avg: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub algo_params: AlgoParams,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("chunk sizes must satisfy 0 < min ({min}) <= avg ({avg}) <= max ({max})")]
    BadSizes { min: usize, avg: usize, max: usize },
    #[error("seq_length {seq_length} must be at least 2 and no larger than min_size {min_size}")]
    BadSeqLength { seq_length: usize, min_size: usize },
    #[error("skip_trigger must be at least 1")]
    BadSkipTrigger,
    #[error("window size {window} must be at least 1 and no larger than min_size {min_size}")]
    BadWindow { window: usize, min_size: usize },
    #[error("mask_bits {0} must be between 1 and 63")]
    BadMaskBits(u32),
    #[error("algorithm {algorithm:?} cannot use {params:?} parameters")]
    ParamMismatch {
        algorithm: Algorithm,
        params: &'static str,
    },
}

impl ChunkerConfig {
    /// Builds a configuration with the conventional size limits (min = half
    /// the target, or 1 KB for a 4 KB target; max = twice the target) and the
    /// calibrated default parameters for `algorithm`.
    pub fn new(algorithm: Algorithm, target_avg: usize) -> Result<Self, ConfigError> {
        let min_size = if target_avg == 4 * 1024 {
            1024
        } else {
            target_avg / 2
        };
        let max_size = target_avg * 2;
        ChunkerConfig::with_sizes(algorithm, target_avg, min_size, max_size)
    }

    /// Like [`ChunkerConfig::new`] but with explicit size limits.
    pub fn with_sizes(
        algorithm: Algorithm,
        target_avg: usize,
        min_size: usize,
        max_size: usize,
    ) -> Result<Self, ConfigError> {
        let cal = calibration::nearest(target_avg);
        let algo_params = match algorithm {
            Algorithm::Fixed => AlgoParams::None,
            Algorithm::Seq => AlgoParams::Seq(SeqParams::recommended(target_avg)),
            Algorithm::Rabin => AlgoParams::Hash(HashChunkerParams {
                window_size: DEFAULT_RABIN_WINDOW,
                mask_bits: cal.rabin_mask_bits,
                normalization_level: 0,
            }),
            Algorithm::Gear => AlgoParams::Hash(HashChunkerParams {
                window_size: 0,
                mask_bits: cal.gear_mask_bits,
                normalization_level: 0,
            }),
            Algorithm::FastCdc => AlgoParams::Hash(HashChunkerParams {
                window_size: 0,
                mask_bits: cal.fastcdc_mask_bits,
                normalization_level: 2,
            }),
            Algorithm::Ae => AlgoParams::Extremum(ExtremumParams {
                window_size: cal.ae_window,
            }),
            Algorithm::Ram => AlgoParams::Extremum(ExtremumParams {
                window_size: cal.ram_window,
            }),
        };
        let cfg = ChunkerConfig {
            algorithm,
            target_avg,
            min_size,
            max_size,
            algo_params,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Replaces the algorithm parameters, revalidating the result.
    pub fn with_params(mut self, params: AlgoParams) -> Result<Self, ConfigError> {
        self.algo_params = params;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.min_size == 0 || self.min_size > self.target_avg || self.target_avg > self.max_size
        {
            return Err(ConfigError::BadSizes {
                min: self.min_size,
                avg: self.target_avg,
                max: self.max_size,
            });
        }
        match (&self.algorithm, &self.algo_params) {
            (Algorithm::Fixed, AlgoParams::None) => Ok(()),
            (Algorithm::Seq, AlgoParams::Seq(p)) => {
                if p.seq_length < 2 || p.seq_length > self.min_size {
                    return Err(ConfigError::BadSeqLength {
                        seq_length: p.seq_length,
                        min_size: self.min_size,
                    });
                }
                if p.skip_trigger == 0 {
                    return Err(ConfigError::BadSkipTrigger);
                }
                Ok(())
            }
            (Algorithm::Rabin, AlgoParams::Hash(p)) => {
                if p.window_size == 0 || p.window_size > self.min_size {
                    return Err(ConfigError::BadWindow {
                        window: p.window_size,
                        min_size: self.min_size,
                    });
                }
                check_mask_bits(p.mask_bits)
            }
            (Algorithm::Gear | Algorithm::FastCdc, AlgoParams::Hash(p)) => {
                check_mask_bits(p.mask_bits + p.normalization_level)?;
                if p.mask_bits <= p.normalization_level {
                    return Err(ConfigError::BadMaskBits(p.mask_bits));
                }
                Ok(())
            }
            (Algorithm::Ae | Algorithm::Ram, AlgoParams::Extremum(p)) => {
                if p.window_size == 0 {
                    return Err(ConfigError::BadWindow {
                        window: p.window_size,
                        min_size: self.min_size,
                    });
                }
                Ok(())
            }
            (algorithm, params) => Err(ConfigError::ParamMismatch {
                algorithm: *algorithm,
                params: params_name(params),
            }),
        }
    }

    /// The validated sequence parameters; panics if the config is not a
    /// sequence-chunker config (guard with `validate` first).
    pub fn seq_params(&self) -> &SeqParams {
        match &self.algo_params {
            AlgoParams::Seq(p) => p,
            _ => panic!("config does not carry sequence parameters"),
        }
    }
}

fn check_mask_bits(bits: u32) -> Result<(), ConfigError> {
    if bits == 0 || bits > 63 {
        return Err(ConfigError::BadMaskBits(bits));
    }
    Ok(())
}

fn params_name(params: &AlgoParams) -> &'static str {
    match params {
        AlgoParams::None => "none",
        AlgoParams::Seq(_) => "seq",
        AlgoParams::Hash(_) => "hash",
        AlgoParams::Extremum(_) => "extremum",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sizes_follow_half_and_double_rule() {
        let cfg = ChunkerConfig::new(Algorithm::Seq, 8192).unwrap();
        assert_eq!((cfg.min_size, cfg.max_size), (4096, 16384));

        let cfg = ChunkerConfig::new(Algorithm::Seq, 16384).unwrap();
        assert_eq!((cfg.min_size, cfg.max_size), (8192, 32768));

        // 4 KB targets use a 1 KB minimum instead of 2 KB.
        let cfg = ChunkerConfig::new(Algorithm::Seq, 4096).unwrap();
        assert_eq!((cfg.min_size, cfg.max_size), (1024, 8192));
    }

    #[test]
    fn rejects_inverted_sizes() {
        assert!(matches!(
            ChunkerConfig::with_sizes(Algorithm::Fixed, 100, 200, 400),
            Err(ConfigError::BadSizes { .. })
        ));
        assert!(matches!(
            ChunkerConfig::with_sizes(Algorithm::Fixed, 100, 50, 80),
            Err(ConfigError::BadSizes { .. })
        ));
        assert!(ChunkerConfig::with_sizes(Algorithm::Fixed, 100, 100, 100).is_ok());
    }

    #[test]
    fn rejects_seq_length_larger_than_min() {
        let cfg = ChunkerConfig::with_sizes(Algorithm::Seq, 16, 8, 32)
            .unwrap()
            .with_params(AlgoParams::Seq(SeqParams::new(SeqMode::Increasing, 9, 1, 0)));
        assert!(matches!(cfg, Err(ConfigError::BadSeqLength { .. })));
    }

    #[test]
    fn rejects_mismatched_params() {
        let err = ChunkerConfig::new(Algorithm::Fixed, 8192)
            .unwrap()
            .with_params(AlgoParams::Extremum(ExtremumParams { window_size: 8 }));
        assert!(matches!(err, Err(ConfigError::ParamMismatch { .. })));
    }
}
