//! Boundary events, chunk records, and the min/max limit enforcement shared
//! by every chunking algorithm.

use serde::{Deserialize, Serialize};

/// Why a chunk ended at a given position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryKind {
    /// A content-defined boundary (qualifying byte sequence or hash match).
    Sequence,
    /// Forced because the chunk reached the maximum chunk size.
    MaxForced,
    /// The stream ran out before any other condition was met.
    EndOfStream,
}

/// One chunk boundary. `position` is the exclusive end of the chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryEvent {
    pub kind: BoundaryKind,
    pub position: usize,
}

impl BoundaryEvent {
    pub fn new(kind: BoundaryKind, position: usize) -> Self {
        BoundaryEvent { kind, position }
    }
}

/// (offset, length, fingerprint) for one produced chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkRecord {
    pub offset: u64,
    pub length: u64,
    pub fingerprint: [u8; 32],
}

/// Walks a boundary list back into per-chunk `(offset, length)` pairs.
pub fn chunk_spans(events: &[BoundaryEvent]) -> Vec<(usize, usize)> {
    let mut spans = Vec::with_capacity(events.len());
    let mut prev = 0;
    for ev in events {
        spans.push((prev, ev.position - prev));
        prev = ev.position;
    }
    spans
}

/// A violation of the partition/bounds contract, found by [`verify_events`].
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum InvariantViolation {
    #[error("boundary positions not strictly increasing at event {index} (position {position})")]
    NotIncreasing { index: usize, position: usize },
    #[error("last boundary at {last} does not cover input of length {len}")]
    Uncovered { last: usize, len: usize },
    #[error("chunk {index} has length {length}, above max {max}")]
    AboveMax { index: usize, length: usize, max: usize },
    #[error("non-final chunk {index} has length {length}, below min {min}")]
    BelowMin { index: usize, length: usize, min: usize },
    #[error("no boundary events produced for non-empty input")]
    Empty,
}

/// Checks that `events` tile `[0, len]` and that every gap respects
/// `[min, max]`, the final gap being allowed to fall short of `min`.
pub fn verify_events(
    events: &[BoundaryEvent],
    len: usize,
    min: usize,
    max: usize,
) -> Result<(), InvariantViolation> {
    if events.is_empty() {
        return Err(InvariantViolation::Empty);
    }
    let mut prev = 0;
    for (index, ev) in events.iter().enumerate() {
        if ev.position <= prev {
            return Err(InvariantViolation::NotIncreasing {
                index,
                position: ev.position,
            });
        }
        let length = ev.position - prev;
        if length > max {
            return Err(InvariantViolation::AboveMax { index, length, max });
        }
        let is_final = index == events.len() - 1;
        if !is_final && length < min {
            return Err(InvariantViolation::BelowMin { index, length, min });
        }
        prev = ev.position;
    }
    if prev != len {
        return Err(InvariantViolation::Uncovered { last: prev, len });
    }
    Ok(())
}

/// Turns a stream of raw candidate boundaries into a valid boundary list:
/// candidates closer than `min` to the previous boundary are dropped, and a
/// `MaxForced` event is inserted wherever a gap would exceed `max`.
///
/// Candidates must be ascending. A final event at `len` is always emitted;
/// it is `MaxForced` when the last gap is exactly `max`, `EndOfStream`
/// otherwise featuring the short final chunk.
pub fn enforce_limits<I>(candidates: I, min: usize, max: usize, len: usize) -> Vec<BoundaryEvent>
where
    I: IntoIterator<Item = usize>,
{
    debug_assert!(min >= 1 && min <= max && len > 0);
    let mut events = Vec::new();
    let mut prev = 0;
    for cand in candidates {
        debug_assert!(cand >= prev || cand < min, "candidates must be ascending");
        if cand <= prev || cand > len {
            continue;
        }
        while cand - prev > max {
            prev += max;
            events.push(BoundaryEvent::new(BoundaryKind::MaxForced, prev));
        }
        if cand - prev >= min {
            events.push(BoundaryEvent::new(BoundaryKind::Sequence, cand));
            prev = cand;
        }
    }
    while len - prev > max {
        prev += max;
        events.push(BoundaryEvent::new(BoundaryKind::MaxForced, prev));
    }
    if len > prev {
        let kind = if len - prev == max {
            BoundaryKind::MaxForced
        } else {
            BoundaryKind::EndOfStream
        };
        events.push(BoundaryEvent::new(kind, len));
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_candidate_and_short_tail() {
        let events = enforce_limits([100], 50, 200, 120);
        assert_eq!(
            events,
            vec![
                BoundaryEvent::new(BoundaryKind::Sequence, 100),
                BoundaryEvent::new(BoundaryKind::EndOfStream, 120),
            ]
        );
    }

    #[test]
    fn no_candidates_forces_max_cadence() {
        let events = enforce_limits([], 50, 200, 500);
        assert_eq!(
            events,
            vec![
                BoundaryEvent::new(BoundaryKind::MaxForced, 200),
                BoundaryEvent::new(BoundaryKind::MaxForced, 400),
                BoundaryEvent::new(BoundaryKind::EndOfStream, 500),
            ]
        );
    }

    #[test]
    fn suppresses_sub_minimum_and_forces_overlong() {
        // Hand trace: 30 is below min from 0 and is dropped; nothing else
        // fires before 200 so a forced boundary lands there; 260 is 60 past
        // it and is kept; the 40-byte tail ends the stream.
        let events = enforce_limits([30, 260], 50, 200, 300);
        assert_eq!(
            events,
            vec![
                BoundaryEvent::new(BoundaryKind::MaxForced, 200),
                BoundaryEvent::new(BoundaryKind::Sequence, 260),
                BoundaryEvent::new(BoundaryKind::EndOfStream, 300),
            ]
        );
    }

    #[test]
    fn exact_max_tail_is_max_forced() {
        let events = enforce_limits([], 50, 200, 400);
        assert_eq!(
            events,
            vec![
                BoundaryEvent::new(BoundaryKind::MaxForced, 200),
                BoundaryEvent::new(BoundaryKind::MaxForced, 400),
            ]
        );
        verify_events(&events, 400, 50, 200).unwrap();
    }

    #[test]
    fn verify_rejects_bad_partitions() {
        let ok = enforce_limits([100], 50, 200, 300);
        verify_events(&ok, 300, 50, 200).unwrap();
        assert!(verify_events(&ok, 301, 50, 200).is_err());

        let gap_too_big = vec![BoundaryEvent::new(BoundaryKind::Sequence, 300)];
        assert!(matches!(
            verify_events(&gap_too_big, 300, 50, 200),
            Err(InvariantViolation::AboveMax { .. })
        ));

        let below_min = vec![
            BoundaryEvent::new(BoundaryKind::Sequence, 10),
            BoundaryEvent::new(BoundaryKind::EndOfStream, 300),
        ];
        assert!(matches!(
            verify_events(&below_min, 300, 50, 200),
            Err(InvariantViolation::BelowMin { .. })
        ));
    }
}
