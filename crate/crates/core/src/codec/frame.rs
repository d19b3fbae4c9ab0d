use serde::Serialize;

use super::CodecError;

/// Framing role of a word slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FrameKind {
    Idle,
    Usd,
    Esc,
    Data,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrameSlot {
    pub kind: FrameKind,
    pub octet: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FramePattern {
    pub head: u8,
    pub tail: u8,
}

impl FramePattern {
    pub fn new(head: u8, tail: u8) -> Result<Self, CodecError> {
        for s in [head, tail] {
            if s > 2 {
                return Err(CodecError::Stretch(s));
            }
        }
        Ok(FramePattern { head, tail })
    }

    pub fn head_esc(&self) -> u64 {
        2 + 2 * self.head as u64
    }

    pub fn tail_esc(&self) -> u64 {
        2 + 2 * self.tail as u64
    }
}

/// Extra bits the head ESC run can carry.
pub fn head_budget(head: u8) -> Result<u32, CodecError> {
    FramePattern::new(head, 0)?;
    Ok(16 + [0, 10, 26][head as usize])
}

/// Shortest legal run of non-data slots between two payloads.
pub fn min_gap(p: FramePattern) -> u64 {
    (p.head_esc() + p.tail_esc() + 4).max(12)
}

/// Encoder delay in words: the head glue must be visible before it is sent.
pub fn pipeline_depth(p: FramePattern) -> u64 {
    (4 + 2 * p.head as u64).max(6)
}

/// Glue, payload and trailing idle fill for one payload.
pub fn frame_stream(payload: &[u8], head: u8, tail: u8) -> Result<Vec<FrameSlot>, CodecError> {
    let p = FramePattern::new(head, tail)?;
    let ctl = |kind, n: u64| (0..n).map(move |_| FrameSlot { kind, octet: None });
    let mut out: Vec<FrameSlot> = Vec::new();
    out.extend(ctl(FrameKind::Usd, 2));
    out.extend(ctl(FrameKind::Esc, p.head_esc()));
    out.extend(payload.iter().map(|o| FrameSlot { kind: FrameKind::Data, octet: Some(*o) }));
    out.extend(ctl(FrameKind::Esc, p.tail_esc()));
    out.extend(ctl(FrameKind::Usd, 2));
    let glue = 4 + p.head_esc() + p.tail_esc();
    out.extend(ctl(FrameKind::Idle, 12u64.saturating_sub(glue)));
    Ok(out)
}
