//! Word-stream codec carrying an octet stream and a single-event channel.
//!
//! Each wire word is a `TxWord` (kind, page, nonary root, postfix). An octet is
//! split into 2 page-selecting bits, 3 root bits and 3 postfix bits. An event
//! marks a word with root 8; on a Data word the displaced 3 root bits travel
//! afterwards as an echo spread over three 6-word rounds.

mod decoder;
mod encoder;
mod frame;
mod scramble;
mod train;
mod trellis;
mod word;
pub mod wordfile;

pub use decoder::{DecodeOutput, Decoder};
pub use encoder::{encode_stream, Encoder, EncoderStats, Phase};
pub use frame::{frame_stream, head_budget, min_gap, pipeline_depth, FrameKind, FramePattern, FrameSlot};
pub use scramble::{ternary_descramble, ternary_scramble, Lfsr33, ScrambleConfig, TernaryGen};
pub use train::{event_train_decode, event_train_encode, quantize_event, TrainDecode};
pub use trellis::{fade_pair, page_fade, PageSelector, ShiftSelector};
pub use word::{EventRecord, TxWord, WordKind};

use thiserror::Error;

/// Words in one echo round.
pub const ROUND_WORDS: u64 = 6;
/// Echo rounds after a noted Data word.
pub const ROUNDS: u64 = 3;
/// Echo length in words.
pub const ECHO_WORDS: u64 = ROUND_WORDS * ROUNDS;
/// Minimum distance between accepted events (event + echo + one silent word).
pub const EVENT_CYCLE: u64 = ECHO_WORDS + 2;
/// Decoder delay for clear octets.
pub const DECODE_DELAY: u64 = 7;
/// Round codewords must stay below `2 * 8^6`.
pub const ROUND_LIMIT: u64 = 2 * 8u64.pow(6);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("stretch {0} not supported (allowed 0, 1, 2)")]
    Stretch(u8),
    #[error("inter-payload gap of {got} words at input slot {at} is below the minimum {min}")]
    Gap { at: u64, got: u64, min: u64 },
    #[error("invalid echo codeword {u} in round ending at word {at}")]
    InvalidEcho { at: u64, u: u64 },
    #[error("framing violation at word {at}: {kind} during {phase}")]
    Framing { at: u64, kind: String, phase: String },
    #[error("illegal page {page} after trellis state {state} at word {at}")]
    Page { at: u64, state: u8, page: u8 },
    #[error("descrambler desync at word {at}")]
    Desync { at: u64 },
    #[error("noted word at {at} does not carry root 8")]
    Noted { at: u64 },
    #[error("field out of range at word {at}")]
    Field { at: u64 },
    #[error("page fade requested outside an ESC phase")]
    FadePhase,
    #[error("stream ended inside an echo started at word {0}")]
    Truncated(u64),
    #[error("scrambler seed must be non-zero")]
    Seed,
    #[error("partial event train")]
    PartialTrain,
    #[error("event cycle spacing {0} is below {min}", min = EVENT_CYCLE)]
    TrainSpacing(u64),
    #[error("word file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
