use std::collections::VecDeque;

use serde::Serialize;

use super::frame::{min_gap, pipeline_depth, FramePattern};
use super::scramble::{nonary_add, KeyStream, ScrambleConfig};
use super::trellis::{fade_pair, PageSelector, ShiftSelector};
use super::word::{TxWord, WordKind};
use super::{CodecError, ECHO_WORDS, EVENT_CYCLE, ROUND_WORDS};

/// Streaming phase of the word currently on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    Ipg,
    UsdHead,
    EscHead,
    Payload,
    EscTail,
    UsdTail,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EncoderStats {
    /// Wire indices of events that were noted.
    pub accepted: Vec<u64>,
    /// Events that arrived during an echo or the silent tail after it.
    pub dropped: u64,
    /// Every round codeword sent, for auditing.
    pub round_codewords: Vec<u64>,
}

#[derive(Debug, Clone)]
struct EchoTx {
    start: u64,
    deferred: u8,
    digits: [u8; 6],
}

/// Streaming encoder. Each call takes the input slot of the current word
/// time (an octet or an idle mark) plus the event line, and returns the
/// wire word of the same time, which shows the slot pushed `depth` calls ago.
pub struct Encoder<S: PageSelector = ShiftSelector> {
    sel: S,
    pattern: FramePattern,
    depth: u64,
    gap: u64,
    t: u64,
    slots: VecDeque<Option<u8>>,
    keys: KeyStream,
    key_buf: VecDeque<(u8, u8)>,
    last_in: Option<u64>,
    last_out: Option<i64>,
    state: u8,
    fade: [u8; 2],
    phase: Phase,
    echo: Option<EchoTx>,
    next_event: u64,
    stats: EncoderStats,
}

enum Role {
    Data,
    Idle,
    Usd(bool),
    EscHead { idx: u64 },
    EscTail { idx: u64 },
}

impl Encoder<ShiftSelector> {
    pub fn new(pattern: FramePattern, scramble: &ScrambleConfig) -> Result<Self, CodecError> {
        Self::with_selector(ShiftSelector, pattern, scramble)
    }
}

impl<S: PageSelector> Encoder<S> {
    pub fn with_selector(sel: S, pattern: FramePattern, scramble: &ScrambleConfig) -> Result<Self, CodecError> {
        let depth = pipeline_depth(pattern);
        Ok(Encoder {
            sel,
            pattern,
            depth,
            gap: min_gap(pattern),
            t: 0,
            slots: std::iter::repeat(None).take(depth as usize).collect(),
            keys: KeyStream::new(scramble)?,
            key_buf: VecDeque::new(),
            last_in: None,
            last_out: None,
            state: 0,
            fade: [0, 0],
            phase: Phase::Ipg,
            echo: None,
            next_event: 0,
            stats: EncoderStats::default(),
        })
    }

    pub fn latency(&self) -> u64 {
        self.depth
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn stats(&self) -> &EncoderStats {
        &self.stats
    }

    pub fn into_stats(self) -> EncoderStats {
        self.stats
    }

    pub fn echo_active(&self) -> bool {
        self.echo.is_some()
    }

    /// Binary mask and nonary key of wire time `w` (`w >= self.t`).
    fn key(&mut self, w: u64) -> (u8, u8) {
        let off = (w - self.t) as usize;
        while self.key_buf.len() <= off {
            let k = self.keys.next();
            self.key_buf.push_back(k);
        }
        self.key_buf[off]
    }

    /// Scrambled 3-bit root of the word on the wire at `w`.
    fn root_bits(&mut self, w: u64) -> u8 {
        let octet = self.slots[(w - self.t) as usize].unwrap_or(0);
        ((octet ^ self.key(w).0) >> 3) & 7
    }

    fn role(&self) -> Role {
        let j = self.t as i64 - self.depth as i64;
        if self.slots[0].is_some() {
            return Role::Data;
        }
        let a = self.last_out.map(|l| (j - l) as u64);
        let b = self.slots.iter().position(|s| s.is_some()).map(|p| p as u64);
        let (he, te) = (self.pattern.head_esc(), self.pattern.tail_esc());
        match (a, b) {
            (Some(a), _) if a <= te => Role::EscTail { idx: a - 1 },
            (Some(a), _) if a <= te + 2 => Role::Usd(false),
            (_, Some(b)) if b <= he => Role::EscHead { idx: he - b },
            (_, Some(b)) if b <= he + 2 => Role::Usd(true),
            _ => Role::Idle,
        }
    }

    pub fn push(&mut self, slot: Option<u8>, event: bool) -> Result<TxWord, CodecError> {
        let t = self.t;
        if slot.is_some() {
            if let Some(l) = self.last_in {
                let g = t - l - 1;
                if g > 0 && g < self.gap {
                    return Err(CodecError::Gap { at: t, got: g, min: self.gap });
                }
            }
            self.last_in = Some(t);
        }
        self.slots.push_back(slot);

        let (mask, nkey) = self.key(t);
        let content = self.slots[0].unwrap_or(0) ^ mask;
        let mut root = (content >> 3) & 7;
        let role = self.role();
        let (kind, tcm) = match role {
            Role::Data => {
                self.phase = Phase::Payload;
                (WordKind::Data, content >> 6)
            }
            Role::Idle => {
                self.phase = Phase::Ipg;
                (WordKind::Idle, 0)
            }
            Role::Usd(head) => {
                self.phase = if head { Phase::UsdHead } else { Phase::UsdTail };
                (WordKind::Usd, 0)
            }
            Role::EscHead { idx } => {
                self.phase = Phase::EscHead;
                if idx == 0 {
                    let first = t + self.pattern.head_esc();
                    let o = self.slots[self.pattern.head_esc() as usize].unwrap_or(0);
                    let target = (o ^ self.key(first).0) >> 5;
                    self.fade = fade_pair(&self.sel, self.state, target).ok_or(CodecError::FadePhase)?;
                }
                (WordKind::Esc, if idx < 2 { self.fade[idx as usize] } else { 0 })
            }
            Role::EscTail { idx } => {
                self.phase = Phase::EscTail;
                let k = 2 * self.pattern.tail as u64;
                if idx == k {
                    self.fade = fade_pair(&self.sel, self.state, 0).ok_or(CodecError::FadePhase)?;
                }
                (WordKind::Esc, if idx >= k { self.fade[(idx - k) as usize] } else { 0 })
            }
        };
        let mut kind = kind;

        if let Some(e) = &self.echo {
            if t > e.start + ECHO_WORDS {
                self.echo = None;
            }
        }
        if event {
            if self.echo.is_some() || t < self.next_event {
                self.stats.dropped += 1;
            } else {
                self.next_event = t + EVENT_CYCLE;
                self.stats.accepted.push(t);
                if kind == WordKind::Data {
                    self.echo = Some(EchoTx { start: t, deferred: root, digits: [0; 6] });
                }
                kind = kind.noted();
                root = 8;
            }
        }

        if let Some(e) = self.echo.clone() {
            if t > e.start {
                let pos = t - e.start - 1;
                let (round, j) = (pos / ROUND_WORDS, pos % ROUND_WORDS);
                if j == 0 {
                    let bit = (e.deferred >> (2 - round)) & 1;
                    let mut u = bit as u64;
                    for w in t..t + ROUND_WORDS {
                        u = u * 8 + self.root_bits(w) as u64;
                    }
                    self.stats.round_codewords.push(u);
                    let mut digits = [0u8; 6];
                    let mut v = u;
                    for d in digits.iter_mut().rev() {
                        *d = (v % 9) as u8;
                        v /= 9;
                    }
                    self.echo.as_mut().unwrap().digits = digits;
                }
                root = self.echo.as_ref().unwrap().digits[j as usize];
            }
        }

        let page = self.sel.step(self.state, tcm);
        self.state = page;
        let word = TxWord { kind, page, root: nonary_add(root, nkey), postfix: content & 7 };

        if self.slots[0].is_some() {
            self.last_out = Some(t as i64 - self.depth as i64);
        }
        self.slots.pop_front();
        self.key_buf.pop_front();
        self.t += 1;
        Ok(word)
    }

    /// Idle slots needed to push the last payload, its glue and any echo out.
    pub fn flush_len(&self) -> u64 {
        self.depth + self.pattern.tail_esc() + 2 + ECHO_WORDS + 2
    }
}

/// Encode a whole input stream. `events` are wire word indices.
/// The output is followed by enough idle words to close every frame and echo.
pub fn encode_stream(
    slots: &[Option<u8>],
    events: &[u64],
    pattern: FramePattern,
    scramble: &ScrambleConfig,
) -> Result<(Vec<TxWord>, EncoderStats), CodecError> {
    let mut enc = Encoder::new(pattern, scramble)?;
    let total = slots.len() as u64 + enc.flush_len();
    let mut ev = events.to_vec();
    ev.sort_unstable();
    let mut ev = ev.into_iter().peekable();
    let mut out = Vec::with_capacity(total as usize);
    for t in 0..total {
        let mut hit = false;
        while ev.peek().is_some_and(|e| *e <= t) {
            hit |= ev.next() == Some(t);
        }
        let slot = slots.get(t as usize).copied().flatten();
        out.push(enc.push(slot, hit)?);
    }
    Ok((out, enc.into_stats()))
}
