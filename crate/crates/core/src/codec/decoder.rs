use std::collections::VecDeque;

use super::scramble::{nonary_sub, KeyStream, ScrambleConfig};
use super::trellis::{PageSelector, ShiftSelector};
use super::word::{EventRecord, TxWord, WordKind};
use super::{CodecError, DECODE_DELAY, ECHO_WORDS, ROUND_LIMIT, ROUND_WORDS};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecodeOutput {
    pub octets: Vec<u8>,
    pub events: Vec<EventRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rx {
    Ipg,
    UsdHead(u8),
    EscHead(u64),
    Payload,
    EscTail(u64),
    UsdTail(u8),
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    /// Queue sequence number for Data words, `None` for control words.
    seq: Option<u64>,
    tcm: u8,
    postfix: u8,
    mask: u8,
}

impl Partial {
    fn octet(&self, root: u8) -> u8 {
        ((self.tcm << 6) | (root << 3) | self.postfix) ^ self.mask
    }
}

#[derive(Debug, Clone)]
struct EchoRx {
    start: u64,
    noted: Partial,
    deferred: u8,
    digits: Vec<u8>,
    words: Vec<Partial>,
}

/// Streaming decoder, the inverse of [`super::Encoder`].
pub struct Decoder<S: PageSelector = ShiftSelector> {
    sel: S,
    t: u64,
    keys: KeyStream,
    state: u8,
    rx: Rx,
    echo: Option<EchoRx>,
    queue: VecDeque<(u64, Option<u8>)>,
    seq_base: u64,
}

impl Decoder<ShiftSelector> {
    pub fn new(scramble: &ScrambleConfig) -> Result<Self, CodecError> {
        Self::with_selector(ShiftSelector, scramble)
    }
}

impl<S: PageSelector> Decoder<S> {
    pub fn with_selector(sel: S, scramble: &ScrambleConfig) -> Result<Self, CodecError> {
        Ok(Decoder {
            sel,
            t: 0,
            keys: KeyStream::new(scramble)?,
            state: 0,
            rx: Rx::Ipg,
            echo: None,
            queue: VecDeque::new(),
            seq_base: 0,
        })
    }

    /// Octets received but not yet released.
    pub fn backlog(&self) -> usize {
        self.queue.len()
    }

    fn enqueue(&mut self, octet: Option<u8>) -> u64 {
        let seq = self.seq_base + self.queue.len() as u64;
        self.queue.push_back((self.t, octet));
        seq
    }

    fn resolve(&mut self, seq: u64, octet: u8) {
        self.queue[(seq - self.seq_base) as usize].1 = Some(octet);
    }

    fn framing(&mut self, kind: WordKind) -> Result<(), CodecError> {
        use WordKind::*;
        let next = match (self.rx, kind.base()) {
            (Rx::Ipg, Idle) => Some(Rx::Ipg),
            (Rx::Ipg, Usd) | (Rx::UsdTail(2), Usd) => Some(Rx::UsdHead(1)),
            (Rx::UsdHead(1), Usd) => Some(Rx::UsdHead(2)),
            (Rx::UsdHead(2), Esc) => Some(Rx::EscHead(1)),
            (Rx::EscHead(n), Esc) if n < 12 => Some(Rx::EscHead(n + 1)),
            (Rx::EscHead(n), Data) if n % 2 == 0 && n <= 6 => Some(Rx::Payload),
            (Rx::EscHead(n), Usd) if n % 2 == 0 => Some(Rx::UsdTail(1)),
            (Rx::Payload, Data) => Some(Rx::Payload),
            (Rx::Payload, Esc) => Some(Rx::EscTail(1)),
            (Rx::EscTail(n), Esc) if n < 6 => Some(Rx::EscTail(n + 1)),
            (Rx::EscTail(n), Usd) if n % 2 == 0 => Some(Rx::UsdTail(1)),
            (Rx::UsdTail(1), Usd) => Some(Rx::UsdTail(2)),
            (Rx::UsdTail(2), Idle) => Some(Rx::Ipg),
            _ => None,
        };
        match next {
            Some(n) => {
                self.rx = n;
                Ok(())
            }
            None => Err(CodecError::Framing {
                at: self.t,
                kind: kind.to_string(),
                phase: format!("{:?}", self.rx),
            }),
        }
    }

    fn check_control(&self, p: &Partial, root: u8) -> Result<(), CodecError> {
        if ((root << 3) | p.postfix) != p.mask & 0x3F {
            return Err(CodecError::Desync { at: self.t });
        }
        Ok(())
    }

    pub fn decode(&mut self, w: TxWord) -> Result<DecodeOutput, CodecError> {
        let t = self.t;
        if !w.in_range() {
            return Err(CodecError::Field { at: t });
        }
        let (mask, nkey) = self.keys.next();
        let nonary = nonary_sub(w.root, nkey);
        self.framing(w.kind)?;

        let page_err = CodecError::Page { at: t, state: self.state, page: w.page };
        let tcm = self.sel.infer(self.state, w.page).ok_or(page_err.clone())?;
        let is_data = w.kind.is_data();
        if !is_data && !matches!(w.kind.base(), WordKind::Esc) && (w.page != 0 || self.state != 0) {
            return Err(page_err);
        }
        self.state = w.page;

        let mut out = DecodeOutput::default();
        let mut part = Partial { seq: None, tcm: if is_data { tcm } else { 0 }, postfix: w.postfix, mask };

        let in_echo = self.echo.as_ref().is_some_and(|e| t > e.start && t <= e.start + ECHO_WORDS);
        if w.kind.is_noted() {
            if in_echo || nonary != 8 {
                return Err(CodecError::Noted { at: t });
            }
            out.events.push(EventRecord { word_index: t, train_type: None });
            if is_data {
                part.seq = Some(self.enqueue(None));
                self.echo = Some(EchoRx { start: t, noted: part, deferred: 0, digits: Vec::new(), words: Vec::new() });
            } else if w.postfix != mask & 7 {
                return Err(CodecError::Desync { at: t });
            }
        } else if in_echo {
            if is_data {
                part.seq = Some(self.enqueue(None));
            }
            let e = self.echo.as_mut().unwrap();
            e.digits.push(nonary);
            e.words.push(part);
            if e.digits.len() as u64 == ROUND_WORDS {
                self.finish_round()?;
            }
        } else {
            if nonary > 7 {
                return Err(CodecError::Field { at: t });
            }
            if is_data {
                self.enqueue(Some(part.octet(nonary)));
            } else {
                self.check_control(&part, nonary)?;
            }
        }

        while out.octets.len() < 2 {
            match self.queue.front() {
                Some((arr, Some(o))) if arr + DECODE_DELAY <= t => {
                    out.octets.push(*o);
                    self.queue.pop_front();
                    self.seq_base += 1;
                }
                _ => break,
            }
        }
        self.t += 1;
        Ok(out)
    }

    fn finish_round(&mut self) -> Result<(), CodecError> {
        let mut e = self.echo.take().unwrap();
        let u = e.digits.iter().fold(0u64, |acc, d| acc * 9 + *d as u64);
        if u >= ROUND_LIMIT {
            return Err(CodecError::InvalidEcho { at: self.t, u });
        }
        e.deferred = (e.deferred << 1) | (u >> 18) as u8;
        for (j, p) in e.words.iter().enumerate() {
            let d = ((u >> (3 * (5 - j))) & 7) as u8;
            match p.seq {
                Some(seq) => self.resolve(seq, p.octet(d)),
                None => self.check_control(p, d)?,
            }
        }
        e.digits.clear();
        e.words.clear();
        if self.t == e.start + ECHO_WORDS {
            self.resolve(e.noted.seq.unwrap(), e.noted.octet(e.deferred));
        } else {
            self.echo = Some(e);
        }
        Ok(())
    }

    /// Release every queued octet at end of stream.
    pub fn finish(mut self) -> Result<Vec<u8>, CodecError> {
        if let Some(e) = &self.echo {
            return Err(CodecError::Truncated(e.start));
        }
        self.queue
            .drain(..)
            .map(|(_, o)| o.ok_or(CodecError::Truncated(self.t)))
            .collect()
    }
}
