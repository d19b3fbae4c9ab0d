use super::encoder::Phase;
use super::CodecError;

/// Page selection driven by the two page-selecting bits of each word.
/// The selected page is the new register state.
pub trait PageSelector {
    fn step(&self, state: u8, tcm: u8) -> u8;
    /// The `tcm` input that moves `state` to `page`, if the move is legal.
    fn infer(&self, state: u8, page: u8) -> Option<u8>;
}

/// 8-state shift register: `next = ((state << 2) | tcm) & 7`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ShiftSelector;

impl PageSelector for ShiftSelector {
    fn step(&self, state: u8, tcm: u8) -> u8 {
        ((state << 2) | (tcm & 3)) & 7
    }

    fn infer(&self, state: u8, page: u8) -> Option<u8> {
        if page < 8 && page >> 2 == state & 1 {
            Some(page & 3)
        } else {
            None
        }
    }
}

/// Lexicographically first pair of inputs steering `from` to `target`.
pub fn fade_pair<S: PageSelector + ?Sized>(sel: &S, from: u8, target: u8) -> Option<[u8; 2]> {
    for a in 0..4 {
        for b in 0..4 {
            if sel.step(sel.step(from, a), b) == target {
                return Some([a, b]);
            }
        }
    }
    None
}

/// Pages of the two fading ESC words. Fade-in runs from P0 to `target`,
/// fade-out from `target` back to P0.
pub fn page_fade<S: PageSelector + ?Sized>(sel: &S, phase: Phase, target: u8) -> Result<[u8; 2], CodecError> {
    let (from, to) = match phase {
        Phase::EscHead => (0, target),
        Phase::EscTail => (target, 0),
        _ => return Err(CodecError::FadePhase),
    };
    let [a, b] = fade_pair(sel, from, to).ok_or(CodecError::FadePhase)?;
    let first = sel.step(from, a);
    Ok([first, sel.step(first, b)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infer_inverts_step() {
        let s = ShiftSelector;
        for state in 0..8 {
            let mut reached = 0u8;
            for tcm in 0..4 {
                let p = s.step(state, tcm);
                assert_eq!(s.infer(state, p), Some(tcm));
                reached |= 1 << p;
            }
            assert_eq!(reached.count_ones(), 4);
        }
    }

    #[test]
    fn fades() {
        let s = ShiftSelector;
        assert_eq!(page_fade(&s, Phase::EscHead, 0).unwrap(), [0, 0]);
        assert_eq!(page_fade(&s, Phase::EscHead, 5).unwrap(), [1, 5]);
        assert_eq!(page_fade(&s, Phase::EscTail, 5).unwrap(), [4, 0]);
        assert!(page_fade(&s, Phase::Payload, 5).is_err());
        for from in 0..8 {
            for to in 0..8 {
                let [a, b] = fade_pair(&s, from, to).unwrap();
                let mid = s.step(from, a);
                assert!(s.infer(from, mid).is_some());
                assert_eq!(s.step(mid, b), to);
            }
        }
    }
}
