use serde::Serialize;

use super::{CodecError, EVENT_CYCLE};

/// Word indices of the events that announce `ty` (0..=7), cycles `m` apart.
/// Cycle 0 always fires; cycles 1..3 carry the type bits, MSB first.
pub fn event_train_encode(ty: u8, start: u64, m: u64) -> Result<Vec<u64>, CodecError> {
    if m < EVENT_CYCLE {
        return Err(CodecError::TrainSpacing(m));
    }
    let presence = [true, ty & 4 != 0, ty & 2 != 0, ty & 1 != 0];
    Ok(presence
        .iter()
        .enumerate()
        .filter(|(_, p)| **p)
        .map(|(i, _)| start + i as u64 * m)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrainDecode {
    Type(u8),
    Unclassified,
}

/// Type from the presence observed in cycles 0..3. Fewer than four
/// observations (a timed-out train) or a silent cycle 0 is unclassified.
pub fn event_train_decode(cycles: &[bool]) -> TrainDecode {
    match cycles {
        [true, a, b, c] => TrainDecode::Type((*a as u8) << 2 | (*b as u8) << 1 | *c as u8),
        _ => TrainDecode::Unclassified,
    }
}

/// Word index and timing error for an arrival `t` measured in word periods.
/// The word's event time is its centre, so the error stays within half a word.
pub fn quantize_event(t: f64) -> (u64, f64) {
    let k = t.floor().max(0.0);
    (k as u64, t - (k + 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn train_examples() {
        assert_eq!(event_train_encode(0, 0, 20).unwrap(), vec![0]);
        assert_eq!(event_train_encode(5, 100, 20).unwrap(), vec![100, 120, 160]);
        assert!(event_train_encode(5, 0, 19).is_err());
        for ty in 0..8 {
            let ev = event_train_encode(ty, 7, 25).unwrap();
            let cycles: Vec<bool> = (0..4).map(|c| ev.contains(&(7 + c * 25))).collect();
            assert_eq!(event_train_decode(&cycles), TrainDecode::Type(ty));
        }
        assert_eq!(event_train_decode(&[true, true]), TrainDecode::Unclassified);
        assert_eq!(event_train_decode(&[false, true, true, true]), TrainDecode::Unclassified);
    }

    #[test]
    fn quantization_within_half_word() {
        for i in 0..1000 {
            let t = i as f64 * 0.173;
            let (k, err) = quantize_event(t);
            assert!(err.abs() <= 0.5);
            assert!(t >= k as f64 && t < k as f64 + 1.0);
        }
    }
}
