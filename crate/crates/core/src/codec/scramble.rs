use super::CodecError;

const MASK33: u64 = (1 << 33) - 1;

/// Side-stream generator with polynomial x^33 + x^13 + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lfsr33 {
    state: u64,
}

impl Lfsr33 {
    pub fn new(seed: u64) -> Result<Self, CodecError> {
        let state = seed & MASK33;
        if state == 0 {
            return Err(CodecError::Seed);
        }
        Ok(Lfsr33 { state })
    }

    pub fn next_bit(&mut self) -> u8 {
        let bit = ((self.state >> 12) ^ (self.state >> 32)) & 1;
        self.state = ((self.state << 1) | bit) & MASK33;
        bit as u8
    }

    /// `k` bits, first generated bit most significant.
    pub fn next_bits(&mut self, k: u32) -> u32 {
        (0..k).fold(0, |acc, _| (acc << 1) | self.next_bit() as u32)
    }

    pub fn next_byte(&mut self) -> u8 {
        self.next_bits(8) as u8
    }
}

/// Source of base-B key digits for digit-wise scrambling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TernaryGen {
    Zero,
    /// Counter-anchored digits: `n mod B`.
    Anchor { n: u64 },
    /// `k` generator bits reduced mod B.
    Mapping { lfsr: Lfsr33, k: u32 },
}

impl TernaryGen {
    pub fn next_digit(&mut self, base: u32) -> u32 {
        match self {
            TernaryGen::Zero => 0,
            TernaryGen::Anchor { n } => {
                let d = (*n % base as u64) as u32;
                *n += 1;
                d
            }
            TernaryGen::Mapping { lfsr, k } => lfsr.next_bits(*k) % base,
        }
    }
}

pub fn ternary_scramble(digits: &[u8], gen: &mut TernaryGen) -> Vec<u8> {
    digits.iter().map(|d| ((*d as u32 + gen.next_digit(3)) % 3) as u8).collect()
}

pub fn ternary_descramble(digits: &[u8], gen: &mut TernaryGen) -> Vec<u8> {
    digits.iter().map(|d| ((*d as u32 + 3 - gen.next_digit(3)) % 3) as u8).collect()
}

/// Add a nonary key to a nonary digit trit by trit.
pub(crate) fn nonary_add(d: u8, k: u8) -> u8 {
    ((d / 3 + k / 3) % 3) * 3 + (d % 3 + k % 3) % 3
}

pub(crate) fn nonary_sub(d: u8, k: u8) -> u8 {
    ((d / 3 + 3 - k / 3) % 3) * 3 + (d % 3 + 3 - k % 3) % 3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScrambleConfig {
    pub enabled: bool,
    pub seed: u64,
    /// Generator bits per nonary key.
    pub mapping_bits: u32,
}

impl Default for ScrambleConfig {
    fn default() -> Self {
        ScrambleConfig { enabled: true, seed: 0x1_2345_6789, mapping_bits: 7 }
    }
}

/// Per-word binary mask and nonary key, indexed by wire time.
#[derive(Debug, Clone)]
pub(crate) struct KeyStream {
    binary: Option<Lfsr33>,
    ternary: TernaryGen,
}

impl KeyStream {
    pub fn new(cfg: &ScrambleConfig) -> Result<Self, CodecError> {
        if !cfg.enabled {
            return Ok(KeyStream { binary: None, ternary: TernaryGen::Zero });
        }
        let binary = Lfsr33::new(cfg.seed)?;
        let mut second = (cfg.seed ^ 0x1_5A5A_5A5A) & MASK33;
        if second == 0 {
            second = 1;
        }
        Ok(KeyStream {
            binary: Some(binary),
            ternary: TernaryGen::Mapping { lfsr: Lfsr33::new(second)?, k: cfg.mapping_bits },
        })
    }

    /// `(binary mask, nonary key)` for the next word.
    pub fn next(&mut self) -> (u8, u8) {
        let mask = self.binary.as_mut().map_or(0, |l| l.next_byte());
        (mask, self.ternary.next_digit(9) as u8)
    }
}
