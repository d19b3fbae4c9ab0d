use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordKind {
    Data,
    DataNoted,
    Idle,
    IdleNoted,
    Usd,
    UsdNoted,
    Esc,
    EscNoted,
}

impl WordKind {
    pub const ALL: [WordKind; 8] = [
        WordKind::Data,
        WordKind::DataNoted,
        WordKind::Idle,
        WordKind::IdleNoted,
        WordKind::Usd,
        WordKind::UsdNoted,
        WordKind::Esc,
        WordKind::EscNoted,
    ];

    pub fn is_noted(self) -> bool {
        matches!(self, WordKind::DataNoted | WordKind::IdleNoted | WordKind::UsdNoted | WordKind::EscNoted)
    }

    pub fn base(self) -> WordKind {
        match self {
            WordKind::DataNoted => WordKind::Data,
            WordKind::IdleNoted => WordKind::Idle,
            WordKind::UsdNoted => WordKind::Usd,
            WordKind::EscNoted => WordKind::Esc,
            k => k,
        }
    }

    pub fn noted(self) -> WordKind {
        match self {
            WordKind::Data => WordKind::DataNoted,
            WordKind::Idle => WordKind::IdleNoted,
            WordKind::Usd => WordKind::UsdNoted,
            WordKind::Esc => WordKind::EscNoted,
            k => k,
        }
    }

    pub fn is_data(self) -> bool {
        self.base() == WordKind::Data
    }

    pub fn token(self) -> &'static str {
        match self {
            WordKind::Data => "Data",
            WordKind::DataNoted => "Data*",
            WordKind::Idle => "Idle",
            WordKind::IdleNoted => "Idle*",
            WordKind::Usd => "USD",
            WordKind::UsdNoted => "USD*",
            WordKind::Esc => "ESC",
            WordKind::EscNoted => "ESC*",
        }
    }
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for WordKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WordKind::ALL
            .iter()
            .copied()
            .find(|k| k.token() == s)
            .ok_or_else(|| format!("unknown word kind '{s}'"))
    }
}

/// One transported word. `root` is a nonary numeral, `postfix` 3 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TxWord {
    pub kind: WordKind,
    pub page: u8,
    pub root: u8,
    pub postfix: u8,
}

impl TxWord {
    /// The root as two ternary digits, most significant first.
    pub fn trits(&self) -> (u8, u8) {
        (self.root / 3, self.root % 3)
    }

    pub fn in_range(&self) -> bool {
        self.page < 8 && self.root < 9 && self.postfix < 8
    }
}

impl fmt::Display for TxWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.kind, self.page, self.root, self.postfix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub word_index: u64,
    pub train_type: Option<u8>,
}
