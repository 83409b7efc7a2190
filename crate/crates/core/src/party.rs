use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three parties sharing a state. Basis index of `|abc>` is `4a + 2b + c`,
/// so `A` is the most significant qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Qubit position, 0 being the most significant.
    pub fn position(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }

    /// The two other parties, in alphabetical order.
    pub fn others(self) -> [Party; 2] {
        match self {
            Party::A => [Party::B, Party::C],
            Party::B => [Party::A, Party::C],
            Party::C => [Party::A, Party::B],
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Party::A => "A",
            Party::B => "B",
            Party::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Party {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Party::A),
            "B" | "b" => Ok(Party::B),
            "C" | "c" => Ok(Party::C),
            other => Err(Error::InvalidPartySet(format!("unknown party `{other}`"))),
        }
    }
}

/// A subset of `{A, B, C}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PartySet(u8);

impl PartySet {
    pub const EMPTY: PartySet = PartySet(0);

    pub fn of(parties: &[Party]) -> Self {
        parties.iter().fold(Self::EMPTY, |s, &p| s.with(p))
    }

    pub fn single(p: Party) -> Self {
        Self::EMPTY.with(p)
    }

    pub fn with(self, p: Party) -> Self {
        PartySet(self.0 | (1 << p.position()))
    }

    pub fn contains(self, p: Party) -> bool {
        self.0 & (1 << p.position()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in party order.
    pub fn parties(self) -> impl Iterator<Item = Party> {
        Party::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    pub fn complement(self) -> Self {
        PartySet(!self.0 & 0b111)
    }
}

impl fmt::Display for PartySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for p in self.parties() {
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl From<Party> for PartySet {
    fn from(p: Party) -> Self {
        PartySet::single(p)
    }
}
