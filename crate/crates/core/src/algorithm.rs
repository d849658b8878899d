//! Registry of the nine cover algorithms under stable names.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::classic::{ccfm1997, dgt2018, g1991};
use crate::fastcover::{fast_cover, fast_cover_plus, fast_cover_pp};
use crate::geom::{Cover, Point};
use crate::sweep::{blms2017, ll2014};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    G1991,
    Ccfm1997,
    Ll2014,
    Ll2014OnePass,
    Blms2017,
    Dgt2018,
    FastCover,
    FastCoverPlus,
    FastCoverPlusPlus,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::G1991,
        Algorithm::Ccfm1997,
        Algorithm::Ll2014,
        Algorithm::Ll2014OnePass,
        Algorithm::Blms2017,
        Algorithm::Dgt2018,
        Algorithm::FastCover,
        Algorithm::FastCoverPlus,
        Algorithm::FastCoverPlusPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::G1991 => "g1991",
            Algorithm::Ccfm1997 => "ccfm1997",
            Algorithm::Ll2014 => "ll2014",
            Algorithm::Ll2014OnePass => "ll2014-1p",
            Algorithm::Blms2017 => "blms2017",
            Algorithm::Dgt2018 => "dgt2018",
            Algorithm::FastCover => "fastcover",
            Algorithm::FastCoverPlus => "fastcover+",
            Algorithm::FastCoverPlusPlus => "fastcover++",
        }
    }

    /// Whether the algorithm consumes points in the given order (no sorting).
    pub fn is_online(self) -> bool {
        matches!(
            self,
            Algorithm::Ccfm1997
                | Algorithm::Dgt2018
                | Algorithm::FastCover
                | Algorithm::FastCoverPlus
                | Algorithm::FastCoverPlusPlus
        )
    }

    pub fn solve(self, points: &[Point]) -> Cover {
        match self {
            Algorithm::G1991 => g1991(points),
            Algorithm::Ccfm1997 => ccfm1997(points),
            Algorithm::Ll2014 => ll2014(points, 6),
            Algorithm::Ll2014OnePass => ll2014(points, 1),
            Algorithm::Blms2017 => blms2017(points),
            Algorithm::Dgt2018 => dgt2018(points),
            Algorithm::FastCover => fast_cover(points),
            Algorithm::FastCoverPlus => fast_cover_plus(points),
            Algorithm::FastCoverPlusPlus => fast_cover_pp(points),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown algorithm {0:?}")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    /// Case-insensitive; `-` and `_` are ignored, so `LL-2014-1P` works.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .flat_map(char::to_lowercase)
            .collect();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().replace('-', "") == key)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}
