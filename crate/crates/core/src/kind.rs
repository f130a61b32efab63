use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which neighbourhood every vertex must meet the code in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domination {
    /// `N[v] ∩ C ≠ ∅`
    Closed,
    /// `N(v) ∩ C ≠ ∅` (total domination)
    Open,
}

/// How the code must tell vertices apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separation {
    /// Open traces `N(v) ∩ C` pairwise distinct.
    OpenSeparating,
    /// Closed traces `N[v] ∩ C` pairwise distinct.
    ClosedSeparating,
    /// Open traces distinct over vertices outside the code.
    Locating,
}

/// The six identification-code types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CodeKind {
    Od,
    Otd,
    Ld,
    Ltd,
    Id,
    Itd,
}

impl CodeKind {
    pub const ALL: [CodeKind; 6] = [
        CodeKind::Od,
        CodeKind::Otd,
        CodeKind::Ld,
        CodeKind::Ltd,
        CodeKind::Id,
        CodeKind::Itd,
    ];

    pub fn domination(self) -> Domination {
        match self {
            CodeKind::Od | CodeKind::Ld | CodeKind::Id => Domination::Closed,
            CodeKind::Otd | CodeKind::Ltd | CodeKind::Itd => Domination::Open,
        }
    }

    pub fn separation(self) -> Separation {
        match self {
            CodeKind::Od | CodeKind::Otd => Separation::OpenSeparating,
            CodeKind::Id | CodeKind::Itd => Separation::ClosedSeparating,
            CodeKind::Ld | CodeKind::Ltd => Separation::Locating,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            CodeKind::Od => "OD",
            CodeKind::Otd => "OTD",
            CodeKind::Ld => "LD",
            CodeKind::Ltd => "LTD",
            CodeKind::Id => "ID",
            CodeKind::Itd => "ITD",
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CodeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CodeKind::ALL
            .into_iter()
            .find(|k| k.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown code kind `{s}` (expected one of OD, OTD, LD, LTD, ID, ITD)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taxonomy_is_fixed() {
        use Domination::*;
        use Separation::*;
        let expected = [
            (CodeKind::Od, Closed, OpenSeparating),
            (CodeKind::Otd, Open, OpenSeparating),
            (CodeKind::Id, Closed, ClosedSeparating),
            (CodeKind::Itd, Open, ClosedSeparating),
            (CodeKind::Ld, Closed, Locating),
            (CodeKind::Ltd, Open, Locating),
        ];
        for (k, d, s) in expected {
            assert_eq!(k.domination(), d, "{k}");
            assert_eq!(k.separation(), s, "{k}");
        }
    }

    #[test]
    fn parses_case_insensitively() {
        assert_eq!("otd".parse::<CodeKind>(), Ok(CodeKind::Otd));
        assert_eq!("ITD".parse::<CodeKind>(), Ok(CodeKind::Itd));
        assert!("XD".parse::<CodeKind>().is_err());
    }
}
