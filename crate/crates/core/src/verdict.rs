use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Hurwitz,
    NotHurwitz,
    Inconclusive,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::Hurwitz => "hurwitz",
            Stability::NotHurwitz => "not_hurwitz",
            Stability::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of a stability test.
///
/// `first_failing_index` is the least pivot index `k` (1-based) that was not
/// strictly positive. `marginal` marks an exact zero pivot: the roots are not
/// all in the open left half-plane, but some may sit on the imaginary axis
/// rather than to its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub stability: Stability,
    pub first_failing_index: Option<usize>,
    pub marginal: bool,
}

impl StabilityVerdict {
    pub fn hurwitz() -> Self {
        StabilityVerdict {
            stability: Stability::Hurwitz,
            first_failing_index: None,
            marginal: false,
        }
    }

    pub fn not_hurwitz(index: Option<usize>) -> Self {
        StabilityVerdict {
            stability: Stability::NotHurwitz,
            first_failing_index: index,
            marginal: false,
        }
    }

    pub fn marginal(index: usize) -> Self {
        StabilityVerdict {
            stability: Stability::NotHurwitz,
            first_failing_index: Some(index),
            marginal: true,
        }
    }

    pub fn inconclusive(index: Option<usize>) -> Self {
        StabilityVerdict {
            stability: Stability::Inconclusive,
            first_failing_index: index,
            marginal: false,
        }
    }

    pub fn is_hurwitz(&self) -> bool {
        self.stability == Stability::Hurwitz
    }

    /// 0 Hurwitz, 1 not Hurwitz, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.stability {
            Stability::Hurwitz => 0,
            Stability::NotHurwitz => 1,
            Stability::Inconclusive => 2,
        }
    }
}
