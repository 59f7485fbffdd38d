//! Vertex labels.
//!
//! A label is a base integer plus a replica index. The original vertex of a
//! graph carries replica index 0 and is written `8`; the k-th replica created
//! by a vertex split is written `8^k`. Labels order lexicographically on
//! (base, replica), so `8 < 8^1 < 8^2 < 9`: every replica slots in between
//! its base vertex and the next original label.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    base: u32,
    replica: u32,
}

impl Label {
    /// An original vertex label. `base` must be positive.
    pub fn original(base: u32) -> Self {
        assert!(base >= 1, "label bases start at 1");
        Label { base, replica: 0 }
    }

    /// The `index`-th replica of `base`.
    pub fn replica(base: u32, index: u32) -> Self {
        assert!(base >= 1, "label bases start at 1");
        assert!(index >= 1, "replica indices start at 1");
        Label {
            base,
            replica: index,
        }
    }

    pub fn new(base: u32, replica: u32) -> Self {
        assert!(base >= 1, "label bases start at 1");
        Label { base, replica }
    }

    pub fn base(self) -> u32 {
        self.base
    }

    pub fn replica_index(self) -> u32 {
        self.replica
    }

    pub fn is_replica(self) -> bool {
        self.replica > 0
    }

    /// The original label with the same base.
    pub fn to_original(self) -> Self {
        Label {
            base: self.base,
            replica: 0,
        }
    }
}

/// Total order on labels: `(b1, r1) < (b2, r2)` iff `b1 < b2`, or the bases
/// tie and `r1 < r2`.
pub fn compare_labels(a: Label, b: Label) -> Ordering {
    a.cmp(&b)
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.replica == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.replica)
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, replica) = match s.split_once('^') {
            Some((b, r)) => (b, Some(r)),
            None => (s, None),
        };
        let base: u32 = base
            .parse()
            .map_err(|_| format!("invalid label base `{base}`"))?;
        if base == 0 {
            return Err("label bases start at 1".to_string());
        }
        let replica = match replica {
            Some(r) => {
                let r: u32 = r
                    .parse()
                    .map_err(|_| format!("invalid replica index `{r}`"))?;
                if r == 0 {
                    return Err("replica indices start at 1".to_string());
                }
                r
            }
            None => 0,
        };
        Ok(Label { base, replica })
    }
}
