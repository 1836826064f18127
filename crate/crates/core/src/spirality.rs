//! Non-negative rectilinear spirality sets and their composition rules.
//!
//! A set is stored as `(lo, hi, jump)` and never materialized. Membership
//! is symmetric: `contains(s, σ)` tests `|σ|`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpiralitySet {
    Empty,
    Interval { lo: u32, hi: u32, jump: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("({lo}, {hi}, {jump}) is not one of the six canonical structures")]
    NotCanonical { lo: u32, hi: u32, jump: u32 },
    #[error("cannot parse spirality set {0:?}")]
    Syntax(String),
}

fn canonical(lo: u32, hi: u32, jump: u32) -> bool {
    match (lo, jump) {
        (0, 1) => true,
        (1, 1) => hi == 1 || hi == 2,
        (0, 2) => hi >= 2 && hi.is_multiple_of(2),
        (1, 2) => hi >= 3 && hi % 2 == 1,
        _ => false,
    }
}

impl SpiralitySet {
    /// Checked constructor; rejects anything outside the six structures.
    pub fn new(lo: u32, hi: u32, jump: u32) -> Result<Self, ShapeError> {
        if canonical(lo, hi, jump) {
            Ok(SpiralitySet::Interval { lo, hi, jump })
        } else {
            Err(ShapeError::NotCanonical { lo, hi, jump })
        }
    }

    fn make(lo: u32, hi: u32, jump: u32) -> Self {
        assert!(
            canonical(lo, hi, jump),
            "non-canonical spirality set ({lo}, {hi}, {jump})"
        );
        SpiralitySet::Interval { lo, hi, jump }
    }

    /// `[m]` for m ∈ {0, 1}.
    pub fn single(m: u32) -> Self {
        Self::make(m, m, 1)
    }

    /// `[0, m]^1`, or `[0]` when m = 0.
    pub fn upto(m: u32) -> Self {
        Self::make(0, m, 1)
    }

    /// The jump-1 set `[1, 2]^1`.
    pub fn one_two() -> Self {
        Self::make(1, 2, 1)
    }

    /// The set with maximum `m` that admits only values of its parity.
    fn parity(m: u32) -> Self {
        if m <= 1 {
            Self::single(m)
        } else {
            Self::make(m % 2, m, 2)
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SpiralitySet::Empty)
    }

    /// Maximum admitted value.
    pub fn max(&self) -> Option<u32> {
        match *self {
            SpiralitySet::Empty => None,
            SpiralitySet::Interval { hi, .. } => Some(hi),
        }
    }

    /// Admits two consecutive values.
    pub fn is_jump1(&self) -> bool {
        matches!(*self, SpiralitySet::Interval { lo, hi, jump: 1 } if lo < hi)
    }

    pub fn contains(&self, sigma: i64) -> bool {
        match *self {
            SpiralitySet::Empty => false,
            SpiralitySet::Interval { lo, hi, jump } => {
                let s = sigma.unsigned_abs();
                s >= lo as u64 && s <= hi as u64 && (s - lo as u64).is_multiple_of(jump as u64)
            }
        }
    }

    /// Admitted non-negative values in increasing order.
    pub fn values(&self) -> Vec<u32> {
        match *self {
            SpiralitySet::Empty => Vec::new(),
            SpiralitySet::Interval { lo, hi, jump } => (lo..=hi).step_by(jump as usize).collect(),
        }
    }

    /// Every canonical set with `hi ≤ max_hi`, Empty first.
    pub fn all_up_to(max_hi: u32) -> Vec<SpiralitySet> {
        let mut out = vec![SpiralitySet::Empty];
        for hi in 0..=max_hi {
            for lo in 0..=1 {
                for jump in 1..=2 {
                    if canonical(lo, hi, jump) {
                        out.push(SpiralitySet::Interval { lo, hi, jump });
                    }
                }
            }
        }
        out
    }

    /// The canonical set whose values are exactly `values`, if any.
    pub fn from_values(values: &[u32]) -> Option<SpiralitySet> {
        let mut v = values.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Some(SpiralitySet::Empty);
        }
        let (lo, hi) = (v[0], *v.last().unwrap());
        let jump = if v.len() >= 2 { v[1] - v[0] } else { 1 };
        if !canonical(lo, hi, jump) {
            return None;
        }
        let s = SpiralitySet::Interval { lo, hi, jump };
        (s.values() == v).then_some(s)
    }
}

pub fn contains(s: SpiralitySet, sigma: i64) -> bool {
    s.contains(sigma)
}

impl fmt::Display for SpiralitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SpiralitySet::Empty => f.write_str("empty"),
            SpiralitySet::Interval { lo, hi, .. } if lo == hi => write!(f, "[{lo}]"),
            SpiralitySet::Interval { lo, hi, jump } => write!(f, "[{lo},{hi}]^{jump}"),
        }
    }
}

impl FromStr for SpiralitySet {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "empty" {
            return Ok(SpiralitySet::Empty);
        }
        let bad = || ShapeError::Syntax(s.to_string());
        let (body, jump) = match t.split_once('^') {
            Some((b, j)) => (b, j.parse::<u32>().map_err(|_| bad())?),
            None => (t, 1),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (lo, hi) = match inner.split_once(',') {
            Some((a, b)) => (
                a.trim().parse::<u32>().map_err(|_| bad())?,
                b.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => {
                let m = inner.trim().parse::<u32>().map_err(|_| bad())?;
                (m, m)
            }
        };
        SpiralitySet::new(lo, hi, jump)
    }
}

impl Serialize for SpiralitySet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpiralitySet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Set of a Q*-node whose chain has `ell` edges.
pub fn qstar_set(ell: usize) -> SpiralitySet {
    assert!(ell >= 1, "chains have at least one edge");
    SpiralitySet::upto((ell - 1) as u32)
}

/// Aggregate over the children of an S-node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct SNodeSummary {
    /// Children with set `[0]`.
    pub x: u32,
    /// Children with set `[1,2]^1`.
    pub y: u32,
    /// Jump-1 children.
    pub z: u32,
    /// Sum of child maxima.
    pub m_total: u64,
    pub n_children: u32,
    /// Empty children.
    pub empty: u32,
}

impl SNodeSummary {
    pub fn any_empty(&self) -> bool {
        self.empty > 0
    }

    fn apply(&mut self, s: SpiralitySet, sign: i64) {
        let bump = |field: &mut u32| *field = (*field as i64 + sign) as u32;
        bump(&mut self.n_children);
        match s {
            SpiralitySet::Empty => bump(&mut self.empty),
            SpiralitySet::Interval { lo, hi, .. } => {
                if hi == 0 {
                    bump(&mut self.x);
                }
                if lo == 1 && hi == 2 && s.is_jump1() {
                    bump(&mut self.y);
                }
                if s.is_jump1() {
                    bump(&mut self.z);
                }
                self.m_total = (self.m_total as i64 + sign * hi as i64) as u64;
            }
        }
    }
}

pub fn s_summary<I: IntoIterator<Item = SpiralitySet>>(children: I) -> SNodeSummary {
    let mut sum = SNodeSummary::default();
    for c in children {
        sum.apply(c, 1);
    }
    sum
}

/// Adds one child set in O(1).
pub fn s_summary_push(sum: SNodeSummary, added: SpiralitySet) -> SNodeSummary {
    let mut out = sum;
    out.apply(added, 1);
    out
}

/// Swaps one counted child set for another in O(1).
pub fn s_summary_replace(
    sum: SNodeSummary,
    removed: SpiralitySet,
    added: SpiralitySet,
) -> SNodeSummary {
    let mut out = sum;
    out.apply(removed, -1);
    out.apply(added, 1);
    out
}

pub fn s_node_set(sum: &SNodeSummary) -> SpiralitySet {
    if sum.any_empty() {
        return SpiralitySet::Empty;
    }
    let m = u32::try_from(sum.m_total).expect("spirality fits in u32");
    if sum.z > 0 {
        if m == 2 && sum.x + sum.y == sum.n_children && sum.y == 1 {
            SpiralitySet::one_two()
        } else {
            SpiralitySet::upto(m)
        }
    } else {
        SpiralitySet::parity(m)
    }
}

/// Some assignment of the three sets to left, center and right admits
/// σ + 2, σ and σ − 2 respectively.
pub fn p3_admits(a: SpiralitySet, b: SpiralitySet, c: SpiralitySet, sigma: i64) -> bool {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let s = [a, b, c];
    PERMS.iter().any(|p| {
        s[p[0]].contains(sigma + 2) && s[p[1]].contains(sigma) && s[p[2]].contains(sigma - 2)
    })
}

/// Outside-angle choices `(α_w^l, α_w^r)` at one pole.
pub const ALPHA_PAIRS: [(i64, i64); 3] = [(0, 1), (1, 0), (1, 1)];

/// One P-node configuration with two children: `swap` puts the second set
/// on the left; alphas are `(α_u^l, α_u^r, α_v^l, α_v^r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct P2Config {
    pub swap: bool,
    pub alpha: (i64, i64, i64, i64),
}

impl P2Config {
    /// All 18 configurations in scan order.
    pub fn all() -> impl Iterator<Item = P2Config> {
        [false, true].into_iter().flat_map(|swap| {
            ALPHA_PAIRS.into_iter().flat_map(move |(ul, ur)| {
                ALPHA_PAIRS.into_iter().map(move |(vl, vr)| P2Config {
                    swap,
                    alpha: (ul, ur, vl, vr),
                })
            })
        })
    }

    /// Left and right child spiralities for a node spirality σ.
    pub fn child_values(&self, sigma: i64) -> (i64, i64) {
        let (ul, ur, vl, vr) = self.alpha;
        (sigma + ul + vl, sigma - ur - vr)
    }
}

pub fn p2_admits(a: SpiralitySet, b: SpiralitySet, sigma: i64) -> bool {
    P2Config::all().any(|cfg| {
        let (left, right) = if cfg.swap { (b, a) } else { (a, b) };
        let (sl, sr) = cfg.child_values(sigma);
        left.contains(sl) && right.contains(sr)
    })
}

/// Maximum admitted value when it is at most four.
fn small_max(admits: &impl Fn(i64) -> bool) -> Option<u32> {
    (0..=4)
        .find(|&i| admits(i) && !admits(i + 1) && !admits(i + 2))
        .map(|i| i as u32)
}

pub fn p3_set(a: SpiralitySet, b: SpiralitySet, c: SpiralitySet) -> SpiralitySet {
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return SpiralitySet::Empty;
    }
    let admits = |s: i64| p3_admits(a, b, c, s);
    let (a0, a1, a2) = (admits(0), admits(1), admits(2));
    if !a0 && !a1 {
        return SpiralitySet::Empty;
    }
    let jump1 = (a0 && a1) || (a1 && a2);
    let m = small_max(&admits).unwrap_or_else(|| {
        let mut maxima = [a.max().unwrap(), b.max().unwrap(), c.max().unwrap()].map(i64::from);
        maxima.sort_unstable();
        let [mmin, mmid, mmax] = maxima;
        let mbar = (mmax - 2).min(mmid).min(mmin + 2);
        let m = if jump1 || admits(mbar) {
            mbar
        } else {
            mbar - 1
        };
        m as u32
    });
    if jump1 {
        if a0 {
            SpiralitySet::upto(m)
        } else {
            SpiralitySet::one_two()
        }
    } else {
        SpiralitySet::parity(m)
    }
}

pub fn p2_set(a: SpiralitySet, b: SpiralitySet) -> SpiralitySet {
    if a.is_empty() || b.is_empty() {
        return SpiralitySet::Empty;
    }
    let admits = |s: i64| p2_admits(a, b, s);
    let a0 = admits(0);
    if !a0 && !admits(1) {
        return SpiralitySet::Empty;
    }
    let m = small_max(&admits).unwrap_or_else(|| {
        let (mmax, mmin) = {
            let (x, y) = (i64::from(a.max().unwrap()), i64::from(b.max().unwrap()));
            (x.max(y), x.min(y))
        };
        let m = if mmax >= mmin + 2 {
            mmin + 2
        } else if admits(mmax) {
            mmax
        } else {
            mmax - 1
        };
        m as u32
    });
    if m == 0 {
        SpiralitySet::single(0)
    } else if m == 2 && !a0 {
        SpiralitySet::one_two()
    } else {
        SpiralitySet::upto(m)
    }
}

/// Pairs (σ, k) with σ ∈ s, 0 ≤ k ≤ ℓ − 1 and σ + k = 4, in increasing σ.
pub fn root_pairs(s: SpiralitySet, ell: usize) -> impl Iterator<Item = (i64, i64)> {
    (0..=4i64).filter_map(move |sigma| {
        let k = 4 - sigma;
        (s.contains(sigma) && k < ell as i64).then_some((sigma, k))
    })
}

pub fn root_feasible(s: SpiralitySet, ell: usize) -> bool {
    root_pairs(s, ell).next().is_some()
}
