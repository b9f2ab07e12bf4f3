//! Brute-force weighted tiling enumeration.
//!
//! A row of length `k` is tiled by bricks drawn from a [`RowSpec`]; the weight
//! of a tiling is the product of its brick weights. A [`PairTiling`] stacks a
//! top and a bottom row of the same length. Positions that are brick
//! boundaries in both rows are fault lines; a pair with no interior fault line
//! is a prime block, and every pair factors uniquely into prime blocks.

pub mod bijection;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Var};

/// Allowed bricks for one row, plus an optional forced first brick of
/// weight 1 (`prefix == 0` means none).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpec {
    bricks: Vec<(usize, Polynomial)>,
    prefix: usize,
}

impl RowSpec {
    /// Bricks with the same length are merged by adding their weights.
    pub fn new(bricks: impl IntoIterator<Item = (usize, Polynomial)>, prefix: usize) -> Result<Self> {
        let mut merged: Vec<(usize, Polynomial)> = Vec::new();
        for (len, w) in bricks {
            if len == 0 {
                return Err(Error::domain("brick length must be positive"));
            }
            match merged.iter_mut().find(|(l, _)| *l == len) {
                Some((_, acc)) => *acc += &w,
                None => merged.push((len, w)),
            }
        }
        if merged.iter().any(|(_, w)| w.is_zero()) {
            return Err(Error::domain("brick weights must be nonzero"));
        }
        merged.sort_by_key(|(l, _)| *l);
        Ok(RowSpec { bricks: merged, prefix })
    }

    /// Squares weighted by `v` and dominoes weighted by 1.
    pub fn fibonacci(v: Var) -> Self {
        RowSpec::new([(1, Polynomial::var(v)), (2, Polynomial::one())], 0).expect("valid spec")
    }

    /// Squares weighted by `b` and length-`n` bricks weighted by 1.
    pub fn bottom(n: usize) -> Self {
        RowSpec::new([(1, Polynomial::var(Var::B)), (n, Polynomial::one())], 0).expect("valid spec")
    }

    /// Only length-`n` bricks, weighted by 1.
    pub fn only(n: usize) -> Self {
        RowSpec::new([(n, Polynomial::one())], 0).expect("valid spec")
    }

    pub fn with_prefix(mut self, prefix: usize) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn bricks(&self) -> &[(usize, Polynomial)] {
        &self.bricks
    }

    pub fn prefix(&self) -> usize {
        self.prefix
    }

    fn weight_of(&self, len: usize) -> Option<&Polynomial> {
        self.bricks.iter().find(|(l, _)| *l == len).map(|(_, w)| w)
    }

    /// Weight of a row tiling under this spec; `None` if a brick is not allowed.
    pub fn row_weight(&self, row: &[usize]) -> Option<Polynomial> {
        let (body, mut acc) = if self.prefix > 0 {
            match row.split_first() {
                Some((&first, rest)) if first == self.prefix => (rest, Polynomial::one()),
                _ => return None,
            }
        } else {
            (row, Polynomial::one())
        };
        for &len in body {
            acc = &acc * self.weight_of(len)?;
        }
        Some(acc)
    }
}

impl FromStr for RowSpec {
    type Err = Error;

    /// `len:weight` pairs separated by commas, plus optional `prefix=<len>`,
    /// e.g. `1:b,3:1,prefix=2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut bricks = Vec::new();
        let mut prefix = 0;
        let mut offset = 0;
        for item in s.split(',') {
            let at = offset + (item.len() - item.trim_start().len());
            offset += item.len() + 1;
            let item = item.trim();
            if let Some(v) = item.strip_prefix("prefix=") {
                prefix = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(at + 7, "expected prefix length"))?;
                continue;
            }
            let (len, weight) = item
                .split_once(':')
                .ok_or_else(|| Error::parse(at, "expected `len:weight`"))?;
            let len: usize = len
                .trim()
                .parse()
                .map_err(|_| Error::parse(at, "expected brick length"))?;
            let weight: Polynomial = weight.parse().map_err(|e| match e {
                Error::Parse { pos, message } => Error::parse(at + item.find(':').unwrap_or(0) + 1 + pos, message),
                other => other,
            })?;
            bricks.push((len, weight));
        }
        if bricks.is_empty() {
            return Err(Error::parse(0, "row spec needs at least one brick"));
        }
        RowSpec::new(bricks, prefix)
    }
}

fn compositions(lengths: &[usize], k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == 0 {
        out.push(prefix.clone());
        return;
    }
    for &len in lengths {
        if len <= k {
            prefix.push(len);
            compositions(lengths, k - len, prefix, out);
            prefix.pop();
        }
    }
}

/// Every tiling of a length-`k` row, as lists of brick lengths.
pub fn enumerate_row_tilings(spec: &RowSpec, k: usize) -> Vec<Vec<usize>> {
    let lengths: Vec<usize> = spec.bricks.iter().map(|(l, _)| *l).collect();
    let mut out = Vec::new();
    let mut start = Vec::new();
    let rest = if spec.prefix > 0 {
        if spec.prefix > k {
            return out;
        }
        start.push(spec.prefix);
        k - spec.prefix
    } else {
        k
    };
    compositions(&lengths, rest, &mut start, &mut out);
    out
}

/// Weighted sum over all row tilings of length `k`.
pub fn row_weight_sum(spec: &RowSpec, k: usize) -> Polynomial {
    enumerate_row_tilings(spec, k)
        .iter()
        .map(|t| spec.row_weight(t).expect("enumerated tilings use allowed bricks"))
        .sum()
}

/// Cut positions strictly inside a row, i.e. partial sums of all but the last brick.
pub fn interior_boundaries(row: &[usize]) -> Vec<usize> {
    let mut pos = 0;
    let mut out = Vec::with_capacity(row.len());
    for &len in row.iter().take(row.len().saturating_sub(1)) {
        pos += len;
        out.push(pos);
    }
    out
}

/// Two stacked rows of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairTiling {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl PairTiling {
    /// `None` if the rows have different lengths.
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Option<Self> {
        (top.iter().sum::<usize>() == bottom.iter().sum::<usize>()).then_some(PairTiling { top, bottom })
    }

    pub fn len(&self) -> usize {
        self.top.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Interior positions that are boundaries in both rows.
    pub fn fault_lines(&self) -> Vec<usize> {
        let top: BTreeSet<usize> = interior_boundaries(&self.top).into_iter().collect();
        interior_boundaries(&self.bottom)
            .into_iter()
            .filter(|p| top.contains(p))
            .collect()
    }

    /// No interior fault line. The empty tiling is not a prime block.
    pub fn is_prime(&self) -> bool {
        !self.is_empty() && self.fault_lines().is_empty()
    }

    pub fn weight(&self, top: &RowSpec, bottom: &RowSpec) -> Option<Polynomial> {
        Some(top.row_weight(&self.top)? * bottom.row_weight(&self.bottom)?)
    }

    /// Concatenation, left to right.
    pub fn concat(&self, other: &PairTiling) -> PairTiling {
        PairTiling {
            top: self.top.iter().chain(&other.top).copied().collect(),
            bottom: self.bottom.iter().chain(&other.bottom).copied().collect(),
        }
    }

    /// Two-row picture with `|` at brick boundaries and `+` under interior
    /// fault lines. Squares render as `o`, longer bricks as `=`.
    pub fn render(&self) -> String {
        let k = self.len();
        let faults: BTreeSet<usize> = self.fault_lines().into_iter().collect();
        let mut s = String::new();
        s.push_str(&render_row(&self.top, 0));
        s.push('\n');
        s.push_str(&render_row(&self.bottom, 0));
        s.push('\n');
        for p in 0..=k {
            s.push(if faults.contains(&p) { '+' } else { ' ' });
            if p < k {
                s.push(' ');
            }
        }
        s.trim_end().to_string()
    }
}

/// One row: boundary columns at even offsets, cells at odd offsets.
pub(crate) fn render_row(row: &[usize], indent: usize) -> String {
    let mut s = " ".repeat(2 * indent);
    s.push('|');
    for &len in row {
        let fill = if len == 1 { 'o' } else { '=' };
        for i in 0..len {
            s.push(fill);
            s.push(if i + 1 == len { '|' } else { fill });
        }
    }
    s
}

/// Every pair tiling of length `k` with its weight.
pub fn enumerate_pair_tilings(top: &RowSpec, bottom: &RowSpec, k: usize) -> Vec<(PairTiling, Polynomial)> {
    let tops: Vec<(Vec<usize>, Polynomial)> = enumerate_row_tilings(top, k)
        .into_iter()
        .map(|t| {
            let w = top.row_weight(&t).expect("allowed bricks");
            (t, w)
        })
        .collect();
    let bottoms: Vec<(Vec<usize>, Polynomial)> = enumerate_row_tilings(bottom, k)
        .into_iter()
        .map(|t| {
            let w = bottom.row_weight(&t).expect("allowed bricks");
            (t, w)
        })
        .collect();
    let mut out = Vec::with_capacity(tops.len() * bottoms.len());
    for (t, wt) in &tops {
        for (b, wb) in &bottoms {
            out.push((
                PairTiling {
                    top: t.clone(),
                    bottom: b.clone(),
                },
                wt * wb,
            ));
        }
    }
    out
}

/// Weighted count of pair tilings of length `k`.
pub fn weighted_pair_count(top: &RowSpec, bottom: &RowSpec, k: usize) -> Polynomial {
    enumerate_pair_tilings(top, bottom, k).into_iter().map(|(_, w)| w).sum()
}

/// Cuts a pair tiling at every interior fault line.
pub fn prime_factorize(t: &PairTiling) -> Vec<PairTiling> {
    let mut blocks = Vec::new();
    let (mut ti, mut bi) = (0, 0);
    let (mut tpos, mut bpos) = (0, 0);
    let (mut tstart, mut bstart) = (0, 0);
    while ti < t.top.len() || bi < t.bottom.len() {
        // Advance whichever row is behind; ties advance the top row.
        if bi >= t.bottom.len() || (ti < t.top.len() && tpos <= bpos) {
            tpos += t.top[ti];
            ti += 1;
        } else {
            bpos += t.bottom[bi];
            bi += 1;
        }
        if tpos == bpos && ti > tstart && bi > bstart {
            blocks.push(PairTiling {
                top: t.top[tstart..ti].to_vec(),
                bottom: t.bottom[bstart..bi].to_vec(),
            });
            tstart = ti;
            bstart = bi;
        }
    }
    blocks
}

/// All prime pair tilings of length `k` with their weights.
pub fn prime_blocks(top: &RowSpec, bottom: &RowSpec, k: usize) -> Vec<(PairTiling, Polynomial)> {
    enumerate_pair_tilings(top, bottom, k)
        .into_iter()
        .filter(|(t, _)| t.is_prime())
        .collect()
}

/// Weighted count of prime blocks of length `k`. With a prefix on either row
/// these are the first blocks.
pub fn enumerate_prime_blocks(top: &RowSpec, bottom: &RowSpec, k: usize) -> Polynomial {
    prime_blocks(top, bottom, k).into_iter().map(|(_, w)| w).sum()
}

/// Lengths a prime block can have when the bottom row uses bricks `{1, n}`:
/// `1`, `2`, and `n j`, `n j + 1`, `n j + 2` for `j >= 1`.
pub fn in_prime_length_classes(n: usize, len: usize) -> bool {
    if len == 1 || len == 2 {
        return true;
    }
    (0..=2).any(|off| len >= n + off && (len - off).is_multiple_of(n))
}

/// Multi-line listing of tilings with their weights, for the CLI.
pub fn render_listing(items: &[(PairTiling, Polynomial)]) -> String {
    let mut s = String::new();
    for (t, w) in items {
        let _ = writeln!(s, "weight {w}");
        let _ = writeln!(s, "{}", t.render());
    }
    s
}
