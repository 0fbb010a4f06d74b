//! Plane partitions, their box-confined counts, and monomial ideals.
//!
//! A plane partition is stored by its height matrix `h[a][b]`, the number of
//! boxes stacked over `(a, b)`. Rows and columns are weakly decreasing and
//! zero entries are trimmed, so each partition has exactly one representation.
//! Enumerations are returned in lexicographic order of the row sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{guard, Error, Result};
use crate::reflexive::ReflexiveParams;
use crate::series::TruncatedSeries;

pub const DEFAULT_ENUM_GUARD: usize = 12;
pub const DEFAULT_DP_STATE_GUARD: usize = 10_000_000;
pub const DEFAULT_IDEAL_CELL_GUARD: usize = 64;

pub type Monomial = [usize; 3];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePartition {
    heights: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates and normalizes a height matrix (trailing zeros and empty
    /// rows are dropped).
    pub fn from_heights(mut heights: Vec<Vec<u32>>) -> Result<Self> {
        for row in heights.iter_mut() {
            while row.last() == Some(&0) {
                row.pop();
            }
        }
        while heights.last().is_some_and(Vec::is_empty) {
            heights.pop();
        }
        for (a, row) in heights.iter().enumerate() {
            if row.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidPartition(format!("row {a} increases")));
            }
            if row.contains(&0) {
                return Err(Error::InvalidPartition(format!(
                    "row {a} has an interior zero"
                )));
            }
            if a > 0 {
                let prev = &heights[a - 1];
                if row.len() > prev.len() || row.iter().zip(prev).any(|(x, y)| x > y) {
                    return Err(Error::InvalidPartition(format!(
                        "column increases at row {a}"
                    )));
                }
            }
        }
        Ok(Self { heights })
    }

    pub fn from_boxes<I: IntoIterator<Item = Monomial>>(boxes: I) -> Result<Self> {
        let boxes: Vec<Monomial> = boxes.into_iter().collect();
        let mut set = std::collections::HashSet::new();
        for b in &boxes {
            if !set.insert(*b) {
                return Err(Error::InvalidPartition(format!("duplicate box {b:?}")));
            }
        }
        for &[a, b, c] in &boxes {
            let below = [
                (a > 0).then(|| [a - 1, b, c]),
                (b > 0).then(|| [a, b - 1, c]),
                (c > 0).then(|| [a, b, c - 1]),
            ];
            if let Some(m) = below.into_iter().flatten().find(|m| !set.contains(m)) {
                return Err(Error::InvalidPartition(format!(
                    "box {:?} present but {m:?} missing",
                    [a, b, c]
                )));
            }
        }
        let rows = boxes.iter().map(|m| m[0] + 1).max().unwrap_or(0);
        let cols = boxes.iter().map(|m| m[1] + 1).max().unwrap_or(0);
        let mut heights = vec![vec![0u32; cols]; rows];
        for &[a, b, _] in &boxes {
            heights[a][b] += 1;
        }
        Self::from_heights(heights)
    }

    pub fn heights(&self) -> &[Vec<u32>] {
        &self.heights
    }

    pub fn size(&self) -> usize {
        self.heights.iter().flatten().map(|&h| h as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// Boxes `(a, b, c)` in lexicographic order.
    pub fn boxes(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.size());
        for (a, row) in self.heights.iter().enumerate() {
            for (b, &h) in row.iter().enumerate() {
                out.extend((0..h as usize).map(|c| [a, b, c]));
            }
        }
        out
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.heights
            .get(m[0])
            .and_then(|row| row.get(m[1]))
            .is_some_and(|&h| (m[2] as u32) < h)
    }

    /// Extent along each axis.
    pub fn extent(&self) -> [usize; 3] {
        [
            self.heights.len(),
            self.heights.first().map_or(0, Vec::len),
            self.heights
                .first()
                .and_then(|r| r.first())
                .map_or(0, |&h| h as usize),
        ]
    }

    pub fn fits_in(&self, v: ReflexiveParams) -> bool {
        self.extent().iter().zip(v.as_array()).all(|(e, b)| *e <= b)
    }
}

impl Serialize for PlanePartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.boxes().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlanePartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let boxes = Vec::<Monomial>::deserialize(deserializer)?;
        Self::from_boxes(boxes).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy)]
struct Bounds {
    rows: usize,
    cols: usize,
    height: u32,
}

/// Calls `f` on every height matrix of total `n` within `bounds`, in
/// lexicographic order of the row sequence.
fn for_each_partition(n: usize, bounds: Bounds, f: &mut dyn FnMut(&[Vec<u32>])) {
    fn rows(
        remaining: usize,
        bounds: Bounds,
        acc: &mut Vec<Vec<u32>>,
        f: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if remaining == 0 {
            f(acc);
            return;
        }
        if acc.len() == bounds.rows {
            return;
        }
        let cap: Vec<u32> = match acc.last() {
            Some(prev) => prev.clone(),
            None => vec![bounds.height; bounds.cols],
        };
        let mut row = Vec::new();
        row_choices(remaining, &cap, &mut row, &mut |r| {
            let s: usize = r.iter().map(|&x| x as usize).sum();
            acc.push(r.to_vec());
            rows(remaining - s, bounds, acc, f);
            acc.pop();
        });
    }

    // nonempty weakly decreasing rows with positive entries under `cap`,
    // visited in lexicographic order
    fn row_choices(budget: usize, cap: &[u32], row: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if !row.is_empty() {
            f(row);
        }
        let j = row.len();
        if j == cap.len() {
            return;
        }
        let hi = cap[j]
            .min(row.last().copied().unwrap_or(u32::MAX))
            .min(budget as u32);
        for h in 1..=hi {
            row.push(h);
            row_choices(budget - h as usize, cap, row, f);
            row.pop();
        }
    }

    let mut acc = Vec::new();
    rows(n, bounds, &mut acc, f);
}

/// Every plane partition of size exactly `n`.
pub fn enumerate_plane_partitions(n: usize) -> Result<Vec<PlanePartition>> {
    enumerate_plane_partitions_guarded(n, DEFAULT_ENUM_GUARD)
}

pub fn enumerate_plane_partitions_guarded(n: usize, limit: usize) -> Result<Vec<PlanePartition>> {
    guard("plane partition size", n, limit)?;
    let bounds = Bounds {
        rows: n,
        cols: n,
        height: n as u32,
    };
    let mut out = Vec::new();
    for_each_partition(n, bounds, &mut |h| {
        out.push(PlanePartition {
            heights: h.to_vec(),
        })
    });
    out.sort();
    Ok(out)
}

/// Plane partitions of size `n` inside the `v1 x v2 x v3` box.
pub fn enumerate_box_partitions(v: ReflexiveParams, n: usize) -> Vec<PlanePartition> {
    let [a, b, c] = v.as_array();
    let mut out = Vec::new();
    if n <= v.volume() {
        let bounds = Bounds {
            rows: a,
            cols: b,
            height: c as u32,
        };
        for_each_partition(n, bounds, &mut |h| {
            out.push(PlanePartition {
                heights: h.to_vec(),
            })
        });
    }
    out
}

/// Number of plane partitions of size `n` inside the box, by direct
/// enumeration.
pub fn count_box_partitions(v: ReflexiveParams, n: usize) -> u64 {
    if n > v.volume() {
        return 0;
    }
    let [a, b, c] = v.as_array();
    let bounds = Bounds {
        rows: a,
        cols: b,
        height: c as u32,
    };
    let mut count = 0u64;
    for_each_partition(n, bounds, &mut |_| count += 1);
    count
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Weakly decreasing tuples dominated componentwise by `cap` with entry sum
/// at most `budget`.
fn dominated_states(cap: &[u32], budget: usize, f: &mut dyn FnMut(&[u32], usize)) {
    fn go(
        cap: &[u32],
        left: usize,
        cur: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32], usize),
        sum: usize,
    ) {
        let j = cur.len();
        if j == cap.len() {
            f(cur, sum);
            return;
        }
        let hi = cap[j]
            .min(cur.last().copied().unwrap_or(u32::MAX))
            .min(left as u32);
        for h in 0..=hi {
            cur.push(h);
            go(cap, left - h as usize, cur, f, sum + h as usize);
            cur.pop();
        }
    }
    go(cap, budget, &mut Vec::with_capacity(cap.len()), f, 0);
}

/// Box generating polynomial by a row-transfer DP over height profiles.
///
/// A state is a weakly decreasing row of `v2` heights in `[0, v3]`; each of
/// the `v1` rows must be dominated by the one before it.
pub fn box_partition_polynomial_dp(v: ReflexiveParams) -> Result<TruncatedSeries> {
    box_partition_polynomial_dp_guarded(v, DEFAULT_DP_STATE_GUARD)
}

pub fn box_partition_polynomial_dp_guarded(
    v: ReflexiveParams,
    max_states: usize,
) -> Result<TruncatedSeries> {
    let [_, cols, height] = v.as_array();
    let states = binomial(cols + height, cols);
    guard(
        "DP state count",
        states.min(usize::MAX as u128) as usize,
        max_states,
    )?;
    Ok(box_partition_series_dp(v, v.volume()))
}

/// The same transfer DP truncated at `order`; rows whose height sum already
/// exceeds the order are never generated, so large boxes stay cheap.
pub fn box_partition_series_dp(v: ReflexiveParams, order: usize) -> TruncatedSeries {
    let [rows, cols, height] = v.as_array();

    let mut layer: BTreeMap<Vec<u32>, Vec<BigInt>> = BTreeMap::new();
    let mut one = vec![BigInt::zero(); order + 1];
    one[0] = BigInt::one();
    layer.insert(vec![height as u32; cols], one);

    for _ in 0..rows {
        let mut next: BTreeMap<Vec<u32>, Vec<BigInt>> = BTreeMap::new();
        for (cap, poly) in &layer {
            dominated_states(cap, order, &mut |s, shift| {
                let slot = next
                    .entry(s.to_vec())
                    .or_insert_with(|| vec![BigInt::zero(); order + 1]);
                for (k, c) in poly.iter().enumerate().take(order + 1 - shift) {
                    if !c.is_zero() {
                        slot[k + shift] += c;
                    }
                }
            });
        }
        layer = next;
    }

    let mut total = vec![BigInt::zero(); order + 1];
    for poly in layer.values() {
        for (t, c) in total.iter_mut().zip(poly) {
            *t += c;
        }
    }
    TruncatedSeries::from_coeffs(total, order)
}

/// Number of ordered pairs of plane partitions with total size `n`.
pub fn count_partition_pairs(n: usize) -> Result<u64> {
    count_partition_pairs_guarded(n, DEFAULT_ENUM_GUARD)
}

pub fn count_partition_pairs_guarded(n: usize, limit: usize) -> Result<u64> {
    guard("partition pair size", n, limit)?;
    let counts = (0..=n)
        .map(|k| enumerate_plane_partitions_guarded(k, limit).map(|v| v.len() as u64))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=n).map(|k| counts[k] * counts[n - k]).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    /// `C[x1, x2, x3]`.
    Full,
    /// `C[x1, x2, x3] / (x1^v1, x2^v2, x3^v3)`.
    Box(ReflexiveParams),
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
    ambient: Ambient,
}

fn divides(g: &Monomial, m: &Monomial) -> bool {
    g.iter().zip(m).all(|(a, b)| a <= b)
}

fn in_box(m: &Monomial, v: ReflexiveParams) -> bool {
    m.iter().zip(v.as_array()).all(|(a, b)| *a < b)
}

impl MonomialIdeal {
    /// Generators must be an antichain. In the box ambient, generators
    /// outside the box are zero and are dropped.
    pub fn new(mut generators: Vec<Monomial>, ambient: Ambient) -> Result<Self> {
        if let Ambient::Box(v) = ambient {
            generators.retain(|g| in_box(g, v));
        }
        generators.sort();
        generators.dedup();
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if divides(a, b) || divides(b, a) {
                    return Err(Error::NotAntichain);
                }
            }
        }
        Ok(Self {
            generators,
            ambient,
        })
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn contains(&self, m: Monomial) -> bool {
        if let Ambient::Box(v) = self.ambient {
            if !in_box(&m, v) {
                return true;
            }
        }
        self.generators.iter().any(|g| divides(g, &m))
    }

    /// Bounding box of the standard monomials, if finite.
    fn standard_extent(&self) -> Result<[usize; 3]> {
        match self.ambient {
            Ambient::Box(v) => Ok(v.as_array()),
            Ambient::Full => {
                let mut ext = [0; 3];
                for (i, e) in ext.iter_mut().enumerate() {
                    *e = self
                        .generators
                        .iter()
                        .filter(|g| (0..3).all(|j| j == i || g[j] == 0))
                        .map(|g| g[i])
                        .min()
                        .ok_or(Error::InfiniteColength)?;
                }
                Ok(ext)
            }
        }
    }

    /// Monomials outside the ideal, in lexicographic order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let [a, b, c] = self.standard_extent()?;
        let mut out = Vec::new();
        for i in 0..a {
            for j in 0..b {
                for k in 0..c {
                    if !self.contains([i, j, k]) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn colength(&self) -> Result<usize> {
        self.standard_monomials().map(|s| s.len())
    }
}

/// The ideal spanned by all monomials outside the partition.
pub fn partition_to_monomial_ideal(p: &PlanePartition, ambient: Ambient) -> Result<MonomialIdeal> {
    if let Ambient::Box(v) = ambient {
        if !p.fits_in(v) {
            let [a, b, c] = v.as_array();
            return Err(Error::OutsideBox(a, b, c));
        }
    }
    // minimal monomials outside p lie in the extent grown by one
    let [ea, eb, ec] = p.extent();
    let mut gens = Vec::new();
    for i in 0..=ea {
        for j in 0..=eb {
            for k in 0..=ec {
                let m = [i, j, k];
                if p.contains(m) {
                    continue;
                }
                let below_inside = (0..3).all(|t| {
                    if m[t] == 0 {
                        return true;
                    }
                    let mut d = m;
                    d[t] -= 1;
                    p.contains(d)
                });
                if below_inside {
                    gens.push(m);
                }
            }
        }
    }
    MonomialIdeal::new(gens, ambient)
}

pub fn monomial_ideal_to_partition(ideal: &MonomialIdeal) -> Result<PlanePartition> {
    PlanePartition::from_boxes(ideal.standard_monomials()?)
}

/// Every monomial ideal of `C[x1,x2,x3]/(x1^v1, x2^v2, x3^v3)`, found by
/// enumerating antichains of box monomials as generator sets.
pub fn enumerate_box_monomial_ideals(v: ReflexiveParams) -> Result<Vec<MonomialIdeal>> {
    enumerate_box_monomial_ideals_guarded(v, DEFAULT_IDEAL_CELL_GUARD)
}

pub fn enumerate_box_monomial_ideals_guarded(
    v: ReflexiveParams,
    max_cells: usize,
) -> Result<Vec<MonomialIdeal>> {
    guard("box cells", v.volume(), max_cells)?;
    let [a, b, c] = v.as_array();
    let cells: Vec<Monomial> = (0..a)
        .flat_map(|i| (0..b).flat_map(move |j| (0..c).map(move |k| [i, j, k])))
        .collect();

    fn go(
        cells: &[Monomial],
        idx: usize,
        chosen: &mut Vec<Monomial>,
        out: &mut Vec<Vec<Monomial>>,
    ) {
        if idx == cells.len() {
            out.push(chosen.clone());
            return;
        }
        go(cells, idx + 1, chosen, out);
        let m = cells[idx];
        if chosen.iter().all(|g| !divides(g, &m) && !divides(&m, g)) {
            chosen.push(m);
            go(cells, idx + 1, chosen, out);
            chosen.pop();
        }
    }
    let mut antichains = Vec::new();
    go(&cells, 0, &mut Vec::new(), &mut antichains);
    antichains
        .into_iter()
        .map(|g| MonomialIdeal::new(g, Ambient::Box(v)))
        .collect()
}
