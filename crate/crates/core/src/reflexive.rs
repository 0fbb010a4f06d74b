//! The `Z^3`-graded module `R0` of a singular rank-2 toric reflexive sheaf.
//!
//! `R0` is spanned by three shifted octants of labels `e1, e2, e3` sitting over
//! the generator weights
//!
//! ```text
//! g1 = (v1, v2, 0)   g2 = (v1, 0, v3)   g3 = (0, v2, v3)
//! ```
//!
//! modulo the diagonal `e1 + e2 + e3` wherever all three octants overlap
//! (that is, on `w >= (v1, v2, v3)`). Any two octants overlap exactly on that
//! triple region, so fibers have dimension 0, 1 or 2.
//!
//! On the triple region the fiber is written in the basis `(e1, e2)` with
//! `e3 = -e1 - e2`; elsewhere the single present label is the basis. With this
//! convention every multiplication matrix has entries in `{-1, 0, 1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Ambient, MonomialIdeal};

pub type Weight = [i64; 3];

/// Box dimensions `(v1, v2, v3)`, all positive. The twist `u` is always
/// normalized to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 3]", into = "[i64; 3]")]
pub struct ReflexiveParams([usize; 3]);

impl ReflexiveParams {
    pub fn new(v1: usize, v2: usize, v3: usize) -> Result<Self> {
        if v1 == 0 || v2 == 0 || v3 == 0 {
            return Err(Error::NonPositiveParams(v1 as i64, v2 as i64, v3 as i64));
        }
        Ok(Self([v1, v2, v3]))
    }

    pub fn as_array(&self) -> [usize; 3] {
        self.0
    }

    /// `v1 * v2 * v3`, the length of the singular subscheme.
    /// `v1 v2 v3`, saturating at `usize::MAX`.
    pub fn volume(&self) -> usize {
        self.0.iter().fold(1usize, |acc, &x| acc.saturating_mul(x))
    }

    pub fn max_side(&self) -> usize {
        *self.0.iter().max().unwrap()
    }

    /// Reorders the sides; `perm[i]` names the source index of side `i`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        Self([self.0[perm[0]], self.0[perm[1]], self.0[perm[2]]])
    }

    /// Generator weights `g1, g2, g3`.
    pub fn generators(&self) -> [Weight; 3] {
        let [a, b, c] = self.0.map(|x| x as i64);
        [[a, b, 0], [a, 0, c], [0, b, c]]
    }

    /// Corner of the triple-overlap region.
    pub fn corner(&self) -> Weight {
        self.0.map(|x| x as i64)
    }
}

impl TryFrom<[i64; 3]> for ReflexiveParams {
    type Error = Error;

    fn try_from(v: [i64; 3]) -> Result<Self> {
        if v.iter().any(|&x| x <= 0) {
            return Err(Error::NonPositiveParams(v[0], v[1], v[2]));
        }
        Self::new(v[0] as usize, v[1] as usize, v[2] as usize)
    }
}

impl From<ReflexiveParams> for [i64; 3] {
    fn from(p: ReflexiveParams) -> Self {
        p.corner()
    }
}

impl std::fmt::Display for ReflexiveParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

pub(crate) fn dominates(w: &Weight, g: &Weight) -> bool {
    w.iter().zip(g).all(|(a, b)| a >= b)
}

pub(crate) fn shift(w: Weight, k: usize) -> Weight {
    let mut out = w;
    out[k] += 1;
    out
}

/// Label vector `(1, 1, 1)`, zero in every triple-overlap fiber.
pub const RELATION: [i64; 3] = [1, 1, 1];

/// Label vector spanning the sub-line-bundle `L0` (any generic choice works).
pub const COSECTION_LINE: [i64; 3] = [1, 1, 0];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDescription {
    pub weight: Weight,
    /// Generator regions (1-based) containing the weight.
    pub present: Vec<u8>,
    pub dim: usize,
    /// Coset representatives, as label vectors over `(e1, e2, e3)`.
    pub basis: Vec<[i64; 3]>,
    pub relation: Option<[i64; 3]>,
}

impl FiberDescription {
    /// Coordinates of a label vector in this fiber's basis. Labels of absent
    /// regions must be zero.
    pub fn coords(&self, label: [i64; 3]) -> Vec<i64> {
        match self.present.as_slice() {
            [] => vec![],
            [i] => vec![label[*i as usize - 1]],
            _ => vec![label[0] - label[2], label[1] - label[2]],
        }
    }
}

pub fn fiber(v: ReflexiveParams, w: Weight) -> FiberDescription {
    let present: Vec<u8> = v
        .generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| dominates(&w, g))
        .map(|(i, _)| i as u8 + 1)
        .collect();
    let unit = |i: u8| {
        let mut e = [0; 3];
        e[i as usize - 1] = 1;
        e
    };
    let (dim, basis, relation) = match present.len() {
        0 => (0, vec![], None),
        1 => (1, vec![unit(present[0])], None),
        3 => (2, vec![unit(1), unit(2)], Some(RELATION)),
        // two octants never overlap outside the triple region
        _ => unreachable!("two-region weight {w:?}"),
    };
    FiberDescription {
        weight: w,
        present,
        dim,
        basis,
        relation,
    }
}

pub fn fiber_dim(v: ReflexiveParams, w: Weight) -> usize {
    let n = v.generators().iter().filter(|g| dominates(&w, g)).count();
    n.min(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultMap {
    pub source: Weight,
    /// 1-based coordinate direction.
    pub direction: usize,
    /// `target_dim` rows by `source_dim` columns.
    pub matrix: Vec<Vec<i64>>,
}

impl MultMap {
    pub fn source_dim(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.matrix.iter().map(|row| row[j]).collect()
    }
}

/// Multiplication by `x_k` from the fiber at `w` to the fiber at `w + e_k`.
/// `k` is 1-based.
pub fn mult_matrix(v: ReflexiveParams, w: Weight, k: usize) -> MultMap {
    assert!((1..=3).contains(&k), "direction must be 1, 2 or 3");
    let src = fiber(v, w);
    let dst = fiber(v, shift(w, k - 1));
    let cols: Vec<Vec<i64>> = src.basis.iter().map(|&b| dst.coords(b)).collect();
    let matrix = (0..dst.dim)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    MultMap {
        source: w,
        direction: k,
        matrix,
    }
}

/// Ideal `(x1^v1, x2^v2, x3^v3)` of the singular subscheme.
pub fn sing_ideal(v: ReflexiveParams) -> MonomialIdeal {
    let [a, b, c] = v.as_array();
    MonomialIdeal::new(vec![[a, 0, 0], [0, b, 0], [0, 0, c]], Ambient::Full)
        .expect("pure powers form an antichain")
}

/// Ideal `(x1^v1 x2^v2, x1^v1 x3^v3, x2^v2 x3^v3)` of the thickened axes.
pub fn axes_ideal(v: ReflexiveParams) -> MonomialIdeal {
    let gens = v.generators().map(|g| g.map(|x| x as usize)).to_vec();
    MonomialIdeal::new(gens, Ambient::Full).expect("generator weights form an antichain")
}

/// Inclusive box of weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Weight,
    pub hi: Weight,
}

impl Window {
    pub fn cube(lo: i64, hi: i64) -> Self {
        Self {
            lo: [lo; 3],
            hi: [hi; 3],
        }
    }

    pub fn contains(&self, w: &Weight) -> bool {
        (0..3).all(|i| self.lo[i] <= w[i] && w[i] <= self.hi[i])
    }

    pub fn weights(&self) -> impl Iterator<Item = Weight> + '_ {
        let r = |i: usize| self.lo[i]..=self.hi[i];
        r(0).flat_map(move |a| r(1).flat_map(move |b| r(2).map(move |c| [a, b, c])))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCheck {
    pub weight: Weight,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionReport(pub Vec<WeightCheck>);

impl DimensionReport {
    pub fn all_ok(&self) -> bool {
        self.0.iter().all(|c| c.ok)
    }

    pub fn first_mismatch(&self) -> Option<&WeightCheck> {
        self.0.iter().find(|c| !c.ok)
    }
}

/// `dim (L0)_w`: the image of [`COSECTION_LINE`] on the triple region.
pub fn cosection_dim(v: ReflexiveParams, w: Weight) -> usize {
    let f = fiber(v, w);
    if f.dim == 2 && f.coords(COSECTION_LINE).iter().any(|&x| x != 0) {
        1
    } else {
        0
    }
}

/// Compares `dim (R0)_w - dim (L0)_w` with the graded dimension of the
/// thickened-axes ideal at every weight in the window.
pub fn check_cosection_quotient(v: ReflexiveParams, window: Window) -> DimensionReport {
    let ideal = axes_ideal(v);
    let checks = window
        .weights()
        .map(|w| {
            let lhs = fiber(v, w).dim - cosection_dim(v, w);
            let rhs = match w.iter().all(|&x| x >= 0) {
                true => ideal.contains(w.map(|x| x as usize)) as usize,
                false => 0,
            };
            WeightCheck {
                weight: w,
                lhs_dim: lhs,
                rhs_dim: rhs,
                ok: lhs == rhs,
            }
        })
        .collect();
    DimensionReport(checks)
}

/// Graded dimension count of `0 -> L0 -> N1 + N2 + N3 -> R0 -> 0`.
/// `lhs_dim` is `dim N1 + dim N2 + dim N3`, `rhs_dim` is `dim L0 + dim R0`.
pub fn check_resolution_dims(v: ReflexiveParams, window: Window) -> DimensionReport {
    let gens = v.generators();
    let checks = window
        .weights()
        .map(|w| {
            let lhs = gens.iter().filter(|g| dominates(&w, g)).count();
            let rhs = cosection_dim(v, w) + fiber(v, w).dim;
            WeightCheck {
                weight: w,
                lhs_dim: lhs,
                rhs_dim: rhs,
                ok: lhs == rhs,
            }
        })
        .collect();
    DimensionReport(checks)
}
