//! Euler characteristics of `Quot(R0, n)` from its torus-fixed locus.
//!
//! A fixed point is a graded submodule `F` of `R0` of finite colength. Its
//! coprofile `c(w) = dim (R0)_w - dim F_w` is locally constant on the fixed
//! locus, so the locus is stratified by coprofiles. Within a stratum the only
//! freedom is a line `F_w` in each 2-dimensional fiber with `c(w) = 1`, and
//! the submodule condition `x_k F_w ⊆ F_{w+e_k}` turns into a
//! [`ConstraintSystem`] on a product of projective lines.

mod constraints;
mod euler;
mod oracle;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

pub use constraints::{Constraint, ConstraintSystem, Mat2, ProjPoint, VarId};
pub use euler::stratum_euler;
pub use oracle::{
    count_points, stratum_euler_oracle_fp, stratum_euler_oracle_fp_guarded,
    DEFAULT_ORACLE_VAR_GUARD, DEFAULT_PRIMES,
};

use crate::error::{guard, Result};
use crate::reflexive::{dominates, fiber_dim, mult_matrix, shift, ReflexiveParams, Weight, Window};
use crate::series::TruncatedSeries;

pub const DEFAULT_QUOT_GUARD: usize = 5;

/// Quotient fiber dimensions, keyed by weight; only positive entries stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coprofile(BTreeMap<Weight, usize>);

impl Coprofile {
    pub fn new(entries: impl IntoIterator<Item = (Weight, usize)>) -> Self {
        Self(entries.into_iter().filter(|&(_, c)| c > 0).collect())
    }

    pub fn get(&self, w: &Weight) -> usize {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.0.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Weight, &usize)> {
        self.0.iter()
    }

    /// Bounds by fiber dimension, and every non-generator support weight has
    /// a support predecessor.
    pub fn is_valid(&self, v: ReflexiveParams) -> bool {
        let gens = v.generators();
        self.0.iter().all(|(w, &c)| {
            c <= fiber_dim(v, *w) && (gens.contains(w) || has_support_predecessor(w, &self.0))
        })
    }
}

fn has_support_predecessor<T>(w: &Weight, support: &BTreeMap<Weight, T>) -> bool {
    (0..3).any(|k| {
        let mut p = *w;
        p[k] -= 1;
        support.contains_key(&p)
    })
}

impl Serialize for Coprofile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Coprofile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<(Weight, usize)>::deserialize(d)?;
        Ok(Self::new(entries))
    }
}

/// Coprofile supports are confined to `[0, max(v) + n]^3`.
pub fn search_window(v: ReflexiveParams, n: usize) -> Window {
    Window::cube(0, (v.max_side() + n) as i64)
}

/// Support sets of size `1..=n` in which every weight is a generator or has
/// a predecessor in the set, grown one weight at a time from the generators.
fn reachable_supports(v: ReflexiveParams, n: usize) -> Vec<BTreeSet<Weight>> {
    let gens = v.generators();
    let mut out = Vec::new();
    let mut level: HashSet<BTreeSet<Weight>> = HashSet::new();
    level.insert(BTreeSet::new());
    for _ in 0..n {
        let mut next = HashSet::new();
        for set in &level {
            let candidates = gens
                .iter()
                .copied()
                .chain(set.iter().flat_map(|w| (0..3).map(move |k| shift(*w, k))));
            for w in candidates {
                if !set.contains(&w) {
                    let mut grown = set.clone();
                    grown.insert(w);
                    next.insert(grown);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// All coprofiles of total `n`, in canonical (lexicographic) order.
pub fn enumerate_coprofiles(v: ReflexiveParams, n: usize) -> Result<Vec<Coprofile>> {
    enumerate_coprofiles_guarded(v, n, DEFAULT_QUOT_GUARD)
}

pub fn enumerate_coprofiles_guarded(
    v: ReflexiveParams,
    n: usize,
    limit: usize,
) -> Result<Vec<Coprofile>> {
    guard("quotient length", n, limit)?;
    if n == 0 {
        return Ok(vec![Coprofile::default()]);
    }
    let window = search_window(v, n);
    let mut out = Vec::new();
    for support in reachable_supports(v, n) {
        let weights: Vec<Weight> = support.into_iter().collect();
        assert!(
            weights.iter().all(|w| window.contains(w)),
            "support left the search window"
        );
        let caps: Vec<usize> = weights.iter().map(|w| fiber_dim(v, *w)).collect();
        distribute(&weights, &caps, n, &mut Vec::new(), &mut out);
    }
    out.sort();
    Ok(out)
}

fn distribute(
    weights: &[Weight],
    caps: &[usize],
    left: usize,
    acc: &mut Vec<usize>,
    out: &mut Vec<Coprofile>,
) {
    let i = acc.len();
    if i == weights.len() {
        if left == 0 {
            out.push(Coprofile::new(
                weights.iter().copied().zip(acc.iter().copied()),
            ));
        }
        return;
    }
    let rest = weights.len() - i - 1;
    for c in 1..=caps[i].min(left) {
        if left - c >= rest {
            acc.push(c);
            distribute(weights, caps, left - c, acc, out);
            acc.pop();
        }
    }
}

/// Submodule fiber `F_w` at a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SubFiber {
    Zero,
    Full(usize),
    Line(VarId),
}

/// Encodes `x_k F_w ⊆ F_{w+e_k}` for all weights as incidence constraints.
///
/// Works for any finitely supported map; profiles that violate the
/// coprofile invariants come out infeasible.
pub fn profile_constraint_system(v: ReflexiveParams, c: &Coprofile) -> ConstraintSystem {
    let mut vars: BTreeMap<Weight, VarId> = BTreeMap::new();
    for (w, &k) in c.entries() {
        if fiber_dim(v, *w) == 2 && k == 1 {
            let id = vars.len();
            vars.insert(*w, id);
        }
    }
    let mut cs = ConstraintSystem::new(vars.len());

    let sub = |w: &Weight| -> Option<SubFiber> {
        let d = fiber_dim(v, *w);
        let lost = c.get(w);
        if lost > d {
            return None;
        }
        Some(match (d - lost, vars.get(w)) {
            (0, _) => SubFiber::Zero,
            (_, Some(&id)) => SubFiber::Line(id),
            (k, None) => SubFiber::Full(k),
        })
    };

    // only pairs whose target lies in the support can constrain anything
    for target in c.support() {
        let Some(tgt) = sub(target) else {
            cs.mark_infeasible(format!("coprofile exceeds fiber dimension at {target:?}"));
            return cs;
        };
        for k in 0..3 {
            let mut source = *target;
            source[k] -= 1;
            let Some(src) = sub(&source) else {
                cs.mark_infeasible(format!("coprofile exceeds fiber dimension at {source:?}"));
                return cs;
            };
            let m = mult_matrix(v, source, k + 1);
            impose(&mut cs, src, &m.matrix, tgt, source, k + 1);
            if !cs.is_feasible() {
                return cs;
            }
        }
    }
    cs
}

fn as_mat2(m: &[Vec<i64>]) -> Mat2 {
    Mat2::new(
        m[0][0] as i128,
        m[0][1] as i128,
        m[1][0] as i128,
        m[1][1] as i128,
    )
}

fn impose(
    cs: &mut ConstraintSystem,
    src: SubFiber,
    m: &[Vec<i64>],
    tgt: SubFiber,
    w: Weight,
    k: usize,
) {
    let nonzero = m.iter().flatten().any(|&x| x != 0);
    match (src, tgt) {
        (SubFiber::Zero, _) | (_, SubFiber::Full(_)) => {}
        (SubFiber::Full(_), SubFiber::Zero) => {
            if nonzero {
                cs.mark_infeasible(format!("x{k} maps a full fiber at {w:?} into zero"));
            }
        }
        (SubFiber::Full(1), SubFiber::Line(t)) => {
            let col = [m[0][0] as i128, m[1][0] as i128];
            if let Some(p) = ProjPoint::new(col[0], col[1]) {
                cs.force(t, p);
            }
        }
        (SubFiber::Full(_), SubFiber::Line(t)) => {
            let mat = as_mat2(m);
            match mat.rank() {
                0 => {}
                1 => cs.force(t, mat.image().unwrap()),
                _ => cs.mark_infeasible(format!("x{k} maps a plane at {w:?} into a line")),
            }
        }
        (SubFiber::Line(s), SubFiber::Zero) => cs.annihilate(s, as_mat2(m)),
        (SubFiber::Line(s), SubFiber::Line(t)) => cs.relate(s, t, as_mat2(m)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub coprofile: Coprofile,
    pub euler: i64,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusSummary {
    pub v: ReflexiveParams,
    pub n: usize,
    pub strata: Vec<StratumRecord>,
    pub total: i64,
}

pub fn fixed_locus_summary(v: ReflexiveParams, n: usize) -> Result<FixedLocusSummary> {
    fixed_locus_summary_guarded(v, n, DEFAULT_QUOT_GUARD)
}

pub fn fixed_locus_summary_guarded(
    v: ReflexiveParams,
    n: usize,
    limit: usize,
) -> Result<FixedLocusSummary> {
    let strata: Vec<StratumRecord> = enumerate_coprofiles_guarded(v, n, limit)?
        .into_iter()
        .map(|coprofile| {
            let cs = profile_constraint_system(v, &coprofile);
            StratumRecord {
                euler: stratum_euler(&cs),
                feasible: cs.is_feasible(),
                coprofile,
            }
        })
        .collect();
    let total = strata.iter().map(|s| s.euler).sum();
    Ok(FixedLocusSummary {
        v,
        n,
        strata,
        total,
    })
}

/// `e(Quot(R0, n))`.
pub fn quot_fixed_euler(v: ReflexiveParams, n: usize) -> Result<i64> {
    fixed_locus_summary(v, n).map(|s| s.total)
}

/// `sum_n e(Quot(R0, n)) q^n` up to `order`.
pub fn quot_series(v: ReflexiveParams, order: usize) -> Result<TruncatedSeries> {
    quot_series_guarded(v, order, DEFAULT_QUOT_GUARD)
}

pub fn quot_series_guarded(
    v: ReflexiveParams,
    order: usize,
    limit: usize,
) -> Result<TruncatedSeries> {
    guard("series order", order, limit)?;
    let coeffs = (0..=order)
        .map(|n| fixed_locus_summary_guarded(v, n, limit).map(|s| s.total))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_coeffs(coeffs, order))
}

/// Whether `w` lies in some generator region.
pub fn in_support_region(v: ReflexiveParams, w: &Weight) -> bool {
    v.generators().iter().any(|g| dominates(w, g))
}
