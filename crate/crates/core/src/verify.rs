//! Verification reports comparing independently computed coefficient lists.

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{guard, Result};
use crate::partitions::{
    box_partition_polynomial_dp, count_box_partitions, count_partition_pairs_guarded,
    enumerate_box_monomial_ideals_guarded,
};
use crate::quotfixed::{quot_series_guarded, DEFAULT_QUOT_GUARD};
use crate::reflexive::{sing_ideal, ReflexiveParams};
use crate::series::{box_product, gky_rhs, macmahon, TruncatedSeries};

pub const DEFAULT_BOX_VOLUME_GUARD: usize = 40;
pub const DEFAULT_HILB_CELL_GUARD: usize = 36;
pub const DEFAULT_RANK2_GUARD: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// An auxiliary yes/no condition attached to a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideCheck {
    pub name: String,
    pub ok: bool,
}

mod decimal_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub params: serde_json::Value,
    #[serde(with = "decimal_list")]
    pub lhs: Vec<BigInt>,
    #[serde(with = "decimal_list")]
    pub rhs: Vec<BigInt>,
    #[serde(default)]
    pub side_checks: Vec<SideCheck>,
    pub status: Status,
    pub first_mismatch: Option<usize>,
    pub wall_time_us: u64,
}

impl VerificationReport {
    fn build(
        claim: &str,
        params: serde_json::Value,
        lhs: Vec<BigInt>,
        rhs: Vec<BigInt>,
        side_checks: Vec<SideCheck>,
        started: Instant,
    ) -> Self {
        let first_mismatch = lhs
            .iter()
            .zip(&rhs)
            .position(|(a, b)| a != b)
            .or_else(|| (lhs.len() != rhs.len()).then(|| lhs.len().min(rhs.len())));
        let ok = first_mismatch.is_none() && side_checks.iter().all(|c| c.ok);
        Self {
            claim: claim.to_string(),
            params,
            lhs,
            rhs,
            side_checks,
            status: if ok { Status::Pass } else { Status::Fail },
            first_mismatch,
            wall_time_us: started.elapsed().as_micros() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn side(name: &str, ok: bool) -> SideCheck {
    SideCheck {
        name: name.to_string(),
        ok,
    }
}

fn is_palindromic(c: &[BigInt]) -> bool {
    c.iter().eq(c.iter().rev())
}

/// Fixed-locus Euler characteristics against `M(q)^2` times the box product.
pub fn verify_thm_gky(v: ReflexiveParams, order: usize) -> Result<VerificationReport> {
    verify_thm_gky_guarded(v, order, DEFAULT_QUOT_GUARD)
}

pub fn verify_thm_gky_guarded(
    v: ReflexiveParams,
    order: usize,
    limit: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let lhs = quot_series_guarded(v, order, limit)?;
    let rhs = gky_rhs(v, order);
    Ok(VerificationReport::build(
        "gky",
        json!({ "v": v, "order": order }),
        lhs.coeffs().to_vec(),
        rhs.coeffs().to_vec(),
        vec![],
        started,
    ))
}

/// Box-confined partition counts three ways: enumeration (lhs), product
/// formula (rhs), and the transfer DP (side check).
pub fn verify_stanley(v: ReflexiveParams, order: Option<usize>) -> Result<VerificationReport> {
    let started = Instant::now();
    guard("box volume", v.volume(), DEFAULT_BOX_VOLUME_GUARD)?;
    let degree = v.volume();
    let order = order.unwrap_or(degree);
    let brute: Vec<BigInt> = (0..=order)
        .map(|n| count_box_partitions(v, n).into())
        .collect();
    let product = box_product(v, order);
    let dp = box_partition_polynomial_dp(v)?.with_order(order);
    let full = box_product(v, degree);
    let checks = vec![
        side("dp_matches_product", dp == product),
        side("palindromic", is_palindromic(full.coeffs())),
        side("degree_is_volume", full.degree() == Some(degree)),
    ];
    Ok(VerificationReport::build(
        "stanley",
        json!({ "v": v, "order": order }),
        brute,
        product.coeffs().to_vec(),
        checks,
        started,
    ))
}

/// Monomial ideals of the fat point `C[x,y,z]/(x^v1, y^v2, z^v3)` counted by
/// colength (lhs) against box partitions (rhs).
pub fn verify_hilb_remark(v: ReflexiveParams) -> Result<VerificationReport> {
    let started = Instant::now();
    let degree = v.volume();
    let ideals = enumerate_box_monomial_ideals_guarded(v, DEFAULT_HILB_CELL_GUARD)?;
    let mut by_colength = vec![0u64; degree + 1];
    for ideal in &ideals {
        by_colength[ideal.colength()?] += 1;
    }
    let lhs: Vec<BigInt> = by_colength.into_iter().map(BigInt::from).collect();
    let rhs: Vec<BigInt> = (0..=degree)
        .map(|n| count_box_partitions(v, n).into())
        .collect();
    let poly = TruncatedSeries::from_coeffs(lhs.clone(), degree);
    let checks = vec![
        side("degree_is_volume", poly.degree() == Some(degree)),
        side(
            "degree_is_sing_colength",
            Some(sing_ideal(v).colength()?) == poly.degree(),
        ),
        side("palindromic", is_palindromic(&lhs)),
    ];
    Ok(VerificationReport::build(
        "hilb",
        json!({ "v": v }),
        lhs,
        rhs,
        checks,
        started,
    ))
}

/// Pairs of plane partitions against `M(q)^2`.
pub fn verify_trivial_rank2(order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    guard("rank-2 order", order, DEFAULT_RANK2_GUARD)?;
    let lhs = (0..=order)
        .map(|n| count_partition_pairs_guarded(n, DEFAULT_RANK2_GUARD).map(BigInt::from))
        .collect::<Result<Vec<_>>>()?;
    let m = macmahon(order);
    let rhs = m.mul(&m)?;
    Ok(VerificationReport::build(
        "rank2free",
        json!({ "order": order }),
        lhs,
        rhs.coeffs().to_vec(),
        vec![],
        started,
    ))
}

/// Orders reports by claim, then by parameters.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| {
        a.claim
            .cmp(&b.claim)
            .then_with(|| a.params.to_string().cmp(&b.params.to_string()))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: usize, b: usize, c: usize) -> ReflexiveParams {
        ReflexiveParams::new(a, b, c).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn gky_small() {
        let r = verify_thm_gky(p(1, 1, 1), 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.lhs, ints(&[1, 3, 9, 25]));
        let r = verify_thm_gky(p(2, 1, 1), 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.rhs, ints(&[1, 3, 10]));
        let r = verify_thm_gky(p(1, 1, 1), 0).unwrap();
        assert_eq!((r.lhs.clone(), r.passed()), (ints(&[1]), true));
    }

    #[test]
    fn stanley_small() {
        let r = verify_stanley(p(1, 1, 1), None).unwrap();
        assert!(r.passed());
        assert_eq!(r.rhs, ints(&[1, 1]));
        let r = verify_stanley(p(2, 2, 2), None).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs.len(), 9);
        let a = verify_stanley(p(3, 2, 1), None).unwrap();
        let b = verify_stanley(p(1, 2, 3), None).unwrap();
        assert!(a.passed() && b.passed());
        assert_eq!(a.lhs, b.lhs);
    }

    #[test]
    fn hilb_small() {
        let r = verify_hilb_remark(p(1, 1, 1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, ints(&[1, 1]));
        let r = verify_hilb_remark(p(2, 2, 1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs.len(), 5);
        let r = verify_hilb_remark(p(2, 2, 2)).unwrap();
        assert_eq!(r.lhs[8], BigInt::from(1));
    }

    #[test]
    fn rank2_small() {
        let r = verify_trivial_rank2(2).unwrap();
        assert_eq!(
            (r.lhs.clone(), r.rhs.clone()),
            (ints(&[1, 2, 7]), ints(&[1, 2, 7]))
        );
        assert!(verify_trivial_rank2(0).unwrap().passed());
        assert!(verify_trivial_rank2(11).is_err());
    }

    #[test]
    fn mismatch_is_reported() {
        let r = VerificationReport::build(
            "t",
            json!({}),
            ints(&[1, 2, 3]),
            ints(&[1, 2, 4]),
            vec![],
            Instant::now(),
        );
        assert_eq!((r.status, r.first_mismatch), (Status::Fail, Some(2)));
        let r = VerificationReport::build(
            "t",
            json!({}),
            ints(&[1]),
            ints(&[1, 0]),
            vec![],
            Instant::now(),
        );
        assert_eq!(r.first_mismatch, Some(1));
        let r = VerificationReport::build(
            "t",
            json!({}),
            ints(&[1]),
            ints(&[1]),
            vec![side("x", false)],
            Instant::now(),
        );
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn json_roundtrip_is_stable() {
        let r = verify_stanley(p(2, 1, 2), None).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
