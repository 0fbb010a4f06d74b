//! Truncated power series in `q` with arbitrary-precision integer coefficients.
//!
//! Every series carries an explicit truncation order `N` and stores exactly
//! `N + 1` coefficients (exponents `0..=N`). Binary operations require both
//! operands to share the same order; mixing orders is an error rather than a
//! silent re-truncation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::reflexive::ReflexiveParams;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(1, 0, order)
    }

    /// `c * q^k`, dropped entirely when `k > order`.
    pub fn monomial(c: impl Into<BigInt>, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c.into();
        }
        s
    }

    /// Builds a series from leading coefficients; missing entries are zero and
    /// entries beyond `order` are discarded.
    pub fn from_coeffs<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[k] = c.into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Exponent of the highest nonzero coefficient, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Same coefficients, re-truncated (or zero-padded) to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().cloned(), order)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order;
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self {
            order: n,
            coeffs: out,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    /// Multiplicative inverse up to the truncation order. The constant term
    /// must be `+1` or `-1`, so the inverse stays integral.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        let n = self.order;
        let mut out = vec![BigInt::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[k - i];
                }
            }
            // c0 is its own inverse
            out[k] = -(acc * c0);
        }
        Ok(Self {
            order: n,
            coeffs: out,
        })
    }

    /// In-place multiplication by `1 - q^k`.
    pub fn mul_one_minus_qk(&mut self, k: usize) {
        if k == 0 {
            self.coeffs.iter_mut().for_each(BigInt::set_zero);
            return;
        }
        for i in (k..=self.order).rev() {
            let t = self.coeffs[i - k].clone();
            self.coeffs[i] -= t;
        }
    }

    /// In-place division by `1 - q^k`, `k >= 1` (multiplication by the
    /// geometric series `1 + q^k + q^2k + ...`).
    pub fn div_one_minus_qk(&mut self, k: usize) {
        assert!(k >= 1, "1 - q^0 is not invertible");
        for i in k..=self.order {
            let t = self.coeffs[i - k].clone();
            self.coeffs[i] += t;
        }
    }

    /// Index of the first coefficient where the two series differ, comparing
    /// up to the smaller order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(BigInt::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                repr.order + 1,
                repr.order,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self {
            order: repr.order,
            coeffs,
        })
    }
}

/// The MacMahon function `prod_{k>=1} (1 - q^k)^{-k}` truncated at `order`,
/// via `n M_n = sum_{k=1}^n sigma_2(k) M_{n-k}`.
pub fn macmahon(order: usize) -> TruncatedSeries {
    let mut sigma2 = vec![BigInt::zero(); order + 1];
    for d in 1..=order {
        let sq = BigInt::from(d) * d;
        for m in (d..=order).step_by(d) {
            sigma2[m] += &sq;
        }
    }
    let mut m: Vec<BigInt> = Vec::with_capacity(order + 1);
    m.push(BigInt::one());
    for n in 1..=order {
        let sum: BigInt = (1..=n).map(|k| &sigma2[k] * &m[n - k]).sum();
        m.push(sum / n);
    }
    TruncatedSeries::from_coeffs(m, order)
}

/// Generating polynomial of plane partitions inside a `v1 x v2 x v3` box,
/// from the product `prod_{i<=v1, j<=v2} (1 - q^{i+j+v3-1}) / (1 - q^{i+j-1})`.
/// Factors with `i + j - 1 > order` are trivial and skipped.
pub fn box_product(v: ReflexiveParams, order: usize) -> TruncatedSeries {
    let [a, b, c] = v.as_array();
    let mut s = TruncatedSeries::one(order);
    for i in 1..=a.min(order) {
        for j in 1..=b.min(order + 1 - i) {
            s.mul_one_minus_qk(i + j + c - 1);
            s.div_one_minus_qk(i + j - 1);
        }
    }
    s
}

/// `M(q)^2` times the box polynomial.
pub fn gky_rhs(v: ReflexiveParams, order: usize) -> TruncatedSeries {
    let m = macmahon(order);
    m.mul(&m)
        .and_then(|m2| m2.mul(&box_product(v, order)))
        .expect("all factors share the order")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.iter().copied(), order)
    }

    fn p(a: usize, b: usize, c: usize) -> ReflexiveParams {
        ReflexiveParams::new(a, b, c).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(s(&[1, 1], 2).add(&s(&[1, -1], 2)).unwrap(), s(&[2], 2));
        let a = s(&[3, 0, 7], 2);
        assert_eq!(a.add(&TruncatedSeries::zero(2)).unwrap(), a);
        assert_eq!(
            s(&[1, 0, 3], 2).add(&s(&[0, 1, 1], 2)).unwrap(),
            s(&[1, 1, 4], 2)
        );
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = s(&[1], 2).add(&s(&[1], 3)).unwrap_err();
        assert!(matches!(err, Error::OrderMismatch { left: 2, right: 3 }));
        assert!(s(&[1], 2).mul(&s(&[1], 1)).is_err());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            s(&[1, 1], 2).mul(&s(&[1, -1], 2)).unwrap(),
            s(&[1, 0, -1], 2)
        );
        let a = s(&[4, -2, 9], 2);
        assert_eq!(a.mul(&TruncatedSeries::one(2)).unwrap(), a);
        let t = s(&[1, 1, 1], 2);
        assert_eq!(t.mul(&t).unwrap(), s(&[1, 2, 3], 2));
    }

    #[test]
    fn inv_examples() {
        assert_eq!(s(&[1, -1], 3).inv().unwrap(), s(&[1, 1, 1, 1], 3));
        assert_eq!(
            TruncatedSeries::one(3).inv().unwrap(),
            TruncatedSeries::one(3)
        );
        assert_eq!(s(&[1, 1], 3).inv().unwrap(), s(&[1, -1, 1, -1], 3));
        assert_eq!(s(&[-1, 1], 2).inv().unwrap(), s(&[-1, -1, -1], 2));
        assert!(matches!(
            s(&[2, 1], 3).inv(),
            Err(Error::NonUnitConstant(_))
        ));
        assert!(s(&[0, 1], 3).inv().is_err());
    }

    #[test]
    fn box_product_truncates_consistently() {
        let v = p(3, 4, 2);
        let full = box_product(v, v.volume());
        for order in [0, 1, 3, 7, 30] {
            assert_eq!(box_product(v, order), full.with_order(order));
        }
        assert_eq!(box_product(p(1_000_000, 1_000_000, 1), 2), s(&[1, 1, 2], 2));
    }

    #[test]
    fn macmahon_small_orders() {
        assert_eq!(macmahon(0), s(&[1], 0));
        assert_eq!(macmahon(5), s(&[1, 1, 3, 6, 13, 24], 5));
    }

    #[test]
    fn macmahon_matches_explicit_inverse_product() {
        // independent route through `inv` instead of in-place division
        let n = 12;
        let mut prod = TruncatedSeries::one(n);
        for k in 1..=n {
            let mut f = TruncatedSeries::one(n);
            f.mul_one_minus_qk(k);
            for _ in 0..k {
                prod = prod.mul(&f.inv().unwrap()).unwrap();
            }
        }
        assert_eq!(prod, macmahon(n));
    }

    #[test]
    fn box_product_examples() {
        assert_eq!(box_product(p(1, 1, 1), 3), s(&[1, 1], 3));
        assert_eq!(box_product(p(2, 1, 1), 3), s(&[1, 1, 1], 3));
        assert_eq!(box_product(p(1, 1, 1), 0), s(&[1], 0));
    }

    #[test]
    fn box_product_matches_triple_product() {
        // every (i,j,k) factor taken literally; the exponents i+j+k-2 are >= 1
        for (a, b, c) in [(1, 1, 1), (2, 2, 2), (1, 2, 3), (3, 2, 2)] {
            let order = a * b * c + 3;
            let mut lit = TruncatedSeries::one(order);
            for i in 1..=a {
                for j in 1..=b {
                    for k in 1..=c {
                        lit.mul_one_minus_qk(i + j + k - 1);
                        lit.div_one_minus_qk(i + j + k - 2);
                    }
                }
            }
            assert_eq!(lit, box_product(p(a, b, c), order), "v=({a},{b},{c})");
        }
    }

    #[test]
    fn gky_rhs_examples() {
        assert_eq!(gky_rhs(p(1, 1, 1), 3), s(&[1, 3, 9, 25], 3));
        assert_eq!(gky_rhs(p(2, 1, 1), 2), s(&[1, 3, 10], 2));
        for v in [p(3, 1, 2), p(2, 2, 2)] {
            assert_eq!(gky_rhs(v, 4).coeff(0), BigInt::one());
        }
    }

    #[test]
    fn degree_and_display() {
        assert_eq!(s(&[1, 0, 2, 0], 3).degree(), Some(2));
        assert_eq!(TruncatedSeries::zero(3).degree(), None);
        assert_eq!(s(&[1, -1, 0, 3], 3).to_string(), "1 - q + 3*q^3 + O(q^4)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(q^2)");
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(s(&[1, -3, 9], 2)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"order": 2, "coeffs": ["1", "-3", "9"]})
        );
        let back: TruncatedSeries = serde_json::from_value(v).unwrap();
        assert_eq!(back, s(&[1, -3, 9], 2));
        let bad = serde_json::json!({"order": 3, "coeffs": ["1"]});
        assert!(serde_json::from_value::<TruncatedSeries>(bad).is_err());
    }
}
