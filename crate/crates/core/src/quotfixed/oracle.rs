//! Finite-field point counting as an independent check on [`stratum_euler`].
//!
//! The constraint varieties are built from lines and points, so their point
//! counts over `F_p` are polynomial in `p` and the Euler characteristic is that
//! polynomial evaluated at 1. Systems whose loop automorphisms have
//! irrational eigenvalues do not have polynomial counts and are out of reach
//! here.
//!
//! [`stratum_euler`]: super::stratum_euler

use num_integer::Integer;

use super::constraints::{Constraint, ConstraintSystem};
use crate::error::{guard, Error, Result};

pub const DEFAULT_ORACLE_VAR_GUARD: usize = 4;
pub const DEFAULT_PRIMES: [u64; 3] = [5, 7, 11];

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn modp(x: i128, p: i128) -> i128 {
    x.rem_euclid(p)
}

/// Points of `P^1(F_p)`: `[1:a]` for every `a`, then `[0:1]`.
fn line_points(p: i128) -> Vec<[i128; 2]> {
    (0..p)
        .map(|a| [1, a])
        .chain(std::iter::once([0, 1]))
        .collect()
}

fn holds(c: &Constraint, assignment: &[[i128; 2]], p: i128) -> bool {
    let det = |u: [i128; 2], v: [i128; 2]| modp(u[0] * v[1] - u[1] * v[0], p) == 0;
    match c {
        Constraint::Force { var, point } => {
            let q = point.coords().map(|x| modp(x, p));
            det(assignment[*var], q)
        }
        _ => {
            let (s, t, m) = c.incidence().unwrap();
            let x = assignment[s];
            let [[a, b], [cc, d]] = m.0.map(|r| r.map(|e| modp(e, p)));
            let image = [modp(a * x[0] + b * x[1], p), modp(cc * x[0] + d * x[1], p)];
            det(image, assignment[t])
        }
    }
}

/// Number of points of the constraint variety over `F_p`, by brute force.
pub fn count_points(cs: &ConstraintSystem, p: u64) -> u64 {
    if !cs.is_feasible() {
        return 0;
    }
    let p = p as i128;
    let pts = line_points(p);
    let m = cs.num_vars;
    let mut assignment = vec![[0i128; 2]; m];
    let mut idx = vec![0usize; m];
    let mut count = 0u64;
    loop {
        for (slot, &i) in assignment.iter_mut().zip(&idx) {
            *slot = pts[i];
        }
        if cs.constraints.iter().all(|c| holds(c, &assignment, p)) {
            count += 1;
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == m {
                return count;
            }
            idx[k] += 1;
            if idx[k] < pts.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Self {
        let g = num.gcd(&den);
        let s = if den < 0 { -1 } else { 1 };
        Self {
            num: s * num / g,
            den: s * den / g,
        }
    }

    fn int(x: i128) -> Self {
        Self { num: x, den: 1 }
    }

    fn add(self, o: Self) -> Self {
        Self::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    fn sub(self, o: Self) -> Self {
        self.add(Self::new(-o.num, o.den))
    }

    fn mul(self, o: Self) -> Self {
        Self::new(self.num * o.num, self.den * o.den)
    }

    fn div(self, o: Self) -> Self {
        Self::new(self.num * o.den, self.den * o.num)
    }
}

/// Coefficients (constant term first) of the interpolating polynomial through
/// the points `(x_i, y_i)`, via Newton divided differences.
fn interpolate(xs: &[i128], ys: &[i128]) -> Vec<Frac> {
    let n = xs.len();
    let mut dd: Vec<Frac> = ys.iter().map(|&y| Frac::int(y)).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = dd[i].sub(dd[i - 1]).div(Frac::int(xs[i] - xs[i - level]));
        }
    }
    // expand sum dd[i] * prod_{j<i} (x - xs[j]) into monomial coefficients
    let mut coeffs = vec![Frac::int(0); n];
    let mut basis = vec![Frac::int(1)];
    for i in 0..n {
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c = c.add(dd[i].mul(*b));
        }
        let mut next = vec![Frac::int(0); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] = next[k + 1].add(*b);
            next[k] = next[k].sub(b.mul(Frac::int(xs[i])));
        }
        basis = next;
    }
    coeffs
}

/// Euler characteristic from point counts over `F_p` for each prime: fits a
/// polynomial of degree at most `num_vars` and evaluates it at 1.
///
/// Needs at least `num_vars + 1` primes; any further primes must agree with
/// the fit.
pub fn stratum_euler_oracle_fp(cs: &ConstraintSystem, primes: &[u64]) -> Result<i64> {
    stratum_euler_oracle_fp_guarded(cs, primes, DEFAULT_ORACLE_VAR_GUARD)
}

pub fn stratum_euler_oracle_fp_guarded(
    cs: &ConstraintSystem,
    primes: &[u64],
    max_vars: usize,
) -> Result<i64> {
    let m = cs.num_vars;
    guard("oracle variable count", m, max_vars)?;
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::Oracle(format!("{p} is not prime")));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(Error::Oracle("primes must be distinct".into()));
    }
    if primes.len() < m + 1 {
        return Err(Error::Oracle(format!(
            "{} variables need at least {} primes, got {}",
            m,
            m + 1,
            primes.len()
        )));
    }
    let bound = cs
        .constraints
        .iter()
        .flat_map(|c| match c {
            Constraint::Force { point, .. } => point.coords().to_vec(),
            _ => c
                .incidence()
                .unwrap()
                .2
                 .0
                .iter()
                .flatten()
                .copied()
                .collect(),
        })
        .map(i128::unsigned_abs)
        .max()
        .unwrap_or(0);
    if let Some(&p) = primes.iter().find(|&&p| (p as u128) <= bound) {
        return Err(Error::Oracle(format!(
            "prime {p} does not exceed entry bound {bound}"
        )));
    }

    let xs: Vec<i128> = primes.iter().map(|&p| p as i128).collect();
    let ys: Vec<i128> = primes
        .iter()
        .map(|&p| count_points(cs, p) as i128)
        .collect();
    let coeffs = interpolate(&xs[..=m], &ys[..=m]);
    if coeffs.iter().any(|c| c.den != 1) {
        return Err(Error::Oracle(format!(
            "counts {ys:?} fit no integer polynomial"
        )));
    }
    let eval = |x: i128| coeffs.iter().rev().fold(0i128, |acc, c| acc * x + c.num);
    for (x, y) in xs.iter().zip(&ys).skip(m + 1) {
        if eval(*x) != *y {
            return Err(Error::Oracle(format!(
                "count {y} at p = {x} disagrees with degree-{m} fit"
            )));
        }
    }
    Ok(eval(1) as i64)
}

#[cfg(test)]
mod tests {
    use super::super::constraints::{Mat2, ProjPoint};
    use super::super::stratum_euler;
    use super::*;

    fn pt(x: i128, y: i128) -> ProjPoint {
        ProjPoint::new(x, y).unwrap()
    }

    #[test]
    fn free_and_forced() {
        let free = ConstraintSystem::new(1);
        assert_eq!(count_points(&free, 7), 8);
        assert_eq!(stratum_euler_oracle_fp(&free, &[5, 7, 11]).unwrap(), 2);

        let mut forced = ConstraintSystem::new(1);
        forced.force(0, pt(2, 3));
        assert_eq!(count_points(&forced, 5), 1);
        assert_eq!(stratum_euler_oracle_fp(&forced, &[5, 7, 11]).unwrap(), 1);

        assert_eq!(
            stratum_euler_oracle_fp(&ConstraintSystem::new(0), &[5]).unwrap(),
            1
        );
        assert_eq!(
            stratum_euler_oracle_fp(&ConstraintSystem::infeasible(1, "x"), &[5, 7]).unwrap(),
            0
        );
    }

    #[test]
    fn agrees_on_rational_systems() {
        let mut systems = Vec::new();
        let mut cs = ConstraintSystem::new(2);
        cs.relate(0, 1, Mat2::new(1, 0, 0, 0));
        systems.push(cs);
        let mut cs = ConstraintSystem::new(1);
        cs.relate(0, 0, Mat2::new(1, 0, 0, 2));
        systems.push(cs);
        let mut cs = ConstraintSystem::new(1);
        cs.relate(0, 0, Mat2::new(1, 1, 0, 1));
        systems.push(cs);
        let mut cs = ConstraintSystem::new(3);
        cs.relate(0, 1, Mat2::IDENTITY);
        cs.relate(1, 2, Mat2::new(0, 1, 0, 0));
        systems.push(cs);
        for cs in &systems {
            let primes = [5, 7, 11, 13];
            assert_eq!(
                stratum_euler_oracle_fp(cs, &primes).unwrap(),
                stratum_euler(cs),
                "{cs:?}"
            );
        }
    }

    #[test]
    fn irrational_eigenvalues_do_not_fit() {
        // x^2 - x - 1 splits mod 11 but not mod 7 or 13
        let mut cs = ConstraintSystem::new(1);
        cs.relate(0, 0, Mat2::new(0, 1, 1, 1));
        assert_eq!(count_points(&cs, 11), 2);
        assert_eq!(count_points(&cs, 7), 0);
        assert!(stratum_euler_oracle_fp(&cs, &[7, 11, 13]).is_err());
    }

    #[test]
    fn argument_checks() {
        let cs = ConstraintSystem::new(2);
        assert!(stratum_euler_oracle_fp(&cs, &[5, 7]).is_err());
        assert!(stratum_euler_oracle_fp(&cs, &[5, 5, 7]).is_err());
        assert!(stratum_euler_oracle_fp(&cs, &[5, 9, 7]).is_err());
        assert!(
            stratum_euler_oracle_fp(&ConstraintSystem::new(5), &[5, 7, 11, 13, 17, 19]).is_err()
        );
        let mut big = ConstraintSystem::new(1);
        big.force(0, pt(1, 6));
        assert!(stratum_euler_oracle_fp(&big, &[5, 7]).is_err());
    }

    #[test]
    fn interpolation_is_exact() {
        // (p + 1)^2
        let c = interpolate(&[5, 7, 11], &[36, 64, 144]);
        assert_eq!(c, vec![Frac::int(1), Frac::int(2), Frac::int(1)]);
    }
}
