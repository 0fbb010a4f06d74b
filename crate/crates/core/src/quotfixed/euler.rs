//! Exact topological Euler characteristic of a constraint variety in
//! `(P^1)^m`.
//!
//! Rank-1 disjunctions are split by inclusion-exclusion. What remains is a
//! system of forced points and invertible links; links are contracted with a
//! union-find that tracks each variable as `var = T * root`. A link closing a
//! cycle leaves an automorphism `phi` of the root line, whose fixed locus in
//! `P^1(C)` is everything (scalar `phi`), two points (distinct eigenvalues) or
//! one point (non-scalar with a repeated eigenvalue).

use std::collections::HashMap;

use super::constraints::{cross, Constraint, ConstraintSystem, Mat2, ProjPoint, VarId};

pub fn stratum_euler(cs: &ConstraintSystem) -> i64 {
    if !cs.is_feasible() {
        return 0;
    }
    let mut memo = HashMap::new();
    euler_rec(cs.num_vars, cs.constraints.clone(), &mut memo)
}

type MemoKey = (usize, Vec<Constraint>);

fn euler_rec(
    num_vars: usize,
    mut constraints: Vec<Constraint>,
    memo: &mut HashMap<MemoKey, i64>,
) -> i64 {
    constraints.sort();
    constraints.dedup();
    let key = (num_vars, constraints);
    if let Some(&e) = memo.get(&key) {
        return e;
    }
    let constraints = &key.1;

    let split = constraints
        .iter()
        .position(|c| matches!(c, Constraint::Either { .. }));
    let e = match split {
        None => solve_links(num_vars, constraints),
        Some(i) => {
            let Constraint::Either {
                source,
                target,
                matrix,
            } = constraints[i]
            else {
                unreachable!()
            };
            let kernel = Constraint::Force {
                var: source,
                point: matrix.kernel().expect("rank-1 matrix"),
            };
            let image = Constraint::Force {
                var: target,
                point: matrix.image().expect("rank-1 matrix"),
            };
            let rest: Vec<Constraint> = constraints
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c.clone())
                .collect();
            let with = |extra: &[&Constraint]| {
                let mut v = rest.clone();
                v.extend(extra.iter().map(|c| (*c).clone()));
                v
            };
            let a = euler_rec(num_vars, with(&[&kernel]), memo);
            let b = euler_rec(num_vars, with(&[&image]), memo);
            let ab = euler_rec(num_vars, with(&[&kernel, &image]), memo);
            a + b - ab
        }
    };
    memo.insert(key, e);
    e
}

struct UnionFind {
    parent: Vec<VarId>,
    // var = to_parent * parent, up to scale
    to_parent: Vec<Mat2>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            to_parent: vec![Mat2::IDENTITY; n],
        }
    }

    /// Root of `x` and `T` with `x = T * root`.
    fn find(&mut self, x: VarId) -> (VarId, Mat2) {
        let p = self.parent[x];
        if p == x {
            return (x, Mat2::IDENTITY);
        }
        let (root, up) = self.find(p);
        let t = self.to_parent[x].mul(&up).primitive();
        self.parent[x] = root;
        self.to_parent[x] = t;
        (root, t)
    }
}

#[derive(Default)]
struct Component {
    forced: Vec<ProjPoint>,
    loops: Vec<Mat2>,
}

fn solve_links(num_vars: usize, constraints: &[Constraint]) -> i64 {
    let mut uf = UnionFind::new(num_vars);
    let mut loops: Vec<(VarId, Mat2)> = Vec::new();
    for c in constraints {
        if let Constraint::Link {
            source,
            target,
            matrix,
        } = *c
        {
            let (rs, ts) = uf.find(source);
            let (rt, tt) = uf.find(target);
            // tt * rt ~ matrix * ts * rs
            let phi = tt.adjugate().mul(&matrix).mul(&ts).primitive();
            if rs == rt {
                loops.push((rs, phi));
            } else {
                uf.parent[rt] = rs;
                uf.to_parent[rt] = phi;
            }
        }
    }

    let mut components: HashMap<VarId, Component> = HashMap::new();
    for (r, phi) in loops {
        let (root, t) = uf.find(r);
        // r = t * root, and phi acts on r
        let conj = t.adjugate().mul(&phi).mul(&t).primitive();
        components.entry(root).or_default().loops.push(conj);
    }
    for c in constraints {
        if let Constraint::Force { var, point } = *c {
            let (root, t) = uf.find(var);
            let [x, y] = t.adjugate().apply(point.coords());
            let p = ProjPoint::new(x, y).expect("invertible transform");
            components.entry(root).or_default().forced.push(p);
        }
    }

    let roots = (0..num_vars).filter(|&x| uf.find(x).0 == x);
    let mut e = 1i64;
    for root in roots {
        let factor = match components.get(&root) {
            None => 2,
            Some(comp) => component_euler(comp),
        };
        if factor == 0 {
            return 0;
        }
        e *= factor;
    }
    e
}

/// Coefficients `(A, B, C)` of `A x^2 + B xy + C y^2`, whose zeros are the
/// eigenlines of `phi`.
fn eigen_form(phi: &Mat2) -> [i128; 3] {
    let [[a, b], [c, d]] = phi.0;
    [-c, a - d, b]
}

fn is_eigenline(phi: &Mat2, p: &ProjPoint) -> bool {
    cross(phi.apply(p.coords()), p.coords()) == 0
}

fn component_euler(comp: &Component) -> i64 {
    if let Some(first) = comp.forced.first() {
        if comp.forced.iter().any(|p| p != first) {
            return 0;
        }
        return comp.loops.iter().all(|phi| is_eigenline(phi, first)) as i64;
    }
    let forms: Vec<[i128; 3]> = comp
        .loops
        .iter()
        .filter(|phi| !phi.is_scalar())
        .map(eigen_form)
        .collect();
    let Some(f) = forms.first() else {
        return 2;
    };
    let crossed = forms
        .iter()
        .map(|g| cross3(f, g))
        .find(|n| n.iter().any(|&x| x != 0));
    match crossed {
        None => {
            // all forms proportional: roots of a single binary quadratic
            let [a, b, c] = *f;
            let disc = b * b - 4 * a * c;
            if disc != 0 {
                2
            } else {
                1
            }
        }
        Some(n) => {
            // two independent quadratics share at most the root (s:t) with
            // (s^2, st, t^2) proportional to their cross product
            if n[1] * n[1] != n[0] * n[2] {
                return 0;
            }
            let p = if n[0] != 0 {
                ProjPoint::new(n[0], n[1])
            } else {
                ProjPoint::new(0, 1)
            }
            .unwrap();
            comp.loops.iter().all(|phi| is_eigenline(phi, &p)) as i64
        }
    }
}

fn cross3(f: &[i128; 3], g: &[i128; 3]) -> [i128; 3] {
    [
        f[1] * g[2] - f[2] * g[1],
        f[2] * g[0] - f[0] * g[2],
        f[0] * g[1] - f[1] * g[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i128, y: i128) -> ProjPoint {
        ProjPoint::new(x, y).unwrap()
    }

    fn link(cs: &mut ConstraintSystem, s: VarId, t: VarId, m: Mat2) {
        cs.constraints.push(Constraint::Link {
            source: s,
            target: t,
            matrix: m,
        });
    }

    #[test]
    fn trivial_systems() {
        assert_eq!(stratum_euler(&ConstraintSystem::new(0)), 1);
        assert_eq!(stratum_euler(&ConstraintSystem::new(1)), 2);
        assert_eq!(stratum_euler(&ConstraintSystem::new(3)), 8);
        assert_eq!(stratum_euler(&ConstraintSystem::infeasible(2, "x")), 0);
    }

    #[test]
    fn forced_points() {
        let mut cs = ConstraintSystem::new(2);
        cs.force(0, pt(1, 0));
        assert_eq!(stratum_euler(&cs), 2);
        cs.force(0, pt(-2, 0));
        assert_eq!(stratum_euler(&cs), 2);
        cs.force(0, pt(0, 1));
        assert_eq!(stratum_euler(&cs), 0);
    }

    #[test]
    fn links_propagate_forces() {
        let mut cs = ConstraintSystem::new(3);
        link(&mut cs, 0, 1, Mat2::new(0, 1, 1, 0));
        link(&mut cs, 1, 2, Mat2::IDENTITY);
        // one component: a single P^1
        assert_eq!(stratum_euler(&cs), 2);
        cs.force(0, pt(1, 0));
        cs.force(2, pt(0, 1));
        assert_eq!(stratum_euler(&cs), 1);
        cs.force(1, pt(1, 0));
        assert_eq!(stratum_euler(&cs), 0);
    }

    #[test]
    fn self_loop_fixed_loci() {
        let cases = [
            (Mat2::new(3, 0, 0, 3), 2),  // scalar: all of P^1
            (Mat2::new(1, 0, 0, 2), 2),  // two rational eigenlines
            (Mat2::new(1, 1, 0, 1), 1),  // Jordan block
            (Mat2::new(0, -1, 1, 0), 2), // eigenvalues +-i
            (Mat2::new(0, 1, 1, 1), 2),  // golden ratio eigenvalues
        ];
        for (phi, expected) in cases {
            let mut cs = ConstraintSystem::new(1);
            link(&mut cs, 0, 0, phi);
            assert_eq!(stratum_euler(&cs), expected, "{phi:?}");
        }
    }

    #[test]
    fn cycle_through_two_variables() {
        // x1 = A x0, x0 = B x1 gives x0 fixed by BA = diag(1, 2)
        let mut cs = ConstraintSystem::new(2);
        link(&mut cs, 0, 1, Mat2::new(0, 1, 1, 0));
        link(&mut cs, 1, 0, Mat2::new(0, 1, 2, 0));
        assert_eq!(stratum_euler(&cs), 2);
        cs.force(1, pt(1, 0));
        // x1 = [1:0] forces x0 = [0:1], an eigenline of diag(1, 2)
        assert_eq!(stratum_euler(&cs), 1);
    }

    #[test]
    fn several_loops_on_one_root() {
        let mut cs = ConstraintSystem::new(1);
        link(&mut cs, 0, 0, Mat2::new(1, 0, 0, 2));
        link(&mut cs, 0, 0, Mat2::new(1, 1, 0, 1));
        // common eigenline [1:0]
        assert_eq!(stratum_euler(&cs), 1);
        link(&mut cs, 0, 0, Mat2::new(1, 0, 1, 1));
        assert_eq!(stratum_euler(&cs), 0);

        let mut cs = ConstraintSystem::new(1);
        link(&mut cs, 0, 0, Mat2::new(1, 0, 0, 2));
        link(&mut cs, 0, 0, Mat2::new(5, 0, 0, 3));
        assert_eq!(stratum_euler(&cs), 2);
        link(&mut cs, 0, 0, Mat2::new(0, 1, 1, 0));
        assert_eq!(stratum_euler(&cs), 0);
    }

    #[test]
    fn disjunction_inclusion_exclusion() {
        // x0 = [0:1] or x1 = [1:0]: two P^1 x pt and P^1 x pt meeting in a point
        let mut cs = ConstraintSystem::new(2);
        cs.relate(0, 1, Mat2::new(1, 0, 0, 0));
        assert_eq!(stratum_euler(&cs), 2 + 2 - 1);

        // self-loop with a nilpotent rank-1 map: kernel = image
        let mut cs = ConstraintSystem::new(1);
        cs.relate(0, 0, Mat2::new(0, 1, 0, 0));
        assert_eq!(stratum_euler(&cs), 1);

        // idempotent rank-1 self-loop: x = ker or x = im, two points
        let mut cs = ConstraintSystem::new(1);
        cs.relate(0, 0, Mat2::new(1, 0, 0, 0));
        assert_eq!(stratum_euler(&cs), 2);
    }

    #[test]
    fn chained_disjunctions() {
        let mut cs = ConstraintSystem::new(3);
        cs.relate(0, 1, Mat2::new(1, 0, 0, 0));
        cs.relate(1, 2, Mat2::new(0, 1, 0, 0));
        cs.force(2, pt(1, 1));
        // x2 != [1:0] forces x1 = [1:0]; then x0 = [0:1] or x1 = [1:0] holds
        assert_eq!(stratum_euler(&cs), 2);
    }
}
