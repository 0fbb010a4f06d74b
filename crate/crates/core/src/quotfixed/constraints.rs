//! Incidence constraints between lines in 2-dimensional fibers.
//!
//! Each variable is a point of a projective line (a 1-dimensional subspace of
//! a 2-dimensional fiber). Constraints relate variables through integer
//! `2 x 2` matrices and fixed projective points.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub type VarId = usize;

fn content(xs: &[i128]) -> i128 {
    xs.iter().fold(0i128, |g, x| g.gcd(x))
}

/// A point of `P^1(Q)` stored as a primitive integer vector whose first
/// nonzero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPoint([i128; 2]);

impl ProjPoint {
    /// `None` for the zero vector.
    pub fn new(x: i128, y: i128) -> Option<Self> {
        let g = content(&[x, y]);
        if g == 0 {
            return None;
        }
        let (mut x, mut y) = (x / g, y / g);
        if x < 0 || (x == 0 && y < 0) {
            x = -x;
            y = -y;
        }
        Some(Self([x, y]))
    }

    pub fn coords(&self) -> [i128; 2] {
        self.0
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.0[0], self.0[1])
    }
}

/// Row-major integer `2 x 2` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2(pub [[i128; 2]; 2]);

fn mul_checked(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("matrix entry overflow")
}

fn add_checked(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("matrix entry overflow")
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1, 0], [0, 1]]);

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn det(&self) -> i128 {
        let [[a, b], [c, d]] = self.0;
        mul_checked(a, d) - mul_checked(b, c)
    }

    pub fn rank(&self) -> usize {
        if self.0.iter().flatten().all(|&x| x == 0) {
            0
        } else if self.det() == 0 {
            1
        } else {
            2
        }
    }

    pub fn is_scalar(&self) -> bool {
        let [[a, b], [c, d]] = self.0;
        b == 0 && c == 0 && a == d
    }

    pub fn apply(&self, v: [i128; 2]) -> [i128; 2] {
        let [[a, b], [c, d]] = self.0;
        [
            add_checked(mul_checked(a, v[0]), mul_checked(b, v[1])),
            add_checked(mul_checked(c, v[0]), mul_checked(d, v[1])),
        ]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let mut out = [[0i128; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = add_checked(
                    mul_checked(self.0[i][0], o.0[0][j]),
                    mul_checked(self.0[i][1], o.0[1][j]),
                );
            }
        }
        Mat2(out)
    }

    /// Adjugate; a scalar multiple of the inverse.
    pub fn adjugate(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2([[d, -b], [-c, a]])
    }

    /// Divides out the gcd of the entries, which leaves the induced map on
    /// `P^1` unchanged.
    pub fn primitive(&self) -> Mat2 {
        let g = content(&[self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]]);
        if g <= 1 {
            return *self;
        }
        Mat2(self.0.map(|r| r.map(|x| x / g)))
    }

    /// Kernel line of a rank-1 matrix.
    pub fn kernel(&self) -> Option<ProjPoint> {
        if self.rank() != 1 {
            return None;
        }
        let [[a, b], [c, d]] = self.0;
        if (a, b) != (0, 0) {
            ProjPoint::new(b, -a)
        } else {
            ProjPoint::new(d, -c)
        }
    }

    /// Image line of a rank-1 matrix.
    pub fn image(&self) -> Option<ProjPoint> {
        if self.rank() != 1 {
            return None;
        }
        let [[a, b], [c, d]] = self.0;
        if (a, c) != (0, 0) {
            ProjPoint::new(a, c)
        } else {
            ProjPoint::new(b, d)
        }
    }
}

/// `det [u, v]`: zero iff `u` and `v` are parallel (or one vanishes).
pub fn cross(u: [i128; 2], v: [i128; 2]) -> i128 {
    mul_checked(u[0], v[1]) - mul_checked(u[1], v[0])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// The variable equals a fixed point.
    Force { var: VarId, point: ProjPoint },
    /// `target = matrix * source`, with `matrix` invertible.
    Link {
        source: VarId,
        target: VarId,
        matrix: Mat2,
    },
    /// `matrix * source` lies in `target`, with `matrix` of rank 1:
    /// `source = ker(matrix)` or `target = im(matrix)`.
    Either {
        source: VarId,
        target: VarId,
        matrix: Mat2,
    },
}

impl Constraint {
    /// The single incidence condition `matrix * source` in `target` that
    /// each constraint encodes, as `(source, target, matrix)`; forces are
    /// `None`.
    pub fn incidence(&self) -> Option<(VarId, VarId, Mat2)> {
        match *self {
            Constraint::Force { .. } => None,
            Constraint::Link {
                source,
                target,
                matrix,
            }
            | Constraint::Either {
                source,
                target,
                matrix,
            } => Some((source, target, matrix)),
        }
    }

    pub fn vars(&self) -> Vec<VarId> {
        match *self {
            Constraint::Force { var, .. } => vec![var],
            Constraint::Link { source, target, .. } | Constraint::Either { source, target, .. } => {
                vec![source, target]
            }
        }
    }
}

/// A closed subvariety of `(P^1)^m` cut out by incidence constraints, or
/// the empty variety.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSystem {
    /// Number of `P^1` factors.
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
    /// Reason the system has no solutions, when known up front.
    pub infeasible: Option<String>,
}

impl ConstraintSystem {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            ..Self::default()
        }
    }

    pub fn infeasible(num_vars: usize, reason: impl Into<String>) -> Self {
        Self {
            num_vars,
            constraints: Vec::new(),
            infeasible: Some(reason.into()),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.infeasible.is_none()
    }

    pub fn force(&mut self, var: VarId, point: ProjPoint) {
        self.constraints.push(Constraint::Force { var, point });
    }

    /// Adds `matrix * source` contained in `target`, classified by rank.
    pub fn relate(&mut self, source: VarId, target: VarId, matrix: Mat2) {
        let matrix = matrix.primitive();
        match matrix.rank() {
            0 => {}
            1 => self.constraints.push(Constraint::Either {
                source,
                target,
                matrix,
            }),
            _ => self.constraints.push(Constraint::Link {
                source,
                target,
                matrix,
            }),
        }
    }

    /// Requires `matrix * var = 0`.
    pub fn annihilate(&mut self, var: VarId, matrix: Mat2) {
        match matrix.rank() {
            0 => {}
            1 => self.force(var, matrix.kernel().unwrap()),
            _ => self.mark_infeasible(format!("injective map kills variable {var}")),
        }
    }

    pub fn mark_infeasible(&mut self, reason: impl Into<String>) {
        if self.infeasible.is_none() {
            self.infeasible = Some(reason.into());
        }
    }

    /// Points that variables are directly forced to.
    pub fn forced_points(&self) -> Vec<(VarId, ProjPoint)> {
        self.constraints
            .iter()
            .filter_map(|c| match *c {
                Constraint::Force { var, point } => Some((var, point)),
                _ => None,
            })
            .collect()
    }
}
