//! Exact two-phase simplex method over the rationals.
//!
//! Dense tableau, Bland's rule for both entering and leaving variables, so the
//! method terminates on degenerate problems. Sizes here are tiny (tens of
//! variables), which is why no attempt is made at sparsity.

use num_traits::{One, Signed, Zero};

use super::rational::{Rational, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    Eq,
    GreaterEq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize objective·x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, solution: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows[i] has `width` coefficient columns followed by the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` over the current basic feasible solution, considering
    /// only columns allowed by `allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // reduced cost_j = c_j - sum_i c_{basis_i} a_ij
            let entering = (0..self.width).filter(|&j| allowed(j)).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() && !row[j].is_zero() {
                        rc -= cb * &row[j];
                    }
                }
                rc.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

impl LinearProgram {
    pub fn solve(&self) -> LpOutcome {
        let nvars = self.objective.len();
        let m = self.constraints.len();
        // Normalize to nonnegative right-hand sides.
        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(m);
        for c in &self.constraints {
            assert_eq!(c.coeffs.len(), nvars, "constraint length mismatch");
            if c.rhs.is_negative() {
                let rel = match c.relation {
                    Relation::LessEq => Relation::GreaterEq,
                    Relation::GreaterEq => Relation::LessEq,
                    Relation::Eq => Relation::Eq,
                };
                rows.push((c.coeffs.iter().map(|x| -x).collect(), rel, -&c.rhs));
            } else {
                rows.push((c.coeffs.clone(), c.relation, c.rhs.clone()));
            }
        }
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let n_art = rows.iter().filter(|r| r.1 != Relation::LessEq).count();
        let width = nvars + n_slack + n_art;
        let art_start = nvars + n_slack;

        let mut tab = Tableau { rows: Vec::with_capacity(m), basis: Vec::with_capacity(m), width };
        let (mut s, mut a) = (nvars, art_start);
        for (coeffs, rel, rhs) in rows {
            let mut row = vec![Rational::zero(); width + 1];
            row[..nvars].clone_from_slice(&coeffs);
            row[width] = rhs;
            match rel {
                Relation::LessEq => {
                    row[s] = Rational::one();
                    tab.basis.push(s);
                    s += 1;
                }
                Relation::GreaterEq => {
                    row[s] = -Rational::one();
                    s += 1;
                    row[a] = Rational::one();
                    tab.basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = Rational::one();
                    tab.basis.push(a);
                    a += 1;
                }
            }
            tab.rows.push(row);
        }

        if n_art > 0 {
            let mut phase1 = vec![Rational::zero(); width];
            for c in phase1.iter_mut().skip(art_start) {
                *c = -Rational::one();
            }
            tab.optimize(&phase1, &|_| true);
            let infeasibility = tab
                .rows
                .iter()
                .zip(&tab.basis)
                .filter(|(_, &b)| b >= art_start)
                .fold(Rational::zero(), |acc, (row, _)| acc + &row[width]);
            if infeasibility.is_positive() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut r = 0;
            while r < tab.rows.len() {
                if tab.basis[r] >= art_start {
                    match (0..art_start).find(|&j| !tab.rows[r][j].is_zero()) {
                        Some(j) => tab.pivot(r, j),
                        None => {
                            tab.rows.remove(r);
                            tab.basis.remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
        }

        let mut cost = vec![Rational::zero(); width];
        cost[..nvars].clone_from_slice(&self.objective);
        if !tab.optimize(&cost, &|j| j < art_start) {
            return LpOutcome::Unbounded;
        }
        let mut solution = vec![Rational::zero(); nvars];
        for (row, &b) in tab.rows.iter().zip(&tab.basis) {
            if b < nvars {
                solution[b] = row[width].clone();
            }
        }
        let value = self.objective.iter().zip(&solution).fold(Rational::zero(), |acc, (c, x)| acc + c * x);
        LpOutcome::Optimal { value, solution }
    }
}

/// Decides whether some `w` satisfies `<w, a> = 0` for every equality row and
/// `<w, b> > 0` for every strict row.
///
/// Solved as `max eps` subject to `<w, b> >= eps`, `|w|_inf <= 1`, `eps <= 1`,
/// with `w = w⁺ - w⁻`; the system is feasible iff the optimum is positive.
pub fn lp_strict_feasible(equalities: &[RationalVector], strict: &[RationalVector]) -> bool {
    if strict.is_empty() {
        return true;
    }
    let d = strict[0].len();
    assert!(equalities.iter().chain(strict).all(|v| v.len() == d), "all rows must have the same length");
    let nvars = 2 * d + 1;
    let eps = 2 * d;
    let split = |v: &RationalVector, sign: i32| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); nvars];
        for (i, x) in v.iter().enumerate() {
            row[i] = if sign > 0 { x.clone() } else { -x };
            row[d + i] = if sign > 0 { -x } else { x.clone() };
        }
        row
    };
    let mut constraints = Vec::new();
    for a in equalities {
        constraints.push(Constraint { coeffs: split(a, 1), relation: Relation::Eq, rhs: Rational::zero() });
    }
    for b in strict {
        let mut row = split(b, -1);
        row[eps] = Rational::one();
        constraints.push(Constraint { coeffs: row, relation: Relation::LessEq, rhs: Rational::zero() });
    }
    for j in 0..nvars {
        let mut row = vec![Rational::zero(); nvars];
        row[j] = Rational::one();
        constraints.push(Constraint { coeffs: row, relation: Relation::LessEq, rhs: Rational::one() });
    }
    let mut objective = vec![Rational::zero(); nvars];
    objective[eps] = Rational::one();
    match (LinearProgram { objective, constraints }).solve() {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        // w = 0, eps = 0 is always feasible and the box bounds everything.
        other => unreachable!("strict feasibility LP returned {other:?}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_integers(xs.iter().copied())
    }

    #[test]
    fn strict_feasibility_examples() {
        assert!(lp_strict_feasible(&[], &[v(&[1, 0])]));
        assert!(!lp_strict_feasible(&[v(&[1, 0])], &[v(&[1, 0])]));
        // p_e of the single edge is a vertex of the triangle.
        assert!(lp_strict_feasible(&[v(&[1, 1, -1])], &[v(&[1, -1, 1]), v(&[-1, 1, 1])]));
    }

    #[test]
    fn opposite_strict_rows_are_infeasible() {
        assert!(!lp_strict_feasible(&[], &[v(&[1, 2]), v(&[-1, -2])]));
        assert!(lp_strict_feasible(&[], &[v(&[1, 2]), v(&[-1, 0])]));
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  -> 36 at (2, 6)
        let lp = LinearProgram {
            objective: vec![int(3), int(5)],
            constraints: vec![
                Constraint { coeffs: vec![int(1), int(0)], relation: Relation::LessEq, rhs: int(4) },
                Constraint { coeffs: vec![int(0), int(2)], relation: Relation::LessEq, rhs: int(12) },
                Constraint { coeffs: vec![int(3), int(2)], relation: Relation::LessEq, rhs: int(18) },
            ],
        };
        assert_eq!(lp.solve(), LpOutcome::Optimal { value: int(36), solution: vec![int(2), int(6)] });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let infeasible = LinearProgram {
            objective: vec![int(1)],
            constraints: vec![
                Constraint { coeffs: vec![int(1)], relation: Relation::GreaterEq, rhs: int(2) },
                Constraint { coeffs: vec![int(1)], relation: Relation::LessEq, rhs: int(1) },
            ],
        };
        assert_eq!(infeasible.solve(), LpOutcome::Infeasible);
        let unbounded = LinearProgram {
            objective: vec![int(1), int(0)],
            constraints: vec![Constraint { coeffs: vec![int(1), int(-1)], relation: Relation::LessEq, rhs: int(1) }],
        };
        assert_eq!(unbounded.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_with_fractional_optimum() {
        // max x + y, 2x + 3y = 1 -> x = 1/2
        let lp = LinearProgram {
            objective: vec![int(1), int(1)],
            constraints: vec![Constraint { coeffs: vec![int(2), int(3)], relation: Relation::Eq, rhs: int(1) }],
        };
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 2)),
            other => panic!("{other:?}"),
        }
    }
}
