//! Exact two-phase simplex over the rationals.
//!
//! Variables are free (split into nonnegative pairs internally), rows may be
//! `<=`, `=`, or `>=`. Bland's rule is used in both phases, so the solver
//! terminates on every input. Every outcome carries a checkable witness: an
//! optimal point, a Farkas certificate, or a feasible point plus an
//! improving ray.

use crate::rational::{dot, Rational};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct LpRow {
    pub coeffs: Vec<Rational>,
    pub sense: RowSense,
    pub rhs: Rational,
}

impl LpRow {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LpRow { coeffs, sense: RowSense::Le, rhs }
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LpRow { coeffs, sense: RowSense::Ge, rhs }
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LpRow { coeffs, sense: RowSense::Eq, rhs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpSense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub sense: LpSense,
    pub objective: Vec<Rational>,
    pub rows: Vec<LpRow>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    /// Multipliers over the input rows, `>= 0` on `Le` rows, `<= 0` on `Ge`
    /// rows, unrestricted on `Eq` rows, with `sum mu_i * coeffs_i = 0` and
    /// `sum mu_i * rhs_i < 0`.
    Infeasible {
        farkas: Vec<Rational>,
    },
    /// `point` is feasible and `point + t * ray` stays feasible for all
    /// `t >= 0` while the objective improves without bound.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("row has {got} coefficients, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    let n = lp.objective.len();
    for row in &lp.rows {
        if row.coeffs.len() != n {
            return Err(LpError::DimensionMismatch { expected: n, got: row.coeffs.len() });
        }
    }

    let mut objective = lp.objective.clone();
    if lp.sense == LpSense::Minimize {
        for c in &mut objective {
            *c = -&*c;
        }
    }

    // Normalize to `a . x <= b` rows, remembering how each one maps back.
    let mut le_rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut origin: Vec<(usize, i32)> = Vec::new();
    for (i, row) in lp.rows.iter().enumerate() {
        match row.sense {
            RowSense::Le => {
                le_rows.push((row.coeffs.clone(), row.rhs.clone()));
                origin.push((i, 1));
            }
            RowSense::Ge => {
                le_rows.push((negated(&row.coeffs), -&row.rhs));
                origin.push((i, -1));
            }
            RowSense::Eq => {
                le_rows.push((row.coeffs.clone(), row.rhs.clone()));
                origin.push((i, 1));
                le_rows.push((negated(&row.coeffs), -&row.rhs));
                origin.push((i, -1));
            }
        }
    }

    let outcome = match simplex_max(n, &objective, &le_rows) {
        RawOutcome::Optimal { point } => {
            let value = dot(&lp.objective, &point);
            LpOutcome::Optimal { value, point }
        }
        RawOutcome::Infeasible { duals } => {
            let mut farkas = vec![Rational::zero(); lp.rows.len()];
            for (k, (i, sign)) in origin.iter().enumerate() {
                if *sign > 0 {
                    farkas[*i] += &duals[k];
                } else {
                    farkas[*i] -= &duals[k];
                }
            }
            LpOutcome::Infeasible { farkas }
        }
        RawOutcome::Unbounded { point, ray } => LpOutcome::Unbounded { point, ray },
    };
    Ok(outcome)
}

#[derive(Debug, Clone)]
pub enum Feasibility {
    /// A point satisfying every row strictly.
    Strict(Vec<Rational>),
    /// The system is solvable, but has no strict solution.
    Weak(Vec<Rational>),
    Empty,
}

/// Classifies `{ x : a_i . x <= c_i }` as strictly solvable, weakly
/// solvable, or empty, by maximizing a uniform margin capped at 1.
pub fn feasibility(dim: usize, rows: &[(Vec<Rational>, Rational)]) -> Feasibility {
    let mut objective = vec![Rational::zero(); dim + 1];
    objective[dim] = Rational::one();
    let mut lp_rows: Vec<LpRow> = rows
        .iter()
        .map(|(a, c)| {
            let mut coeffs = a.clone();
            coeffs.push(Rational::one());
            LpRow::le(coeffs, c.clone())
        })
        .collect();
    let mut cap = vec![Rational::zero(); dim + 1];
    cap[dim] = Rational::one();
    lp_rows.push(LpRow::le(cap, Rational::one()));

    let lp = LinearProgram { sense: LpSense::Maximize, objective, rows: lp_rows };
    match solve_lp(&lp).expect("dimensions are consistent by construction") {
        LpOutcome::Optimal { value, mut point } => {
            point.pop();
            if value.is_positive() {
                Feasibility::Strict(point)
            } else if value.is_zero() {
                Feasibility::Weak(point)
            } else {
                Feasibility::Empty
            }
        }
        _ => unreachable!("margin program is feasible and bounded"),
    }
}

fn negated(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| -x).collect()
}

enum RawOutcome {
    Optimal { point: Vec<Rational> },
    Infeasible { duals: Vec<Rational> },
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

/// Maximizes `c . x` over `{ x free : A x <= b }`.
fn simplex_max(n: usize, c: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> RawOutcome {
    let m = rows.len();
    let split = 2 * n;
    let need_phase1 = rows.iter().any(|(_, b)| b.is_negative());
    // Columns: u_0..u_{n-1}, v_0..v_{n-1}, s_0..s_{m-1}, then the single
    // artificial column during phase 1; rhs is stored last in each row.
    let ncols = split + m + usize::from(need_phase1);

    let mut tab = Tableau {
        t: Vec::with_capacity(m),
        obj: vec![Rational::zero(); ncols + 1],
        basis: (split..split + m).collect(),
        ncols,
    };
    for (i, (a, b)) in rows.iter().enumerate() {
        let mut row = Vec::with_capacity(ncols + 1);
        row.extend(a.iter().cloned());
        row.extend(a.iter().map(|x| -x));
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        if need_phase1 {
            row.push(-Rational::one());
        }
        row.push(b.clone());
        tab.t.push(row);
    }

    if need_phase1 {
        let art = split + m;
        tab.obj[art] = Rational::one();
        // Entering the artificial on the most negative right-hand side
        // makes the tableau primal feasible in one pivot.
        let mut worst = 0;
        for i in 1..m {
            if tab.t[i][ncols] < tab.t[worst][ncols] {
                worst = i;
            }
        }
        tab.pivot(worst, art);
        let unbounded = tab.bland();
        debug_assert!(unbounded.is_none(), "phase one is bounded above by zero");
        if tab.obj[ncols].is_negative() {
            let duals: Vec<Rational> = (0..m).map(|i| tab.obj[split + i].clone()).collect();
            debug_assert!(duals.iter().all(|y| !y.is_negative()));
            return RawOutcome::Infeasible { duals };
        }
        if let Some(r) = tab.basis.iter().position(|&b| b == art) {
            // The artificial sits at value zero; any nonzero entry in its
            // row lets us pivot it out without moving the solution. One
            // always exists because the basis inverse has no zero row.
            let c = (0..art)
                .find(|&j| !tab.t[r][j].is_zero())
                .expect("artificial row cannot vanish outside its own column");
            tab.pivot(r, c);
        }
        for row in &mut tab.t {
            row.remove(art);
        }
        tab.ncols = split + m;
    }

    // Phase 2: rebuild reduced costs for the real objective.
    let ncols = tab.ncols;
    let mut cost = vec![Rational::zero(); ncols];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -&c[j];
    }
    let mut obj = vec![Rational::zero(); ncols + 1];
    for (i, &bv) in tab.basis.iter().enumerate() {
        if cost[bv].is_zero() {
            continue;
        }
        for j in 0..=ncols {
            let term = &cost[bv] * &tab.t[i][j];
            obj[j] += term;
        }
    }
    for j in 0..ncols {
        obj[j] -= &cost[j];
    }
    tab.obj = obj;

    match tab.bland() {
        None => RawOutcome::Optimal { point: tab.point(n) },
        Some(entering) => {
            let point = tab.point(n);
            let mut ray = vec![Rational::zero(); n];
            if entering < n {
                ray[entering] += Rational::one();
            } else if entering < split {
                ray[entering - n] -= Rational::one();
            }
            for (i, &bv) in tab.basis.iter().enumerate() {
                if tab.t[i][entering].is_zero() {
                    continue;
                }
                let delta = -&tab.t[i][entering];
                if bv < n {
                    ray[bv] += &delta;
                } else if bv < split {
                    ray[bv - n] -= &delta;
                }
            }
            RawOutcome::Unbounded { point, ray }
        }
    }
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        debug_assert!(!p.is_zero());
        for x in &mut self.t[r] {
            *x = &*x / &p;
        }
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for k in 0..=self.ncols {
                let term = &f * &self.t[r][k];
                self.t[i][k] -= term;
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for k in 0..=self.ncols {
                let term = &f * &self.t[r][k];
                self.obj[k] -= term;
            }
        }
        self.basis[r] = c;
    }

    /// Bland pivoting to optimality. Returns the entering column if the
    /// program is unbounded instead.
    fn bland(&mut self) -> Option<usize> {
        loop {
            let entering = (0..self.ncols).find(|&j| self.obj[j].is_negative());
            let Some(c) = entering else { return None };
            let mut leave: Option<usize> = None;
            for i in 0..self.t.len() {
                if !self.t[i][c].is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cur = &self.t[i][self.ncols] * &self.t[l][c];
                        let old = &self.t[l][self.ncols] * &self.t[i][c];
                        cur < old || (cur == old && self.basis[i] < self.basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
            match leave {
                None => return Some(c),
                Some(r) => self.pivot(r, c),
            }
        }
    }

    fn point(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < n {
                x[bv] += &self.t[i][self.ncols];
            } else if bv < 2 * n {
                x[bv - n] -= &self.t[i][self.ncols];
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&p| int(p)).collect()
    }

    fn check_feasible(lp: &LinearProgram, x: &[Rational]) {
        for row in &lp.rows {
            let lhs = dot(&row.coeffs, x);
            match row.sense {
                RowSense::Le => assert!(lhs <= row.rhs, "{lhs} </= {}", row.rhs),
                RowSense::Ge => assert!(lhs >= row.rhs),
                RowSense::Eq => assert_eq!(lhs, row.rhs),
            }
        }
    }

    fn check_farkas(lp: &LinearProgram, mu: &[Rational]) {
        assert_eq!(mu.len(), lp.rows.len());
        let n = lp.objective.len();
        let mut combo = vec![Rational::zero(); n];
        let mut rhs = Rational::zero();
        for (m, row) in mu.iter().zip(&lp.rows) {
            match row.sense {
                RowSense::Le => assert!(!m.is_negative()),
                RowSense::Ge => assert!(!m.is_positive()),
                RowSense::Eq => {}
            }
            for k in 0..n {
                combo[k] += m * &row.coeffs[k];
            }
            rhs += m * &row.rhs;
        }
        assert!(combo.iter().all(Rational::is_zero), "combination is not zero: {combo:?}");
        assert!(rhs.is_negative(), "combined rhs {rhs} is not negative");
    }

    fn check_ray(lp: &LinearProgram, ray: &[Rational]) {
        for row in &lp.rows {
            let along = dot(&row.coeffs, ray);
            match row.sense {
                RowSense::Le => assert!(!along.is_positive()),
                RowSense::Ge => assert!(!along.is_negative()),
                RowSense::Eq => assert!(along.is_zero()),
            }
        }
        let gain = dot(&lp.objective, ray);
        match lp.sense {
            LpSense::Maximize => assert!(gain.is_positive()),
            LpSense::Minimize => assert!(gain.is_negative()),
        }
    }

    #[test]
    fn bounded_maximum() {
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: iv(&[1, 1]),
            rows: vec![
                LpRow::le(iv(&[1, 0]), int(3)),
                LpRow::le(iv(&[0, 1]), int(5)),
                LpRow::le(iv(&[1, 1]), int(6)),
            ],
        };
        match solve_lp(&lp).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(6));
                check_feasible(&lp, &point);
                assert_eq!(dot(&lp.objective, &point), value);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn equality_and_minimize() {
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: iv(&[0, 1]),
            rows: vec![LpRow::eq(iv(&[1, 1]), int(4)), LpRow::ge(iv(&[1, 0]), int(1))],
        };
        match solve_lp(&lp).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(3));
                check_feasible(&lp, &point);
            }
            other => panic!("{other:?}"),
        }

        let lp = LinearProgram {
            sense: LpSense::Minimize,
            objective: iv(&[1, 2]),
            rows: vec![LpRow::ge(iv(&[1, 0]), int(1)), LpRow::ge(iv(&[0, 1]), int(2))],
        };
        match solve_lp(&lp).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(5));
                check_feasible(&lp, &point);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: iv(&[0]),
            rows: vec![LpRow::ge(iv(&[1]), int(2)), LpRow::le(iv(&[1]), int(1))],
        };
        match solve_lp(&lp).unwrap() {
            LpOutcome::Infeasible { farkas } => check_farkas(&lp, &farkas),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_with_ray() {
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: iv(&[1, -1]),
            rows: vec![LpRow::ge(iv(&[1, 0]), int(0)), LpRow::le(iv(&[0, 1]), int(2))],
        };
        match solve_lp(&lp).unwrap() {
            LpOutcome::Unbounded { point, ray } => {
                check_feasible(&lp, &point);
                check_ray(&lp, &ray);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance; Bland's rule must reach 1/20.
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: vec![rat(3, 4), int(-150), rat(1, 50), int(-6)],
            rows: vec![
                LpRow::le(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], int(0)),
                LpRow::le(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], int(0)),
                LpRow::le(iv(&[0, 0, 1, 0]), int(1)),
                LpRow::ge(iv(&[1, 0, 0, 0]), int(0)),
                LpRow::ge(iv(&[0, 1, 0, 0]), int(0)),
                LpRow::ge(iv(&[0, 0, 1, 0]), int(0)),
                LpRow::ge(iv(&[0, 0, 0, 1]), int(0)),
            ],
        };
        match solve_lp(&lp).unwrap() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(1, 20));
                check_feasible(&lp, &point);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: iv(&[1, 2]),
            rows: vec![LpRow::le(iv(&[1]), int(0))],
        };
        assert!(matches!(
            solve_lp(&lp),
            Err(LpError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn strict_weak_empty_feasibility() {
        let one = |p: i64| (iv(&[p]), int(1));
        match feasibility(1, &[one(1), (iv(&[-1]), int(0))]) {
            Feasibility::Strict(x) => {
                assert!(x[0] < int(1) && x[0] > int(0));
            }
            other => panic!("{other:?}"),
        }
        // x <= 0 and -x <= 0 pin x = 0.
        match feasibility(1, &[(iv(&[1]), int(0)), (iv(&[-1]), int(0))]) {
            Feasibility::Weak(x) => assert_eq!(x, iv(&[0])),
            other => panic!("{other:?}"),
        }
        match feasibility(1, &[(iv(&[1]), int(-1)), (iv(&[-1]), int(0))]) {
            Feasibility::Empty => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_outcomes_are_self_certifying() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1b59_77aa);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(0..=5);
            let coeff = |rng: &mut ChaCha8Rng| int(rng.gen_range(-3..=3i64));
            let objective: Vec<Rational> = (0..n).map(|_| coeff(&mut rng)).collect();
            let rows: Vec<LpRow> = (0..m)
                .map(|_| {
                    let coeffs: Vec<Rational> = (0..n).map(|_| coeff(&mut rng)).collect();
                    let rhs = coeff(&mut rng);
                    match rng.gen_range(0..3) {
                        0 => LpRow::le(coeffs, rhs),
                        1 => LpRow::ge(coeffs, rhs),
                        _ => LpRow::eq(coeffs, rhs),
                    }
                })
                .collect();
            let sense = if rng.gen_bool(0.5) { LpSense::Maximize } else { LpSense::Minimize };
            let lp = LinearProgram { sense, objective, rows };

            match solve_lp(&lp).unwrap() {
                LpOutcome::Optimal { value, point } => {
                    check_feasible(&lp, &point);
                    assert_eq!(dot(&lp.objective, &point), value);
                    // Optimality: demanding a strictly better value is infeasible.
                    let mut harder = lp.clone();
                    let bound = match lp.sense {
                        LpSense::Maximize => LpRow::ge(lp.objective.clone(), &value + int(1)),
                        LpSense::Minimize => LpRow::le(lp.objective.clone(), &value - int(1)),
                    };
                    harder.rows.push(bound);
                    match solve_lp(&harder).unwrap() {
                        LpOutcome::Infeasible { farkas } => check_farkas(&harder, &farkas),
                        other => panic!("better-than-optimal was {other:?}"),
                    }
                }
                LpOutcome::Infeasible { farkas } => check_farkas(&lp, &farkas),
                LpOutcome::Unbounded { point, ray } => {
                    check_feasible(&lp, &point);
                    check_ray(&lp, &ray);
                }
            }
        }
    }
}
