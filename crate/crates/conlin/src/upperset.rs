//! Closed convex upper sets with exact halfspace representations.
//!
//! An upper set satisfies `A + C = A` for the ambient ordering cone `C`.
//! Every nonempty one here is cut out by finitely many halfspaces
//! `a . z <= c` with `a` in `C- \ {0}` and a rational offset; such a system
//! is never empty (points far along an interior direction of `C` satisfy
//! every row strictly), so the empty set carries an explicit marker instead.
//!
//! Under `A ⊑ B iff B ⊆ A` these sets form a complete lattice, with the
//! whole space as least element and the empty set as greatest. Infima are
//! closed convex hulls of unions, suprema are intersections, and the closed
//! Minkowski sum is residuated. All comparisons run through exact rational
//! linear programs on the stored rows.

use crate::cone::OrderingCone;
use crate::extreal::ExtReal;
use crate::lp::{solve_lp, LinearProgram, LpOutcome, LpRow, LpSense};
use crate::poly::{hrep_to_vrep, vrep_to_hrep, VRep};
use crate::rational::{fmt_rational, normalize_content, Rational};
use num_traits::{Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct UpperSet {
    cone: Arc<OrderingCone>,
    rows: Vec<(Vec<Rational>, Rational)>,
    empty: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UpperSetError {
    #[error("row normal has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("row normal is zero")]
    ZeroNormal,
    #[error("row normal lies outside the negative polar of the ordering cone")]
    NormalOutsidePolar,
}

impl UpperSet {
    /// The whole space, least element of the lattice.
    pub fn universe(cone: Arc<OrderingCone>) -> UpperSet {
        UpperSet { cone, rows: Vec::new(), empty: false }
    }

    /// The empty set, greatest element of the lattice.
    pub fn empty_set(cone: Arc<OrderingCone>) -> UpperSet {
        UpperSet { cone, rows: Vec::new(), empty: true }
    }

    /// Validates that every normal is a nonzero vector of `C-`. The
    /// resulting set is always nonempty.
    pub fn from_rows(
        cone: Arc<OrderingCone>,
        rows: Vec<(Vec<Rational>, Rational)>,
    ) -> Result<UpperSet, UpperSetError> {
        for (a, _) in &rows {
            if a.len() != cone.dim {
                return Err(UpperSetError::DimensionMismatch { expected: cone.dim, got: a.len() });
            }
            if a.iter().all(Zero::is_zero) {
                return Err(UpperSetError::ZeroNormal);
            }
            if !cone.in_polar(a) {
                return Err(UpperSetError::NormalOutsidePolar);
            }
        }
        Ok(UpperSet { cone, rows, empty: false })
    }

    /// Construction bypass for rows produced by operations whose outputs are
    /// valid by the arithmetic itself; validated only in debug builds.
    fn from_checked_rows(cone: Arc<OrderingCone>, rows: Vec<(Vec<Rational>, Rational)>) -> UpperSet {
        debug_assert!(rows.iter().all(|(a, _)| cone.valid_upper_normal(a)));
        UpperSet { cone, rows, empty: false }
    }

    pub fn point_plus_cone(cone: Arc<OrderingCone>, z: &[Rational]) -> UpperSet {
        assert_eq!(z.len(), cone.dim);
        let rows = cone
            .polar_rays
            .iter()
            .map(|r| (r.clone(), crate::rational::dot(r, z)))
            .collect();
        UpperSet { cone, rows, empty: false }
    }

    /// The ordering cone itself as an upper set (neutral element of `⊕`).
    pub fn cone_set(cone: Arc<OrderingCone>) -> UpperSet {
        let rows = cone.cone_rows();
        UpperSet { cone, rows, empty: false }
    }

    pub fn cone(&self) -> &Arc<OrderingCone> {
        &self.cone
    }

    pub fn rows(&self) -> &[(Vec<Rational>, Rational)] {
        &self.rows
    }

    pub fn is_empty_set(&self) -> bool {
        self.empty
    }

    pub fn is_universe(&self) -> bool {
        !self.empty && self.rows.is_empty()
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        !self.empty && self.rows.iter().all(|(a, c)| crate::rational::dot(a, z) <= *c)
    }

    /// Exact interiority: strict satisfaction of every row, which for a
    /// halfspace system characterizes the topological interior.
    pub fn contains_in_interior(&self, z: &[Rational]) -> bool {
        !self.empty && self.rows.iter().all(|(a, c)| crate::rational::dot(a, z) < *c)
    }

    /// Support value `sup { a . z : z in A }`: `-inf` on the empty set,
    /// `+inf` when unbounded in the direction `a`.
    pub fn support(&self, a: &[Rational]) -> ExtReal {
        match self.argmax(a) {
            SupportPoint::Empty => ExtReal::MinusInf,
            SupportPoint::Unbounded => ExtReal::PlusInf,
            SupportPoint::Attained { value, .. } => ExtReal::Finite(value),
        }
    }

    /// Support value together with a maximizer when one exists.
    pub fn argmax(&self, a: &[Rational]) -> SupportPoint {
        if self.empty {
            return SupportPoint::Empty;
        }
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: a.to_vec(),
            rows: self.rows.iter().map(|(n, c)| LpRow::le(n.clone(), c.clone())).collect(),
        };
        match solve_lp(&lp).expect("row dimensions are validated at construction") {
            LpOutcome::Optimal { value, point } => SupportPoint::Attained { value, point },
            LpOutcome::Unbounded { .. } => SupportPoint::Unbounded,
            LpOutcome::Infeasible { .. } => {
                unreachable!("validated halfspace systems are nonempty")
            }
        }
    }

    /// `self ⊑ other`, i.e. `other ⊆ self`.
    pub fn order_leq(&self, other: &UpperSet) -> bool {
        debug_assert_eq!(self.cone, other.cone);
        if self.empty {
            return other.empty;
        }
        self.rows.iter().all(|(a, c)| other.support(a) <= ExtReal::Finite(c.clone()))
    }

    pub fn set_eq(&self, other: &UpperSet) -> bool {
        self.order_leq(other) && other.order_leq(self)
    }

    /// `self ⊆ interior(other)`; exact because polyhedral supports are
    /// attained whenever finite.
    pub fn subset_of_interior(&self, other: &UpperSet) -> bool {
        debug_assert_eq!(self.cone, other.cone);
        if self.empty {
            return true;
        }
        if other.empty {
            return false;
        }
        other
            .rows
            .iter()
            .all(|(b, c)| self.support(b) < ExtReal::Finite(c.clone()))
    }

    /// Recession cone, as the same rows with zeroed offsets; independent of
    /// the chosen representation for nonempty sets.
    pub fn recession(&self) -> UpperSet {
        assert!(!self.empty, "recession of the empty set is not used");
        let rows = self.rows.iter().map(|(a, _)| (a.clone(), Rational::zero())).collect();
        UpperSet { cone: self.cone.clone(), rows, empty: false }
    }

    /// Closed Minkowski sum; the empty set absorbs.
    pub fn oplus(&self, other: &UpperSet) -> UpperSet {
        debug_assert_eq!(self.cone, other.cone);
        if self.empty || other.empty {
            return UpperSet::empty_set(self.cone.clone());
        }
        if self.rows.is_empty() || other.rows.is_empty() {
            return UpperSet::universe(self.cone.clone());
        }
        let va = hrep_to_vrep(&self.rows, self.cone.dim);
        let vb = hrep_to_vrep(&other.rows, self.cone.dim);
        let mut sum = VRep::default();
        for p in &va.points {
            for q in &vb.points {
                sum.points.push(crate::rational::add_vec(p, q));
            }
        }
        sum.rays.extend(va.rays.iter().chain(&vb.rays).cloned());
        sum.lines.extend(va.lines.iter().chain(&vb.lines).cloned());
        UpperSet::from_vrep(self.cone.clone(), &sum)
    }

    /// Scaling in the conlinear sense: `t > 0` scales pointwise, `t = 0`
    /// sends every set, including the empty set, to the ordering cone.
    pub fn scale(&self, t: &Rational) -> UpperSet {
        assert!(!t.is_negative(), "only nonnegative scaling is defined");
        if t.is_zero() {
            return UpperSet::cone_set(self.cone.clone());
        }
        if self.empty {
            return UpperSet::empty_set(self.cone.clone());
        }
        let rows = self.rows.iter().map(|(a, c)| (a.clone(), c * t)).collect();
        UpperSet { cone: self.cone.clone(), rows, empty: false }
    }

    /// Residual of `⊕`: the `⊑`-largest `D` with `self ⊑ other ⊕ D`.
    /// Computed rowwise as `c_j ⊖ support(a_j | other)`.
    pub fn inf_residual(&self, other: &UpperSet) -> UpperSet {
        debug_assert_eq!(self.cone, other.cone);
        if other.empty {
            return UpperSet::universe(self.cone.clone());
        }
        if self.empty {
            return UpperSet::empty_set(self.cone.clone());
        }
        let mut rows = Vec::with_capacity(self.rows.len());
        for (a, c) in &self.rows {
            match other.support(a) {
                ExtReal::PlusInf => return UpperSet::empty_set(self.cone.clone()),
                ExtReal::Finite(s) => rows.push((a.clone(), c - s)),
                ExtReal::MinusInf => unreachable!("other is nonempty"),
            }
        }
        UpperSet::from_checked_rows(self.cone.clone(), rows)
    }

    /// Generator form of the set; `points` is empty exactly for the empty set.
    pub fn vrep(&self) -> VRep {
        if self.empty {
            return VRep::default();
        }
        let v = hrep_to_vrep(&self.rows, self.cone.dim);
        debug_assert!(!v.points.is_empty(), "validated halfspace systems are nonempty");
        v
    }

    pub fn from_vrep(cone: Arc<OrderingCone>, v: &VRep) -> UpperSet {
        if v.points.is_empty() {
            return UpperSet::empty_set(cone);
        }
        let rows = vrep_to_hrep(v, cone.dim);
        UpperSet::from_checked_rows(cone, rows)
    }

    /// Canonical irredundant row system: jointly content-normalized rows,
    /// one per facet, lexicographically sorted. Representation-independent
    /// for nonempty sets.
    pub fn canonical_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        if self.empty {
            return Vec::new();
        }
        let mut rows: Vec<(Vec<Rational>, Rational)> = self
            .rows
            .iter()
            .map(|(a, c)| {
                let na = normalize_content(a);
                let k = a.iter().position(|x| !x.is_zero()).expect("normals are nonzero");
                let lambda = &na[k] / &a[k];
                (na, c * &lambda)
            })
            .collect();
        rows.sort();
        rows.dedup();
        // Same normal: the smallest offset dominates; sorted order puts it first.
        let mut filtered: Vec<(Vec<Rational>, Rational)> = Vec::with_capacity(rows.len());
        for row in rows {
            if filtered.last().is_some_and(|prev| prev.0 == row.0) {
                continue;
            }
            filtered.push(row);
        }
        let mut keep = vec![true; filtered.len()];
        for j in 0..filtered.len() {
            keep[j] = false;
            let others: Vec<(Vec<Rational>, Rational)> = filtered
                .iter()
                .enumerate()
                .filter(|(i, _)| keep[*i])
                .map(|(_, r)| r.clone())
                .collect();
            let sigma = support_over(&others, self.cone.dim, &filtered[j].0);
            if sigma > ExtReal::Finite(filtered[j].1.clone()) {
                keep[j] = true;
            }
        }
        filtered
            .into_iter()
            .zip(keep)
            .filter_map(|(row, k)| k.then_some(row))
            .collect()
    }

    /// One-line-per-facet text form: `a_1 ... a_m <= c`, or the markers
    /// `empty` and `Z`.
    pub fn dump(&self) -> String {
        if self.empty {
            return "empty".to_string();
        }
        let rows = self.canonical_rows();
        if rows.is_empty() {
            return "Z".to_string();
        }
        rows.iter()
            .map(|(a, c)| {
                let coords: Vec<String> = a.iter().map(fmt_rational).collect();
                format!("{} <= {}", coords.join(" "), fmt_rational(c))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[derive(Debug, Clone)]
pub enum SupportPoint {
    Empty,
    Unbounded,
    Attained { value: Rational, point: Vec<Rational> },
}

fn support_over(rows: &[(Vec<Rational>, Rational)], dim: usize, a: &[Rational]) -> ExtReal {
    debug_assert!(rows.iter().all(|(n, _)| n.len() == dim) && a.len() == dim);
    let lp = LinearProgram {
        sense: LpSense::Maximize,
        objective: a.to_vec(),
        rows: rows.iter().map(|(n, c)| LpRow::le(n.clone(), c.clone())).collect(),
    };
    match solve_lp(&lp).expect("dimensions agree") {
        LpOutcome::Optimal { value, .. } => ExtReal::Finite(value),
        LpOutcome::Unbounded { .. } => ExtReal::PlusInf,
        LpOutcome::Infeasible { .. } => ExtReal::MinusInf,
    }
}

/// Greatest lower bound of the family: closed convex hull of the union.
/// The infimum of the empty family is the empty set.
pub fn lattice_inf(cone: &Arc<OrderingCone>, sets: &[UpperSet]) -> UpperSet {
    let live: Vec<&UpperSet> = sets.iter().filter(|s| !s.empty).collect();
    if live.is_empty() {
        return UpperSet::empty_set(cone.clone());
    }
    if live.iter().any(|s| s.rows.is_empty()) {
        return UpperSet::universe(cone.clone());
    }
    let mut merged = VRep::default();
    for s in live {
        let v = s.vrep();
        merged.points.extend(v.points);
        merged.rays.extend(v.rays);
        merged.lines.extend(v.lines);
    }
    UpperSet::from_vrep(cone.clone(), &merged)
}

/// Least upper bound of the family: intersection. The supremum of the
/// empty family is the whole space.
pub fn lattice_sup(cone: &Arc<OrderingCone>, sets: &[UpperSet]) -> UpperSet {
    if sets.iter().any(|s| s.empty) {
        return UpperSet::empty_set(cone.clone());
    }
    let rows: Vec<(Vec<Rational>, Rational)> =
        sets.iter().flat_map(|s| s.rows.iter().cloned()).collect();
    UpperSet::from_checked_rows(cone.clone(), rows)
}
