//! Exact polyhedral conversions between halfspace and generator form.
//!
//! Everything reduces to one primitive: the extreme rays and lineality space
//! of a cone `{ x : M x <= 0 }`. Rays are found by enumerating row subsets
//! that cut the cone down to a single direction. That is not asymptotically
//! optimal, but it is exact, deterministic, and fast at the problem sizes
//! this crate works with.

use crate::rational::{dot, normalize_content, Rational};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Generators of a polyhedral cone: `cone(rays) + span(lines)`.
/// Ray representatives are orthogonal to the lineality space and
/// content-normalized, so they are canonical.
#[derive(Debug, Clone, Default)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<Rational>>,
    pub lines: Vec<Vec<Rational>>,
}

/// Generators of a polyhedron: `conv(points) + cone(rays) + span(lines)`.
/// `points` is empty exactly when the polyhedron is.
#[derive(Debug, Clone, Default)]
pub struct VRep {
    pub points: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lines: Vec<Vec<Rational>>,
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(mat: &mut [Vec<Rational>], dim: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        if row == mat.len() {
            break;
        }
        let Some(p) = (row..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let lead = mat[row][col].clone();
        for x in &mut mat[row] {
            *x = &*x / &lead;
        }
        for i in 0..mat.len() {
            if i != row && !mat[i][col].is_zero() {
                let f = mat[i][col].clone();
                for k in 0..dim {
                    let t = &f * &mat[row][k];
                    mat[i][k] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{ x : row . x = 0 for every row }`, content-normalized.
pub fn null_space(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut mat = rows.to_vec();
    let pivots = rref(&mut mat, dim);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); dim];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&mat[r][free];
        }
        basis.push(normalize_content(&v));
    }
    basis
}

pub fn rank(rows: &[Vec<Rational>], dim: usize) -> usize {
    let mut mat = rows.to_vec();
    rref(&mut mat, dim).len()
}

/// Extreme rays and lineality of `{ x : m_row . x <= 0 }`.
///
/// A direction is an extreme ray exactly when, together with orthogonality
/// to the lineality space, some `dim - lineality - 1` of the rows pin it
/// down to a line; all such row subsets are enumerated.
pub fn cone_hv(m_rows: &[Vec<Rational>], dim: usize) -> ConeGenerators {
    let lines = null_space(m_rows, dim);
    let ell = lines.len();
    if ell == dim {
        return ConeGenerators { rays: Vec::new(), lines };
    }
    let k = dim - ell;
    let mut rays: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for subset in (0..m_rows.len()).combinations(k - 1) {
        let mut sys: Vec<Vec<Rational>> = subset.iter().map(|&i| m_rows[i].clone()).collect();
        sys.extend(lines.iter().cloned());
        let null = null_space(&sys, dim);
        if null.len() != 1 {
            continue;
        }
        let v = &null[0];
        if m_rows.iter().all(|r| !dot(r, v).is_positive()) {
            rays.insert(v.clone());
        } else {
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            if m_rows.iter().all(|r| !dot(r, &neg).is_positive()) {
                rays.insert(neg);
            }
        }
    }
    ConeGenerators { rays: rays.into_iter().collect(), lines }
}

/// Generator form of `{ z : a_i . z <= c_i }` via homogenization.
pub fn hrep_to_vrep(rows: &[(Vec<Rational>, Rational)], dim: usize) -> VRep {
    let mut hom: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(a, c)| {
            let mut r = a.clone();
            r.push(-c);
            r
        })
        .collect();
    let mut tneg = vec![Rational::zero(); dim + 1];
    tneg[dim] = -Rational::one();
    hom.push(tneg);

    let gens = cone_hv(&hom, dim + 1);
    let mut out = VRep::default();
    for l in gens.lines {
        debug_assert!(l[dim].is_zero(), "a line cannot leave the t >= 0 halfspace");
        out.lines.push(normalize_content(&l[..dim]));
    }
    for r in gens.rays {
        if r[dim].is_zero() {
            out.rays.push(normalize_content(&r[..dim]));
        } else {
            let t = r[dim].clone();
            out.points.push(r[..dim].iter().map(|x| x / &t).collect());
        }
    }
    out
}

/// Halfspace form of `conv(points) + cone(rays) + span(lines)`.
/// Panics on an empty generator list; callers represent the empty set
/// explicitly instead.
pub fn vrep_to_hrep(v: &VRep, dim: usize) -> Vec<(Vec<Rational>, Rational)> {
    assert!(!v.points.is_empty(), "empty generator form has no halfspace form");
    let mut polar: Vec<Vec<Rational>> = Vec::new();
    for p in &v.points {
        let mut r = p.clone();
        r.push(Rational::one());
        polar.push(r);
    }
    for g in &v.rays {
        let mut r = g.clone();
        r.push(Rational::zero());
        polar.push(r);
    }
    for l in &v.lines {
        let mut r = l.clone();
        r.push(Rational::zero());
        polar.push(r.iter().map(|x| -x).collect());
        polar.push(r);
    }

    let gens = cone_hv(&polar, dim + 1);
    let mut rows = Vec::new();
    for ray in gens.rays {
        if ray[..dim].iter().all(Zero::is_zero) {
            continue;
        }
        rows.push((ray[..dim].to_vec(), -ray[dim].clone()));
    }
    for line in gens.lines {
        if line[..dim].iter().all(Zero::is_zero) {
            continue;
        }
        rows.push((line[..dim].to_vec(), -line[dim].clone()));
        rows.push((line[..dim].iter().map(|x| -x).collect(), line[dim].clone()));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve_lp, LinearProgram, LpOutcome, LpRow, LpSense};
    use crate::rational::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&p| int(p)).collect()
    }

    fn row(a: &[i64], c: i64) -> (Vec<Rational>, Rational) {
        (iv(a), int(c))
    }

    #[test]
    fn nonnegative_orthant_rays() {
        let gens = cone_hv(&[iv(&[-1, 0]), iv(&[0, -1])], 2);
        assert!(gens.lines.is_empty());
        assert_eq!(gens.rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn halfspace_has_lineality() {
        let gens = cone_hv(&[iv(&[1, 0])], 2);
        assert_eq!(gens.lines, vec![iv(&[0, 1])]);
        assert_eq!(gens.rays, vec![iv(&[-1, 0])]);
    }

    #[test]
    fn cone_over_square_has_four_rays() {
        let rows = vec![iv(&[1, 0, -1]), iv(&[-1, 0, -1]), iv(&[0, 1, -1]), iv(&[0, -1, -1])];
        let gens = cone_hv(&rows, 3);
        assert!(gens.lines.is_empty());
        let expect: Vec<Vec<Rational>> =
            [[-1, -1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, 1]].iter().map(|r| iv(&r[..])).collect();
        assert_eq!(gens.rays, expect);
    }

    #[test]
    fn point_cone_has_no_generators() {
        let gens = cone_hv(&[iv(&[1]), iv(&[-1])], 1);
        assert!(gens.rays.is_empty() && gens.lines.is_empty());
    }

    #[test]
    fn unit_square_vertices() {
        let rows =
            vec![row(&[1, 0], 1), row(&[-1, 0], 0), row(&[0, 1], 1), row(&[0, -1], 0)];
        let v = hrep_to_vrep(&rows, 2);
        assert!(v.rays.is_empty() && v.lines.is_empty());
        let mut pts = v.points;
        pts.sort();
        assert_eq!(pts, vec![iv(&[0, 0]), iv(&[0, 1]), iv(&[1, 0]), iv(&[1, 1])]);
    }

    #[test]
    fn unbounded_upper_set_generators() {
        let rows = vec![row(&[-1, 0], 0), row(&[0, -1], 0), row(&[-1, -1], -1)];
        let v = hrep_to_vrep(&rows, 2);
        let mut pts = v.points;
        pts.sort();
        assert_eq!(pts, vec![iv(&[0, 1]), iv(&[1, 0])]);
        assert_eq!(v.rays, vec![iv(&[0, 1]), iv(&[1, 0])]);
        assert!(v.lines.is_empty());
    }

    #[test]
    fn infeasible_system_has_no_points() {
        let v = hrep_to_vrep(&[row(&[1], -1), row(&[-1], 0)], 1);
        assert!(v.points.is_empty());
    }

    #[test]
    fn segment_to_halfspaces_and_back() {
        let v = VRep { points: vec![iv(&[0, 0]), iv(&[1, 1])], rays: vec![], lines: vec![] };
        let rows = vrep_to_hrep(&v, 2);
        let inside = iv(&[1, 1]).iter().map(|x| x / int(2)).collect::<Vec<_>>();
        assert!(rows.iter().all(|(a, c)| dot(a, &inside) <= *c));
        let outside = iv(&[1, 0]);
        assert!(rows.iter().any(|(a, c)| dot(a, &outside) > *c));
    }

    #[test]
    fn lineality_survives_round_trip() {
        let v = VRep { points: vec![iv(&[0, 0])], rays: vec![iv(&[1, 0])], lines: vec![iv(&[0, 1])] };
        let rows = vrep_to_hrep(&v, 2);
        assert_eq!(rows.len(), 1);
        let (a, c) = &rows[0];
        assert_eq!(normalize_content(a), iv(&[-1, 0]));
        assert!(c.is_zero());
    }

    fn max_over(rows: &[(Vec<Rational>, Rational)], dim: usize, obj: &[Rational]) -> LpOutcome {
        let lp = LinearProgram {
            sense: LpSense::Maximize,
            objective: obj.to_vec(),
            rows: rows.iter().map(|(a, c)| LpRow::le(a.clone(), c.clone())).collect(),
        };
        solve_lp(&lp).unwrap()
    }

    fn assert_same_polyhedron(
        h1: &[(Vec<Rational>, Rational)],
        h2: &[(Vec<Rational>, Rational)],
        dim: usize,
    ) {
        for (a, c) in h2 {
            match max_over(h1, dim, a) {
                LpOutcome::Optimal { value, .. } => assert!(value <= *c, "row violated: {value} > {c}"),
                other => panic!("support over first system was {other:?}"),
            }
        }
        for (a, c) in h1 {
            match max_over(h2, dim, a) {
                LpOutcome::Optimal { value, .. } => assert!(value <= *c),
                other => panic!("support over second system was {other:?}"),
            }
        }
    }

    #[test]
    fn random_polytopes_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
        for _ in 0..25 {
            let dim = rng.gen_range(1..=3);
            let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
            for i in 0..dim {
                let mut pos = vec![0i64; dim];
                pos[i] = 1;
                rows.push(row(&pos, 2));
                pos[i] = -1;
                rows.push(row(&pos, 2));
            }
            for _ in 0..3 {
                let a: Vec<i64> = (0..dim).map(|_| rng.gen_range(-2..=2i64)).collect();
                if a.iter().all(|&x| x == 0) {
                    continue;
                }
                rows.push(row(&a, rng.gen_range(0..=2i64)));
            }
            let v = hrep_to_vrep(&rows, dim);
            assert!(!v.points.is_empty(), "box with origin-feasible cuts is nonempty");
            assert!(v.rays.is_empty() && v.lines.is_empty(), "boxed sets are bounded");
            let back = vrep_to_hrep(&v, dim);
            for p in &v.points {
                assert!(back.iter().all(|(a, c)| dot(a, p) <= *c));
            }
            assert_same_polyhedron(&rows, &back, dim);
        }
    }
}
