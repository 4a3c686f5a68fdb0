//! Piecewise-linear set-valued maps into the upper-set lattice.
//!
//! The workhorse is [`HFamilyMap`]: fixed outer normals from `C- \ {0}`
//! paired with concave piecewise-linear offset functions over a polyhedral
//! domain. Offsets concave and the domain convex make the map convex by
//! construction: the value of a feasibility system grows concavely and
//! monotonically with its right-hand sides. Vector-valued maps enter the
//! lattice through their epigraphical extension `x -> {psi(x)} + C`, and
//! finitely generated moving hulls through [`set_extension`].

use crate::cone::OrderingCone;
use crate::extreal::ExtReal;
use crate::poly::{vrep_to_hrep, VRep};
use crate::rational::{add_vec, dot, sub_vec, Rational};
use crate::upperset::UpperSet;
use num_traits::{Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

/// Convex piecewise-linear function: the max of its affine pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPwl {
    pieces: Vec<(Vec<Rational>, Rational)>,
}

/// Concave piecewise-linear function: the min of its affine pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavePwl {
    pieces: Vec<(Vec<Rational>, Rational)>,
}

impl ConvexPwl {
    pub fn new(pieces: Vec<(Vec<Rational>, Rational)>) -> ConvexPwl {
        assert!(!pieces.is_empty(), "a piecewise-linear function needs pieces");
        let n = pieces[0].0.len();
        assert!(pieces.iter().all(|(g, _)| g.len() == n));
        ConvexPwl { pieces }
    }

    pub fn affine(gradient: Vec<Rational>, intercept: Rational) -> ConvexPwl {
        ConvexPwl { pieces: vec![(gradient, intercept)] }
    }

    pub fn arg_dim(&self) -> usize {
        self.pieces[0].0.len()
    }

    pub fn pieces(&self) -> &[(Vec<Rational>, Rational)] {
        &self.pieces
    }

    pub fn is_affine(&self) -> bool {
        let mut distinct = self.pieces.clone();
        distinct.sort();
        distinct.dedup();
        distinct.len() == 1
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.pieces.iter().map(|(g, h)| dot(g, x) + h).max().expect("nonempty pieces")
    }
}

impl ConcavePwl {
    pub fn new(pieces: Vec<(Vec<Rational>, Rational)>) -> ConcavePwl {
        assert!(!pieces.is_empty(), "a piecewise-linear function needs pieces");
        let n = pieces[0].0.len();
        assert!(pieces.iter().all(|(g, _)| g.len() == n));
        ConcavePwl { pieces }
    }

    pub fn affine(gradient: Vec<Rational>, intercept: Rational) -> ConcavePwl {
        ConcavePwl { pieces: vec![(gradient, intercept)] }
    }

    pub fn constant(arg_dim: usize, value: Rational) -> ConcavePwl {
        ConcavePwl::affine(vec![Rational::zero(); arg_dim], value)
    }

    pub fn arg_dim(&self) -> usize {
        self.pieces[0].0.len()
    }

    pub fn pieces(&self) -> &[(Vec<Rational>, Rational)] {
        &self.pieces
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.pieces.iter().map(|(g, h)| dot(g, x) + h).min().expect("nonempty pieces")
    }

    /// One-sided directional derivative at `x` along `u`: the minimum slope
    /// among the pieces active at `x`.
    pub fn one_sided_slope(&self, x: &[Rational], u: &[Rational]) -> Rational {
        let value = self.eval(x);
        self.pieces
            .iter()
            .filter(|(g, h)| dot(g, x) + h == value)
            .map(|(g, _)| dot(g, u))
            .min()
            .expect("some piece is active")
    }

    /// Pointwise sum; pieces combine as a cross product because the minima
    /// are taken independently.
    pub fn sum(&self, other: &ConcavePwl) -> ConcavePwl {
        let mut pieces = Vec::with_capacity(self.pieces.len() * other.pieces.len());
        for (g1, h1) in &self.pieces {
            for (g2, h2) in &other.pieces {
                pieces.push((add_vec(g1, g2), h1 + h2));
            }
        }
        pieces.sort();
        pieces.dedup();
        ConcavePwl { pieces }
    }

    /// Restriction to the line `t -> x0 + t * dir`, as a function of `t`.
    pub fn restrict_line(&self, x0: &[Rational], dir: &[Rational]) -> ConcavePwl {
        let pieces = self
            .pieces
            .iter()
            .map(|(g, h)| (vec![dot(g, dir)], dot(g, x0) + h))
            .collect();
        ConcavePwl { pieces }
    }
}

/// Scales a convex function by a coefficient, yielding the concave (t < 0),
/// constant-zero (t = 0), or affine-only (t > 0) contribution used when
/// assembling scalarized offsets.
fn scaled_contribution(
    t: &Rational,
    component: &ConvexPwl,
    arg_dim: usize,
) -> Result<ConcavePwl, SetMapError> {
    if t.is_zero() {
        return Ok(ConcavePwl::constant(arg_dim, Rational::zero()));
    }
    if t.is_positive() && !component.is_affine() {
        return Err(SetMapError::NotCConvex);
    }
    let pieces = component
        .pieces
        .iter()
        .map(|(g, h)| (g.iter().map(|x| x * t).collect(), h * t))
        .collect();
    Ok(ConcavePwl::new(pieces))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetMapError {
    #[error("dimension mismatch in map data")]
    DimensionMismatch,
    #[error("normal lies outside C- or is zero")]
    InvalidNormal,
    #[error("map is not provably C-convex: a base vertex weights a non-affine component positively")]
    NotCConvex,
    #[error("scalarizer must be a nonzero vector of C-")]
    InvalidScalarizer,
    #[error("generators do not share one linear part ({0}), so the hull map is not piecewise-linear with fixed normals")]
    NotExtendable(String),
}

/// Set-valued map `f(x) = { z : a_j . z <= b_j(x) }` on a polyhedral domain,
/// empty off the domain. Convex by construction.
#[derive(Debug, Clone)]
pub struct HFamilyMap {
    pub name: String,
    cone: Arc<OrderingCone>,
    arg_dim: usize,
    normals: Vec<Vec<Rational>>,
    offsets: Vec<ConcavePwl>,
    domain: Vec<(Vec<Rational>, Rational)>,
}

impl HFamilyMap {
    pub fn new(
        name: impl Into<String>,
        cone: Arc<OrderingCone>,
        arg_dim: usize,
        normals: Vec<Vec<Rational>>,
        offsets: Vec<ConcavePwl>,
        domain: Vec<(Vec<Rational>, Rational)>,
    ) -> Result<HFamilyMap, SetMapError> {
        if normals.len() != offsets.len() {
            return Err(SetMapError::DimensionMismatch);
        }
        for a in &normals {
            if a.len() != cone.dim {
                return Err(SetMapError::DimensionMismatch);
            }
            if !cone.valid_upper_normal(a) {
                return Err(SetMapError::InvalidNormal);
            }
        }
        if offsets.iter().any(|b| b.arg_dim() != arg_dim) {
            return Err(SetMapError::DimensionMismatch);
        }
        if domain.iter().any(|(d, _)| d.len() != arg_dim) {
            return Err(SetMapError::DimensionMismatch);
        }
        Ok(HFamilyMap { name: name.into(), cone, arg_dim, normals, offsets, domain })
    }

    /// The constant empty map (domain carries an unsatisfiable row).
    pub fn empty_map(name: impl Into<String>, cone: Arc<OrderingCone>, arg_dim: usize) -> HFamilyMap {
        let never = (vec![Rational::zero(); arg_dim], -num_traits::One::one());
        HFamilyMap {
            name: name.into(),
            cone,
            arg_dim,
            normals: Vec::new(),
            offsets: Vec::new(),
            domain: vec![never],
        }
    }

    pub fn cone(&self) -> &Arc<OrderingCone> {
        &self.cone
    }

    pub fn arg_dim(&self) -> usize {
        self.arg_dim
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[ConcavePwl] {
        &self.offsets
    }

    pub fn domain_rows(&self) -> &[(Vec<Rational>, Rational)] {
        &self.domain
    }

    pub fn in_domain(&self, x: &[Rational]) -> bool {
        self.domain.iter().all(|(d, e)| dot(d, x) <= *e)
    }

    pub fn evaluate(&self, x: &[Rational]) -> UpperSet {
        assert_eq!(x.len(), self.arg_dim);
        if !self.in_domain(x) {
            return UpperSet::empty_set(self.cone.clone());
        }
        let rows: Vec<(Vec<Rational>, Rational)> = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(a, b)| (a.clone(), b.eval(x)))
            .collect();
        UpperSet::from_rows(self.cone.clone(), rows).expect("normals validated at construction")
    }

    pub fn scalarize(&self, zstar: &[Rational]) -> Result<Scalarization<'_>, SetMapError> {
        if zstar.len() != self.cone.dim || !self.cone.valid_upper_normal(zstar) {
            return Err(SetMapError::InvalidScalarizer);
        }
        Ok(Scalarization { map: self, zstar: zstar.to_vec() })
    }

    /// Restriction to the segment `t -> x0 + t (x - x0)`, `t in [0, 1]`,
    /// as a one-dimensional map.
    pub fn restrict(&self, x0: &[Rational], x: &[Rational]) -> HFamilyMap {
        assert_eq!(x0.len(), self.arg_dim);
        assert_eq!(x.len(), self.arg_dim);
        let dir = sub_vec(x, x0);
        let offsets: Vec<ConcavePwl> =
            self.offsets.iter().map(|b| b.restrict_line(x0, &dir)).collect();
        let mut domain: Vec<(Vec<Rational>, Rational)> = self
            .domain
            .iter()
            .map(|(d, e)| (vec![dot(d, &dir)], e - dot(d, x0)))
            .collect();
        let one: Rational = num_traits::One::one();
        domain.push((vec![one.clone()], one.clone()));
        domain.push((vec![-one], Rational::zero()));
        HFamilyMap {
            name: format!("{}|segment", self.name),
            cone: self.cone.clone(),
            arg_dim: 1,
            normals: self.normals.clone(),
            offsets,
            domain,
        }
    }

    /// Convexity check: the structural argument (concave offsets, convex
    /// domain, monotone concave dependence of a feasibility system on its
    /// right-hand sides) certifies convexity outright; the supplied midpoint
    /// probes re-verify it numerically and report an exact counterexample if
    /// the implementation ever disagreed with itself.
    pub fn validate_convexity(
        &self,
        probe_pairs: &[(Vec<Rational>, Vec<Rational>)],
    ) -> ConvexityOutcome {
        let half: Rational = crate::rational::rat(1, 2);
        for (x1, x2) in probe_pairs {
            let mid: Vec<Rational> =
                x1.iter().zip(x2).map(|(a, b)| (a + b) * &half).collect();
            let blend = self.evaluate(x1).scale(&half).oplus(&self.evaluate(x2).scale(&half));
            if !self.evaluate(&mid).order_leq(&blend) {
                return ConvexityOutcome::Counterexample { x1: x1.clone(), x2: x2.clone() };
            }
        }
        ConvexityOutcome::Certified { probes: probe_pairs.len() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConvexityOutcome {
    Certified { probes: usize },
    Counterexample { x1: Vec<Rational>, x2: Vec<Rational> },
}

/// Linear scalarization `phi(x) = inf { -z* . z : z in f(x) } = -support`.
/// `+inf` exactly off the domain; `-inf` where the support is unbounded.
#[derive(Debug, Clone)]
pub struct Scalarization<'a> {
    map: &'a HFamilyMap,
    zstar: Vec<Rational>,
}

impl Scalarization<'_> {
    pub fn zstar(&self) -> &[Rational] {
        &self.zstar
    }

    pub fn value(&self, x: &[Rational]) -> ExtReal {
        self.map.evaluate(x).support(&self.zstar).neg()
    }
}

/// Vector-valued piecewise-linear map with convex components, on a
/// polyhedral domain.
#[derive(Debug, Clone)]
pub struct VectorMap {
    pub name: String,
    arg_dim: usize,
    out_dim: usize,
    components: Vec<ConvexPwl>,
    domain: Vec<(Vec<Rational>, Rational)>,
}

impl VectorMap {
    pub fn new(
        name: impl Into<String>,
        arg_dim: usize,
        components: Vec<ConvexPwl>,
        domain: Vec<(Vec<Rational>, Rational)>,
    ) -> Result<VectorMap, SetMapError> {
        if components.is_empty()
            || components.iter().any(|c| c.arg_dim() != arg_dim)
            || domain.iter().any(|(d, _)| d.len() != arg_dim)
        {
            return Err(SetMapError::DimensionMismatch);
        }
        let out_dim = components.len();
        Ok(VectorMap { name: name.into(), arg_dim, out_dim, components, domain })
    }

    pub fn arg_dim(&self) -> usize {
        self.arg_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn components(&self) -> &[ConvexPwl] {
        &self.components
    }

    pub fn domain_rows(&self) -> &[(Vec<Rational>, Rational)] {
        &self.domain
    }

    pub fn in_domain(&self, x: &[Rational]) -> bool {
        self.domain.iter().all(|(d, e)| dot(d, x) <= *e)
    }

    pub fn eval(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        if !self.in_domain(x) {
            return None;
        }
        Some(self.components.iter().map(|c| c.eval(x)).collect())
    }

    /// Epigraphical extension `x -> {psi(x)} + C` as an H-family: one row
    /// per base vertex `v`, with offset `v . psi(x)`. Requires the
    /// scalarized C-convexity certificate: components weighted positively
    /// by some vertex must be affine.
    pub fn epigraphical_extension(
        &self,
        cone: &Arc<OrderingCone>,
    ) -> Result<HFamilyMap, SetMapError> {
        if cone.dim != self.out_dim {
            return Err(SetMapError::DimensionMismatch);
        }
        let mut normals = Vec::with_capacity(cone.base_vertices.len());
        let mut offsets = Vec::with_capacity(cone.base_vertices.len());
        for v in &cone.base_vertices {
            let mut acc = ConcavePwl::constant(self.arg_dim, Rational::zero());
            for (vi, component) in v.iter().zip(&self.components) {
                let contribution = scaled_contribution(vi, component, self.arg_dim)?;
                acc = acc.sum(&contribution);
            }
            normals.push(v.clone());
            offsets.push(acc);
        }
        HFamilyMap::new(
            format!("{}^C", self.name),
            cone.clone(),
            self.arg_dim,
            normals,
            offsets,
            self.domain.clone(),
        )
    }
}

/// Finitely generated set-valued data: `F(x) = conv { M_k x + q_k } +
/// cone(rays)` on a polyhedral domain.
#[derive(Debug, Clone)]
pub struct SetData {
    pub name: String,
    pub arg_dim: usize,
    pub out_dim: usize,
    /// Affine generators as (linear part: out_dim rows of arg_dim, constant).
    pub generators: Vec<(Vec<Vec<Rational>>, Vec<Rational>)>,
    pub rays: Vec<Vec<Rational>>,
    pub domain: Vec<(Vec<Rational>, Rational)>,
}

/// Upper-hull extension `x -> cl co (F(x) + C)` as an H-family.
///
/// Exact in two regimes: constant generators (one generator-to-halfspace
/// conversion), and generators sharing a single linear part `M` (the hull is
/// a rigid translate `Mx + q_1 + P` of a fixed polyhedron `P`, so normals
/// stay put and offsets are affine). Anything else has facet normals that
/// rotate with `x` and is rejected: no fixed-normal family represents it.
pub fn set_extension(
    data: &SetData,
    cone: &Arc<OrderingCone>,
) -> Result<HFamilyMap, SetMapError> {
    if cone.dim != data.out_dim {
        return Err(SetMapError::DimensionMismatch);
    }
    for (linear, constant) in &data.generators {
        if linear.len() != data.out_dim
            || linear.iter().any(|row| row.len() != data.arg_dim)
            || constant.len() != data.out_dim
        {
            return Err(SetMapError::DimensionMismatch);
        }
    }
    if data.rays.iter().any(|r| r.len() != data.out_dim) {
        return Err(SetMapError::DimensionMismatch);
    }

    if data.generators.is_empty() {
        return Ok(HFamilyMap::empty_map(data.name.clone(), cone.clone(), data.arg_dim));
    }

    let (m1, _) = &data.generators[0];
    for (idx, (mk, _)) in data.generators.iter().enumerate() {
        if mk != m1 {
            return Err(SetMapError::NotExtendable(format!(
                "generator {idx} moves differently from generator 0"
            )));
        }
    }

    // Hull of the displacements q_k - q_1, plus all recession directions.
    let base = &data.generators[0].1;
    let mut v = VRep::default();
    for (_, qk) in &data.generators {
        v.points.push(sub_vec(qk, base));
    }
    v.rays.extend(data.rays.iter().cloned());
    v.rays.extend(cone.generators.iter().cloned());
    let rows = vrep_to_hrep(&v, data.out_dim);

    let constant_motion = m1.iter().all(|row| row.iter().all(Zero::is_zero));
    let mut normals = Vec::with_capacity(rows.len());
    let mut offsets = Vec::with_capacity(rows.len());
    for (n, c) in rows {
        if !cone.valid_upper_normal(&n) {
            return Err(SetMapError::InvalidNormal);
        }
        let offset = if constant_motion {
            ConcavePwl::constant(data.arg_dim, &c + dot(&n, base))
        } else {
            // Row value along x: c + n . (M x + q_1).
            let gradient: Vec<Rational> =
                (0..data.arg_dim).map(|j| m1.iter().zip(&n).map(|(row, ni)| &row[j] * ni).sum()).collect();
            ConcavePwl::affine(gradient, &c + dot(&n, base))
        };
        normals.push(n);
        offsets.push(offset);
    }
    HFamilyMap::new(
        format!("{}^C", data.name),
        cone.clone(),
        data.arg_dim,
        normals,
        offsets,
        data.domain.clone(),
    )
}
