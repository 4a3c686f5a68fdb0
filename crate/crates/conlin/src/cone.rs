//! Polyhedral ordering cones.
//!
//! An ordering cone here is a pointed, full-dimensional, finitely generated
//! cone `C` in `R^m`. Construction precomputes the extreme rays of the
//! negative polar `C- = { y : y . g <= 0 }`, an interior point `e`, and the
//! vertices of the dual base `B* = { y in C- : y . e = -1 }`, which together
//! drive every membership and scalarization test exactly.

use crate::poly::{cone_hv, rank};
use crate::rational::{dot, is_zero_vec, normalize_content, Rational};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingCone {
    pub dim: usize,
    pub generators: Vec<Vec<Rational>>,
    /// Extreme rays of the negative polar, content-normalized and sorted.
    pub polar_rays: Vec<Vec<Rational>>,
    /// A point of `int C`; every polar ray pairs strictly negatively with it.
    pub interior: Vec<Rational>,
    /// Vertices of `{ y in C- : y . e = -1 }`, aligned with `polar_rays`.
    pub base_vertices: Vec<Vec<Rational>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("cone needs at least one generator")]
    NoGenerators,
    #[error("generator has {got} entries, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector is not a valid generator")]
    ZeroGenerator,
    #[error("cone is not full-dimensional, so it cannot order with nonempty interior")]
    NotFullDimensional,
    #[error("cone is not pointed")]
    NotPointed,
}

impl OrderingCone {
    pub fn from_generators(
        dim: usize,
        generators: Vec<Vec<Rational>>,
    ) -> Result<OrderingCone, ConeError> {
        if generators.is_empty() {
            return Err(ConeError::NoGenerators);
        }
        for g in &generators {
            if g.len() != dim {
                return Err(ConeError::DimensionMismatch { expected: dim, got: g.len() });
            }
            if is_zero_vec(g) {
                return Err(ConeError::ZeroGenerator);
            }
        }
        let polar = cone_hv(&generators, dim);
        if !polar.lines.is_empty() {
            return Err(ConeError::NotFullDimensional);
        }
        // C is pointed exactly when its polar is full-dimensional.
        if rank(&polar.rays, dim) != dim {
            return Err(ConeError::NotPointed);
        }
        // For a full-dimensional cone the sum of generators is interior:
        // any polar ray vanishing on it would vanish on every generator.
        let mut interior = vec![Rational::zero(); dim];
        for g in &generators {
            for (x, gi) in interior.iter_mut().zip(g) {
                *x += gi;
            }
        }
        let base_vertices: Vec<Vec<Rational>> = polar
            .rays
            .iter()
            .map(|r| {
                let pairing = dot(r, &interior);
                debug_assert!(pairing.is_negative());
                let scale = -Rational::one() / pairing;
                r.iter().map(|x| x * &scale).collect()
            })
            .collect();
        Ok(OrderingCone {
            dim,
            generators: generators.iter().map(|g| normalize_content(g)).collect(),
            polar_rays: polar.rays,
            interior,
            base_vertices,
        })
    }

    /// The nonnegative orthant `R^m_+`.
    pub fn orthant(dim: usize) -> OrderingCone {
        let mut generators = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut g = vec![Rational::zero(); dim];
            g[i] = Rational::one();
            generators.push(g);
        }
        OrderingCone::from_generators(dim, generators).expect("orthant is a valid ordering cone")
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.polar_rays.iter().all(|r| !dot(r, v).is_positive())
    }

    pub fn contains_in_interior(&self, v: &[Rational]) -> bool {
        self.polar_rays.iter().all(|r| dot(r, v).is_negative())
    }

    /// Membership in the negative polar `C-`.
    pub fn in_polar(&self, a: &[Rational]) -> bool {
        self.generators.iter().all(|g| !dot(a, g).is_positive())
    }

    /// Valid outer normal for an upper set: nonzero element of `C-`.
    pub fn valid_upper_normal(&self, a: &[Rational]) -> bool {
        !is_zero_vec(a) && self.in_polar(a)
    }

    /// Halfspace rows cutting out `C` itself.
    pub fn cone_rows(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.polar_rays.iter().map(|r| (r.clone(), Rational::zero())).collect()
    }
}
