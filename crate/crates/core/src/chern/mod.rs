//! Chern class calculus: tensor products and symmetric powers on the plane,
//! twists by line bundles, and the tangent classes of a plane `P^1`-bundle.

pub mod symbolic;

use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::chow::{AmbientKind, AmbientRing, GradedAlgebra, GradedClass};
use crate::exact::{binom_poly, falling_binom, int, Rational, Scalar, UniPoly};

pub use symbolic::{apply_topological_relations, LinearForm, Symbol, ThreefoldClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("expected a rank 2 bundle, got rank {0}")]
    RankNotTwo(String),
    #[error("tangent classes need a plane-based ambient ring, got {0}")]
    NotPlaneBundle(String),
}

/// Rank and Chern numbers of a bundle on the plane; `c1`, `c2` are the
/// coefficients of `h` and `h^2`. The coefficient type is either
/// [`Rational`] or a polynomial in a symmetric-power exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceChern<T = Rational> {
    pub rank: T,
    pub c1: T,
    pub c2: T,
}

impl<T: Scalar> SurfaceChern<T> {
    pub fn new(rank: T, c1: T, c2: T) -> Self {
        Self { rank, c1, c2 }
    }

    pub fn line_bundle(d: i64) -> Self {
        Self::new(T::from_int(1), T::from_int(d), T::from_int(0))
    }

    pub fn trivial(rank: i64) -> Self {
        Self::new(T::from_int(rank), T::from_int(0), T::from_int(0))
    }

    /// `Omega` of the plane: rank 2, `c1 = -3`, `c2 = 3`.
    pub fn cotangent_plane() -> Self {
        Self::new(T::from_int(2), T::from_int(-3), T::from_int(3))
    }

    pub fn twist(&self, d: i64) -> Self {
        tensor_chern_surface(self, &Self::line_bundle(d))
    }
}

impl SurfaceChern<Rational> {
    pub fn from_ints(rank: i64, c1: i64, c2: i64) -> Self {
        Self::new(int(rank), int(c1), int(c2))
    }
}

/// Chern numbers of `F1 (x) F2` for bundles of ranks `r`, `s` on the plane.
pub fn tensor_chern_surface<T: Scalar>(f1: &SurfaceChern<T>, f2: &SurfaceChern<T>) -> SurfaceChern<T> {
    let (r, c1, c2) = (&f1.rank, &f1.c1, &f1.c2);
    let (s, d1, d2) = (&f2.rank, &f2.c1, &f2.c2);
    let rank = r.clone() * s.clone();
    let first = s.clone() * c1.clone() + r.clone() * d1.clone();
    let second = s.clone() * c2.clone()
        + r.clone() * d2.clone()
        + falling_binom(s, 2) * c1.clone() * c1.clone()
        + falling_binom(r, 2) * d1.clone() * d1.clone()
        + c1.clone() * d1.clone() * (rank.clone() - T::from_int(1));
    SurfaceChern::new(rank, first, second)
}

/// Chern polynomials of `S^u E` and `(S^u E)(-1)` for a rank two `E`, as
/// functions of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPowerPolys {
    pub c1: UniPoly,
    pub c2: UniPoly,
    pub a1: UniPoly,
    pub a2: UniPoly,
}

impl SymPowerPolys {
    /// `S^u E` with polynomial rank `u + 1`.
    pub fn sym_power(&self) -> SurfaceChern<UniPoly> {
        SurfaceChern::new(UniPoly::from_ints(&[1, 1]), self.c1.clone(), self.c2.clone())
    }

    /// `(S^u E)(-1)`.
    pub fn twisted(&self) -> SurfaceChern<UniPoly> {
        SurfaceChern::new(UniPoly::from_ints(&[1, 1]), self.a1.clone(), self.a2.clone())
    }
}

fn require_rank_two(e: &SurfaceChern) -> Result<(), ChernError> {
    if e.rank == int(2) {
        Ok(())
    } else {
        Err(ChernError::RankNotTwo(e.rank.to_string()))
    }
}

/// Closed forms
/// `C1(u) = c1 u(u+1)/2`,
/// `C2(u) = c1^2 u(u^2-1)(3u+2)/24 + c2 binom(u+2, 3)`,
/// and the twists `A1`, `A2` obtained by tensoring with `O(-1)`.
pub fn sym_power_polys(e: &SurfaceChern) -> Result<SymPowerPolys, ChernError> {
    require_rank_two(e)?;
    let u = UniPoly::var();
    let one = UniPoly::one();
    let c1 = (&u * &(&u + &one)).scale(&(&e.c1 / int(2)));
    let cubic = &(&u * &(&(&u * &u) - &one)) * &UniPoly::from_ints(&[2, 3]);
    let c2 = cubic.scale(&(&e.c1 * &e.c1 / int(24)))
        + binom_poly(2, 3).expect("k >= 0").scale(&e.c2);
    let untwisted = SurfaceChern::new(&u + &one, c1.clone(), c2.clone());
    let twisted = untwisted.twist(-1);
    Ok(SymPowerPolys {
        c1,
        c2,
        a1: twisted.c1,
        a2: twisted.c2,
    })
}

// Linear form x*alpha + y*beta in formal Chern roots.
type RootForm = (i64, i64);

/// Chern numbers of `S^b E` computed from formal Chern roots `alpha`, `beta`
/// of `E`: the roots of `S^b E` are `i alpha + (b - i) beta`, and their
/// elementary symmetric functions are rewritten in `c1 = alpha + beta`,
/// `c2 = alpha beta`.
pub fn sym_power_splitting_oracle(e: &SurfaceChern, b: u32) -> Result<SurfaceChern, ChernError> {
    require_rank_two(e)?;
    let b = i64::from(b);
    let roots: Vec<RootForm> = (0..=b).map(|i| (i, b - i)).collect();

    // e1 = sum of roots = k1 * (alpha + beta)
    let (sa, sb): (i64, i64) = roots.iter().fold((0, 0), |(x, y), r| (x + r.0, y + r.1));
    debug_assert_eq!(sa, sb);

    // e2 as the quadratic form q_aa alpha^2 + q_ab alpha beta + q_bb beta^2
    let (mut q_aa, mut q_ab, mut q_bb) = (0i64, 0i64, 0i64);
    for (i, r) in roots.iter().enumerate() {
        for s in &roots[i + 1..] {
            q_aa += r.0 * s.0;
            q_ab += r.0 * s.1 + r.1 * s.0;
            q_bb += r.1 * s.1;
        }
    }
    debug_assert_eq!(q_aa, q_bb);
    // alpha^2 + beta^2 = c1^2 - 2 c2
    let c1 = &e.c1 * int(sa);
    let c2 = &e.c1 * &e.c1 * int(q_aa) + &e.c2 * int(q_ab - 2 * q_aa);
    Ok(SurfaceChern::new(int(b + 1), c1, c2))
}

/// `c_k(F (x) L) = sum_i binom(r - i, k - i) c_i(F) l^(k-i)` for a rank `r`
/// bundle `F` with classes `classes = [c_1, .., c_r]`.
pub fn twist_classes<A: GradedAlgebra>(classes: &[A], line: &A) -> Vec<A> {
    let r = classes.len() as i64;
    let unit = line.unit();
    let class_at = |i: usize| if i == 0 { unit.clone() } else { classes[i - 1].clone() };
    let mut powers = vec![unit.clone()];
    for k in 1..=classes.len() {
        powers.push(powers[k - 1].clone() * line.clone());
    }
    (1..=classes.len())
        .map(|k| {
            (0..=k).fold(unit.scale(&Rational::zero()), |acc, i| {
                let coeff = falling_binom(&int(r - i as i64), (k - i) as u32);
                acc + (class_at(i) * powers[k - i].clone()).scale(&coeff)
            })
        })
        .collect()
}

/// Chern classes of `Omega_X (-H + K_X)` on a threefold with tangent classes
/// `c1, c2, c3`, before any numerical relation is imposed.
pub fn cotangent_twist_e_classes() -> [ThreefoldClass; 3] {
    let c1 = ThreefoldClass::c1();
    let cotangent = [-c1.clone(), ThreefoldClass::c2(), -ThreefoldClass::c3()];
    let line = -ThreefoldClass::divisor() - c1;
    let twisted = twist_classes(&cotangent, &line);
    [twisted[0].clone(), twisted[1].clone(), twisted[2].clone()]
}

/// `c(T_X) = (1 + 2U - c1 H)(1 + 3H + 3H^2)` for `X = P(E)` over the plane.
pub fn tangent_chern_plane_bundle(ambient: &Arc<AmbientRing>) -> Result<[GradedClass; 3], ChernError> {
    let c1 = match ambient.kind() {
        AmbientKind::PlaneBase2 { c1, .. } => *c1,
        AmbientKind::LineBase4 { .. } => return Err(ChernError::NotPlaneBundle(ambient.spec_string())),
    };
    let h = ambient.h();
    let relative = ambient.u().scale(&int(2)) - h.scale(&int(c1));
    let base = [h.scale(&int(3)), (h.clone() * h).scale(&int(3))];
    let t1 = relative.clone() + base[0].clone();
    let t2 = base[1].clone() + relative.clone() * base[0].clone();
    let t3 = relative * base[1].clone();
    Ok([t1, t2, t3])
}
