//! Chow rings of the two projective bundles used by the threefold
//! computations, in canonical monomial form, plus the degree map.
//!
//! Both rings are presented as `A(base)[U] / (prod_j (U - alpha_j H))` where
//! the `alpha_j` are the Chern roots of the bundle `E`, `U` is the
//! tautological quotient class `O(1)` and `H` the pulled back hyperplane.
//! With this sign the pushforward of `O(yU)` is `S^y E`. The top monomial
//! `H^n U^(r-1)` has degree one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{int, render_signed_sum, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("classes live in different ambient rings ({0} vs {1})")]
    AmbientMismatch(String, String),
}

/// A commutative graded algebra with a top-degree functional. Implemented
/// by [`GradedClass`] (numeric intersection numbers) and by the symbolic
/// threefold ring in [`crate::chern`].
pub trait GradedAlgebra:
    Sized + Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    type Number;

    fn scale(&self, r: &Rational) -> Self;

    /// Multiplicative unit of the ring `self` lives in.
    fn unit(&self) -> Self;

    /// Degree of the top-dimensional part.
    fn top_degree(&self) -> Self::Number;
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AmbientKind {
    /// `P(O(a0) + O(a1) + O(a2) + O(a3))` over the line; a fourfold.
    LineBase4 { twists: [i64; 4] },
    /// `P(E)` for a rank two bundle with Chern numbers `(c1, c2)` over the
    /// plane; a threefold.
    PlaneBase2 { c1: i64, c2: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmbientRing {
    kind: AmbientKind,
    base_dim: usize,
    rank: usize,
    /// `chern[i]` is the coefficient of `H^i` in `c_i(E)`, for `i <= base_dim`.
    chern: Vec<Rational>,
}

impl AmbientRing {
    pub fn line_base4(twists: [i64; 4]) -> Arc<Self> {
        let c1: i64 = twists.iter().sum();
        Arc::new(Self {
            kind: AmbientKind::LineBase4 { twists },
            base_dim: 1,
            rank: 4,
            chern: vec![int(1), int(c1)],
        })
    }

    pub fn plane_base2(c1: i64, c2: i64) -> Arc<Self> {
        Arc::new(Self {
            kind: AmbientKind::PlaneBase2 { c1, c2 },
            base_dim: 2,
            rank: 2,
            chern: vec![int(1), int(c1), int(c2)],
        })
    }

    /// Plane bundle `O(a) + O(b)`.
    pub fn plane_split(a: i64, b: i64) -> Arc<Self> {
        Self::plane_base2(a + b, a * b)
    }

    pub fn kind(&self) -> &AmbientKind {
        &self.kind
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber_rank(&self) -> usize {
        self.rank
    }

    pub fn dimension(&self) -> usize {
        self.base_dim + self.rank - 1
    }

    fn basis_len(&self) -> usize {
        (self.base_dim + 1) * self.rank
    }

    fn index(&self, i: usize, j: usize) -> usize {
        i * self.rank + j
    }

    pub fn zero(self: &Arc<Self>) -> GradedClass {
        GradedClass {
            ambient: Arc::clone(self),
            coeffs: vec![Rational::zero(); self.basis_len()],
        }
    }

    pub fn scalar(self: &Arc<Self>, c: Rational) -> GradedClass {
        let mut out = self.zero();
        out.coeffs[0] = c;
        out
    }

    pub fn one(self: &Arc<Self>) -> GradedClass {
        self.scalar(Rational::one())
    }

    pub fn h(self: &Arc<Self>) -> GradedClass {
        self.monomial(1, 0)
    }

    pub fn u(self: &Arc<Self>) -> GradedClass {
        self.monomial(0, 1)
    }

    /// Reduced form of `H^i U^j`.
    pub fn monomial(self: &Arc<Self>, i: u32, j: u32) -> GradedClass {
        let (i, j) = (i as usize, j as usize);
        if i > self.base_dim || i + j > self.dimension() {
            return self.zero();
        }
        let mut out = self.zero();
        out.coeffs[self.index(i, 0)] = Rational::one();
        for _ in 0..j {
            out = out.times_u();
        }
        out
    }

    /// Canonical representative of a formal sum of monomials `H^i U^j`.
    pub fn reduce(self: &Arc<Self>, raw: &RawClass) -> GradedClass {
        raw.terms
            .iter()
            .fold(self.zero(), |acc, (&(i, j), c)| acc + self.monomial(i, j).scale(c))
    }

    /// Textual form used by the command line, e.g. `plane:3,3`.
    pub fn spec_string(&self) -> String {
        match &self.kind {
            AmbientKind::LineBase4 { twists } => {
                let t: Vec<String> = twists.iter().map(i64::to_string).collect();
                format!("line:{}", t.join(","))
            }
            AmbientKind::PlaneBase2 { c1, c2 } => format!("plane:{c1},{c2}"),
        }
    }
}

impl fmt::Display for AmbientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// Unreduced formal sum of monomials `H^i U^j`, keyed by `(i, j)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawClass {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl RawClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut out = Self::new();
        out.add_term(i, j, c);
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &RawClass) -> RawClass {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> RawClass {
        let mut out = RawClass::new();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c * r);
        }
        out
    }

    /// Product in the free polynomial ring `Q[H, U]`.
    pub fn mul(&self, other: &RawClass) -> RawClass {
        let mut out = RawClass::new();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> RawClass {
        (0..e).fold(RawClass::constant(Rational::one()), |acc, _| acc.mul(self))
    }
}

/// Reduced element of an [`AmbientRing`]. Coefficients are stored densely on
/// the basis `H^i U^j`, `i <= base_dim`, `j < rank`, in `(i, j)` lexicographic
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedClass {
    ambient: Arc<AmbientRing>,
    coeffs: Vec<Rational>,
}

impl GradedClass {
    pub fn ambient(&self) -> &Arc<AmbientRing> {
        &self.ambient
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        if i > self.ambient.base_dim || j >= self.ambient.rank {
            return Rational::zero();
        }
        self.coeffs[self.ambient.index(i, j)].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `(i, j, coefficient)` for every nonzero basis coefficient, in basis order.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        let r = self.ambient.rank;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k / r, k % r, c))
    }

    /// Part of pure codimension `k`.
    pub fn codim_part(&self, k: usize) -> GradedClass {
        let mut out = self.ambient.zero();
        for (i, j, c) in self.support() {
            if i + j == k {
                out.coeffs[self.ambient.index(i, j)] = c.clone();
            }
        }
        out
    }

    /// Coefficient of the top monomial `H^n U^(r-1)`.
    pub fn degree(&self) -> Rational {
        self.coeff(self.ambient.base_dim, self.ambient.rank - 1)
    }

    pub fn scale(&self, r: &Rational) -> GradedClass {
        GradedClass {
            ambient: Arc::clone(&self.ambient),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn check_same(&self, other: &GradedClass) -> Result<(), ChowError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(ChowError::AmbientMismatch(
                self.ambient.spec_string(),
                other.ambient.spec_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &GradedClass) -> Result<GradedClass, ChowError> {
        self.check_same(other)?;
        Ok(GradedClass {
            ambient: Arc::clone(&self.ambient),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn multiply(&self, other: &GradedClass) -> Result<GradedClass, ChowError> {
        self.check_same(other)?;
        let mut out = self.ambient.zero();
        for (i, j, c) in other.support() {
            let mut term = self.clone();
            for _ in 0..i {
                term = term.times_h();
            }
            for _ in 0..j {
                term = term.times_u();
            }
            out = out.try_add(&term.scale(c))?;
        }
        Ok(out)
    }

    fn times_h(&self) -> GradedClass {
        let amb = &self.ambient;
        let mut out = amb.zero();
        for (i, j, c) in self.support() {
            if i < amb.base_dim {
                out.coeffs[amb.index(i + 1, j)] = c.clone();
            }
        }
        out
    }

    // U^r = sum_{k>=1} (-1)^(k+1) c_k H^k U^(r-k)
    fn times_u(&self) -> GradedClass {
        let amb = &self.ambient;
        let r = amb.rank;
        let mut out = amb.zero();
        for (i, j, c) in self.support() {
            if j + 1 < r {
                out.coeffs[amb.index(i, j + 1)] += c;
                continue;
            }
            for k in 1..=r {
                if i + k > amb.base_dim {
                    break;
                }
                let ck = &amb.chern[k];
                let term = c * ck;
                if k % 2 == 1 {
                    out.coeffs[amb.index(i + k, r - k)] += term;
                } else {
                    out.coeffs[amb.index(i + k, r - k)] -= term;
                }
            }
        }
        out
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.support().map(|(i, j, c)| {
            let mut parts = Vec::new();
            match i {
                0 => {}
                1 => parts.push("H".to_string()),
                _ => parts.push(format!("H^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("U".to_string()),
                _ => parts.push(format!("U^{j}")),
            }
            (c.clone(), parts.join("*"))
        });
        f.write_str(&render_signed_sum(terms))
    }
}

/// Panics if the operands live in different ambient rings; use
/// [`GradedClass::try_add`] for the checked form.
impl Add for GradedClass {
    type Output = GradedClass;
    fn add(self, rhs: GradedClass) -> GradedClass {
        self.try_add(&rhs).expect("ambient mismatch in addition")
    }
}

impl Sub for GradedClass {
    type Output = GradedClass;
    fn sub(self, rhs: GradedClass) -> GradedClass {
        self.try_add(&-rhs).expect("ambient mismatch in subtraction")
    }
}

/// Panics on ambient mismatch; use [`GradedClass::multiply`] for the
/// checked form.
impl Mul for GradedClass {
    type Output = GradedClass;
    fn mul(self, rhs: GradedClass) -> GradedClass {
        self.multiply(&rhs).expect("ambient mismatch in multiplication")
    }
}

impl Neg for GradedClass {
    type Output = GradedClass;
    fn neg(self) -> GradedClass {
        self.scale(&int(-1))
    }
}

impl GradedAlgebra for GradedClass {
    type Number = Rational;

    fn scale(&self, r: &Rational) -> Self {
        GradedClass::scale(self, r)
    }

    fn unit(&self) -> Self {
        self.ambient.one()
    }

    fn top_degree(&self) -> Rational {
        self.degree()
    }
}
