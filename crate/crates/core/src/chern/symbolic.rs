//! Symbolic Chern calculus on an unspecified threefold.
//!
//! Classes are polynomials in `c1, c2, c3` (Chern classes of the tangent
//! bundle) and a divisor `H`, truncated above codimension three. Their degree
//! is a [`LinearForm`] in the seven cubic intersection numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::chow::GradedAlgebra;
use crate::exact::{int, render_signed_sum, Rational};

/// Free symbols appearing in intersection-number expressions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// The Hodge number `h = h^2(X, Omega^1)`.
    Hodge,
    C1Cubed,
    C1SqH,
    C1HSq,
    HCubed,
    C2H,
    C1C2,
    C3,
    /// Any other named parameter, e.g. a discriminant degree `d`.
    Free(String),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Symbol::Hodge => "h",
            Symbol::C1Cubed => "c1^3",
            Symbol::C1SqH => "c1^2*H",
            Symbol::C1HSq => "c1*H^2",
            Symbol::HCubed => "H^3",
            Symbol::C2H => "c2*H",
            Symbol::C1C2 => "c1*c2",
            Symbol::C3 => "c3",
            Symbol::Free(name) => name,
        };
        f.write_str(s)
    }
}

/// `constant + sum coeff * symbol` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearForm {
    constant: Rational,
    terms: BTreeMap<Symbol, Rational>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(s, Rational::one())
    }

    pub fn free(name: &str) -> Self {
        Self::symbol(Symbol::Free(name.to_string()))
    }

    pub fn term(s: Symbol, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(s, c);
        out
    }

    fn add_term(&mut self, s: Symbol, c: Rational) {
        let slot = self.terms.entry(s.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn coeff(&self, s: &Symbol) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    /// The value, if no symbol survives.
    pub fn as_constant(&self) -> Option<&Rational> {
        self.terms.is_empty().then_some(&self.constant)
    }

    pub fn scale(&self, r: &Rational) -> LinearForm {
        let mut out = LinearForm::constant(&self.constant * r);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), c * r);
        }
        out
    }

    /// Replaces `sym` by `value` everywhere.
    pub fn substitute(&self, sym: &Symbol, value: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        if let Some(c) = out.terms.remove(sym) {
            out = out + value.scale(&c);
        }
        out
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = (!self.constant.is_zero()).then(|| (self.constant.clone(), String::new()));
        let rest = self.terms.iter().map(|(s, c)| (c.clone(), s.to_string()));
        f.write_str(&render_signed_sum(head.into_iter().chain(rest)))
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(mut self, rhs: LinearForm) -> LinearForm {
        self.constant += rhs.constant;
        for (s, c) in rhs.terms {
            self.add_term(s, c);
        }
        self
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        self + (-rhs)
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        self.scale(&int(-1))
    }
}

/// Exponents of `(c1, c2, c3, H)`.
type Mono = [u8; 4];

const WEIGHTS: [u8; 4] = [1, 2, 3, 1];

fn weight(m: &Mono) -> u8 {
    m.iter().zip(WEIGHTS).map(|(e, w)| e * w).sum()
}

/// A class on the symbolic threefold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ThreefoldClass {
    terms: BTreeMap<Mono, Rational>,
}

impl ThreefoldClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::mono([0, 0, 0, 0], c)
    }

    pub fn c1() -> Self {
        Self::mono([1, 0, 0, 0], Rational::one())
    }

    pub fn c2() -> Self {
        Self::mono([0, 1, 0, 0], Rational::one())
    }

    pub fn c3() -> Self {
        Self::mono([0, 0, 1, 0], Rational::one())
    }

    /// The divisor `H`.
    pub fn divisor() -> Self {
        Self::mono([0, 0, 0, 1], Rational::one())
    }

    fn mono(m: Mono, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c);
        out
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if weight(&m) > 3 {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Part of codimension `k`.
    pub fn codim_part(&self, k: u8) -> ThreefoldClass {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if weight(m) == k {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Degree of the codimension three part as a form in the cubic
    /// intersection numbers.
    pub fn degree(&self) -> LinearForm {
        let mut out = LinearForm::zero();
        for (m, c) in &self.terms {
            let sym = match m {
                [3, 0, 0, 0] => Symbol::C1Cubed,
                [2, 0, 0, 1] => Symbol::C1SqH,
                [1, 0, 0, 2] => Symbol::C1HSq,
                [0, 0, 0, 3] => Symbol::HCubed,
                [0, 1, 0, 1] => Symbol::C2H,
                [1, 1, 0, 0] => Symbol::C1C2,
                [0, 0, 1, 0] => Symbol::C3,
                _ => continue,
            };
            out.add_term(sym, c.clone());
        }
        out
    }
}

impl fmt::Display for ThreefoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["c1", "c2", "c3", "H"];
        let mut terms: Vec<_> = self.terms.iter().collect();
        // higher codimension first
        terms.sort_by(|(a, _), (b, _)| weight(b).cmp(&weight(a)).then(b.cmp(a)));
        let rendered = terms.into_iter().map(|(m, c)| {
            let parts: Vec<String> = m
                .iter()
                .zip(NAMES)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
                .collect();
            (c.clone(), parts.join("*"))
        });
        f.write_str(&render_signed_sum(rendered))
    }
}

impl Add for ThreefoldClass {
    type Output = ThreefoldClass;
    fn add(mut self, rhs: ThreefoldClass) -> ThreefoldClass {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for ThreefoldClass {
    type Output = ThreefoldClass;
    fn sub(self, rhs: ThreefoldClass) -> ThreefoldClass {
        self + (-rhs)
    }
}

impl Neg for ThreefoldClass {
    type Output = ThreefoldClass;
    fn neg(self) -> ThreefoldClass {
        GradedAlgebra::scale(&self, &int(-1))
    }
}

impl Mul for ThreefoldClass {
    type Output = ThreefoldClass;
    fn mul(self, rhs: ThreefoldClass) -> ThreefoldClass {
        let mut out = ThreefoldClass::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl GradedAlgebra for ThreefoldClass {
    type Number = LinearForm;

    fn scale(&self, r: &Rational) -> Self {
        let mut out = ThreefoldClass::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * r);
        }
        out
    }

    fn unit(&self) -> Self {
        ThreefoldClass::constant(Rational::one())
    }

    fn top_degree(&self) -> LinearForm {
        self.degree()
    }
}

/// Applies `c1 c2 = 24` and `c3 = 6 - 2h`, valid on a smooth threefold with
/// `H^i(O) = 0` for `i > 0` and Picard rank two.
pub fn apply_topological_relations(form: &LinearForm) -> LinearForm {
    let euler = LinearForm::int(6) - LinearForm::term(Symbol::Hodge, int(2));
    form.substitute(&Symbol::C1C2, &LinearForm::int(24))
        .substitute(&Symbol::C3, &euler)
}
