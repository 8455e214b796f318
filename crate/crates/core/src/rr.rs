//! Riemann-Roch on the line, the plane and threefolds, and the Euler
//! characteristics of line bundles and twisted cotangent sheaves on the
//! fourfold `W = P(O^2 + O(p) + O(q))` over the line.

use thiserror::Error;

use crate::chern::{apply_topological_relations, LinearForm, SurfaceChern, ThreefoldClass};
use crate::chow::GradedAlgebra;
use crate::exact::{falling_binom, int, rat, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrError {
    #[error("twists {0:?} are pairwise distinct; no common shift makes two of them zero")]
    AllDistinct([i64; 4]),
    #[error("shift {shift} does not make two of the twists {twists:?} vanish")]
    BadShift { twists: [i64; 4], shift: i64 },
    #[error("symmetric power exponent must be nonnegative, got {0}")]
    NegativeSymPower(i64),
}

/// `chi(X, E)` on a threefold via
/// `r c1c2/24 + e1 (c1^2 + c2)/12 + (c1/2)(e1^2 - 2 e2)/2 + (e1^3 - 3 e1 e2 + 3 e3)/6`,
/// where `tangent = [c1, c2, c3]` and `bundle = [e1, e2, e3]`.
///
/// The algebra decides whether the answer is a number or a symbolic form;
/// both arguments live in the same algebra, so mixed input cannot occur.
pub fn hrr_threefold<A: GradedAlgebra>(tangent: &[A; 3], bundle: &[A; 3], rank: i64) -> A::Number {
    let [c1, c2, _] = tangent;
    let [e1, e2, e3] = bundle;
    let todd2 = c1.clone() * c1.clone() + c2.clone();
    let ch2 = e1.clone() * e1.clone() - e2.scale(&int(2));
    let ch3 = e1.clone() * e1.clone() * e1.clone() - (e1.clone() * e2.clone()).scale(&int(3))
        + e3.scale(&int(3));
    let class = (c1.clone() * c2.clone()).scale(&rat(rank, 24))
        + (e1.clone() * todd2).scale(&rat(1, 12))
        + (c1.clone() * ch2).scale(&rat(1, 4))
        + ch3.scale(&rat(1, 6));
    class.top_degree()
}

/// [`hrr_threefold`] on the symbolic threefold, followed by `c1 c2 = 24` and
/// `c3 = 6 - 2h`.
pub fn hrr_symbolic(bundle: &[ThreefoldClass; 3], rank: i64) -> LinearForm {
    let tangent = [ThreefoldClass::c1(), ThreefoldClass::c2(), ThreefoldClass::c3()];
    apply_topological_relations(&hrr_threefold(&tangent, bundle, rank))
}

/// `chi(P^2, F) = r - c2 + c1 (c1 + 3) / 2`.
pub fn hrr_surface<T: Scalar>(f: &SurfaceChern<T>) -> T {
    let c1 = f.c1.clone();
    f.rank.clone() - f.c2.clone() + (c1.clone() * (c1 + T::from_int(3))).scale(&rat(1, 2))
}

/// `chi(P^1, F(twist))` for `F` of the given rank and degree.
pub fn rr_curve(rank: i64, deg: i64, twist: i64) -> Rational {
    int(deg + rank * (twist + 1))
}

/// The split rank four bundle `O^2 + O(p) + O(q)` together with the shift
/// that took the original twists there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalizedTwists {
    pub original: [i64; 4],
    pub shift: i64,
    pub p: i64,
    pub q: i64,
}

impl NormalizedTwists {
    /// Subtracts `shift` from every twist and checks that two entries vanish.
    pub fn with_shift(twists: [i64; 4], shift: i64) -> Result<Self, RrError> {
        let mut rest: Vec<i64> = twists.iter().map(|a| a - shift).collect();
        let zeros = rest.iter().filter(|&&v| v == 0).count();
        if zeros < 2 {
            return Err(RrError::BadShift { twists, shift });
        }
        // drop two zeros, keep the other two in order
        for _ in 0..2 {
            let pos = rest.iter().position(|&v| v == 0).expect("counted above");
            rest.remove(pos);
        }
        Ok(Self {
            original: twists,
            shift,
            p: rest[0],
            q: rest[1],
        })
    }

    /// Shifts by the smallest twist occurring at least twice.
    pub fn normalize(twists: [i64; 4]) -> Result<Self, RrError> {
        let shift = twists
            .iter()
            .filter(|&&a| twists.iter().filter(|&&b| b == a).count() >= 2)
            .min()
            .copied()
            .ok_or(RrError::AllDistinct(twists))?;
        Self::with_shift(twists, shift)
    }
}

/// `f(x, y) = chi(W, xH + yU) = (p+q) binom(y+3, 4) + (x+1) binom(y+3, 3)`,
/// for integer or polynomial arguments.
pub fn f_formula<T: Scalar>(x: &T, y: &T, p: i64, q: i64) -> T {
    let y3 = y.clone() + T::from_int(3);
    falling_binom(&y3, 4).scale(&int(p + q)) + (x.clone() + T::from_int(1)) * falling_binom(&y3, 3)
}

pub fn f_value(x: i64, y: i64, p: i64, q: i64) -> Rational {
    f_formula(&int(x), &int(y), p, q)
}

/// `chi(P^1, S^y(O^2 + O(p) + O(q))(x))` summed over the monomials of the
/// symmetric power: `e2^i e3^j` with `i + j <= y` has degree `ip + jq` and
/// occurs `y - i - j + 1` times.
pub fn f_splitting_oracle(x: i64, y: i64, p: i64, q: i64) -> Result<Rational, RrError> {
    if y < 0 {
        return Err(RrError::NegativeSymPower(y));
    }
    let mut total = 0i64;
    for i in 0..=y {
        for j in 0..=(y - i) {
            let multiplicity = y - i - j + 1;
            total += multiplicity * (x + i * p + j * q + 1);
        }
    }
    Ok(int(total))
}

/// `chi(W, Omega_W(xH + yU))` from the toric Euler sequence:
/// `2f(x-1,y) + 2f(x,y-1) + f(x+p,y-1) + f(x+q,y-1) - 2f(x,y)`.
pub fn euler_jaczewski_chi<T: Scalar>(x: &T, y: &T, p: i64, q: i64) -> T {
    let f = |dx: i64, dy: i64| {
        f_formula(&(x.clone() + T::from_int(dx)), &(y.clone() + T::from_int(dy)), p, q)
    };
    f(-1, 0).scale(&int(2)) + f(0, -1).scale(&int(2)) + f(p, -1) + f(q, -1)
        - f(0, 0).scale(&int(2))
}

pub fn euler_jaczewski_value(x: i64, y: i64, p: i64, q: i64) -> Rational {
    euler_jaczewski_chi(&int(x), &int(y), p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{sym_power_splitting_oracle, tangent_chern_plane_bundle, Symbol};
    use crate::chow::AmbientRing;
    use crate::exact::binom;

    #[test]
    fn hrr_threefold_structure_sheaf() {
        let z = ThreefoldClass::zero();
        let chi = hrr_symbolic(&[z.clone(), z.clone(), z], 1);
        assert_eq!(chi, LinearForm::int(1));
    }

    #[test]
    fn hrr_threefold_divisor_term_by_term() {
        // e = (H, 0, 0): chi = c1c2/24 + H(c1^2+c2)/12 + c1 H^2/4 + H^3/6
        let z = ThreefoldClass::zero();
        let chi = hrr_symbolic(&[ThreefoldClass::divisor(), z.clone(), z], 1);
        assert_eq!(chi.constant_term(), &int(1));
        assert_eq!(chi.coeff(&Symbol::C1SqH), rat(1, 12));
        assert_eq!(chi.coeff(&Symbol::C2H), rat(1, 12));
        assert_eq!(chi.coeff(&Symbol::C1HSq), rat(1, 4));
        assert_eq!(chi.coeff(&Symbol::HCubed), rat(1, 6));
    }

    #[test]
    fn hrr_surface_examples() {
        assert_eq!(hrr_surface(&SurfaceChern::from_ints(1, 0, 0)), int(1));
        for d in 0..=5 {
            assert_eq!(hrr_surface(&SurfaceChern::<Rational>::line_bundle(d)), binom(d + 2, 2).unwrap());
        }
        assert_eq!(hrr_surface(&SurfaceChern::from_ints(2, 3, 3)), int(8));
    }

    #[test]
    fn hrr_surface_is_additive_on_split_sums() {
        for a in -4..=4 {
            for b in -4..=4 {
                let sum = SurfaceChern::from_ints(2, a + b, a * b);
                let la = SurfaceChern::<Rational>::line_bundle(a);
                let lb = SurfaceChern::<Rational>::line_bundle(b);
                assert_eq!(hrr_surface(&sum), hrr_surface(&la) + hrr_surface(&lb));
            }
        }
    }

    #[test]
    fn rr_curve_examples() {
        for d in -3..=3 {
            assert_eq!(rr_curve(1, d, 0), int(d + 1));
        }
        assert_eq!(rr_curve(4, 5, 2), int(5 + 4 * 3));
        assert_eq!(rr_curve(0, 0, 7), int(0));
    }

    #[test]
    fn line_bundle_hrr_on_plane_bundle_matches_pushforward() {
        // chi(P(E), yU) computed in the Chow ring equals chi(P^2, S^y E).
        for (a, b) in [(0, 0), (0, 3), (1, 2), (-1, 2), (2, 2)] {
            let amb = AmbientRing::plane_split(a, b);
            let tangent = tangent_chern_plane_bundle(&amb).unwrap();
            let e = SurfaceChern::from_ints(2, a + b, a * b);
            for y in 0..=4i64 {
                let bundle = [amb.u().scale(&int(y)), amb.zero(), amb.zero()];
                let chi = hrr_threefold(&tangent, &bundle, 1);
                let pushed = sym_power_splitting_oracle(&e, y as u32).unwrap();
                assert_eq!(chi, hrr_surface(&pushed), "E = O({a}) + O({b}), y = {y}");
            }
        }
    }

    #[test]
    fn normalization() {
        let n = NormalizedTwists::normalize([1, 1, 3, 4]).unwrap();
        assert_eq!((n.shift, n.p, n.q), (1, 2, 3));
        let n = NormalizedTwists::normalize([2, 0, 2, 0]).unwrap();
        assert_eq!((n.shift, n.p, n.q), (0, 2, 2));
        assert_eq!(
            NormalizedTwists::normalize([0, 1, 2, 3]),
            Err(RrError::AllDistinct([0, 1, 2, 3]))
        );
        assert!(NormalizedTwists::with_shift([0, 0, 1, 2], 1).is_err());
    }

    #[test]
    fn f_examples() {
        for (p, q) in [(0, 0), (1, 2), (4, 3)] {
            assert_eq!(f_value(0, 0, p, q), int(1));
            for x in -3..=3 {
                for y in -3..=-1 {
                    assert_eq!(f_value(x, y, p, q), int(0));
                }
            }
        }
        assert_eq!(f_value(1, 1, 1, 2), int(11));
    }

    #[test]
    fn f_y_equal_one_is_curve_rr() {
        for (x, p, q) in [(0, 0, 0), (2, 1, 3), (-3, 2, 0)] {
            assert_eq!(f_value(x, 1, p, q), rr_curve(4, p + q, x));
        }
    }

    #[test]
    fn splitting_oracle_examples() {
        assert_eq!(f_splitting_oracle(0, 1, 0, 0).unwrap(), int(4));
        assert_eq!(f_splitting_oracle(2, 0, 5, 7).unwrap(), int(3));
        assert_eq!(f_splitting_oracle(-1, 2, 1, 1).unwrap(), f_value(-1, 2, 1, 1));
        assert_eq!(f_splitting_oracle(0, -1, 0, 0), Err(RrError::NegativeSymPower(-1)));
    }

    #[test]
    fn formula_matches_oracle_on_grid() {
        for x in -5..=5 {
            for y in 0..=8 {
                for p in 0..=4 {
                    for q in 0..=4 {
                        assert_eq!(f_value(x, y, p, q), f_splitting_oracle(x, y, p, q).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn euler_jaczewski_examples() {
        for (p, q) in [(0, 0), (1, 2), (3, 3)] {
            assert_eq!(euler_jaczewski_value(0, 0, p, q), int(-2));
            // every f argument lands in the vanishing band
            for x in -4..=4 {
                assert_eq!(euler_jaczewski_value(x, -1, p, q), int(0));
                assert_eq!(euler_jaczewski_value(x, -2, p, q), int(0));
            }
        }
        assert_eq!(euler_jaczewski_value(1, 1, 0, 0), int(0));
    }

    #[test]
    fn euler_jaczewski_matches_relative_cotangent_sequence() {
        // 0 -> p*Omega_P1 -> Omega_W -> Omega_{W/P1} -> 0 and
        // 0 -> Omega_{W/P1} -> p*E(-U) -> O -> 0 give
        // chi(Omega_W(L)) = f(x-2,y) + sum_i f(x+a_i, y-1) - f(x,y).
        for p in 0..=3 {
            for q in 0..=3 {
                for x in -4..=4 {
                    for y in -5..=5 {
                        let relative = f_value(x - 2, y, p, q)
                            + int(2) * f_value(x, y - 1, p, q)
                            + f_value(x + p, y - 1, p, q)
                            + f_value(x + q, y - 1, p, q)
                            - f_value(x, y, p, q);
                        assert_eq!(euler_jaczewski_value(x, y, p, q), relative);
                    }
                }
            }
        }
    }
}
